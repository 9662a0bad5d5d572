//! Symbolic finite groups: values of component-group and fundamental-group
//! computations on parameter families. Concrete instantiation produces
//! multiplication-table groups from `groupkit`.

use crate::expr::{int, Assignment, Expr, ExprError};
use crate::subgroup::GammaKind;
use groupkit::{FiniteGroupConcrete, FpGroup, GroupError};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SymGroup {
    Trivial,
    Cyclic(Expr),
    BinDih(Expr),
    BinTet,
    BinOct,
    BinIco,
    /// A symbolic finite subgroup of S³ of the given kind.
    Gamma(GammaKind),
    Product(Vec<SymGroup>),
    /// Z_a / Z_b along the inclusion generated by a winding; order a/gcd(a,b).
    CyclicQuot(Expr, Expr),
}

impl SymGroup {
    pub fn z(k: i64) -> Self {
        SymGroup::Cyclic(int(k))
    }

    pub fn klein4() -> Self {
        SymGroup::Product(vec![SymGroup::z(2), SymGroup::z(2)])
    }

    pub fn is_trivial_shape(&self) -> bool {
        match self {
            SymGroup::Trivial => true,
            SymGroup::Cyclic(e) => e.as_int() == Some(1),
            SymGroup::Product(ps) => ps.iter().all(|p| p.is_trivial_shape()),
            _ => false,
        }
    }

    pub fn order(&self) -> Option<Expr> {
        Some(match self {
            SymGroup::Trivial => int(1),
            SymGroup::Cyclic(e) => e.normalize(),
            SymGroup::BinDih(e) => int(4).mul(e.clone()).normalize(),
            SymGroup::BinTet => int(24),
            SymGroup::BinOct => int(48),
            SymGroup::BinIco => int(120),
            SymGroup::Gamma(k) => return k.order(),
            SymGroup::Product(ps) => {
                let mut o = int(1);
                for p in ps {
                    o = o.mul(p.order()?);
                }
                o.normalize()
            }
            SymGroup::CyclicQuot(a, b) => a.clone().div(a.clone().gcd(b.clone())).normalize(),
        })
    }

    /// Instantiate the parameters and build the multiplication table.
    pub fn to_concrete(&self, env: &Assignment) -> Result<FiniteGroupConcrete, SymGroupError> {
        Ok(match self {
            SymGroup::Trivial => FiniteGroupConcrete::trivial(),
            SymGroup::Cyclic(e) => FiniteGroupConcrete::cyclic(e.eval(env)?.max(1) as usize),
            SymGroup::BinDih(e) => FpGroup::binary_dihedral(e.eval(env)?.max(1))
                .to_concrete(2000)
                .map_err(SymGroupError::Group)?,
            SymGroup::BinTet => {
                FpGroup::binary_tetrahedral().to_concrete(2000).map_err(SymGroupError::Group)?
            }
            SymGroup::BinOct => {
                FpGroup::binary_octahedral().to_concrete(2000).map_err(SymGroupError::Group)?
            }
            SymGroup::BinIco => {
                FpGroup::binary_icosahedral().to_concrete(2000).map_err(SymGroupError::Group)?
            }
            SymGroup::Gamma(kind) => return gamma_to_concrete(kind, env),
            SymGroup::Product(ps) => {
                let mut g = FiniteGroupConcrete::trivial();
                for p in ps {
                    g = g.direct_product(&p.to_concrete(env)?);
                }
                g
            }
            SymGroup::CyclicQuot(a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                let d = num_integer::gcd(a, b);
                FiniteGroupConcrete::cyclic((a / d.max(1)).max(1) as usize)
            }
        })
    }
}

fn gamma_to_concrete(
    kind: &GammaKind,
    env: &Assignment,
) -> Result<FiniteGroupConcrete, SymGroupError> {
    Ok(match kind {
        GammaKind::Cyclic(e) => FiniteGroupConcrete::cyclic(e.eval(env)?.max(1) as usize),
        GammaKind::BinDih(e) => FpGroup::binary_dihedral(e.eval(env)?.max(1))
            .to_concrete(2000)
            .map_err(SymGroupError::Group)?,
        GammaKind::BinTet => {
            FpGroup::binary_tetrahedral().to_concrete(2000).map_err(SymGroupError::Group)?
        }
        GammaKind::BinOct => {
            FpGroup::binary_octahedral().to_concrete(2000).map_err(SymGroupError::Group)?
        }
        GammaKind::BinIco => {
            FpGroup::binary_icosahedral().to_concrete(2000).map_err(SymGroupError::Group)?
        }
        GammaKind::Sym { name, .. } => return Err(SymGroupError::Symbolic(name.clone())),
    })
}

/// Every concrete instantiation of a Γ kind with parameters ≤ cap
/// (cyclic k ≤ cap, binary dihedral m ≤ cap/2, the three polyhedral groups).
pub fn gamma_instances(kind: &GammaKind, cap: i64) -> Vec<(GammaKind, Assignment)> {
    match kind {
        GammaKind::Sym { name, nontrivial, noncyclic } => {
            let mut out = Vec::new();
            if !*noncyclic {
                let start = if *nontrivial { 2 } else { 1 };
                for k in start..=cap {
                    out.push((GammaKind::Cyclic(int(k)), Assignment::default()));
                }
            }
            for m in 1..=(cap / 2).max(1) {
                out.push((GammaKind::BinDih(int(m)), Assignment::default()));
            }
            out.push((GammaKind::BinTet, Assignment::default()));
            out.push((GammaKind::BinOct, Assignment::default()));
            out.push((GammaKind::BinIco, Assignment::default()));
            let _ = name;
            out
        }
        k => vec![(k.clone(), Assignment::default())],
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SymGroupError {
    #[error("expression: {0}")]
    Expr(#[from] ExprError),
    #[error("group backend: {0}")]
    Group(GroupError),
    #[error("symbolic group {0} cannot be materialized without a kind assignment")]
    Symbolic(String),
}

impl fmt::Display for SymGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymGroup::Trivial => write!(f, "1"),
            SymGroup::Cyclic(e) => write!(f, "Z_{e}"),
            SymGroup::BinDih(e) => write!(f, "D*_2{e}"),
            SymGroup::BinTet => write!(f, "2T"),
            SymGroup::BinOct => write!(f, "2O"),
            SymGroup::BinIco => write!(f, "2I"),
            SymGroup::Gamma(k) => write!(f, "{k}"),
            SymGroup::Product(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join(" + "))
            }
            SymGroup::CyclicQuot(a, b) => write!(f, "Z_{a}/Z_{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::var;

    #[test]
    fn orders() {
        assert_eq!(SymGroup::z(5).order().unwrap().as_int(), Some(5));
        assert_eq!(SymGroup::BinDih(int(3)).order().unwrap().as_int(), Some(12));
        let q = SymGroup::CyclicQuot(var("m"), var("q"));
        let env = Assignment::new(&[("m", 12), ("q", 4)]);
        assert_eq!(q.order().unwrap().eval(&env).unwrap(), 3);
    }

    #[test]
    fn concrete_products() {
        let g = SymGroup::klein4().to_concrete(&Assignment::default()).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.order_multiset(), vec![1, 2, 2, 2]);
    }
}
