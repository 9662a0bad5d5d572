//! Finitely presented groups: bounded order computation through coset
//! enumeration, quotients by normal closures, and abelianization through the
//! Smith normal form of the relation matrix.

use crate::concrete::FiniteGroupConcrete;
use crate::snf;
use crate::todd_coxeter::{CosetTable, EnumResult};
use crate::word::Word;
use crate::GroupError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpGroup {
    pub gen_names: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    /// Enumeration did not close below the cap; the order may be infinite or
    /// just larger than the cap.
    Unbounded,
}

impl FpGroup {
    pub fn new<S: Into<String>>(gen_names: Vec<S>, relators: Vec<Word>) -> Self {
        let gen_names: Vec<String> = gen_names.into_iter().map(Into::into).collect();
        let mut relators: Vec<Word> = relators
            .into_iter()
            .map(|mut w| {
                w.reduce();
                w
            })
            .filter(|w| !w.is_identity())
            .collect();
        relators.dedup();
        FpGroup { gen_names, relators }
    }

    pub fn trivial() -> Self {
        FpGroup::new(Vec::<String>::new(), vec![])
    }

    pub fn cyclic(k: i64) -> Self {
        assert!(k >= 1);
        FpGroup::new(vec!["a"], vec![Word::gen(0).pow(k)])
    }

    /// Z_a ⊕ Z_b with a relatorized commutator; a or b = 0 gives a free factor.
    pub fn abelian2(a: i64, b: i64) -> Self {
        let x = Word::gen(0);
        let y = Word::gen(1);
        let mut rel = vec![x.concat(&y).concat(&x.inv()).concat(&y.inv())];
        if a > 0 {
            rel.push(x.pow(a));
        }
        if b > 0 {
            rel.push(y.pow(b));
        }
        FpGroup::new(vec!["a", "b"], rel)
    }

    /// ⟨a, b | a^{2m} = 1, b² = a^m, b a b⁻¹ = a⁻¹⟩, the binary dihedral
    /// group of order 4m (Z₄ when m = 1).
    pub fn binary_dihedral(m: i64) -> Self {
        assert!(m >= 1);
        let a = Word::gen(0);
        let b = Word::gen(1);
        FpGroup::new(
            vec!["a", "b"],
            vec![
                a.pow(2 * m),
                b.pow(2).concat(&a.pow(m).inv()),
                b.concat(&a).concat(&b.inv()).concat(&a),
            ],
        )
    }

    /// Binary polyhedral presentation ⟨a, b | a^p = b^q = (ab)²⟩.
    pub fn binary_polyhedral(p: i64, q: i64) -> Self {
        let a = Word::gen(0);
        let b = Word::gen(1);
        let ab2 = a.concat(&b).pow(2);
        FpGroup::new(
            vec!["a", "b"],
            vec![a.pow(p).concat(&ab2.inv()), b.pow(q).concat(&ab2.inv())],
        )
    }

    pub fn binary_tetrahedral() -> Self {
        Self::binary_polyhedral(3, 3)
    }

    pub fn binary_octahedral() -> Self {
        Self::binary_polyhedral(4, 3)
    }

    pub fn binary_icosahedral() -> Self {
        Self::binary_polyhedral(5, 3)
    }

    pub fn ngens(&self) -> usize {
        self.gen_names.len()
    }

    /// Exact order if the coset enumeration over the trivial subgroup closes
    /// with at most `cap` cosets, `Unbounded` otherwise.
    pub fn order_bounded(&self, cap: usize) -> Order {
        assert!(cap <= 10_000, "cap limited to 10,000");
        if self.ngens() == 0 {
            return Order::Finite(1);
        }
        match CosetTable::enumerate(self.ngens(), &self.relators, &[], cap) {
            (EnumResult::Closed(n), _) => Order::Finite(n as u64),
            (EnumResult::CapExceeded, _) => Order::Unbounded,
        }
    }

    /// Append `words` as relators (quotient by their normal closure).
    pub fn quotient_by_normal_closure(&self, words: &[Word]) -> FpGroup {
        let mut rel = self.relators.clone();
        rel.extend(words.iter().cloned());
        FpGroup::new(self.gen_names.clone(), rel)
    }

    /// Invariant factors of the abelianization (0 per free rank).
    pub fn abelianization(&self) -> Vec<i64> {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|w| w.exponent_vector(self.ngens()))
            .collect();
        snf::invariant_factors(rows, self.ngens())
    }

    /// Materialize as a concrete group if the order closes below `cap`.
    pub fn to_concrete(&self, cap: usize) -> Result<FiniteGroupConcrete, GroupError> {
        if self.ngens() == 0 {
            return Ok(FiniteGroupConcrete::trivial());
        }
        match CosetTable::enumerate(self.ngens(), &self.relators, &[], cap) {
            (EnumResult::Closed(_), Some(mut table)) => {
                let perms = table.coset_action();
                Ok(FiniteGroupConcrete::from_regular_action(&perms))
            }
            _ => Err(GroupError::CapExceeded(cap)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_orders() {
        for k in 1..=24 {
            assert_eq!(FpGroup::cyclic(k).order_bounded(1000), Order::Finite(k as u64));
        }
    }

    #[test]
    fn binary_dihedral_orders() {
        for m in 1..=12 {
            assert_eq!(
                FpGroup::binary_dihedral(m).order_bounded(1000),
                Order::Finite(4 * m as u64),
                "m = {m}"
            );
        }
    }

    #[test]
    fn klein_four() {
        // ⟨a, b | a², b², (ab)²⟩
        let a = Word::gen(0);
        let b = Word::gen(1);
        let g = FpGroup::new(vec!["a", "b"], vec![a.pow(2), b.pow(2), a.concat(&b).pow(2)]);
        assert_eq!(g.order_bounded(100), Order::Finite(4));
        assert_eq!(g.abelianization(), vec![2, 2]);
    }

    #[test]
    fn binary_polyhedral_orders() {
        assert_eq!(FpGroup::binary_tetrahedral().order_bounded(1000), Order::Finite(24));
        assert_eq!(FpGroup::binary_octahedral().order_bounded(1000), Order::Finite(48));
        assert_eq!(FpGroup::binary_icosahedral().order_bounded(1000), Order::Finite(120));
    }

    #[test]
    fn free_group_unbounded() {
        let g = FpGroup::new(vec!["a", "b"], vec![]);
        assert_eq!(g.order_bounded(500), Order::Unbounded);
        assert_eq!(g.abelianization(), vec![0, 0]);
    }

    #[test]
    fn quotient_by_generators_is_trivial() {
        let g = FpGroup::cyclic(12);
        let q = g.quotient_by_normal_closure(&[Word::gen(0)]);
        assert_eq!(q.order_bounded(100), Order::Finite(1));
    }

    #[test]
    fn quotient_klein_by_factor() {
        let a = Word::gen(0);
        let b = Word::gen(1);
        let g = FpGroup::new(vec!["a", "b"], vec![a.pow(2), b.pow(2), a.concat(&b).pow(2)]);
        let q = g.quotient_by_normal_closure(&[a.clone()]);
        assert_eq!(q.order_bounded(100), Order::Finite(2));
        assert_eq!(q.abelianization(), vec![2]);
    }

    #[test]
    fn abelianizations() {
        assert_eq!(FpGroup::cyclic(5).abelianization(), vec![5]);
        // D*₂ₘ abelianization: [4] for odd m, [2, 2] for even m
        assert_eq!(FpGroup::binary_dihedral(3).abelianization(), vec![4]);
        assert_eq!(FpGroup::binary_dihedral(5).abelianization(), vec![4]);
        assert_eq!(FpGroup::binary_dihedral(2).abelianization(), vec![2, 2]);
    }

    #[test]
    fn quotient_abelianization_divides_source() {
        let g = FpGroup::binary_dihedral(6);
        let q = g.quotient_by_normal_closure(&[Word::gen(0).pow(2)]);
        let fa = g.abelianization();
        let fq = q.abelianization();
        // elementwise division after right-aligned padding
        let pad = fa.len().saturating_sub(fq.len());
        for (i, d) in fq.iter().enumerate() {
            let s = fa[pad + i];
            if s != 0 {
                assert!(d != &0 && s % d == 0, "{fq:?} should divide {fa:?}");
            }
        }
    }
}
