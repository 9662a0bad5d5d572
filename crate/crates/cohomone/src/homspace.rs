//! Recognition of homogeneous quotients K/H: transitive sphere actions,
//! positively curved homogeneous spaces in dimension ≤ 6, and spherical
//! space forms, together with the deck-group bookkeeping.

use crate::ambient::AmbientGroup;
use crate::catalog;
use crate::expr::{int, Expr};
use crate::qops::{self, Tri};
use crate::subgroup::{FinGen, GammaKind, Placement, QSub, SubgroupDescriptor};
use crate::symgroup::SymGroup;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuotientClass {
    Point,
    Sphere(Expr),
    RealProjective(Expr),
    ComplexProjective(Expr),
    SpaceForm { dim: Expr, deck: SymGroup },
    CP3ModZ2,
    Wallach,
    WallachModZ2,
    NotPositivelyCurved,
    NotTransitive,
}

impl QuotientClass {
    pub fn sphere(n: i64) -> Self {
        QuotientClass::Sphere(int(n))
    }

    pub fn rp(n: i64) -> Self {
        QuotientClass::RealProjective(int(n))
    }

    pub fn space_form(dim: i64, deck: SymGroup) -> Self {
        QuotientClass::SpaceForm { dim: int(dim), deck }
    }

    /// The Table 3.3 test: positively curved homogeneous spaces in
    /// dimension at most 6.
    pub fn is_positively_curved(&self) -> bool {
        !matches!(
            self,
            QuotientClass::NotPositivelyCurved | QuotientClass::NotTransitive
        )
    }

    /// Spherical space forms: S^n, RP^n and the S³/Γ, S⁵/Z_k families.
    /// CP^n, the Wallach flag manifold and their quotients are not.
    pub fn is_spherical_space_form(&self) -> bool {
        matches!(
            self,
            QuotientClass::Sphere(_)
                | QuotientClass::RealProjective(_)
                | QuotientClass::SpaceForm { .. }
        )
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self, QuotientClass::Sphere(_))
    }

    pub fn dim(&self) -> Option<Expr> {
        match self {
            QuotientClass::Point => Some(int(0)),
            QuotientClass::Sphere(n) | QuotientClass::RealProjective(n) => Some(n.clone()),
            QuotientClass::ComplexProjective(n) => Some(int(2).mul(n.clone()).normalize()),
            QuotientClass::SpaceForm { dim, .. } => Some(dim.clone()),
            QuotientClass::CP3ModZ2 => Some(int(6)),
            QuotientClass::Wallach | QuotientClass::WallachModZ2 => Some(int(6)),
            _ => None,
        }
    }

    /// The local (deck) group attached to the normal space of directions.
    pub fn deck_group(&self) -> Option<SymGroup> {
        match self {
            QuotientClass::Point => Some(SymGroup::Trivial),
            QuotientClass::Sphere(_) => Some(SymGroup::Trivial),
            QuotientClass::RealProjective(_) => Some(SymGroup::z(2)),
            QuotientClass::SpaceForm { deck, .. } => Some(deck.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for QuotientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientClass::Point => write!(f, "pt"),
            QuotientClass::Sphere(n) => write!(f, "S^{n}"),
            QuotientClass::RealProjective(n) => write!(f, "RP^{n}"),
            QuotientClass::ComplexProjective(n) => write!(f, "CP^{n}"),
            QuotientClass::SpaceForm { dim, deck } => write!(f, "S^{dim}/{deck}"),
            QuotientClass::CP3ModZ2 => write!(f, "CP^3/Z_2"),
            QuotientClass::Wallach => write!(f, "W^6"),
            QuotientClass::WallachModZ2 => write!(f, "W^6/Z_2"),
            QuotientClass::NotPositivelyCurved => write!(f, "not positively curved"),
            QuotientClass::NotTransitive => write!(f, "not transitive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("quotient dimension {0} exceeds 6")]
    DimensionOutOfRange(i64),
    #[error("not in catalog: {0}")]
    NotInCatalog(String),
    #[error("inclusion H ⊆ K fails")]
    InclusionFails,
}

/// Classify K/H for catalog descriptors over the same ambient group.
/// Both the named parts and the quaternionic part contribute; a positively
/// curved class arises only when at most one part is non-trivial.
pub fn classify_quotient(
    ambient: &AmbientGroup,
    k: &SubgroupDescriptor,
    h: &SubgroupDescriptor,
) -> Result<QuotientClass, ClassifyError> {
    let mut classes: Vec<QuotientClass> = Vec::new();
    for (idx, k_named) in &k.named {
        let h_named = h
            .named_at(*idx)
            .ok_or_else(|| ClassifyError::NotInCatalog("missing named part".into()))?;
        if k_named == h_named {
            continue;
        }
        let factor = ambient.factors[*idx];
        let c = catalog::named_quotient(factor, k_named, h_named)
            .ok_or_else(|| {
                ClassifyError::NotInCatalog(format!(
                    "quotient {k_named:?}/{h_named:?} in {}",
                    factor.name()
                ))
            })?;
        classes.push(c);
    }
    let qc = classify_quat(&ambient.coord_is_s3(), &k.quat, &h.quat)?;
    if qc != QuotientClass::Point {
        classes.push(qc);
    }
    match classes.len() {
        0 => Ok(QuotientClass::Point),
        1 => {
            let c = classes.pop().unwrap();
            if let Some(d) = c.dim().and_then(|e| e.as_int()) {
                if d > 6 {
                    return Err(ClassifyError::DimensionOutOfRange(d));
                }
            }
            Ok(c)
        }
        _ => Ok(QuotientClass::NotPositivelyCurved),
    }
}

/// Classification inside a product of S³ and S¹ factors.
pub fn classify_quat(
    coord_is_s3: &[bool],
    k: &QSub,
    h: &QSub,
) -> Result<QuotientClass, ClassifyError> {
    let d = k.dimension() - h.dimension();
    if d < 0 {
        return Err(ClassifyError::InclusionFails);
    }
    if d > 6 {
        return Err(ClassifyError::DimensionOutOfRange(d));
    }
    if d == 0 {
        return Ok(QuotientClass::Point);
    }
    if d == 1 {
        return Ok(QuotientClass::Sphere(int(1)));
    }
    let k0 = k.identity_component();
    // the acting blocks of K₀ that are not fully inside H
    let acting: Vec<&crate::subgroup::Block> = k0
        .blocks
        .iter()
        .filter(|b| {
            !(b.coords.len() == 1 && h.blocks.iter().any(|hb| hb.coords == b.coords))
                && !(b.coords.len() == 2
                    && h.blocks.iter().any(|hb| hb.coords == b.coords && hb.conj == b.conj))
        })
        .collect();
    match (d, acting.len()) {
        (2, 1) => {
            let b = acting[0];
            // two components in the isotropy ⇔ RP²: an H-generator inside K₀
            // with a j-flag over the block
            let mut rp = false;
            for f in &h.fins {
                if let FinGen::Pt(pt) = f {
                    let has_j = b.coords.iter().any(|&c| pt[c].j);
                    if has_j && qops::conn_member_pt(&k0, pt).is_yes() {
                        rp = true;
                    }
                }
                if let FinGen::Gamma { kind: GammaKind::BinDih(_), place } = f {
                    // a binary dihedral part meeting the block contributes
                    // its j-coset when the block restriction is N(S¹)-like
                    let pc = place.coords();
                    if pc.iter().all(|c| b.coords.contains(c)) && pc.len() == b.coords.len() {
                        rp = true;
                    }
                }
            }
            Ok(if rp { QuotientClass::rp(2) } else { QuotientClass::sphere(2) })
        }
        (2, 0) => Ok(QuotientClass::NotPositivelyCurved),
        (3, 1) => {
            let b = acting[0];
            let deck = deck_over_block(&k0, h, b)?;
            Ok(match deck {
                SymGroup::Trivial => QuotientClass::sphere(3),
                g => QuotientClass::SpaceForm { dim: int(3), deck: g },
            })
        }
        (3, 0) => Ok(QuotientClass::NotPositivelyCurved),
        (3, 2) => {
            // two full factors acting on a diagonal isotropy: the Sp(1)×Sp(1)
            // action on S³ with isotropy ΔS³·(finite part)
            let (a, b) = (acting[0], acting[1]);
            if a.coords.len() == 1 && b.coords.len() == 1 {
                let (ca, cb) = (a.coords[0], b.coords[0]);
                let hd = h
                    .blocks
                    .iter()
                    .find(|hb| hb.coords == vec![ca.min(cb), ca.max(cb)]);
                if let Some(_hd) = hd {
                    // deck group: central point extensions of the diagonal
                    let mut deck = SymGroup::Trivial;
                    for f in &h.fins {
                        if let FinGen::Pt(pt) = f {
                            if pt.iter().all(|p| !p.j)
                                && pt.iter().any(|p| !p.turns.is_zero())
                            {
                                deck = SymGroup::z(2);
                            }
                        }
                    }
                    return Ok(match deck {
                        SymGroup::Trivial => QuotientClass::sphere(3),
                        g => QuotientClass::SpaceForm { dim: int(3), deck: g },
                    });
                }
            }
            Ok(QuotientClass::NotPositivelyCurved)
        }
        (_, _) => {
            let _ = coord_is_s3;
            Ok(QuotientClass::NotPositivelyCurved)
        }
    }
}

/// The deck group of K₀/(H ∩ K₀) when the transitive part is the block `b`
/// of K₀ (dimension-3 quotients).
fn deck_over_block(
    k0: &QSub,
    h: &QSub,
    b: &crate::subgroup::Block,
) -> Result<SymGroup, ClassifyError> {
    let mut parts: Vec<SymGroup> = Vec::new();
    // mixed H₀-circles winding through the block and a K₀-line produce the
    // lens deck: H₀ row with support meeting b and a non-b coordinate
    let mut lens: Option<SymGroup> = None;
    for row in &h.lattice {
        let in_b = b.coords.iter().any(|&c| !matches!(row[c].normalize(), Expr::Int(0)));
        let out_b = row
            .iter()
            .enumerate()
            .any(|(c, e)| !b.coords.contains(&c) && !matches!(e.normalize(), Expr::Int(0)));
        if in_b && out_b {
            // the deck is the cyclic group of H's finite part over the block
            lens = Some(SymGroup::Trivial);
        }
    }
    for f in &h.fins {
        match f {
            FinGen::Gamma { kind, place } => {
                let pc = place.coords();
                let inside = match place {
                    Placement::Coord(c) => {
                        (b.coords.len() == 1 && b.coords[0] == *c)
                            || (b.coords.len() == 2 && b.coords.contains(c) && {
                                // Γ in one leg of a diagonal block is not a
                                // subgroup of the block
                                false
                            })
                    }
                    Placement::Diag(x, y) => {
                        b.coords.len() == 2 && b.coords == vec![*x, *y]
                    }
                };
                let _ = pc;
                if inside {
                    parts.push(SymGroup::Gamma(kind.clone()));
                }
            }
            FinGen::Pt(pt) => {
                // point generators fully supported over the block and inside
                // K₀ contribute cyclic classes; ± diagonal twists are part of
                // the block quotient and contribute Z₂ only when the point
                // lies in K₀
                if qops::conn_member_pt(&k0.identity_component(), pt).is_yes() {
                    continue;
                }
                let supported = pt
                    .iter()
                    .enumerate()
                    .all(|(c, p)| b.coords.contains(&c) || p.is_one());
                if supported {
                    let ord = pt
                        .iter()
                        .enumerate()
                        .filter(|(c, _)| b.coords.contains(c))
                        .map(|(_, p)| if p.j { int(4) } else { p.turns.den.clone() })
                        .next()
                        .unwrap_or(int(1));
                    if ord.as_int() != Some(1) {
                        parts.push(SymGroup::Cyclic(ord));
                    }
                }
            }
        }
    }
    if let Some(_l) = lens {
        // lens case: H is the graph isotropy of the transitive block×circle
        // action; the deck is H's cyclic finite part (wherever it is placed)
        for f in &h.fins {
            if let FinGen::Gamma { kind: GammaKind::Cyclic(e), .. } = f {
                return Ok(SymGroup::Cyclic(e.clone()));
            }
        }
        return Ok(SymGroup::Trivial);
    }
    Ok(match parts.len() {
        0 => SymGroup::Trivial,
        1 => parts.pop().unwrap(),
        _ => SymGroup::Product(parts),
    })
}

/// Check K = K₀·H (Prop 2.17): the completion of K₀ by H equals K.
pub fn transitive_closure_holds(k: &QSub, h: &QSub) -> Tri {
    let completed = qops::complete_by(&k.identity_component(), h);
    let a = qops::qsub_contains(k, &completed);
    let b = qops::qsub_contains(&completed, k);
    a.and(b)
}

// ---------------------------------------------------------------------------
// Transitive actions on spheres

/// One family from the classification of transitive sphere actions, with the
/// sphere dimension n−1 written through the parameter k where applicable.
#[derive(Debug, Clone)]
pub struct SphereActionRecord {
    pub group: String,
    /// dimension of the sphere plus one (the n of S^{n-1})
    pub n: String,
    pub representation: String,
    pub isotropy: String,
    /// dim G and dim H as functions of k (k irrelevant for the fixed ones)
    pub dim_g: fn(i64) -> i64,
    pub dim_h: fn(i64) -> i64,
    pub n_of: fn(i64) -> i64,
}

pub fn sphere_action_table() -> Vec<SphereActionRecord> {
    vec![
        SphereActionRecord {
            group: "SO(n)".into(),
            n: "n".into(),
            representation: "rho_n".into(),
            isotropy: "SO(n-1)".into(),
            dim_g: |k| k * (k - 1) / 2,
            dim_h: |k| (k - 1) * (k - 2) / 2,
            n_of: |k| k,
        },
        SphereActionRecord {
            group: "G2".into(),
            n: "7".into(),
            representation: "phi_2".into(),
            isotropy: "SU(3)".into(),
            dim_g: |_| 14,
            dim_h: |_| 8,
            n_of: |_| 7,
        },
        SphereActionRecord {
            group: "Spin(7)".into(),
            n: "8".into(),
            representation: "Delta_7".into(),
            isotropy: "G2".into(),
            dim_g: |_| 21,
            dim_h: |_| 14,
            n_of: |_| 8,
        },
        SphereActionRecord {
            group: "U(k)".into(),
            n: "2k".into(),
            representation: "mu_k".into(),
            isotropy: "U(k-1)".into(),
            dim_g: |k| k * k,
            dim_h: |k| (k - 1) * (k - 1),
            n_of: |k| 2 * k,
        },
        SphereActionRecord {
            group: "Sp(k)".into(),
            n: "4k".into(),
            representation: "nu_k".into(),
            isotropy: "Sp(k-1)".into(),
            dim_g: |k| k * (2 * k + 1),
            dim_h: |k| (k - 1) * (2 * k - 1),
            n_of: |k| 4 * k,
        },
        SphereActionRecord {
            group: "Sp(k)xS1".into(),
            n: "4k".into(),
            representation: "nu_k (x) mu_1".into(),
            isotropy: "Sp(k-1)xS1".into(),
            dim_g: |k| k * (2 * k + 1) + 1,
            dim_h: |k| (k - 1) * (2 * k - 1) + 1,
            n_of: |k| 4 * k,
        },
        SphereActionRecord {
            group: "Sp(k)xS3".into(),
            n: "4k".into(),
            representation: "nu_k (x) nu_1".into(),
            isotropy: "Sp(k-1)xS3".into(),
            dim_g: |k| k * (2 * k + 1) + 3,
            dim_h: |k| (k - 1) * (2 * k - 1) + 3,
            n_of: |k| 4 * k,
        },
        SphereActionRecord {
            group: "Spin(9)".into(),
            n: "16".into(),
            representation: "Delta_9".into(),
            isotropy: "Spin(7)".into(),
            dim_g: |_| 36,
            dim_h: |_| 21,
            n_of: |_| 16,
        },
        SphereActionRecord {
            group: "SU(k)".into(),
            n: "2k".into(),
            representation: "mu_k".into(),
            isotropy: "SU(k-1)".into(),
            dim_g: |k| k * k - 1,
            dim_h: |k| (k - 1) * (k - 1) - 1,
            n_of: |k| 2 * k,
        },
        SphereActionRecord {
            group: "S1".into(),
            n: "2".into(),
            representation: "mu_1".into(),
            isotropy: "1".into(),
            dim_g: |_| 1,
            dim_h: |_| 0,
            n_of: |_| 2,
        },
    ]
}

/// All records whose acting-group pattern matches the given name, matching
/// the symbolic families literally on their family name.
pub fn transitive_sphere_lookup(pattern: &str) -> Vec<SphereActionRecord> {
    sphere_action_table()
        .into_iter()
        .filter(|r| r.group == pattern)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::var;
    use crate::subgroup::{Block, PtCoord, SymTurns};

    fn s3s3() -> Vec<bool> {
        vec![true, true]
    }

    #[test]
    fn sphere_table_dimension_identity() {
        for r in sphere_action_table() {
            for k in 2..=6 {
                assert_eq!(
                    (r.dim_g)(k) - (r.dim_h)(k),
                    (r.n_of)(k) - 1,
                    "record {} at k={k}",
                    r.group
                );
            }
        }
    }

    #[test]
    fn lookup_spin7() {
        let recs = transitive_sphere_lookup("Spin(7)");
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].isotropy, "G2");
        let recs = transitive_sphere_lookup("G2");
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].isotropy, "SU(3)");
    }

    #[test]
    fn classify_rp2_from_ns1() {
        // S³×S¹ / N(S¹)×S¹ = RP²
        let k = QSub::trivial(2)
            .with_block(Block::single(0))
            .with_lattice_row(vec![int(0), int(1)]);
        let h = QSub::trivial(2)
            .with_lattice_row(vec![int(1), int(0)])
            .with_lattice_row(vec![int(0), int(1)])
            .with_pt(QSub::pt_at(2, &[(0, PtCoord::jj())]));
        assert_eq!(classify_quat(&s3s3(), &k, &h).unwrap(), QuotientClass::rp(2));
    }

    #[test]
    fn classify_s3_mod_gamma() {
        // S³×Γ-side: K = S³×1-block, H = Γ×1
        let k = QSub::trivial(2).with_block(Block::single(0));
        let h = QSub::trivial(2).with_gamma(GammaKind::sym("G"), Placement::Coord(0));
        match classify_quat(&s3s3(), &k, &h).unwrap() {
            QuotientClass::SpaceForm { dim, deck } => {
                assert_eq!(dim.as_int(), Some(3));
                assert_eq!(deck, SymGroup::Gamma(GammaKind::sym("G")));
            }
            other => panic!("got {other}"),
        }
    }

    #[test]
    fn classify_lens_family() {
        // K = S³×S¹ ⊃ H = {(e^{ipθ}λ, e^{iθ})}: S³/Z_k
        let k = QSub::trivial(2)
            .with_block(Block::single(0))
            .with_lattice_row(vec![int(0), int(1)]);
        let h = QSub::trivial(2)
            .with_lattice_row(vec![var("p"), int(1)])
            .with_gamma(GammaKind::Cyclic(var("k")), Placement::Coord(0));
        match classify_quat(&s3s3(), &k, &h).unwrap() {
            QuotientClass::SpaceForm { deck, .. } => {
                assert_eq!(deck, SymGroup::Cyclic(var("k")));
            }
            other => panic!("got {other}"),
        }
    }

    #[test]
    fn classify_sphere2_from_pm_delta() {
        // ±ΔS³ / ±ΔS¹ = S²
        let k = QSub::trivial(2)
            .with_block(Block::diag(0, 1))
            .with_pt(QSub::pt_at(2, &[(0, PtCoord::minus_one())]));
        let h = QSub::trivial(2)
            .with_lattice_row(vec![int(1), int(1)])
            .with_pt(QSub::pt_at(2, &[(0, PtCoord::minus_one())]));
        assert_eq!(classify_quat(&s3s3(), &k, &h).unwrap(), QuotientClass::sphere(2));
    }
}
