//! Rule tables for the named subgroups of the simple catalog factors:
//! dimensions, component groups, containments, normalizers, and the
//! recognized homogeneous quotients. The tables cover exactly the pairs the
//! classification uses.

use crate::ambient::Factor;
use crate::expr::{int, Constraint, Expr};
use crate::homspace::QuotientClass;
use crate::qops::Tri;
use crate::subgroup::{GammaKind, NamedSub};
use crate::symgroup::SymGroup;

/// Dimension of a named subgroup inside the given factor; None when the
/// factor itself is symbolic (Sp(n), SU(n)).
pub fn named_dim(factor: Factor, s: &NamedSub) -> Option<i64> {
    use NamedSub::*;
    Some(match s {
        Full => factor.dimension()?,
        Trivial => 0,
        T2 | T2Z2 => 2,
        U2 => 4,
        SU2 | SO3 | SU2Zk(_) => 3,
        U2Max | Sp1SO2 | Sp1SO2Z2 => 4,
        Sp1Sp1 | Sp1Sp1Z2 => 6,
        SU3InG2 | NSU3InG2 => 8,
        U3 => 9,
        Sp2InSU4 | Sp2Z2 => 10,
        SpinSub | NSpinSub => match factor {
            Factor::Spin5 => 6,
            Factor::Spin6 => 10,
            Factor::Spin7 => 15,
            _ => return None,
        },
        Spin8In9 => 28,
        Spin7In9 | NSpin7In9 => 21,
        SpN1 | SpN1Gamma(_) | SpN1U1 | SpN1NU1 | SpN1Sp1 | SUN1Zk(_) | SUN1U1 => return None,
    })
}

/// π₀ of a named subgroup.
pub fn named_pi0(s: &NamedSub) -> SymGroup {
    use NamedSub::*;
    match s {
        T2Z2 | Sp1SO2Z2 | Sp1Sp1Z2 | NSU3InG2 | Sp2Z2 | NSpinSub | NSpin7In9 | SpN1NU1 => {
            SymGroup::z(2)
        }
        SU2Zk(k) | SUN1Zk(k) => SymGroup::Cyclic(k.clone()),
        SpN1Gamma(g) => SymGroup::Gamma(g.clone()),
        _ => SymGroup::Trivial,
    }
}

/// Do the non-identity components of H die in the identity component of K?
/// (Needed for the van Kampen kernels on the named factors.)
pub fn named_pi0_dies(h: &NamedSub, k: &NamedSub) -> bool {
    use NamedSub::*;
    match (h, k) {
        // scalar components of S(U(2)Z_k) are connected into U(2) ⊂ SU(3),
        // and into SU(3) itself
        (SU2Zk(_), U2) | (SU2Zk(_), Full) => true,
        (SUN1Zk(_), SUN1U1) | (SUN1Zk(_), Full) => true,
        (T2Z2, U2) | (T2Z2, Full) => true,
        (Sp1SO2Z2, Sp1Sp1) | (Sp1SO2Z2, Sp1Sp1Z2) | (Sp1SO2Z2, Full) => {
            !matches!(k, Sp1Sp1Z2)
        }
        (Sp1Sp1Z2, Full) => true,
        (NSpinSub, Full) | (NSU3InG2, Full) | (NSpin7In9, Full) | (Sp2Z2, Full) => true,
        (NSpin7In9, Spin8In9) => false,
        (SpN1Gamma(_), SpN1Sp1) | (SpN1Gamma(_), Full) => true,
        (SpN1Gamma(GammaKind::Cyclic(_)), SpN1U1) => true,
        (SpN1Gamma(GammaKind::BinDih(_)), SpN1NU1) => false,
        _ => false,
    }
}

/// Containment rules among named subgroups of the same factor.
pub fn named_contains(outer: &NamedSub, inner: &NamedSub) -> Tri {
    use NamedSub::*;
    if outer == inner {
        return Tri::Yes;
    }
    if matches!(outer, Full) || matches!(inner, Trivial) {
        return Tri::Yes;
    }
    match (outer, inner) {
        (U2, T2) | (U2, T2Z2) | (U2, SU2) | (U2, SU2Zk(_)) => Tri::Yes,
        (T2Z2, T2) => Tri::Yes,
        (SU2Zk(_), SU2) => Tri::Yes,
        (SU2Zk(a), SU2Zk(b)) => Tri::If(vec![Constraint::Divides(b.clone(), a.clone())]),
        (Sp1SO2Z2, Sp1SO2) => Tri::Yes,
        (Sp1Sp1, Sp1SO2) | (Sp1Sp1, Sp1SO2Z2) => Tri::Yes,
        (Sp1Sp1Z2, Sp1Sp1) | (Sp1Sp1Z2, Sp1SO2) | (Sp1Sp1Z2, Sp1SO2Z2) => Tri::Yes,
        (NSU3InG2, SU3InG2) => Tri::Yes,
        (Sp2Z2, Sp2InSU4) => Tri::Yes,
        (NSpinSub, SpinSub) => Tri::Yes,
        (SpN1Gamma(_), SpN1) => Tri::Yes,
        (SpN1U1, SpN1) | (SpN1NU1, SpN1) | (SpN1Sp1, SpN1) => Tri::Yes,
        (SpN1U1, SpN1Gamma(GammaKind::Cyclic(_))) => Tri::Yes,
        (SpN1NU1, SpN1Gamma(GammaKind::Cyclic(_)))
        | (SpN1NU1, SpN1Gamma(GammaKind::BinDih(_))) => Tri::Yes,
        (SpN1NU1, SpN1U1) => Tri::Yes,
        (SpN1Sp1, SpN1Gamma(_)) | (SpN1Sp1, SpN1U1) | (SpN1Sp1, SpN1NU1) => Tri::Yes,
        (SUN1U1, SUN1Zk(_)) => Tri::Yes,
        (Spin8In9, Spin7In9) => Tri::Yes,
        (Spin8In9, NSpin7In9) => Tri::Yes,
        (NSpin7In9, Spin7In9) => Tri::Yes,
        _ => Tri::No,
    }
}

/// Normalizer rules for named subgroups (the pairs the classification uses).
pub fn named_normalizer(factor: Factor, s: &NamedSub) -> Option<NamedSub> {
    use NamedSub::*;
    Some(match (factor.iso_class(), s) {
        (_, Full) | (_, Trivial) => Full,
        (Factor::SU3, U2) => U2,
        (Factor::SU3, SU2) | (Factor::SU3, SU2Zk(_)) => U2,
        (Factor::SU3, SO3) => SO3,
        (Factor::Sp2, Sp1Sp1) => Sp1Sp1Z2,
        (Factor::Sp2, Sp1Sp1Z2) => Sp1Sp1Z2,
        (Factor::Sp2, U2Max) => U2Max,
        (Factor::G2, SU3InG2) => NSU3InG2,
        (Factor::SU4, U3) => U3,
        (Factor::SU4, Sp2InSU4) => Sp2Z2,
        (_, SpinSub) => NSpinSub,
        (_, NSpinSub) => NSpinSub,
        (Factor::SpN, SpN1U1) => SpN1NU1,
        (Factor::SpN, SpN1Sp1) => SpN1Sp1,
        (Factor::SUN, SUN1U1) => SUN1U1,
        (Factor::Spin9, Spin7In9) => NSpin7In9,
        _ => return None,
    })
}

/// Recognized quotients K/H of named subgroups inside one factor.
pub fn named_quotient(factor: Factor, k: &NamedSub, h: &NamedSub) -> Option<QuotientClass> {
    use NamedSub::*;
    let f = factor.iso_class();
    Some(match (f, k, h) {
        // SU(3)
        (Factor::SU3, Full, U2) => QuotientClass::ComplexProjective(int(2)),
        (Factor::SU3, Full, SU2) => QuotientClass::sphere(5),
        (Factor::SU3, Full, SU2Zk(e)) => QuotientClass::SpaceForm {
            dim: int(5),
            deck: SymGroup::Cyclic(e.clone()),
        },
        (Factor::SU3, Full, T2) => QuotientClass::Wallach,
        (Factor::SU3, Full, T2Z2) => QuotientClass::WallachModZ2,
        (Factor::SU3, Full, SO3) => QuotientClass::NotPositivelyCurved,
        (Factor::SU3, U2, SU2) | (Factor::SU3, U2, SU2Zk(_)) => QuotientClass::sphere(1),
        (Factor::SU3, U2, T2) => QuotientClass::sphere(2),
        (Factor::SU3, U2, T2Z2) => QuotientClass::rp(2),
        (Factor::SU3, SU2Zk(_), SU2) => QuotientClass::Point,
        // Sp(2) ≅ Spin(5)
        (Factor::Sp2, Full, Sp1SO2) => QuotientClass::ComplexProjective(int(3)),
        (Factor::Sp2, Full, Sp1SO2Z2) => QuotientClass::CP3ModZ2,
        (Factor::Sp2, Full, Sp1Sp1) => QuotientClass::sphere(4),
        (Factor::Sp2, Full, Sp1Sp1Z2) => QuotientClass::rp(4),
        (Factor::Sp2, Full, U2Max) => QuotientClass::NotPositivelyCurved,
        (Factor::Sp2, Sp1Sp1, Sp1SO2) => QuotientClass::sphere(2),
        (Factor::Sp2, Sp1Sp1, Sp1SO2Z2) => QuotientClass::rp(2),
        (Factor::Sp2, Sp1Sp1Z2, Sp1SO2Z2) => QuotientClass::sphere(2),
        (Factor::Sp2, Sp1Sp1Z2, Sp1Sp1) => QuotientClass::Point,
        (Factor::Sp2, Full, SpinSub) => QuotientClass::sphere(4),
        (Factor::Sp2, Full, NSpinSub) => QuotientClass::rp(4),
        // G₂
        (Factor::G2, Full, SU3InG2) => QuotientClass::sphere(6),
        (Factor::G2, Full, NSU3InG2) => QuotientClass::rp(6),
        // SU(4) ≅ Spin(6)
        (Factor::SU4, Full, U3) => QuotientClass::ComplexProjective(int(3)),
        (Factor::SU4, Full, Sp2InSU4) => QuotientClass::sphere(5),
        (Factor::SU4, Full, Sp2Z2) => QuotientClass::rp(5),
        (Factor::SU4, Full, SpinSub) => QuotientClass::sphere(5),
        (Factor::SU4, Full, NSpinSub) => QuotientClass::rp(5),
        (Factor::SU4, Sp2Z2, Sp2InSU4) => QuotientClass::Point,
        // Spin(7)
        (Factor::Spin7, Full, SpinSub) => QuotientClass::sphere(6),
        (Factor::Spin7, Full, NSpinSub) => QuotientClass::rp(6),
        // Sp(n) family: S^{4n−1} and its quotients; the dimension stays
        // symbolic (4n−1)
        (Factor::SpN, Full, SpN1) => QuotientClass::Sphere(sym_4n_minus_1()),
        (Factor::SpN, Full, SpN1Gamma(g)) => QuotientClass::SpaceForm {
            dim: sym_4n_minus_1(),
            deck: SymGroup::Gamma(g.clone()),
        },
        (Factor::SpN, Full, SpN1U1) => QuotientClass::ComplexProjective(sym_2n_minus_1()),
        (Factor::SpN, Full, SpN1NU1) => QuotientClass::NotPositivelyCurved,
        (Factor::SpN, SpN1U1, SpN1Gamma(GammaKind::Cyclic(_))) => QuotientClass::sphere(1),
        (Factor::SpN, SpN1NU1, SpN1Gamma(GammaKind::BinDih(_))) => QuotientClass::sphere(1),
        (Factor::SpN, SpN1Sp1, SpN1Gamma(g)) => QuotientClass::SpaceForm {
            dim: int(3),
            deck: SymGroup::Gamma(g.clone()),
        },
        (Factor::SpN, SpN1Sp1, SpN1) => QuotientClass::sphere(3),
        // SU(n) family
        (Factor::SUN, Full, SUN1Zk(e)) => QuotientClass::SpaceForm {
            dim: sym_2n_minus_1(),
            deck: SymGroup::Cyclic(e.clone()),
        },
        (Factor::SUN, Full, SUN1U1) => QuotientClass::ComplexProjective(sym_n_minus_1()),
        (Factor::SUN, SUN1U1, SUN1Zk(_)) => QuotientClass::sphere(1),
        // Spin(9)
        (Factor::Spin9, Full, NSpin7In9) => QuotientClass::rp(15),
        (Factor::Spin9, Full, Spin8In9) => QuotientClass::sphere(8),
        (Factor::Spin9, Spin8In9, NSpin7In9) => QuotientClass::rp(7),
        (Factor::Spin9, Spin8In9, Spin7In9) => QuotientClass::sphere(7),
        _ => return None,
    })
}

fn sym_4n_minus_1() -> Expr {
    int(4).mul(crate::expr::var("n")).sub(int(1)).normalize()
}

fn sym_2n_minus_1() -> Expr {
    int(2).mul(crate::expr::var("n")).sub(int(1)).normalize()
}

fn sym_n_minus_1() -> Expr {
    crate::expr::var("n").sub(int(1)).normalize()
}

/// Dimensions of the proper subgroups of a simple factor (used when pruning
/// candidate acting groups: a principal isotropy group of the required
/// dimension must exist).
pub fn subgroup_dims(factor: Factor) -> Vec<i64> {
    match factor.iso_class() {
        Factor::S1 => vec![0, 1],
        Factor::S3 => vec![0, 1, 3],
        Factor::SU3 => vec![0, 1, 2, 3, 4, 8],
        Factor::Sp2 => vec![0, 1, 2, 3, 4, 6, 10],
        Factor::G2 => vec![0, 1, 2, 3, 4, 6, 8, 14],
        Factor::SU4 => vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15],
        Factor::Sp3 => vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 21],
        Factor::Spin7 => vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 14, 15, 21],
        _ => vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        assert_eq!(named_dim(Factor::SU3, &NamedSub::U2), Some(4));
        assert_eq!(named_dim(Factor::SU3, &NamedSub::SU2Zk(int(5))), Some(3));
        assert_eq!(named_dim(Factor::Spin6, &NamedSub::SpinSub), Some(10));
    }

    #[test]
    fn quotients() {
        assert_eq!(
            named_quotient(Factor::SU3, &NamedSub::Full, &NamedSub::U2),
            Some(QuotientClass::ComplexProjective(int(2)))
        );
        assert_eq!(
            named_quotient(Factor::Spin5, &NamedSub::Full, &NamedSub::NSpinSub),
            Some(QuotientClass::rp(4))
        );
        assert!(named_quotient(Factor::SU3, &NamedSub::Full, &NamedSub::SO3)
            .map(|c| !c.is_positively_curved())
            .unwrap());
    }

    #[test]
    fn normalizer_contains_subgroup() {
        let pairs = [
            (Factor::SU3, NamedSub::SU2),
            (Factor::Sp2, NamedSub::Sp1Sp1),
            (Factor::Spin5, NamedSub::SpinSub),
            (Factor::G2, NamedSub::SU3InG2),
        ];
        for (f, s) in pairs {
            let n = named_normalizer(f, &s).unwrap();
            assert!(named_contains(&n, &s).is_yes(), "{f:?} {s:?}");
        }
    }
}
