//! Exact symbolic elements of the normalizer N(S¹) = S¹ ∪ jS¹ inside the unit
//! quaternions S³, and the finite subgroups of S³ built from them.
//!
//! An element is stored in the normal form j^ε · e^{2πi·t} with ε ∈ {0, 1}
//! and t ∈ [0, 1) an exact rational number of turns. The group law follows
//! from j e^{iθ} = e^{−iθ} j and j² = −1, so no floating point enters the
//! arithmetic.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Rat = Ratio<i64>;

/// Reduce a rational number of turns into [0, 1).
pub fn turns_mod1(t: Rat) -> Rat {
    let one = Rat::one();
    let mut t = t;
    if t.is_negative() || t >= one {
        let f = t.floor();
        t -= f;
    }
    t
}

/// An exact element of S¹ ∪ jS¹ ⊂ S³: the quaternion j^ε·e^{2πi·turns}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuatElem {
    pub j: bool,
    turns: Rat,
}

impl QuatElem {
    pub fn new(j: bool, turns: Rat) -> Self {
        QuatElem { j, turns: turns_mod1(turns) }
    }

    pub fn one() -> Self {
        QuatElem { j: false, turns: Rat::zero() }
    }

    pub fn minus_one() -> Self {
        QuatElem::new(false, Rat::new(1, 2))
    }

    pub fn i() -> Self {
        QuatElem::new(false, Rat::new(1, 4))
    }

    pub fn j() -> Self {
        QuatElem::new(true, Rat::zero())
    }

    /// e^{iπ·a/m} in the paper's half-turn notation.
    pub fn from_half_turns(a: i64, m: i64) -> Self {
        QuatElem::new(false, Rat::new(a, 2 * m))
    }

    pub fn turns(&self) -> Rat {
        self.turns
    }

    /// The pair (a, 2m) with the element equal to j^ε e^{iπ a/m}, 0 ≤ a < 2m.
    pub fn half_turns(&self) -> (i64, i64) {
        let two_t = self.turns * Rat::new(2, 1);
        (*two_t.numer(), *two_t.denom() * 2)
    }

    pub fn is_one(&self) -> bool {
        !self.j && self.turns.is_zero()
    }

    pub fn is_central(&self) -> bool {
        !self.j && (self.turns.is_zero() || self.turns == Rat::new(1, 2))
    }

    pub fn mul(&self, rhs: &QuatElem) -> QuatElem {
        match (self.j, rhs.j) {
            (false, false) => QuatElem::new(false, self.turns + rhs.turns),
            (false, true) => QuatElem::new(true, rhs.turns - self.turns),
            (true, false) => QuatElem::new(true, self.turns + rhs.turns),
            (true, true) => QuatElem::new(false, rhs.turns - self.turns + Rat::new(1, 2)),
        }
    }

    pub fn inv(&self) -> QuatElem {
        if self.j {
            QuatElem::new(true, self.turns + Rat::new(1, 2))
        } else {
            QuatElem::new(false, -self.turns)
        }
    }

    pub fn conj_by(&self, g: &QuatElem) -> QuatElem {
        g.mul(self).mul(&g.inv())
    }

    /// Multiplicative order; j-elements square to −1, hence have order 4.
    pub fn order(&self) -> u64 {
        if self.j {
            4
        } else if self.turns.is_zero() {
            1
        } else {
            *self.turns.denom() as u64
        }
    }

    /// Components (w, x, y, z) of the quaternion w + xi + yj + zk.
    pub fn to_quaternion(&self) -> [f64; 4] {
        let theta = 2.0 * std::f64::consts::PI * (*self.turns.numer() as f64)
            / (*self.turns.denom() as f64);
        if self.j {
            // j·(cosθ + i sinθ) = cosθ·j − sinθ·k
            [0.0, 0.0, theta.cos(), -theta.sin()]
        } else {
            [theta.cos(), theta.sin(), 0.0, 0.0]
        }
    }
}

impl fmt::Display for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        if *self == QuatElem::minus_one() {
            return write!(f, "-1");
        }
        if self.j {
            write!(f, "j")?;
            if !self.turns.is_zero() {
                write!(f, "·e({})", self.turns)?;
            }
            Ok(())
        } else {
            write!(f, "e({})", self.turns)
        }
    }
}

/// The finite subgroups of S³ up to conjugacy, in the placement used
/// throughout: cyclic groups inside the circle {e^{iθ}}, binary dihedral
/// groups ⟨e^{πi/m}, j⟩, and the three binary polyhedral groups kept opaque.
///
/// `BinaryDihedral(1)` is the cyclic group ⟨j⟩ of order 4 around the j-axis,
/// following the m = 1 convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteSubgroupS3 {
    Cyclic(i64),
    BinaryDihedral(i64),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl FiniteSubgroupS3 {
    pub fn order(&self) -> i64 {
        match self {
            FiniteSubgroupS3::Cyclic(k) => *k,
            FiniteSubgroupS3::BinaryDihedral(m) => 4 * m,
            FiniteSubgroupS3::BinaryTetrahedral => 24,
            FiniteSubgroupS3::BinaryOctahedral => 48,
            FiniteSubgroupS3::BinaryIcosahedral => 120,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, FiniteSubgroupS3::Cyclic(_))
            || matches!(self, FiniteSubgroupS3::BinaryDihedral(1))
    }

    /// Materialized element list for the cyclic and binary dihedral kinds.
    /// The polyhedral kinds are opaque and yield `None`.
    pub fn elements(&self) -> Option<Vec<QuatElem>> {
        match self {
            FiniteSubgroupS3::Cyclic(k) => {
                assert!(*k >= 1);
                Some((0..*k).map(|l| QuatElem::new(false, Rat::new(l, *k))).collect())
            }
            FiniteSubgroupS3::BinaryDihedral(m) => {
                assert!(*m >= 1);
                let mut v = Vec::with_capacity((4 * m) as usize);
                for a in 0..(2 * m) {
                    v.push(QuatElem::new(false, Rat::new(a, 2 * m)));
                    v.push(QuatElem::new(true, Rat::new(a, 2 * m)));
                }
                Some(v)
            }
            _ => None,
        }
    }

    pub fn contains(&self, q: &QuatElem) -> Option<bool> {
        self.elements().map(|els| els.contains(q))
    }

    pub fn label(&self) -> String {
        match self {
            FiniteSubgroupS3::Cyclic(k) => format!("Z{k}"),
            FiniteSubgroupS3::BinaryDihedral(m) => format!("D*{}", 2 * m),
            FiniteSubgroupS3::BinaryTetrahedral => "2T".into(),
            FiniteSubgroupS3::BinaryOctahedral => "2O".into(),
            FiniteSubgroupS3::BinaryIcosahedral => "2I".into(),
        }
    }
}

/// Axis of a circle subgroup of S³; all catalog data is normalized to the
/// i-axis, the j-axis only shows up for the m = 1 binary dihedral convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    I,
    J,
}

/// Subgroups of S³ that appear as centralizers and normalizers of catalog
/// subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum S3SubgroupFact {
    Full,
    /// {±1}, the center.
    Center,
    /// The circle {e^{iθ}} around the given axis.
    Circle(Axis),
    /// N(S¹) = S¹ ∪ jS¹ around the given axis (two components).
    NormalizerCircle(Axis),
    Finite(FiniteSubgroupS3),
}

/// C_{S³}(Λ): {±1} for non-cyclic Λ, the ambient circle for cyclic Λ with
/// k ≥ 3, and all of S³ for the central subgroups Z₁, Z₂.
pub fn centralizer_in_s3(l: FiniteSubgroupS3) -> S3SubgroupFact {
    match l {
        FiniteSubgroupS3::Cyclic(k) if k <= 2 => S3SubgroupFact::Full,
        FiniteSubgroupS3::Cyclic(_) => S3SubgroupFact::Circle(Axis::I),
        FiniteSubgroupS3::BinaryDihedral(1) => S3SubgroupFact::Circle(Axis::J),
        _ => S3SubgroupFact::Center,
    }
}

/// N_{S³}(Λ) for the catalog kinds.
pub fn normalizer_in_s3(l: FiniteSubgroupS3) -> Result<S3SubgroupFact, crate::GroupError> {
    Ok(match l {
        FiniteSubgroupS3::Cyclic(k) if k <= 2 => S3SubgroupFact::Full,
        FiniteSubgroupS3::Cyclic(_) => S3SubgroupFact::NormalizerCircle(Axis::I),
        FiniteSubgroupS3::BinaryDihedral(1) => S3SubgroupFact::NormalizerCircle(Axis::J),
        FiniteSubgroupS3::BinaryDihedral(2) => {
            S3SubgroupFact::Finite(FiniteSubgroupS3::BinaryOctahedral)
        }
        FiniteSubgroupS3::BinaryDihedral(m) => {
            S3SubgroupFact::Finite(FiniteSubgroupS3::BinaryDihedral(2 * m))
        }
        FiniteSubgroupS3::BinaryTetrahedral => {
            S3SubgroupFact::Finite(FiniteSubgroupS3::BinaryOctahedral)
        }
        FiniteSubgroupS3::BinaryOctahedral => {
            S3SubgroupFact::Finite(FiniteSubgroupS3::BinaryOctahedral)
        }
        FiniteSubgroupS3::BinaryIcosahedral => {
            S3SubgroupFact::Finite(FiniteSubgroupS3::BinaryIcosahedral)
        }
    })
}

/// N_{S³}(S¹) = S¹ ∪ jS¹.
pub fn normalizer_of_circle() -> S3SubgroupFact {
    S3SubgroupFact::NormalizerCircle(Axis::I)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_squared_is_minus_one() {
        let j = QuatElem::j();
        assert_eq!(j.mul(&j), QuatElem::minus_one());
    }

    #[test]
    fn angle_addition() {
        // e^{iπ/3}·e^{iπ/3} = e^{2iπ/3}
        let a = QuatElem::from_half_turns(1, 3);
        assert_eq!(a.mul(&a), QuatElem::from_half_turns(2, 3));
    }

    #[test]
    fn j_commutation_rule() {
        // j·e^{iθ} = e^{−iθ}·j
        let t = QuatElem::from_half_turns(1, 4);
        let lhs = QuatElem::j().mul(&t);
        let rhs = t.inv().mul(&QuatElem::j());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverses() {
        for el in FiniteSubgroupS3::BinaryDihedral(6).elements().unwrap() {
            assert!(el.mul(&el.inv()).is_one());
            assert!(el.inv().mul(&el).is_one());
        }
    }

    #[test]
    fn binary_dihedral_m1_is_gen_by_j() {
        let els = FiniteSubgroupS3::BinaryDihedral(1).elements().unwrap();
        assert_eq!(els.len(), 4);
        let j = QuatElem::j();
        let mut gen = vec![QuatElem::one()];
        let mut cur = j;
        while !cur.is_one() {
            gen.push(cur);
            cur = cur.mul(&j);
        }
        gen.sort();
        let mut els = els;
        els.sort();
        assert_eq!(els, gen);
    }

    #[test]
    fn orders_match_bruteforce() {
        for k in 1..=24 {
            for el in FiniteSubgroupS3::Cyclic(k).elements().unwrap() {
                let mut n = 1u64;
                let mut cur = el;
                while !cur.is_one() {
                    cur = cur.mul(&el);
                    n += 1;
                }
                assert_eq!(n, el.order(), "cyclic {k} element {el}");
            }
        }
        for m in 1..=12 {
            for el in FiniteSubgroupS3::BinaryDihedral(m).elements().unwrap() {
                let mut n = 1u64;
                let mut cur = el;
                while !cur.is_one() {
                    cur = cur.mul(&el);
                    n += 1;
                }
                assert_eq!(n, el.order(), "D*2m m={m} element {el}");
                assert!(4 * (m as u64) % el.order() == 0);
            }
        }
    }

    #[test]
    fn closure_of_materialized_groups() {
        for grp in [
            FiniteSubgroupS3::Cyclic(7),
            FiniteSubgroupS3::BinaryDihedral(5),
            FiniteSubgroupS3::BinaryDihedral(1),
        ] {
            let els = grp.elements().unwrap();
            for a in &els {
                for b in &els {
                    assert!(els.contains(&a.mul(b)), "{} · {} escapes {:?}", a, b, grp);
                }
                assert!(els.contains(&a.inv()));
            }
        }
    }
}
