//! Ambient compact groups: products of the simply-connected simple groups in
//! dimension ≤ 21 with at most one circle factor, plus the symbolic Sp(n)
//! and SU(n) families used by the one-fixed-point analysis.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Factor {
    S1,
    S3,
    SU3,
    Sp2,
    G2,
    SU4,
    Sp3,
    Spin5,
    Spin6,
    Spin7,
    Spin8,
    Spin9,
    /// Sp(n) for symbolic n ≥ 3.
    SpN,
    /// SU(n) for symbolic n ≥ 3.
    SUN,
}

impl Factor {
    pub fn dimension(&self) -> Option<i64> {
        Some(match self {
            Factor::S1 => 1,
            Factor::S3 => 3,
            Factor::SU3 => 8,
            Factor::Sp2 | Factor::Spin5 => 10,
            Factor::G2 => 14,
            Factor::SU4 | Factor::Spin6 => 15,
            Factor::Sp3 | Factor::Spin7 => 21,
            Factor::Spin8 => 28,
            Factor::Spin9 => 36,
            Factor::SpN | Factor::SUN => return None,
        })
    }

    /// Quaternionic factors are handled coordinate-exactly (S³ and S¹);
    /// everything else goes through the named-subgroup catalog.
    pub fn is_quaternionic(&self) -> bool {
        matches!(self, Factor::S1 | Factor::S3)
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, Factor::S1)
    }

    /// Isomorphic simple kinds share subgroup data (Spin(5) ≅ Sp(2),
    /// Spin(6) ≅ SU(4)).
    pub fn iso_class(&self) -> Factor {
        match self {
            Factor::Spin5 => Factor::Sp2,
            Factor::Spin6 => Factor::SU4,
            f => *f,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Factor::S1 => "S1",
            Factor::S3 => "S3",
            Factor::SU3 => "SU(3)",
            Factor::Sp2 => "Sp(2)",
            Factor::G2 => "G2",
            Factor::SU4 => "SU(4)",
            Factor::Sp3 => "Sp(3)",
            Factor::Spin5 => "Spin(5)",
            Factor::Spin6 => "Spin(6)",
            Factor::Spin7 => "Spin(7)",
            Factor::Spin8 => "Spin(8)",
            Factor::Spin9 => "Spin(9)",
            Factor::SpN => "Sp(n)",
            Factor::SUN => "SU(n)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AmbientGroup {
    pub factors: Vec<Factor>,
}

impl AmbientGroup {
    pub fn new(factors: Vec<Factor>) -> Self {
        AmbientGroup { factors }
    }

    pub fn dimension(&self) -> Option<i64> {
        self.factors.iter().map(|f| f.dimension()).sum()
    }

    /// Number of S¹ factors; π₁ of the ambient group is Z^torus_rank.
    pub fn torus_rank(&self) -> usize {
        self.factors.iter().filter(|f| f.is_torus()).count()
    }

    /// Indices of the quaternionic factors, in order. These are the
    /// coordinates of the exact subgroup representation: each S³ factor
    /// contributes its maximal-torus circle, each S¹ factor itself.
    pub fn quat_coords(&self) -> Vec<usize> {
        self.factors
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_quaternionic())
            .map(|(i, _)| i)
            .collect()
    }

    /// Coordinate index (within the quaternionic block) of ambient factor i.
    pub fn coord_of_factor(&self, i: usize) -> Option<usize> {
        if !self.factors[i].is_quaternionic() {
            return None;
        }
        Some(self.factors[..i].iter().filter(|f| f.is_quaternionic()).count())
    }

    /// Which quaternionic coordinates are S³ circles (true) vs S¹ (false).
    pub fn coord_is_s3(&self) -> Vec<bool> {
        self.factors
            .iter()
            .filter(|f| f.is_quaternionic())
            .map(|f| matches!(f, Factor::S3))
            .collect()
    }

    /// Coordinates (within the quaternionic block) of the ambient S¹ factors:
    /// the torus directions that carry π₁(G).
    pub fn pi1_coords(&self) -> Vec<usize> {
        self.coord_is_s3()
            .iter()
            .enumerate()
            .filter(|(_, is_s3)| !**is_s3)
            .map(|(c, _)| c)
            .collect()
    }

    pub fn is_quaternionic(&self) -> bool {
        self.factors.iter().all(|f| f.is_quaternionic())
    }

    pub fn simple_indices(&self) -> Vec<usize> {
        self.factors
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_quaternionic())
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for AmbientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.factors.iter().map(|x| x.name()).collect();
        write!(f, "{}", names.join(" x "))
    }
}

pub fn s3xs1() -> AmbientGroup {
    AmbientGroup::new(vec![Factor::S3, Factor::S1])
}

pub fn s3xs3() -> AmbientGroup {
    AmbientGroup::new(vec![Factor::S3, Factor::S3])
}

pub fn s3xs3xs1() -> AmbientGroup {
    AmbientGroup::new(vec![Factor::S3, Factor::S3, Factor::S1])
}

pub fn s3xs3xs3() -> AmbientGroup {
    AmbientGroup::new(vec![Factor::S3, Factor::S3, Factor::S3])
}
