//! Symbolic descriptions of the closed subgroups that occur in the
//! classification.
//!
//! Subgroups of products of S³ and S¹ factors are represented exactly: an
//! identity component assembled from full S³ blocks (possibly diagonally
//! linked with a conjugator tag) and a winding lattice in the remaining
//! maximal-torus coordinates, together with finite generators lying in
//! N(S¹) = S¹ ∪ jS¹ coordinatewise or in a placed finite subgroup of S³.
//! Subgroups of the larger simple groups are named catalog entries.

use crate::ambient::{AmbientGroup, Factor};
use crate::expr::{int, Expr, Var};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A symbolic rational number of turns (num/den of a full rotation).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymTurns {
    pub num: Expr,
    pub den: Expr,
}

impl SymTurns {
    pub fn zero() -> Self {
        SymTurns { num: int(0), den: int(1) }
    }
    pub fn half() -> Self {
        SymTurns { num: int(1), den: int(2) }
    }
    pub fn new(num: Expr, den: Expr) -> Self {
        SymTurns { num, den }
    }
    pub fn is_zero(&self) -> bool {
        matches!(self.num, Expr::Int(0))
    }
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Self {
        SymTurns { num: self.num.rename(map), den: self.den.rename(map) }
    }
    pub fn normalize(&self) -> Self {
        SymTurns { num: self.num.normalize(), den: self.den.normalize() }
    }
}

impl fmt::Display for SymTurns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// One coordinate of a point generator: j^ε·e^{2πi·turns}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PtCoord {
    pub j: bool,
    pub turns: SymTurns,
}

impl PtCoord {
    pub fn one() -> Self {
        PtCoord { j: false, turns: SymTurns::zero() }
    }
    pub fn minus_one() -> Self {
        PtCoord { j: false, turns: SymTurns::half() }
    }
    pub fn jj() -> Self {
        PtCoord { j: true, turns: SymTurns::zero() }
    }
    pub fn turns(t: SymTurns) -> Self {
        PtCoord { j: false, turns: t }
    }
    pub fn is_one(&self) -> bool {
        !self.j && self.turns.is_zero()
    }
}

/// The symbolic kinds of finite subgroups of S³ a family can range over.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GammaKind {
    /// A named symbolic finite subgroup of S³ ranging over the stated kinds.
    Sym { name: Var, nontrivial: bool, noncyclic: bool },
    Cyclic(Expr),
    BinDih(Expr),
    BinTet,
    BinOct,
    BinIco,
}

impl GammaKind {
    pub fn sym(name: &str) -> Self {
        GammaKind::Sym { name: name.into(), nontrivial: true, noncyclic: false }
    }
    pub fn sym_noncyclic(name: &str) -> Self {
        GammaKind::Sym { name: name.into(), nontrivial: true, noncyclic: true }
    }
    pub fn cyclic(e: Expr) -> Self {
        GammaKind::Cyclic(e)
    }
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Self {
        match self {
            GammaKind::Sym { name, nontrivial, noncyclic } => GammaKind::Sym {
                name: map.get(name).cloned().unwrap_or_else(|| name.clone()),
                nontrivial: *nontrivial,
                noncyclic: *noncyclic,
            },
            GammaKind::Cyclic(e) => GammaKind::Cyclic(e.rename(map)),
            GammaKind::BinDih(e) => GammaKind::BinDih(e.rename(map)),
            k => k.clone(),
        }
    }
    /// Order as a symbolic expression, when determined by the kind.
    pub fn order(&self) -> Option<Expr> {
        match self {
            GammaKind::Cyclic(e) => Some(e.clone()),
            GammaKind::BinDih(e) => Some(int(4).mul(e.clone())),
            GammaKind::BinTet => Some(int(24)),
            GammaKind::BinOct => Some(int(48)),
            GammaKind::BinIco => Some(int(120)),
            GammaKind::Sym { .. } => None,
        }
    }
}

impl fmt::Display for GammaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaKind::Sym { name, .. } => write!(f, "{name}"),
            GammaKind::Cyclic(e) => write!(f, "Z_{e}"),
            GammaKind::BinDih(e) => write!(f, "D*_2{e}"),
            GammaKind::BinTet => write!(f, "2T"),
            GammaKind::BinOct => write!(f, "2O"),
            GammaKind::BinIco => write!(f, "2I"),
        }
    }
}

/// Placement of a finite subgroup of S³ into the quaternionic coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Placement {
    /// Sits in one S³ factor (cyclic kinds sit inside its i-circle).
    Coord(usize),
    /// Diagonal {(γ, γ)} across two S³ factors.
    Diag(usize, usize),
}

impl Placement {
    pub fn coords(&self) -> Vec<usize> {
        match self {
            Placement::Coord(a) => vec![*a],
            Placement::Diag(a, b) => vec![*a, *b],
        }
    }
}

/// A finite generator of the extension part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FinGen {
    Pt(Vec<PtCoord>),
    Gamma { kind: GammaKind, place: Placement },
}

impl FinGen {
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Self {
        match self {
            FinGen::Pt(coords) => FinGen::Pt(
                coords
                    .iter()
                    .map(|c| PtCoord { j: c.j, turns: c.turns.rename(map) })
                    .collect(),
            ),
            FinGen::Gamma { kind, place } => {
                FinGen::Gamma { kind: kind.rename(map), place: place.clone() }
            }
        }
    }
}

/// Conjugator tag on a diagonal block: Δ, Δ_i, or Δ_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Conj {
    One,
    I,
    J,
}

impl Conj {
    pub fn name(&self) -> &'static str {
        match self {
            Conj::One => "",
            Conj::I => "_i",
            Conj::J => "_j",
        }
    }
}

/// A full S³ block: one factor, or a diagonal across two with a conjugator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Block {
    pub coords: Vec<usize>,
    pub conj: Conj,
}

impl Block {
    pub fn single(c: usize) -> Self {
        Block { coords: vec![c], conj: Conj::One }
    }
    pub fn diag(a: usize, b: usize) -> Self {
        Block { coords: vec![a, b], conj: Conj::One }
    }
    pub fn diag_conj(a: usize, b: usize, conj: Conj) -> Self {
        Block { coords: vec![a, b], conj }
    }
}

/// Symbolic subgroup of a product of S³ and S¹ factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QSub {
    pub ncoords: usize,
    pub blocks: Vec<Block>,
    /// Winding generators of the torus part of the identity component,
    /// supported on the non-block coordinates.
    pub lattice: Vec<Vec<Expr>>,
    pub fins: Vec<FinGen>,
}

impl QSub {
    pub fn trivial(ncoords: usize) -> Self {
        QSub { ncoords, blocks: vec![], lattice: vec![], fins: vec![] }
    }

    pub fn full(coord_is_s3: &[bool]) -> Self {
        let n = coord_is_s3.len();
        let mut blocks = Vec::new();
        let mut lattice = Vec::new();
        for (c, &s3) in coord_is_s3.iter().enumerate() {
            if s3 {
                blocks.push(Block::single(c));
            } else {
                let mut row = vec![int(0); n];
                row[c] = int(1);
                lattice.push(row);
            }
        }
        QSub { ncoords: n, blocks, lattice, fins: vec![] }
    }

    pub fn with_block(mut self, b: Block) -> Self {
        self.blocks.push(b);
        self.blocks.sort();
        self
    }

    pub fn with_lattice_row(mut self, row: Vec<Expr>) -> Self {
        assert_eq!(row.len(), self.ncoords);
        self.lattice.push(row);
        self
    }

    /// Convenience: a single circle with the given winding vector.
    pub fn circle(ncoords: usize, winding: Vec<Expr>) -> Self {
        QSub::trivial(ncoords).with_lattice_row(winding)
    }

    pub fn with_pt(mut self, coords: Vec<PtCoord>) -> Self {
        assert_eq!(coords.len(), self.ncoords);
        self.fins.push(FinGen::Pt(coords));
        self
    }

    pub fn with_gamma(mut self, kind: GammaKind, place: Placement) -> Self {
        self.fins.push(FinGen::Gamma { kind, place });
        self
    }

    /// A point generator with the identity in all coordinates except `at`.
    pub fn pt_at(ncoords: usize, at: &[(usize, PtCoord)]) -> Vec<PtCoord> {
        let mut v = vec![PtCoord::one(); ncoords];
        for (c, p) in at {
            v[*c] = p.clone();
        }
        v
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.is_empty() && self.lattice.is_empty() && self.fins.is_empty()
    }

    pub fn has_block_at(&self, c: usize) -> bool {
        self.blocks.iter().any(|b| b.coords.contains(&c))
    }

    pub fn block_coords(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.blocks.iter().flat_map(|b| b.coords.clone()).collect();
        v.sort_unstable();
        v
    }

    /// Dimension of the identity component: 3 per block + lattice rank.
    /// Lattice rows are kept independent by construction.
    pub fn dimension(&self) -> i64 {
        3 * self.blocks.len() as i64 + self.lattice.len() as i64
    }

    pub fn identity_component(&self) -> QSub {
        QSub {
            ncoords: self.ncoords,
            blocks: self.blocks.clone(),
            lattice: self.lattice.clone(),
            fins: vec![],
        }
    }

    pub fn is_connected_shape(&self) -> bool {
        self.fins.is_empty()
    }

    /// Apply a permutation of the coordinates (perm[c] = new position of c).
    pub fn permute(&self, perm: &[usize]) -> QSub {
        let mut blocks: Vec<Block> = self
            .blocks
            .iter()
            .map(|b| {
                let mut coords: Vec<usize> = b.coords.iter().map(|&c| perm[c]).collect();
                // diagonal blocks are symmetric for Conj::One / reversed tags
                // are retagged by inverse conjugator; Δ_z and Δ_{z⁻¹} agree
                // for z ∈ {i, j} up to sign, which the family absorbs
                coords.sort_unstable();
                Block { coords, conj: b.conj }
            })
            .collect();
        blocks.sort();
        let remap_row = |row: &Vec<Expr>| {
            let mut out = vec![int(0); self.ncoords];
            for (c, e) in row.iter().enumerate() {
                out[perm[c]] = e.clone();
            }
            out
        };
        let lattice = self.lattice.iter().map(remap_row).collect();
        let fins = self
            .fins
            .iter()
            .map(|f| match f {
                FinGen::Pt(coords) => {
                    let mut out = vec![PtCoord::one(); self.ncoords];
                    for (c, p) in coords.iter().enumerate() {
                        out[perm[c]] = p.clone();
                    }
                    FinGen::Pt(out)
                }
                FinGen::Gamma { kind, place } => {
                    let place = match place {
                        Placement::Coord(a) => Placement::Coord(perm[*a]),
                        Placement::Diag(a, b) => {
                            let (x, y) = (perm[*a], perm[*b]);
                            if x <= y {
                                Placement::Diag(x, y)
                            } else {
                                Placement::Diag(y, x)
                            }
                        }
                    };
                    FinGen::Gamma { kind: kind.clone(), place }
                }
            })
            .collect();
        let mut q = QSub { ncoords: self.ncoords, blocks, lattice, fins };
        q.sort_parts();
        q
    }

    pub fn sort_parts(&mut self) {
        self.blocks.sort();
        self.lattice.sort();
        self.fins.sort();
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> QSub {
        QSub {
            ncoords: self.ncoords,
            blocks: self.blocks.clone(),
            lattice: self
                .lattice
                .iter()
                .map(|row| row.iter().map(|e| e.rename(map)).collect())
                .collect(),
            fins: self.fins.iter().map(|f| f.rename(map)).collect(),
        }
    }

    pub fn vars(&self, out: &mut Vec<Var>) {
        for row in &self.lattice {
            for e in row {
                e.vars(out);
            }
        }
        for f in &self.fins {
            match f {
                FinGen::Pt(coords) => {
                    for c in coords {
                        c.turns.num.vars(out);
                        c.turns.den.vars(out);
                    }
                }
                FinGen::Gamma { kind, .. } => match kind {
                    GammaKind::Sym { name, .. } => {
                        if !out.contains(name) {
                            out.push(name.clone());
                        }
                    }
                    GammaKind::Cyclic(e) | GammaKind::BinDih(e) => e.vars(out),
                    _ => {}
                },
            }
        }
    }
}

/// Named subgroups of the simple catalog factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NamedSub {
    Full,
    Trivial,
    // SU(3)
    T2,
    T2Z2,
    U2,
    SU2,
    SO3,
    /// S(U(2)Z_k): SU(2) extended by Z_k scalar blocks, π₀ = Z_k.
    SU2Zk(Expr),
    // Sp(2)
    U2Max,
    Sp1SO2,
    Sp1SO2Z2,
    Sp1Sp1,
    Sp1Sp1Z2,
    // G₂
    SU3InG2,
    NSU3InG2,
    // SU(4)
    U3,
    Sp2InSU4,
    Sp2Z2,
    // Spin(n), n = 5, 6, 7: the standard Spin(n−1) and its normalizer
    SpinSub,
    NSpinSub,
    // Sp(n) family: all contain the standard Sp(n−1)
    SpN1,
    SpN1Gamma(GammaKind),
    SpN1U1,
    SpN1NU1,
    SpN1Sp1,
    // SU(n) family
    SUN1Zk(Expr),
    SUN1U1,
    // Spin(9)
    Spin8In9,
    Spin7In9,
    NSpin7In9,
}

impl NamedSub {
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> NamedSub {
        match self {
            NamedSub::SU2Zk(e) => NamedSub::SU2Zk(e.rename(map)),
            NamedSub::SUN1Zk(e) => NamedSub::SUN1Zk(e.rename(map)),
            NamedSub::SpN1Gamma(k) => NamedSub::SpN1Gamma(k.rename(map)),
            s => s.clone(),
        }
    }

    pub fn vars(&self, out: &mut Vec<Var>) {
        match self {
            NamedSub::SU2Zk(e) | NamedSub::SUN1Zk(e) => e.vars(out),
            NamedSub::SpN1Gamma(k) => match k {
                GammaKind::Sym { name, .. } => {
                    if !out.contains(name) {
                        out.push(name.clone());
                    }
                }
                GammaKind::Cyclic(e) | GammaKind::BinDih(e) => e.vars(out),
                _ => {}
            },
            _ => {}
        }
    }
}

/// A closed subgroup of an ambient product group: named parts on the simple
/// factors, an exact part over the quaternionic coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubgroupDescriptor {
    /// One entry per simple (non-quaternionic) ambient factor, by factor index.
    pub named: Vec<(usize, NamedSub)>,
    pub quat: QSub,
}

impl SubgroupDescriptor {
    pub fn full(ambient: &AmbientGroup) -> Self {
        let named = ambient
            .simple_indices()
            .into_iter()
            .map(|i| (i, NamedSub::Full))
            .collect();
        SubgroupDescriptor { named, quat: QSub::full(&ambient.coord_is_s3()) }
    }

    pub fn trivial(ambient: &AmbientGroup) -> Self {
        let named = ambient
            .simple_indices()
            .into_iter()
            .map(|i| (i, NamedSub::Trivial))
            .collect();
        SubgroupDescriptor {
            named,
            quat: QSub::trivial(ambient.quat_coords().len()),
        }
    }

    /// Purely quaternionic descriptor (ambient has no simple factors).
    pub fn quat(q: QSub) -> Self {
        SubgroupDescriptor { named: vec![], quat: q }
    }

    /// Named part on simple factor `idx` plus a quaternionic part.
    pub fn named_and_quat(idx: usize, named: NamedSub, q: QSub) -> Self {
        SubgroupDescriptor { named: vec![(idx, named)], quat: q }
    }

    pub fn named_at(&self, idx: usize) -> Option<&NamedSub> {
        self.named.iter().find(|(i, _)| *i == idx).map(|(_, s)| s)
    }

    pub fn is_full(&self, ambient: &AmbientGroup) -> bool {
        self == &SubgroupDescriptor::full(ambient)
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> SubgroupDescriptor {
        SubgroupDescriptor {
            named: self.named.iter().map(|(i, s)| (*i, s.rename(map))).collect(),
            quat: self.quat.rename(map),
        }
    }

    pub fn vars(&self, out: &mut Vec<Var>) {
        for (_, s) in &self.named {
            s.vars(out);
        }
        self.quat.vars(out);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixError;
