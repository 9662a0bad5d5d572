//! Concrete instantiation of quaternionic subgroup families at explicit
//! parameter values, with exact element arithmetic, component groups, and
//! the fundamental-group machinery through preimages in the universal cover
//! S³^a × R^b of the ambient group.

use crate::expr::{Assignment, ExprError};
use crate::subgroup::{Conj, FinGen, GammaKind, Placement, QSub};
use groupkit::quat::{turns_mod1, QuatElem, Rat};
use groupkit::{FiniteGroupConcrete, FpGroup, Word};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyKind {
    Tet,
    Oct,
    Ico,
}

/// Materialized binary polyhedral groups with their distinguished central
/// involution and a generating set.
pub struct PolyTables {
    pub tet: FiniteGroupConcrete,
    pub oct: FiniteGroupConcrete,
    pub ico: FiniteGroupConcrete,
    minus_one: [usize; 3],
    gens: [Vec<usize>; 3],
}

impl PolyTables {
    fn build() -> PolyTables {
        let tet = FpGroup::binary_tetrahedral().to_concrete(2000).unwrap();
        let oct = FpGroup::binary_octahedral().to_concrete(2000).unwrap();
        let ico = FpGroup::binary_icosahedral().to_concrete(2000).unwrap();
        let minus = |g: &FiniteGroupConcrete| {
            (0..g.order()).find(|&a| g.element_order(a) == 2).expect("central involution")
        };
        let minus_one = [minus(&tet), minus(&oct), minus(&ico)];
        let gens = [tet.generating_set(), oct.generating_set(), ico.generating_set()];
        PolyTables { tet, oct, ico, minus_one, gens }
    }

    pub fn group(&self, k: PolyKind) -> &FiniteGroupConcrete {
        match k {
            PolyKind::Tet => &self.tet,
            PolyKind::Oct => &self.oct,
            PolyKind::Ico => &self.ico,
        }
    }

    pub fn minus_one(&self, k: PolyKind) -> usize {
        self.minus_one[k as usize]
    }

    pub fn generators(&self, k: PolyKind) -> &[usize] {
        &self.gens[k as usize]
    }
}

pub fn poly_tables() -> &'static PolyTables {
    use once_cell::sync::Lazy;
    static TABLES: Lazy<PolyTables> = Lazy::new(PolyTables::build);
    &TABLES
}

/// One S³ coordinate of a concrete element: an exact element of S¹ ∪ jS¹ or
/// of a materialized binary polyhedral group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CCoord {
    Q(QuatElem),
    P(PolyKind, u16),
}

impl CCoord {
    pub fn one() -> CCoord {
        CCoord::Q(QuatElem::one())
    }

    pub fn is_one(&self) -> bool {
        match self {
            CCoord::Q(q) => q.is_one(),
            CCoord::P(_, i) => *i == 0,
        }
    }

    pub fn mul(&self, rhs: &CCoord) -> Result<CCoord, ConcError> {
        Ok(match (self, rhs) {
            (CCoord::Q(a), CCoord::Q(b)) => CCoord::Q(a.mul(b)),
            (CCoord::P(k, a), CCoord::P(k2, b)) if k == k2 => {
                CCoord::P(*k, poly_tables().group(*k).mul(*a as usize, *b as usize) as u16)
            }
            (CCoord::Q(a), CCoord::P(k, b)) => {
                let idx = central_into_poly(a, *k)?;
                CCoord::P(*k, poly_tables().group(*k).mul(idx, *b as usize) as u16)
            }
            (CCoord::P(k, a), CCoord::Q(b)) => {
                let idx = central_into_poly(b, *k)?;
                CCoord::P(*k, poly_tables().group(*k).mul(*a as usize, idx) as u16)
            }
            _ => return Err(ConcError::MixedPolyhedral),
        })
    }

    pub fn inv(&self) -> CCoord {
        match self {
            CCoord::Q(q) => CCoord::Q(q.inv()),
            CCoord::P(k, a) => CCoord::P(*k, poly_tables().group(*k).inv(*a as usize) as u16),
        }
    }

    pub fn conj_by_tag(&self, z: Conj) -> Result<CCoord, ConcError> {
        match self {
            CCoord::Q(q) => {
                let zq = match z {
                    Conj::One => return Ok(*self),
                    Conj::I => QuatElem::i(),
                    Conj::J => QuatElem::j(),
                };
                Ok(CCoord::Q(q.conj_by(&zq)))
            }
            CCoord::P(..) => {
                if z == Conj::One {
                    Ok(*self)
                } else {
                    Err(ConcError::MixedPolyhedral)
                }
            }
        }
    }
}

fn central_into_poly(q: &QuatElem, k: PolyKind) -> Result<usize, ConcError> {
    if q.is_one() {
        Ok(0)
    } else if *q == QuatElem::minus_one() {
        Ok(poly_tables().minus_one(k))
    } else {
        Err(ConcError::MixedPolyhedral)
    }
}

/// Central polyhedral entries are rewritten as circle elements so canonical
/// forms do not depend on the representation.
fn ccoord_normal(c: CCoord) -> CCoord {
    match c {
        CCoord::P(k, i) if i == 0 => CCoord::Q(QuatElem::one()),
        CCoord::P(k, i) if i as usize == poly_tables().minus_one(k) => {
            CCoord::Q(QuatElem::minus_one())
        }
        other => other,
    }
}

/// One coordinate of an element of the covering group S³^a × R^b.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordVal {
    S3(CCoord),
    /// Real lift of an S¹ coordinate, kept as an exact rational.
    R(Rat),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CElem(pub Vec<CoordVal>);

impl CElem {
    pub fn identity(coord_is_s3: &[bool]) -> CElem {
        CElem(
            coord_is_s3
                .iter()
                .map(|&s3| if s3 { CoordVal::S3(CCoord::one()) } else { CoordVal::R(Rat::zero()) })
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &CElem) -> Result<CElem, ConcError> {
        let coords = self
            .0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| match (a, b) {
                (CoordVal::S3(x), CoordVal::S3(y)) => Ok(CoordVal::S3(x.mul(y)?)),
                (CoordVal::R(x), CoordVal::R(y)) => Ok(CoordVal::R(x + y)),
                _ => Err(ConcError::MixedPolyhedral),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CElem(coords))
    }

    pub fn inv(&self) -> CElem {
        CElem(
            self.0
                .iter()
                .map(|c| match c {
                    CoordVal::S3(x) => CoordVal::S3(x.inv()),
                    CoordVal::R(x) => CoordVal::R(-x),
                })
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|c| match c {
            CoordVal::S3(x) => x.is_one(),
            CoordVal::R(x) => x.is_zero(),
        })
    }

    /// Reduce all R coordinates mod 1 (projection Ḡ → G).
    pub fn mod1(&self) -> CElem {
        CElem(
            self.0
                .iter()
                .map(|c| match c {
                    CoordVal::S3(x) => CoordVal::S3(*x),
                    CoordVal::R(x) => CoordVal::R(turns_mod1(*x)),
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConcError {
    #[error("arithmetic mixes a binary polyhedral coordinate with a non-central element")]
    MixedPolyhedral,
    #[error("expression: {0}")]
    Expr(#[from] ExprError),
    #[error("unsupported shape: {0}")]
    Unsupported(String),
    #[error("component closure exceeded {0} elements")]
    ClosureCap(usize),
}

/// Concrete subgroup of S³^a × T^b.
#[derive(Debug, Clone)]
pub struct CQSub {
    pub coord_is_s3: Vec<bool>,
    pub blocks: Vec<(Vec<usize>, Conj)>,
    pub lattice: Vec<Vec<i64>>,
    pub fins: Vec<CElem>,
}

impl CQSub {
    /// Instantiate a symbolic subgroup at concrete parameter values.
    /// Symbolic Γ kinds must have been replaced before instantiation.
    pub fn instantiate(
        q: &QSub,
        coord_is_s3: &[bool],
        env: &Assignment,
    ) -> Result<CQSub, ConcError> {
        let n = q.ncoords;
        assert_eq!(n, coord_is_s3.len());
        let mut lattice = Vec::new();
        for row in &q.lattice {
            let r: Result<Vec<i64>, _> = row.iter().map(|e| e.eval(env)).collect();
            lattice.push(r?);
        }
        let mut fins = Vec::new();
        for f in &q.fins {
            match f {
                FinGen::Pt(pt) => {
                    let mut coords = Vec::with_capacity(n);
                    for (c, p) in pt.iter().enumerate() {
                        let num = p.turns.num.eval(env)?;
                        let den = p.turns.den.eval(env)?;
                        if den == 0 {
                            return Err(ConcError::Unsupported("zero denominator".into()));
                        }
                        let t = turns_mod1(Ratio::new(num, den));
                        if coord_is_s3[c] {
                            coords.push(CoordVal::S3(CCoord::Q(QuatElem::new(p.j, t))));
                        } else {
                            if p.j {
                                return Err(ConcError::Unsupported(
                                    "j-flag on a circle factor".into(),
                                ));
                            }
                            coords.push(CoordVal::R(t));
                        }
                    }
                    fins.push(CElem(coords));
                }
                FinGen::Gamma { kind, place } => {
                    let gens = gamma_generators(kind, env)?;
                    for g in gens {
                        let mut coords: Vec<CoordVal> = coord_is_s3
                            .iter()
                            .map(|&s3| {
                                if s3 {
                                    CoordVal::S3(CCoord::one())
                                } else {
                                    CoordVal::R(Rat::zero())
                                }
                            })
                            .collect();
                        let put = |coords: &mut Vec<CoordVal>,
                                   c: usize,
                                   g: CCoord|
                         -> Result<(), ConcError> {
                            if coord_is_s3[c] {
                                coords[c] = CoordVal::S3(g);
                            } else {
                                match g {
                                    CCoord::Q(q) if !q.j => {
                                        coords[c] = CoordVal::R(q.turns());
                                    }
                                    _ => {
                                        return Err(ConcError::Unsupported(
                                            "non-circle subgroup on a circle factor".into(),
                                        ))
                                    }
                                }
                            }
                            Ok(())
                        };
                        match place {
                            Placement::Coord(c) => put(&mut coords, *c, g)?,
                            Placement::Diag(a, b) => {
                                put(&mut coords, *a, g)?;
                                put(&mut coords, *b, g)?;
                            }
                        }
                        fins.push(CElem(coords));
                    }
                }
            }
        }
        Ok(CQSub {
            coord_is_s3: coord_is_s3.to_vec(),
            blocks: q.blocks.iter().map(|b| (b.coords.clone(), b.conj)).collect(),
            lattice,
            fins,
        })
    }

    pub fn ncoords(&self) -> usize {
        self.coord_is_s3.len()
    }

    pub fn dimension(&self) -> i64 {
        3 * self.blocks.len() as i64 + lattice_rank(&self.lattice)
    }

    /// Reduce an element by the block components: kill the first coordinate
    /// of each block, adjusting the partner coordinate.
    fn reduce_blocks(&self, e: &CElem) -> Result<CElem, ConcError> {
        let mut coords = e.0.clone();
        for (bc, conj) in &self.blocks {
            match bc.len() {
                1 => {
                    coords[bc[0]] = CoordVal::S3(CCoord::one());
                }
                2 => {
                    let (a, b) = (bc[0], bc[1]);
                    let (xa, xb) = match (&coords[a], &coords[b]) {
                        (CoordVal::S3(x), CoordVal::S3(y)) => (*x, *y),
                        _ => return Err(ConcError::Unsupported("block on circle factor".into())),
                    };
                    // multiply by (g, z g z⁻¹) with g = xa⁻¹
                    let g = xa.inv();
                    let zgz = g.conj_by_tag(*conj)?;
                    coords[a] = CoordVal::S3(CCoord::one());
                    coords[b] = CoordVal::S3(xb.mul(&zgz)?);
                }
                _ => return Err(ConcError::Unsupported("block arity".into())),
            }
        }
        Ok(CElem(coords))
    }

    /// Canonical component datum of an element of the preimage in Ḡ,
    /// modulo the identity component of the preimage of this subgroup.
    /// `mod_decks` additionally quotients by the deck translations
    /// (components of the subgroup itself rather than its preimage).
    pub fn canon(&self, e: &CElem, mod_decks: bool) -> Result<CanonElem, ConcError> {
        let e = self.reduce_blocks(e)?;
        let mut jflags = Vec::new();
        let mut poly = Vec::new();
        let mut t: Vec<Rat> = Vec::new();
        let mut t_coords: Vec<usize> = Vec::new();
        // after block reduction only the killed (first) coordinate of each
        // block is absorbed; the partner coordinate carries the residual
        let killed: Vec<usize> = self.blocks.iter().map(|(c, _)| c[0]).collect();
        for (c, v) in e.0.iter().enumerate() {
            if killed.contains(&c) {
                continue;
            }
            let v = match v {
                CoordVal::S3(x) => CoordVal::S3(ccoord_normal(*x)),
                other => other.clone(),
            };
            match &v {
                CoordVal::S3(CCoord::Q(q)) => {
                    jflags.push((c, q.j));
                    t.push(q.turns());
                    t_coords.push(c);
                }
                CoordVal::S3(CCoord::P(k, i)) => {
                    poly.push((c, *k, *i));
                    t.push(Rat::zero());
                    t_coords.push(c);
                }
                CoordVal::R(r) => {
                    t.push(*r);
                    t_coords.push(c);
                }
            }
        }
        // functionals vanishing on the lattice span, restricted to the
        // non-block coordinates
        let rows: Vec<Vec<i64>> = self
            .lattice
            .iter()
            .map(|row| t_coords.iter().map(|&c| row[c]).collect())
            .collect();
        let phis = null_functionals(&rows, t.len());
        // residues φ(t) modulo φ(Z^{reduced}), where the Z-reduction applies
        // to the S³-circle coordinates always, and to R-coordinates only when
        // quotienting by decks
        let mut shift_cols: Vec<Vec<i64>> = Vec::new();
        for (idx, &c) in t_coords.iter().enumerate() {
            let compact = self.coord_is_s3[c] || mod_decks;
            if compact {
                shift_cols.push(phis.iter().map(|phi| phi[idx]).collect());
            }
        }
        let residues: Vec<Rat> = phis
            .iter()
            .map(|phi| {
                phi.iter()
                    .zip(&t)
                    .map(|(&a, x)| Ratio::from_integer(a) * x)
                    .fold(Rat::zero(), |acc, v| acc + v)
            })
            .collect();
        let res = reduce_mod_lattice(&residues, &shift_cols);
        Ok(CanonElem { jflags, poly, residues: res })
    }

    /// The component group π₀ of this subgroup, with representative elements
    /// and words over the finite generators.
    pub fn pi0(&self, cap: usize) -> Result<Pi0Data, ConcError> {
        let id = CElem::identity(&self.coord_is_s3);
        let id_canon = self.canon(&id, true)?;
        let mut reps: Vec<CElem> = vec![id.mod1()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index: HashMap<CanonElem, usize> = HashMap::new();
        index.insert(id_canon, 0);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for (gi, g) in self.fins.iter().enumerate() {
                let prod = reps[i].mul(g)?.mod1();
                let c = self.canon(&prod, true)?;
                if !index.contains_key(&c) {
                    if reps.len() >= cap {
                        return Err(ConcError::ClosureCap(cap));
                    }
                    index.insert(c, reps.len());
                    let mut w = words[i].clone();
                    w.push(gi);
                    reps.push(prod);
                    words.push(w);
                    frontier.push(reps.len() - 1);
                }
            }
        }
        // multiplication table
        let n = reps.len();
        let mut table = vec![vec![0u32; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod = reps[a].mul(&reps[b])?.mod1();
                let c = self.canon(&prod, true)?;
                table[a][b] = *index.get(&c).ok_or_else(|| {
                    ConcError::Unsupported("component closure not closed".into())
                })? as u32;
            }
        }
        let group = FiniteGroupConcrete::from_table(table);
        Ok(Pi0Data { group, reps, words, index })
    }

    /// Membership of a concrete ambient element (R-coordinates mod 1).
    pub fn contains_elem(&self, e: &CElem, cap: usize) -> Result<bool, ConcError> {
        let c = self.canon(&e.mod1(), true)?;
        let pi0 = self.pi0(cap)?;
        Ok(pi0.index.contains_key(&c))
    }

    /// Does the element of Ḡ lie in the identity component of the preimage
    /// (blocks × lattice lines, with Z-reduction only on circle coordinates)?
    pub fn idcomp_bar_contains(&self, e: &CElem) -> Result<bool, ConcError> {
        let c = self.canon(e, false)?;
        if c.jflags.iter().any(|(_, j)| *j) {
            return Ok(false);
        }
        if c.poly.iter().any(|(_, _, i)| *i != 0) {
            return Ok(false);
        }
        Ok(c.residues.iter().all(|r| r.is_zero()))
    }
}

/// Canonical component datum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonElem {
    jflags: Vec<(usize, bool)>,
    poly: Vec<(usize, PolyKind, u16)>,
    residues: Vec<Rat>,
}

pub struct Pi0Data {
    pub group: FiniteGroupConcrete,
    pub reps: Vec<CElem>,
    pub words: Vec<Vec<usize>>,
    pub index: HashMap<CanonElem, usize>,
}

/// Concrete generators of a finite subgroup kind of S³ in standard position.
pub fn gamma_generators(kind: &GammaKind, env: &Assignment) -> Result<Vec<CCoord>, ConcError> {
    Ok(match kind {
        GammaKind::Cyclic(e) => {
            let k = e.eval(env)?;
            if k <= 1 {
                vec![]
            } else {
                vec![CCoord::Q(QuatElem::new(false, Ratio::new(1, k)))]
            }
        }
        GammaKind::BinDih(e) => {
            let m = e.eval(env)?.max(1);
            vec![
                CCoord::Q(QuatElem::new(false, Ratio::new(1, 2 * m))),
                CCoord::Q(QuatElem::j()),
            ]
        }
        GammaKind::BinTet => poly_gens(PolyKind::Tet),
        GammaKind::BinOct => poly_gens(PolyKind::Oct),
        GammaKind::BinIco => poly_gens(PolyKind::Ico),
        GammaKind::Sym { name, .. } => {
            return Err(ConcError::Unsupported(format!(
                "symbolic Γ {name} must be assigned a kind before instantiation"
            )))
        }
    })
}

fn poly_gens(k: PolyKind) -> Vec<CCoord> {
    poly_tables().generators(k).iter().map(|&i| CCoord::P(k, i as u16)).collect()
}

// ---------------------------------------------------------------------------
// integer/rational linear algebra helpers

fn lattice_rank(rows: &[Vec<i64>]) -> i64 {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut rank = 0usize;
    for col in 0..n {
        if let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) {
            m.swap(rank, p);
            let pv = m[rank][col];
            for c in 0..n {
                m[rank][c] /= pv;
            }
            for i in 0..m.len() {
                if i != rank && !m[i][col].is_zero() {
                    let f = m[i][col];
                    for c in 0..n {
                        let s = f * m[rank][c];
                        m[i][c] -= s;
                    }
                }
            }
            rank += 1;
        }
    }
    rank as i64
}

/// Integer functionals spanning the rational null space of the row span.
pub fn null_functionals(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let zero = Rat::zero();
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        if let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) {
            m.swap(rank, p);
            let pv = m[rank][col];
            for c in 0..n {
                m[rank][c] /= pv;
            }
            for i in 0..m.len() {
                if i != rank && !m[i][col].is_zero() {
                    let f = m[i][col];
                    for c in 0..n {
                        let s = f * m[rank][c];
                        m[i][c] -= s;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
    }
    let mut nulls = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut y = vec![zero; n];
        y[free] = Rat::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            y[pc] = -m[ri][free];
        }
        let d = y.iter().fold(1i64, |acc, r| num_integer::lcm(acc, *r.denom()));
        nulls.push(y.iter().map(|r| (r * d).to_integer()).collect());
    }
    nulls
}

/// Canonical representative of `v` modulo the integer lattice generated by
/// `gens` (as vectors in Q^d).
fn reduce_mod_lattice(v: &[Rat], gens: &[Vec<i64>]) -> Vec<Rat> {
    let d = v.len();
    if d == 0 {
        return vec![];
    }
    let h = crate::qops::hnf_rows(gens);
    let mut out = v.to_vec();
    // hnf rows have staircase pivots; reduce from the first pivot column on
    for row in &h {
        if let Some(pc) = row.iter().position(|&x| x != 0) {
            let pv = Ratio::from_integer(row[pc]);
            let q = (out[pc] / pv).floor();
            if !q.is_zero() {
                for c in 0..d {
                    let s = q * Ratio::from_integer(row[c]);
                    out[c] -= s;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{int, var};
    use crate::subgroup::{Block, PtCoord, SymTurns};

    fn s3s3() -> Vec<bool> {
        vec![true, true]
    }

    fn s3s1() -> Vec<bool> {
        vec![true, false]
    }

    #[test]
    fn pi0_of_ns1_times_zk() {
        // N(S¹) × Z_k in S³ × S¹: two components times k
        let q = QSub::trivial(2)
            .with_lattice_row(vec![int(1), int(0)])
            .with_pt(QSub::pt_at(2, &[(0, PtCoord::jj())]))
            .with_pt(QSub::pt_at(
                2,
                &[(1, PtCoord::turns(SymTurns::new(int(1), var("k"))))],
            ));
        let env = Assignment::new(&[("k", 3)]);
        let c = CQSub::instantiate(&q, &s3s1(), &env).unwrap();
        let pi0 = c.pi0(100).unwrap();
        assert_eq!(pi0.group.order(), 6);
    }

    #[test]
    fn pi0_of_pm_delta_s1_ext() {
        // ±ΔS¹ ∪ (j,±j)ΔS¹ has component group Z₂ ⊕ Z₂
        let q = QSub::trivial(2)
            .with_lattice_row(vec![int(1), int(1)])
            .with_pt(QSub::pt_at(2, &[(0, PtCoord::minus_one())]))
            .with_pt(QSub::pt_at(2, &[(0, PtCoord::jj()), (1, PtCoord::jj())]));
        let c = CQSub::instantiate(&q, &s3s3(), &Assignment::default()).unwrap();
        let pi0 = c.pi0(100).unwrap();
        assert_eq!(pi0.group.order(), 4);
        assert_eq!(pi0.group.order_multiset(), vec![1, 2, 2, 2]);
    }

    #[test]
    fn pi0_of_delta_gamma_polyhedral() {
        let q = QSub::trivial(2).with_gamma(GammaKind::BinTet, Placement::Diag(0, 1));
        let c = CQSub::instantiate(&q, &s3s3(), &Assignment::default()).unwrap();
        let pi0 = c.pi0(200).unwrap();
        assert_eq!(pi0.group.order(), 24);
    }

    #[test]
    fn block_absorbs_diagonal() {
        // ΔS³ contains ΔZ_5 but not (ζ₅, 1)
        let q = QSub::trivial(2).with_block(Block::diag(0, 1));
        let c = CQSub::instantiate(&q, &s3s3(), &Assignment::default()).unwrap();
        let dz = CElem(vec![
            CoordVal::S3(CCoord::Q(QuatElem::new(false, Ratio::new(1, 5)))),
            CoordVal::S3(CCoord::Q(QuatElem::new(false, Ratio::new(1, 5)))),
        ]);
        assert!(c.contains_elem(&dz, 10).unwrap());
        let half = CElem(vec![
            CoordVal::S3(CCoord::Q(QuatElem::new(false, Ratio::new(1, 5)))),
            CoordVal::S3(CCoord::Q(QuatElem::one())),
        ]);
        assert!(!c.contains_elem(&half, 10).unwrap());
    }

    #[test]
    fn family_instantiation_matches_order() {
        // H of diagram (3.2): order k·m when q | (m,k), (p,k) = 1
        let q = QSub::trivial(2)
            .with_gamma(GammaKind::Cyclic(var("m")), Placement::Coord(0))
            .with_pt(vec![
                PtCoord::turns(SymTurns::new(var("p"), var("k"))),
                PtCoord::turns(SymTurns::new(var("q"), var("k"))),
            ]);
        let env = Assignment::new(&[("m", 4), ("k", 4), ("p", 1), ("q", 2)]);
        let c = CQSub::instantiate(&q, &s3s1(), &env).unwrap();
        let pi0 = c.pi0(200).unwrap();
        // ⟨(ζ₄, 1)⟩ · ⟨(ζ₄, ζ₂)⟩ has order 8 = km/2? count: generated by
        // (1/4, 0) and (1/4, 1/2): index…: order = 8
        assert_eq!(pi0.group.order(), 8);
    }
}
