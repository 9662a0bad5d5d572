//! Fundamental groups of homogeneous spaces and of cohomogeneity-one spaces
//! from concrete diagram data.
//!
//! With Ḡ = S³^a × R^b the universal cover of the ambient group,
//! π₁(G/H) ≅ π₀(H̄) for the full preimage H̄ of H, and the van Kampen
//! subgroups of Prop-2.13 type are the kernels of π₀(H̄) → π₀(K̄^±), i.e.
//! the component classes of H̄ meeting the identity components K̄₀^±.

use crate::conc::{CElem, CQSub, ConcError, CoordVal, Pi0Data};
use crate::intlin;
use groupkit::quat::Rat;
use groupkit::{FpGroup, Word};
use num_rational::Ratio;
use num_traits::Zero;

pub struct Pi1Presentation {
    pub fp: FpGroup,
    /// Words for the finite-generator classes of π₀(H̄) (index = fin index).
    pub fin_gens: Vec<Word>,
    /// Words for the deck classes, one per ambient S¹ coordinate.
    pub deck_gens: Vec<Word>,
    pi0: Pi0Data,
    h: CQSub,
    exact_reps: Vec<CElem>,
    deck_coords: Vec<usize>,
}

/// Residue data of an element of Ḡ with respect to H̄₀: the values of the
/// integer functionals killing the winding span, reduced modulo the shifts
/// of the compact (S³-circle) coordinates.
struct ResidueCtx {
    phis: Vec<Vec<i64>>,
    t_coords: Vec<usize>,
    /// columns: residue shift of the unit translation in each coordinate
    shift_s3: Vec<Vec<i64>>,
    deck_cols: Vec<Vec<i64>>,
    deck_coords: Vec<usize>,
}

impl ResidueCtx {
    fn new(h: &CQSub) -> ResidueCtx {
        let killed: Vec<usize> = h.blocks.iter().map(|(c, _)| c[0]).collect();
        let t_coords: Vec<usize> =
            (0..h.ncoords()).filter(|c| !killed.contains(c)).collect();
        let rows: Vec<Vec<i64>> = h
            .lattice
            .iter()
            .map(|row| t_coords.iter().map(|&c| row[c]).collect())
            .collect();
        let phis = crate::conc::null_functionals(&rows, t_coords.len());
        let mut shift_s3 = Vec::new();
        let mut deck_cols = Vec::new();
        let mut deck_coords = Vec::new();
        for (idx, &c) in t_coords.iter().enumerate() {
            let col: Vec<i64> = phis.iter().map(|phi| phi[idx]).collect();
            if h.coord_is_s3[c] {
                shift_s3.push(col);
            } else {
                deck_cols.push(col);
                deck_coords.push(c);
            }
        }
        ResidueCtx { phis, t_coords, shift_s3, deck_cols, deck_coords }
    }

    /// φ(t) for an element already reduced by blocks.
    fn residues(&self, h: &CQSub, e: &CElem) -> Result<Vec<Rat>, ConcError> {
        let _ = h;
        let mut t = Vec::with_capacity(self.t_coords.len());
        for &c in &self.t_coords {
            match &e.0[c] {
                CoordVal::S3(crate::conc::CCoord::Q(q)) => t.push(q.turns()),
                CoordVal::S3(crate::conc::CCoord::P(..)) => t.push(Rat::zero()),
                CoordVal::R(r) => t.push(*r),
            }
        }
        Ok(self
            .phis
            .iter()
            .map(|phi| {
                phi.iter()
                    .zip(&t)
                    .map(|(&a, x)| Ratio::from_integer(a) * x)
                    .fold(Rat::zero(), |acc, v| acc + v)
            })
            .collect())
    }

    /// Express a residue vector as an integer deck word modulo the S³ shifts:
    /// solve Σ v_c·deck_col_c + Σ s·shift = r. The residue must be integral.
    fn deck_word(&self, r: &[Rat]) -> Option<Vec<i64>> {
        if r.iter().any(|x| !x.is_integer()) {
            return None;
        }
        let ri: Vec<i64> = r.iter().map(|x| x.to_integer()).collect();
        let d = self.phis.len();
        let ncols = self.deck_cols.len() + self.shift_s3.len();
        if ncols == 0 {
            return if ri.iter().all(|&x| x == 0) { Some(vec![]) } else { None };
        }
        let mut a = vec![vec![0i64; ncols]; d];
        for (j, col) in self.deck_cols.iter().chain(self.shift_s3.iter()).enumerate() {
            for i in 0..d {
                a[i][j] = col[i];
            }
        }
        let x = intlin::solve(&a, &ri)?;
        Some(x[..self.deck_cols.len()].to_vec())
    }

    /// Relation lattice of the deck classes: integer vectors v with
    /// Σ v_c deck_col_c ∈ span(shift_s3).
    fn deck_relations(&self) -> Vec<Vec<i64>> {
        let b = self.deck_cols.len();
        if b == 0 {
            return vec![];
        }
        let d = self.phis.len();
        let ncols = b + self.shift_s3.len();
        let mut a = vec![vec![0i64; ncols]; d];
        for (j, col) in self.deck_cols.iter().chain(self.shift_s3.iter()).enumerate() {
            for i in 0..d {
                a[i][j] = col[i];
            }
        }
        intlin::kernel_basis(&a, ncols)
            .into_iter()
            .map(|v| v[..b].to_vec())
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect()
    }
}

/// Build a presentation of π₁(G/H) = π₀(H̄) for a concrete quaternionic
/// subgroup H: generators are the finite generators of H plus one central
/// deck generator per ambient circle factor.
pub fn pi1_homogeneous(h: &CQSub, cap: usize) -> Result<Pi1Presentation, ConcError> {
    let pi0 = h.pi0(cap)?;
    let ctx = ResidueCtx::new(h);
    let nf = h.fins.len();
    let decks = ctx.deck_coords.clone();
    let nz = decks.len();
    let gen_names: Vec<String> = (0..nf)
        .map(|i| format!("f{i}"))
        .chain((0..nz).map(|i| format!("z{i}")))
        .collect();
    let fword = |i: usize| Word::gen(i);
    let zword = |i: usize| Word::gen(nf + i);
    let zvec_word = |v: &[i64]| {
        let mut w = Word::identity();
        for (i, &e) in v.iter().enumerate() {
            w = w.concat(&zword(i).pow(e));
        }
        w
    };

    let mut relators: Vec<Word> = Vec::new();
    // centrality of the decks
    for i in 0..nz {
        for j in (i + 1)..nz {
            relators.push(commutator(&zword(i), &zword(j)));
        }
        for f in 0..nf {
            relators.push(commutator(&zword(i), &fword(f)));
        }
    }
    // deck relation lattice
    for v in ctx.deck_relations() {
        relators.push(zvec_word(&v));
    }
    // exact lifts of the component representatives
    let id = CElem::identity(&h.coord_is_s3);
    let mut exact_reps: Vec<CElem> = Vec::with_capacity(pi0.reps.len());
    for w in &pi0.words {
        let mut e = id.clone();
        for &gi in w {
            e = e.mul(&h.fins[gi])?;
        }
        exact_reps.push(e);
    }
    // classes of the individual finite generators
    let mut gen_class = Vec::with_capacity(nf);
    for gen in &h.fins {
        let c = h.canon(&gen.mod1(), true)?;
        gen_class.push(*pi0.index.get(&c).ok_or_else(|| {
            ConcError::Unsupported("generator class missing from closure".into())
        })?);
    }
    // lifted Cayley-edge relators with central corrections
    for (k, rep) in exact_reps.iter().enumerate() {
        for (gi, gen) in h.fins.iter().enumerate() {
            let prod = rep.mul(gen)?;
            let target = pi0.group.mul(k, gen_class[gi]);
            let c = prod.mul(&exact_reps[target].inv())?;
            // c lies over the identity component of H: express as deck word
            let c_red = reduce_by_blocks(h, &c)?;
            let r = ctx.residues(h, &c_red)?;
            let delta = ctx.deck_word(&r).ok_or_else(|| {
                ConcError::Unsupported("cocycle not a deck translation".into())
            })?;
            // relator: ω_k f_i ω_{k'}⁻¹ z^{-δ}
            let mut w = word_of(&pi0.words[k], &fword);
            w = w.concat(&fword(gi));
            w = w.concat(&word_of(&pi0.words[target], &fword).inv());
            w = w.concat(&zvec_word(&delta).inv());
            relators.push(w);
        }
    }
    let fp = FpGroup::new(gen_names, relators);
    Ok(Pi1Presentation {
        fp,
        fin_gens: (0..nf).map(fword).collect(),
        deck_gens: (0..nz).map(|i| Word::gen(nf + i)).collect(),
        pi0,
        h: h.clone(),
        exact_reps,
        deck_coords: decks,
    })
}

fn word_of(w: &[usize], fword: &dyn Fn(usize) -> Word) -> Word {
    let mut out = Word::identity();
    for &gi in w {
        out = out.concat(&fword(gi));
    }
    out
}

fn commutator(a: &Word, b: &Word) -> Word {
    a.concat(b).concat(&a.inv()).concat(&b.inv())
}

fn reduce_by_blocks(h: &CQSub, e: &CElem) -> Result<CElem, ConcError> {
    // canonical block reduction is internal to CQSub::canon; replicate the
    // minimal part here
    let mut coords = e.0.clone();
    for (bc, conj) in &h.blocks {
        match bc.len() {
            1 => coords[bc[0]] = CoordVal::S3(crate::conc::CCoord::one()),
            2 => {
                let (a, b) = (bc[0], bc[1]);
                let (xa, xb) = match (&coords[a], &coords[b]) {
                    (CoordVal::S3(x), CoordVal::S3(y)) => (*x, *y),
                    _ => return Err(ConcError::Unsupported("block on circle".into())),
                };
                let g = xa.inv();
                let zgz = g.conj_by_tag(*conj)?;
                coords[a] = CoordVal::S3(crate::conc::CCoord::one());
                coords[b] = CoordVal::S3(xb.mul(&zgz)?);
            }
            _ => return Err(ConcError::Unsupported("block arity".into())),
        }
    }
    Ok(CElem(coords))
}

impl Pi1Presentation {
    /// Words generating ker(π₀(H̄) → π₀(K̄)) for the identity component of a
    /// concrete subgroup K ⊇ H: the component classes of H̄ inside K̄₀.
    pub fn kernel_into(&self, k0: &CQSub) -> Result<Vec<Word>, ConcError> {
        let nf = self.h.fins.len();
        let fword = |i: usize| Word::gen(i);
        let zword = |i: usize| Word::gen(nf + i);
        let zvec_word = |v: &[i64]| {
            let mut w = Word::identity();
            for (i, &e) in v.iter().enumerate() {
                w = w.concat(&zword(i).pow(e));
            }
            w
        };
        let mut out = Vec::new();
        // deck translations inside K̄₀: relation lattice of decks rel K
        let kctx = KbarMembership::new(k0);
        if !self.deck_coords.is_empty() {
            for v in kctx.deck_sublattice(&self.deck_coords)? {
                out.push(zvec_word(&v));
            }
        }
        // for each component rep: find a deck translate inside K̄₀
        for (kidx, rep) in self.exact_reps.iter().enumerate() {
            if kidx == 0 {
                continue;
            }
            if let Some(v) = kctx.deck_translate_into(rep, &self.deck_coords)? {
                let w = word_of(&self.pi0.words[kidx], &fword).concat(&zvec_word(&v));
                out.push(w);
            }
        }
        Ok(out)
    }
}

/// Membership of elements and deck translates in the identity component of
/// the preimage of a connected group K₀.
struct KbarMembership {
    k0: CQSub,
}

impl KbarMembership {
    fn new(k0: &CQSub) -> Self {
        KbarMembership { k0: k0.clone() }
    }

    /// Deck vectors v (over the given ambient circle coordinates) with
    /// z^v ∈ K̄₀.
    fn deck_sublattice(&self, deck_coords: &[usize]) -> Result<Vec<Vec<i64>>, ConcError> {
        let killed: Vec<usize> = self.k0.blocks.iter().map(|(c, _)| c[0]).collect();
        let t_coords: Vec<usize> =
            (0..self.k0.ncoords()).filter(|c| !killed.contains(c)).collect();
        let rows: Vec<Vec<i64>> = self
            .k0
            .lattice
            .iter()
            .map(|row| t_coords.iter().map(|&c| row[c]).collect())
            .collect();
        let phis = crate::conc::null_functionals(&rows, t_coords.len());
        let d = phis.len();
        // columns for each deck coordinate and for each compact shift
        let mut deck_cols = Vec::new();
        for &dc in deck_coords {
            let idx = t_coords.iter().position(|&c| c == dc).ok_or_else(|| {
                ConcError::Unsupported("deck coordinate absorbed by a block".into())
            })?;
            deck_cols.push(phis.iter().map(|phi| phi[idx]).collect::<Vec<i64>>());
        }
        let mut shift_cols = Vec::new();
        for (idx, &c) in t_coords.iter().enumerate() {
            if self.k0.coord_is_s3[c] {
                shift_cols.push(phis.iter().map(|phi| phi[idx]).collect::<Vec<i64>>());
            }
        }
        let b = deck_cols.len();
        let ncols = b + shift_cols.len();
        if ncols == 0 || d == 0 {
            // no constraints: everything dies
            return Ok((0..b)
                .map(|i| {
                    let mut v = vec![0i64; b];
                    v[i] = 1;
                    v
                })
                .collect());
        }
        let mut a = vec![vec![0i64; ncols]; d];
        for (j, col) in deck_cols.iter().chain(shift_cols.iter()).enumerate() {
            for i in 0..d {
                a[i][j] = col[i];
            }
        }
        Ok(intlin::kernel_basis(&a, ncols)
            .into_iter()
            .map(|v| v[..b].to_vec())
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect())
    }

    /// Is some deck translate of `e` inside K̄₀? Returns the witness vector.
    fn deck_translate_into(
        &self,
        e: &CElem,
        deck_coords: &[usize],
    ) -> Result<Option<Vec<i64>>, ConcError> {
        // reduce by K's blocks; the j-flags and polyhedral parts must vanish
        let e = reduce_by_blocks(&self.k0, e)?;
        let killed: Vec<usize> = self.k0.blocks.iter().map(|(c, _)| c[0]).collect();
        let t_coords: Vec<usize> =
            (0..self.k0.ncoords()).filter(|c| !killed.contains(c)).collect();
        let mut t = Vec::new();
        for &c in &t_coords {
            match &e.0[c] {
                CoordVal::S3(crate::conc::CCoord::Q(q)) => {
                    if q.j {
                        return Ok(None);
                    }
                    t.push(q.turns());
                }
                CoordVal::S3(crate::conc::CCoord::P(k, i)) => {
                    let norm = crate::conc::CCoord::P(*k, *i);
                    // only central values can lie on the torus
                    match normalized_central(&norm) {
                        Some(r) => t.push(r),
                        None => return Ok(None),
                    }
                }
                CoordVal::R(r) => t.push(*r),
            }
        }
        let rows: Vec<Vec<i64>> = self
            .k0
            .lattice
            .iter()
            .map(|row| t_coords.iter().map(|&c| row[c]).collect())
            .collect();
        let phis = crate::conc::null_functionals(&rows, t_coords.len());
        let d = phis.len();
        let residues: Vec<Rat> = phis
            .iter()
            .map(|phi| {
                phi.iter()
                    .zip(&t)
                    .map(|(&a, x)| Ratio::from_integer(a) * x)
                    .fold(Rat::zero(), |acc, v| acc + v)
            })
            .collect();
        // solve Σ v_c·deck_col + Σ s·shift = −residue over the integers
        let mut deck_cols = Vec::new();
        for &dc in deck_coords {
            let idx = match t_coords.iter().position(|&c| c == dc) {
                Some(i) => i,
                None => return Err(ConcError::Unsupported("deck under block".into())),
            };
            deck_cols.push(phis.iter().map(|phi| phi[idx]).collect::<Vec<i64>>());
        }
        let mut shift_cols = Vec::new();
        for (idx, &c) in t_coords.iter().enumerate() {
            if self.k0.coord_is_s3[c] {
                shift_cols.push(phis.iter().map(|phi| phi[idx]).collect::<Vec<i64>>());
            }
        }
        if residues.iter().any(|r| !r.is_integer()) {
            // fractional residues can still be solvable only if some column
            // is fractional, which cannot happen with integer functionals
            return Ok(None);
        }
        let ri: Vec<i64> = residues.iter().map(|r| -r.to_integer()).collect();
        let b = deck_cols.len();
        let ncols = b + shift_cols.len();
        if d == 0 {
            return Ok(Some(vec![0; b]));
        }
        if ncols == 0 {
            return Ok(if ri.iter().all(|&x| x == 0) { Some(vec![]) } else { None });
        }
        let mut a = vec![vec![0i64; ncols]; d];
        for (j, col) in deck_cols.iter().chain(shift_cols.iter()).enumerate() {
            for i in 0..d {
                a[i][j] = col[i];
            }
        }
        Ok(intlin::solve(&a, &ri).map(|x| x[..b].to_vec()))
    }
}

fn normalized_central(c: &crate::conc::CCoord) -> Option<Rat> {
    match c {
        crate::conc::CCoord::Q(q) if !q.j => Some(q.turns()),
        crate::conc::CCoord::P(k, i) => {
            if *i == 0 {
                Some(Rat::zero())
            } else if *i as usize == crate::conc::poly_tables().minus_one(*k) {
                Some(Ratio::new(1, 2))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// π₁ of the cohomogeneity-one space of a concrete diagram by the van Kampen
/// quotient: π₁(G/H) / ⟨⟨ker into K̄₀⁻, ker into K̄₀⁺⟩⟩.
pub fn pi1_space(
    h: &CQSub,
    k_minus: &CQSub,
    k_plus: &CQSub,
    cap: usize,
) -> Result<FpGroup, ConcError> {
    let pres = pi1_homogeneous(h, cap)?;
    let mut kill = pres.kernel_into(&idcomp(k_minus))?;
    kill.extend(pres.kernel_into(&idcomp(k_plus))?);
    Ok(pres.fp.quotient_by_normal_closure(&kill))
}

fn idcomp(k: &CQSub) -> CQSub {
    CQSub {
        coord_is_s3: k.coord_is_s3.clone(),
        blocks: k.blocks.clone(),
        lattice: k.lattice.clone(),
        fins: vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{int, var, Assignment};
    use crate::subgroup::{Block, GammaKind, Placement, PtCoord, QSub, SymTurns};
    use groupkit::Order;

    fn inst(q: &QSub, cs3: &[bool], env: &Assignment) -> CQSub {
        CQSub::instantiate(q, cs3, env).unwrap()
    }

    #[test]
    fn pi1_of_s3xs1_mod_gamma_zk() {
        // G = S³×S¹, H = Γ×Z_k with Γ = D*₂ (order 8): π₁(G/H) is the
        // extension of Γ×Z_k by Z; diagram (3.1) then kills everything.
        let cs3 = vec![true, false];
        let env = Assignment::new(&[("k", 3)]);
        let h = QSub::trivial(2)
            .with_gamma(GammaKind::BinDih(int(2)), Placement::Coord(0))
            .with_pt(QSub::pt_at(
                2,
                &[(1, PtCoord::turns(SymTurns::new(int(1), var("k"))))],
            ));
        let hc = inst(&h, &cs3, &env);
        // K⁻ = Γ×S¹ (identity component 1×S¹), K⁺ = S³×Z_k (id comp S³×1)
        let km = QSub::trivial(2).with_lattice_row(vec![int(0), int(1)]);
        let kp = QSub::trivial(2).with_block(Block::single(0));
        let g = pi1_space(
            &hc,
            &inst(&km, &cs3, &env),
            &inst(&kp, &cs3, &env),
            400,
        )
        .unwrap();
        assert_eq!(g.order_bounded(2000), Order::Finite(1));
    }

    #[test]
    fn pi1_gh_matches_pi0_when_simply_connected_ambient() {
        // G = S³×S³ (b = 0): π₁(G/H) = π₀(H)
        let cs3 = vec![true, true];
        let h = QSub::trivial(2)
            .with_lattice_row(vec![int(1), int(1)])
            .with_pt(QSub::pt_at(2, &[(0, PtCoord::minus_one())]))
            .with_pt(QSub::pt_at(2, &[(0, PtCoord::jj()), (1, PtCoord::jj())]));
        let hc = inst(&h, &cs3, &Assignment::default());
        let pres = pi1_homogeneous(&hc, 200).unwrap();
        assert_eq!(pres.fp.order_bounded(2000), Order::Finite(4));
        assert_eq!(pres.fp.abelianization(), vec![2, 2]);
    }

    #[test]
    fn pi1_space_of_3_58() {
        // (S³×S³, ΔΓ, S³×Γ, ΔS³): simply connected for every Γ
        let cs3 = vec![true, true];
        for gamma in [GammaKind::Cyclic(int(5)), GammaKind::BinDih(int(3)), GammaKind::BinTet] {
            let h = QSub::trivial(2).with_gamma(gamma.clone(), Placement::Diag(0, 1));
            let hc = inst(&h, &cs3, &Assignment::default());
            let km = QSub::trivial(2).with_block(Block::single(0));
            let kp = QSub::trivial(2).with_block(Block::diag(0, 1));
            let g = pi1_space(
                &hc,
                &inst(&km, &cs3, &Assignment::default()),
                &inst(&kp, &cs3, &Assignment::default()),
                400,
            )
            .unwrap();
            assert_eq!(g.order_bounded(4000), Order::Finite(1), "Γ = {gamma:?}");
        }
    }

    #[test]
    fn pi1_gh_infinite_signalled() {
        // H = Γ×Z_k in S³×S¹ has infinite π₁(G/H) (Z-extension)
        let cs3 = vec![true, false];
        let env = Assignment::new(&[("k", 2)]);
        let h = QSub::trivial(2)
            .with_gamma(GammaKind::Cyclic(int(3)), Placement::Coord(0))
            .with_pt(QSub::pt_at(
                2,
                &[(1, PtCoord::turns(SymTurns::new(int(1), var("k"))))],
            ));
        let hc = inst(&h, &cs3, &env);
        let pres = pi1_homogeneous(&hc, 100).unwrap();
        assert_eq!(pres.fp.order_bounded(500), Order::Unbounded);
    }
}
