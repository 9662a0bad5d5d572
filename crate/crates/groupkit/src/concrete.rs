//! Finite groups given by an explicit multiplication table, with brute-force
//! monomorphism and isomorphism search over generator images.

use crate::GroupError;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupConcrete {
    n: usize,
    /// row-major table: table[a * n + b] = a·b
    table: Vec<u32>,
    inv: Vec<u32>,
    pub labels: Option<Vec<String>>,
}

impl FiniteGroupConcrete {
    pub fn trivial() -> Self {
        FiniteGroupConcrete { n: 1, table: vec![0], inv: vec![0], labels: None }
    }

    pub fn from_table(table: Vec<Vec<u32>>) -> Self {
        let n = table.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            assert_eq!(row.len(), n);
            flat.extend_from_slice(row);
        }
        let mut g = FiniteGroupConcrete { n, table: flat, inv: vec![0; n], labels: None };
        g.compute_inverses();
        g
    }

    /// Build from the permutation action of generators on {0..n−1} in the
    /// regular representation (0 = identity): element x is "the image of 0".
    pub fn from_regular_action(perms: &[Vec<u32>]) -> Self {
        let n = if perms.is_empty() { 1 } else { perms[0].len() };
        // word reaching each element, as a permutation composed from gens
        let mut reach: Vec<Option<Vec<usize>>> = vec![None; n];
        reach[0] = Some(vec![]);
        let mut fifo = VecDeque::from([0usize]);
        while let Some(c) = fifo.pop_front() {
            for (gi, p) in perms.iter().enumerate() {
                let d = p[c] as usize;
                if reach[d].is_none() {
                    let mut w = reach[c].clone().unwrap();
                    w.push(gi);
                    reach[d] = Some(w);
                    fifo.push_back(d);
                }
            }
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                // a·b = apply word of b starting from a
                let mut cur = a;
                for &gi in reach[b].as_ref().expect("regular action transitive") {
                    cur = perms[gi][cur] as usize;
                }
                table[a * n + b] = cur as u32;
            }
        }
        let mut g = FiniteGroupConcrete { n, table, inv: vec![0; n], labels: None };
        g.compute_inverses();
        g
    }

    /// Closure of `gens` under an abstract multiplication on hashable values.
    pub fn generate<T, F>(gens: &[T], identity: T, mut mul: F) -> (Self, Vec<T>)
    where
        T: Clone + Eq + std::hash::Hash,
        F: FnMut(&T, &T) -> T,
    {
        let mut elems: Vec<T> = vec![identity];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut fifo: VecDeque<usize> = VecDeque::from([0]);
        while let Some(i) = fifo.pop_front() {
            for g in gens {
                let prod = mul(&elems[i], g);
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                    fifo.push_back(elems.len() - 1);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod = mul(&elems[a], &elems[b]);
                table[a * n + b] = *index.get(&prod).expect("closure") as u32;
            }
        }
        let mut g = FiniteGroupConcrete { n, table, inv: vec![0; n], labels: None };
        g.compute_inverses();
        (g, elems)
    }

    fn compute_inverses(&mut self) {
        for a in 0..self.n {
            let mut found = false;
            for b in 0..self.n {
                if self.mul(a, b) == 0 {
                    self.inv[a] = b as u32;
                    found = true;
                    break;
                }
            }
            assert!(found, "every element has an inverse");
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut cur = a;
        let mut o = 1;
        while cur != 0 {
            cur = self.mul(cur, a);
            o += 1;
        }
        o
    }

    /// Sorted multiset of element orders.
    pub fn order_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_latin_square(&self) -> bool {
        for a in 0..self.n {
            let mut row = vec![false; self.n];
            let mut col = vec![false; self.n];
            for b in 0..self.n {
                row[self.mul(a, b)] = true;
                col[self.mul(b, a)] = true;
            }
            if row.iter().any(|x| !x) || col.iter().any(|x| !x) {
                return false;
            }
        }
        true
    }

    /// Exhaustive for order ≤ 64, random spot checks above.
    pub fn check_associativity(&self) -> bool {
        if self.n <= 64 {
            for a in 0..self.n {
                for b in 0..self.n {
                    for c in 0..self.n {
                        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                            return false;
                        }
                    }
                }
            }
            true
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut rnd = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % self.n as u64) as usize
            };
            (0..20_000).all(|_| {
                let (a, b, c) = (rnd(), rnd(), rnd());
                self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
            })
        }
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = HashSet::from([0usize]);
        let mut fifo = VecDeque::from([0usize]);
        while let Some(x) = fifo.pop_front() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if seen.insert(y) {
                        fifo.push_back(y);
                    }
                }
            }
        }
        let mut v: Vec<usize> = seen.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// A small generating sequence found greedily.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        while span.len() < self.n {
            // pick the element generating the largest extension
            let mut best: Option<(usize, usize)> = None;
            for cand in 1..self.n {
                if span.binary_search(&cand).is_ok() {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(cand);
                let size = self.subgroup_generated(&trial).len();
                if best.map_or(true, |(_, s)| size > s) {
                    best = Some((cand, size));
                }
                if size == self.n {
                    break;
                }
            }
            let (cand, _) = best.expect("group not yet generated");
            gens.push(cand);
            span = self.subgroup_generated(&gens);
        }
        gens
    }

    pub fn direct_product(&self, other: &FiniteGroupConcrete) -> FiniteGroupConcrete {
        let n = self.n * other.n;
        let mut table = vec![0u32; n * n];
        let idx = |a: usize, b: usize| a * other.n + b;
        for a1 in 0..self.n {
            for b1 in 0..other.n {
                for a2 in 0..self.n {
                    for b2 in 0..other.n {
                        table[idx(a1, b1) * n + idx(a2, b2)] =
                            idx(self.mul(a1, a2), other.mul(b1, b2)) as u32;
                    }
                }
            }
        }
        let mut g = FiniteGroupConcrete { n, table, inv: vec![0; n], labels: None };
        g.compute_inverses();
        g
    }

    pub fn cyclic(k: usize) -> FiniteGroupConcrete {
        assert!(k >= 1);
        let mut table = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                table[a * k + b] = ((a + b) % k) as u32;
            }
        }
        let mut g = FiniteGroupConcrete { n: k, table, inv: vec![0; k], labels: None };
        g.compute_inverses();
        g
    }

    /// Search for a monomorphism `self → target` by mapping a generating
    /// sequence to elements of matching order and checking multiplicativity
    /// and injectivity on the closure.
    pub fn embeds_into(&self, target: &FiniteGroupConcrete) -> Result<bool, GroupError> {
        if self.n > target.n || target.n % self.n != 0 {
            return Ok(false);
        }
        if self.n == 1 {
            return Ok(true);
        }
        // order obstruction
        let their_orders: HashSet<usize> = (0..target.n).map(|a| target.element_order(a)).collect();
        for a in 0..self.n {
            if !their_orders.contains(&self.element_order(a)) {
                return Ok(false);
            }
        }
        if self.n > 240 || target.n > 480 {
            return Err(GroupError::SizeExceeded { a: self.n, b: target.n });
        }
        let gens = self.generating_set();
        // precompute candidate images per generator by element order
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for &g in &gens {
            let o = self.element_order(g);
            candidates.push((0..target.n).filter(|&t| target.element_order(t) == o).collect());
        }
        // express every element of self as a word in gens (BFS)
        let words = self.words_in(&gens);
        let mut images = vec![0usize; gens.len()];
        self.search_embedding(target, &gens, &candidates, &words, &mut images, 0)
    }

    fn words_in(&self, gens: &[usize]) -> Vec<Vec<usize>> {
        // word over gen-indices for each element
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.n];
        words[0] = Some(vec![]);
        let mut fifo = VecDeque::from([0usize]);
        while let Some(x) = fifo.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(gi);
                    words[y] = Some(w);
                    fifo.push_back(y);
                }
            }
        }
        words.into_iter().map(|w| w.expect("generating set")).collect()
    }

    fn search_embedding(
        &self,
        target: &FiniteGroupConcrete,
        gens: &[usize],
        candidates: &[Vec<usize>],
        words: &[Vec<usize>],
        images: &mut Vec<usize>,
        depth: usize,
    ) -> Result<bool, GroupError> {
        if depth == gens.len() {
            // evaluate the homomorphism on all elements, check consistency + injectivity
            let mut img = vec![usize::MAX; self.n];
            for x in 0..self.n {
                let mut cur = 0usize;
                for &gi in &words[x] {
                    cur = target.mul(cur, images[gi]);
                }
                img[x] = cur;
            }
            // multiplicativity
            for a in 0..self.n {
                for b in 0..self.n {
                    if target.mul(img[a], img[b]) != img[self.mul(a, b)] {
                        return Ok(false);
                    }
                }
            }
            let distinct: HashSet<usize> = img.iter().cloned().collect();
            return Ok(distinct.len() == self.n);
        }
        for &c in &candidates[depth] {
            images[depth] = c;
            if self.search_embedding(target, gens, candidates, words, images, depth + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Isomorphism test restricted to small orders: order, element-order
    /// multiset, then embedding search.
    pub fn isomorphic(&self, other: &FiniteGroupConcrete) -> Result<bool, GroupError> {
        if self.n != other.n {
            return Ok(false);
        }
        if self.order_multiset() != other.order_multiset() {
            return Ok(false);
        }
        if self.n > 96 {
            return Err(GroupError::SizeExceeded { a: self.n, b: other.n });
        }
        self.embeds_into(other)
    }

    /// Abelian invariant decomposition when the group is abelian, as a sorted
    /// list of cyclic orders; `None` for nonabelian groups. Decided by
    /// matching the element-order count profile against every cyclic
    /// decomposition of the group order (abelian groups of equal order are
    /// isomorphic iff their order profiles agree).
    pub fn abelian_type(&self) -> Option<Vec<usize>> {
        for a in 0..self.n {
            for b in 0..self.n {
                if self.mul(a, b) != self.mul(b, a) {
                    return None;
                }
            }
        }
        let n = self.n;
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for a in 0..n {
            *counts.entry(self.element_order(a)).or_default() += 1;
        }
        fn decompositions(n: usize, max: usize) -> Vec<Vec<usize>> {
            if n == 1 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for d in (2..=n.min(max)).rev() {
                if n % d == 0 {
                    for mut rest in decompositions(n / d, d) {
                        rest.push(d);
                        out.push(rest);
                    }
                }
            }
            out
        }
        for cand in decompositions(n, n) {
            let mut g = FiniteGroupConcrete::trivial();
            for &c in &cand {
                g = g.direct_product(&FiniteGroupConcrete::cyclic(c));
            }
            let mut cc: BTreeMap<usize, usize> = BTreeMap::new();
            for a in 0..g.n {
                *cc.entry(g.element_order(a)).or_default() += 1;
            }
            if cc == counts {
                let mut cand = cand;
                cand.sort_unstable();
                return Some(cand);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::FpGroup;

    #[test]
    fn cyclic_tables() {
        let g = FiniteGroupConcrete::cyclic(6);
        assert!(g.is_latin_square());
        assert!(g.check_associativity());
        assert_eq!(g.element_order(1), 6);
    }

    #[test]
    fn from_presentation_matches() {
        let q8 = FpGroup::binary_dihedral(2).to_concrete(200).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.order_multiset(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn identity_embedding() {
        let g = FiniteGroupConcrete::cyclic(12);
        assert!(g.embeds_into(&g).unwrap());
    }

    #[test]
    fn z4_into_q8() {
        let z4 = FiniteGroupConcrete::cyclic(4);
        let q8 = FpGroup::binary_dihedral(2).to_concrete(200).unwrap();
        assert!(z4.embeds_into(&q8).unwrap());
        // Z₂⊕Z₂ does not embed into Q₈ (unique involution)
        let v4 = FiniteGroupConcrete::cyclic(2).direct_product(&FiniteGroupConcrete::cyclic(2));
        assert!(!v4.embeds_into(&q8).unwrap());
    }

    #[test]
    fn binary_dihedral_not_into_z2() {
        for m in [1, 2, 3, 6] {
            let d = FpGroup::binary_dihedral(m).to_concrete(500).unwrap();
            let z2 = FiniteGroupConcrete::cyclic(2);
            assert!(!d.embeds_into(&z2).unwrap());
        }
    }

    #[test]
    fn tetrahedral_into_octahedral() {
        let t = FpGroup::binary_tetrahedral().to_concrete(500).unwrap();
        let o = FpGroup::binary_octahedral().to_concrete(500).unwrap();
        assert!(t.embeds_into(&o).unwrap());
        assert!(!o.embeds_into(&t).unwrap());
    }

    #[test]
    fn abelian_type_detection() {
        let v4 = FiniteGroupConcrete::cyclic(2).direct_product(&FiniteGroupConcrete::cyclic(2));
        assert_eq!(v4.abelian_type(), Some(vec![2, 2]));
        assert_eq!(FiniteGroupConcrete::cyclic(4).abelian_type(), Some(vec![4]));
        let q8 = FpGroup::binary_dihedral(2).to_concrete(200).unwrap();
        assert_eq!(q8.abelian_type(), None);
    }

    #[test]
    fn reflexive_transitive_embeddings_small_catalog() {
        let mut cat: Vec<FiniteGroupConcrete> = Vec::new();
        for k in [1usize, 2, 3, 4, 6, 8, 12] {
            cat.push(FiniteGroupConcrete::cyclic(k));
        }
        for m in [1i64, 2, 3] {
            cat.push(FpGroup::binary_dihedral(m).to_concrete(200).unwrap());
        }
        cat.push(FpGroup::binary_tetrahedral().to_concrete(500).unwrap());
        for g in &cat {
            assert!(g.embeds_into(g).unwrap());
        }
        for a in &cat {
            for b in &cat {
                for c in &cat {
                    if a.embeds_into(b).unwrap() && b.embeds_into(c).unwrap() {
                        assert!(a.embeds_into(c).unwrap());
                    }
                }
            }
        }
    }
}
