//! Coset enumeration (Todd–Coxeter, HLT strategy with lookahead-free
//! coincidence processing) over the trivial subgroup or a subgroup given by
//! generator words.
//!
//! Small presentations only: the enumeration gives up once `cap` cosets have
//! been defined, reporting the presentation as unbounded at that cap.

use crate::word::{Letter, Word};

const INVALID: u32 = u32::MAX;

pub struct CosetTable {
    ngens: usize,
    /// row-major: table[coset * width + col], col = 2*g for generator g,
    /// 2*g+1 for its inverse.
    table: Vec<u32>,
    /// union-find over cosets for coincidences
    parent: Vec<u32>,
    /// definition chain: coset c was defined as rep[c].0 · column rep[c].1
    defs: Vec<(u32, usize)>,
    live: usize,
    cap: usize,
}

pub enum EnumResult {
    /// Enumeration closed with the given number of cosets.
    Closed(usize),
    /// More than `cap` cosets were needed.
    CapExceeded,
}

impl CosetTable {
    fn col(l: Letter) -> usize {
        let g = (l.unsigned_abs() as usize) - 1;
        if l > 0 {
            2 * g
        } else {
            2 * g + 1
        }
    }

    fn inv_col(col: usize) -> usize {
        col ^ 1
    }

    pub fn new(ngens: usize, cap: usize) -> Self {
        let mut t = CosetTable {
            ngens,
            table: Vec::new(),
            parent: Vec::new(),
            defs: Vec::new(),
            live: 0,
            cap,
        };
        t.new_coset(0, 0);
        t
    }

    fn width(&self) -> usize {
        2 * self.ngens
    }

    fn new_coset(&mut self, from: u32, col: usize) -> u32 {
        let c = self.parent.len() as u32;
        self.parent.push(c);
        self.defs.push((from, col));
        self.table.extend(std::iter::repeat(INVALID).take(self.width()));
        self.live += 1;
        c
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let p = self.parent[c as usize];
            self.parent[c as usize] = self.parent[p as usize];
            c = self.parent[c as usize];
        }
        c
    }

    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.width() + col]
    }

    fn set(&mut self, c: u32, col: usize, v: u32) {
        let w = self.width();
        self.table[c as usize * w + col] = v;
    }

    /// Record c·col = d, queueing a coincidence if the slot disagrees.
    fn deduce(&mut self, c: u32, col: usize, d: u32, queue: &mut Vec<(u32, u32)>) {
        let c = self.find(c);
        let d = self.find(d);
        let cur = self.get(c, col);
        if cur == INVALID {
            self.set(c, col, d);
            let back = self.get(d, Self::inv_col(col));
            if back == INVALID {
                self.set(d, Self::inv_col(col), c);
            } else if self.find(back) != c {
                queue.push((back, c));
            }
        } else if self.find(cur) != d {
            queue.push((cur, d));
        }
    }

    fn process_coincidences(&mut self, queue: &mut Vec<(u32, u32)>) {
        while let Some((a, b)) = queue.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop as usize] = keep;
            self.live -= 1;
            for col in 0..self.width() {
                let v = self.get(drop, col);
                if v != INVALID {
                    let v = self.find(v);
                    self.deduce(keep, col, v, queue);
                }
            }
        }
    }

    /// Scan `word` at coset `c`, requiring it to trace back to `c`; fills or
    /// collides as needed, defining new cosets to complete the scan.
    fn scan_and_fill(&mut self, c: u32, word: &Word, queue: &mut Vec<(u32, u32)>) -> bool {
        if word.0.is_empty() {
            return true;
        }
        loop {
            let c = self.find(c);
            // forward
            let mut fwd = c;
            let mut i = 0;
            while i < word.0.len() {
                let nxt = self.get(fwd, Self::col(word.0[i]));
                if nxt == INVALID {
                    break;
                }
                fwd = self.find(nxt);
                i += 1;
            }
            if i == word.0.len() {
                if fwd != c {
                    queue.push((fwd, c));
                    self.process_coincidences(queue);
                }
                return true;
            }
            // backward: stop once the gap narrows to a single letter
            let mut bwd = c;
            let mut k = word.0.len();
            while k > i + 1 {
                let l = word.0[k - 1];
                let nxt = self.get(bwd, Self::inv_col(Self::col(l)));
                if nxt == INVALID {
                    break;
                }
                bwd = self.find(nxt);
                k -= 1;
            }
            if k == i + 1 {
                // gap of one letter: deduction fwd · w_k = bwd
                let l = word.0[i];
                self.deduce(fwd, Self::col(l), bwd, queue);
                self.process_coincidences(queue);
                return true;
            }
            // define a new coset to fill the first gap
            if self.parent.len() >= self.cap {
                return false;
            }
            let l = word.0[i];
            let d = self.new_coset(fwd, Self::col(l));
            self.set(fwd, Self::col(l), d);
            self.set(d, Self::inv_col(Self::col(l)), fwd);
        }
    }

    fn is_live(&mut self, c: u32) -> bool {
        self.find(c) == c
    }

    /// Run the enumeration for the subgroup generated by `subgens` inside the
    /// group with relators `relators`.
    pub fn enumerate(
        ngens: usize,
        relators: &[Word],
        subgens: &[Word],
        cap: usize,
    ) -> (EnumResult, Option<CosetTable>) {
        let mut t = CosetTable::new(ngens, cap.max(1));
        let mut queue = Vec::new();
        for w in subgens {
            if !t.scan_and_fill(0, w, &mut queue) {
                return (EnumResult::CapExceeded, None);
            }
        }
        loop {
            let mut changed = false;
            let mut c = 0u32;
            while (c as usize) < t.parent.len() {
                if t.is_live(c) {
                    for r in relators {
                        let before = t.parent.len();
                        if !t.scan_and_fill(c, r, &mut queue) {
                            return (EnumResult::CapExceeded, None);
                        }
                        if t.parent.len() != before {
                            changed = true;
                        }
                        if !t.is_live(c) {
                            break;
                        }
                    }
                    // make sure every live coset has a fully defined row; HLT
                    // fills rows through relator scans, but a generator can be
                    // missing from every relator.
                    if t.is_live(c) {
                        for g in 0..ngens {
                            let cc = t.find(c);
                            if t.get(cc, 2 * g) == INVALID {
                                if t.parent.len() >= t.cap {
                                    return (EnumResult::CapExceeded, None);
                                }
                                let d = t.new_coset(cc, 2 * g);
                                t.set(cc, 2 * g, d);
                                t.set(d, 2 * g + 1, cc);
                                changed = true;
                            }
                        }
                    }
                }
                c += 1;
            }
            if !changed {
                break;
            }
        }
        let n = t.live;
        (EnumResult::Closed(n), Some(t))
    }

    /// Number of live cosets.
    pub fn index(&self) -> usize {
        self.live
    }

    /// Canonical renumbering of live cosets, 0 = the subgroup itself.
    fn live_index(&mut self) -> Vec<u32> {
        let n = self.parent.len();
        let mut map = vec![INVALID; n];
        let mut next = 0u32;
        for c in 0..n as u32 {
            if self.find(c) == c {
                map[c as usize] = next;
                next += 1;
            }
        }
        map
    }

    /// Extract the permutation action of each generator on live cosets.
    pub fn coset_action(&mut self) -> Vec<Vec<u32>> {
        let map = self.live_index();
        let n = self.live;
        let mut perms = vec![vec![INVALID; n]; self.ngens];
        for c in 0..self.parent.len() as u32 {
            if self.find(c) != c {
                continue;
            }
            for g in 0..self.ngens {
                let d = self.get(c, 2 * g);
                assert!(d != INVALID, "table complete after closure");
                let d = self.find(d);
                perms[g][map[c as usize] as usize] = map[d as usize];
            }
        }
        perms
    }

    /// A representative word for each live coset, traced through definitions.
    pub fn coset_representatives(&mut self) -> Vec<Word> {
        let map = self.live_index();
        let mut reps: Vec<Option<Word>> = vec![None; self.live];
        reps[0] = Some(Word::identity());
        // BFS over the completed table from coset 0
        let perms = self.coset_action();
        let mut fifo = std::collections::VecDeque::new();
        fifo.push_back(0usize);
        while let Some(c) = fifo.pop_front() {
            let base = reps[c].clone().unwrap();
            for (g, perm) in perms.iter().enumerate() {
                let d = perm[c] as usize;
                if reps[d].is_none() {
                    reps[d] = Some(base.concat(&Word::gen(g)));
                    fifo.push_back(d);
                }
            }
        }
        let _ = map;
        reps.into_iter().map(|r| r.expect("coset graph connected")).collect()
    }
}
