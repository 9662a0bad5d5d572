//! Words over a generating set: nonzero integers, with +g meaning generator
//! g−1 and −g its inverse. Words are kept freely reduced.

pub type Letter = i32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![g as Letter + 1])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        let mut w = Word(letters);
        w.reduce();
        w
    }

    pub fn reduce(&mut self) {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            assert!(l != 0, "letters are nonzero");
            if let Some(&last) = out.last() {
                if last == -l {
                    out.pop();
                    continue;
                }
            }
            out.push(l);
        }
        self.0 = out;
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word::from_letters(v)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n >= 0 { self.clone() } else { self.inv() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponent-sum vector over `ngens` generators (the abelianized image).
    pub fn exponent_vector(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0i64; ngens];
        for &l in &self.0 {
            let idx = (l.unsigned_abs() as usize) - 1;
            v[idx] += if l > 0 { 1 } else { -1 };
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_letters(vec![1, 2, -2, -1, 1]);
        assert_eq!(w.0, vec![1]);
    }

    #[test]
    fn inverse_concat_is_identity() {
        let w = Word::from_letters(vec![1, 2, 1, -2]);
        assert!(w.concat(&w.inv()).is_identity());
    }
}
