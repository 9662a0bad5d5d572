//! Symbolic integer expressions in the parameters of diagram families
//! (k, m, p, q, …) and the divisibility / coprimality / parity constraints
//! imposed on them.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Var = String;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Expr {
    Int(i64),
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Gcd(Box<Expr>, Box<Expr>),
    /// Exact division; evaluation fails on a remainder.
    Div(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("unbound variable {0}")]
    Unbound(Var),
    #[error("non-exact division {0} / {1}")]
    Division(i64, i64),
}

pub fn var(name: &str) -> Expr {
    Expr::Var(name.to_string())
}

/// Cancel exact-division factors against matching denominators in a
/// monomial: a · (b/a) = b holds because division nodes are exact.
fn simplify_monomial(m: &mut Vec<Expr>) {
    while Expr::cancel_div(m) {}
}

pub fn int(v: i64) -> Expr {
    Expr::Int(v)
}

impl Expr {
    pub fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
    pub fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
    pub fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
    pub fn gcd(self, rhs: Expr) -> Expr {
        Expr::Gcd(Box::new(self), Box::new(rhs))
    }
    pub fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }

    pub fn eval(&self, env: &Assignment) -> Result<i64, ExprError> {
        Ok(match self {
            Expr::Int(v) => *v,
            Expr::Var(v) => *env.0.get(v).ok_or_else(|| ExprError::Unbound(v.clone()))?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Gcd(a, b) => num_integer::gcd(a.eval(env)?, b.eval(env)?),
            Expr::Div(a, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                if y == 0 || x % y != 0 {
                    return Err(ExprError::Division(x, y));
                }
                x / y
            }
        })
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Expr::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Gcd(a, b)
            | Expr::Div(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Expr {
        match self {
            Expr::Int(v) => Expr::Int(*v),
            Expr::Var(v) => Expr::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            Expr::Add(a, b) => a.rename(map).add(b.rename(map)),
            Expr::Sub(a, b) => a.rename(map).sub(b.rename(map)),
            Expr::Mul(a, b) => a.rename(map).mul(b.rename(map)),
            Expr::Gcd(a, b) => a.rename(map).gcd(b.rename(map)),
            Expr::Div(a, b) => a.rename(map).div(b.rename(map)),
        }
    }

    /// Expand into a sum of (coefficient, monomial) terms. Monomials are
    /// sorted products of atomic factors (variables, gcd and division nodes).
    fn to_poly(&self) -> Vec<(i64, Vec<Expr>)> {
        match self {
            Expr::Int(v) => vec![(*v, vec![])],
            Expr::Var(_) => vec![(1, vec![self.clone()])],
            Expr::Add(a, b) => {
                let mut t = a.to_poly();
                t.extend(b.to_poly());
                t
            }
            Expr::Sub(a, b) => {
                let mut t = a.to_poly();
                t.extend(b.to_poly().into_iter().map(|(c, m)| (-c, m)));
                t
            }
            Expr::Mul(a, b) => {
                let (ta, tb) = (a.to_poly(), b.to_poly());
                let mut out = Vec::new();
                for (ca, ma) in &ta {
                    for (cb, mb) in &tb {
                        let mut m = ma.clone();
                        m.extend(mb.iter().cloned());
                        simplify_monomial(&mut m);
                        m.sort();
                        out.push((ca * cb, m));
                    }
                }
                out
            }
            // gcd and exact-division nodes are atomic factors
            Expr::Gcd(_, _) | Expr::Div(_, _) => vec![(1, vec![self.normalize_atomic()])],
        }
    }

    fn cancel_div(m: &mut Vec<Expr>) -> bool {
        for i in 0..m.len() {
            if let Expr::Div(num, den) = &m[i] {
                if let Some(j) = m.iter().position(|x| x == den.as_ref()) {
                    if j != i {
                        let replacement = num.as_ref().clone();
                        let (a, b) = (i.min(j), i.max(j));
                        m.remove(b);
                        m.remove(a);
                        m.push(replacement);
                        return true;
                    }
                }
            }
        }
        false
    }

    fn normalize_atomic(&self) -> Expr {
        match self {
            Expr::Gcd(a, b) => {
                let (a, b) = (a.normalize(), b.normalize());
                match (&a, &b) {
                    (Expr::Int(x), Expr::Int(y)) => Expr::Int(num_integer::gcd(*x, *y)),
                    (Expr::Int(1), _) | (_, Expr::Int(1)) => Expr::Int(1),
                    _ => {
                        if a == b {
                            a
                        } else if a <= b {
                            a.gcd(b)
                        } else {
                            b.gcd(a)
                        }
                    }
                }
            }
            Expr::Div(a, b) => {
                let (a, b) = (a.normalize(), b.normalize());
                match (&a, &b) {
                    (Expr::Int(x), Expr::Int(y)) if *y != 0 && x % y == 0 => Expr::Int(x / y),
                    (_, Expr::Int(1)) => a,
                    _ => {
                        if a == b {
                            Expr::Int(1)
                        } else {
                            a.div(b)
                        }
                    }
                }
            }
            other => other.clone(),
        }
    }

    /// Canonical form: polynomial expansion with grouped monomials; gcd and
    /// division nodes stay atomic.
    pub fn normalize(&self) -> Expr {
        match self {
            Expr::Int(_) | Expr::Var(_) => self.clone(),
            Expr::Gcd(_, _) | Expr::Div(_, _) => {
                let at = self.normalize_atomic();
                if matches!(at, Expr::Int(_)) {
                    return at;
                }
                at
            }
            _ => {
                let mut grouped: BTreeMap<Vec<Expr>, i64> = BTreeMap::new();
                for (c, m) in self.to_poly() {
                    *grouped.entry(m).or_insert(0) += c;
                }
                let mut terms: Vec<Expr> = Vec::new();
                for (m, c) in grouped {
                    if c == 0 {
                        continue;
                    }
                    let mut factors: Vec<Expr> = Vec::new();
                    if c != 1 || m.is_empty() {
                        factors.push(Expr::Int(c));
                    }
                    factors.extend(m);
                    let term = factors
                        .into_iter()
                        .reduce(|a, b| a.mul(b))
                        .unwrap_or(Expr::Int(0));
                    terms.push(term);
                }
                terms.into_iter().reduce(|a, b| a.add(b)).unwrap_or(Expr::Int(0))
            }
        }
    }

    /// Normalize, then flip the overall sign so the leading term is
    /// nonnegative (for sign-insensitive contexts like divisibility).
    pub fn normalize_up_to_sign(&self) -> Expr {
        let n = self.normalize();
        let p = n.to_poly();
        let leading_negative = p.first().map(|(c, _)| *c < 0).unwrap_or(false);
        if leading_negative {
            Expr::Int(-1).mul(n).normalize()
        } else {
            n
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Gcd(a, b) => write!(f, "gcd({a}, {b})"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
        }
    }
}

/// A concrete choice of the family parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(pub BTreeMap<Var, i64>);

impl Assignment {
    pub fn new(pairs: &[(&str, i64)]) -> Self {
        Assignment(pairs.iter().map(|(v, x)| (v.to_string(), *x)).collect())
    }
    pub fn set(&mut self, v: &str, x: i64) {
        self.0.insert(v.to_string(), x);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Constraint {
    /// a divides b.
    Divides(Expr, Expr),
    Coprime(Expr, Expr),
    Eq(Expr, Expr),
    Ne(Expr, Expr),
    Ge(Expr, i64),
    Odd(Expr),
    Even(Expr),
    Implies(Box<Constraint>, Box<Constraint>),
}

impl Constraint {
    pub fn eval(&self, env: &Assignment) -> Result<bool, ExprError> {
        Ok(match self {
            Constraint::Divides(a, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                x != 0 && y % x == 0
            }
            Constraint::Coprime(a, b) => num_integer::gcd(a.eval(env)?, b.eval(env)?) == 1,
            Constraint::Eq(a, b) => a.eval(env)? == b.eval(env)?,
            Constraint::Ne(a, b) => a.eval(env)? != b.eval(env)?,
            Constraint::Ge(a, c) => a.eval(env)? >= *c,
            Constraint::Odd(a) => a.eval(env)?.rem_euclid(2) == 1,
            Constraint::Even(a) => a.eval(env)?.rem_euclid(2) == 0,
            Constraint::Implies(a, b) => !a.eval(env)? || b.eval(env)?,
        })
    }

    pub fn vars(&self, out: &mut Vec<Var>) {
        match self {
            Constraint::Divides(a, b)
            | Constraint::Coprime(a, b)
            | Constraint::Eq(a, b)
            | Constraint::Ne(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Constraint::Ge(a, _) | Constraint::Odd(a) | Constraint::Even(a) => a.vars(out),
            Constraint::Implies(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Constraint {
        match self {
            Constraint::Divides(a, b) => Constraint::Divides(a.rename(map), b.rename(map)),
            Constraint::Coprime(a, b) => Constraint::Coprime(a.rename(map), b.rename(map)),
            Constraint::Eq(a, b) => Constraint::Eq(a.rename(map), b.rename(map)),
            Constraint::Ne(a, b) => Constraint::Ne(a.rename(map), b.rename(map)),
            Constraint::Ge(a, c) => Constraint::Ge(a.rename(map), *c),
            Constraint::Odd(a) => Constraint::Odd(a.rename(map)),
            Constraint::Even(a) => Constraint::Even(a.rename(map)),
            Constraint::Implies(a, b) => {
                Constraint::Implies(Box::new(a.rename(map)), Box::new(b.rename(map)))
            }
        }
    }

    /// Canonical form: normalized sub-expressions, symmetric relations with
    /// sorted arguments, differences sorted (divisibility ignores sign).
    pub fn normalize(&self) -> Constraint {
        match self {
            Constraint::Divides(a, b) => {
                Constraint::Divides(a.normalize_up_to_sign(), b.normalize_up_to_sign())
            }
            Constraint::Coprime(a, b) => {
                let (a, b) = (a.normalize(), b.normalize());
                if a <= b {
                    Constraint::Coprime(a, b)
                } else {
                    Constraint::Coprime(b, a)
                }
            }
            Constraint::Eq(a, b) => {
                let (a, b) = (a.normalize(), b.normalize());
                if a <= b {
                    Constraint::Eq(a, b)
                } else {
                    Constraint::Eq(b, a)
                }
            }
            Constraint::Ne(a, b) => {
                let (a, b) = (a.normalize(), b.normalize());
                if a <= b {
                    Constraint::Ne(a, b)
                } else {
                    Constraint::Ne(b, a)
                }
            }
            Constraint::Ge(a, c) => Constraint::Ge(a.normalize(), *c),
            Constraint::Odd(a) => Constraint::Odd(a.normalize()),
            Constraint::Even(a) => Constraint::Even(a.normalize()),
            Constraint::Implies(a, b) => {
                Constraint::Implies(Box::new(a.normalize()), Box::new(b.normalize()))
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Divides(a, b) => write!(f, "{a} | {b}"),
            Constraint::Coprime(a, b) => write!(f, "gcd({a}, {b}) = 1"),
            Constraint::Eq(a, b) => write!(f, "{a} = {b}"),
            Constraint::Ne(a, b) => write!(f, "{a} != {b}"),
            Constraint::Ge(a, c) => write!(f, "{a} >= {c}"),
            Constraint::Odd(a) => write!(f, "{a} odd"),
            Constraint::Even(a) => write!(f, "{a} even"),
            Constraint::Implies(a, b) => write!(f, "({a}) => ({b})"),
        }
    }
}

/// Normalize a constraint set: normalize members, drop duplicates, sort.
pub fn normalize_constraints(cs: &[Constraint]) -> Vec<Constraint> {
    let mut out: Vec<Constraint> = cs.iter().map(|c| c.normalize()).collect();
    out.sort();
    out.dedup();
    out
}

/// All assignments of `vars` with values in 1..=cap satisfying `cs`.
pub fn satisfying_assignments(
    vars: &[Var],
    cs: &[Constraint],
    cap: i64,
) -> Vec<Assignment> {
    let mut out = Vec::new();
    let mut cur = Assignment::default();
    fn rec(
        vars: &[Var],
        idx: usize,
        cs: &[Constraint],
        cap: i64,
        cur: &mut Assignment,
        out: &mut Vec<Assignment>,
    ) {
        if idx == vars.len() {
            if cs.iter().all(|c| c.eval(cur).unwrap_or(false)) {
                out.push(cur.clone());
            }
            return;
        }
        for v in 1..=cap {
            cur.0.insert(vars[idx].clone(), v);
            rec(vars, idx + 1, cs, cap, cur, out);
        }
        cur.0.remove(&vars[idx]);
    }
    rec(vars, 0, cs, cap, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_gcd_div() {
        let e = var("k").gcd(var("m")).div(int(1));
        let env = Assignment::new(&[("k", 12), ("m", 18)]);
        assert_eq!(e.eval(&env).unwrap(), 6);
    }

    #[test]
    fn constraint_parity_implication() {
        // if k even then p odd
        let c = Constraint::Implies(
            Box::new(Constraint::Even(var("k"))),
            Box::new(Constraint::Odd(var("p"))),
        );
        assert!(c.eval(&Assignment::new(&[("k", 3), ("p", 2)])).unwrap());
        assert!(c.eval(&Assignment::new(&[("k", 4), ("p", 3)])).unwrap());
        assert!(!c.eval(&Assignment::new(&[("k", 4), ("p", 2)])).unwrap());
    }

    #[test]
    fn difference_sign_normalization() {
        let a = Constraint::Divides(var("k"), var("p").sub(var("q"))).normalize();
        let b = Constraint::Divides(var("k"), var("q").sub(var("p"))).normalize();
        assert_eq!(a, b);
    }

    #[test]
    fn satisfiability_search() {
        let cs = vec![
            Constraint::Divides(var("q"), var("k").gcd(var("m"))),
            Constraint::Coprime(var("p"), var("k")),
        ];
        let sols = satisfying_assignments(
            &["k".to_string(), "m".to_string(), "p".to_string(), "q".to_string()],
            &cs,
            4,
        );
        assert!(!sols.is_empty());
        for s in &sols {
            assert!(cs.iter().all(|c| c.eval(s).unwrap()));
        }
    }
}
