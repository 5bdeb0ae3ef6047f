//! The scalar ring Q[c,k,gamma,lambda][h,h^-1].
//!
//! `h` is a Laurent variable living inside the ring rather than a
//! wrapper around it, because the level-p product mixes h-powers with
//! polynomial coefficients freely. Zero coefficients are never stored,
//! so structural equality is ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{rat_int, rat_to_string, Rat};
use crate::{Error, Result};

/// The closed set of named formal symbols.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    C,
    K,
    Gamma,
    Lambda,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::C, Symbol::K, Symbol::Gamma, Symbol::Lambda];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::C => "c",
            Symbol::K => "k",
            Symbol::Gamma => "gamma",
            Symbol::Lambda => "lambda",
        }
    }

    pub fn from_name(s: &str) -> Option<Symbol> {
        match s {
            "c" => Some(Symbol::C),
            "k" => Some(Symbol::K),
            "gamma" | "g" => Some(Symbol::Gamma),
            "lambda" | "l" => Some(Symbol::Lambda),
            _ => None,
        }
    }
}

/// Exponent vector of one term: polynomial exponents for the symbols,
/// a signed exponent for `h`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Exps {
    pub c: u16,
    pub k: u16,
    pub gamma: u16,
    pub lambda: u16,
    pub hbar: i32,
}

impl Exps {
    fn of(sym: Symbol) -> Exps {
        let mut e = Exps::default();
        match sym {
            Symbol::C => e.c = 1,
            Symbol::K => e.k = 1,
            Symbol::Gamma => e.gamma = 1,
            Symbol::Lambda => e.lambda = 1,
        }
        e
    }

    fn get(&self, sym: Symbol) -> u16 {
        match sym {
            Symbol::C => self.c,
            Symbol::K => self.k,
            Symbol::Gamma => self.gamma,
            Symbol::Lambda => self.lambda,
        }
    }

    fn combine(&self, other: &Exps) -> Exps {
        Exps {
            c: self.c + other.c,
            k: self.k + other.k,
            gamma: self.gamma + other.gamma,
            lambda: self.lambda + other.lambda,
            hbar: self.hbar + other.hbar,
        }
    }

    fn is_unit(&self) -> bool {
        *self == Exps::default()
    }

    fn total_poly_degree(&self) -> u32 {
        self.c as u32 + self.k as u32 + self.gamma as u32 + self.lambda as u32
    }
}

/// An exact element of Q[c,k,gamma,lambda][h,h^-1], kept in canonical
/// form: term map keyed by exponent vector, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Exps, Rat>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        PolyScalar::default()
    }

    pub fn one() -> Self {
        PolyScalar::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut p = PolyScalar::default();
        if !r.is_zero() {
            p.terms.insert(Exps::default(), r);
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        PolyScalar::from_rat(rat_int(n))
    }

    pub fn sym(s: Symbol) -> Self {
        let mut p = PolyScalar::default();
        p.terms.insert(Exps::of(s), Rat::one());
        p
    }

    /// `h^n` for any integer n (negative powers allowed).
    pub fn hbar_pow(n: i32) -> Self {
        let mut p = PolyScalar::default();
        p.terms.insert(Exps { hbar: n, ..Exps::default() }, Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Exps::default()).map(|r| r.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    /// The constant term viewed as a rational, if the value is free of
    /// all symbols and of h.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (e, r) = self.terms.iter().next().unwrap();
            if e.is_unit() {
                return Some(r.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.total_poly_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, sym: Symbol) -> u16 {
        self.terms.keys().map(|e| e.get(sym)).max().unwrap_or(0)
    }

    pub fn uses_hbar(&self) -> bool {
        self.terms.keys().any(|e| e.hbar != 0)
    }

    fn insert_term(&mut self, e: Exps, r: Rat) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &r;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return PolyScalar::zero();
        }
        PolyScalar { terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }

    pub fn mul_hbar_pow(&self, n: i32) -> Self {
        PolyScalar {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exps { hbar: e.hbar + n, ..*e }, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = PolyScalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute rationals for a subset of {c,k,gamma,lambda} and
    /// optionally for h. Substituting h = 0 against a negative h-power
    /// is a pole and signals an error.
    pub fn eval_at(&self, subs: &[(Symbol, Rat)], hbar: Option<&Rat>) -> Result<PolyScalar> {
        let mut out = PolyScalar::zero();
        for (e, coeff) in &self.terms {
            let mut r = coeff.clone();
            let mut rem = *e;
            for (sym, val) in subs {
                let pow = e.get(*sym);
                if pow > 0 {
                    let mut v = Rat::one();
                    for _ in 0..pow {
                        v *= val;
                    }
                    r *= v;
                    match sym {
                        Symbol::C => rem.c = 0,
                        Symbol::K => rem.k = 0,
                        Symbol::Gamma => rem.gamma = 0,
                        Symbol::Lambda => rem.lambda = 0,
                    }
                }
            }
            if let Some(h) = hbar {
                if h.is_zero() && e.hbar < 0 {
                    return Err(Error::PoleAtHbarZero { exponent: e.hbar });
                }
                if e.hbar != 0 {
                    let p = e.hbar.unsigned_abs();
                    let mut v = Rat::one();
                    for _ in 0..p {
                        v *= h;
                    }
                    if e.hbar > 0 {
                        r *= v;
                    } else {
                        if v.is_zero() {
                            return Err(Error::PoleAtHbarZero { exponent: e.hbar });
                        }
                        r /= v;
                    }
                }
                rem.hbar = 0;
            }
            out.insert_term(rem, r);
        }
        Ok(out)
    }

    /// Fully numeric evaluation; errors if any symbol survives.
    pub fn eval_rat(&self, subs: &[(Symbol, Rat)], hbar: Option<&Rat>) -> Result<Rat> {
        let v = self.eval_at(subs, hbar)?;
        v.as_rat().ok_or_else(|| {
            Error::pre(format!("evaluation left symbolic content in `{v}`"))
        })
    }
}

impl fmt::Debug for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Graded-lex over (c, k, gamma, lambda), then h-exponent.
        let mut keys: Vec<&Exps> = self.terms.keys().collect();
        keys.sort_by_key(|e| {
            (
                std::cmp::Reverse(e.total_poly_degree()),
                std::cmp::Reverse((e.c, e.k, e.gamma, e.lambda)),
                std::cmp::Reverse(e.hbar),
            )
        });
        for (i, e) in keys.iter().enumerate() {
            let coeff = &self.terms[*e];
            let mut parts: Vec<String> = Vec::new();
            for sym in Symbol::ALL {
                let p = e.get(sym);
                if p == 1 {
                    parts.push(sym.name().to_string());
                } else if p > 1 {
                    parts.push(format!("{}^{}", sym.name(), p));
                }
            }
            if e.hbar == 1 {
                parts.push("h".to_string());
            } else if e.hbar != 0 {
                parts.push(format!("h^{}", e.hbar));
            }
            let abs = coeff.abs();
            let sign_str = if coeff.is_negative() { "-" } else { "+" };
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign_str)?;
            }
            if parts.is_empty() {
                write!(f, "{}", rat_to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", parts.join(" "))?;
            } else {
                write!(f, "{} {}", rat_to_string(&abs), parts.join(" "))?;
            }
        }
        Ok(())
    }
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        for (e, r) in &rhs.terms {
            out.insert_term(*e, r.clone());
        }
        out
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        for (e, r) in &rhs.terms {
            out.insert_term(*e, -r.clone());
        }
        out
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (ea, ra) in &self.terms {
            for (eb, rb) in &rhs.terms {
                out.insert_term(ea.combine(eb), ra * rb);
            }
        }
        out
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar { terms: self.terms.iter().map(|(e, r)| (*e, -r.clone())).collect() }
    }
}

impl AddAssign<&PolyScalar> for PolyScalar {
    fn add_assign(&mut self, rhs: &PolyScalar) {
        for (e, r) in &rhs.terms {
            self.insert_term(*e, r.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn ring_basics() {
        let c = PolyScalar::sym(Symbol::C);
        let k = PolyScalar::sym(Symbol::K);
        let two_c_plus_k = &(&c + &c) + &k;
        let v = two_c_plus_k
            .eval_rat(&[(Symbol::C, rat(1, 2)), (Symbol::K, rat(0, 1))], None)
            .unwrap();
        assert_eq!(v, rat(1, 1));
    }

    #[test]
    fn laurent_cancellation() {
        // (h^-1 c) * h = c
        let lhs = &PolyScalar::sym(Symbol::C).mul_hbar_pow(-1) * &PolyScalar::hbar_pow(1);
        assert_eq!(lhs, PolyScalar::sym(Symbol::C));
    }

    #[test]
    fn pole_at_hbar_zero() {
        let e = PolyScalar::hbar_pow(-1).eval_at(&[], Some(&rat(0, 1)));
        assert!(matches!(e, Err(Error::PoleAtHbarZero { exponent: -1 })));
        // positive powers at h=0 are fine
        let ok = PolyScalar::hbar_pow(2).eval_rat(&[], Some(&rat(0, 1))).unwrap();
        assert_eq!(ok, rat(0, 1));
    }

    #[test]
    fn display_canonical() {
        let p = &(&PolyScalar::sym(Symbol::C) * &PolyScalar::hbar_pow(-1))
            - &PolyScalar::from_rat(rat(3, 4));
        assert_eq!(p.to_string(), "c h^-1 - 3/4");
        assert_eq!(PolyScalar::zero().to_string(), "0");
    }
}
