//! Generalized binomial coefficients with rational or symbolic tops.

use num::{One, Zero};

use super::{rat_int, PolyScalar, Rat, Symbol};

/// A value usable as the top of a generalized binomial: an exact
/// rational, or an affine expression `coeff * symbol + shift` of degree
/// one in a single symbol.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExponentValue {
    Rat(Rat),
    Affine { coeff: Rat, symbol: Symbol, shift: Rat },
}

impl ExponentValue {
    pub fn int(n: i64) -> Self {
        ExponentValue::Rat(rat_int(n))
    }

    pub fn symbol(s: Symbol) -> Self {
        ExponentValue::Affine { coeff: Rat::one(), symbol: s, shift: Rat::zero() }
    }

    /// `symbol + shift`
    pub fn symbol_plus(s: Symbol, shift: Rat) -> Self {
        ExponentValue::Affine { coeff: Rat::one(), symbol: s, shift }
    }

    pub fn shifted(&self, by: &Rat) -> Self {
        match self {
            ExponentValue::Rat(r) => ExponentValue::Rat(r + by),
            ExponentValue::Affine { coeff, symbol, shift } => ExponentValue::Affine {
                coeff: coeff.clone(),
                symbol: *symbol,
                shift: shift + by,
            },
        }
    }

    fn to_poly(&self) -> PolyScalar {
        match self {
            ExponentValue::Rat(r) => PolyScalar::from_rat(r.clone()),
            ExponentValue::Affine { coeff, symbol, shift } => {
                &PolyScalar::sym(*symbol).scale(coeff) + &PolyScalar::from_rat(shift.clone())
            }
        }
    }
}

/// binom(alpha, j) = alpha (alpha-1) ... (alpha-j+1) / j! for j >= 0,
/// and 0 for j < 0. A symbolic top yields the corresponding polynomial.
pub fn binom(alpha: &ExponentValue, j: i64) -> PolyScalar {
    if j < 0 {
        return PolyScalar::zero();
    }
    match alpha {
        ExponentValue::Rat(r) => PolyScalar::from_rat(binom_rat(r, j)),
        _ => {
            let top = alpha.to_poly();
            let mut num = PolyScalar::one();
            for i in 0..j {
                num = &num * &(&top - &PolyScalar::from_int(i));
            }
            num.scale(&(Rat::one() / factorial(j)))
        }
    }
}

/// binom with a rational top, returned as a rational.
pub fn binom_rat(alpha: &Rat, j: i64) -> Rat {
    if j < 0 {
        return Rat::zero();
    }
    let mut num = Rat::one();
    let mut top = alpha.clone();
    for _ in 0..j {
        num *= &top;
        top -= Rat::one();
    }
    num / factorial(j)
}

/// binom with an integer top.
pub fn binom_int(n: i64, j: i64) -> Rat {
    binom_rat(&rat_int(n), j)
}

fn factorial(j: i64) -> Rat {
    let mut f = Rat::one();
    for i in 2..=j {
        f *= rat_int(i);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn integer_tops() {
        assert_eq!(binom_int(-1, 2), rat_int(1)); // (-1)(-2)/2
        assert_eq!(binom_int(-2, 1), rat_int(-2));
        assert_eq!(binom_int(4, 2), rat_int(6));
        assert_eq!(binom_int(3, 5), rat_int(0)); // 0 <= m < j
        assert_eq!(binom_int(5, -1), rat_int(0));
    }

    #[test]
    fn rational_top() {
        // binom(1/2, 2) = (1/2)(-1/2)/2 = -1/8
        assert_eq!(binom_rat(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn symbolic_top() {
        let g = ExponentValue::symbol(Symbol::Gamma);
        assert!(binom(&g, 0).is_one());
        // binom(gamma, 2) = (gamma^2 - gamma)/2
        let expect = &(&PolyScalar::sym(Symbol::Gamma) * &PolyScalar::sym(Symbol::Gamma))
            - &PolyScalar::sym(Symbol::Gamma);
        assert_eq!(binom(&g, 2), expect.scale(&rat(1, 2)));
    }

    #[test]
    fn pascal_symbolic() {
        // binom(a, j) = binom(a-1, j) + binom(a-1, j-1)
        let a = ExponentValue::symbol_plus(Symbol::Gamma, rat(3, 2));
        let am1 = a.shifted(&rat(-1, 1));
        for j in 0..=20 {
            let lhs = binom(&a, j);
            let rhs = &binom(&am1, j) + &binom(&am1, j - 1);
            assert_eq!(lhs, rhs, "pascal failed at j={j}");
        }
    }
}
