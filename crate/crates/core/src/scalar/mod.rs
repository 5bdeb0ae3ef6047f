//! Exact arithmetic foundation: arbitrary-precision rationals, the
//! polynomial scalar ring Q[c,k,gamma,lambda][h,h^-1], generalized
//! binomial coefficients and truncated series.

mod binom;
mod poly;
mod series;

pub use binom::{binom, binom_int, binom_rat, ExponentValue};
pub use poly::{Exps, PolyScalar, Symbol};
pub use series::TruncatedSeries;

use num::BigInt;

/// Arbitrary-precision rational. Always stored reduced with a positive
/// denominator (maintained by `num-rational`).
pub type Rat = num::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Parse an exact rational from `a`, `-a`, or `a/b` decimal strings.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    let t = s.trim();
    let parse_int = |x: &str| -> crate::Result<BigInt> {
        x.parse::<BigInt>()
            .map_err(|_| crate::Error::Parse { column: 0, message: format!("invalid integer `{x}`") })
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d.trim())?;
            if den == BigInt::from(0) {
                return Err(crate::Error::Parse { column: 0, message: "zero denominator".into() });
            }
            Ok(Rat::new(parse_int(n.trim())?, den))
        }
        None => Ok(Rat::from(parse_int(t)?)),
    }
}

/// Parse a PolyScalar expression: terms joined by `+`/`-`, each an
/// optional rational followed by symbol factors `c k^2 gamma lambda`
/// and Laurent powers of `h` (e.g. `1/2 c h^-1 + 3`).
pub fn parse_poly(s: &str) -> crate::Result<PolyScalar> {
    let mut out = PolyScalar::zero();
    let text = s.trim();
    if text.is_empty() {
        return Err(crate::Error::Parse { column: 0, message: "empty scalar".into() });
    }
    // split into signed chunks at top level
    let mut chunks: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    for ch in text.chars() {
        if ch == '+' || ch == '-' {
            if !cur.trim().is_empty() {
                chunks.push((sign, cur.trim().to_string()));
            }
            sign = if ch == '-' { -1 } else { 1 };
            cur = String::new();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        chunks.push((sign, cur.trim().to_string()));
    }
    for (sign, chunk) in chunks {
        let mut coeff = Rat::from(BigInt::from(sign));
        let mut term = PolyScalar::one();
        for factor in chunk.split_whitespace() {
            let (base, pow) = match factor.split_once('^') {
                Some((b, p)) => {
                    let pow: i32 = p.parse().map_err(|_| crate::Error::Parse {
                        column: 0,
                        message: format!("invalid power `{p}`"),
                    })?;
                    (b, pow)
                }
                None => (factor, 1),
            };
            if base == "h" {
                term = term.mul_hbar_pow(pow);
            } else if let Some(sym) = Symbol::from_name(base) {
                if pow < 0 {
                    return Err(crate::Error::Parse {
                        column: 0,
                        message: format!("negative power on `{base}`"),
                    });
                }
                term = &term * &PolyScalar::sym(sym).pow(pow as u32);
            } else {
                coeff *= parse_rat(base)?;
            }
        }
        out += &term.scale(&coeff);
    }
    Ok(out)
}

/// Render a rational as `n` or `n/d`.
pub fn rat_to_string(r: &Rat) -> String {
    use num::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor of a rational as a BigInt-free i64 (values in this crate stay tiny).
pub fn rat_floor_i64(r: &Rat) -> i64 {
    use num::ToPrimitive;
    r.floor().numer().to_i64().expect("floor fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(rat_to_string(&parse_rat("-5/7").unwrap()), "-5/7");
        assert_eq!(rat_to_string(&parse_rat("3").unwrap()), "3");
        assert_eq!(rat_to_string(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn floor() {
        assert_eq!(rat_floor_i64(&rat(1, 2)), 0);
        assert_eq!(rat_floor_i64(&rat(-1, 2)), -1);
        assert_eq!(rat_floor_i64(&rat(3, 1)), 3);
        assert_eq!(rat_floor_i64(&rat(-7, 2)), -4);
    }

    #[test]
    fn poly_expressions() {
        let p = parse_poly("1/2 c h^-1 + 3 - lambda^2").unwrap();
        let expect = &(&PolyScalar::sym(Symbol::C).scale(&rat(1, 2)).mul_hbar_pow(-1)
            + &PolyScalar::from_int(3))
            - &PolyScalar::sym(Symbol::Lambda).pow(2);
        assert_eq!(p, expect);
        assert_eq!(parse_poly("lambda").unwrap(), PolyScalar::sym(Symbol::Lambda));
        assert_eq!(parse_poly("-2/3").unwrap(), PolyScalar::from_rat(rat(-2, 3)));
        assert!(parse_poly("").is_err());
        assert!(parse_poly("q").is_err());
    }
}
