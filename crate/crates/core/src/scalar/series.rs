//! Truncated power series in one formal variable xi, with PolyScalar
//! coefficients. The truncation order is explicit and requesting a
//! coefficient past it is a hard error — silent truncation would
//! invalidate exact identity checks.

use super::{binom, ExponentValue, PolyScalar};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    /// coeffs[i] is the xi^i coefficient; valid for i <= order.
    coeffs: Vec<PolyScalar>,
    order: usize,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<PolyScalar>, order: usize) -> Self {
        let mut coeffs = coeffs;
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, PolyScalar::zero());
        TruncatedSeries { coeffs, order }
    }

    pub fn constant(value: PolyScalar, order: usize) -> Self {
        let mut coeffs = vec![PolyScalar::zero(); order + 1];
        coeffs[0] = value;
        TruncatedSeries { coeffs, order }
    }

    /// (1 + xi)^alpha truncated at `order`, alpha rational or symbolic.
    pub fn one_plus_xi_pow(alpha: &ExponentValue, order: usize) -> Self {
        let coeffs = (0..=order as i64).map(|i| binom(alpha, i)).collect();
        TruncatedSeries { coeffs, order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The xi^n coefficient. Negative n is zero; n beyond the
    /// truncation order signals insufficient truncation.
    pub fn coeff_extract(&self, n: i64) -> Result<PolyScalar> {
        if n < 0 {
            return Ok(PolyScalar::zero());
        }
        let n_us = n as usize;
        if n_us > self.order {
            return Err(Error::BeyondTruncation { requested: n, order: self.order });
        }
        Ok(self.coeffs[n_us].clone())
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(other.order);
        let coeffs =
            (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        TruncatedSeries { coeffs, order }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(other.order);
        let mut coeffs = vec![PolyScalar::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=(order - i) {
                let prod = &self.coeffs[i] * &other.coeffs[j];
                coeffs[i + j] += &prod;
            }
        }
        TruncatedSeries { coeffs, order }
    }

    pub fn scale(&self, s: &PolyScalar) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            order: self.order,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    #[test]
    fn geometric_coefficients() {
        // (1+xi)^-1 = 1 - xi + xi^2 - ...
        let s = TruncatedSeries::one_plus_xi_pow(&ExponentValue::int(-1), 4);
        assert_eq!(s.coeff_extract(0).unwrap(), PolyScalar::one());
        assert_eq!(s.coeff_extract(2).unwrap(), PolyScalar::one());
        assert_eq!(s.coeff_extract(3).unwrap(), PolyScalar::from_int(-1));
        assert!(matches!(s.coeff_extract(5), Err(Error::BeyondTruncation { .. })));
    }

    #[test]
    fn alpha_coefficient_of_alpha_minus_one_power() {
        // [xi^alpha] (1+xi)^(alpha-1) at alpha = 3 is 0, at alpha = 0 is 1.
        let s3 = TruncatedSeries::one_plus_xi_pow(&ExponentValue::int(2), 6);
        assert_eq!(s3.coeff_extract(3).unwrap(), PolyScalar::zero());
        let s0 = TruncatedSeries::one_plus_xi_pow(&ExponentValue::int(-1), 6);
        assert_eq!(s0.coeff_extract(0).unwrap(), PolyScalar::one());
    }

    #[test]
    fn extraction_matches_direct_multiplication() {
        // (1+xi)^a (1+xi)^b = (1+xi)^(a+b) coefficientwise
        let a = TruncatedSeries::one_plus_xi_pow(&ExponentValue::int(-3), 8);
        let b = TruncatedSeries::one_plus_xi_pow(&ExponentValue::int(5), 8);
        let ab = TruncatedSeries::one_plus_xi_pow(&ExponentValue::int(2), 8);
        let prod = a.mul(&b);
        for n in 0..=8 {
            assert_eq!(prod.coeff_extract(n).unwrap(), ab.coeff_extract(n).unwrap());
        }
    }

    #[test]
    fn scale_and_add() {
        let a = TruncatedSeries::one_plus_xi_pow(&ExponentValue::int(1), 3);
        let sum = a.add(&a.scale(&PolyScalar::from_int(-1)));
        for n in 0..=3 {
            assert!(sum.coeff_extract(n).unwrap().is_zero());
        }
        let _ = rat_int(0);
    }
}
