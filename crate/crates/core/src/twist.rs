//! Twisted-grading bookkeeping: cosets mod Z, the eps/chi functions,
//! and the level-P quantities P_a, N_a, R_a, xi_a and sigma.
//!
//! Cosets are canonicalized to a representative in [0, 1) at
//! construction; eps is derived from the coset and the weight, never
//! stored. Only rational cosets are supported.

use num::{Signed, Zero};

use crate::scalar::{rat_floor_i64, rat_int, Rat};

/// A coset of Q modulo Z, stored by its representative in [0, 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetZ {
    rep: Rat,
}

impl CosetZ {
    pub fn new(value: Rat) -> Self {
        let floor = value.floor();
        CosetZ { rep: value - floor }
    }

    pub fn zero() -> Self {
        CosetZ { rep: Rat::zero() }
    }

    pub fn representative(&self) -> &Rat {
        &self.rep
    }

    pub fn add(&self, other: &CosetZ) -> CosetZ {
        CosetZ::new(&self.rep + &other.rep)
    }

    pub fn sub(&self, other: &CosetZ) -> CosetZ {
        CosetZ::new(&self.rep - &other.rep)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

/// The grading data of a homogeneous element: its degree coset
/// [gamma_a] and its conformal weight Delta_a.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistData {
    pub degree_coset: CosetZ,
    pub weight: Rat,
}

/// The four level-P quantities attached to one element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LevelQuantities {
    /// Smallest element of [eps_a] strictly greater than P.
    pub p_a: Rat,
    /// Largest integer strictly less than -P - P_a.
    pub n_a: i64,
    /// R_a = P_a - eps_a = floor(P - eps_a) + 1.
    pub r_a: i64,
    /// xi_a = P_a + Delta_a - 1, the largest element of [gamma_a] that
    /// does not exceed P + Delta_a.
    pub xi_a: Rat,
}

impl TwistData {
    pub fn new(degree_coset: CosetZ, weight: Rat) -> Self {
        TwistData { degree_coset, weight }
    }

    /// Degree coset [0]; eps is 0 only when the weight is an integer.
    pub fn untwisted(weight: Rat) -> Self {
        TwistData { degree_coset: CosetZ::zero(), weight }
    }

    /// Degree coset equal to the weight's coset, so that eps = 0.
    pub fn eps_zero(weight: Rat) -> Self {
        TwistData { degree_coset: CosetZ::new(weight.clone()), weight }
    }

    /// eps_a: the largest non-positive element of [gamma_a - Delta_a],
    /// always in (-1, 0].
    pub fn eps(&self) -> Rat {
        let r = CosetZ::new(self.degree_coset.representative() - &self.weight);
        if r.is_zero() {
            Rat::zero()
        } else {
            r.representative() - rat_int(1)
        }
    }

    /// gamma_a = Delta_a + eps_a, the largest element of [gamma_a] not
    /// exceeding Delta_a.
    pub fn gamma(&self) -> Rat {
        &self.weight + &self.eps()
    }

    pub fn level_quantities(&self, level: &Rat) -> LevelQuantities {
        assert!(!level.is_negative(), "level P must be >= 0");
        let eps = self.eps();
        // smallest element of [eps] strictly greater than P
        let m = rat_floor_i64(&(level - &eps)) + 1;
        let p_a = &eps + rat_int(m);
        let n_a = -rat_floor_i64(&(level + &p_a)) - 1;
        let r_a = rat_floor_i64(&(level - &eps)) + 1;
        let xi_a = &p_a + &self.weight - rat_int(1);
        LevelQuantities { p_a, n_a, r_a, xi_a }
    }

    /// The grading data of a_(n) b.
    pub fn product_grading(&self, other: &TwistData, n: i64) -> TwistData {
        TwistData {
            degree_coset: self.degree_coset.add(&other.degree_coset),
            weight: &self.weight + &other.weight - rat_int(n + 1),
        }
    }
}

/// chi(a, b) = 1 iff eps_a + eps_b <= -1.
pub fn chi(a: &TwistData, b: &TwistData) -> i64 {
    if a.eps() + b.eps() <= rat_int(-1) {
        1
    } else {
        0
    }
}

/// sigma(a, b) = xi_{a_(-1)b} + floor(P) - xi_a - xi_b.
pub fn sigma(a: &TwistData, b: &TwistData, level: &Rat) -> i64 {
    let prod = a.product_grading(b, -1);
    let xi_prod = prod.level_quantities(level).xi_a;
    let xi_a = a.level_quantities(level).xi_a;
    let xi_b = b.level_quantities(level).xi_a;
    let p = rat_floor_i64(level);
    let s = xi_prod + rat_int(p) - xi_a - xi_b;
    assert!(s.is_integer(), "sigma must be an integer");
    rat_floor_i64(&s)
}

/// The default test grid: coset groups (1/2)Z, (1/3)Z, (1/4)Z with a
/// spread of weights, levels P in {0, 1/4, 1/3, 1/2, 1, 3/2, 2}.
pub fn default_grid() -> (Vec<TwistData>, Vec<Rat>) {
    use crate::scalar::rat;
    let mut data = Vec::new();
    for denom in [2i64, 3, 4] {
        for num in 0..denom {
            for w in [rat_int(0), rat(1, 4), rat(1, 3), rat(1, 2), rat_int(1), rat(3, 2), rat_int(2)] {
                data.push(TwistData::new(CosetZ::new(rat(num, denom)), w));
            }
        }
    }
    let levels =
        vec![rat_int(0), rat(1, 4), rat(1, 3), rat(1, 2), rat_int(1), rat(3, 2), rat_int(2)];
    (data, levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn eps_window() {
        // untwisted
        assert_eq!(TwistData::untwisted(rat_int(2)).eps(), rat_int(0));
        // coset [1/2], weight 0 -> eps = -1/2
        let t = TwistData::new(CosetZ::new(rat(1, 2)), rat_int(0));
        assert_eq!(t.eps(), rat(-1, 2));
        // coset [1/3], weight 1/3 -> eps coset is [0]
        let t = TwistData::new(CosetZ::new(rat(1, 3)), rat(1, 3));
        assert_eq!(t.eps(), rat_int(0));
        let (grid, _) = default_grid();
        for t in grid {
            let e = t.eps();
            assert!(e > rat_int(-1) && e <= rat_int(0), "eps out of window: {e}");
        }
    }

    #[test]
    fn chi_values() {
        let untw = TwistData::untwisted(rat_int(2));
        assert_eq!(chi(&untw, &untw), 0);
        let half = TwistData::new(CosetZ::new(rat(1, 2)), rat_int(0));
        assert_eq!(chi(&half, &half), 1);
        let quarter = TwistData::new(CosetZ::new(rat(3, 4)), rat_int(0));
        // eps = -1/4 and -1/2: sum -3/4 > -1
        assert_eq!(chi(&quarter, &half), 0);
    }

    #[test]
    fn remark_b1_values() {
        // eps_a = -1/2: P = 0 gives P_a = 1/2, N_a = -1; P = 1/2 gives
        // P_a = 3/2, N_a = -3. The index-level gap behind "J_{1/2} is
        // strictly smaller than J_0".
        let a = TwistData::new(CosetZ::new(rat(1, 2)), rat_int(0));
        let q0 = a.level_quantities(&rat_int(0));
        assert_eq!(q0.p_a, rat(1, 2));
        assert_eq!(q0.n_a, -1);
        let qh = a.level_quantities(&rat(1, 2));
        assert_eq!(qh.p_a, rat(3, 2));
        assert_eq!(qh.n_a, -3);
        // eps_a = 0 rows of the same remark
        let u = TwistData::untwisted(rat_int(2));
        assert_eq!(u.level_quantities(&rat_int(0)).n_a, -2);
        assert_eq!(u.level_quantities(&rat(1, 2)).n_a, -2);
    }

    #[test]
    fn eps_zero_closed_forms() {
        // P_a = floor(P)+1, xi_a = floor(P)+Delta, N_a = -2 floor(P) - 2
        for w in [rat_int(0), rat(1, 2), rat_int(2)] {
            let a = TwistData::eps_zero(w.clone());
            for p in [rat_int(0), rat(1, 3), rat_int(1), rat(3, 2), rat_int(2)] {
                let q = a.level_quantities(&p);
                let fl = rat_floor_i64(&p);
                assert_eq!(q.p_a, rat_int(fl + 1));
                assert_eq!(q.xi_a, rat_int(fl) + &w);
                assert_eq!(q.n_a, -2 * fl - 2);
                assert_eq!(q.r_a, fl + 1);
            }
        }
    }

    #[test]
    fn lemma_b2_eps_zero_sigma_zero() {
        let (grid, levels) = default_grid();
        for a in grid.iter().filter(|t| t.eps() == rat_int(0)) {
            for b in &grid {
                for p in &levels {
                    assert_eq!(sigma(a, b, p), 0, "a={a:?} b={b:?} P={p}");
                }
            }
        }
    }

    #[test]
    fn lemma_b3_on_grid() {
        let (grid, levels) = default_grid();
        for a in &grid {
            for b in &grid {
                // B.3 applies when [eps_a] + [eps_b] = [0]
                if !CosetZ::new(a.eps() + b.eps()).is_zero() {
                    continue;
                }
                for p in &levels {
                    let n_a = a.level_quantities(p).n_a;
                    let s = sigma(a, b, p);
                    assert_eq!(
                        n_a,
                        -2 * rat_floor_i64(p) - 2 + s,
                        "B.3 failed: a={a:?} b={b:?} P={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn periodicity_in_level() {
        let (grid, levels) = default_grid();
        for a in &grid {
            for p in &levels {
                let q = a.level_quantities(p);
                let q1 = a.level_quantities(&(p + rat_int(1)));
                assert_eq!(q1.p_a, &q.p_a + rat_int(1));
                assert_eq!(q1.n_a, q.n_a - 2);
            }
        }
    }

    #[test]
    fn eps_additivity_in_products() {
        let (grid, _) = default_grid();
        for a in &grid {
            for b in &grid {
                for n in -4..=4 {
                    let prod = a.product_grading(b, n);
                    let expect = a.eps() + b.eps() + rat_int(chi(a, b));
                    assert_eq!(prod.eps(), expect);
                }
            }
        }
    }

    #[test]
    fn vacuum_like_product() {
        // weight bookkeeping: untwisted weight-2 pair at n = 1 has weight 2
        let w2 = TwistData::untwisted(rat_int(2));
        let p = w2.product_grading(&w2, 1);
        assert_eq!(p.weight, rat_int(2));
        assert_eq!(p.eps(), rat_int(0));
        // half-twisted pair at n = -1 lands untwisted
        let h = TwistData::new(CosetZ::new(rat(1, 2)), rat_int(0));
        assert_eq!(h.product_grading(&h, -1).eps(), rat_int(0));
    }
}
