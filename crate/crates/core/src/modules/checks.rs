//! Module-side verification: the state-mode action c^M_m on induced
//! modules, the Borcherds defect BI(a, b; m, k; n), the zhu-action and
//! a_{-k}b_k comparisons, T-H annihilation, and the constructive
//! rewriting of a_m b_k as a single state mode.

use std::collections::BTreeMap;

use num::Zero;

use crate::envelope::ModeOp;
use crate::scalar::{binom_rat, rat_int, PolyScalar, Rat};
use crate::vertex::{CWord, Hbar, VState, VertexAlgebra};
use crate::{Error, Result};

use super::{InducedModule, MVector};

/// c^M_(N) x for a state c in (n)-indexing, by the same recursion that
/// defines the n-th products: the vacuum contributes at N = -1 and a
/// leading creation letter u_(-1-s) is peeled as (T^(s)u)_(-1).
fn act_state_nidx(
    algebra: &VertexAlgebra,
    module: &InducedModule,
    word: &CWord,
    n_idx: i64,
    x: &MVector,
) -> Result<MVector> {
    if word.is_empty() {
        return Ok(if n_idx == -1 { x.clone() } else { MVector::zero() });
    }
    let head = word[0];
    let s = -1 - head.n;
    let u = head.gen;
    let rest: CWord = word[1..].to_vec();
    let rest_weight = algebra.word_weight(&rest);
    let mut out = MVector::zero();
    // degree bookkeeping: x sits at some depth <= cutoff; inner modes
    // vanish once they push below degree p or the quantum-field bound
    let depth_room = module.depth_cutoff + module.p;
    // first sum: v_(-1-j) (rest_(n+j) x)
    for j in 0..=(rest_weight + depth_room - n_idx).max(-1) {
        let inner = act_state_nidx(algebra, module, &rest, n_idx + j, x)?;
        if inner.is_zero() {
            continue;
        }
        let r = -1 - j;
        let mut factor = binom_rat(&rat_int(r), s);
        if s % 2 == 1 {
            factor = -factor;
        }
        if factor.is_zero() {
            continue;
        }
        let applied = apply_lie_nidx(module, u, r - s, &inner)?;
        out = out.add(&applied.scale(&PolyScalar::from_rat(factor)));
    }
    // second sum: rest_(n-1-j) (v_(j) x)
    for j in 0..=(algebra.gen_weight(u) + s + depth_room).max(-1) {
        let mut factor = binom_rat(&rat_int(j), s);
        if s % 2 == 1 {
            factor = -factor;
        }
        if factor.is_zero() {
            continue;
        }
        let vx = apply_lie_nidx(module, u, j - s, x)?;
        if vx.is_zero() {
            continue;
        }
        let inner = act_state_nidx(algebra, module, &rest, n_idx - 1 - j, &vx)?;
        out = out.add(&inner.scale(&PolyScalar::from_rat(factor)));
    }
    Ok(out)
}

/// A single Lie mode u_(r) on a module vector, converting from
/// (n)-indexing to the weight indexing of the module action.
fn apply_lie_nidx(
    module: &InducedModule,
    gen: usize,
    r: i64,
    x: &MVector,
) -> Result<MVector> {
    let weight = module
        .modes()
        .spec()
        .weight(gen)
        .clone();
    let mode = rat_int(r) - weight + rat_int(1);
    module.act(&ModeOp { mode, gen }, x)
}

/// The weight-indexed state mode a^M_m x.
pub fn act_state_mode(
    algebra: &VertexAlgebra,
    module: &InducedModule,
    a: &VState,
    m: &Rat,
    x: &MVector,
) -> Result<MVector> {
    let mut out = MVector::zero();
    for wt in a.weights(algebra) {
        let comp = a.component(algebra, wt);
        // n-index of the weight-m mode of a weight-wt state
        let n_idx = m + rat_int(wt) - rat_int(1);
        if !n_idx.is_integer() {
            return Err(Error::pre("untwisted modules need integer mode indices"));
        }
        let n_idx = crate::scalar::rat_floor_i64(&n_idx);
        for (w, c) in comp.iter_terms() {
            let ax = act_state_nidx(algebra, module, w, n_idx, x)?;
            out = out.add(&ax.scale(c));
        }
    }
    Ok(out)
}

/// BI(a, b; m, k; n) x: the Borcherds-identity defect evaluated on a
/// module vector. Zero on genuine V(R)-modules.
#[allow(clippy::too_many_arguments)]
pub fn borcherds_defect(
    algebra: &VertexAlgebra,
    module: &InducedModule,
    a: &VState,
    b: &VState,
    m: i64,
    k: i64,
    n: i64,
    x: &MVector,
) -> Result<MVector> {
    let limit = 64;
    let m = rat_int(m);
    let k = rat_int(k);
    let wa = a.max_weight(algebra).unwrap_or(0);
    let wb = b.max_weight(algebra).unwrap_or(0);
    let depth_room = module.depth_cutoff + module.p;
    // first part: sum_j binom(m + wt_a - 1, j) (a_(n+j) b)^M_(m+k)
    let mut out = MVector::zero();
    let mk = &m + &k;
    for j in 0..=(wa + wb - n).max(0) {
        let factor = binom_rat(&(&m + rat_int(wa - 1)), j);
        if factor.is_zero() {
            continue;
        }
        let prod = algebra.nth_product(a, b, n + j, limit)?;
        if prod.is_zero() {
            continue;
        }
        let acted = act_state_mode(algebra, module, &prod, &mk, x)?;
        out = out.add(&acted.scale(&PolyScalar::from_rat(factor)));
    }
    // second part: - sum_j (-1)^j binom(n, j)
    //   [ a_{m+n-j} b_{k+j-n} - (-1)^n b_{k-j} a_{m+j} ] x
    for j in 0..=(2 * depth_room + n.abs() + wa + wb + 4).max(0) {
        let factor = binom_rat(&rat_int(n), j);
        if factor.is_zero() {
            continue;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        // a_{m+n-j} b_{k+j-n} x
        let inner = act_state_mode(algebra, module, b, &(&k + rat_int(j - n)), x)?;
        if !inner.is_zero() {
            let outer = act_state_mode(algebra, module, a, &(&m + rat_int(n - j)), &inner)?;
            out = out.sub(&outer.scale(&PolyScalar::from_rat(&factor * rat_int(sign))));
        }
        // (-1)^n b_{k-j} a_{m+j} x
        let inner = act_state_mode(algebra, module, a, &(&m + rat_int(j)), x)?;
        if !inner.is_zero() {
            let outer = act_state_mode(algebra, module, b, &(&k - rat_int(j)), &inner)?;
            let s2 = if n.rem_euclid(2) == 0 { sign } else { -sign };
            out = out.add(&outer.scale(&PolyScalar::from_rat(&factor * rat_int(s2))));
        }
    }
    Ok(out)
}

/// (a *_p b)^M_0 x versus a^M_0 b^M_0 x on x in the degree-p piece,
/// with h = 1.
pub fn check_zhu_action(
    algebra: &VertexAlgebra,
    module: &InducedModule,
    a: &VState,
    b: &VState,
    p: i64,
    x: &MVector,
) -> Result<MVector> {
    let limit = 64;
    let star = algebra.star_p(a, b, p, &Hbar::Value(rat_int(1)), limit)?;
    let lhs = act_state_mode(algebra, module, &star, &rat_int(0), x)?;
    let b0 = act_state_mode(algebra, module, b, &rat_int(0), x)?;
    let rhs = act_state_mode(algebra, module, a, &rat_int(0), &b0)?;
    Ok(lhs.sub(&rhs))
}

/// Lemma A.1 defect at h = 1, untwisted:
/// a^M_{-k} b^M_k x - sum_{m=0}^{p-k} binom(-p-1-k, m) (a_[-p-1-k-m]b)^M_0 x.
pub fn check_akbk(
    algebra: &VertexAlgebra,
    module: &InducedModule,
    a: &VState,
    b: &VState,
    k: i64,
    p: i64,
    x: &MVector,
) -> Result<MVector> {
    if !(0..=p).contains(&k) {
        return Err(Error::pre("check_akbk requires 0 <= k <= p"));
    }
    let limit = 64;
    let bx = act_state_mode(algebra, module, b, &rat_int(k), x)?;
    let lhs = act_state_mode(algebra, module, a, &rat_int(-k), &bx)?;
    let mut rhs = MVector::zero();
    for m in 0..=(p - k) {
        let factor = binom_rat(&rat_int(-p - 1 - k), m);
        let z = algebra.zhu_mode(a, b, -p - 1 - k - m, p, &Hbar::Value(rat_int(1)), limit)?;
        if z.is_zero() {
            continue;
        }
        let acted = act_state_mode(algebra, module, &z, &rat_int(0), x)?;
        rhs = rhs.add(&acted.scale(&PolyScalar::from_rat(factor)));
    }
    Ok(lhs.sub(&rhs))
}

/// [(T + Delta_a) a]_0 x, which must vanish for every module vector.
pub fn check_th_ann(
    algebra: &VertexAlgebra,
    module: &InducedModule,
    a: &VState,
    x: &MVector,
) -> Result<MVector> {
    let ta = algebra.translate(a);
    let ha = algebra.energy(a);
    let first = act_state_mode(algebra, module, &ta, &rat_int(0), x)?;
    let second = act_state_mode(algebra, module, &ha, &rat_int(0), x)?;
    Ok(first.add(&second))
}

/// The constructive form of the single-mode rewriting: returns c with
/// c^M_{m+k} x = a^M_m (b^M_k x) for every basis vector x within the
/// cutoff, built by the descending induction from the bounds where the
/// actions vanish. The state c need not be homogeneous.
pub fn compose_modes(
    algebra: &VertexAlgebra,
    module: &InducedModule,
    a: &VState,
    b: &VState,
    m: i64,
    k: i64,
) -> Result<VState> {
    let limit = 64;
    let weights = a.weights(algebra);
    if weights.len() != 1 {
        return Err(Error::pre("compose_modes requires homogeneous a"));
    }
    let wa = weights[0];
    // weight-mode bounds beyond which the truncated module is killed
    let m_bar = module.depth_cutoff + 1;
    let k_bar = module.depth_cutoff + 1;
    if k >= k_bar {
        return Ok(VState::zero());
    }
    let t_target = k_bar - k;
    let n_target = m - m_bar;
    // memoized C(n, t) with c-state values
    let mut memo: BTreeMap<(i64, i64), VState> = BTreeMap::new();
    let c = build_c(algebra, module, a, b, wa, m_bar, n_target, t_target, limit, &mut memo)?;
    Ok(c)
}

#[allow(clippy::too_many_arguments)]
fn build_c(
    algebra: &VertexAlgebra,
    module: &InducedModule,
    a: &VState,
    b: &VState,
    wa: i64,
    m_bar: i64,
    n: i64,
    t: i64,
    limit: i64,
    memo: &mut BTreeMap<(i64, i64), VState>,
) -> Result<VState> {
    if let Some(hit) = memo.get(&(n, t)) {
        return Ok(hit.clone());
    }
    let wb = b.max_weight(algebra).unwrap_or(0);
    // base sum: sum_j binom(m_bar + wt_a - 1, j) a_(n+j) b
    let mut acc = VState::zero();
    for j in 0..=(wa + wb - n).max(0) {
        let factor = binom_rat(&rat_int(m_bar + wa - 1), j);
        if factor.is_zero() {
            continue;
        }
        let prod = algebra.nth_product(a, b, n + j, limit)?;
        acc = acc.add(&prod.scale(&PolyScalar::from_rat(factor)));
    }
    // corrections: - sum_{j=1}^{t-1} (-1)^j binom(n, j) C(n-j, t-j)
    for j in 1..t {
        let factor = binom_rat(&rat_int(n), j);
        if factor.is_zero() {
            continue;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let prev = build_c(algebra, module, a, b, wa, m_bar, n - j, t - j, limit, memo)?;
        acc = acc.sub(&prev.scale(&PolyScalar::from_rat(&factor * rat_int(sign))));
    }
    memo.insert((n, t), acc.clone());
    Ok(acc)
}
