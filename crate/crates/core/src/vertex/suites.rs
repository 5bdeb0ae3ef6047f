//! The identity suites of the level-p calculus, run over all
//! homogeneous basis states within the truncation policy.
//!
//! Explicit identities (unit, tind, modn, expbor, brakderiv) are
//! checked with h symbolic. Mod-J identities (skew, assoc, leftideal,
//! phi) specialize h, build the J-span at the weight actually reached
//! by the defects, and decide membership by exact row reduction.

use num::Zero;

use crate::par::par_map;
use crate::report::CaseRecord;
use crate::scalar::{binom_rat, rat_int, rat_to_string, PolyScalar, Rat};
use crate::{Error, Result};

use super::jspan::{j_span, t_reduce_symbolic};
use super::{CWord, Hbar, TruncationPolicy, VState, VertexAlgebra};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteId {
    Unit,
    Tind,
    Modn,
    Expbor,
    Skew,
    Brakderiv,
    Assoc,
    Leftideal,
    Phi,
}

impl SuiteId {
    pub const ALL: [SuiteId; 9] = [
        SuiteId::Unit,
        SuiteId::Tind,
        SuiteId::Modn,
        SuiteId::Expbor,
        SuiteId::Skew,
        SuiteId::Brakderiv,
        SuiteId::Assoc,
        SuiteId::Leftideal,
        SuiteId::Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Unit => "unit",
            SuiteId::Tind => "tind",
            SuiteId::Modn => "modn",
            SuiteId::Expbor => "expbor",
            SuiteId::Skew => "skew",
            SuiteId::Brakderiv => "brakderiv",
            SuiteId::Assoc => "assoc",
            SuiteId::Leftideal => "leftideal",
            SuiteId::Phi => "phi",
        }
    }

    pub fn from_name(s: &str) -> Option<SuiteId> {
        SuiteId::ALL.iter().copied().find(|id| id.name() == s)
    }

    /// Suites that keep h symbolic.
    pub fn is_symbolic(self) -> bool {
        matches!(
            self,
            SuiteId::Unit | SuiteId::Tind | SuiteId::Modn | SuiteId::Expbor | SuiteId::Brakderiv
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub policy: TruncationPolicy,
    /// h specializations for the mod-J suites.
    pub hbar_values: Vec<Rat>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            policy: TruncationPolicy::default(),
            hbar_values: vec![rat_int(1), rat_int(2)],
        }
    }
}

/// Run one suite for every p in the list; returns per-case records in a
/// deterministic order.
pub fn verify_suite(
    algebra: &VertexAlgebra,
    suite: SuiteId,
    p_list: &[i64],
    config: &SuiteConfig,
) -> Result<Vec<CaseRecord>> {
    let mut out = Vec::new();
    for &p in p_list {
        if p < 0 {
            return Err(Error::pre("p must be >= 0"));
        }
        let records = match suite {
            SuiteId::Unit => unit_suite(algebra, p, config)?,
            SuiteId::Tind => tind_suite(algebra, p, config)?,
            SuiteId::Modn => modn_suite(algebra, p, config)?,
            SuiteId::Expbor => expbor_suite(algebra, p, config)?,
            SuiteId::Brakderiv => brakderiv_suite(algebra, p, config)?,
            SuiteId::Skew => skew_suite(algebra, p, config)?,
            SuiteId::Assoc => assoc_suite(algebra, p, config)?,
            SuiteId::Leftideal => leftideal_suite(algebra, p, config)?,
            SuiteId::Phi => phi_suite(algebra, p, config)?,
        };
        out.extend(records);
    }
    Ok(out)
}

fn word_state(w: &CWord) -> VState {
    VState::from_word(w.clone(), PolyScalar::one())
}

fn base_record(algebra: &VertexAlgebra, suite: SuiteId, p: i64) -> CaseRecord {
    CaseRecord::new(format!("vertex/{}", suite.name()))
        .input("algebra", &algebra.spec().name)
        .input("p", p)
}

fn defect_note(algebra: &VertexAlgebra, d: &VState) -> String {
    let s = algebra.display_state(d);
    if s.len() > 240 {
        format!("{}... ({} terms)", &s[..240], d.num_terms())
    } else {
        s
    }
}

/// Ordered pairs of basis words with total weight within the cutoff.
fn basis_pairs(algebra: &VertexAlgebra, cutoff: i64) -> Vec<(CWord, CWord)> {
    let basis = algebra.basis_words(cutoff);
    let mut out = Vec::new();
    for wa in &basis {
        for wb in &basis {
            if algebra.word_weight(wa) + algebra.word_weight(wb) <= cutoff {
                out.push((wa.clone(), wb.clone()));
            }
        }
    }
    out
}

fn basis_triples(algebra: &VertexAlgebra, cutoff: i64) -> Vec<(CWord, CWord, CWord)> {
    let basis = algebra.basis_words(cutoff);
    let mut out = Vec::new();
    for wa in &basis {
        let a = algebra.word_weight(wa);
        for wb in &basis {
            let ab = a + algebra.word_weight(wb);
            if ab > cutoff {
                continue;
            }
            for wc in &basis {
                if ab + algebra.word_weight(wc) <= cutoff {
                    out.push((wa.clone(), wb.clone(), wc.clone()));
                }
            }
        }
    }
    out
}

// ---- unit: vac *_p a = a exactly; a *_p vac = a mod J (symbolic h) ----

fn unit_suite(algebra: &VertexAlgebra, p: i64, config: &SuiteConfig) -> Result<Vec<CaseRecord>> {
    let cutoff = config.policy.weight_cutoff;
    let limit = cutoff + 2 * p + 2;
    let cases: Vec<CWord> = algebra.basis_words(cutoff);
    let records = par_map(cases, |w| -> Result<Vec<CaseRecord>> {
        let a = word_state(&w);
        let mut recs = Vec::new();
        // vac *_p a = a, exactly (not only mod J)
        let left = algebra.star_p(&VState::vacuum(), &a, p, &Hbar::Symbolic, limit)?;
        let defect = left.sub(&a);
        let rec = base_record(algebra, SuiteId::Unit, p)
            .input("side", "vac*a")
            .input("a", algebra.display_state(&a));
        recs.push(if defect.is_zero() {
            rec.pass()
        } else {
            rec.fail(defect_note(algebra, &defect))
        });
        // a *_p vac = a mod the (T + hH)-part of J, h symbolic
        let right = algebra.star_p(&a, &VState::vacuum(), p, &Hbar::Symbolic, limit)?;
        let defect = right.sub(&a);
        let residual = t_reduce_symbolic(algebra, &defect)?;
        let rec = base_record(algebra, SuiteId::Unit, p)
            .input("side", "a*vac")
            .input("a", algebra.display_state(&a));
        recs.push(if residual.is_zero() {
            rec.pass()
        } else {
            rec.fail(defect_note(algebra, &residual))
        });
        Ok(recs)
    });
    flatten(records)
}

// ---- tind: (Ta)_[n]b + h(gamma_a+p+n+1) a_[n]b = -n a_[n-1]b ----

fn tind_suite(algebra: &VertexAlgebra, p: i64, config: &SuiteConfig) -> Result<Vec<CaseRecord>> {
    let cutoff = config.policy.weight_cutoff;
    let limit = cutoff + 8 + 2 * p;
    let mut cases = Vec::new();
    for (wa, wb) in basis_pairs(algebra, cutoff) {
        for n in -5..=3i64 {
            cases.push((wa.clone(), wb.clone(), n));
        }
    }
    let records = par_map(cases, |(wa, wb, n)| -> Result<CaseRecord> {
        let a = word_state(&wa);
        let b = word_state(&wb);
        let gamma = rat_int(algebra.word_weight(&wa));
        let ta = algebra.translate(&a);
        let lhs1 = algebra.zhu_mode(&ta, &b, n, p, &Hbar::Symbolic, limit)?;
        let factor = PolyScalar::from_rat(&gamma + rat_int(p + n + 1));
        let lhs2 = algebra
            .zhu_mode(&a, &b, n, p, &Hbar::Symbolic, limit)?
            .scale(&(&PolyScalar::hbar_pow(1) * &factor));
        let rhs = algebra
            .zhu_mode(&a, &b, n - 1, p, &Hbar::Symbolic, limit)?
            .scale(&PolyScalar::from_int(-n));
        let defect = lhs1.add(&lhs2).sub(&rhs);
        let rec = base_record(algebra, SuiteId::Tind, p)
            .input("a", algebra.display_state(&a))
            .input("b", algebra.display_state(&b))
            .input("n", n);
        Ok(if defect.is_zero() { rec.pass() } else { rec.fail(defect_note(algebra, &defect)) })
    });
    collect(records)
}

// ---- modn: (1+hw)^(n+p+1) Z(a_[n]b, w) = Z(a,w)_(n) Z(b,w) ----

fn modn_suite(algebra: &VertexAlgebra, p: i64, config: &SuiteConfig) -> Result<Vec<CaseRecord>> {
    let cutoff = config.policy.weight_cutoff;
    let order = config.policy.series_order;
    let test_cut = cutoff.min(4);
    let limit = 2 * cutoff + 4 * p + 2 * order + 8;
    let tests: Vec<CWord> = algebra.basis_words(test_cut);
    let mut cases = Vec::new();
    for (wa, wb) in basis_pairs(algebra, cutoff) {
        for n in -3..=2i64 {
            cases.push((wa.clone(), wb.clone(), n));
        }
    }
    let records = par_map(cases, |(wa, wb, n)| -> Result<CaseRecord> {
        let a = word_state(&wa);
        let b = word_state(&wb);
        let wta = algebra.word_weight(&wa);
        let wtb = algebra.word_weight(&wb);
        // z = a_[n]b; chi = 0 untwisted
        let z = algebra.zhu_mode(&a, &b, n, p, &Hbar::Symbolic, limit)?;
        let exp = n + p + 1;
        let mut rec = base_record(algebra, SuiteId::Modn, p)
            .input("a", algebra.display_state(&a))
            .input("b", algebra.display_state(&b))
            .input("n", n);
        for wc in &tests {
            let c = word_state(wc);
            let wtc = algebra.word_weight(wc);
            for k in -order..=order {
                // LHS: sum_i binom(n+p+1, i) h^i (a_[n]b)_[k+i] c
                let mut lhs = VState::zero();
                let i_cap = (wta + wtb - n - 1) + wtc - k;
                let mut i = 0i64;
                while i <= i_cap.max(0) {
                    let factor = binom_rat(&rat_int(exp), i);
                    if !factor.is_zero() {
                        let zi = algebra.zhu_mode(&z, &c, k + i, p, &Hbar::Symbolic, limit)?;
                        lhs = lhs.add(
                            &zi.scale(&PolyScalar::hbar_pow(i as i32).scale(&factor)),
                        );
                    }
                    i += 1;
                }
                // RHS: sum_j (-1)^j binom(n,j)[a_[n-j](b_[k+j]c)
                //        - (-1)^n b_[n+k-j](a_[j]c)]
                let mut rhs = VState::zero();
                let j_cap1 = wtb + wtc - 1 - k;
                for j in 0..=j_cap1.max(0) {
                    let factor = binom_rat(&rat_int(n), j);
                    if factor.is_zero() {
                        continue;
                    }
                    let inner = algebra.zhu_mode(&b, &c, k + j, p, &Hbar::Symbolic, limit)?;
                    if inner.is_zero() {
                        continue;
                    }
                    let outer = algebra.zhu_mode(&a, &inner, n - j, p, &Hbar::Symbolic, limit)?;
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    rhs = rhs.add(&outer.scale(&PolyScalar::from_rat(factor).scale(&rat_int(sign))));
                }
                let j_cap2 = wta + wtc - 1;
                for j in 0..=j_cap2.max(0) {
                    let factor = binom_rat(&rat_int(n), j);
                    if factor.is_zero() {
                        continue;
                    }
                    let inner = algebra.zhu_mode(&a, &c, j, p, &Hbar::Symbolic, limit)?;
                    if inner.is_zero() {
                        continue;
                    }
                    let outer =
                        algebra.zhu_mode(&b, &inner, n + k - j, p, &Hbar::Symbolic, limit)?;
                    // coefficient -(-1)^(j+n)
                    let sign = if (j + n).rem_euclid(2) == 0 { -1 } else { 1 };
                    rhs = rhs.add(&outer.scale(&PolyScalar::from_rat(factor).scale(&rat_int(sign))));
                }
                let defect = lhs.sub(&rhs);
                if !defect.is_zero() {
                    rec = rec
                        .input("c", algebra.display_state(&c))
                        .input("k", k)
                        .fail(defect_note(algebra, &defect));
                    return Ok(rec);
                }
            }
        }
        Ok(rec.pass())
    });
    collect(records)
}

// ---- expbor: (a_[n]b)_[k]c expansion ----

fn expbor_suite(algebra: &VertexAlgebra, p: i64, config: &SuiteConfig) -> Result<Vec<CaseRecord>> {
    let cutoff = config.policy.weight_cutoff;
    let limit = 2 * cutoff + 6 * p + 16;
    let mut cases = Vec::new();
    for (wa, wb, wc) in basis_triples(algebra, cutoff) {
        for n in -3..=1i64 {
            for k in -3..=1i64 {
                cases.push((wa.clone(), wb.clone(), wc.clone(), n, k));
            }
        }
    }
    let records = par_map(cases, |(wa, wb, wc, n, k)| -> Result<CaseRecord> {
        let a = word_state(&wa);
        let b = word_state(&wb);
        let c = word_state(&wc);
        let (wta, wtb, wtc) =
            (algebra.word_weight(&wa), algebra.word_weight(&wb), algebra.word_weight(&wc));
        let z = algebra.zhu_mode(&a, &b, n, p, &Hbar::Symbolic, limit)?;
        let lhs = algebra.zhu_mode(&z, &c, k, p, &Hbar::Symbolic, limit)?;
        // RHS: sum_{i,j} (-1)^j h^i binom(n,j) binom(-n-p-1, i)
        //   [ a_[n-j](b_[i+j+k]c) - (-1)^n b_[i-j+n+k](a_[j]c) ]
        let top = -n - p - 1;
        let mut rhs = VState::zero();
        // both term families vanish beyond this
        let j_cap1 = wta + wtb + wtc + n.abs() + k.abs() + 8;
        for j in 0..=j_cap1 {
            let bn = binom_rat(&rat_int(n), j);
            if bn.is_zero() {
                continue;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            // first family
            let i_cap1 = wtb + wtc - 1 - j - k;
            for i in 0..=i_cap1.max(-1) {
                let bi = binom_rat(&rat_int(top), i);
                if bi.is_zero() {
                    continue;
                }
                let inner = algebra.zhu_mode(&b, &c, i + j + k, p, &Hbar::Symbolic, limit)?;
                if inner.is_zero() {
                    continue;
                }
                let outer = algebra.zhu_mode(&a, &inner, n - j, p, &Hbar::Symbolic, limit)?;
                let coeff = PolyScalar::hbar_pow(i as i32).scale(&(&bn * &bi * rat_int(sign)));
                rhs = rhs.add(&outer.scale(&coeff));
            }
            // second family
            let j2_ok = j <= wta + wtc - 1;
            if j2_ok {
                let inner = algebra.zhu_mode(&a, &c, j, p, &Hbar::Symbolic, limit)?;
                if !inner.is_zero() {
                    let i_cap2 = wtb + (wta + wtc - j - 1) - 1 - (n + k - j);
                    for i in 0..=i_cap2.max(-1) {
                        let bi = binom_rat(&rat_int(top), i);
                        if bi.is_zero() {
                            continue;
                        }
                        let outer = algebra
                            .zhu_mode(&b, &inner, i - j + n + k, p, &Hbar::Symbolic, limit)?;
                        if outer.is_zero() {
                            continue;
                        }
                        let s2 = if n % 2 == 0 { -sign } else { sign };
                        let coeff =
                            PolyScalar::hbar_pow(i as i32).scale(&(&bn * &bi * rat_int(s2)));
                        rhs = rhs.add(&outer.scale(&coeff));
                    }
                }
            }
        }
        let defect = lhs.sub(&rhs);
        let rec = base_record(algebra, SuiteId::Expbor, p)
            .input("a", algebra.display_state(&a))
            .input("b", algebra.display_state(&b))
            .input("c", algebra.display_state(&c))
            .input("n", n)
            .input("k", k);
        Ok(if defect.is_zero() { rec.pass() } else { rec.fail(defect_note(algebra, &defect)) })
    });
    collect(records)
}

// ---- brakderiv: [a, b_[n]c]_h = ([a,b]_h)_[n]c + b_[n]([a,c]_h) ----

fn brakderiv_suite(
    algebra: &VertexAlgebra,
    p: i64,
    config: &SuiteConfig,
) -> Result<Vec<CaseRecord>> {
    let cutoff = config.policy.weight_cutoff;
    let limit = 2 * cutoff + 2 * p + 12;
    let mut cases = Vec::new();
    for (wa, wb, wc) in basis_triples(algebra, cutoff) {
        for n in -3..=1i64 {
            cases.push((wa.clone(), wb.clone(), wc.clone(), n));
        }
    }
    let records = par_map(cases, |(wa, wb, wc, n)| -> Result<CaseRecord> {
        let a = word_state(&wa);
        let b = word_state(&wb);
        let c = word_state(&wc);
        let bn_c = algebra.zhu_mode(&b, &c, n, p, &Hbar::Symbolic, limit)?;
        let lhs = algebra.hbar_bracket(&a, &bn_c, &Hbar::Symbolic, limit)?;
        let ab = algebra.hbar_bracket(&a, &b, &Hbar::Symbolic, limit)?;
        let rhs1 = algebra.zhu_mode(&ab, &c, n, p, &Hbar::Symbolic, limit)?;
        let ac = algebra.hbar_bracket(&a, &c, &Hbar::Symbolic, limit)?;
        let rhs2 = algebra.zhu_mode(&b, &ac, n, p, &Hbar::Symbolic, limit)?;
        let defect = lhs.sub(&rhs1).sub(&rhs2);
        let rec = base_record(algebra, SuiteId::Brakderiv, p)
            .input("a", algebra.display_state(&a))
            .input("b", algebra.display_state(&b))
            .input("c", algebra.display_state(&c))
            .input("n", n);
        Ok(if defect.is_zero() { rec.pass() } else { rec.fail(defect_note(algebra, &defect)) })
    });
    collect(records)
}

// ---- skew: a *_p b - b *_p a = h [a, b]_h mod J ----

fn skew_suite(algebra: &VertexAlgebra, p: i64, config: &SuiteConfig) -> Result<Vec<CaseRecord>> {
    let cutoff = config.policy.weight_cutoff;
    let limit = cutoff + 2 * p + 2;
    let mut out = Vec::new();
    for hv in &config.hbar_values {
        let hbar = Hbar::value(hv.clone())?;
        // compute defects first; the span is built at the weight they reach
        let pairs = basis_pairs(algebra, cutoff);
        let defects = par_map(pairs, |(wa, wb)| -> Result<(CWord, CWord, VState)> {
            let a = word_state(&wa);
            let b = word_state(&wb);
            let ab = algebra.star_p(&a, &b, p, &hbar, limit)?;
            let ba = algebra.star_p(&b, &a, p, &hbar, limit)?;
            let br = algebra.hbar_bracket(&a, &b, &hbar, limit)?.scale(&hbar.pow(1));
            Ok((wa, wb, ab.sub(&ba).sub(&br)))
        });
        let defects = collect(defects)?;
        let span_cut = defects
            .iter()
            .filter_map(|(_, _, d)| d.max_weight(algebra))
            .max()
            .unwrap_or(0)
            .max(1);
        let span = j_span(algebra, p, span_cut, hv.clone())?;
        let records = par_map(defects, |(wa, wb, defect)| -> Result<CaseRecord> {
            let rec = base_record(algebra, SuiteId::Skew, p)
                .input("a", algebra.display_state(&word_state(&wa)))
                .input("b", algebra.display_state(&word_state(&wb)))
                .input("hbar", rat_to_string(hv));
            Ok(if span.contains(algebra, &defect)? {
                rec.pass()
            } else {
                rec.fail(defect_note(algebra, &defect))
            })
        });
        out.extend(collect(records)?);
    }
    Ok(out)
}

// ---- assoc: (a *_p b) *_p c = a *_p (b *_p c) mod J ----

fn assoc_suite(algebra: &VertexAlgebra, p: i64, config: &SuiteConfig) -> Result<Vec<CaseRecord>> {
    let cutoff = config.policy.weight_cutoff;
    let limit = cutoff + 4 * p + 4;
    let mut out = Vec::new();
    for hv in &config.hbar_values {
        let hbar = Hbar::value(hv.clone())?;
        let triples = basis_triples(algebra, cutoff);
        let defects = par_map(triples, |(wa, wb, wc)| -> Result<(CWord, CWord, CWord, VState)> {
            let a = word_state(&wa);
            let b = word_state(&wb);
            let c = word_state(&wc);
            let ab = algebra.star_p(&a, &b, p, &hbar, limit)?;
            let left = algebra.star_p(&ab, &c, p, &hbar, limit)?;
            let bc = algebra.star_p(&b, &c, p, &hbar, limit)?;
            let right = algebra.star_p(&a, &bc, p, &hbar, limit)?;
            Ok((wa, wb, wc, left.sub(&right)))
        });
        let defects = collect(defects)?;
        let span_cut = defects
            .iter()
            .filter_map(|(_, _, _, d)| d.max_weight(algebra))
            .max()
            .unwrap_or(0)
            .max(1);
        let span = j_span(algebra, p, span_cut, hv.clone())?;
        let records = par_map(defects, |(wa, wb, wc, defect)| -> Result<CaseRecord> {
            let rec = base_record(algebra, SuiteId::Assoc, p)
                .input("a", algebra.display_state(&word_state(&wa)))
                .input("b", algebra.display_state(&word_state(&wb)))
                .input("c", algebra.display_state(&word_state(&wc)))
                .input("hbar", rat_to_string(hv));
            Ok(if span.contains(algebra, &defect)? {
                rec.pass()
            } else {
                rec.fail(defect_note(algebra, &defect))
            })
        });
        out.extend(collect(records)?);
    }
    Ok(out)
}

// ---- leftideal: u *_p v and v *_p u lie in J for J-generators v ----

fn leftideal_suite(
    algebra: &VertexAlgebra,
    p: i64,
    config: &SuiteConfig,
) -> Result<Vec<CaseRecord>> {
    let cutoff = config.policy.weight_cutoff;
    let gen_cut = cutoff.min(4);
    let limit = 2 * cutoff + 6 * p + 10;
    let basis = algebra.basis_words(gen_cut);
    let mut out = Vec::new();
    for hv in &config.hbar_values {
        let hbar = Hbar::value(hv.clone())?;
        // sample of J-generators within gen_cut
        let mut gens: Vec<(String, VState)> = Vec::new();
        for w in &basis {
            if w.is_empty() {
                continue;
            }
            let a = word_state(w);
            let v = algebra.translate(&a).add(&algebra.energy(&a).scale(&hbar.pow(1)));
            gens.push((format!("(T+hH){}", algebra.display_state(&a)), v));
        }
        for wa in &basis {
            if wa.is_empty() {
                continue;
            }
            for wb in &basis {
                if algebra.word_weight(wa) + algebra.word_weight(wb) > gen_cut {
                    continue;
                }
                let v = algebra.zhu_mode(
                    &word_state(wa),
                    &word_state(wb),
                    -2 * p - 2,
                    p,
                    &hbar,
                    limit,
                )?;
                if !v.is_zero() {
                    gens.push((
                        format!(
                            "{}_[{}]{}",
                            algebra.display_state(&word_state(wa)),
                            -2 * p - 2,
                            algebra.display_state(&word_state(wb))
                        ),
                        v,
                    ));
                }
            }
        }
        let mut cases = Vec::new();
        for u in algebra.basis_words(gen_cut) {
            for (name, v) in &gens {
                cases.push((u.clone(), name.clone(), v.clone()));
            }
        }
        let defects = par_map(
            cases,
            |(u, name, v)| -> Result<(String, String, VState, VState)> {
                let us = word_state(&u);
                let left = algebra.star_p(&us, &v, p, &hbar, limit)?;
                let right = algebra.star_p(&v, &us, p, &hbar, limit)?;
                Ok((algebra.display_state(&us), name, left, right))
            },
        );
        let defects = collect(defects)?;
        let span_cut = defects
            .iter()
            .flat_map(|(_, _, l, r)| [l.max_weight(algebra), r.max_weight(algebra)])
            .flatten()
            .max()
            .unwrap_or(0)
            .max(1);
        let span = j_span(algebra, p, span_cut, hv.clone())?;
        let records = par_map(defects, |(u, name, left, right)| -> Result<CaseRecord> {
            let rec = base_record(algebra, SuiteId::Leftideal, p)
                .input("u", u)
                .input("v", name)
                .input("hbar", rat_to_string(hv));
            let ok_left = span.contains(algebra, &left)?;
            let ok_right = span.contains(algebra, &right)?;
            Ok(if ok_left && ok_right {
                rec.pass()
            } else if !ok_left {
                rec.fail(format!("u*v escapes J: {}", defect_note(algebra, &left)))
            } else {
                rec.fail(format!("v*u escapes J: {}", defect_note(algebra, &right)))
            })
        });
        out.extend(collect(records)?);
    }
    Ok(out)
}

// ---- phi: J_p inside J_{p-1}; a *_p b = a *_{p-1} b mod J_{p-1} ----

fn phi_suite(algebra: &VertexAlgebra, p: i64, config: &SuiteConfig) -> Result<Vec<CaseRecord>> {
    if p == 0 {
        return Ok(vec![base_record(algebra, SuiteId::Phi, p)
            .skipped("phi relates levels p and p-1; needs p >= 1")]);
    }
    let cutoff = config.policy.weight_cutoff;
    let limit = cutoff + 4 * p + 4;
    let mut out = Vec::new();
    for hv in &config.hbar_values {
        let hbar = Hbar::value(hv.clone())?;
        // containment of J_p generators
        let basis = algebra.basis_words(cutoff);
        let mut defects: Vec<(String, VState)> = Vec::new();
        for w in &basis {
            if w.is_empty() {
                continue;
            }
            if algebra.word_weight(w) + 1 > cutoff {
                continue;
            }
            let a = word_state(w);
            let v = algebra.translate(&a).add(&algebra.energy(&a).scale(&hbar.pow(1)));
            defects.push((format!("(T+hH){}", algebra.display_state(&a)), v));
        }
        for wa in &basis {
            if wa.is_empty() {
                continue;
            }
            for wb in &basis {
                if algebra.word_weight(wa) + algebra.word_weight(wb) + 2 * p + 1 > cutoff {
                    continue;
                }
                let v = algebra.zhu_mode(
                    &word_state(wa),
                    &word_state(wb),
                    -2 * p - 2,
                    p,
                    &hbar,
                    limit,
                )?;
                if !v.is_zero() {
                    defects.push((
                        format!(
                            "{}_[-{}]{}",
                            algebra.display_state(&word_state(wa)),
                            2 * p + 2,
                            algebra.display_state(&word_state(wb))
                        ),
                        v,
                    ));
                }
            }
        }
        // product compatibility defects
        for (wa, wb) in basis_pairs(algebra, cutoff) {
            let a = word_state(&wa);
            let b = word_state(&wb);
            let high = algebra.star_p(&a, &b, p, &hbar, limit)?;
            let low = algebra.star_p(&a, &b, p - 1, &hbar, limit)?;
            defects.push((
                format!(
                    "{} *_{} {} - *_{}",
                    algebra.display_state(&a),
                    p,
                    algebra.display_state(&b),
                    p - 1
                ),
                high.sub(&low),
            ));
        }
        let span_cut = defects
            .iter()
            .filter_map(|(_, d)| d.max_weight(algebra))
            .max()
            .unwrap_or(0)
            .max(1);
        let span = j_span(algebra, p - 1, span_cut, hv.clone())?;
        let records = par_map(defects, |(name, d)| -> Result<CaseRecord> {
            let rec = base_record(algebra, SuiteId::Phi, p)
                .input("element", name)
                .input("hbar", rat_to_string(hv));
            Ok(if span.contains(algebra, &d)? {
                rec.pass()
            } else {
                rec.fail(defect_note(algebra, &d))
            })
        });
        out.extend(collect(records)?);
    }
    Ok(out)
}

fn collect<T>(results: Vec<Result<T>>) -> Result<Vec<T>> {
    results.into_iter().collect()
}

fn flatten(results: Vec<Result<Vec<CaseRecord>>>) -> Result<Vec<CaseRecord>> {
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
