//! The universal enveloping vertex algebra V(R) as a weight-graded
//! state space of PBW creation words applied to the vacuum, with exact
//! n-th products, the translation and energy operators, the modified
//! products a_[n]b, the Zhu product *_p, and the ideal J_p.
//!
//! Untwisted instantiation only (trivial degree cosets, eps = 0,
//! chi = 0); the twisted exponents are still routed through the
//! twist-grading bookkeeping so the code paths carry chi explicitly
//! with value 0.

pub mod jspan;
pub mod suites;

use std::collections::BTreeMap;

use dashmap::DashMap;
use num::{One, Zero};

use crate::lca::{LcaElement, LcaSpec};
use crate::scalar::{binom_rat, rat_int, PolyScalar, Rat};
use crate::{Error, Result};

/// A creation operator g_(n) with n <= -1, in (n)-indexing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CreationOp {
    pub n: i64,
    pub gen: usize,
}

/// A sorted creation word (nondecreasing in (n, gen)); the empty word
/// is the vacuum.
pub type CWord = Vec<CreationOp>;

/// A weight-graded element of V(R): a finite sum of creation words
/// applied to the vacuum, with PolyScalar coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VState {
    terms: BTreeMap<CWord, PolyScalar>,
}

impl VState {
    pub fn zero() -> Self {
        VState::default()
    }

    pub fn vacuum() -> Self {
        let mut s = VState::default();
        s.terms.insert(Vec::new(), PolyScalar::one());
        s
    }

    /// A single sorted creation word with the given coefficient.
    pub fn from_word(word: CWord, coeff: PolyScalar) -> Self {
        debug_assert!(word.windows(2).all(|p| p[0] <= p[1]), "word must be sorted");
        let mut s = VState::default();
        s.add_term(word, coeff);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&CWord, &PolyScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &CWord) -> PolyScalar {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, word: CWord, coeff: PolyScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &VState) -> VState {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VState) -> VState {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &PolyScalar) -> VState {
        if s.is_zero() {
            return VState::zero();
        }
        VState { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect() }
    }

    /// Substitute the given rational for h in every coefficient.
    pub fn eval_hbar(&self, value: &Rat) -> Result<VState> {
        let mut out = VState::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.eval_at(&[], Some(value))?);
        }
        Ok(out)
    }

    /// The homogeneous component of the given weight.
    pub fn component(&self, algebra: &VertexAlgebra, weight: i64) -> VState {
        let mut out = VState::zero();
        for (w, c) in &self.terms {
            if algebra.word_weight(w) == weight {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    /// Weights present in this state, ascending.
    pub fn weights(&self, algebra: &VertexAlgebra) -> Vec<i64> {
        let mut ws: Vec<i64> = self.terms.keys().map(|w| algebra.word_weight(w)).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    pub fn max_weight(&self, algebra: &VertexAlgebra) -> Option<i64> {
        self.terms.keys().map(|w| algebra.word_weight(w)).max()
    }
}

/// Weight cutoff and series order for truncated computations.
/// Operations producing states above the cutoff signal a truncation
/// breach rather than dropping terms.
#[derive(Clone, Copy, Debug)]
pub struct TruncationPolicy {
    pub weight_cutoff: i64,
    pub series_order: i64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { weight_cutoff: 6, series_order: 8 }
    }
}

/// The value of h in a computation: the formal Laurent variable or a
/// nonzero rational.
#[derive(Clone, PartialEq, Debug)]
pub enum Hbar {
    Symbolic,
    Value(Rat),
}

impl Hbar {
    pub fn value(r: Rat) -> Result<Hbar> {
        if r.is_zero() {
            return Err(Error::pre("hbar must be nonzero"));
        }
        Ok(Hbar::Value(r))
    }

    /// h^k as a scalar, for any integer k.
    pub fn pow(&self, k: i64) -> PolyScalar {
        match self {
            Hbar::Symbolic => PolyScalar::hbar_pow(k as i32),
            Hbar::Value(r) => {
                let mut v = Rat::one();
                let a = k.unsigned_abs();
                for _ in 0..a {
                    v *= r;
                }
                if k < 0 {
                    v = Rat::one() / v;
                }
                PolyScalar::from_rat(v)
            }
        }
    }
}

/// V(R) for an even, untwisted LCA presentation with integer weights.
pub struct VertexAlgebra {
    spec: LcaSpec,
    weights: Vec<i64>,
    nth_cache: DashMap<(CWord, CWord, i64), VState>,
    ann_cache: DashMap<(usize, i64, CWord), VState>,
}

impl VertexAlgebra {
    pub fn new(spec: LcaSpec) -> Result<Self> {
        if !spec.is_even() {
            return Err(Error::UnsupportedOddGenerator);
        }
        let mut weights = Vec::new();
        for g in 0..spec.gen_count() {
            let td = spec.twist_data(g);
            if !td.eps().is_zero() || !td.weight.is_integer() {
                return Err(Error::pre(
                    "vertex-core supports the untwisted instantiation only (integer weights, trivial cosets)",
                ));
            }
            // gamma_a = Delta_a + eps_a with eps_a = 0; chi = 0 throughout
            weights.push(crate::scalar::rat_floor_i64(&td.gamma()));
        }
        Ok(VertexAlgebra {
            spec,
            weights,
            nth_cache: DashMap::new(),
            ann_cache: DashMap::new(),
        })
    }

    pub fn spec(&self) -> &LcaSpec {
        &self.spec
    }

    pub fn gen_weight(&self, gen: usize) -> i64 {
        self.weights[gen]
    }

    /// The generator state g_(-1) vac.
    pub fn generator_state(&self, gen: usize) -> VState {
        let mut s = VState::zero();
        s.add_term(vec![CreationOp { n: -1, gen }], PolyScalar::one());
        s
    }

    pub fn word_weight(&self, word: &CWord) -> i64 {
        word.iter().map(|op| self.weights[op.gen] - op.n - 1).sum()
    }

    /// All sorted creation words of weight <= cutoff (including the
    /// vacuum), ordered by (weight, word).
    pub fn basis_words(&self, cutoff: i64) -> Vec<CWord> {
        let mut letters = Vec::new();
        for g in 0..self.spec.gen_count() {
            // contribution Delta - n - 1 <= cutoff
            let n_min = self.weights[g] - 1 - cutoff;
            for n in n_min..=-1 {
                letters.push(CreationOp { n, gen: g });
            }
        }
        letters.sort();
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.enum_words(&letters, 0, cutoff, &mut word, &mut out);
        out.sort_by_key(|w| (self.word_weight(w), w.clone()));
        out
    }

    fn enum_words(
        &self,
        letters: &[CreationOp],
        min: usize,
        budget: i64,
        word: &mut CWord,
        out: &mut Vec<CWord>,
    ) {
        out.push(word.clone());
        for i in min..letters.len() {
            let cost = self.weights[letters[i].gen] - letters[i].n - 1;
            if cost <= budget {
                word.push(letters[i]);
                self.enum_words(letters, i, budget - cost, word, out);
                word.pop();
            }
        }
    }

    /// (T^t g)_(r) and central terms of an LCA element placed at
    /// (n)-index r, as (letter, coefficient) pairs; `None` letters are
    /// scalars from centrals (only at r = -1).
    fn element_letters(
        &self,
        elem: &LcaElement,
        r: i64,
    ) -> Vec<(Option<CreationOp>, PolyScalar)> {
        let mut out = Vec::new();
        for (t, g, coeff) in elem.iter_terms() {
            let ti = t as i64;
            let mut factor = binom_rat(&rat_int(r), ti);
            for i in 1..=ti {
                factor *= rat_int(i);
            }
            if ti % 2 == 1 {
                factor = -factor;
            }
            if factor.is_zero() {
                continue;
            }
            out.push((
                Some(CreationOp { n: r - ti, gen: g }),
                coeff.scale(&factor),
            ));
        }
        if r == -1 {
            for (i, coeff) in elem.iter_centrals() {
                let sym = PolyScalar::sym(self.spec.centrals[i].symbol);
                out.push((None, coeff * &sym));
            }
        }
        out
    }

    /// [a_(m), b_(k)] = sum_j binom(m, j) (a_(j) b)_(m+k-j) as letters.
    fn lie_bracket_letters(
        &self,
        a: CreationOpAny,
        b: CreationOpAny,
    ) -> Vec<(Option<CreationOp>, PolyScalar)> {
        let mut out = Vec::new();
        for j in 0..=self.spec.bracket_top(a.gen, b.gen) {
            let factor = binom_rat(&rat_int(a.n), j);
            if factor.is_zero() {
                continue;
            }
            let entry = self.spec.bracket_entry(a.gen, b.gen, j);
            if entry.is_zero() {
                continue;
            }
            for (letter, coeff) in self.element_letters(&entry, a.n + b.n - j) {
                out.push((letter, coeff.scale(&factor)));
            }
        }
        out
    }

    /// Prepend a creation letter to a state and restore sorted order.
    /// Creation letters close under bracket (the corrections are again
    /// creation letters), so this stays inside V(R).
    pub fn apply_creation(&self, op: CreationOp, state: &VState) -> VState {
        debug_assert!(op.n <= -1);
        let mut out = VState::zero();
        for (w, c) in state.iter_terms() {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(op);
            word.extend_from_slice(w);
            out = out.add(&self.creation_normal_form(&word, c.clone()));
        }
        out
    }

    fn creation_normal_form(&self, word: &[CreationOp], coeff: PolyScalar) -> VState {
        let mut out = VState::zero();
        let mut work: Vec<(CWord, PolyScalar)> = vec![(word.to_vec(), coeff)];
        while let Some((w, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
                None => out.add_term(w, c),
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    work.push((swapped, c.clone()));
                    let corrections = self.lie_bracket_letters(
                        CreationOpAny { n: w[i].n, gen: w[i].gen },
                        CreationOpAny { n: w[i + 1].n, gen: w[i + 1].gen },
                    );
                    for (letter, bc) in corrections {
                        let letter = letter.expect("creation brackets never reach index -1");
                        debug_assert!(letter.n <= -1);
                        let mut spliced = Vec::with_capacity(w.len() - 1);
                        spliced.extend_from_slice(&w[..i]);
                        spliced.push(letter);
                        spliced.extend_from_slice(&w[i + 2..]);
                        work.push((spliced, &c * &bc));
                    }
                }
            }
        }
        out
    }

    /// Apply a single Lie mode g_(r) (any r) to a state.
    pub fn apply_letter(&self, gen: usize, r: i64, state: &VState) -> VState {
        if r <= -1 {
            return self.apply_creation(CreationOp { n: r, gen }, state);
        }
        let mut out = VState::zero();
        for (w, c) in state.iter_terms() {
            out = out.add(&self.annihilate_word(gen, r, w).scale(c));
        }
        out
    }

    /// g_(r) applied to a creation word, r >= 0: commute rightward
    /// until the vacuum kills it.
    fn annihilate_word(&self, gen: usize, r: i64, word: &CWord) -> VState {
        debug_assert!(r >= 0);
        if word.is_empty() {
            return VState::zero();
        }
        let key = (gen, r, word.clone());
        if let Some(hit) = self.ann_cache.get(&key) {
            return hit.clone();
        }
        let head = word[0];
        let rest: CWord = word[1..].to_vec();
        let rest_state = {
            let mut s = VState::zero();
            s.add_term(rest.clone(), PolyScalar::one());
            s
        };
        // g_(r) head = head g_(r) + [g_(r), head]
        let mut out = self.apply_creation(head, &self.annihilate_word(gen, r, &rest));
        for (letter, coeff) in self.lie_bracket_letters(
            CreationOpAny { n: r, gen },
            CreationOpAny { n: head.n, gen: head.gen },
        ) {
            let contrib = match letter {
                Some(op) if op.n <= -1 => self.apply_creation(op, &rest_state),
                Some(op) => self.annihilate_word(op.gen, op.n, &rest).clone(),
                None => rest_state.clone(),
            };
            out = out.add(&contrib.scale(&coeff));
        }
        self.ann_cache.insert(key, out.clone());
        out
    }

    /// The n-th product a_(n) b, exact. `limit` bounds the weight of
    /// the result (= wt a + wt b - n - 1 per component pair).
    pub fn nth_product(&self, a: &VState, b: &VState, n: i64, limit: i64) -> Result<VState> {
        let mut out = VState::zero();
        for (wa, ca) in a.iter_terms() {
            for (wb, cb) in b.iter_terms() {
                let weight = self.word_weight(wa) + self.word_weight(wb) - n - 1;
                if weight > limit {
                    return Err(Error::TruncationBreach { weight, cutoff: limit });
                }
                out = out.add(&self.monomial_nth(wa, wb, n).scale(&(ca * cb)));
            }
        }
        Ok(out)
    }

    fn monomial_nth(&self, wa: &CWord, wb: &CWord, n: i64) -> VState {
        if wa.is_empty() {
            // vac_(n) b = delta_{n,-1} b
            let mut out = VState::zero();
            if n == -1 {
                out.add_term(wb.clone(), PolyScalar::one());
            }
            return out;
        }
        let key = (wa.clone(), wb.clone(), n);
        if let Some(hit) = self.nth_cache.get(&key) {
            return hit.clone();
        }
        // wa = u_(-1-s) rest, i.e. a = (T^(s)u)_(-1) a'
        let head = wa[0];
        let s = -1 - head.n;
        debug_assert!(s >= 0);
        let u = head.gen;
        let rest: CWord = wa[1..].to_vec();
        let wb_state = {
            let mut st = VState::zero();
            st.add_term(wb.clone(), PolyScalar::one());
            st
        };
        let mut out = VState::zero();
        // first sum: v_(-1-j) (a'_(n+j) c), v_(r) = (-1)^s binom(r, s) u_(r-s)
        let inner_bound = self.word_weight(&rest) + self.word_weight(wb) - 1;
        for j in 0..=(inner_bound - n).max(-1) {
            let inner = self.monomial_nth(&rest, wb, n + j);
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
            out = out.add(
                &self
                    .apply_creation(CreationOp { n: r - s, gen: u }, &inner)
                    .scale(&PolyScalar::from_rat(factor)),
            );
        }
        // second sum: a'_(n-1-j) (v_(j) c)
        let u_bound = self.weights[u] + self.word_weight(wb) - 1 + s;
        for j in 0..=u_bound.max(-1) {
            let mut factor = binom_rat(&rat_int(j), s);
            if s % 2 == 1 {
                factor = -factor;
            }
            if factor.is_zero() {
                continue;
            }
            let vc = self.apply_letter(u, j - s, &wb_state);
            if vc.is_zero() {
                continue;
            }
            // a'_(n-1-j) applied to each component word of vc
            for (wc, cc) in vc.iter_terms() {
                let term = self.monomial_nth(&rest, wc, n - 1 - j);
                out = out.add(&term.scale(&(&PolyScalar::from_rat(factor.clone()) * cc)));
            }
        }
        self.nth_cache.insert(key, out.clone());
        out
    }

    /// T a = a_(-2) vac, computed as the index-shift derivation on
    /// creation words.
    pub fn translate(&self, a: &VState) -> VState {
        let mut out = VState::zero();
        for (w, c) in a.iter_terms() {
            for i in 0..w.len() {
                let mut shifted = w.clone();
                shifted[i].n -= 1;
                let factor = PolyScalar::from_int(-w[i].n);
                out = out.add(&self.creation_normal_form(&shifted, c * &factor));
            }
        }
        out
    }

    /// H a: multiply each homogeneous component by its weight.
    pub fn energy(&self, a: &VState) -> VState {
        let mut out = VState::zero();
        for (w, c) in a.iter_terms() {
            let wt = self.word_weight(w);
            out.add_term(w.clone(), c.scale(&rat_int(wt)));
        }
        out
    }

    /// a_[n] b = sum_j binom(gamma_a + p, j) h^j a_(n+j) b, with
    /// gamma_a = Delta_a (untwisted), per homogeneous component of a.
    pub fn zhu_mode(
        &self,
        a: &VState,
        b: &VState,
        n: i64,
        p: i64,
        hbar: &Hbar,
        limit: i64,
    ) -> Result<VState> {
        let mut out = VState::zero();
        for wt in a.weights(self) {
            let comp = a.component(self, wt);
            let gamma_plus_p = rat_int(wt + p);
            let j_max = wt + b.max_weight(self).unwrap_or(0) - n;
            for j in 0..=j_max.max(0) {
                let factor = binom_rat(&gamma_plus_p, j);
                if factor.is_zero() {
                    continue;
                }
                let prod = self.nth_product(&comp, b, n + j, limit)?;
                if prod.is_zero() {
                    continue;
                }
                out = out.add(&prod.scale(&hbar.pow(j).scale(&factor)));
            }
        }
        Ok(out)
    }

    /// a *_p b = sum_{m=0}^p binom(-p-1, m) h^(-p-m) a_[-p-1-m] b.
    pub fn star_p(
        &self,
        a: &VState,
        b: &VState,
        p: i64,
        hbar: &Hbar,
        limit: i64,
    ) -> Result<VState> {
        if p < 0 {
            return Err(Error::pre("p must be >= 0"));
        }
        let mut out = VState::zero();
        for m in 0..=p {
            let factor = binom_rat(&rat_int(-p - 1), m);
            let z = self.zhu_mode(a, b, -p - 1 - m, p, hbar, limit)?;
            out = out.add(&z.scale(&hbar.pow(-p - m).scale(&factor)));
        }
        Ok(out)
    }

    /// [a, b]_h = sum_j binom(gamma_a - 1, j) h^j a_(j) b (the p-free
    /// form; the p-dependent form is checked against it in tests).
    pub fn hbar_bracket(&self, a: &VState, b: &VState, hbar: &Hbar, limit: i64) -> Result<VState> {
        let mut out = VState::zero();
        for wt in a.weights(self) {
            let comp = a.component(self, wt);
            let top = rat_int(wt - 1);
            let j_max = wt + b.max_weight(self).unwrap_or(0);
            for j in 0..=j_max.max(0) {
                let factor = binom_rat(&top, j);
                if factor.is_zero() {
                    continue;
                }
                let prod = self.nth_product(&comp, b, j, limit)?;
                if prod.is_zero() {
                    continue;
                }
                out = out.add(&prod.scale(&hbar.pow(j).scale(&factor)));
            }
        }
        Ok(out)
    }

    /// [a, b]_h in its p-dependent form sum_j binom(-p-1, j) h^j a_[j]b.
    pub fn hbar_bracket_via_zhu_modes(
        &self,
        a: &VState,
        b: &VState,
        p: i64,
        hbar: &Hbar,
        limit: i64,
    ) -> Result<VState> {
        let mut out = VState::zero();
        let j_max = a.max_weight(self).unwrap_or(0) + b.max_weight(self).unwrap_or(0);
        for j in 0..=j_max.max(0) {
            let factor = binom_rat(&rat_int(-p - 1), j);
            let z = self.zhu_mode(a, b, j, p, hbar, limit)?;
            if z.is_zero() {
                continue;
            }
            out = out.add(&z.scale(&hbar.pow(j).scale(&factor)));
        }
        Ok(out)
    }

    pub fn display_state(&self, s: &VState) -> String {
        if s.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (w, c) in s.iter_terms() {
            let head = if w.is_empty() {
                "vac".to_string()
            } else {
                w.iter()
                    .map(|op| format!("{}({})", self.spec.generators[op.gen].id, op.n))
                    .collect::<Vec<_>>()
                    .join(" ")
                    + " vac"
            };
            let body = if c.is_one() {
                head
            } else if c.num_terms() == 1 && !c.to_string().contains(' ') {
                format!("{c} {head}")
            } else {
                format!("({c}) {head}")
            };
            parts.push(body);
        }
        parts.join(" + ")
    }
}

/// A Lie mode at any (n)-index, used inside bracket computations.
#[derive(Clone, Copy, Debug)]
struct CreationOpAny {
    n: i64,
    gen: usize,
}

#[cfg(test)]
mod tests;
