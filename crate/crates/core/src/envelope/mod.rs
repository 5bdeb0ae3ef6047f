//! The mode Lie algebra Lie(R), PBW normal ordering in U(Lie R), and
//! the level-p Zhu algebra Z_p = U(Lie R)_0 / (U(Lie R) U(Lie R)_{>p})_0.
//!
//! Modes are written in conformal-weight indexing, a_n = a_(n+Delta-1),
//! with the grading deg a_n = n. Central modes never appear as word
//! letters: they are absorbed at bracket time as the scalar symbols c
//! and k, so the algebra computed is U(Lie R)/(C - c).

pub mod expr;
pub mod linalg;
pub mod oracle;
pub mod relations;

use std::collections::BTreeMap;

use dashmap::DashMap;
use num::Zero;

use crate::lca::LcaSpec;
use crate::scalar::{binom_rat, rat_int, rat_to_string, PolyScalar, Rat};
use crate::twist::CosetZ;
use crate::{Error, Result};

/// A weight-indexed mode of one generator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ModeOp {
    pub mode: Rat,
    pub gen: usize,
}

/// A PBW word: modes sorted nondecreasing, ties broken by generator
/// order. The derived `Ord` on `ModeOp` is exactly that sort key.
pub type Word = Vec<ModeOp>;

/// A canonical element of U(Lie R): sorted words with nonzero
/// coefficients, no duplicates.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UEElement {
    terms: BTreeMap<Word, PolyScalar>,
}

impl UEElement {
    pub fn zero() -> Self {
        UEElement::default()
    }

    pub fn one() -> Self {
        let mut e = UEElement::default();
        e.terms.insert(Vec::new(), PolyScalar::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Word, &PolyScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> PolyScalar {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, word: Word, coeff: PolyScalar) {
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

    pub fn add(&self, other: &UEElement) -> UEElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UEElement) -> UEElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &PolyScalar) -> UEElement {
        if s.is_zero() {
            return UEElement::zero();
        }
        UEElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect() }
    }

    /// Degree of a word: the sum of its modes.
    pub fn word_degree(word: &Word) -> Rat {
        word.iter().fold(Rat::zero(), |acc, m| acc + &m.mode)
    }

    /// True when every monomial has degree zero.
    pub fn is_degree_zero(&self) -> bool {
        self.terms.keys().all(|w| Self::word_degree(w).is_zero())
    }

    /// Substitute rationals for the scalar symbols, dropping terms that
    /// evaluate to zero.
    pub fn specialize(&self, subs: &[(crate::scalar::Symbol, Rat)]) -> Result<UEElement> {
        let mut out = UEElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.eval_at(subs, None)?);
        }
        Ok(out)
    }
}

/// U(Lie R) for a validated even LCA presentation, with a concurrent
/// bracket cache.
pub struct ModeAlgebra {
    spec: LcaSpec,
    bracket_cache: DashMap<(usize, usize, Rat, Rat), UEElement>,
}

impl ModeAlgebra {
    pub fn new(spec: LcaSpec) -> Result<Self> {
        if !spec.is_even() {
            return Err(Error::UnsupportedOddGenerator);
        }
        Ok(ModeAlgebra { spec, bracket_cache: DashMap::new() })
    }

    pub fn spec(&self) -> &LcaSpec {
        &self.spec
    }

    /// A validated mode: n must lie in the generator's eps-coset.
    pub fn mode(&self, gen: usize, mode: Rat) -> Result<ModeOp> {
        if gen >= self.spec.gen_count() {
            return Err(Error::pre(format!("unknown generator index {gen}")));
        }
        let eps_coset = CosetZ::new(self.spec.twist_data(gen).eps());
        if CosetZ::new(mode.clone()) != eps_coset {
            return Err(Error::pre(format!(
                "mode {} of `{}` is outside its eps-coset",
                rat_to_string(&mode),
                self.spec.generators[gen].id
            )));
        }
        Ok(ModeOp { mode, gen })
    }

    pub fn mode_i(&self, gen: usize, mode: i64) -> Result<ModeOp> {
        self.mode(gen, rat_int(mode))
    }

    /// True when every generator sits in the trivial degree coset, so
    /// that all modes are integers.
    pub fn is_untwisted(&self) -> bool {
        (0..self.spec.gen_count()).all(|g| self.spec.twist_data(g).eps().is_zero())
    }

    /// Translate an LCA element placed at weight-index n into modes:
    /// (T^t g)_n = (-1)^t t! binom(n + Delta_g + t - 1, t) g_n, and a
    /// central term contributes its scalar symbol exactly at n = 0.
    fn element_at(&self, elem: &crate::lca::LcaElement, n: &Rat) -> UEElement {
        let mut out = UEElement::zero();
        for (t, g, coeff) in elem.iter_terms() {
            let top = n + self.spec.weight(g) + rat_int(t as i64) - rat_int(1);
            let mut factor = binom_rat(&top, t as i64);
            for i in 1..=t as i64 {
                factor *= rat_int(i);
            }
            if t % 2 == 1 {
                factor = -factor;
            }
            if factor.is_zero() {
                continue;
            }
            out.add_term(
                vec![ModeOp { mode: n.clone(), gen: g }],
                coeff.scale(&factor),
            );
        }
        if n.is_zero() {
            for (i, coeff) in elem.iter_centrals() {
                let sym = PolyScalar::sym(self.spec.centrals[i].symbol);
                out.add_term(Vec::new(), coeff * &sym);
            }
        }
        out
    }

    /// [a_m, b_k] = sum_j binom(m + Delta_a - 1, j) (a_(j) b)_{m+k}.
    pub fn bracket_modes(&self, a: &ModeOp, b: &ModeOp) -> UEElement {
        let key = (a.gen, b.gen, a.mode.clone(), b.mode.clone());
        if let Some(hit) = self.bracket_cache.get(&key) {
            return hit.clone();
        }
        let top = &a.mode + self.spec.weight(a.gen) - rat_int(1);
        let n = &a.mode + &b.mode;
        let mut out = UEElement::zero();
        for j in 0..=self.spec.bracket_top(a.gen, b.gen) {
            let factor = binom_rat(&top, j);
            if factor.is_zero() {
                continue;
            }
            let entry = self.spec.bracket_entry(a.gen, b.gen, j);
            if entry.is_zero() {
                continue;
            }
            let translated = self.element_at(&entry, &n);
            out = out.add(&translated.scale(&PolyScalar::from_rat(factor)));
        }
        self.bracket_cache.insert(key, out.clone());
        out
    }

    /// Rewrite an arbitrary word into the canonical sorted-monomial
    /// sum. Each swap's correction terms are strictly shorter, so the
    /// rewriting terminates.
    pub fn normalize_word(&self, word: &[ModeOp], coeff: PolyScalar) -> UEElement {
        let mut out = UEElement::zero();
        let mut work: Vec<(Word, PolyScalar)> = vec![(word.to_vec(), coeff)];
        while let Some((w, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            match first_inversion(&w) {
                None => out.add_term(w, c),
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    work.push((swapped, c.clone()));
                    let correction = self.bracket_modes(&w[i], &w[i + 1]);
                    for (bw, bc) in correction.iter_terms() {
                        let mut spliced = Vec::with_capacity(w.len() - 2 + bw.len());
                        spliced.extend_from_slice(&w[..i]);
                        spliced.extend_from_slice(bw);
                        spliced.extend_from_slice(&w[i + 2..]);
                        work.push((spliced, &c * bc));
                    }
                }
            }
        }
        out
    }

    pub fn monomial(&self, word: Vec<ModeOp>, coeff: PolyScalar) -> UEElement {
        self.normalize_word(&word, coeff)
    }

    /// Product in U(Lie R), normal-ordered.
    pub fn multiply(&self, x: &UEElement, y: &UEElement) -> UEElement {
        let mut out = UEElement::zero();
        for (wx, cx) in x.iter_terms() {
            for (wy, cy) in y.iter_terms() {
                let mut w = Vec::with_capacity(wx.len() + wy.len());
                w.extend_from_slice(wx);
                w.extend_from_slice(wy);
                out = out.add(&self.normalize_word(&w, cx * cy));
            }
        }
        out
    }

    /// Normal form in Z_p: drop every sorted monomial having a suffix
    /// whose mode-sum exceeds p. Idempotent on normal forms.
    pub fn zp_reduce(&self, x: &UEElement, p: i64) -> Result<UEElement> {
        if !x.is_degree_zero() {
            return Err(Error::pre("zp_reduce requires a degree-0 element"));
        }
        let mut out = UEElement::zero();
        for (w, c) in x.iter_terms() {
            if !suffix_killed(w, p) {
                out.add_term(w.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Product followed by reduction; inputs must be degree-0.
    pub fn zp_multiply(&self, x: &UEElement, y: &UEElement, p: i64) -> Result<UEElement> {
        if !x.is_degree_zero() || !y.is_degree_zero() {
            return Err(Error::pre("zp_multiply requires degree-0 elements"));
        }
        self.zp_reduce(&self.multiply(x, y), p)
    }

    /// All sorted degree-0 words of length <= cutoff with every suffix
    /// mode-sum <= p. The suffix rule forces all modes into [-p, p],
    /// so the enumeration is finite. Untwisted only.
    pub fn zp_basis(&self, p: i64, cutoff: usize) -> Result<Vec<Word>> {
        if !self.is_untwisted() {
            return Err(Error::pre("zp_basis supports only untwisted algebras"));
        }
        if p < 0 {
            return Err(Error::pre("p must be >= 0"));
        }
        // letters in sort order
        let mut letters = Vec::new();
        for m in -p..=p {
            for g in 0..self.spec.gen_count() {
                letters.push(ModeOp { mode: rat_int(m), gen: g });
            }
        }
        let mut out = Vec::new();
        let mut word: Word = Vec::new();
        enumerate_basis(&letters, 0, p, cutoff, &mut word, &mut out);
        Ok(out)
    }

    pub fn display_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|m| format!("{}[{}]", self.spec.generators[m.gen].id, rat_to_string(&m.mode)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn display_element(&self, x: &UEElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (w, c) in x.iter_terms() {
            let head = self.display_word(w);
            let body = if c.is_one() {
                head
            } else if w.is_empty() {
                format!("{c}")
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

fn first_inversion(word: &[ModeOp]) -> Option<usize> {
    (0..word.len().saturating_sub(1)).find(|&i| word[i] > word[i + 1])
}

/// True when some suffix of the sorted word has mode-sum > p.
fn suffix_killed(word: &Word, p: i64) -> bool {
    let p = rat_int(p);
    let mut sum = Rat::zero();
    for m in word.iter().rev() {
        sum += &m.mode;
        if sum > p {
            return true;
        }
    }
    false
}

fn enumerate_basis(
    letters: &[ModeOp],
    min_letter: usize,
    p: i64,
    remaining: usize,
    word: &mut Word,
    out: &mut Vec<Word>,
) {
    let degree = UEElement::word_degree(word);
    if degree.is_zero() && !suffix_killed(word, p) {
        out.push(word.clone());
    }
    if remaining == 0 {
        return;
    }
    for (i, letter) in letters.iter().enumerate().skip(min_letter) {
        word.push(letter.clone());
        // a killed sorted word stays killed under appending letters that
        // sort after it, so the whole branch can be pruned
        if !suffix_killed(word, p) {
            enumerate_basis(letters, i, p, remaining - 1, word, out);
        }
        word.pop();
    }
}

#[cfg(test)]
mod tests;
