//! Independent linear-algebra oracle for the suffix kill rule: spans
//! the definitional left ideal (U(Lie R) U(Lie R)_{>p})_0 by
//! normal-ordering products (bounded monomial) x (monomial of degree
//! > p) and row-reducing over Q with the central symbols specialized
//! at fixed generic rationals, cross-checked across specializations.

use num::Zero;

use crate::scalar::{rat, rat_int, Rat, Symbol};
use crate::{Error, Result};

use super::linalg::{ColSpace, RowReducer, SparseRow};
use super::{ModeAlgebra, ModeOp, UEElement, Word};

/// The three generic central specializations; a dependency must hold at
/// all of them to be believed.
pub fn central_specializations() -> Vec<Vec<(Symbol, Rat)>> {
    vec![
        vec![(Symbol::C, rat(37, 13)), (Symbol::K, rat(37, 13))],
        vec![(Symbol::C, rat(-5, 7)), (Symbol::K, rat(-5, 7))],
        vec![(Symbol::C, rat(11, 3)), (Symbol::K, rat(11, 3))],
    ]
}

#[derive(Clone, Copy, Debug)]
pub struct OracleParams {
    /// Length bound for the left factor.
    pub max_left_len: usize,
    /// Length bound for the right (degree > p) factor.
    pub max_right_len: usize,
    /// Modes of both factors range over [-mode_bound, mode_bound].
    pub mode_bound: i64,
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams { max_left_len: 3, max_right_len: 3, mode_bound: 3 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Membership {
    In,
    /// Not in the span generated at the given parameters; this bounds
    /// the evidence, it is not a proof of non-membership.
    NotInSpanAtCutoff,
}

pub struct IdealSpan {
    p: i64,
    params: OracleParams,
    /// one reducer per central specialization, sharing a column space
    reducers: Vec<RowReducer>,
    cols: ColSpace<Word>,
    specializations: Vec<Vec<(Symbol, Rat)>>,
}

fn to_row(
    x: &UEElement,
    cols: &mut ColSpace<Word>,
    subs: &[(Symbol, Rat)],
) -> Result<SparseRow> {
    let mut row = SparseRow::new();
    for (w, c) in x.iter_terms() {
        let v = c.eval_rat(subs, None)?;
        if !v.is_zero() {
            row.insert(cols.col(w), v);
        }
    }
    Ok(row)
}

/// All nonempty sorted words over modes in [-bound, bound] with length
/// at most `max_len`, bucketed by integer degree.
pub fn sorted_words_by_degree(
    algebra: &ModeAlgebra,
    max_len: usize,
    bound: i64,
) -> std::collections::BTreeMap<i64, Vec<Word>> {
    let mut letters = Vec::new();
    for m in -bound..=bound {
        for g in 0..algebra.spec().gen_count() {
            letters.push(ModeOp { mode: rat_int(m), gen: g });
        }
    }
    let mut out: std::collections::BTreeMap<i64, Vec<Word>> = std::collections::BTreeMap::new();
    let mut word: Word = Vec::new();
    fn rec(
        letters: &[ModeOp],
        min: usize,
        left: usize,
        word: &mut Word,
        out: &mut std::collections::BTreeMap<i64, Vec<Word>>,
    ) {
        if !word.is_empty() {
            let d = crate::scalar::rat_floor_i64(&UEElement::word_degree(word));
            out.entry(d).or_default().push(word.clone());
        }
        if left == 0 {
            return;
        }
        for i in min..letters.len() {
            word.push(letters[i].clone());
            rec(letters, i, left - 1, word, out);
            word.pop();
        }
    }
    rec(&letters, 0, max_len, &mut word, &mut out);
    out
}

/// Build the row-reduced span of the definitional left ideal at the
/// given parameters. Untwisted algebras only.
pub fn ideal_span(algebra: &ModeAlgebra, p: i64, params: OracleParams) -> Result<IdealSpan> {
    if !algebra.is_untwisted() {
        return Err(Error::pre("ideal oracle supports only untwisted algebras"));
    }
    if p < 0 {
        return Err(Error::pre("p must be >= 0"));
    }
    let specializations = central_specializations();
    let mut cols = ColSpace::new();
    let mut reducers: Vec<RowReducer> = specializations.iter().map(|_| RowReducer::new()).collect();
    let rights = sorted_words_by_degree(algebra, params.max_right_len, params.mode_bound);
    let lefts = sorted_words_by_degree(algebra, params.max_left_len, params.mode_bound);
    for (&rdeg, right_words) in rights.range((p + 1)..) {
        let Some(left_words) = lefts.get(&-rdeg) else { continue };
        for right in right_words {
            for left in left_words {
                let mut word = left.clone();
                word.extend_from_slice(right);
                let nf = algebra.normalize_word(&word, crate::scalar::PolyScalar::one());
                if nf.is_zero() {
                    continue;
                }
                for (s, reducer) in reducers.iter_mut().enumerate() {
                    let row = to_row(&nf, &mut cols, &specializations[s])?;
                    reducer.insert(row);
                }
            }
        }
    }
    Ok(IdealSpan { p, params, reducers, cols, specializations })
}

impl IdealSpan {
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn params(&self) -> &OracleParams {
        &self.params
    }

    pub fn rank(&self) -> usize {
        self.reducers[0].rank()
    }

    /// Exact membership of a degree-0 element in the spanned part of
    /// the ideal. Monomials with a killed suffix factor through the
    /// ideal literally, so they are subtracted constructively first;
    /// the remainder is decided by row reduction under every central
    /// specialization, which must agree.
    pub fn membership(
        &mut self,
        algebra: &ModeAlgebra,
        x: &UEElement,
    ) -> Result<Membership> {
        if !x.is_degree_zero() {
            return Err(Error::pre("ideal membership requires a degree-0 element"));
        }
        let residual = algebra.zp_reduce(x, self.p)?;
        if residual.is_zero() {
            // x was a sum of monomials each literally of the form
            // (prefix)(suffix in U_{>p})
            return Ok(Membership::In);
        }
        let mut verdicts = Vec::new();
        for s in 0..self.specializations.len() {
            let row = to_row(&residual, &mut self.cols, &self.specializations[s])?;
            verdicts.push(self.reducers[s].contains(&row));
        }
        if verdicts.iter().all(|&v| v) {
            Ok(Membership::In)
        } else if verdicts.iter().all(|&v| !v) {
            Ok(Membership::NotInSpanAtCutoff)
        } else {
            Err(Error::UndecidedAtCutoff(
                "central specializations disagree on ideal membership".into(),
            ))
        }
    }
}
