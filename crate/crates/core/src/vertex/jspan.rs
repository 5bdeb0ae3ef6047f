//! The ideal J_p: a row-reduced, weight-filtered span of its defining
//! generators (T + hH)a and a_[-2p-2]b, with exact membership testing.
//!
//! Mod-J checks specialize h to a nonzero rational (membership is then
//! linear algebra over Q with the central symbols at generic values);
//! a separate symbolic reduction handles defects that lie in the span
//! of the (T + hH)-generators alone, keeping h formal.

use num::{One, Zero};

use crate::envelope::linalg::{ColSpace, RowReducer, SparseRow};
use crate::envelope::oracle::central_specializations;
use crate::scalar::{PolyScalar, Rat, Symbol};
use crate::{Error, Result};

use super::{CWord, Hbar, VState, VertexAlgebra};

pub struct JSpan {
    pub p: i64,
    pub hbar_value: Rat,
    pub weight_cutoff: i64,
    reducers: Vec<RowReducer>,
    cols: ColSpace<CWord>,
    specializations: Vec<Vec<(Symbol, Rat)>>,
    pub generator_count: usize,
}

fn state_row(
    x: &VState,
    cols: &mut ColSpace<CWord>,
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

/// Build the span of J_p over all basis states within the weight
/// cutoff, at a fixed nonzero rational h.
pub fn j_span(
    algebra: &VertexAlgebra,
    p: i64,
    weight_cutoff: i64,
    hbar_value: Rat,
) -> Result<JSpan> {
    if hbar_value.is_zero() {
        return Err(Error::pre("hbar must be nonzero"));
    }
    if p < 0 {
        return Err(Error::pre("p must be >= 0"));
    }
    let hbar = Hbar::Value(hbar_value.clone());
    let specializations = central_specializations();
    let mut cols = ColSpace::new();
    let mut reducers: Vec<RowReducer> =
        specializations.iter().map(|_| RowReducer::new()).collect();
    let mut count = 0usize;
    let basis = algebra.basis_words(weight_cutoff);
    // fix the column set up front so that membership tests can run on a
    // shared reference
    for w in &basis {
        cols.col(w);
    }
    let mut insert = |v: &VState,
                      cols: &mut ColSpace<CWord>,
                      reducers: &mut Vec<RowReducer>|
     -> Result<()> {
        if v.is_zero() {
            return Ok(());
        }
        count += 1;
        for (s, reducer) in reducers.iter_mut().enumerate() {
            let row = state_row(v, cols, &specializations[s])?;
            reducer.insert(row);
        }
        Ok(())
    };
    // (T + hH) a for every non-vacuum basis state with T a within the cutoff
    for w in &basis {
        if w.is_empty() {
            continue; // (T + hH) vac = 0
        }
        let wt = algebra.word_weight(w);
        if wt + 1 > weight_cutoff {
            continue;
        }
        let a = word_state(w);
        let v = algebra.translate(&a).add(&algebra.energy(&a).scale(&hbar.pow(1)));
        insert(&v, &mut cols, &mut reducers)?;
    }
    // a_[-2p-2] b for pairs whose top component fits the cutoff
    for wa in &basis {
        if wa.is_empty() {
            continue; // vac_[-2p-2] b = binom(p, 2p+1) ... = 0
        }
        let wta = algebra.word_weight(wa);
        for wb in &basis {
            let wtb = algebra.word_weight(wb);
            if wta + wtb + 2 * p + 1 > weight_cutoff {
                continue;
            }
            let v = algebra.zhu_mode(
                &word_state(wa),
                &word_state(wb),
                -2 * p - 2,
                p,
                &hbar,
                weight_cutoff,
            )?;
            insert(&v, &mut cols, &mut reducers)?;
        }
    }
    Ok(JSpan {
        p,
        hbar_value,
        weight_cutoff,
        reducers,
        cols,
        specializations,
        generator_count: count,
    })
}

fn word_state(w: &CWord) -> VState {
    VState::from_word(w.clone(), PolyScalar::one())
}

impl JSpan {
    /// Exact membership of a state (h already specialized to this
    /// span's value) via row reduction under every central
    /// specialization; the verdicts must agree. Shared-reference safe:
    /// the column set was fixed at construction.
    pub fn contains(&self, algebra: &VertexAlgebra, x: &VState) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        if let Some(w) = x.max_weight(algebra) {
            if w > self.weight_cutoff {
                return Err(Error::UndecidedAtCutoff(format!(
                    "state weight {w} exceeds J-span cutoff {}",
                    self.weight_cutoff
                )));
            }
        }
        let mut verdicts = Vec::new();
        for s in 0..self.specializations.len() {
            let mut row = SparseRow::new();
            for (w, c) in x.iter_terms() {
                let v = c.eval_rat(&self.specializations[s], None)?;
                if v.is_zero() {
                    continue;
                }
                match self.cols.lookup(w) {
                    Some(col) => {
                        row.insert(col, v);
                    }
                    // a word no generator ever touched cannot be cleared
                    None => return Ok(false),
                }
            }
            verdicts.push(self.reducers[s].contains(&row));
        }
        if verdicts.iter().all(|&v| v) {
            Ok(true)
        } else if verdicts.iter().all(|&v| !v) {
            Ok(false)
        } else {
            Err(Error::UndecidedAtCutoff(
                "central specializations disagree on J membership".into(),
            ))
        }
    }
}

/// Membership of a state in J_p as represented by the given span.
pub fn in_j(algebra: &VertexAlgebra, x: &VState, span: &JSpan) -> Result<bool> {
    span.contains(algebra, x)
}

/// Reduce a state against the (T + hH)-generators with h symbolic:
/// repeatedly solve T y = x_top and subtract (T + hH) y. The returned
/// residual is zero iff x lies in their span over Q[h, h^-1] (weight-0
/// components cannot be cleared; they remain in the residual).
pub fn t_reduce_symbolic(algebra: &VertexAlgebra, x: &VState) -> Result<VState> {
    let mut current = x.clone();
    loop {
        let top = match current.max_weight(algebra) {
            None => return Ok(current),
            Some(0) => return Ok(current),
            Some(w) => w,
        };
        let v_top = current.component(algebra, top);
        let y = match solve_t_preimage(algebra, &v_top, top) {
            Some(y) => y,
            None => return Ok(current),
        };
        // subtract (T + hH) y; H y = (top-1) y
        let hy = algebra.energy(&y).scale(&PolyScalar::hbar_pow(1));
        current = current.sub(&algebra.translate(&y)).sub(&hy);
        // exact elimination of the top component
        debug_assert!(current.component(algebra, top).is_zero());
    }
}

/// Solve T y = v for y at weight (w-1). The T-matrix has rational
/// entries while v may carry symbolic coefficients, so elimination
/// divides only by rational pivots.
fn solve_t_preimage(algebra: &VertexAlgebra, v: &VState, w: i64) -> Option<VState> {
    let domain = algebra
        .basis_words(w - 1)
        .into_iter()
        .filter(|word| algebra.word_weight(word) == w - 1)
        .collect::<Vec<_>>();
    let range = algebra
        .basis_words(w)
        .into_iter()
        .filter(|word| algebra.word_weight(word) == w)
        .collect::<Vec<_>>();
    if domain.is_empty() {
        return if v.is_zero() { Some(VState::zero()) } else { None };
    }
    let range_index: std::collections::BTreeMap<&CWord, usize> =
        range.iter().enumerate().map(|(i, w)| (w, i)).collect();
    // columns j: T(domain[j]) expanded over `range`
    let mut a = vec![vec![Rat::zero(); domain.len()]; range.len()];
    for (j, word) in domain.iter().enumerate() {
        let im = algebra.translate(&word_state(word));
        for (rw, c) in im.iter_terms() {
            let i = *range_index.get(rw).expect("translate stays in the graded piece");
            a[i][j] = c.as_rat().expect("T-matrix entries are rational");
        }
    }
    let mut rhs: Vec<PolyScalar> = range
        .iter()
        .map(|rw| v.coeff(rw))
        .collect();
    // gaussian elimination with rational pivots
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; domain.len()];
    let mut used = vec![false; range.len()];
    for col in 0..domain.len() {
        let Some(pivot) = (0..range.len()).find(|&i| !used[i] && !a[i][col].is_zero()) else {
            continue;
        };
        used[pivot] = true;
        pivot_of_col[col] = Some(pivot);
        let inv = Rat::one() / a[pivot][col].clone();
        for cc in 0..domain.len() {
            a[pivot][cc] = &a[pivot][cc] * &inv;
        }
        rhs[pivot] = rhs[pivot].scale(&inv);
        for i in 0..range.len() {
            if i != pivot && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for cc in 0..domain.len() {
                    let delta = &a[pivot][cc] * &f;
                    a[i][cc] = &a[i][cc] - &delta;
                }
                let delta = rhs[pivot].scale(&f);
                rhs[i] = &rhs[i] - &delta;
            }
        }
    }
    // consistency: rows with no pivot must have vanished
    for i in 0..range.len() {
        if !used[i] && !rhs[i].is_zero() {
            return None;
        }
    }
    let mut y = VState::zero();
    for (col, piv) in pivot_of_col.iter().enumerate() {
        if let Some(i) = piv {
            if !rhs[*i].is_zero() {
                y = y.add(&word_state(&domain[col]).scale(&rhs[*i]));
            }
        }
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lca::preset;
    use crate::scalar::rat_int;

    #[test]
    fn t_generators_are_members() {
        let a = VertexAlgebra::new(preset("virasoro").unwrap()).unwrap();
        let span = j_span(&a, 0, 6, rat_int(1)).unwrap();
        let omega = a.generator_state(0);
        let v = a.translate(&omega).add(&a.energy(&omega).scale(&Hbar::Value(rat_int(1)).pow(1)));
        assert!(span.contains(&a, &v).unwrap());
        // omega itself is not in J_0 at generic c
        assert!(!span.contains(&a, &omega).unwrap());
    }
}
