//! Relation discovery in Z_p and filtration dimension counts for
//! two-sided quotients of the mode-0 subalgebra.
//!
//! Relations are found by specialized linear algebra (the three generic
//! central values) and then verified symbolically against the exact
//! normal forms, so a reported relation is a theorem, not a numeric
//! coincidence.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::scalar::{PolyScalar, Rat, Symbol};
use crate::{Error, Result};

use super::linalg::{solve_combination, ColSpace, RowReducer, SparseRow};
use super::oracle::central_specializations;
use super::{ModeAlgebra, UEElement, Word};

/// A named generator for presentation search.
#[derive(Clone, Debug)]
pub struct NamedGenerator {
    pub name: String,
    pub element: UEElement,
}

/// A linear relation among words in the named generators, with exact
/// polynomial coefficients, integer-normalized on the leading word.
#[derive(Clone, Debug)]
pub struct Relation {
    /// (word over generator indices, coefficient); the leading word
    /// comes first.
    pub combo: Vec<(Vec<usize>, PolyScalar)>,
}

impl Relation {
    pub fn render(&self, generators: &[NamedGenerator]) -> String {
        let mut out = String::new();
        for (i, (word, coeff)) in self.combo.iter().enumerate() {
            let head = if word.is_empty() {
                "1".to_string()
            } else {
                // render repeated generators as powers
                let mut parts: Vec<String> = Vec::new();
                let mut run: Option<(usize, u32)> = None;
                for &g in word {
                    match run {
                        Some((prev, n)) if prev == g => run = Some((prev, n + 1)),
                        Some((prev, n)) => {
                            parts.push(power_str(&generators[prev].name, n));
                            run = Some((g, 1));
                        }
                        None => run = Some((g, 1)),
                    }
                }
                if let Some((prev, n)) = run {
                    parts.push(power_str(&generators[prev].name, n));
                }
                parts.join(" ")
            };
            let (sign, abs) = signed_coeff(coeff);
            if i == 0 {
                if sign < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if sign < 0 { " - " } else { " + " });
            }
            if abs.is_one() {
                out.push_str(&head);
            } else if abs.num_terms() == 1 {
                out.push_str(&format!("{abs} {head}"));
            } else {
                out.push_str(&format!("({abs}) {head}"));
            }
        }
        out
    }
}

fn power_str(name: &str, n: u32) -> String {
    if n == 1 {
        name.to_string()
    } else {
        format!("{name}^{n}")
    }
}

/// Split a coefficient into a sign and its absolute value, using the
/// leading term's sign when symbolic.
fn signed_coeff(c: &PolyScalar) -> (i64, PolyScalar) {
    match c.iter_terms().next() {
        Some((_, r)) if r.is_negative() => (-1, -c),
        _ => (1, c.clone()),
    }
}

/// Evaluate all words in the given generators up to the length cutoff
/// in Z_p normal form and return a minimal generating set of the
/// linear relations among them.
///
/// Words are scanned in graded-lex order; a word containing an earlier
/// relation's leading word as a contiguous subword is a consequence and
/// is skipped. Discovery runs at the central specializations; each
/// candidate is reconstructed over Q[c] / Q[k] by interpolation and
/// verified symbolically before being reported.
pub fn find_relations(
    algebra: &ModeAlgebra,
    p: i64,
    generators: &[NamedGenerator],
    cutoff: usize,
) -> Result<Vec<Relation>> {
    for g in generators {
        if !g.element.is_degree_zero() {
            return Err(Error::pre(format!("generator `{}` is not degree-0", g.name)));
        }
    }
    let specializations = central_specializations();
    let mut cols: ColSpace<Word> = ColSpace::new();
    let mut reducers: Vec<RowReducer> = specializations.iter().map(|_| RowReducer::new()).collect();
    // independent words so far, with their symbolic normal forms
    let mut basis_words: Vec<Vec<usize>> = Vec::new();
    let mut basis_nfs: Vec<UEElement> = Vec::new();
    let mut basis_rows: Vec<Vec<SparseRow>> = Vec::new();
    let mut leading: Vec<Vec<usize>> = Vec::new();
    let mut relations = Vec::new();

    // symbolic normal forms are extended one letter at a time
    let mut nf_cache: BTreeMap<Vec<usize>, UEElement> = BTreeMap::new();
    nf_cache.insert(Vec::new(), UEElement::one());

    for len in 0..=cutoff {
        for word in words_of_length(generators.len(), len) {
            if leading.iter().any(|lw| contains_subword(&word, lw)) {
                continue;
            }
            let nf = match nf_cache.get(&word) {
                Some(nf) => nf.clone(),
                None => {
                    let (head, tail) = word.split_at(word.len() - 1);
                    let prefix = nf_cache
                        .get(head)
                        .cloned()
                        .map(Ok)
                        .unwrap_or_else(|| word_normal_form(algebra, p, generators, head))?;
                    let nf = algebra.zp_multiply(&prefix, &generators[tail[0]].element, p)?;
                    nf_cache.insert(word.clone(), nf.clone());
                    nf
                }
            };
            // rows under each specialization
            let mut rows = Vec::new();
            for subs in &specializations {
                let spec_nf = nf.specialize(subs)?;
                let mut row = SparseRow::new();
                for (w, c) in spec_nf.iter_terms() {
                    let v = c.as_rat().ok_or_else(|| {
                        Error::pre("specialized normal form still symbolic")
                    })?;
                    if !v.is_zero() {
                        row.insert(cols.col(w), v);
                    }
                }
                rows.push(row);
            }
            let dependent: Vec<bool> =
                rows.iter().enumerate().map(|(s, r)| reducers[s].contains(r)).collect();
            if dependent.iter().any(|&d| d) != dependent.iter().all(|&d| d) {
                return Err(Error::UndecidedAtCutoff(
                    "central specializations disagree during relation discovery".into(),
                ));
            }
            if dependent[0] {
                let relation = reconstruct_relation(
                    algebra,
                    &word,
                    &nf,
                    &basis_words,
                    &basis_nfs,
                    &basis_rows,
                    &rows,
                    &specializations,
                )?;
                leading.push(word.clone());
                relations.push(relation);
            } else {
                for (s, row) in rows.iter().enumerate() {
                    reducers[s].insert(row.clone());
                }
                basis_words.push(word.clone());
                basis_nfs.push(nf.clone());
                basis_rows.push(rows);
            }
        }
    }
    Ok(relations)
}

fn word_normal_form(
    algebra: &ModeAlgebra,
    p: i64,
    generators: &[NamedGenerator],
    word: &[usize],
) -> Result<UEElement> {
    let mut acc = UEElement::one();
    for &g in word {
        acc = algebra.zp_multiply(&acc, &generators[g].element, p)?;
    }
    Ok(acc)
}

fn words_of_length(alphabet: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut word = vec![0usize; len];
    fn rec(alphabet: usize, pos: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == word.len() {
            out.push(word.clone());
            return;
        }
        for g in 0..alphabet {
            word[pos] = g;
            rec(alphabet, pos + 1, word, out);
        }
    }
    if alphabet == 0 && len > 0 {
        return out;
    }
    rec(alphabet, 0, &mut word, &mut out);
    out
}

fn contains_subword(word: &[usize], sub: &[usize]) -> bool {
    if sub.is_empty() || sub.len() > word.len() {
        return false;
    }
    word.windows(sub.len()).any(|w| w == sub)
}

#[allow(clippy::too_many_arguments)]
fn reconstruct_relation(
    algebra: &ModeAlgebra,
    word: &[usize],
    nf: &UEElement,
    basis_words: &[Vec<usize>],
    basis_nfs: &[UEElement],
    basis_rows: &[Vec<SparseRow>],
    target_rows: &[SparseRow],
    specializations: &[Vec<(Symbol, Rat)>],
) -> Result<Relation> {
    // solve at each specialization
    let mut solutions: Vec<Vec<Rat>> = Vec::new();
    for (s, target) in target_rows.iter().enumerate() {
        let vectors: Vec<SparseRow> = basis_rows.iter().map(|r| r[s].clone()).collect();
        let sol = solve_combination(&vectors, target).ok_or_else(|| {
            Error::UndecidedAtCutoff("dependent word could not be re-solved".into())
        })?;
        solutions.push(sol);
    }
    // constant coefficients first; fall back to interpolation in the
    // algebra's central symbol (degree <= 2 through three points)
    let symbol = algebra
        .spec()
        .centrals
        .first()
        .map(|c| c.symbol)
        .unwrap_or(Symbol::C);
    let points: Vec<Rat> = specializations
        .iter()
        .map(|subs| subs.iter().find(|(s, _)| *s == symbol).unwrap().1.clone())
        .collect();
    let mut coeffs: Vec<PolyScalar> = Vec::new();
    for i in 0..basis_words.len() {
        let values: Vec<Rat> = solutions.iter().map(|sol| sol[i].clone()).collect();
        let coeff = if values.iter().all(|v| *v == values[0]) {
            PolyScalar::from_rat(values[0].clone())
        } else {
            lagrange_quadratic(&points, &values, symbol)
        };
        coeffs.push(coeff);
    }
    // verify symbolically: nf(word) - sum coeff_i nf(v_i) must vanish
    let mut check = nf.clone();
    for (i, c) in coeffs.iter().enumerate() {
        check = check.sub(&basis_nfs[i].scale(c));
    }
    if !check.is_zero() {
        return Err(Error::UndecidedAtCutoff(format!(
            "discovered relation failed symbolic verification (residual {})",
            algebra.display_element(&check)
        )));
    }
    // relation: word - sum coeff_i v_i = 0, normalized to integer
    // coefficients with the leading term positive
    let mut combo: Vec<(Vec<usize>, PolyScalar)> = Vec::new();
    combo.push((word.to_vec(), PolyScalar::one()));
    let mut tail: Vec<(Vec<usize>, PolyScalar)> = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            tail.push((basis_words[i].clone(), -c));
        }
    }
    tail.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
    combo.extend(tail);
    // clear denominators
    let mut denom_lcm = num::BigInt::from(1);
    for (_, c) in &combo {
        for (_, r) in c.iter_terms() {
            denom_lcm = num::integer::lcm(denom_lcm.clone(), r.denom().clone());
        }
    }
    let scale = PolyScalar::from_rat(Rat::from(denom_lcm));
    for (_, c) in combo.iter_mut() {
        *c = &*c * &scale;
    }
    Ok(Relation { combo })
}

/// Quadratic Lagrange interpolation through three points.
fn lagrange_quadratic(points: &[Rat], values: &[Rat], symbol: Symbol) -> PolyScalar {
    let x = PolyScalar::sym(symbol);
    let mut out = PolyScalar::zero();
    for i in 0..3 {
        let mut term = PolyScalar::from_rat(values[i].clone());
        for j in 0..3 {
            if i == j {
                continue;
            }
            let num = &x - &PolyScalar::from_rat(points[j].clone());
            let den = &points[i] - &points[j];
            term = &term * &num.scale(&(Rat::one() / den));
        }
        out += &term;
    }
    out
}

/// For d = 0..max_filtration: the dimension of U_{<=d} modulo the
/// two-sided ideal generated by `ideal_gens`, intersected with the
/// filtration. The intersection is saturated: the span of products
/// x g y is enlarged (internal product degree D >= d) until the
/// level-d count stabilizes for two consecutive D.
pub fn quotient_dim_sequence(
    algebra: &ModeAlgebra,
    ideal_gens: &[UEElement],
    max_filtration: usize,
) -> Result<Vec<usize>> {
    for g in ideal_gens {
        for (w, _) in g.iter_terms() {
            if w.iter().any(|m| !m.mode.is_zero()) {
                return Err(Error::pre("ideal generators must use mode-0 letters only"));
            }
        }
    }
    let gens = algebra.spec().gen_count();
    let max_gen_len =
        ideal_gens.iter().flat_map(|g| g.iter_terms().map(|(w, _)| w.len())).max().unwrap_or(0);
    // extra headroom above max_filtration for saturation
    let d_cap = max_filtration + max_gen_len + 8;

    let mut cols: ColSpace<Word> = ColSpace::new();
    let to_row = |x: &UEElement, cols: &mut ColSpace<Word>| -> Result<SparseRow> {
        let mut row = SparseRow::new();
        for (w, c) in x.iter_terms() {
            let v = c
                .as_rat()
                .ok_or_else(|| Error::pre("mode-0 products must have rational coefficients"))?;
            if !v.is_zero() {
                row.insert(cols.col(w), v);
            }
        }
        Ok(row)
    };

    // grow the product span level by level, remembering it between d's
    let mut span = RowReducer::new();
    let mut built_up_to: i64 = -1;
    let grow_span = |up_to: usize,
                         span: &mut RowReducer,
                         built: &mut i64,
                         cols: &mut ColSpace<Word>|
     -> Result<()> {
        while *built < up_to as i64 {
            let target = (*built + 1) as usize;
            for g in ideal_gens {
                let gdeg = g.iter_terms().map(|(w, _)| w.len()).max().unwrap_or(0);
                if gdeg > target {
                    continue;
                }
                let budget = target - gdeg;
                for lx in 0..=budget {
                    let ly = budget - lx;
                    for x in mode0_monomials(gens, lx) {
                        let xe = algebra.monomial(x, PolyScalar::one());
                        let xg = algebra.multiply(&xe, g);
                        for y in mode0_monomials(gens, ly) {
                            let ye = algebra.monomial(y, PolyScalar::one());
                            let row = to_row(&algebra.multiply(&xg, &ye), cols)?;
                            span.insert(row);
                        }
                    }
                }
            }
            *built += 1;
        }
        Ok(())
    };

    let mut out = Vec::new();
    for d in 0..=max_filtration {
        let mut last: Option<usize> = None;
        let mut value = dim_u_leq(gens, d);
        // the span is shared across levels and only ever grows; restart
        // the scan no lower than what is already built, else consecutive
        // caps see the same span and stabilization fires early
        let start = (built_up_to.max(0) as usize).max(d + max_gen_len);
        for cap in start..=d_cap {
            grow_span(cap, &mut span, &mut built_up_to, &mut cols)?;
            // dim U_{<=d} - dim(span ∩ U_{<=d})
            //   = rank(span ∪ unit rows of U_{<=d}) - rank(span)
            let mut joined = span.clone();
            for len in 0..=d {
                for w in mode0_monomials(gens, len) {
                    let mut row = SparseRow::new();
                    row.insert(cols.col(&w), Rat::one());
                    joined.insert(row);
                }
            }
            value = joined.rank() - span.rank();
            if last == Some(value) {
                break;
            }
            last = Some(value);
        }
        out.push(value);
    }
    Ok(out)
}

fn dim_u_leq(gens: usize, d: usize) -> usize {
    (0..=d).map(|len| count_multisets(gens, len)).sum()
}

fn count_multisets(gens: usize, len: usize) -> usize {
    // C(gens + len - 1, len)
    if len == 0 {
        return 1;
    }
    let mut num = 1usize;
    let mut den = 1usize;
    for i in 0..len {
        num *= gens + i;
        den *= i + 1;
    }
    num / den
}

/// Sorted mode-0 words of exactly the given length.
fn mode0_monomials(gens: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut word: Vec<usize> = Vec::new();
    fn rec(gens: usize, min: usize, left: usize, word: &mut Vec<usize>, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(
                word.iter().map(|&g| super::ModeOp { mode: Rat::zero(), gen: g }).collect(),
            );
            return;
        }
        for g in min..gens {
            word.push(g);
            rec(gens, g, left - 1, word, out);
            word.pop();
        }
    }
    rec(gens, 0, len, &mut word, &mut out);
    out
}

/// Render a relation list deterministically.
pub fn render_relations(relations: &[Relation], generators: &[NamedGenerator]) -> Vec<String> {
    relations.iter().map(|r| r.render(generators)).collect()
}
