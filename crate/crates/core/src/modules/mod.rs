//! Desk-scale positive-energy module harness: modules induced from a
//! Zhu-algebra module N sitting at degree p, with a PBW basis of
//! strictly negative modes over N and exact lazy action.
//!
//! The induced module is used directly as a V(R)-module: for universal
//! enveloping vertex algebras every restricted Lie(R)-module is already
//! a V(R)-module, and the module-side checks certify exactly that (the
//! Borcherds defect vanishes identically on these modules).

pub mod checks;
pub mod json;

use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::envelope::{ModeAlgebra, ModeOp, UEElement, Word};
use crate::scalar::{rat_int, PolyScalar, Rat, Symbol};
use crate::vertex::VertexAlgebra;
use crate::{Error, Result};

/// The degree-p input module N: matrices for a finite list of degree-0
/// normal-form words. Matrices act on column vectors; entry (r, c) is
/// row r, column c.
#[derive(Clone, Debug)]
pub struct ZhuModuleInput {
    pub label: String,
    pub dimension: usize,
    pub p: i64,
    pub actions: Vec<(Word, Vec<Vec<PolyScalar>>)>,
}

impl ZhuModuleInput {
    /// The rank-one module of the Virasoro Verma family: L_0 acts by
    /// the symbol lambda (or a given exact value).
    pub fn verma(algebra: &ModeAlgebra, highest_weight: Option<Rat>) -> Result<Self> {
        let l = algebra
            .spec()
            .gen_index("L")
            .ok_or_else(|| Error::pre("verma preset needs a generator named L"))?;
        let value = match highest_weight {
            Some(r) => PolyScalar::from_rat(r),
            None => PolyScalar::sym(Symbol::Lambda),
        };
        Ok(ZhuModuleInput {
            label: "verma".to_string(),
            dimension: 1,
            p: 0,
            actions: vec![(vec![algebra.mode_i(l, 0)?], vec![vec![value]])],
        })
    }

    /// The one-dimensional trivial module over the degree-0 part of the
    /// current algebra: every zero mode acts by 0.
    pub fn trivial_current(algebra: &ModeAlgebra) -> Result<Self> {
        let mut actions = Vec::new();
        for g in 0..algebra.spec().gen_count() {
            actions.push((vec![algebra.mode_i(g, 0)?], vec![vec![PolyScalar::zero()]]));
        }
        Ok(ZhuModuleInput {
            label: "trivial".to_string(),
            dimension: 1,
            p: 0,
            actions,
        })
    }

    fn matrix_for(&self, word: &Word) -> Option<&Vec<Vec<PolyScalar>>> {
        self.actions.iter().find(|(w, _)| w == word).map(|(_, m)| m)
    }

    fn validate_shapes(&self) -> Result<()> {
        for (w, m) in &self.actions {
            if m.len() != self.dimension || m.iter().any(|row| row.len() != self.dimension) {
                return Err(Error::SpecError(format!(
                    "matrix for word of length {} is not {}x{}",
                    w.len(),
                    self.dimension,
                    self.dimension
                )));
            }
        }
        Ok(())
    }

    /// Matrix of a word over the listed action words (product of the
    /// letter matrices, left factor acting last).
    fn word_matrix(&self, indices: &[usize]) -> Vec<Vec<PolyScalar>> {
        let n = self.dimension;
        let mut acc = identity(n);
        for &i in indices {
            acc = mat_mul(&acc, &self.actions[i].1);
        }
        acc
    }
}

fn identity(n: usize) -> Vec<Vec<PolyScalar>> {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { PolyScalar::one() } else { PolyScalar::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<PolyScalar>], b: &[Vec<PolyScalar>]) -> Vec<Vec<PolyScalar>> {
    let n = a.len();
    let mut out = vec![vec![PolyScalar::zero(); n]; n];
    for r in 0..n {
        for c in 0..n {
            let mut acc = PolyScalar::zero();
            for t in 0..n {
                acc += &(&a[r][t] * &b[t][c]);
            }
            out[r][c] = acc;
        }
    }
    out
}

/// A vector of the induced module: coefficients over pairs (strictly
/// negative sorted mode word, N-basis index).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MVector {
    terms: BTreeMap<(Word, usize), PolyScalar>,
}

impl MVector {
    pub fn zero() -> Self {
        MVector::default()
    }

    pub fn basis(word: Word, idx: usize) -> Self {
        let mut v = MVector::default();
        v.terms.insert((word, idx), PolyScalar::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&(Word, usize), &PolyScalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: (Word, usize), coeff: PolyScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn add(&self, other: &MVector) -> MVector {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MVector) -> MVector {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &PolyScalar) -> MVector {
        if s.is_zero() {
            return MVector::zero();
        }
        MVector { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect() }
    }
}

/// The induced module at degree p over N, truncated at a depth cutoff.
pub struct InducedModule {
    pub input: ZhuModuleInput,
    pub p: i64,
    pub depth_cutoff: i64,
    modes: ModeAlgebra,
    /// basis grouped by depth above p: basis[d] lists the mode words of
    /// degree p + d (without the N index)
    words_by_depth: Vec<Vec<Word>>,
}

/// Build the induced module. Validates the matrix shapes and that the
/// action respects every relation found at the same p.
pub fn induce(
    algebra: &VertexAlgebra,
    input: ZhuModuleInput,
    p: i64,
    depth_cutoff: i64,
) -> Result<InducedModule> {
    if input.p != p {
        return Err(Error::pre(format!(
            "module input is declared at p = {}, requested p = {p}",
            input.p
        )));
    }
    input.validate_shapes()?;
    let modes = ModeAlgebra::new(algebra.spec().clone())?;
    for (w, _) in &input.actions {
        if !UEElement::word_degree(w).is_zero() {
            return Err(Error::pre("action words must be degree-0"));
        }
    }
    // relations at the same p among the action words must hold for the
    // matrices
    let gens: Vec<crate::envelope::relations::NamedGenerator> = input
        .actions
        .iter()
        .map(|(w, _)| crate::envelope::relations::NamedGenerator {
            name: modes.display_word(w),
            element: modes.monomial(w.clone(), PolyScalar::one()),
        })
        .collect();
    let cutoff = 4usize.min(2 + input.actions.len());
    let relations = crate::envelope::relations::find_relations(&modes, p, &gens, cutoff)?;
    for rel in &relations {
        let n = input.dimension;
        let mut acc = vec![vec![PolyScalar::zero(); n]; n];
        for (word, coeff) in &rel.combo {
            let m = input.word_matrix(word);
            for r in 0..n {
                for c in 0..n {
                    acc[r][c] += &(&m[r][c] * coeff);
                }
            }
        }
        if acc.iter().any(|row| row.iter().any(|e| !e.is_zero())) {
            return Err(Error::SpecError(format!(
                "module `{}` violates the level-{p} relation {}",
                input.label,
                rel.render(&gens)
            )));
        }
    }
    // PBW basis of strictly negative modes, by depth
    let mut words_by_depth: Vec<Vec<Word>> = vec![Vec::new(); depth_cutoff as usize + 1];
    let mut letters = Vec::new();
    for g in 0..algebra.spec().gen_count() {
        for n in -depth_cutoff..=-1 {
            letters.push(ModeOp { mode: rat_int(n), gen: g });
        }
    }
    letters.sort();
    let mut word: Word = Vec::new();
    enum_negative_words(&letters, 0, depth_cutoff, &mut word, &mut |w: &Word| {
        let depth = -crate::scalar::rat_floor_i64(&UEElement::word_degree(w));
        words_by_depth[depth as usize].push(w.clone());
    });
    Ok(InducedModule { input, p, depth_cutoff, modes, words_by_depth })
}

fn enum_negative_words(
    letters: &[ModeOp],
    min: usize,
    budget: i64,
    word: &mut Word,
    sink: &mut impl FnMut(&Word),
) {
    sink(word);
    for i in min..letters.len() {
        let cost = -crate::scalar::rat_floor_i64(&letters[i].mode);
        if cost <= budget {
            word.push(letters[i].clone());
            enum_negative_words(letters, i, budget - cost, word, sink);
            word.pop();
        }
    }
}

impl InducedModule {
    pub fn modes(&self) -> &ModeAlgebra {
        &self.modes
    }

    /// Basis vectors at module degree p + depth.
    pub fn basis_at_depth(&self, depth: i64) -> Vec<MVector> {
        if depth < 0 || depth > self.depth_cutoff {
            return Vec::new();
        }
        let mut out = Vec::new();
        for w in &self.words_by_depth[depth as usize] {
            for i in 0..self.input.dimension {
                out.push(MVector::basis(w.clone(), i));
            }
        }
        out
    }

    pub fn all_basis(&self) -> Vec<(i64, MVector)> {
        (0..=self.depth_cutoff)
            .flat_map(|d| self.basis_at_depth(d).into_iter().map(move |v| (d, v)))
            .collect()
    }

    /// Weight-space dimensions at depths 0..=cutoff.
    pub fn depth_dims(&self) -> Vec<usize> {
        self.words_by_depth.iter().map(|ws| ws.len() * self.input.dimension).collect()
    }

    /// Module degree of a basis key.
    pub fn degree_of(&self, word: &Word) -> i64 {
        self.p - crate::scalar::rat_floor_i64(&UEElement::word_degree(word))
    }

    /// Exact action of a single mode a_n. The result degree must stay
    /// within [p, p + depth_cutoff].
    pub fn act(&self, op: &ModeOp, v: &MVector) -> Result<MVector> {
        let mut out = MVector::zero();
        for ((w, i), c) in v.iter_terms() {
            let mut full = Vec::with_capacity(w.len() + 1);
            full.push(op.clone());
            full.extend_from_slice(w);
            let nf = self.modes.normalize_word(&full, c.clone());
            for (sorted, coeff) in nf.iter_terms() {
                let ev = self.eval_word(sorted, *i)?;
                out = out.add(&ev.scale(coeff));
            }
        }
        Ok(out)
    }

    /// Evaluate a sorted mode word applied to the N-basis vector x_i.
    /// Strictly negative prefixes index basis vectors; the maximal
    /// degree-0 suffix acts through the N matrices; modes above p kill
    /// N; anything else is outside the truncated basis.
    fn eval_word(&self, word: &Word, i: usize) -> Result<MVector> {
        // split: negative part, then the tail starting at the first
        // non-negative mode
        let split = word.iter().position(|m| !m.mode.is_negative()).unwrap_or(word.len());
        let (neg, tail) = word.split_at(split);
        if tail.is_empty() {
            let depth = -crate::scalar::rat_floor_i64(&UEElement::word_degree(&neg.to_vec()));
            if depth > self.depth_cutoff {
                return Err(Error::DepthBreach {
                    degree: self.p + depth,
                    min: self.p,
                    max: self.p + self.depth_cutoff,
                });
            }
            return Ok(MVector::basis(neg.to_vec(), i));
        }
        // rightmost mode beyond p kills N
        let last = tail.last().unwrap();
        if last.mode > rat_int(self.p) {
            return Ok(MVector::zero());
        }
        // smallest zero-sum suffix
        let mut sum = Rat::zero();
        let mut t = word.len();
        let mut found = None;
        while t > 0 {
            t -= 1;
            sum += &word[t].mode;
            if sum.is_zero() {
                found = Some(t);
                break;
            }
        }
        let Some(t) = found else {
            return Err(Error::MissingActionWord(self.modes.display_word(&word.to_vec())));
        };
        let suffix: Word = word[t..].to_vec();
        let matrix = self
            .input
            .matrix_for(&suffix)
            .ok_or_else(|| Error::MissingActionWord(self.modes.display_word(&suffix)))?;
        let prefix: Word = word[..t].to_vec();
        let mut out = MVector::zero();
        for (j, row) in matrix.iter().enumerate() {
            let c = &row[i];
            if c.is_zero() {
                continue;
            }
            let ev = self.eval_word(&prefix, j)?;
            out = out.add(&ev.scale(c));
        }
        Ok(out)
    }

    /// Render a vector for reports.
    pub fn display_vector(&self, v: &MVector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for ((w, i), c) in v.iter_terms() {
            let head = if w.is_empty() {
                format!("x{i}")
            } else {
                format!("{} x{i}", self.modes.display_word(w))
            };
            if c.is_one() {
                parts.push(head);
            } else if c.num_terms() == 1 && !c.to_string().contains(' ') {
                parts.push(format!("{c} {head}"));
            } else {
                parts.push(format!("({c}) {head}"));
            }
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests;
