//! Incremental exact row reduction over Q, shared by the ideal oracle,
//! the J-span membership tests and relation discovery. Rows are sparse
//! maps from column index to rational.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::scalar::Rat;

pub type SparseRow = BTreeMap<usize, Rat>;

/// Column indexing for an arbitrary ordered key type.
#[derive(Clone, Debug, Default)]
pub struct ColSpace<K: Ord + Clone> {
    index: BTreeMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Ord + Clone> ColSpace<K> {
    pub fn new() -> Self {
        ColSpace { index: BTreeMap::new(), keys: Vec::new() }
    }

    pub fn col(&mut self, key: &K) -> usize {
        if let Some(&i) = self.index.get(key) {
            return i;
        }
        let i = self.keys.len();
        self.keys.push(key.clone());
        self.index.insert(key.clone(), i);
        i
    }

    pub fn lookup(&self, key: &K) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn key(&self, col: usize) -> &K {
        &self.keys[col]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Row-echelon accumulator. Rows are normalized to a unit leading
/// coefficient; pivots are keyed by leading column.
#[derive(Clone, Debug, Default)]
pub struct RowReducer {
    /// pivot column -> index into `rows`
    pivots: BTreeMap<usize, usize>,
    rows: Vec<SparseRow>,
}

fn axpy(target: &mut SparseRow, coeff: &Rat, source: &SparseRow) {
    for (&col, val) in source {
        let entry = target.entry(col).or_insert_with(Rat::zero);
        *entry += coeff * val;
        if entry.is_zero() {
            target.remove(&col);
        }
    }
}

impl RowReducer {
    pub fn new() -> Self {
        RowReducer::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminate every pivot column from `row`; the residual is zero
    /// iff `row` lies in the current span.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let lead = match row.keys().next() {
                Some(&c) => c,
                None => return row,
            };
            match self.pivots.get(&lead) {
                Some(&ri) => {
                    let lead_val = row[&lead].clone();
                    let minus = -lead_val;
                    axpy(&mut row, &minus, &self.rows[ri]);
                }
                None => return row,
            }
        }
    }

    /// Reduce and, if the residual is nonzero, adopt it as a new pivot
    /// row. Returns true when the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut residual = self.reduce(row);
        let lead = match residual.keys().next() {
            Some(&c) => c,
            None => return false,
        };
        let lead_val = residual[&lead].clone();
        if !lead_val.is_one() {
            for v in residual.values_mut() {
                *v /= &lead_val;
            }
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(residual);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }
}

/// Solve sum_i x_i v_i = target exactly. Returns None when the target
/// is outside the span of the given vectors.
pub fn solve_combination(vectors: &[SparseRow], target: &SparseRow) -> Option<Vec<Rat>> {
    // Augment each vector with a tracking coordinate and reduce the
    // target; the tracking part of the residual is minus the solution.
    let ncols = vectors
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|r| r.keys().copied())
        .max()
        .map(|m| m + 1)
        .unwrap_or(0);
    let mut reducer = RowReducer::new();
    let mut tracked: Vec<SparseRow> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut row = v.clone();
        row.insert(ncols + i, Rat::one());
        tracked.push(row);
    }
    for row in tracked {
        reducer.insert(row);
    }
    let residual = reducer.reduce(target.clone());
    // the residual must be supported purely on tracking columns
    if residual.keys().any(|&c| c < ncols) {
        return None;
    }
    let mut solution = vec![Rat::zero(); vectors.len()];
    for (&col, val) in &residual {
        solution[col - ncols] = -val.clone();
    }
    Some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, rat_int(v))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut r = RowReducer::new();
        assert!(r.insert(row(&[(0, 1), (1, 2)])));
        assert!(r.insert(row(&[(1, 1), (2, 1)])));
        assert!(!r.insert(row(&[(0, 2), (1, 6), (2, 2)])));
        assert_eq!(r.rank(), 2);
        assert!(r.contains(&row(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!r.contains(&row(&[(2, 1)])));
    }

    #[test]
    fn combination_solving() {
        let v = vec![row(&[(0, 1), (1, 1)]), row(&[(1, 1), (2, 1)])];
        let target = row(&[(0, 2), (1, 5), (2, 3)]);
        let sol = solve_combination(&v, &target).unwrap();
        assert_eq!(sol, vec![rat_int(2), rat_int(3)]);
        assert!(solve_combination(&v, &row(&[(0, 1)])).is_none());
    }
}
