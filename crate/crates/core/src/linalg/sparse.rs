use std::collections::BTreeMap;

use num_traits::Zero;

use super::rational::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Incremental Gaussian elimination over sparse rows.
///
/// Rows are pushed one at a time and reduced against the pivots seen so far;
/// [`SparseEliminator::into_rref`] back-substitutes to the reduced form.
/// Column order is the numeric order of column indices, so callers choose
/// which unknowns become pivots by how they number them.
#[derive(Debug, Default, Clone)]
pub struct SparseEliminator {
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEliminator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .map(|(c, _)| *c)
                .find(|c| self.pivots.contains_key(c));
            let Some(col) = next else { break };
            let factor = row[&col].clone();
            for (c, v) in &self.pivots[&col] {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
            cursor = col + 1;
        }
        row
    }

    /// Adds a row; returns true if it was independent of earlier rows.
    pub fn push(&mut self, row: SparseRow) -> bool {
        let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut row = self.reduce(row);
        let Some((&lead, lead_val)) = row.iter().next() else {
            return false;
        };
        let inv = lead_val.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        self.pivots.insert(lead, row);
        true
    }

    /// Fully reduced rows keyed by pivot column.
    pub fn into_rref(self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (col, row) in self.pivots.into_iter().rev() {
            let mut row = row;
            let later: Vec<usize> = row
                .keys()
                .copied()
                .filter(|c| *c != col && done.contains_key(c))
                .collect();
            for c in later {
                let Some(factor) = row.get(&c).cloned() else { continue };
                for (cc, v) in &done[&c] {
                    let e = row.entry(*cc).or_insert_with(Rational::zero);
                    *e -= &factor * v;
                    if e.is_zero() {
                        row.remove(cc);
                    }
                }
            }
            done.insert(col, row);
        }
        done
    }
}
