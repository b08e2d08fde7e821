//! Sparse incremental row echelon form over a field, with optional tag
//! tracking so a reduced vector remembers which tagged inputs it combines.

use std::collections::{BTreeMap, HashMap};

use crate::field::FieldElement;

pub type SparseVec = BTreeMap<usize, FieldElement>;

fn axpy(target: &mut SparseVec, c: &FieldElement, v: &SparseVec) {
    for (k, x) in v {
        let delta = c * x;
        match target.get_mut(k) {
            Some(y) => {
                *y -= &delta;
                if y.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                target.insert(*k, -delta);
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(SparseVec, SparseVec)>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows, subtracting the same combination from `tag`.
    pub fn reduce(&self, mut v: SparseVec, mut tag: SparseVec) -> (SparseVec, SparseVec) {
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else {
                return (v, tag);
            };
            let (row, row_tag) = &self.rows[self.pivots[&k]];
            axpy(&mut v, &c, row);
            axpy(&mut tag, &c, row_tag);
            cursor = k + 1;
        }
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: SparseVec, tag: SparseVec) -> bool {
        let (v, tag) = self.reduce(v, tag);
        let Some((&pivot, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let scale = |x: SparseVec| -> SparseVec { x.into_iter().map(|(k, c)| (k, &c * &inv)).collect() };
        let (v, tag) = (scale(v), scale(tag));
        // Keep stored rows free of the new pivot so `reduce` never revisits a column.
        for (row, row_tag) in &mut self.rows {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &c, &v);
                axpy(row_tag, &c, &tag);
            }
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push((v, tag));
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v, SparseVec::new()).0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn vec_of(k: &Field, entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, k.from_int(c))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let k = Field::rationals();
        let mut e = Echelon::new();
        assert!(e.insert(vec_of(&k, &[(0, 1), (1, 1)]), SparseVec::new()));
        assert!(e.insert(vec_of(&k, &[(1, 1), (2, 1)]), SparseVec::new()));
        assert!(!e.insert(vec_of(&k, &[(0, 1), (2, -1)]), SparseVec::new()));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(vec_of(&k, &[(0, 2), (1, 3), (2, 1)])));
        assert!(!e.contains(vec_of(&k, &[(2, 1)])));
    }

    #[test]
    fn tags_record_coordinates() {
        let k = Field::rationals();
        let mut e = Echelon::new();
        e.insert(vec_of(&k, &[(0, 1), (1, 1)]), vec_of(&k, &[(10, 1)]));
        e.insert(vec_of(&k, &[(1, 2)]), vec_of(&k, &[(11, 1)]));
        // 3·(1,1) + 2·(0,2) = (3,7)
        let (res, tag) = e.reduce(vec_of(&k, &[(0, 3), (1, 7)]), SparseVec::new());
        assert!(res.is_empty());
        assert_eq!(tag, vec_of(&k, &[(10, -3), (11, -2)]));
    }
}
