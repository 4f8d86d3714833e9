//! Small exact linear algebra over a field: incremental echelon forms and
//! kernels of sparse matrices.

use std::collections::BTreeMap;

use crate::ring::{Field, SparseRow};

/// Row space in echelon form; rows are kept monic and keyed by pivot.
pub(crate) struct Echelon<'f, F: Field> {
    field: &'f F,
    pivots: BTreeMap<usize, SparseRow<F::Elem>>,
}

impl<'f, F: Field> Echelon<'f, F> {
    pub fn new(field: &'f F) -> Self {
        Echelon { field, pivots: BTreeMap::new() }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the pivots.
    pub fn reduce(&self, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        let f = self.field;
        let mut k = 0;
        while k < row.len() {
            let (col, c) = row[k].clone();
            if let Some(p) = self.pivots.get(&col) {
                row = axpy(f, &row, &f.neg(&c), p);
            } else {
                k += 1;
            }
        }
        row
    }

    /// Adds `row` to the space; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow<F::Elem>) -> bool {
        let row = self.reduce(row);
        let Some((lead, c)) = row.first().cloned() else { return false };
        let f = self.field;
        let inv = f.inv(&c);
        let monic: SparseRow<F::Elem> = row.into_iter().map(|(k, v)| (k, f.mul(&v, &inv))).collect();
        // keep the form reduced so that kernels can be read off
        for p in self.pivots.values_mut() {
            if let Ok(pos) = p.binary_search_by_key(&lead, |t| t.0) {
                let coef = p[pos].1.clone();
                *p = axpy(f, p, &f.neg(&coef), &monic);
            }
        }
        self.pivots.insert(lead, monic);
        true
    }
}

pub(crate) fn axpy<F: Field>(f: &F, a: &SparseRow<F::Elem>, s: &F::Elem, b: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(s, &b[j].1)));
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(s, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Basis of `{ v : sum_k v_k * columns[k] = 0 }`, each vector sparse over
/// column indices.
pub(crate) fn kernel<F: Field>(field: &F, columns: &[SparseRow<F::Elem>]) -> Vec<SparseRow<F::Elem>> {
    // eliminate on the rows of the matrix whose columns are `columns`
    let mut rows: BTreeMap<usize, SparseRow<F::Elem>> = BTreeMap::new();
    for (k, col) in columns.iter().enumerate() {
        for (r, v) in col {
            rows.entry(*r).or_default().push((k, v.clone()));
        }
    }
    let mut ech = Echelon::new(field);
    for (_, row) in rows {
        ech.insert(row);
    }
    let free: Vec<usize> = (0..columns.len()).filter(|k| !ech.pivots.contains_key(k)).collect();
    free.iter()
        .map(|&fcol| {
            // v_fcol = 1, v_pivot = -(entry of the pivot row at fcol)
            let mut v: SparseRow<F::Elem> = vec![(fcol, field.one())];
            for (&p, row) in &ech.pivots {
                if let Ok(pos) = row.binary_search_by_key(&fcol, |t| t.0) {
                    v.push((p, field.neg(&row[pos].1)));
                }
            }
            v.sort_by_key(|t| t.0);
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;

    #[test]
    fn kernel_of_a_rank_one_map() {
        let f = PrimeField::new(7).unwrap();
        // columns (1,2), (2,4), (0,1)
        let cols = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)], vec![(1, 1)]];
        let k = kernel(&f, &cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![(0, 5), (1, 1)]);
    }

    #[test]
    fn echelon_rank() {
        let f = PrimeField::new(5).unwrap();
        let mut e = Echelon::new(&f);
        assert!(e.insert(vec![(0, 1), (2, 3)]));
        assert!(!e.insert(vec![(0, 2), (2, 1)]));
        assert!(e.insert(vec![(1, 4)]));
        assert_eq!(e.rank(), 2);
    }
}
