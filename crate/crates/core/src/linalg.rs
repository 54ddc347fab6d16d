//! Dense row echelon forms over `F_p`, used by the independent oracles.

use crate::field::PrimeField;

/// Incrementally built reduced basis of a row space.
pub struct Echelon {
    field: PrimeField,
    width: usize,
    /// `(pivot column, row)` with the row normalised to 1 at its pivot.
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(field: PrimeField, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [u32]) {
        debug_assert_eq!(v.len(), self.width);
        let f = self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            let factor = f.neg(c);
            for (x, r) in v.iter_mut().zip(row).skip(*pivot) {
                if *r != 0 {
                    *x = f.add(*x, f.mul(factor, *r));
                }
            }
        }
    }

    /// Adds `v` to the row space; returns false when it was already contained.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[pivot]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep existing rows reduced at the new pivot so `reduce` is one pass
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                let factor = f.neg(c);
                for (x, r) in row.iter_mut().zip(&v).skip(pivot) {
                    *x = f.add(*x, f.mul(factor, *r));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }
}

/// Basis of the null space `{x : A x = 0}` of the matrix given by `columns`
/// (each entry is one column of length `height`).
pub fn kernel(field: PrimeField, columns: &[Vec<u32>], height: usize) -> Vec<Vec<u32>> {
    let ncols = columns.len();
    // Row-reduce [A^T | I]: rows whose A-part vanishes give kernel vectors.
    let mut ech = Echelon::new(field, height + ncols);
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = vec![0u32; height + ncols];
        v[..height].copy_from_slice(col);
        v[height + j] = 1;
        ech.reduce(&mut v);
        if v[..height].iter().all(|&x| x == 0) {
            out.push(v[height..].to_vec());
        } else {
            ech.insert(v);
        }
    }
    out
}
