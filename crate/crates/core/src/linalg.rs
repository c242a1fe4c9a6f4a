//! Sparse vectors and incremental exact elimination.

use crate::scalars::{Field, Scalar};

/// Sorted `(index, nonzero value)` pairs.
pub type SparseVec = Vec<(u32, Scalar)>;

/// `acc += c · v` into a dense accumulator.
pub fn axpy_dense(field: &Field, acc: &mut [Scalar], c: &Scalar, v: &SparseVec) {
    if field.is_one(c) {
        for (i, x) in v {
            let slot = &mut acc[*i as usize];
            *slot = field.add(slot, x);
        }
    } else {
        for (i, x) in v {
            let slot = &mut acc[*i as usize];
            *slot = field.mul_add(slot, c, x);
        }
    }
}

pub fn to_sparse(field: &Field, dense: &[Scalar]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

/// Drains a dense accumulator into sparse form, resetting it to zero.
pub fn drain_sparse(field: &Field, dense: &mut [Scalar], touched: &mut Vec<u32>) -> SparseVec {
    touched.sort_unstable();
    touched.dedup();
    let zero = field.zero();
    let mut out = Vec::with_capacity(touched.len());
    for &i in touched.iter() {
        let x = std::mem::replace(&mut dense[i as usize], zero.clone());
        if !field.is_zero(&x) {
            out.push((i, x));
        }
    }
    touched.clear();
    out
}

/// Applies a linear map given by the images of basis vectors.
pub fn apply_map(field: &Field, columns: &[SparseVec], v: &SparseVec, dim: usize) -> SparseVec {
    let mut acc = vec![field.zero(); dim];
    for (i, c) in v {
        axpy_dense(field, &mut acc, c, &columns[*i as usize]);
    }
    to_sparse(field, &acc)
}

pub fn scale(field: &Field, c: &Scalar, v: &SparseVec) -> SparseVec {
    if field.is_one(c) {
        return v.clone();
    }
    v.iter()
        .map(|(i, x)| (*i, field.mul(c, x)))
        .filter(|(_, x)| !field.is_zero(x))
        .collect()
}

/// `a + c·b`
pub fn add_scaled(field: &Field, a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map_or(u32::MAX, |e| e.0);
        let kb = b.get(j).map_or(u32::MAX, |e| e.0);
        let (k, x) = if ka < kb {
            i += 1;
            (ka, a[i - 1].1.clone())
        } else if kb < ka {
            j += 1;
            (kb, field.mul(c, &b[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ka, field.mul_add(&a[i - 1].1, c, &b[j - 1].1))
        };
        if !field.is_zero(&x) {
            out.push((k, x));
        }
    }
    out
}

pub fn get(v: &SparseVec, i: u32) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |(j, _)| *j)
        .ok()
        .map(|k| &v[k].1)
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// New basis vector with this index.
    Independent(usize),
    /// Coordinates in terms of the accepted basis vectors.
    Dependent(SparseVec),
}

/// Semi-echelon form over the accepted vectors, built one vector at a time.
///
/// Each row has a pivot column with coefficient 1 and vanishes at the pivots
/// of all earlier rows. Rows remember how they combine the accepted vectors,
/// so dependent inputs are returned as coordinates in the accepted basis.
pub struct Echelon<'a> {
    field: &'a Field,
    width: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<u32>,
    combos: Vec<SparseVec>,
    scratch: Vec<Scalar>,
    combo_scratch: Vec<Scalar>,
}

impl<'a> Echelon<'a> {
    pub fn new(field: &'a Field, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            scratch: vec![field.zero(); width],
            combo_scratch: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, v: &SparseVec) -> Insert {
        let f = self.field;
        let rank = self.rows.len();
        for (i, x) in v {
            self.scratch[*i as usize] = x.clone();
        }
        let mut touched: Vec<u32> = v.iter().map(|(i, _)| *i).collect();
        self.combo_scratch.clear();
        self.combo_scratch.resize(rank, f.zero());
        let mut combo_touched: Vec<u32> = Vec::new();
        for k in 0..rank {
            let p = self.pivots[k] as usize;
            if f.is_zero(&self.scratch[p]) {
                continue;
            }
            let a = self.scratch[p].clone();
            let neg = f.neg(&a);
            for (i, x) in &self.rows[k] {
                let slot = &mut self.scratch[*i as usize];
                *slot = f.mul_add(slot, &neg, x);
                touched.push(*i);
            }
            for (j, y) in &self.combos[k] {
                let slot = &mut self.combo_scratch[*j as usize];
                *slot = f.mul_add(slot, &a, y);
                combo_touched.push(*j);
            }
        }
        let residual = drain_sparse(f, &mut self.scratch, &mut touched);
        let mut coords = drain_sparse(f, &mut self.combo_scratch, &mut combo_touched);
        if residual.is_empty() {
            return Insert::Dependent(coords);
        }
        // pivot: smallest coefficient height, then first column
        let (pos, _) = residual
            .iter()
            .enumerate()
            .min_by_key(|(k, (_, x))| (f.height(x), *k))
            .unwrap();
        let pivot = residual[pos].0;
        let inv = f.inv(&residual[pos].1).expect("nonzero pivot");
        let row = scale(f, &inv, &residual);
        // row = (v - Σ coords_j b_j) / piv, and v is the new basis vector `rank`
        let new_index = rank;
        let neg_inv = f.neg(&inv);
        coords = scale(f, &neg_inv, &coords);
        coords.push((new_index as u32, inv));
        self.rows.push(row);
        self.pivots.push(pivot);
        self.combos.push(coords);
        Insert::Independent(new_index)
    }
}
