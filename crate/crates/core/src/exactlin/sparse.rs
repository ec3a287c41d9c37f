//! Sparse row reduction for large, very sparse relation systems.
//!
//! The coend computations in `transport` produce thousands of relations with a
//! handful of nonzero entries each. [`SparseQuotient`] reduces them to reduced
//! row echelon form incrementally and exposes the quotient by their span on the
//! non-pivot coordinates, matching [`quotient_map`](super::quotient_map).

use std::collections::BTreeMap;

use super::{RatMatrix, Rational};

/// Sorted `(index, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Rational)>;

/// Adds `coeff * v` into an accumulator, dropping cancelled entries.
pub fn axpy(acc: &mut BTreeMap<usize, Rational>, coeff: &Rational, v: &[(usize, Rational)]) {
    for (j, x) in v {
        let d = coeff * x;
        match acc.get_mut(j) {
            Some(e) => {
                *e += &d;
                if e.is_zero() {
                    acc.remove(j);
                }
            }
            None => {
                if !d.is_zero() {
                    acc.insert(*j, d);
                }
            }
        }
    }
}

/// The quotient of `k^ambient` by the span of a family of sparse relations.
#[derive(Clone, Debug)]
pub struct SparseQuotient {
    ambient: usize,
    // pivot column -> fully reduced row with leading 1 at the pivot (pivot entry omitted)
    rows: BTreeMap<usize, SparseVec>,
    complement: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl SparseQuotient {
    pub fn new<I>(ambient: usize, relations: I) -> Self
    where
        I: IntoIterator<Item = SparseVec>,
    {
        let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for rel in relations {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (j, x) in rel {
                assert!(j < ambient, "relation index {j} outside ambient {ambient}");
                axpy(&mut acc, &Rational::one(), &[(j, x)]);
            }
            // reduce leading entries until the lead is a fresh pivot
            let mut lead = None;
            while let Some((&j, x)) = acc.iter().next() {
                match rows.get(&j) {
                    Some(row) => {
                        let c = -x;
                        acc.remove(&j);
                        axpy(&mut acc, &c, row);
                    }
                    None => {
                        lead = Some(j);
                        break;
                    }
                }
            }
            let Some(p) = lead else { continue };
            let inv = acc.remove(&p).expect("lead").recip();
            let row: SparseVec = acc.into_iter().map(|(j, x)| (j, x * &inv)).collect();
            rows.insert(p, row);
        }

        // back substitution, highest pivot first
        let pivots: Vec<usize> = rows.keys().rev().copied().collect();
        for &p in &pivots {
            let row = rows.get(&p).expect("pivot row").clone();
            if !row.iter().any(|(j, _)| rows.contains_key(j)) {
                continue;
            }
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (j, x) in row {
                match rows.get(&j) {
                    Some(other) => axpy(&mut acc, &-&x, other),
                    None => axpy(&mut acc, &Rational::one(), &[(j, x)]),
                }
            }
            rows.insert(p, acc.into_iter().collect());
        }

        let mut position = vec![None; ambient];
        let mut complement = Vec::new();
        for (j, slot) in position.iter_mut().enumerate() {
            if !rows.contains_key(&j) {
                *slot = Some(complement.len());
                complement.push(j);
            }
        }
        SparseQuotient {
            ambient,
            rows,
            complement,
            position,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Rank of the relation span.
    pub fn relation_rank(&self) -> usize {
        self.rows.len()
    }

    /// Ambient coordinates whose classes form the quotient basis, in order.
    pub fn basis_coordinates(&self) -> &[usize] {
        &self.complement
    }

    pub fn is_pivot(&self, j: usize) -> bool {
        self.rows.contains_key(&j)
    }

    /// Quotient coordinates of the class of a sparse ambient vector.
    pub fn project(&self, v: &[(usize, Rational)]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (j, x) in v {
            if x.is_zero() {
                continue;
            }
            match self.rows.get(j) {
                None => {
                    let k = self.position[*j].expect("complement coordinate");
                    out[k] += x;
                }
                Some(row) => {
                    for (c, y) in row {
                        let k = self.position[*c].expect("reduced row off complement");
                        out[k] -= &(x * y);
                    }
                }
            }
        }
        out
    }

    /// Dense projection matrix `dim x ambient`.
    pub fn projection_matrix(&self) -> RatMatrix {
        let mut q = RatMatrix::zeros(self.dim(), self.ambient);
        for j in 0..self.ambient {
            let col = self.project(&[(j, Rational::one())]);
            for (i, x) in col.into_iter().enumerate() {
                if !x.is_zero() {
                    q[(i, j)] = x;
                }
            }
        }
        q
    }
}
