use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::ring::{Rational, RingMatrix};

/// Sparse real matrix in compressed-row form.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds an `n × n` matrix from `(row, col, value)` triplets without duplicates.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut indptr = alloc::vec![0; n + 1];
        for &(r, _, _) in &triplets {
            indptr[r + 1] += 1;
        }
        for i in 0..n {
            indptr[i + 1] += indptr[i];
        }
        let indices = triplets.iter().map(|t| t.1).collect();
        let values = triplets.iter().map(|t| t.2).collect();
        Self { n, indptr, indices, values }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate().take(self.n) {
            let (a, b) = (self.indptr[i], self.indptr[i + 1]);
            *yi = self.indices[a..b].iter().zip(&self.values[a..b]).map(|(&j, v)| v * x[j]).sum();
        }
    }

    /// Largest absolute row sum, equal to the largest column sum for symmetric matrices.
    pub fn max_abs_row_sum(&self) -> f64 {
        (0..self.n)
            .map(|i| self.values[self.indptr[i]..self.indptr[i + 1]].iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.indptr[i], self.indptr[i + 1]);
        match self.indices[a..b].binary_search(&j) {
            Ok(k) => self.values[a + k],
            Err(_) => 0.0,
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.n * self.n];
        for i in 0..self.n {
            for k in self.indptr[i]..self.indptr[i + 1] {
                out[i * self.n + self.indices[k]] = self.values[k];
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| {
            (self.indptr[i]..self.indptr[i + 1]).all(|k| self.get(self.indices[k], i) == self.values[k])
        })
    }
}

/// A ring matrix restricted to the span of a Cayley ball.
///
/// Basis vector `(h, i)` has index `i·|ball| + position(h)`, and the entry at row `(h, i)`,
/// column `(g, j)` is the coefficient of `A_ij` at `h g⁻¹`.
#[derive(Clone, Debug)]
pub struct CompressedOperator {
    pub ball: Vec<GroupElement>,
    pub copies: usize,
    pub matrix: CsrMatrix,
}

impl CompressedOperator {
    pub fn index(&self, copy: usize, position: usize) -> usize {
        copy * self.ball.len() + position
    }
}

/// Calls `f(row, col, coefficient)` for every nonzero entry of the compression.
fn visit_entries(
    a: &RingMatrix,
    ball: &[GroupElement],
    mut f: impl FnMut(usize, usize, &Rational),
) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let spec = a.spec();
    let position: HashMap<&GroupElement, usize> = ball.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let b = ball.len();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for (u, c) in a.get(i, j).terms() {
                for (gpos, g) in ball.iter().enumerate() {
                    if let Some(&hpos) = position.get(&spec.mul(u, g)) {
                        f(i * b + hpos, j * b + gpos, c);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Exact entries of the compression onto `ball(radius)`, keyed by (row, column).
pub fn compress_exact(a: &RingMatrix, radius: usize) -> Result<(Vec<GroupElement>, BTreeMap<(usize, usize), Rational>)> {
    let ball = a.spec().ball(radius);
    let mut out = BTreeMap::new();
    visit_entries(a, &ball, |r, c, v| {
        out.insert((r, c), v.clone());
    })?;
    Ok((ball, out))
}

/// Floating-point compression onto `ball(radius)`.
pub fn compress(a: &RingMatrix, radius: usize) -> Result<CompressedOperator> {
    compress_onto(a, a.spec().ball(radius))
}

/// Floating-point compression onto an explicit ball.
pub fn compress_onto(a: &RingMatrix, ball: Vec<GroupElement>) -> Result<CompressedOperator> {
    let mut triplets = Vec::new();
    visit_entries(a, &ball, |r, c, v| triplets.push((r, c, v.to_f64().unwrap_or(f64::NAN))))?;
    let n = a.rows() * ball.len();
    Ok(CompressedOperator { ball, copies: a.rows(), matrix: CsrMatrix::from_triplets(n, triplets) })
}
