use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::{Rational, RingElement, TraceFunctional};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;

/// Dense `rows × cols` matrix over ℚG, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    spec: GroupSpec,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    /// Builds a matrix from row-major entries, checking shape and group.
    pub fn new(spec: &GroupSpec, rows: usize, cols: usize, entries: Vec<RingElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            if e.spec() != spec {
                return Err(Error::SpecMismatch { left: spec.to_string(), right: e.spec().to_string() });
            }
        }
        Ok(Self { spec: spec.clone(), rows, cols, entries })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(spec: &GroupSpec, rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(spec, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(spec: &GroupSpec, rows: usize, cols: usize, f: impl Fn(usize, usize) -> RingElement) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::new(spec, rows, cols, entries).expect("entry over a different group")
    }

    pub fn zeros(spec: &GroupSpec, rows: usize, cols: usize) -> Self {
        Self::from_fn(spec, rows, cols, |_, _| RingElement::zero(spec))
    }

    pub fn identity(spec: &GroupSpec, n: usize) -> Self {
        Self::from_fn(spec, n, n, |i, j| {
            if i == j {
                RingElement::one(spec)
            } else {
                RingElement::zero(spec)
            }
        })
    }

    pub fn diag(spec: &GroupSpec, diagonal: Vec<RingElement>) -> Result<Self> {
        let n = diagonal.len();
        let mut m = Self::zeros(spec, n, n);
        for (i, d) in diagonal.into_iter().enumerate() {
            if d.spec() != spec {
                return Err(Error::SpecMismatch { left: spec.to_string(), right: d.spec().to_string() });
            }
            m.entries[i * n + i] = d;
        }
        Ok(m)
    }

    /// The 1×1 matrix holding `a`.
    pub fn scalar(a: RingElement) -> Self {
        let spec = a.spec().clone();
        Self { spec, rows: 1, cols: 1, entries: alloc::vec![a] }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn row_vecs(&self) -> Vec<Vec<RingElement>> {
        self.entries.chunks(self.cols.max(1)).map(<[_]>::to_vec).collect()
    }

    fn same_spec(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch { left: self.spec.to_string(), right: other.spec.to_string() })
        }
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RingElement::zero(&self.spec);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    for (g, x) in a.terms() {
                        for (h, y) in b.terms() {
                            acc.add_term(self.spec.mul(g, h), x * y);
                        }
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Self { spec: self.spec.clone(), rows: self.rows, cols: other.cols, entries })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&RingElement, &RingElement) -> RingElement) -> Result<Self> {
        self.same_spec(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Self { spec: self.spec.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn mat_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn mat_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn map(&self, f: impl Fn(&RingElement) -> RingElement) -> Self {
        Self {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(RingElement::neg)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    /// Conjugate transpose: `(A*)_{ij} = (A_{ji})*`.
    pub fn star(&self) -> Self {
        Self::from_fn(&self.spec, self.cols, self.rows, |i, j| self.get(j, i).star())
    }

    /// `star` applied to every entry without transposing.
    pub fn entrywise_star(&self) -> Self {
        self.map(RingElement::star)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElement::is_zero)
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.is_square() && self.star() == *self
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && self.mat_mul(self).is_ok_and(|sq| sq == *self)
    }

    /// `Σ_j t(A_jj)`.
    pub fn trace(&self, t: &TraceFunctional) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        (0..self.rows).try_fold(Rational::zero(), |acc, j| Ok(acc + t.apply(self.get(j, j))?))
    }

    /// Larger of the maximal column and row sums of entry ℓ¹ norms.
    /// Bounds the operator norm of the left regular representation.
    pub fn l1_norm(&self) -> Rational {
        let norms: Vec<Rational> = self.entries.iter().map(RingElement::l1_norm).collect();
        let col = (0..self.cols).map(|j| (0..self.rows).map(|i| &norms[i * self.cols + j]).sum());
        let row = (0..self.rows).map(|i| norms[i * self.cols..(i + 1) * self.cols].iter().sum());
        col.chain(row).fold(Rational::zero(), |a: Rational, b: Rational| if b > a { b } else { a })
    }

    /// Largest word length appearing in any entry.
    pub fn propagation(&self) -> usize {
        self.entries.iter().map(RingElement::propagation).max().unwrap_or(0)
    }

    /// Kronecker product `(A ⊗ B)[(a,b),(a',b')] = A[a,a'] ⊗ B[b,b']` over `target = G_A × G_B`.
    pub fn kron(&self, other: &Self, target: &GroupSpec) -> Result<Self> {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                let a = self.get(i / other.rows, j / other.cols);
                let b = other.get(i % other.rows, j % other.cols);
                entries.push(if a.is_zero() || b.is_zero() {
                    RingElement::zero(target)
                } else {
                    a.tensor(b, target)?
                });
            }
        }
        Self::new(target, r, c, entries)
    }

    /// Block-diagonal matrix with the given square or rectangular blocks.
    pub fn block_diag(spec: &GroupSpec, blocks: &[RingMatrix]) -> Result<Self> {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(spec, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b)?;
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Overwrites the block starting at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &RingMatrix) -> Result<()> {
        self.same_spec(b)?;
        if r0 + b.rows > self.rows || c0 + b.cols > self.cols {
            return Err(Error::Shape("block does not fit".into()));
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.entries[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ratio;
    use alloc::vec;

    fn g() -> GroupSpec {
        GroupSpec::free_product(vec![2, 3]).unwrap()
    }

    fn el(s: &str) -> RingElement {
        RingElement::parse_sum(&g(), s).unwrap()
    }

    #[test]
    fn identity_and_star() {
        let a = RingMatrix::from_rows(&g(), vec![vec![el("e - s"), el("t")], vec![el("st"), el("2e")]]).unwrap();
        let i = RingMatrix::identity(&g(), 2);
        assert_eq!(i.mat_mul(&a).unwrap(), a);
        assert_eq!(a.star().star(), a);
        assert!(a.mat_mul(&RingMatrix::identity(&g(), 3)).is_err());
    }

    #[test]
    fn traces() {
        let spec = g();
        let p = RingElement::averaging_projection(&spec, &[spec.identity(), spec.power(0, 1).unwrap()]).unwrap();
        let q = RingElement::averaging_projection(
            &spec,
            &(0..3).map(|i| spec.power(1, i).unwrap()).collect::<Vec<_>>(),
        )
        .unwrap();
        let c = RingMatrix::diag(&spec, vec![p.clone(), q]).unwrap();
        assert_eq!(c.trace(&TraceFunctional::Canonical).unwrap(), ratio(5, 6));
        let s = spec.parse_word("s").unwrap();
        assert_eq!(RingMatrix::scalar(p).trace(&TraceFunctional::Delocalised(s.clone())).unwrap(), ratio(1, 2));
        let one = RingMatrix::identity(&spec, 1);
        assert!(one.trace(&TraceFunctional::Delocalised(s)).unwrap().is_zero());
        assert!(matches!(
            RingMatrix::zeros(&spec, 1, 2).trace(&TraceFunctional::Canonical),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn l1_norms() {
        assert_eq!(RingMatrix::scalar(el("e - s")).l1_norm(), ratio(2, 1));
        assert!(RingMatrix::zeros(&g(), 2, 2).l1_norm().is_zero());
    }
}
