//! Cochain complexes over ℚG built from free resolutions, and their Laplacians.
//!
//! Coboundaries act on column vectors: `d_i` is stored as a `k_{i+1} × k_i` matrix and
//! `Δ_i = d_i* d_i + d_{i-1} d_{i-1}*`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groups::{GroupKind, GroupSpec};
use crate::ring::{Rational, RingElement, RingMatrix};

/// Side on which generators act in the resolution.
///
/// `Left` gives `d_0 = [1 - s; 1 - t]` for a free product. `Right` replaces every generator
/// by its inverse, which gives `d_0 = [1 - s⁻¹; 1 - t⁻¹]`. The two Laplacians differ by the
/// automorphism `s ↦ s⁻¹, t ↦ t⁻¹` and so have the same traces up to relabelling classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Action {
    #[default]
    Left,
    Right,
}

/// A finite stretch `C⁰ → C¹ → … → C^N` of a cochain complex of free ℚG-modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    spec: GroupSpec,
    ranks: Vec<usize>,
    coboundaries: Vec<RingMatrix>,
    complete: bool,
}

impl CochainComplex {
    /// Assembles a complex and checks shapes and `d_{i+1} d_i = 0`.
    ///
    /// `complete` means the complex stops at the last listed degree (all later modules are
    /// zero). Otherwise it continues beyond what is stored and the last Laplacian is unknown.
    pub fn new(spec: &GroupSpec, ranks: Vec<usize>, coboundaries: Vec<RingMatrix>, complete: bool) -> Result<Self> {
        if ranks.is_empty() || coboundaries.len() + 1 != ranks.len() {
            return Err(Error::Shape(format!(
                "{} ranks need {} coboundaries, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                coboundaries.len()
            )));
        }
        for (i, d) in coboundaries.iter().enumerate() {
            if d.spec() != spec {
                return Err(Error::SpecMismatch { left: format!("{spec}"), right: format!("{}", d.spec()) });
            }
            if (d.rows(), d.cols()) != (ranks[i + 1], ranks[i]) {
                return Err(Error::Shape(format!(
                    "d_{i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[i + 1],
                    ranks[i]
                )));
            }
        }
        for (i, pair) in coboundaries.windows(2).enumerate() {
            if !pair[1].mat_mul(&pair[0])?.is_zero() {
                return Err(Error::InvalidArgument(format!("d_{} d_{i} is not zero", i + 1)));
            }
        }
        Ok(Self { spec: spec.clone(), ranks, coboundaries, complete })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn coboundaries(&self) -> &[RingMatrix] {
        &self.coboundaries
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Largest degree whose Laplacian is determined by the stored data.
    pub fn laplacian_top(&self) -> Option<usize> {
        let n = self.ranks.len() - 1;
        if self.complete {
            Some(n)
        } else {
            n.checked_sub(1)
        }
    }

    /// Rank of degree `i`, if known.
    pub fn rank(&self, i: usize) -> Option<usize> {
        match self.ranks.get(i) {
            Some(&k) => Some(k),
            None if self.complete => Some(0),
            None => None,
        }
    }

    /// `d_i`, if known; zero beyond the end of a complete complex.
    pub fn coboundary(&self, i: usize) -> Option<RingMatrix> {
        match self.coboundaries.get(i) {
            Some(d) => Some(d.clone()),
            None if self.complete => {
                let cols = self.rank(i)?;
                Some(RingMatrix::zeros(&self.spec, self.rank(i + 1)?, cols))
            }
            None => None,
        }
    }

    /// `Δ_i = d_i* d_i + d_{i-1} d_{i-1}*`.
    pub fn laplacian(&self, i: usize) -> Result<RingMatrix> {
        let out_of_range = || Error::DegreeOutOfRange {
            degree: i,
            max: self.laplacian_top().unwrap_or(0),
        };
        if self.laplacian_top().is_none_or(|top| i > top) {
            return Err(out_of_range());
        }
        let d = self.coboundary(i).ok_or_else(out_of_range)?;
        let mut lap = d.star().mat_mul(&d)?;
        if i > 0 {
            let prev = &self.coboundaries[i - 1];
            lap = lap.mat_add(&prev.mat_mul(&prev.star())?)?;
        }
        Ok(lap)
    }

    /// Every determined Laplacian, in degree order.
    pub fn laplacians(&self) -> Result<Vec<RingMatrix>> {
        match self.laplacian_top() {
            Some(top) => (0..=top).map(|i| self.laplacian(i)).collect(),
            None => Ok(Vec::new()),
        }
    }
}

fn element(spec: &GroupSpec, terms: impl IntoIterator<Item = (crate::GroupElement, i64)>) -> RingElement {
    RingElement::from_terms(spec, terms.into_iter().map(|(g, c)| (g, Rational::from_integer(BigInt::from(c)))))
        .expect("generator powers belong to the group")
}

/// `1 - x^{±1}` for generator `factor`.
fn one_minus_gen(spec: &GroupSpec, factor: usize, action: Action) -> RingElement {
    let e = if action == Action::Left { 1 } else { -1 };
    element(spec, [(spec.identity(), 1), (spec.power(factor, e).unwrap(), -1)])
}

/// `Σ_{0 ≤ i < m} x^i` for generator `factor`.
fn norm_element(spec: &GroupSpec, factor: usize, m: u32) -> RingElement {
    element(spec, (0..m as i64).map(|i| (spec.power(factor, i).unwrap(), 1)))
}

fn check_orders(m: u32, n: u32) -> Result<()> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!("orders ({m}, {n}) must both be at least 2")));
    }
    Ok(())
}

/// The resolution complex of ℤ_m ∗ ℤ_n through degree 2, left action.
pub fn free_product_complex(m: u32, n: u32) -> Result<CochainComplex> {
    free_product_complex_with(m, n, 2, Action::Left)
}

/// The periodic resolution complex of ℤ_m ∗ ℤ_n through `max_degree` (at least 1):
/// `d_0 = [1 - s; 1 - t]`, then `diag(Σ sⁱ, Σ tʲ)` and `diag(1 - s, 1 - t)` alternately.
pub fn free_product_complex_with(m: u32, n: u32, max_degree: usize, action: Action) -> Result<CochainComplex> {
    check_orders(m, n)?;
    if max_degree == 0 {
        return Err(Error::InvalidArgument("max_degree must be at least 1".into()));
    }
    let spec = GroupSpec::free_product(vec![m, n])?;
    let mut ranks = vec![1];
    ranks.resize(max_degree + 1, 2);
    let mut ds = Vec::with_capacity(max_degree);
    ds.push(RingMatrix::from_rows(
        &spec,
        vec![vec![one_minus_gen(&spec, 0, action)], vec![one_minus_gen(&spec, 1, action)]],
    )?);
    for i in 1..max_degree {
        let diagonal = if i % 2 == 1 {
            vec![norm_element(&spec, 0, m), norm_element(&spec, 1, n)]
        } else {
            vec![one_minus_gen(&spec, 0, action), one_minus_gen(&spec, 1, action)]
        };
        ds.push(RingMatrix::diag(&spec, diagonal)?);
    }
    CochainComplex::new(&spec, ranks, ds, false)
}

/// The complex `C⁰ → C¹` of the rose with `k` petals: `d_0` is the column of `1 - a_i`.
pub fn free_group_complex(k: u32) -> Result<CochainComplex> {
    free_group_complex_with(k, Action::Left)
}

pub fn free_group_complex_with(k: u32, action: Action) -> Result<CochainComplex> {
    let spec = GroupSpec::free(k)?;
    let column = (0..k as usize).map(|i| vec![one_minus_gen(&spec, i, action)]).collect();
    let d0 = RingMatrix::from_rows(&spec, column)?;
    CochainComplex::new(&spec, vec![1, k as usize], vec![d0], true)
}

/// The periodic resolution of ℤ_m through `max_degree` (at least 1):
/// `1 - t, Σ tʲ, 1 - t, …`.
pub fn finite_cyclic_complex(m: u32, max_degree: usize) -> Result<CochainComplex> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("max_degree must be at least 1".into()));
    }
    let spec = GroupSpec::cyclic(m)?;
    let ds = (0..max_degree)
        .map(|i| {
            RingMatrix::scalar(if i % 2 == 0 {
                one_minus_gen(&spec, 0, Action::Left)
            } else {
                norm_element(&spec, 0, m)
            })
        })
        .collect();
    CochainComplex::new(&spec, vec![1; max_degree + 1], ds, false)
}

/// The trivial complex `ℚG` in degree 0 with no coboundaries.
pub fn trivial_complex(spec: &GroupSpec) -> CochainComplex {
    CochainComplex::new(spec, vec![1], Vec::new(), true).expect("trivial complex is well formed")
}

/// The standard complex of any supported group through `max_degree`: the periodic
/// resolutions for two-factor free products and cyclic groups, the rose for free groups,
/// and iterated tensor products for direct products.
pub fn resolution_complex(spec: &GroupSpec, max_degree: usize) -> Result<CochainComplex> {
    let periodic = max_degree.max(1);
    match spec.kind() {
        GroupKind::FreeProduct(&[m, n]) => free_product_complex_with(m, n, periodic, Action::Left),
        GroupKind::Free(k) => free_group_complex(k),
        GroupKind::Cyclic(m) => finite_cyclic_complex(m, periodic),
        GroupKind::Product(factors) => {
            let mut acc = resolution_complex(&factors[0], max_degree)?;
            for f in &factors[1..] {
                acc = tensor_complex(&acc, &resolution_complex(f, max_degree)?, max_degree)?;
            }
            Ok(acc)
        }
        _ => Err(Error::Unsupported(format!("no resolution complex implemented for {spec}"))),
    }
}

/// Tensor product over `G₁ × G₂` through `max_degree`.
///
/// Degree `i` is `⊕_{r+s=i} C₁^r ⊗ C₂^s` with blocks ordered by increasing `r`, and the
/// coboundary sends the `(r, s)` block by `d_r ⊗ 1` to `(r+1, s)` and by `(-1)^r 1 ⊗ d_s`
/// to `(r, s+1)`. The sign sits on the first index so that `D_{i+1} D_i = 0`.
pub fn tensor_complex(c1: &CochainComplex, c2: &CochainComplex, max_degree: usize) -> Result<CochainComplex> {
    let spec = GroupSpec::product(vec![c1.spec.clone(), c2.spec.clone()])?;
    let unknown = |degree| Error::DegreeOutOfRange { degree, max: max_degree };
    let blocks = |i: usize| -> Result<Vec<(usize, usize, usize)>> {
        let mut out = Vec::new();
        let mut offset = 0;
        for r in 0..=i {
            let a = c1.rank(r).ok_or_else(|| unknown(r))?;
            let b = c2.rank(i - r).ok_or_else(|| unknown(i - r))?;
            if a * b > 0 {
                out.push((r, offset, a * b));
            }
            offset += a * b;
        }
        Ok(out)
    };
    let rank = |i: usize| -> Result<usize> { Ok(blocks(i)?.iter().map(|b| b.2).sum()) };
    let ranks = (0..=max_degree).map(rank).collect::<Result<Vec<_>>>()?;
    let offset_of = |i: usize, r: usize| -> Result<Option<usize>> {
        Ok(blocks(i)?.into_iter().find(|b| b.0 == r).map(|b| b.1))
    };
    let mut ds = Vec::with_capacity(max_degree);
    for i in 0..max_degree {
        let mut d = RingMatrix::zeros(&spec, ranks[i + 1], ranks[i]);
        for (r, col, _) in blocks(i)? {
            let s = i - r;
            let (a, b) = (c1.rank(r).unwrap(), c2.rank(s).unwrap());
            if let Some(row) = offset_of(i + 1, r + 1)? {
                let dr = c1.coboundary(r).ok_or_else(|| unknown(r))?;
                d.set_block(row, col, &dr.kron(&RingMatrix::identity(&c2.spec, b), &spec)?)?;
            }
            if let Some(row) = offset_of(i + 1, r)? {
                let ds_ = c2.coboundary(s).ok_or_else(|| unknown(s))?;
                let mut block = RingMatrix::identity(&c1.spec, a).kron(&ds_, &spec)?;
                if r % 2 == 1 {
                    block = block.neg();
                }
                d.set_block(row, col, &block)?;
            }
        }
        ds.push(d);
    }
    let top1 = c1.ranks.len() - 1;
    let top2 = c2.ranks.len() - 1;
    let complete = c1.complete && c2.complete && max_degree >= top1 + top2;
    CochainComplex::new(&spec, ranks, ds, complete)
}

/// `⊕_{r+s=i} (Δ_r ⊗ 1 + 1 ⊗ Δ_s)`, block ordered as in [`tensor_complex`].
pub fn kunneth_laplacian(c1: &CochainComplex, c2: &CochainComplex, i: usize) -> Result<RingMatrix> {
    let spec = GroupSpec::product(vec![c1.spec.clone(), c2.spec.clone()])?;
    let mut blocks = Vec::new();
    for r in 0..=i {
        let s = i - r;
        let a = c1.rank(r).ok_or(Error::DegreeOutOfRange { degree: r, max: i })?;
        let b = c2.rank(s).ok_or(Error::DegreeOutOfRange { degree: s, max: i })?;
        if a * b == 0 {
            continue;
        }
        let left = c1.laplacian(r)?.kron(&RingMatrix::identity(&c2.spec, b), &spec)?;
        let right = RingMatrix::identity(&c1.spec, a).kron(&c2.laplacian(s)?, &spec)?;
        blocks.push(left.mat_add(&right)?);
    }
    RingMatrix::block_diag(&spec, &blocks)
}

/// Reference closed forms of the first Laplacian of ℤ_m ∗ ℤ_n, built directly from the
/// formulas rather than from a complex.
pub mod closed_form {
    use super::*;

    /// `2 - x - x⁻¹ + m Σ xⁱ` for generator `factor` of order `m`.
    fn diagonal(spec: &GroupSpec, factor: usize, m: u32) -> RingElement {
        let mut terms = vec![(spec.identity(), 2), (spec.power(factor, 1).unwrap(), -1)];
        terms.push((spec.power(factor, -1).unwrap(), -1));
        terms.extend((0..m as i64).map(|i| (spec.power(factor, i).unwrap(), m as i64)));
        element(spec, terms)
    }

    /// `[[2-s-s⁻¹+mΣsⁱ, (1-s⁻¹)(1-t)], [(1-t⁻¹)(1-s), 2-t-t⁻¹+nΣtʲ]]`,
    /// the right-action Laplacian.
    pub fn first_laplacian(m: u32, n: u32) -> Result<RingMatrix> {
        check_orders(m, n)?;
        let spec = GroupSpec::free_product(vec![m, n])?;
        let one_minus = |f: usize, e: i64| element(&spec, [(spec.identity(), 1), (spec.power(f, e).unwrap(), -1)]);
        RingMatrix::from_rows(
            &spec,
            vec![
                vec![diagonal(&spec, 0, m), &one_minus(0, -1) * &one_minus(1, 1)],
                vec![&one_minus(1, -1) * &one_minus(0, 1), diagonal(&spec, 1, n)],
            ],
        )
    }

    /// The left-action Laplacian of ℤ₂ ∗ ℤ₃ in its displayed form
    /// `[[4, (1-s)(1-t²)], [(1-t)(1-s), 5+2t+2t²]]`.
    pub fn modular_group_laplacian() -> RingMatrix {
        let spec = GroupSpec::free_product(vec![2, 3]).unwrap();
        let sum = |s: &str| RingElement::parse_sum(&spec, s).unwrap();
        RingMatrix::from_rows(
            &spec,
            vec![
                vec![sum("4e"), &sum("e - s") * &sum("e - tt")],
                vec![&sum("e - t") * &sum("e - s"), sum("5e + 2t + 2tt")],
            ],
        )
        .unwrap()
    }

    /// The identity coefficient structure `diag(m²p, n²q) + diag(1-s⁻¹, 1-t⁻¹)·J·diag(1-s, 1-t)`
    /// with `J` the all-ones 2×2 matrix.
    pub fn factored_first_laplacian(m: u32, n: u32) -> Result<RingMatrix> {
        check_orders(m, n)?;
        let spec = GroupSpec::free_product(vec![m, n])?;
        let scaled_norm = |f: usize, k: u32| norm_element(&spec, f, k).scale(&Rational::from_integer(BigInt::from(k)));
        let c = RingMatrix::diag(&spec, vec![scaled_norm(0, m), scaled_norm(1, n)])?;
        let left = RingMatrix::diag(
            &spec,
            vec![one_minus_gen(&spec, 0, Action::Right), one_minus_gen(&spec, 1, Action::Right)],
        )?;
        let right = RingMatrix::diag(
            &spec,
            vec![one_minus_gen(&spec, 0, Action::Left), one_minus_gen(&spec, 1, Action::Left)],
        )?;
        let j = RingMatrix::from_fn(&spec, 2, 2, |_, _| RingElement::one(&spec));
        c.mat_add(&left.mat_mul(&j)?.mat_mul(&right)?)
    }
}
