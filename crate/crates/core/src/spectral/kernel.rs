//! Structure of the harmonic 1-cochains of ℤ_m ∗ ℤ_n.
//!
//! Vectors `[k a; -l a]` with `a ∈ ker p ∩ ker q` lie in the kernel of the first Laplacian,
//! where `k` and `l` invert `1 - s` and `1 - t` on the complements of `p` and `q`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::compress::compress_onto;
use crate::complexes::{closed_form, free_product_complex_with, Action};
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec};
use crate::ring::{ratio, RingElement, RingMatrix};

/// Threshold on the relative residual of the constructed kernel vector.
pub const RESIDUAL_THRESHOLD: f64 = 1e-6;
/// Ball radius used by [`verify_kernel_structure`].
pub const DEFAULT_RADIUS: usize = 6;
const MAX_ITERATIONS: usize = 500;
const STEP_TOLERANCE: f64 = 1e-10;
const MAX_RESEEDS: usize = 8;

/// Result of the three kernel checks.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelReport {
    pub m: u32,
    pub n: u32,
    /// `Δ₁ = diag(m²p, n²q) + diag(1-s⁻¹, 1-t⁻¹)·J·diag(1-s, 1-t)` exactly.
    pub identity_holds: bool,
    /// `(1-s)k = k(1-s) = 1-p` and `(1-t)l = l(1-t) = 1-q` exactly.
    pub factorization_holds: bool,
    /// `‖Δ₁[ka; -la]‖ / ‖[ka; -la]‖` for the constructed `a`.
    pub residual: f64,
    pub radius: usize,
    pub iterations: usize,
}

impl KernelReport {
    pub fn residual_ok(&self) -> bool {
        self.residual < RESIDUAL_THRESHOLD
    }

    pub fn passed(&self) -> bool {
        self.identity_holds && self.factorization_holds && self.residual_ok()
    }

    /// Names of the failing checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.identity_holds {
            out.push("laplacian-identity");
        }
        if !self.factorization_holds {
            out.push("factorization");
        }
        if !self.residual_ok() {
            out.push("kernel-residual");
        }
        out
    }
}

/// `(1/m) Σ_{j=1}^{m-1} Σ_{0≤i<j} xⁱ` for generator `factor` of order `m`.
pub fn inverse_on_complement(spec: &GroupSpec, factor: usize, m: u32) -> RingElement {
    let mut terms = Vec::new();
    for j in 1..m as i64 {
        for i in 0..j {
            terms.push((spec.power(factor, i).unwrap(), ratio(1, m as i64)));
        }
    }
    RingElement::from_terms(spec, terms).unwrap()
}

fn factor_projection(spec: &GroupSpec, factor: usize, m: u32) -> RingElement {
    let h: Vec<_> = (0..m as i64).map(|i| spec.power(factor, i).unwrap()).collect();
    RingElement::averaging_projection(spec, &h).unwrap()
}

fn factorization_holds(spec: &GroupSpec, factor: usize, m: u32) -> bool {
    let k = inverse_on_complement(spec, factor, m);
    let one = RingElement::one(spec);
    let one_minus_x = &one - &RingElement::delta(spec, spec.power(factor, 1).unwrap());
    let target = &one - &factor_projection(spec, factor, m);
    &one_minus_x * &k == target && &k * &one_minus_x == target
}

type Sparse = HashMap<GroupElement, f64>;

fn convolve_float(spec: &GroupSpec, x: &RingElement, v: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (u, c) in x.terms() {
        let c = c.to_f64().unwrap_or(f64::NAN);
        for (g, a) in v {
            *out.entry(spec.mul(u, g)).or_insert(0.0) += c * a;
        }
    }
    out
}

fn norm_sq(v: &Sparse) -> f64 {
    v.values().map(|x| x * x).sum()
}

/// Runs the three checks with the default radius and seed.
pub fn verify_kernel_structure(m: u32, n: u32) -> Result<KernelReport> {
    verify_kernel_structure_with(m, n, DEFAULT_RADIUS, 0x5eed)
}

/// Runs the three checks; `a` is built by alternating projections on `ball(radius)`.
pub fn verify_kernel_structure_with(m: u32, n: u32, radius: usize, seed: u64) -> Result<KernelReport> {
    if m < 2 || n < 3 {
        return Err(Error::InvalidArgument(format!("need m >= 2 and n >= 3, got ({m}, {n})")));
    }
    let complex = free_product_complex_with(m, n, 2, Action::Right)?;
    let lap = complex.laplacian(1)?;
    let spec = complex.spec().clone();
    let identity_holds = lap == closed_form::factored_first_laplacian(m, n)?;
    let factorization_holds = factorization_holds(&spec, 0, m) && factorization_holds(&spec, 1, n);

    let ball = spec.ball(radius);
    let one = RingElement::one(&spec);
    let complement = |factor, order| RingMatrix::scalar(&one - &factor_projection(&spec, factor, order));
    let not_p = compress_onto(&complement(0, m), ball.clone())?.matrix;
    let not_q = compress_onto(&complement(1, n), ball.clone())?.matrix;
    let dim = ball.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = |rng: &mut ChaCha8Rng| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
    let normalize = |v: &mut [f64]| {
        let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        if norm > 1e-200 {
            v.iter_mut().for_each(|x| *x /= norm);
        }
        norm
    };
    let mut a = random(&mut rng);
    normalize(&mut a);
    let (mut tmp, mut next) = (vec![0.0; dim], vec![0.0; dim]);
    let (mut iterations, mut reseeds) = (0, 0);
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        not_p.matvec(&a, &mut tmp);
        not_q.matvec(&tmp, &mut next);
        if normalize(&mut next) < 1e-12 {
            reseeds += 1;
            if reseeds > MAX_RESEEDS {
                return Err(Error::Numeric("alternating projections keep collapsing to zero".into()));
            }
            a = random(&mut rng);
            normalize(&mut a);
            continue;
        }
        let step = libm::sqrt(a.iter().zip(&next).map(|(x, y)| (x - y) * (x - y)).sum::<f64>());
        core::mem::swap(&mut a, &mut next);
        if step < STEP_TOLERANCE {
            break;
        }
    }

    let a_sparse: Sparse = ball.iter().cloned().zip(a.iter().copied()).filter(|(_, x)| *x != 0.0).collect();
    let ka = convolve_float(&spec, &inverse_on_complement(&spec, 0, m), &a_sparse);
    let la: Sparse = convolve_float(&spec, &inverse_on_complement(&spec, 1, n), &a_sparse)
        .into_iter()
        .map(|(g, x)| (g, -x))
        .collect();
    let x = [ka, la];
    let mut image_sq = 0.0;
    for i in 0..2 {
        let mut row = Sparse::new();
        for (j, xj) in x.iter().enumerate() {
            for (g, v) in convolve_float(&spec, lap.get(i, j), xj) {
                *row.entry(g).or_insert(0.0) += v;
            }
        }
        image_sq += norm_sq(&row);
    }
    let residual = libm::sqrt(image_sq / (norm_sq(&x[0]) + norm_sq(&x[1])));
    Ok(KernelReport { m, n, identity_holds, factorization_holds, residual, radius, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_checks_hold() {
        for (m, n) in [(2, 3), (3, 4), (5, 5)] {
            let r = verify_kernel_structure_with(m, n, 3, 1).unwrap();
            assert!(r.identity_holds && r.factorization_holds, "{r:?}");
            assert!(r.residual.is_finite());
        }
    }

    #[test]
    fn rejects_small_orders() {
        assert!(verify_kernel_structure(2, 2).is_err());
    }

    #[test]
    fn image_when_only_p_vanishes() {
        // With pa = 0 but qa ≠ 0, Δ₁[ka; -la] = diag(1-s⁻¹, 1-t⁻¹)[qa; qa] + [0; -n²q·la].
        let spec = GroupSpec::free_product(vec![2, 3]).unwrap();
        let w = |s: &str| RingElement::parse_sum(&spec, s).unwrap();
        let lap = free_product_complex_with(2, 3, 2, Action::Right).unwrap().laplacian(1).unwrap();
        let b = w("e - st");
        let not_p = &RingElement::one(&spec) - &factor_projection(&spec, 0, 2);
        let a = &not_p * &b;
        let k = inverse_on_complement(&spec, 0, 2);
        let l = inverse_on_complement(&spec, 1, 3);
        let x = RingMatrix::from_rows(&spec, vec![vec![&k * &a], vec![-&(&l * &a)]]).unwrap();
        let image = lap.mat_mul(&x).unwrap();
        let q = factor_projection(&spec, 1, 3);
        let qa = &q * &a;
        assert!(!qa.is_zero());
        let j_term = RingMatrix::from_rows(&spec, vec![vec![qa.clone()], vec![qa.clone()]]).unwrap();
        let left = RingMatrix::diag(&spec, vec![w("e - s"), w("e - tt")]).unwrap();
        let n2q = RingMatrix::diag(&spec, vec![RingElement::zero(&spec), q.scale(&ratio(9, 1))]).unwrap();
        let expected = left.mat_mul(&j_term).unwrap().mat_add(&n2q.mat_mul(&x).unwrap()).unwrap();
        assert_eq!(image, expected);
    }
}
