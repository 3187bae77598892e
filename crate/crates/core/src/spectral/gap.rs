use alloc::format;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};

use super::compress::compress;
use crate::error::{Error, Result};
use crate::ring::RingMatrix;

/// Largest compressed dimension handed to the dense eigensolver.
pub const MAX_DENSE_DIM: usize = 4096;

/// The `count` smallest eigenvalues of `compress(delta, radius)`, ascending.
///
/// This is a diagnostic only: truncating to a ball creates boundary modes with small
/// eigenvalues that the full operator does not have, so a small value here says nothing
/// about the spectral gap of `delta` itself.
pub fn spectral_gap_probe(delta: &RingMatrix, radius: usize, count: usize) -> Result<Vec<f64>> {
    let op = compress(delta, radius)?;
    let n = op.matrix.dim();
    if n > MAX_DENSE_DIM {
        return Err(Error::Unsupported(format!(
            "compressed dimension {n} exceeds the dense limit {MAX_DENSE_DIM}"
        )));
    }
    let dense = DMatrix::from_row_slice(n, n, &op.matrix.to_dense());
    let eigen = SymmetricEigen::try_new(dense, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numeric("symmetric eigensolver did not converge".into()))?;
    let mut values: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values.truncate(count);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::finite_cyclic_complex;
    use crate::GroupSpec;

    #[test]
    fn identity_spectrum() {
        let spec = GroupSpec::free_product(alloc::vec![2, 3]).unwrap();
        let vals = spectral_gap_probe(&RingMatrix::identity(&spec, 1), 3, 100).unwrap();
        assert!(vals.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn finite_group_spectrum_is_exact() {
        // Δ₀ of ℤ₄ is 2 - f - f⁻¹ with eigenvalues 2 - 2cos(2πk/4) = 0, 2, 2, 4.
        let lap = finite_cyclic_complex(4, 2).unwrap().laplacian(0).unwrap();
        let vals = spectral_gap_probe(&lap, 4, 4).unwrap();
        for (v, e) in vals.iter().zip([0.0, 2.0, 2.0, 4.0]) {
            assert!((v - e).abs() < 1e-12, "{vals:?}");
        }
    }
}
