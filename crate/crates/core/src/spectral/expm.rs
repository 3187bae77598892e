use alloc::format;
use alloc::vec::Vec;

use super::compress::CsrMatrix;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 60;

fn inf_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// `exp(-t A) v` by scaled truncated Taylor series.
///
/// The interval is split into `s = ⌈t‖A‖⌉` steps so that each step's argument has norm at
/// most 1; within a step, terms are added until two consecutive terms fall below machine
/// precision relative to the partial sum. Only matrix-vector products are used.
pub fn expm_action(a: &CsrMatrix, t: f64, v: &[f64]) -> Result<Vec<f64>> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("time {t} must be finite and nonnegative")));
    }
    let nu = a.max_abs_row_sum();
    if t == 0.0 || nu == 0.0 {
        return Ok(v.to_vec());
    }
    let steps = libm::ceil(t * nu).max(1.0) as usize;
    let h = t / steps as f64;
    let mut f = v.to_vec();
    let mut term = alloc::vec![0.0; v.len()];
    let mut next = alloc::vec![0.0; v.len()];
    for _ in 0..steps {
        term.copy_from_slice(&f);
        let mut previous = f64::INFINITY;
        let mut converged = false;
        for k in 1..=MAX_TERMS {
            a.matvec(&term, &mut next);
            let c = -h / k as f64;
            for (x, y) in term.iter_mut().zip(&next) {
                *x = c * y;
            }
            for (acc, x) in f.iter_mut().zip(&term) {
                *acc += x;
            }
            let size = inf_norm(&term);
            let scale = inf_norm(&f);
            if size.max(previous) <= f64::EPSILON * scale || size == 0.0 {
                converged = true;
                break;
            }
            previous = size;
        }
        if !converged {
            return Err(Error::Numeric("Taylor series for the exponential did not converge".into()));
        }
        if f.iter().any(|x| !x.is_finite()) {
            return Err(Error::Numeric("overflow in the exponential".into()));
        }
    }
    Ok(f)
}
