use super::{lu, Matrix};
use crate::error::{Error, Result};

/// Degree of the diagonal Padé approximant.
pub const PADE_ORDER: usize = 6;

/// The argument is scaled by `2^-s` until its infinity norm is at most this.
pub const SCALED_NORM_BOUND: f64 = 0.5;

/// Matrix exponential by scaling and squaring with a `[6/6]` Padé approximant.
pub fn expm(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expm needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = a.rows();
    let norm = a.norm_inf();
    let squarings = if norm > SCALED_NORM_BOUND {
        (norm / SCALED_NORM_BOUND).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let x = a.scale(0.5f64.powi(squarings as i32));

    // c_k = c_{k-1} (q - k + 1) / ((2q - k + 1) k)
    let q = PADE_ORDER;
    let mut c = 1.0;
    let mut num = Matrix::identity(n);
    let mut den = Matrix::identity(n);
    let mut power = Matrix::identity(n);
    for k in 1..=q {
        c *= (q - k + 1) as f64 / ((2 * q - k + 1) * k) as f64;
        power = &power * &x;
        let term = power.scale(c);
        num = &num + &term;
        den = if k % 2 == 0 { &den + &term } else { &den - &term };
    }
    let mut f = lu::solve(&den, &num)?;
    for _ in 0..squarings {
        f = &f * &f;
    }
    Ok(f)
}
