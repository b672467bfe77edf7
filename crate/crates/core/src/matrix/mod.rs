//! Small dense real linear algebra: the carrier type plus the handful of
//! factorizations the control and simulation layers need.

mod dense;
mod eigen;
mod expm;
mod lu;
mod poly;

pub use dense::Matrix;
pub use eigen::{eigenvalues, Spectrum, DEFLATION_TOL, MAX_SWEEPS};
pub use expm::{expm, PADE_ORDER, SCALED_NORM_BOUND};
pub use lu::{default_rank_tol, determinant, inverse, rank, rank_default, solve, Lu};
pub use poly::{check_conjugate_closed, real_roots, Polynomial, CONJUGATE_TOL};

use num_complex::Complex64;

use crate::error::Result;

/// Monic polynomial with the given roots.
pub fn poly_from_roots(roots: &[Complex64]) -> Result<Polynomial> {
    Polynomial::from_roots(roots)
}
