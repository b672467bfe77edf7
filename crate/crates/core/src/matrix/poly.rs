use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{Error, Result};

/// Two roots count as a conjugate pair when they agree to this tolerance
/// (scaled by the root magnitude when it exceeds one).
pub const CONJUGATE_TOL: f64 = 1e-9;
/// Roots with imaginary part at most this (relative) are treated as real.
const REAL_TOL: f64 = 1e-12;

/// Monic real polynomial, coefficients ordered from the highest degree down.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coefficients: Vec<f64>,
}

impl Polynomial {
    /// Accepts coefficients highest degree first; the leading one must be exactly 1.
    pub fn monic(coefficients: Vec<f64>) -> Result<Self> {
        match coefficients.first() {
            Some(&1.0) => Ok(Self { coefficients }),
            _ => Err(Error::InvalidConfig("polynomial must be monic and non-empty".into())),
        }
    }

    /// Monic polynomial with the given roots. Complex roots must come in conjugate pairs.
    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        check_conjugate_closed(roots)?;
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c * r;
            }
            coeffs = next;
        }
        Ok(Self {
            coefficients: coeffs.into_iter().map(|c| c.re).collect(),
        })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `p(A)` by Horner's scheme.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        assert!(a.is_square(), "matrix polynomial needs a square argument");
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for &c in &self.coefficients {
            acc = &(&acc * a) + &Matrix::identity(n).scale(c);
        }
        acc
    }

    /// Companion matrix whose characteristic polynomial is `self`.
    pub fn companion(&self) -> Matrix {
        let n = self.degree();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            m[(0, j)] = -self.coefficients[j + 1];
        }
        for i in 1..n {
            m[(i, i - 1)] = 1.0;
        }
        m
    }
}

/// Each non-real root must have a distinct partner equal to its conjugate.
pub fn check_conjugate_closed(roots: &[Complex64]) -> Result<()> {
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        let z = roots[i];
        let scale = z.norm().max(1.0);
        if z.im.abs() <= REAL_TOL * scale || used[i] {
            continue;
        }
        let partner =
            (0..roots.len()).find(|&j| j != i && !used[j] && (roots[j] - z.conj()).norm() <= CONJUGATE_TOL * scale);
        match partner {
            Some(j) => {
                used[i] = true;
                used[j] = true;
            }
            None => return Err(Error::UnpairedComplexRoot { re: z.re, im: z.im }),
        }
    }
    Ok(())
}

/// Convenience constructor for real pole lists.
pub fn real_roots(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}
