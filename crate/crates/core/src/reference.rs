//! Printed model matrices and open-loop poles for the built-in foods, rounded
//! to three decimals as tabulated.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub fn printed_a_matrix(food: &str) -> Result<Matrix> {
    let rows = match food {
        "steak" => [[-8.587, 7.383, 0.204], [0.979, -0.979, 0.0], [1.351, 0.0, -1.351]],
        "chicken" => [[-8.587, 7.383, 0.204], [0.979, -0.979, 0.0], [1.158, 0.0, -1.158]],
        "potato" => [[-8.516, 7.383, 0.134], [0.979, -0.979, 0.0], [0.950, 0.0, -0.950]],
        _ => return Err(Error::UnknownPreset { name: food.into() }),
    };
    Ok(Matrix::from_rows(&rows))
}

/// Open-loop poles in tabulated order (fast, slow, food).
pub fn tabulated_poles(food: &str) -> Result<[f64; 3]> {
    match food {
        "steak" => Ok([-9.472, -0.104, -1.341]),
        "chicken" => Ok([-9.467, -0.104, -1.153]),
        "potato" => Ok([-9.390, -0.104, -0.951]),
        _ => Err(Error::UnknownPreset { name: food.into() }),
    }
}

/// Entry tolerance for rebuilt matrices against the printed ones.
pub const MATRIX_TOL: f64 = 5e-3;
/// Per-pole tolerance against the tabulated open-loop poles.
pub const POLE_TOL: f64 = 1e-3;
/// Closed-loop final value and peak tolerance, °F.
pub const CONVERGENCE_TOL_F: f64 = 0.5;
