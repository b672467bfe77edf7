use super::Matrix;
use crate::error::{Error, Result};

/// Pivots smaller than this fraction of the largest row norm count as zero.
const PIVOT_TOL: f64 = 1e-12;

/// LU factorisation with partial (row) pivoting, `P·A = L·U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn factor(a: &Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "LU needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let scale = a.norm_inf();
        let threshold = PIVOT_TOL * scale;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;

        for k in 0..n {
            let (p, pivot) =
                (k..n)
                    .map(|i| (i, lu[(i, k)].abs()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot <= threshold || pivot == 0.0 {
                return Err(Error::SingularMatrix);
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let d = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / d;
                lu[(i, k)] = f;
                if f != 0.0 {
                    for j in k + 1..n {
                        lu[(i, j)] -= f * lu[(k, j)];
                    }
                }
            }
        }
        Ok(Self { lu, perm, sign })
    }

    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        let n = self.lu.rows();
        if b.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, system has {n}",
                b.rows()
            )));
        }
        let m = b.cols();
        let mut x = Matrix::zeros(n, m);
        for col in 0..m {
            let mut y: Vec<f64> = self.perm.iter().map(|&p| b[(p, col)]).collect();
            for i in 0..n {
                let s: f64 = (0..i).map(|j| self.lu[(i, j)] * y[j]).sum();
                y[i] -= s;
            }
            for i in (0..n).rev() {
                let s: f64 = (i + 1..n).map(|j| self.lu[(i, j)] * y[j]).sum();
                y[i] = (y[i] - s) / self.lu[(i, i)];
            }
            for i in 0..n {
                x[(i, col)] = y[i];
            }
        }
        Ok(x)
    }

    pub fn determinant(&self) -> f64 {
        (0..self.lu.rows()).fold(self.sign, |d, i| d * self.lu[(i, i)])
    }
}

/// Solves `a·x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    Lu::factor(a)?.solve(b)
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    solve(a, &Matrix::identity(a.rows()))
}

/// Determinant; zero when the matrix is singular to working precision.
pub fn determinant(a: &Matrix) -> Result<f64> {
    match Lu::factor(a) {
        Ok(lu) => Ok(lu.determinant()),
        Err(Error::SingularMatrix) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Default rank tolerance: `1e-10 · max(rows, cols) · max|a_ij|`.
pub fn default_rank_tol(a: &Matrix) -> f64 {
    1e-10 * a.rows().max(a.cols()) as f64 * a.max_abs()
}

/// Numerical rank by Gaussian elimination with complete pivoting.
pub fn rank(a: &Matrix, tol: f64) -> usize {
    let (rows, cols) = a.shape();
    let mut w = a.clone();
    let mut r = 0;
    while r < rows.min(cols) {
        let mut best = (r, r, 0.0);
        for i in r..rows {
            for j in r..cols {
                let v = w[(i, j)].abs();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= tol || best.2 == 0.0 {
            break;
        }
        let (pi, pj, _) = best;
        for j in 0..cols {
            let tmp = w[(r, j)];
            w[(r, j)] = w[(pi, j)];
            w[(pi, j)] = tmp;
        }
        for i in 0..rows {
            let tmp = w[(i, r)];
            w[(i, r)] = w[(i, pj)];
            w[(i, pj)] = tmp;
        }
        let d = w[(r, r)];
        for i in r + 1..rows {
            let f = w[(i, r)] / d;
            for j in r..cols {
                w[(i, j)] -= f * w[(r, j)];
            }
        }
        r += 1;
    }
    r
}

/// [`rank`] with [`default_rank_tol`].
pub fn rank_default(a: &Matrix) -> usize {
    rank(a, default_rank_tol(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve_returns_rhs() {
        let b = Matrix::from_rows(&[[1.0, -2.0], [3.5, 0.0], [7.0, 1e3]]);
        assert_eq!(solve(&Matrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn diagonal_solve() {
        let a = Matrix::from_rows(&[[2.0, 0.0], [0.0, 4.0]]);
        let x = solve(&a, &Matrix::column(&[2.0, 8.0])).unwrap();
        assert_eq!(x, Matrix::column(&[1.0, 2.0]));
    }

    #[test]
    fn rank_deficient_is_singular() {
        let a = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]);
        assert_eq!(solve(&a, &Matrix::column(&[1.0, 2.0])), Err(Error::SingularMatrix));
        assert_eq!(determinant(&a).unwrap(), 0.0);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = Matrix::from_rows(&[[0.0, 1.0, 2.0], [1.0, 0.0, 3.0], [4.0, -3.0, 8.0]]);
        let b = Matrix::column(&[1.0, 2.0, 3.0]);
        let x = solve(&a, &b).unwrap();
        let r = &(&a * &x) - &b;
        assert!(r.max_abs() < 1e-12);
        assert!((determinant(&a).unwrap() - (-2.0)).abs() < 1e-12);
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            solve(&Matrix::zeros(2, 3), &Matrix::zeros(2, 1)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            solve(&Matrix::identity(2), &Matrix::zeros(3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rank_basic() {
        assert_eq!(rank_default(&Matrix::zeros(3, 3)), 0);
        assert_eq!(rank_default(&Matrix::identity(3)), 3);
        let a = Matrix::from_rows(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 0.0, 1.0]]);
        assert_eq!(rank_default(&a), 2);
        assert_eq!(rank_default(&Matrix::from_rows(&[[1.0, 2.0, 3.0]])), 1);
    }
}
