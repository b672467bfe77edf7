//! Eigenvalues of real square matrices.
//!
//! The matrix is balanced, reduced to upper Hessenberg form with Householder
//! reflections and then driven to quasi-triangular form with implicit
//! Francis double-shift QR sweeps. Trailing 1x1 and 2x2 blocks are resolved
//! in closed form as they deflate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{Error, Result};

/// A subdiagonal entry deflates once it falls below this fraction of its
/// neighbouring diagonal magnitudes.
pub const DEFLATION_TOL: f64 = 1e-12;

/// QR sweeps allowed per eigenvalue before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real matrix, sorted by real part then imaginary part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(mut values: Vec<Complex64>) -> Self {
        values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Self { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn product(&self) -> Complex64 {
        self.values.iter().product()
    }

    pub fn max_real(&self) -> f64 {
        self.values.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }

    /// All eigenvalues strictly in the open left half-plane.
    pub fn is_hurwitz(&self) -> bool {
        self.values.iter().all(|z| z.re < 0.0)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    /// Largest distance between paired eigenvalues after greedy nearest matching.
    /// `None` when lengths differ.
    pub fn max_matching_distance(&self, other: &[Complex64]) -> Option<f64> {
        if other.len() != self.values.len() {
            return None;
        }
        let mut pool: Vec<Complex64> = other.to_vec();
        let mut worst = 0.0f64;
        for z in &self.values {
            let (idx, d) = pool
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (z - w).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))?;
            worst = worst.max(d);
            pool.swap_remove(idx);
        }
        Some(worst)
    }

    /// Largest relative distance `|z - w| / |w|` after nearest matching.
    pub fn max_relative_matching_distance(&self, targets: &[Complex64]) -> Option<f64> {
        if targets.len() != self.values.len() {
            return None;
        }
        let mut pool: Vec<Complex64> = targets.to_vec();
        let mut worst = 0.0f64;
        for z in &self.values {
            let (idx, d) = pool
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (z - w).norm() / w.norm().max(f64::MIN_POSITIVE)))
                .min_by(|a, b| a.1.total_cmp(&b.1))?;
            worst = worst.max(d);
            pool.swap_remove(idx);
        }
        Some(worst)
    }
}

/// Computes all eigenvalues of a real square matrix.
pub fn eigenvalues(a: &Matrix) -> Result<Spectrum> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalues need a non-empty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut h = a.clone();
    balance(&mut h);
    hessenberg(&mut h);
    Ok(Spectrum::new(hqr(&mut h)?))
}

/// Diagonal similarity scaling by powers of two so row and column norms match.
fn balance(a: &mut Matrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= inv;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg(a: &mut Matrix) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let alpha_norm = (k + 1..n).map(|i| a[(i, k)].powi(2)).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let alpha = if a[(k + 1, k)] > 0.0 { -alpha_norm } else { alpha_norm };
        let mut v: Vec<f64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // H = I - 2 v vᵀ / (vᵀv), applied as H·A·H.
        for j in 0..n {
            let dot: f64 = (0..v.len()).map(|t| v[t] * a[(k + 1 + t, j)]).sum();
            let f = 2.0 * dot / vnorm2;
            for t in 0..v.len() {
                a[(k + 1 + t, j)] -= f * v[t];
            }
        }
        for i in 0..n {
            let dot: f64 = (0..v.len()).map(|t| a[(i, k + 1 + t)] * v[t]).sum();
            let f = 2.0 * dot / vnorm2;
            for t in 0..v.len() {
                a[(i, k + 1 + t)] -= f * v[t];
            }
        }
        for i in k + 2..n {
            a[(i, k)] = 0.0;
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; destroys `h`.
fn hqr(h: &mut Matrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += h[(i, j)].abs();
        }
    }
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            // Locate the top of the unreduced trailing block.
            let mut l = nu;
            while l >= 1 {
                let mut s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if h[(l, l - 1)].abs() <= DEFLATION_TOL * s {
                    h[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = h[(nu, nu)];
            if l == nu {
                eig[nu] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            let mut y = h[(nu - 1, nu - 1)];
            let mut w = h[(nu, nu - 1)] * h[(nu - 1, nu)];
            if l == nu - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    let hi = x + z;
                    let lo = if z != 0.0 { x - w / z } else { hi };
                    eig[nu - 1] = Complex64::new(hi, 0.0);
                    eig[nu] = Complex64::new(lo, 0.0);
                } else {
                    eig[nu - 1] = Complex64::new(x + p, z);
                    eig[nu] = Complex64::new(x + p, -z);
                }
                nn -= 2;
                break;
            }

            if its == MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    index: nu,
                    sweeps: MAX_SWEEPS,
                });
            }
            if its > 0 && its % 10 == 0 {
                // Exceptional shift.
                t += x;
                for i in 0..=nu {
                    h[(i, i)] -= x;
                }
                let s = h[(nu, nu - 1)].abs() + h[(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // Look for two consecutive small subdiagonal elements.
            let mut m = nu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = h[(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h[(m + 1, m)] + h[(m, m + 1)];
                q = h[(m + 1, m + 1)] - z - rr - ss;
                r = h[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = h[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                h[(i, i - 2)] = 0.0;
                if i != m + 2 {
                    h[(i, i - 3)] = 0.0;
                }
            }
            // Double-shift QR step on rows l..=nu, columns m..=nu.
            let mut k = m;
            while k < nu {
                if k != m {
                    p = h[(k, k - 1)];
                    q = h[(k + 1, k - 1)];
                    r = if k != nu - 1 { h[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            h[(k, k - 1)] = -h[(k, k - 1)];
                        }
                    } else {
                        h[(k, k - 1)] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        let mut pp = h[(k, j)] + q * h[(k + 1, j)];
                        if k != nu - 1 {
                            pp += r * h[(k + 2, j)];
                            h[(k + 2, j)] -= pp * z;
                        }
                        h[(k + 1, j)] -= pp * y;
                        h[(k, j)] -= pp * x;
                    }
                    let mmin = nu.min(k + 3);
                    for i in l..=mmin {
                        let mut pp = x * h[(i, k)] + y * h[(i, k + 1)];
                        if k != nu - 1 {
                            pp += z * h[(i, k + 2)];
                            h[(i, k + 2)] -= pp * r;
                        }
                        h[(i, k + 1)] -= pp * q;
                        h[(i, k)] -= pp;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(eig)
}
