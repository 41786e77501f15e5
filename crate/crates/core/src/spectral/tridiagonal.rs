//! Sturm-sequence bisection for symmetric tridiagonal matrices.
//!
//! The number of negative pivots in the LDLᵀ factorization of `T - xI`
//! equals the number of eigenvalues of `T` below `x`, so any eigenvalue can
//! be bracketed by bisection on `x`.

use std::ops::RangeInclusive;

use super::{SpectralError, SquareMatrix};

/// Default absolute tolerance for bisection.
pub const BISECTION_TOL: f64 = 1e-12;
const MAX_BISECTIONS: usize = 200;

/// Tridiagonal matrix with diagonal `a` and every off-diagonal entry `-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    diag: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>) -> Self {
        Self { diag }
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Recognizes a dense matrix of exactly this shape.
    pub fn from_dense(m: &SquareMatrix) -> Option<Self> {
        let n = m.dim();
        for i in 0..n {
            for j in 0..n {
                let expected = match i.abs_diff(j) {
                    0 => continue,
                    1 => -1.0,
                    _ => 0.0,
                };
                if m[(i, j)] != expected {
                    return None;
                }
            }
        }
        Some(Self::new((0..n).map(|i| m[(i, i)]).collect()))
    }

    pub fn to_dense(&self) -> SquareMatrix {
        let n = self.dim();
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
            if i + 1 < n {
                m[(i, i + 1)] = -1.0;
                m[(i + 1, i)] = -1.0;
            }
        }
        m
    }

    /// Contiguous principal submatrix over 0-based `window`.
    pub fn window(&self, window: RangeInclusive<usize>) -> Self {
        Self::new(self.diag[window].to_vec())
    }

    pub fn smallest_eigenvalue(&self, tol: f64) -> Result<f64, SpectralError> {
        tridiagonal_smallest_eig(self, tol)
    }
}

/// Number of eigenvalues of the symmetric tridiagonal matrix
/// `(diag, off)` strictly below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let scale = off.iter().fold(1.0f64, |m, e| m.max(e * e));
    let pivmin = f64::MIN_POSITIVE * scale;
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 {
            0.0
        } else {
            off[i - 1] * off[i - 1] / q
        };
        q = diag[i] - x - coupling;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest (0-based) eigenvalue of a symmetric tridiagonal
/// matrix by bisection on `[lo, hi]`, which must bracket it.
fn bisect(diag: &[f64], off: &[f64], k: usize, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_tol(tol: f64) -> Result<(), SpectralError> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(SpectralError::InvalidTolerance(tol))
    }
}

/// Smallest eigenvalue of `T` within `tol`.
///
/// The eigenvalue lies in `[min a - 2, min a]`: Gershgorin's discs give the
/// lower end and the Rayleigh quotient of a unit vector the upper end.
pub fn tridiagonal_smallest_eig(t: &TridiagonalMatrix, tol: f64) -> Result<f64, SpectralError> {
    check_tol(tol)?;
    if t.diag.is_empty() {
        return Err(SpectralError::TooSmall { n: 0, min: 1 });
    }
    let min_diag = t.diag.iter().copied().fold(f64::INFINITY, f64::min);
    let lower = if t.dim() == 1 {
        min_diag
    } else {
        min_diag - 2.0
    };
    // count(min_diag) can be 0 only when min_diag itself is the eigenvalue
    let upper = min_diag + tol;
    let off = vec![-1.0; t.dim().saturating_sub(1)];
    Ok(bisect(&t.diag, &off, 0, lower, upper, tol))
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
///
/// Returns `(diagonal, off_diagonal)`.
pub fn tridiagonalize(m: &SquareMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.dim();
    let mut a = m.clone();
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n)
            .map(|i| a[(i, k)] * a[(i, k)])
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[(k + 1, k)] > 0.0 { -norm } else { norm };
        let mut v = vec![0.0; n];
        for i in k + 1..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        // A <- H A H with H = I - 2vvᵀ/vᵀv
        for j in 0..n {
            let s: f64 = (k + 1..n).map(|i| v[i] * a[(i, j)]).sum::<f64>() * 2.0 / vv;
            for i in k + 1..n {
                a[(i, j)] -= s * v[i];
            }
        }
        for i in 0..n {
            let s: f64 = (k + 1..n).map(|j| a[(i, j)] * v[j]).sum::<f64>() * 2.0 / vv;
            for j in k + 1..n {
                a[(i, j)] -= s * v[j];
            }
        }
    }
    let diag = (0..n).map(|i| a[(i, i)]).collect();
    let off = (1..n)
        .map(|i| 0.5 * (a[(i, i - 1)] + a[(i - 1, i)]))
        .collect();
    (diag, off)
}

/// Smallest eigenvalue of a dense symmetric matrix.
pub fn symmetric_smallest_eigenvalue(m: &SquareMatrix, tol: f64) -> Result<f64, SpectralError> {
    symmetric_eigenvalue(m, 0, tol)
}

/// The `k`-th smallest (0-based) eigenvalue of a dense symmetric matrix:
/// tridiagonalize, then bisect within Gershgorin bounds.
pub fn symmetric_eigenvalue(m: &SquareMatrix, k: usize, tol: f64) -> Result<f64, SpectralError> {
    check_tol(tol)?;
    if m.dim() <= k {
        return Err(SpectralError::TooSmall {
            n: m.dim(),
            min: k + 1,
        });
    }
    let (diag, off) = tridiagonalize(m);
    let n = diag.len();
    let radius = |i: usize| {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        left + right
    };
    let lower = (0..n)
        .map(|i| diag[i] - radius(i))
        .fold(f64::INFINITY, f64::min);
    let upper = (0..n)
        .map(|i| diag[i] + radius(i))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(bisect(&diag, &off, k, lower - tol, upper + tol, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::dense_real_eigenvalues;

    #[test]
    fn one_by_one() {
        let t = TridiagonalMatrix::new(vec![2.0]);
        assert!((tridiagonal_smallest_eig(&t, 1e-12).unwrap() - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn two_by_two_closed_form() {
        // det [[1-x, -1], [-1, 2-x]] = x² - 3x + 1
        let t = TridiagonalMatrix::new(vec![1.0, 2.0]);
        let exact = (3.0 - 5f64.sqrt()) / 2.0;
        let got = tridiagonal_smallest_eig(&t, 1e-12).unwrap();
        assert!((got - exact).abs() <= 1e-12);
        assert!((got - 0.381966).abs() < 1e-6);
        let dense = dense_real_eigenvalues(&t.to_dense(), 1e-9).unwrap();
        assert!((dense[0] - exact).abs() <= 1e-10);
    }

    #[test]
    fn end_pattern_block_is_below_one() {
        // endpoint with zero upper degree: diag (f1 + 1, f2 + 2) with f1 = 0
        for f2 in 0..3 {
            let b = TridiagonalMatrix::new(vec![1.0, f2 as f64 + 2.0]);
            assert!((b.to_dense().shifted(1.0).determinant() + 1.0).abs() < 1e-12);
            assert!(b.smallest_eigenvalue(1e-12).unwrap() < 1.0);
        }
    }

    #[test]
    fn tolerance_must_be_positive() {
        let t = TridiagonalMatrix::new(vec![1.0]);
        assert_eq!(
            tridiagonal_smallest_eig(&t, 0.0),
            Err(SpectralError::InvalidTolerance(0.0))
        );
        assert!(tridiagonal_smallest_eig(&t, -1.0).is_err());
        assert!(tridiagonal_smallest_eig(&t, f64::NAN).is_err());
    }

    #[test]
    fn sturm_counts() {
        // eigenvalues of [[1, -1], [-1, 3]] are 2 ∓ √2
        let (d, e) = ([1.0, 3.0], [-1.0]);
        assert_eq!(sturm_count(&d, &e, 0.0), 0);
        assert_eq!(sturm_count(&d, &e, 1.0), 1);
        assert_eq!(sturm_count(&d, &e, 4.0), 2);
    }

    #[test]
    fn free_chain_matches_cosine_formula() {
        // diag 2: eigenvalues 2 - 2cos(kπ/(n+1))
        for n in 1..12 {
            let t = TridiagonalMatrix::new(vec![2.0; n]);
            let exact = 2.0 - 2.0 * (std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((t.smallest_eigenvalue(1e-12).unwrap() - exact).abs() < 1e-11);
        }
    }

    #[test]
    fn from_dense_recognizes_shape() {
        let t = TridiagonalMatrix::new(vec![1.0, 3.0, 2.0]);
        assert_eq!(
            TridiagonalMatrix::from_dense(&t.to_dense()),
            Some(t.clone())
        );
        let mut m = t.to_dense();
        m[(0, 2)] = 0.5;
        assert_eq!(TridiagonalMatrix::from_dense(&m), None);
        assert_eq!(t.window(1..=2).diag(), &[3.0, 2.0]);
    }

    #[test]
    fn symmetric_route_matches_dense() {
        let m = SquareMatrix::from_rows(&[
            [3.0, -1.0, -1.0, 0.0],
            [-1.0, 3.0, -1.0, -1.0],
            [-1.0, -1.0, 2.0, 0.0],
            [0.0, -1.0, 0.0, 1.5],
        ]);
        let want = dense_real_eigenvalues(&m, 1e-9).unwrap()[0];
        let got = symmetric_smallest_eigenvalue(&m, 1e-12).unwrap();
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        let (d, e) = tridiagonalize(&m);
        assert!((d.iter().sum::<f64>() - 9.5).abs() < 1e-12);
        assert_eq!(e.len(), 3);
    }
}
