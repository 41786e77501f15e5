//! General dense eigenvalues: balancing, Householder reduction to upper
//! Hessenberg form, then Francis double-shift QR.
//!
//! This path never looks at graph structure, so it can cross-check the
//! layer decomposition.

use super::{SpectralError, SquareMatrix};

/// Eigenvalue `re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl Eigenvalue {
    fn dist(self, other: Eigenvalue) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }
}

/// Eigenvalues closer than this (relative to `max(1, ‖A‖)`) are treated as
/// one cluster. A defective eigenvalue of multiplicity k is split by QR
/// into k values roughly `ε^(1/k)` apart.
pub const CLUSTER_TOL: f64 = 1e-4;

const ITERATIONS_PER_EIGENVALUE: usize = 100;
const RADIX: f64 = 2.0;

/// Scales rows and columns by powers of two so their norms are comparable.
/// Similarity transform: eigenvalues are unchanged.
fn balance(a: &mut SquareMatrix) {
    let n = a.dim();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in (0..n).filter(|&j| j != i) {
                c += a[(j, i)].abs();
                r += a[(i, j)].abs();
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= g;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Householder similarity reduction to upper Hessenberg form, in place.
fn hessenberg(a: &mut SquareMatrix) {
    let n = a.dim();
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
        for j in k..n {
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
        for i in k + 2..n {
            a[(i, k)] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (destroys `a`).
fn hessenberg_qr(
    a: &mut SquareMatrix,
    max_iterations: usize,
) -> Result<Vec<Eigenvalue>, SpectralError> {
    let n = a.dim();
    let mut wr = vec![0.0; n];
    let mut wi = vec![0.0; n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    let mut total = 0usize;
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            // look for a negligible subdiagonal element
            let mut l = nu;
            while l >= 1 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() + s == s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[(nu, nu)];
            if l == nu {
                wr[nu] = x + t;
                wi[nu] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = a[(nu - 1, nu - 1)];
            let mut w = a[(nu, nu - 1)] * a[(nu - 1, nu)];
            if l == nu - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + sign(z, p);
                    wr[nu - 1] = x + z;
                    wr[nu] = if z != 0.0 { x - w / z } else { x + z };
                    wi[nu - 1] = 0.0;
                    wi[nu] = 0.0;
                } else {
                    wr[nu - 1] = x + p;
                    wr[nu] = x + p;
                    wi[nu - 1] = -z;
                    wi[nu] = z;
                }
                nn -= 2;
                break;
            }
            if total >= max_iterations {
                return Err(SpectralError::NoConvergence { iterations: total });
            }
            if its == 10 || its == 20 {
                // exceptional shift
                t += x;
                for i in 0..=nu {
                    a[(i, i)] -= x;
                }
                let s = a[(nu, nu - 1)].abs() + a[(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total += 1;
            let (mut p, mut q, mut r);
            let mut m = nu - 2;
            loop {
                let z = a[(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - rr - ss;
                r = a[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                a[(i, i - 2)] = 0.0;
                if i != m + 2 {
                    a[(i, i - 3)] = 0.0;
                }
            }
            let mut k = m;
            while k < nu {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = if k + 1 != nu { a[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[(k, k - 1)] = -a[(k, k - 1)];
                        }
                    } else {
                        a[(k, k - 1)] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        let mut pp = a[(k, j)] + q * a[(k + 1, j)];
                        if k + 1 != nu {
                            pp += r * a[(k + 2, j)];
                            a[(k + 2, j)] -= pp * z;
                        }
                        a[(k + 1, j)] -= pp * y;
                        a[(k, j)] -= pp * x;
                    }
                    let mmin = if nu < k + 3 { nu } else { k + 3 };
                    for i in l..=mmin {
                        let mut pp = x * a[(i, k)] + y * a[(i, k + 1)];
                        if k + 1 != nu {
                            pp += z * a[(i, k + 2)];
                            a[(i, k + 2)] -= pp * r;
                        }
                        a[(i, k + 1)] -= pp * q;
                        a[(i, k)] -= pp;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Eigenvalue { re, im })
        .collect())
}

/// All eigenvalues of `m` as computed by QR, sorted by real part.
pub fn dense_eigenvalues(m: &SquareMatrix) -> Result<Vec<Eigenvalue>, SpectralError> {
    let n = m.dim();
    if m.row_sums().iter().any(|s| !s.is_finite()) {
        return Err(SpectralError::NonFinite);
    }
    let mut a = m.clone();
    balance(&mut a);
    hessenberg(&mut a);
    let mut eig = hessenberg_qr(&mut a, ITERATIONS_PER_EIGENVALUE * n.max(1))?;
    eig.sort_by(|x, y| x.re.total_cmp(&y.re));
    Ok(eig)
}

/// Replaces each cluster of nearby eigenvalues by its mean.
///
/// The mean of a cluster is the trace of the corresponding Schur block
/// divided by its size, which stays accurate even when the individual
/// eigenvalues of a defective cluster do not.
pub fn merge_clusters(eig: &[Eigenvalue], radius: f64) -> Vec<Eigenvalue> {
    let n = eig.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if eig[i].dist(eig[j]) <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut sums = vec![(0.0, 0.0, 0usize); n];
    for (i, e) in eig.iter().enumerate() {
        let r = find(&mut parent, i);
        sums[r].0 += e.re;
        sums[r].1 += e.im;
        sums[r].2 += 1;
    }
    let mut out: Vec<Eigenvalue> = (0..n)
        .map(|i| {
            let (re, im, k) = sums[find(&mut parent, i)];
            Eigenvalue {
                re: re / k as f64,
                im: im / k as f64,
            }
        })
        .collect();
    out.sort_by(|x, y| x.re.total_cmp(&y.re));
    out
}

/// Eigenvalues of a matrix with real spectrum, ascending.
///
/// Fails if, after merging clusters, some eigenvalue has an imaginary part
/// larger than `tol`.
pub fn dense_real_eigenvalues(m: &SquareMatrix, tol: f64) -> Result<Vec<f64>, SpectralError> {
    if !(tol > 0.0) {
        return Err(SpectralError::InvalidTolerance(tol));
    }
    let raw = dense_eigenvalues(m)?;
    let radius = CLUSTER_TOL * (m.abs_sum() / m.dim().max(1) as f64).max(1.0);
    let merged = merge_clusters(&raw, radius);
    if let Some(e) = merged.iter().find(|e| e.im.abs() > tol) {
        return Err(SpectralError::ComplexSpectrum { re: e.re, im: e.im });
    }
    Ok(merged.into_iter().map(|e| e.re).collect())
}
