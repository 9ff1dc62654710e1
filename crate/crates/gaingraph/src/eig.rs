//! Eigenvalues of complex Hermitian matrices.
//!
//! The matrix is reduced to real symmetric tridiagonal form by complex
//! Householder reflections followed by a diagonal phase rotation, and the
//! tridiagonal problem is solved by the implicit-shift QL iteration with
//! accumulated transformations. Eigenvectors are carried along only so the
//! result can be verified: every eigenpair must satisfy
//! `||A v - lambda v|| <= tol * max(1, ||A||_F)` or the solve is rejected.
//!
//! The whole pipeline is sequential floating-point arithmetic, so results
//! are deterministic for identical input.

use num_complex::Complex64;

use crate::error::{GainGraphError, Result};

/// Residual bound for the internal eigenpair verification.
pub const RESIDUAL_TOL: f64 = 1e-8;

const QL_MAX_SWEEPS: usize = 60;

/// All eigenvalues of a Hermitian matrix (row-major `data`, order `n`),
/// sorted in descending order. Every eigenpair is residual-checked against
/// the input matrix before the values are returned.
pub(crate) fn hermitian_eigenvalues(n: usize, data: &[Complex64]) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![data[0].re]);
    }

    let mut a: Vec<Complex64> = data.to_vec();
    // Accumulated unitary: columns of `u` map tridiagonal coordinates back
    // to the original basis.
    let mut u: Vec<Complex64> = identity(n);

    householder_tridiagonalize(n, &mut a, &mut u);

    // Rotate the complex tridiagonal into a real one, folding the phases
    // into the accumulated unitary.
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.max(1) - 1];
    let mut phase = Complex64::new(1.0, 0.0);
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n {
        diag[i] = a[i * n + i].re;
        phases[i] = phase;
        if i + 1 < n {
            let e = a[(i + 1) * n + i];
            let r = e.norm();
            off[i] = r;
            if r > 0.0 {
                phase *= e / r;
            }
        }
    }
    for (i, p) in phases.iter().enumerate() {
        for row in 0..n {
            u[row * n + i] *= p;
        }
    }

    // Real tridiagonal QL with eigenvector accumulation.
    let mut z = real_identity(n);
    ql_implicit_shift(&mut diag, &mut off, &mut z, n)?;

    verify_eigenpairs(n, data, &diag, &z, &u)?;

    let mut values = diag;
    values.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    Ok(values)
}

fn identity(n: usize) -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        m[i * n + i] = Complex64::new(1.0, 0.0);
    }
    m
}

fn real_identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

/// Reduce the Hermitian matrix `a` to tridiagonal form in place,
/// accumulating the product of reflectors into `u`.
fn householder_tridiagonalize(n: usize, a: &mut [Complex64], u: &mut [Complex64]) {
    for k in 0..n.saturating_sub(2) {
        // Column below the subdiagonal.
        let mut norm_sq = 0.0;
        for i in (k + 1)..n {
            norm_sq += a[i * n + k].norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm <= f64::MIN_POSITIVE {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        // alpha = -exp(i arg(x0)) * ||x||, chosen to avoid cancellation.
        let alpha = if x0.norm() > 0.0 {
            -(x0 / x0.norm()) * norm
        } else {
            Complex64::new(-norm, 0.0)
        };
        // v = x - alpha e1, restricted to rows k+1..n.
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        for i in (k + 1)..n {
            v[i] = a[i * n + k];
        }
        v[k + 1] -= alpha;
        let v_norm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if v_norm_sq <= f64::MIN_POSITIVE {
            continue;
        }
        let beta = 2.0 / v_norm_sq;

        // Two-sided update A <- H A H with H = I - beta v v*:
        // p = beta A v, w = p - (beta/2)(v* p) v, A -= v w* + w v*.
        let mut p = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                s += a[i * n + j] * v[j];
            }
            p[i] = s * beta;
        }
        let vp: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let half_k = vp * (beta / 2.0);
        let w: Vec<Complex64> = p
            .iter()
            .zip(&v)
            .map(|(pi, vi)| pi - half_k * vi)
            .collect();
        for i in 0..n {
            for j in 0..n {
                let delta = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[i * n + j] -= delta;
            }
        }
        // u <- u H (right-multiplication by the reflector).
        for row in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                s += u[row * n + j] * v[j];
            }
            s *= beta;
            for j in (k + 1)..n {
                u[row * n + j] -= s * v[j].conj();
            }
        }
    }
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix, accumulating
/// the rotations into `z` (whose columns become the eigenvectors).
fn ql_implicit_shift(d: &mut [f64], e_in: &mut [f64], z: &mut [f64], n: usize) -> Result<()> {
    // Workspace copy with a trailing zero, as in the classic formulation.
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&e_in[..n - 1]);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_SWEEPS {
                return Err(GainGraphError::EigenConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + copysign(r, g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut underflowed = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let f = z[k * n + i + 1];
                    z[k * n + i + 1] = s * z[k * n + i] + c * f;
                    z[k * n + i] = c * z[k * n + i] - s * f;
                }
            }
            if underflowed {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    e_in[..n - 1].copy_from_slice(&e[..n - 1]);
    Ok(())
}

fn copysign(magnitude: f64, sign: f64) -> f64 {
    if sign >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// Check every eigenpair against the original matrix.
fn verify_eigenpairs(
    n: usize,
    original: &[Complex64],
    values: &[f64],
    z: &[f64],
    u: &[Complex64],
) -> Result<()> {
    let frob: f64 = original.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let scale = frob.max(1.0);
    for j in 0..n {
        // Eigenvector in the original basis: u * (real QL column j).
        let mut vec = vec![Complex64::new(0.0, 0.0); n];
        for (row, item) in vec.iter_mut().enumerate() {
            let mut s = Complex64::new(0.0, 0.0);
            for kk in 0..n {
                s += u[row * n + kk] * z[kk * n + j];
            }
            *item = s;
        }
        let mut residual_sq = 0.0;
        for row in 0..n {
            let mut av = Complex64::new(0.0, 0.0);
            for (col, vc) in vec.iter().enumerate() {
                av += original[row * n + col] * vc;
            }
            residual_sq += (av - vec[row] * values[j]).norm_sqr();
        }
        if residual_sq.sqrt() > RESIDUAL_TOL * scale {
            return Err(GainGraphError::NumericalConsistency(format!(
                "eigenpair residual {:.3e} exceeds {:.1e} * scale",
                residual_sq.sqrt(),
                RESIDUAL_TOL
            )));
        }
    }
    Ok(())
}
