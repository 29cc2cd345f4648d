//! Hermitian eigensolver, eigenvalue clustering, and singular values.
//!
//! The solver is a cyclic Jacobi iteration on complex Hermitian matrices.
//! Each rotation annihilates one off-diagonal entry with a unitary plane
//! rotation whose phase absorbs the argument of that entry; the real
//! rotation angle then follows the classical symmetric recipe.

use super::complex::Complex;
use super::mat::Mat;
use crate::error::{Error, Result};
use std::cmp::Ordering;

/// Full-sweep budget before the solver gives up.
pub const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns `(eigenvalue, eigenvector)` pairs forming an orthonormal basis,
/// sorted by descending eigenvalue. Exact ties are broken by lexicographic
/// order of the eigenvector entries so the output is deterministic.
pub fn hermitian_eigen(h: &Mat, tol: f64) -> Result<Vec<(f64, Vec<Complex>)>> {
    let n = h.rows();
    if !h.is_square() {
        return Err(Error::Malformed {
            what: "matrix",
            detail: format!("{}x{} is not square", h.rows(), h.cols()),
        });
    }
    let deviation = h.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }

    // Work on an exactly Hermitian copy: upper triangle is the truth.
    let mut a = h.clone();
    for i in 0..n {
        a[(i, i)] = Complex::real(a[(i, i)].re);
        for j in (i + 1)..n {
            a[(j, i)] = a[(i, j)].conj();
        }
    }
    let mut v = Mat::identity(n);

    let norm = a.frobenius();
    if norm > 0.0 {
        let target = norm * tol.clamp(5e-16, 1e-14);
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= target {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > target {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let columns: Vec<Vec<Complex>> = (0..n).map(|j| v.col(j)).collect();
    order.sort_by(|&i, &j| {
        match a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap() {
            Ordering::Equal => lexicographic(&columns[i], &columns[j]),
            other => other,
        }
    });
    Ok(order
        .into_iter()
        .map(|i| (a[(i, i)].re, columns[i].clone()))
        .collect())
}

fn off_diagonal_norm(a: &Mat) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += a[(p, q)].abs2();
        }
    }
    (2.0 * sum).sqrt()
}

fn lexicographic(x: &[Complex], y: &[Complex]) -> Ordering {
    for (a, b) in x.iter().zip(y.iter()) {
        match a
            .re
            .partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
        {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// One Jacobi rotation zeroing the `(p, q)` entry; `a` stays Hermitian and
/// the rotation accumulates into the columns of `v`.
fn rotate(a: &mut Mat, v: &mut Mat, p: usize, q: usize) {
    let b = a[(p, q)];
    let beta = b.abs();
    if beta < 1e-300 {
        // far below any convergence target; zeroing directly avoids
        // overflow in 1/beta
        a[(p, q)] = Complex::ZERO;
        a[(q, p)] = Complex::ZERO;
        return;
    }
    let u = b.scale(1.0 / beta); // unit phase of the pivot entry
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * beta);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let su = u.scale(s);
    let su_conj = u.conj().scale(s);

    let n = a.rows();
    for j in 0..n {
        if j == p || j == q {
            continue;
        }
        let ajp = a[(j, p)];
        let ajq = a[(j, q)];
        let new_p = ajp.scale(c) - su_conj * ajq;
        let new_q = su * ajp + ajq.scale(c);
        a[(j, p)] = new_p;
        a[(p, j)] = new_p.conj();
        a[(j, q)] = new_q;
        a[(q, j)] = new_q.conj();
    }
    a[(p, p)] = Complex::real(app - t * beta);
    a[(q, q)] = Complex::real(aqq + t * beta);
    a[(p, q)] = Complex::ZERO;
    a[(q, p)] = Complex::ZERO;

    for j in 0..n {
        let vjp = v[(j, p)];
        let vjq = v[(j, q)];
        v[(j, p)] = vjp.scale(c) - su_conj * vjq;
        v[(j, q)] = su * vjp + vjq.scale(c);
    }
}

/// Eigenvalues grouped into clusters of near-equal values with exact
/// multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// `(representative value, multiplicity)`, sorted by descending value.
    pub clusters: Vec<(f64, usize)>,
    pub tolerance: f64,
}

impl Spectrum {
    /// Sum of the multiplicities.
    pub fn order(&self) -> usize {
        self.clusters.iter().map(|&(_, m)| m).sum()
    }

    /// Multiplicity of the cluster whose representative is within `tol` of
    /// `value`, if any.
    pub fn multiplicity_of(&self, value: f64, tol: f64) -> Option<usize> {
        self.clusters
            .iter()
            .find(|&&(v, _)| (v - value).abs() <= tol)
            .map(|&(_, m)| m)
    }
}

/// Greedy clustering of eigenvalues: consecutive sorted values closer than
/// `tol` share a cluster. Fails if two resulting representatives sit within
/// `2 * tol` of each other, since membership would then be ambiguous.
pub fn cluster_eigenvalues(values: &[f64], tol: f64) -> Result<Spectrum> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let mut clusters: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i - 1] - sorted[i] > tol {
            let group = &sorted[start..i];
            let mean = group.iter().sum::<f64>() / group.len() as f64;
            clusters.push((mean, group.len()));
            start = i;
        }
    }

    for w in clusters.windows(2) {
        if w[0].0 - w[1].0 <= 2.0 * tol {
            return Err(Error::AmbiguousClustering {
                lo: w[1].0,
                hi: w[0].0,
            });
        }
    }

    Ok(Spectrum {
        clusters,
        tolerance: tol,
    })
}

/// Singular values of `x`, sorted descending, computed as square roots of
/// the eigenvalues of `x* x`.
pub fn singular_values(x: &Mat, tol: f64) -> Result<Vec<f64>> {
    let gram = x.adjoint().mul(x);
    let eigen = hermitian_eigen(&gram, tol)?;
    Ok(eigen
        .into_iter()
        .map(|(lambda, _)| lambda.max(0.0).sqrt())
        .collect())
}
