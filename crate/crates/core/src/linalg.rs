//! Dense symmetric linear algebra for the solvers.
//!
//! Everything here is deterministic: fixed sweep orders, fixed start
//! vectors, no randomness. Solver outputs therefore reproduce bit-for-bit
//! on reruns with the same inputs.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

/// Length of the packed symmetric representation of a `d x d` matrix.
pub fn svec_len(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Largest `d` with `d(d+1)/2 = m`, or an error when `m` is not triangular.
pub fn svec_dim(m: usize) -> Result<usize> {
    let d = ((((8 * m + 1) as f64).sqrt() as usize).saturating_sub(1)) / 2;
    for cand in d.saturating_sub(1)..=d + 1 {
        if svec_len(cand) == m {
            return Ok(cand);
        }
    }
    Err(Error::DimensionMismatch {
        what: "svec length",
        expected: svec_len(d),
        got: m,
    })
}

/// Pack a symmetric matrix into upper-triangle coordinates with the
/// off-diagonal entries scaled by sqrt(2), so that
/// `<svec(A), svec(B)> = <A, B>_F`.
///
/// Entry order is column-major over the upper triangle:
/// (0,0), (0,1), (1,1), (0,2), (1,2), (2,2), ...
pub fn svec(m: &Array2<f64>) -> Result<Array1<f64>> {
    let d = m.nrows();
    check_symmetric(m, 1e-9)?;
    let mut v = Array1::zeros(svec_len(d));
    let mut idx = 0;
    for j in 0..d {
        for i in 0..=j {
            v[idx] = if i == j {
                m[[i, j]]
            } else {
                std::f64::consts::SQRT_2 * m[[i, j]]
            };
            idx += 1;
        }
    }
    Ok(v)
}

/// Inverse of [`svec`].
pub fn smat(v: &Array1<f64>, d: usize) -> Result<Array2<f64>> {
    if v.len() != svec_len(d) {
        return Err(Error::DimensionMismatch {
            what: "smat input",
            expected: svec_len(d),
            got: v.len(),
        });
    }
    let mut m = Array2::zeros((d, d));
    let mut idx = 0;
    for j in 0..d {
        for i in 0..=j {
            if i == j {
                m[[i, j]] = v[idx];
            } else {
                let x = v[idx] / std::f64::consts::SQRT_2;
                m[[i, j]] = x;
                m[[j, i]] = x;
            }
            idx += 1;
        }
    }
    Ok(m)
}

/// Maximum absolute asymmetry `max_ij |a_ij - a_ji|`.
pub fn asymmetry(a: &Array2<f64>) -> f64 {
    let d = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in i + 1..d {
            worst = worst.max((a[[i, j]] - a[[j, i]]).abs());
        }
    }
    worst
}

pub fn check_symmetric(a: &Array2<f64>, tol: f64) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            what: "square matrix",
            expected: a.nrows(),
            got: a.ncols(),
        });
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    let asym = asymmetry(a);
    if asym > tol * scale {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

pub fn check_finite(a: &Array2<f64>, what: &'static str) -> Result<()> {
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite(what));
    }
    Ok(())
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues in ascending order with matching eigenvector columns
/// (`a = V diag(w) V^T`). Intended for the small dense matrices of this
/// crate (d up to a few hundred).
pub fn eigh(a: &Array2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    check_finite(a, "eigh input")?;
    check_symmetric(a, 1e-8)?;
    let d = a.nrows();
    if d == 0 {
        return Ok((Array1::zeros(0), Array2::zeros((0, 0))));
    }
    let mut m = a.clone();
    // symmetrize exactly so sweeps act on one triangle
    for i in 0..d {
        for j in i + 1..d {
            let x = 0.5 * (m[[i, j]] + m[[j, i]]);
            m[[i, j]] = x;
            m[[j, i]] = x;
        }
    }
    let mut v: Array2<f64> = Array2::eye(d);
    let fro: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let tol = 1e-15 * fro;

    let max_sweeps = 60;
    let mut converged = false;
    for _ in 0..max_sweeps {
        let mut off = 0.0f64;
        for i in 0..d {
            for j in i + 1..d {
                off += m[[i, j]] * m[[i, j]];
            }
        }
        if off.sqrt() <= tol {
            converged = true;
            break;
        }
        for p in 0..d - 1 {
            for q in p + 1..d {
                let apq = m[[p, q]];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = m[[p, p]];
                let aqq = m[[q, q]];
                let theta = (aqq - app) / (2.0 * apq);
                // stable rotation: t = sign(theta) / (|theta| + sqrt(theta^2 + 1))
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    let mkp = m[[k, p]];
                    let mkq = m[[k, q]];
                    m[[k, p]] = c * mkp - s * mkq;
                    m[[k, q]] = s * mkp + c * mkq;
                }
                for k in 0..d {
                    let mpk = m[[p, k]];
                    let mqk = m[[q, k]];
                    m[[p, k]] = c * mpk - s * mqk;
                    m[[q, k]] = s * mpk + c * mqk;
                }
                for k in 0..d {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        // one final check: tiny residual off-diagonals are acceptable
        let mut off = 0.0f64;
        for i in 0..d {
            for j in i + 1..d {
                off += m[[i, j]] * m[[i, j]];
            }
        }
        if off.sqrt() > 1e-8 * fro {
            return Err(Error::EigenFailure);
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| m[[i, i]].partial_cmp(&m[[j, j]]).unwrap().then(i.cmp(&j)));
    let w = Array1::from_iter(order.iter().map(|&i| m[[i, i]]));
    let mut vs = Array2::zeros((d, d));
    for (col, &i) in order.iter().enumerate() {
        for r in 0..d {
            vs[[r, col]] = v[[r, i]];
        }
    }
    Ok((w, vs))
}

/// Operator norm (largest-magnitude eigenvalue) of a symmetric matrix with
/// the associated eigenvector, by shifted power iteration.
///
/// A Gershgorin shift makes both `A + sI` and `sI - A` positive
/// semidefinite, so plain power iteration converges monotonically on each;
/// the larger of `lambda_max` and `-lambda_min` is the norm. Start vector
/// is fixed, relative tolerance 1e-8, iteration cap 10_000.
pub fn opnorm_sym(a: &Array2<f64>) -> (f64, Array1<f64>) {
    let d = a.nrows();
    if d == 0 {
        return (0.0, Array1::zeros(0));
    }
    let shift = gershgorin_radius(a);
    if shift == 0.0 {
        return (0.0, start_vector(d));
    }
    let (hi, v_hi) = power_shifted(a, shift, 1.0);
    let (lo, v_lo) = power_shifted(a, shift, -1.0);
    // hi ~ lambda_max(A), lo ~ -lambda_min(A); the norm is their max
    if hi >= lo {
        (hi.max(0.0), v_hi)
    } else {
        (lo.max(0.0), v_lo)
    }
}

fn gershgorin_radius(a: &Array2<f64>) -> f64 {
    let d = a.nrows();
    let mut r = 0.0f64;
    for i in 0..d {
        let mut row = 0.0;
        for j in 0..d {
            row += a[[i, j]].abs();
        }
        r = r.max(row);
    }
    r
}

fn start_vector(d: usize) -> Array1<f64> {
    let mut v = Array1::from_iter((0..d).map(|i| 1.0 + 0.1 * ((i % 7) as f64)));
    let n = v.dot(&v).sqrt();
    v.mapv_inplace(|x| x / n);
    v
}

/// Power iteration on `sign*A + shift*I`; returns the extreme eigenvalue of
/// `sign*A` and its eigenvector.
fn power_shifted(a: &Array2<f64>, shift: f64, sign: f64) -> (f64, Array1<f64>) {
    let d = a.nrows();
    let mut x = start_vector(d);
    let mut lambda_prev = f64::INFINITY;
    let mut lambda = 0.0;
    for _ in 0..10_000 {
        let mut y = a.dot(&x);
        if sign < 0.0 {
            y.mapv_inplace(|v| -v);
        }
        y.scaled_add(shift, &x);
        let norm = y.dot(&y).sqrt();
        if norm < 1e-300 {
            return (0.0, x);
        }
        y.mapv_inplace(|v| v / norm);
        lambda = norm; // Rayleigh quotient of the PSD shifted matrix
        x = y;
        if (lambda - lambda_prev).abs() <= 1e-8 * lambda.max(1.0) {
            break;
        }
        lambda_prev = lambda;
    }
    (lambda - shift, x)
}

/// Cholesky factor of a symmetric positive definite matrix, or `None`.
pub fn cholesky(a: &Array2<f64>) -> Option<Array2<f64>> {
    let d = a.nrows();
    let mut l: Array2<f64> = Array2::zeros((d, d));
    for i in 0..d {
        for j in 0..=i {
            let mut s = a[[i, j]];
            for k in 0..j {
                s -= l[[i, k]] * l[[j, k]];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return None;
                }
                l[[i, j]] = s.sqrt();
            } else {
                l[[i, j]] = s / l[[j, j]];
            }
        }
    }
    Some(l)
}

/// log det of a symmetric positive definite matrix via Cholesky.
pub fn logdet_spd(a: &Array2<f64>) -> Option<f64> {
    let l = cholesky(a)?;
    Some(2.0 * (0..a.nrows()).map(|i| l[[i, i]].ln()).sum::<f64>())
}

/// Solve the small SPD system `A x = b` in place (Gaussian elimination with
/// partial pivoting; matrices here are at most a handful of rows).
pub fn solve_small(a: &Array2<f64>, b: &Array1<f64>) -> Option<Array1<f64>> {
    let n = a.nrows();
    let mut m = a.clone();
    let mut x = b.clone();
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if m[[r, col]].abs() > m[[piv, col]].abs() {
                piv = r;
            }
        }
        if m[[piv, col]].abs() < 1e-300 {
            return None;
        }
        if piv != col {
            for c in 0..n {
                m.swap([col, c], [piv, c]);
            }
            x.swap(col, piv);
        }
        for r in col + 1..n {
            let f = m[[r, col]] / m[[col, col]];
            for c in col..n {
                m[[r, c]] -= f * m[[col, c]];
            }
            x[r] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        for r in 0..col {
            let f = m[[r, col]] / m[[col, col]];
            x[r] -= f * x[col];
        }
        x[col] /= m[[col, col]];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn svec_identity() {
        let v = svec(&Array2::eye(2)).unwrap();
        assert_eq!(v.to_vec(), vec![1.0, 0.0, 1.0]);
    }

    #[test]
    fn svec_isometry_all_ones() {
        // <M, M>_F for the all-ones 3x3 symmetric matrix is 9 both ways
        let m = Array2::from_elem((3, 3), 1.0);
        let v = svec(&m).unwrap();
        let fro: f64 = m.iter().map(|x| x * x).sum();
        assert!((v.dot(&v) - fro).abs() < 1e-12);
        assert!((fro - 9.0).abs() < 1e-12);
    }

    #[test]
    fn smat_roundtrip() {
        let m = array![[1.0, 0.5, -2.0], [0.5, 3.0, 0.25], [-2.0, 0.25, -1.0]];
        let back = smat(&svec(&m).unwrap(), 3).unwrap();
        for (a, b) in m.iter().zip(back.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn eigh_diagonal() {
        let (w, v) = eigh(&array![[3.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-12 && (w[1] - 3.0).abs() < 1e-12);
        assert!((v[[1, 0]].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigh_reconstructs() {
        let a = array![
            [2.0, -1.0, 0.3, 0.0],
            [-1.0, 1.5, 0.2, -0.4],
            [0.3, 0.2, -0.7, 1.1],
            [0.0, -0.4, 1.1, 0.9]
        ];
        let (w, v) = eigh(&a).unwrap();
        let recon = v.dot(&Array2::from_diag(&w)).dot(&v.t());
        for (x, y) in a.iter().zip(recon.iter()) {
            assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
    }

    #[test]
    fn opnorm_matches_eigh() {
        let a = array![[1.0, 2.0, 0.0], [2.0, -3.0, 1.0], [0.0, 1.0, 0.5]];
        let (w, _) = eigh(&a).unwrap();
        let expect = w.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        let (norm, v) = opnorm_sym(&a);
        assert!((norm - expect).abs() < 1e-6 * expect);
        // v is the associated eigenvector
        let av = a.dot(&v);
        let lambda = v.dot(&av);
        assert!((lambda.abs() - expect).abs() < 1e-5 * expect);
    }

    #[test]
    fn opnorm_zero() {
        let (norm, _) = opnorm_sym(&Array2::zeros((4, 4)));
        assert_eq!(norm, 0.0);
    }

    #[test]
    fn cholesky_logdet() {
        let a = array![[4.0, 1.0], [1.0, 3.0]];
        let ld = logdet_spd(&a).unwrap();
        assert!((ld - (11.0f64).ln()).abs() < 1e-12);
        assert!(cholesky(&array![[1.0, 2.0], [2.0, 1.0]]).is_none());
    }

    #[test]
    fn solve_small_roundtrip() {
        let a = array![[2.0, 1.0], [1.0, 4.0]];
        let b = array![1.0, -2.0];
        let x = solve_small(&a, &b).unwrap();
        let r = a.dot(&x);
        assert!((r[0] - b[0]).abs() < 1e-12 && (r[1] - b[1]).abs() < 1e-12);
    }
}
