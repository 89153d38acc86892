//! Approximate Kolmogorov widths via an SDP relaxation solved with an
//! equality-constrained ellipsoid method.
//!
//! For a constraint set `K` and `0 <= k <= d`, the relaxed width squared is
//! the optimal value of
//!
//! ```text
//!   min_X  max_{theta in K} theta' X theta
//!   s.t.   tr(X) = d - k,   0 <= X <= I,   X = X'
//! ```
//!
//! The solver works in packed symmetric (svec) coordinates of dimension
//! `m = d(d+1)/2`, so symmetry is structural and the trace is the single
//! equality row. Objective cuts come from the quadratic maximization
//! oracle (`g = svec(theta theta')` is an approximate subgradient of the
//! max function); infeasible iterates get eigenvector feasibility cuts.
//! The best feasible iterate under the oracle surrogate value is returned.

use ndarray::{Array1, Array2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, ConstraintSet};
use crate::linalg;

/// Eigenvalue slack accepted when declaring an iterate feasible.
pub const PSD_TOL: f64 = 1e-9;

/// A point of the SDP feasible region (or an iterate headed there).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymMatrixPoint {
    pub matrix: Array2<f64>,
    pub trace_target: f64,
    #[serde(skip)]
    eigen_cache: Option<(Array1<f64>, Array2<f64>)>,
}

impl SymMatrixPoint {
    pub fn new(matrix: Array2<f64>, trace_target: f64) -> Result<Self> {
        linalg::check_finite(&matrix, "matrix point")?;
        linalg::check_symmetric(&matrix, 1e-12)?;
        Ok(Self {
            matrix,
            trace_target,
            eigen_cache: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.matrix[[i, i]]).sum()
    }

    /// Eigen data, ascending eigenvalues; computed once and cached.
    pub fn eigen(&mut self) -> Result<&(Array1<f64>, Array2<f64>)> {
        if self.eigen_cache.is_none() {
            self.eigen_cache = Some(linalg::eigh(&self.matrix)?);
        }
        Ok(self.eigen_cache.as_ref().unwrap())
    }

    /// Trace within 1e-9 of the target and eigenvalues in
    /// `[-psd_tol, 1 + psd_tol]`.
    pub fn is_feasible(&mut self, psd_tol: f64) -> Result<bool> {
        let tr_ok = (self.trace() - self.trace_target).abs() <= 1e-9;
        let (w, _) = self.eigen()?;
        let lo = w[0];
        let hi = w[w.len() - 1];
        Ok(tr_ok && lo >= -psd_tol && hi <= 1.0 + psd_tol)
    }
}

/// State of the cutting-plane solver in svec coordinates.
#[derive(Clone, Debug)]
pub struct EllipsoidState {
    /// Current center, length `m = d(d+1)/2`.
    pub center: Array1<f64>,
    /// Shape matrix `P`, m x m symmetric positive definite.
    pub shape: Array2<f64>,
    pub iteration: usize,
    pub budget: usize,
}

impl EllipsoidState {
    pub fn new(center: Array1<f64>, shape: Array2<f64>, budget: usize) -> Self {
        Self {
            center,
            shape,
            iteration: 0,
            budget,
        }
    }
}

/// One projected ellipsoid update.
///
/// With `Pt = P - P A' (A P A')^-1 A P` the projection of the shape onto
/// the equality rows' null space:
///
/// ```text
///   r    = Pt g / sqrt(g' Pt g)
///   x+   = x - r / (n + 1)
///   P+   = n^2/(n^2-1) (P - 2/(n+1) r r')
/// ```
///
/// where `n = m - #eq_rows` is the dimension of the affine search space
/// (plain `m` when there are no equality rows). Using the reduced `n` makes
/// the slice of the ellipsoid inside the affine set shrink at exactly the
/// classical per-step volume rate for dimension `n`. The center stays on
/// `{A x = b}` because `r` lies in the null space of `A`.
pub fn ellipsoid_step(
    state: &mut EllipsoidState,
    g: &Array1<f64>,
    eq_rows: &[Array1<f64>],
) -> Result<()> {
    let m = state.center.len();
    if g.len() != m {
        return Err(Error::DimensionMismatch {
            what: "cut vector",
            expected: m,
            got: g.len(),
        });
    }
    let n_eff = m
        .checked_sub(eq_rows.len())
        .filter(|n| *n >= 2)
        .ok_or(Error::ShapeCollapse)?;

    let pg = state.shape.dot(g);
    let pt_g = if eq_rows.is_empty() {
        pg.clone()
    } else {
        // solve (A P A') beta = A P g, subtract P A' beta
        let rnum = eq_rows.len();
        let pa: Vec<Array1<f64>> = eq_rows.iter().map(|a| state.shape.dot(a)).collect();
        let mut apat = Array2::zeros((rnum, rnum));
        for i in 0..rnum {
            for j in 0..rnum {
                apat[[i, j]] = eq_rows[i].dot(&pa[j]);
            }
        }
        let apg = Array1::from_iter(eq_rows.iter().map(|a| a.dot(&pg)));
        let beta = linalg::solve_small(&apat, &apg).ok_or(Error::ShapeCollapse)?;
        let mut out = pg.clone();
        for (i, pai) in pa.iter().enumerate() {
            out.scaled_add(-beta[i], pai);
        }
        out
    };

    let q = g.dot(&pt_g);
    if !(q.is_finite()) {
        return Err(Error::ShapeCollapse);
    }
    if q <= 0.0 || q.sqrt() < 1e-12 {
        return Err(Error::DegenerateCut);
    }
    let r = pt_g.mapv(|v| v / q.sqrt());

    let nf = n_eff as f64;
    state.center.scaled_add(-1.0 / (nf + 1.0), &r);
    let coef = nf * nf / (nf * nf - 1.0);
    let beta = 2.0 / (nf + 1.0);
    for i in 0..m {
        for j in 0..m {
            state.shape[[i, j]] = coef * (state.shape[[i, j]] - beta * r[i] * r[j]);
        }
    }
    state.iteration += 1;
    for i in 0..m {
        if !(state.shape[[i, i]] > 0.0 && state.shape[[i, i]].is_finite()) {
            return Err(Error::ShapeCollapse);
        }
    }
    Ok(())
}

/// Feasibility cut for the bounds `0 <= X <= I`: the eigenvector outer
/// product of the most violated bound, or `None` when X is feasible.
/// Index 1 flags `lambda_max > 1`, index 2 flags `lambda_min < 0`.
pub fn feasibility_cut(point: &mut SymMatrixPoint) -> Result<Option<(usize, Array2<f64>)>> {
    let d = point.dim();
    let (w, v) = point.eigen()?.clone();
    if w[d - 1] > 1.0 + PSD_TOL {
        let mut cut = Array2::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                cut[[i, j]] = v[[i, d - 1]] * v[[j, d - 1]];
            }
        }
        return Ok(Some((1, cut)));
    }
    if w[0] < -PSD_TOL {
        let mut cut = Array2::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                cut[[i, j]] = -v[[i, 0]] * v[[j, 0]];
            }
        }
        return Ok(Some((2, cut)));
    }
    Ok(None)
}

/// Iteration budget: `ceil(budget_scale * dt^2 * ln(1/eps_tol))` with
/// `dt = (d-1)(d+2)/2` the intrinsic dimension after the trace and
/// symmetry constraints.
pub fn iteration_budget(d: usize, eps_tol: f64, budget_scale: f64) -> usize {
    let dt = ((d - 1) * (d + 2) / 2) as f64;
    (budget_scale * dt * dt * (1.0 / eps_tol).ln()).ceil() as usize
}

/// Solve the width SDP for a single `k`. Returns the selected iterate and
/// its surrogate optimal value `h = theta' X theta` from the oracle, which
/// satisfies `h_S(X*)/kappa <= h <= kappa (h_S(X*) + eps_tol)`.
pub fn solve_width_sdp(
    set: &ConstraintSet,
    k: usize,
    eps_tol: f64,
    budget_scale: f64,
) -> Result<(SymMatrixPoint, f64)> {
    let d = set.dim();
    if k > d {
        return Err(Error::invalid("k", format!("k = {k} exceeds dim {d}")));
    }
    if !(eps_tol > 0.0) {
        return Err(Error::invalid("eps_tol", "must be positive"));
    }
    let trace_target = (d - k) as f64;

    // trace pins the solution at both ends: X = 0 at k = d, X = I at k = 0
    if k == d {
        return Ok((SymMatrixPoint::new(Array2::zeros((d, d)), 0.0)?, 0.0));
    }
    if k == 0 {
        let x: Array2<f64> = Array2::eye(d);
        let h = geometry::quad_max_oracle(set, &x)?.value;
        return Ok((SymMatrixPoint::new(x, trace_target)?, h));
    }

    let m = linalg::svec_len(d);
    let budget = iteration_budget(d, eps_tol, budget_scale);
    let x0 = Array2::eye(d) * (trace_target / d as f64);
    let shape0: Array2<f64> = Array2::eye(m) * (4.0 * trace_target);
    let trace_row = linalg::svec(&Array2::eye(d))?;
    let eq_rows = [trace_row];

    let mut state = EllipsoidState::new(linalg::svec(&x0)?, shape0, budget);
    let mut best: Option<(SymMatrixPoint, f64)> = None;

    while state.iteration < state.budget {
        let x = linalg::smat(&state.center, d)?;
        let mut point = SymMatrixPoint::new(x, trace_target)?;
        let cut_matrix = match feasibility_cut(&mut point)? {
            Some((_, cut)) => cut,
            None => {
                let oracle = geometry::quad_max_oracle(set, &point.matrix)?;
                if best.as_ref().map_or(true, |(_, v)| oracle.value < *v) {
                    best = Some((point.clone(), oracle.value));
                }
                let th = &oracle.maximizer;
                let mut g = Array2::zeros((d, d));
                for i in 0..d {
                    for j in 0..d {
                        g[[i, j]] = th[i] * th[j];
                    }
                }
                g
            }
        };
        let g = linalg::svec(&cut_matrix)?;
        match ellipsoid_step(&mut state, &g, &eq_rows) {
            Ok(()) => {}
            Err(Error::DegenerateCut) => {
                // the ellipsoid has flattened along this cut; record the
                // center as a candidate and stop, no further progress is
                // possible in this direction
                let mut p = SymMatrixPoint::new(linalg::smat(&state.center, d)?, trace_target)?;
                if p.is_feasible(PSD_TOL)? {
                    let val = geometry::quad_max_oracle(set, &p.matrix)?.value;
                    if best.as_ref().map_or(true, |(_, v)| val < *v) {
                        best = Some((p, val));
                    }
                }
                break;
            }
            Err(e) => return Err(e),
        }
    }

    best.ok_or(Error::NoFeasibleIterate)
}

/// Width profile of a constraint set: approximate widths, surrogate
/// values, and the minimizing matrices for every `k = 0..=d`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WidthProfile {
    pub dim: usize,
    /// Approximate widths, `widths[k] = sqrt(values[k])`, non-increasing.
    pub widths: Vec<f64>,
    /// Surrogate optimal values of the SDP per k.
    pub values: Vec<f64>,
    /// Selected iterates per k.
    pub minimizers: Vec<SymMatrixPoint>,
    /// Oracle approximation factor used for every solve.
    pub kappa: f64,
    /// Amount clipped from `values[k]` by the monotone repair, per k.
    pub repairs: Vec<f64>,
}

impl WidthProfile {
    pub fn save_json(&self, path: &std::path::Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        serde_json::to_writer(std::io::BufWriter::new(file), self)?;
        Ok(())
    }

    pub fn load_json(path: &std::path::Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        let profile: WidthProfile = serde_json::from_reader(std::io::BufReader::new(file))?;
        Ok(profile)
    }
}

/// Solve for every `k` (distinct k values in parallel) and apply the
/// monotone repair `values[k] <- min(values[k], values[k-1])` that removes
/// solver noise; repair magnitudes are recorded in the profile.
pub fn width_profile(
    set: &ConstraintSet,
    eps_tol: f64,
    budget_scale: f64,
) -> Result<WidthProfile> {
    let d = set.dim();
    let solved: Result<Vec<(SymMatrixPoint, f64)>> = (0..=d)
        .into_par_iter()
        .map(|k| solve_width_sdp(set, k, eps_tol, budget_scale))
        .collect();
    let solved = solved?;

    let mut values = Vec::with_capacity(d + 1);
    let mut minimizers = Vec::with_capacity(d + 1);
    let mut repairs = Vec::with_capacity(d + 1);
    for (k, (point, mut value)) in solved.into_iter().enumerate() {
        let mut repair = 0.0;
        if k > 0 {
            let prev: f64 = values[k - 1];
            if value > prev {
                repair = value - prev;
                value = prev;
            }
        }
        values.push(value);
        minimizers.push(point);
        repairs.push(repair);
    }
    let widths = values.iter().map(|v: &f64| v.max(0.0).sqrt()).collect();
    Ok(WidthProfile {
        dim: d,
        widths,
        values,
        minimizers,
        kappa: geometry::declared_kappa(set),
        repairs,
    })
}

/// Largest `j >= 0` such that the width at `j - 1` exceeds the threshold
/// `f(j)`, with the conventions width(-1) = +inf and width(j) = 0 for
/// `j >= d`. `j = 0` always qualifies.
pub fn optimal_dimension<F: Fn(usize) -> f64>(profile: &WidthProfile, threshold: F) -> usize {
    let d = profile.dim;
    let width_at = |j: isize| -> f64 {
        if j < 0 {
            f64::INFINITY
        } else if j as usize >= d {
            0.0
        } else {
            profile.widths[j as usize]
        }
    };
    let mut best = 0;
    for j in 0..=d {
        if width_at(j as isize - 1) > threshold(j) {
            best = j;
        }
    }
    best
}

/// First and second approximate optimal dimensions, from the noise-scale
/// thresholds `f1(j) = j^(1/4) sigma / sqrt(N)` and
/// `f2(j) = j^(1/4) sqrt(eps) sigma / N^(1/4)`.
pub fn first_second_dimensions(
    profile: &WidthProfile,
    n: usize,
    sigma: f64,
    epsilon: f64,
) -> (usize, usize) {
    let nf = n as f64;
    let k1 = optimal_dimension(profile, |j| (j as f64).powf(0.25) / nf.sqrt() * sigma);
    let k2 = optimal_dimension(profile, |j| {
        (j as f64).powf(0.25) * epsilon.sqrt() / nf.powf(0.25) * sigma
    });
    (k1, k2)
}

/// Approximate projection `A = (I - X)^(1/2)`, the symmetric square root
/// with the eigenvalues of `I - X` clamped into [0, 1] first.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ApproxProjection {
    pub matrix: Array2<f64>,
    pub source_k: usize,
    /// Eigenvalues of the clamped `I - X` (the projected data covariance),
    /// ascending.
    pub cov_eigenvalues: Array1<f64>,
    /// Matching eigenvector columns.
    pub cov_eigenvectors: Array2<f64>,
}

pub fn approx_projection(point: &SymMatrixPoint, source_k: usize) -> Result<ApproxProjection> {
    let d = point.dim();
    let mut complement = Array2::eye(d);
    complement -= &point.matrix;
    let (w, v) = linalg::eigh(&complement)?;
    if w.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("projection eigenvalues"));
    }
    let clamped = w.mapv(|x| x.clamp(0.0, 1.0));
    let mut a = Array2::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            let mut s = 0.0;
            for l in 0..d {
                s += v[[i, l]] * clamped[l].sqrt() * v[[j, l]];
            }
            a[[i, j]] = s;
        }
    }
    Ok(ApproxProjection {
        matrix: a,
        source_k,
        cov_eigenvalues: clamped,
        cov_eigenvectors: v,
    })
}

/// Reference optimum of the width SDP for an axis-aligned ellipsoid, by
/// water-filling: the smallest `t` with `sum_i min(1, t/a_i^2) >= d - k`.
/// Independent of the ellipsoid-method path; used as a test oracle.
pub fn ellipsoid_width_waterfilling(semi_axes: &[f64], k: usize) -> f64 {
    let d = semi_axes.len();
    if k >= d {
        return 0.0;
    }
    let target = (d - k) as f64;
    let cover = |t: f64| -> f64 {
        semi_axes
            .iter()
            .map(|a| (t / (a * a)).min(1.0))
            .sum::<f64>()
    };
    let mut hi = semi_axes.iter().map(|a| a * a).fold(0.0, f64::max);
    let mut lo = 0.0;
    if cover(hi) < target {
        return hi; // k = 0: every coordinate saturates
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if cover(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn step_matches_closed_form_2d() {
        // no equality rows, P = I, g = e1: center moves by (-1/3, 0) and
        // the shape becomes 4/3 diag(1/3, 1)
        let mut st = EllipsoidState::new(Array1::zeros(2), Array2::eye(2), 10);
        ellipsoid_step(&mut st, &array![1.0, 0.0], &[]).unwrap();
        assert!((st.center[0] + 1.0 / 3.0).abs() < 1e-14);
        assert!(st.center[1].abs() < 1e-14);
        assert!((st.shape[[0, 0]] - 4.0 / 9.0).abs() < 1e-14);
        assert!((st.shape[[1, 1]] - 4.0 / 3.0).abs() < 1e-14);
        assert!(st.shape[[0, 1]].abs() < 1e-14);
    }

    #[test]
    fn step_preserves_affine_feasibility() {
        let a = array![1.0, 1.0, 0.0];
        let mut st = EllipsoidState::new(array![0.5, 0.5, 0.0], Array2::eye(3) * 2.0, 10);
        let b0 = a.dot(&st.center);
        for g in [array![1.0, 0.0, 0.3], array![-0.2, 0.7, 1.0]] {
            ellipsoid_step(&mut st, &g, std::slice::from_ref(&a)).unwrap();
            assert!((a.dot(&st.center) - b0).abs() < 1e-12);
        }
    }

    #[test]
    fn step_volume_ratio_5d() {
        // det ratio^(1/2) = 5^5/(6^3 * 4^2) per accepted unconstrained step
        let mut st = EllipsoidState::new(Array1::zeros(5), Array2::eye(5), 10);
        let before = linalg::logdet_spd(&st.shape).unwrap();
        ellipsoid_step(&mut st, &array![0.3, -1.0, 0.2, 0.0, 0.5], &[]).unwrap();
        let after = linalg::logdet_spd(&st.shape).unwrap();
        let expect = (3125.0f64 / 3456.0).ln();
        assert!((0.5 * (after - before) - expect).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cut_detected() {
        // shape flattened to ~zero along e1 makes a cut along e1 degenerate
        let mut shape = Array2::eye(2);
        shape[[0, 0]] = 1e-30;
        let mut st = EllipsoidState::new(Array1::zeros(2), shape, 10);
        match ellipsoid_step(&mut st, &array![1.0, 0.0], &[]) {
            Err(Error::DegenerateCut) => {}
            other => panic!("expected degenerate cut, got {other:?}"),
        }
    }

    #[test]
    fn feasibility_cut_cases() {
        let mut ok = SymMatrixPoint::new(Array2::eye(2), 2.0).unwrap();
        assert!(feasibility_cut(&mut ok).unwrap().is_none());

        let mut high = SymMatrixPoint::new(Array2::from_diag(&array![2.0, 0.0]), 2.0).unwrap();
        let (idx, cut) = feasibility_cut(&mut high).unwrap().unwrap();
        assert_eq!(idx, 1);
        assert!((cut[[0, 0]] - 1.0).abs() < 1e-12 && cut[[1, 1]].abs() < 1e-12);

        let mut low = SymMatrixPoint::new(Array2::from_diag(&array![-0.5, 1.0]), 0.5).unwrap();
        let (idx, cut) = feasibility_cut(&mut low).unwrap().unwrap();
        assert_eq!(idx, 2);
        assert!((cut[[0, 0]] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn shortcut_k_equals_d() {
        let set = ConstraintSet::ellipsoid(vec![3.0, 2.0, 1.0]).unwrap();
        let (point, h) = solve_width_sdp(&set, 3, 1e-2, 8.0).unwrap();
        assert_eq!(h, 0.0);
        assert!(point.matrix.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn unit_ball_width_k1() {
        let set = ConstraintSet::ball(4, 1.0).unwrap();
        let (_, h) = solve_width_sdp(&set, 1, 1e-3, 8.0).unwrap();
        let width = h.sqrt();
        let expect = (3.0f64 / 4.0).sqrt();
        assert!(
            (width - expect).abs() / expect < 0.02,
            "width {width} vs {expect}"
        );
    }

    #[test]
    fn ellipsoid_width_k1_reference() {
        let set = ConstraintSet::ellipsoid(vec![3.0, 2.0, 1.0]).unwrap();
        let (_, h) = solve_width_sdp(&set, 1, 1e-3, 8.0).unwrap();
        let expect = 36.0 / 13.0;
        assert!((h - expect).abs() / expect < 0.02, "h {h} vs {expect}");
    }

    #[test]
    fn waterfilling_reference_values() {
        assert!((ellipsoid_width_waterfilling(&[3.0, 2.0, 1.0], 1) - 36.0 / 13.0).abs() < 1e-9);
        assert!((ellipsoid_width_waterfilling(&[1.0; 4], 1) - 0.75).abs() < 1e-9);
        assert_eq!(ellipsoid_width_waterfilling(&[3.0, 2.0, 1.0], 3), 0.0);
        // k = 0 saturates every coordinate at the largest axis
        assert!((ellipsoid_width_waterfilling(&[3.0, 2.0, 1.0], 0) - 9.0).abs() < 1e-9);
    }

    #[test]
    fn profile_unit_ball_d4() {
        let set = ConstraintSet::ball(4, 1.0).unwrap();
        let profile = width_profile(&set, 1e-3, 8.0).unwrap();
        let expect = [1.0, 0.8660254, 0.70710678, 0.5, 0.0];
        for (k, e) in expect.iter().enumerate() {
            let w = profile.widths[k];
            if *e == 0.0 {
                assert_eq!(w, 0.0);
            } else {
                assert!((w - e).abs() / e < 0.02, "k={k}: {w} vs {e}");
            }
        }
        // monotone after repair
        for k in 1..profile.widths.len() {
            assert!(profile.widths[k] <= profile.widths[k - 1] + 1e-12);
        }
    }

    #[test]
    fn profile_ellipsoid_sandwich() {
        let axes = vec![3.0, 2.0, 1.0];
        let set = ConstraintSet::ellipsoid(axes.clone()).unwrap();
        let profile = width_profile(&set, 1e-3, 8.0).unwrap();
        assert_eq!(profile.widths[3], 0.0);
        // exact PCA widths are the sorted semi-axes
        let pca = [3.0, 2.0, 1.0, 0.0];
        for k in 0..=3 {
            assert!(
                profile.widths[k] <= pca[k] + 1e-6,
                "width {} above PCA width {}",
                profile.widths[k],
                pca[k]
            );
        }
    }

    #[test]
    fn optimal_dimension_examples() {
        let set = ConstraintSet::ball(4, 1.0).unwrap();
        let profile = width_profile(&set, 1e-3, 8.0).unwrap();
        // f1 with sigma = 1, N = 100
        let k1 = optimal_dimension(&profile, |j| (j as f64).powf(0.25) / 10.0);
        assert_eq!(k1, 4);
        // f = +inf except f(0) keeps only j = 0
        let k0 = optimal_dimension(&profile, |j| if j == 0 { 1.0 } else { f64::INFINITY });
        assert_eq!(k0, 0);

        let set = ConstraintSet::ellipsoid(vec![3.0, 2.0, 1.0]).unwrap();
        let profile = width_profile(&set, 1e-3, 8.0).unwrap();
        let k = optimal_dimension(&profile, |_| 2.5);
        assert_eq!(k, 1, "widths {:?}", profile.widths);
    }

    #[test]
    fn second_dimension_eps_zero() {
        let set = ConstraintSet::ball(4, 1.0).unwrap();
        let profile = width_profile(&set, 1e-3, 8.0).unwrap();
        let (_, k2) = first_second_dimensions(&profile, 100, 1.0, 0.0);
        assert_eq!(k2, 4);
    }

    #[test]
    fn projection_cases() {
        let zero = SymMatrixPoint::new(Array2::zeros((3, 3)), 3.0).unwrap();
        let a = approx_projection(&zero, 0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((a.matrix[[i, j]] - e).abs() < 1e-12);
            }
        }

        let diag = SymMatrixPoint::new(Array2::from_diag(&array![1.0, 0.0]), 1.0).unwrap();
        let a = approx_projection(&diag, 1).unwrap();
        assert!(a.matrix[[0, 0]].abs() < 1e-9);
        assert!((a.matrix[[1, 1]] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn projection_reconstruction() {
        let set = ConstraintSet::ellipsoid(vec![2.5, 1.5, 1.0, 0.5]).unwrap();
        let (point, _) = solve_width_sdp(&set, 2, 1e-3, 8.0).unwrap();
        let a = approx_projection(&point, 2).unwrap();
        let a2 = a.matrix.dot(&a.matrix);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 } - point.matrix[[i, j]];
                assert!(
                    (a2[[i, j]] - expect).abs() < 1e-8,
                    "entry ({i},{j}): {} vs {expect}",
                    a2[[i, j]]
                );
            }
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let set = ConstraintSet::ellipsoid(vec![2.0, 1.0, 0.5]).unwrap();
        let (p1, h1) = solve_width_sdp(&set, 1, 1e-2, 8.0).unwrap();
        let (p2, h2) = solve_width_sdp(&set, 1, 1e-2, 8.0).unwrap();
        assert_eq!(h1, h2);
        assert_eq!(p1.matrix, p2.matrix);
    }

    #[test]
    fn iterates_stay_on_trace_affine_set() {
        // run a few plain iterations and watch the trace of the center
        let set = ConstraintSet::ball(3, 1.0).unwrap();
        let (point, _) = solve_width_sdp(&set, 1, 1e-1, 1.0).unwrap();
        assert!((point.trace() - 2.0).abs() < 1e-9);
    }
}
