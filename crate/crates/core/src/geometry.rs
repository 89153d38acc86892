//! Constraint sets, Minkowski gauges, and constrained quadratic
//! maximization oracles.
//!
//! A constraint set `K` is balanced (it contains a ball of radius `r` and
//! fits in a ball of radius `R`). Its gauge `rho_K(theta)` is the smallest
//! scale `t` with `theta` in `t*K`. The oracles solve or approximate
//! `max_{theta in K} theta' X theta` for symmetric `X`; the exact
//! eigenvalue oracle covers balls and ellipsoids, a sign local search
//! covers hyperrectangles, and a projected ascent covers membership-defined
//! sets. Each oracle declares an approximation factor `kappa >= 1` such
//! that its value is at least `1/kappa` of the true maximum.

use std::fmt;
use std::sync::Arc;

use ndarray::{Array1, Array2};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Feasibility tolerance for "theta in K": gauge <= 1 + this.
pub const FEAS_TOL: f64 = 1e-8;

/// Declared approximation factor of the hyperrectangle oracle.
///
/// Measured as the worst brute-force/oracle ratio over a calibration suite
/// (d <= 12, 1000 random symmetric X per dimension; worst observed 1.08),
/// padded by 1.5x and rounded up. The `hyperrect_kappa_calibration` test
/// recomputes the measurement.
pub const HYPERRECT_KAPPA: f64 = 1.7;

/// Declared approximation factor of the membership-oracle ascent, measured
/// against brute force on lp-ball instances (d <= 6) and padded by 1.5x.
pub const GAUGE_KAPPA: f64 = 2.0;

type MembershipFn = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// The shape of a constraint set.
#[derive(Clone)]
pub enum SetKind {
    /// Euclidean ball of the given radius centered at the origin.
    Ball { radius: f64 },
    /// Axis-aligned ellipsoid with semi-axes `a_i > 0`.
    Ellipsoid { semi_axes: Vec<f64> },
    /// Axis-aligned box `[-a_i, a_i]`.
    Hyperrectangle { half_widths: Vec<f64> },
    /// Set given only through a membership oracle, with known inner and
    /// outer radii `0 < r <= R`.
    GaugeDefined {
        membership: MembershipFn,
        inner_radius: f64,
        outer_radius: f64,
    },
}

impl fmt::Debug for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetKind::Ball { radius } => write!(f, "Ball {{ radius: {radius} }}"),
            SetKind::Ellipsoid { semi_axes } => {
                write!(f, "Ellipsoid {{ semi_axes: {semi_axes:?} }}")
            }
            SetKind::Hyperrectangle { half_widths } => {
                write!(f, "Hyperrectangle {{ half_widths: {half_widths:?} }}")
            }
            SetKind::GaugeDefined {
                inner_radius,
                outer_radius,
                ..
            } => write!(
                f,
                "GaugeDefined {{ r: {inner_radius}, R: {outer_radius} }}"
            ),
        }
    }
}

/// A balanced constraint set in R^d.
#[derive(Clone, Debug)]
pub struct ConstraintSet {
    kind: SetKind,
    dim: usize,
    t2_estimate: Option<f64>,
}

/// Serializable description of a constraint set for config files.
/// Membership-defined sets other than lp balls cannot be expressed here.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstraintSpec {
    Ball { dim: usize, radius: f64 },
    Ellipsoid { semi_axes: Vec<f64> },
    Hyperrectangle { half_widths: Vec<f64> },
    LpBall { dim: usize, p: f64, radius: f64 },
}

impl ConstraintSpec {
    pub fn build(&self) -> Result<ConstraintSet> {
        match self {
            ConstraintSpec::Ball { dim, radius } => ConstraintSet::ball(*dim, *radius),
            ConstraintSpec::Ellipsoid { semi_axes } => ConstraintSet::ellipsoid(semi_axes.clone()),
            ConstraintSpec::Hyperrectangle { half_widths } => {
                ConstraintSet::hyperrectangle(half_widths.clone())
            }
            ConstraintSpec::LpBall { dim, p, radius } => ConstraintSet::lp_ball(*dim, *p, *radius),
        }
    }
}

fn positive_axes(axes: &[f64], field: &str) -> Result<()> {
    if axes.is_empty() {
        return Err(Error::invalid(field, "must be non-empty"));
    }
    if axes.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(Error::invalid(field, "entries must be positive and finite"));
    }
    Ok(())
}

impl ConstraintSet {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dim", "must be positive"));
        }
        positive_axes(&[radius], "radius")?;
        Ok(Self {
            kind: SetKind::Ball { radius },
            dim,
            t2_estimate: None,
        })
    }

    pub fn ellipsoid(semi_axes: Vec<f64>) -> Result<Self> {
        positive_axes(&semi_axes, "semi_axes")?;
        let dim = semi_axes.len();
        Ok(Self {
            kind: SetKind::Ellipsoid { semi_axes },
            dim,
            t2_estimate: None,
        })
    }

    pub fn hyperrectangle(half_widths: Vec<f64>) -> Result<Self> {
        positive_axes(&half_widths, "half_widths")?;
        let dim = half_widths.len();
        Ok(Self {
            kind: SetKind::Hyperrectangle { half_widths },
            dim,
            t2_estimate: None,
        })
    }

    pub fn gauge_defined(
        dim: usize,
        membership: MembershipFn,
        inner_radius: f64,
        outer_radius: f64,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dim", "must be positive"));
        }
        if !(inner_radius > 0.0 && inner_radius <= outer_radius && outer_radius.is_finite()) {
            return Err(Error::invalid("radii", "need 0 < r <= R < inf"));
        }
        Ok(Self {
            kind: SetKind::GaugeDefined {
                membership,
                inner_radius,
                outer_radius,
            },
            dim,
            t2_estimate: None,
        })
    }

    /// lp ball of the given radius as a membership-defined set, with the
    /// type-2 constant order filled in: `d^(1/p - 1/2)` for `p <= 2` and
    /// `sqrt(min(p, ln d))` for `p > 2`.
    pub fn lp_ball(dim: usize, p: f64, radius: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::invalid("p", "need p >= 1"));
        }
        positive_axes(&[radius], "radius")?;
        let (inner, outer) = if p <= 2.0 {
            // l_p ball for p<=2 sits between the l2 balls of radius
            // r*d^(1/2-1/p) and r
            (radius * (dim as f64).powf(0.5 - 1.0 / p), radius)
        } else {
            (radius, radius * (dim as f64).powf(0.5 - 1.0 / p))
        };
        let rp = radius;
        let membership: MembershipFn = Arc::new(move |theta: &[f64]| {
            let norm = theta
                .iter()
                .map(|x| x.abs().powf(p))
                .sum::<f64>()
                .powf(1.0 / p);
            norm <= rp * (1.0 + 1e-12)
        });
        let t2 = if p <= 2.0 {
            (dim as f64).powf(1.0 / p - 0.5)
        } else {
            p.min((dim.max(2) as f64).ln()).sqrt()
        };
        let mut set = Self::gauge_defined(dim, membership, inner.min(outer), inner.max(outer))?;
        set.t2_estimate = Some(t2);
        Ok(set)
    }

    pub fn with_t2_estimate(mut self, t2: f64) -> Self {
        self.t2_estimate = Some(t2);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    /// Inner and outer radii (r, R) of the balanced sandwich
    /// `B(0,r) ⊂ K ⊂ B(0,R)`.
    pub fn radii(&self) -> (f64, f64) {
        match &self.kind {
            SetKind::Ball { radius } => (*radius, *radius),
            SetKind::Ellipsoid { semi_axes } => (
                semi_axes.iter().cloned().fold(f64::INFINITY, f64::min),
                semi_axes.iter().cloned().fold(0.0, f64::max),
            ),
            SetKind::Hyperrectangle { half_widths } => (
                half_widths.iter().cloned().fold(f64::INFINITY, f64::min),
                half_widths.iter().map(|a| a * a).sum::<f64>().sqrt(),
            ),
            SetKind::GaugeDefined {
                inner_radius,
                outer_radius,
                ..
            } => (*inner_radius, *outer_radius),
        }
    }

    fn check_dim(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.dim {
            return Err(Error::DimensionMismatch {
                what: "gauge argument",
                expected: self.dim,
                got: theta.len(),
            });
        }
        Ok(())
    }
}

/// Minkowski gauge `rho_K(theta) = inf { t >= 0 : theta in t*K }`.
///
/// Closed form for balls, ellipsoids, and hyperrectangles. For
/// membership-defined sets, 60 rounds of bisection on
/// `t -> membership(theta/t)` between the brackets implied by the inner and
/// outer radii; returns `+inf` when no finite scale contains `theta`.
pub fn gauge_eval(set: &ConstraintSet, theta: &[f64]) -> Result<f64> {
    set.check_dim(theta)?;
    if theta.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("gauge argument"));
    }
    let norm2 = theta.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm2 == 0.0 {
        return Ok(0.0);
    }
    match &set.kind {
        SetKind::Ball { radius } => Ok(norm2 / radius),
        SetKind::Ellipsoid { semi_axes } => Ok(theta
            .iter()
            .zip(semi_axes)
            .map(|(x, a)| (x / a) * (x / a))
            .sum::<f64>()
            .sqrt()),
        SetKind::Hyperrectangle { half_widths } => Ok(theta
            .iter()
            .zip(half_widths)
            .map(|(x, a)| (x / a).abs())
            .fold(0.0, f64::max)),
        SetKind::GaugeDefined {
            membership,
            inner_radius,
            outer_radius,
        } => {
            let inside = |t: f64| {
                let scaled: Vec<f64> = theta.iter().map(|x| x / t).collect();
                membership(&scaled)
            };
            let mut lo = norm2 / outer_radius; // theta/lo has norm R: at or outside the boundary
            let mut hi = norm2 / inner_radius; // theta/hi has norm r: inside for a balanced set
            if !inside(hi) {
                // tolerate sets slightly smaller than advertised
                let mut widened = hi;
                let mut ok = false;
                for _ in 0..8 {
                    widened *= 2.0;
                    if inside(widened) {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return Ok(f64::INFINITY);
                }
                hi = widened;
            }
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if inside(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(hi)
        }
    }
}

/// `theta in K` up to the given gauge tolerance.
pub fn contains(set: &ConstraintSet, theta: &[f64], tol: f64) -> Result<bool> {
    Ok(gauge_eval(set, theta)? <= 1.0 + tol)
}

/// Output of a quadratic maximization oracle.
#[derive(Clone, Debug)]
pub struct QuadMaxResult {
    /// A feasible point of `K`.
    pub maximizer: Array1<f64>,
    /// `maximizer' X maximizer`, guaranteed nonnegative.
    pub value: f64,
    /// Declared approximation factor: `value >= max/kappa`.
    pub kappa: f64,
}

fn zero_result(d: usize) -> QuadMaxResult {
    QuadMaxResult {
        maximizer: Array1::zeros(d),
        value: 0.0,
        kappa: 1.0,
    }
}

fn quad_form(x: &Array2<f64>, theta: &Array1<f64>) -> f64 {
    theta.dot(&x.dot(theta))
}

/// Exact oracle for balls and ellipsoids: the maximum of `theta' X theta`
/// over the solid ellipsoid with semi-axes `a` is the top eigenvalue of
/// `D_a X D_a` (clamped at zero, attained at the origin when X has no
/// positive curvature).
pub fn quad_max_exact(set: &ConstraintSet, x: &Array2<f64>) -> Result<QuadMaxResult> {
    linalg::check_finite(x, "quad_max input")?;
    linalg::check_symmetric(x, 1e-9)?;
    if x.nrows() != set.dim {
        return Err(Error::DimensionMismatch {
            what: "quad_max input",
            expected: set.dim,
            got: x.nrows(),
        });
    }
    let axes: Vec<f64> = match &set.kind {
        SetKind::Ball { radius } => vec![*radius; set.dim],
        SetKind::Ellipsoid { semi_axes } => semi_axes.clone(),
        other => {
            return Err(Error::UnsupportedKind {
                op: "quad_max_exact",
                kind: format!("{other:?}"),
            })
        }
    };
    let d = set.dim;
    let mut b = x.clone();
    for i in 0..d {
        for j in 0..d {
            b[[i, j]] *= axes[i] * axes[j];
        }
    }
    let (w, v) = linalg::eigh(&b)?;
    let lam = w[d - 1];
    if lam <= 0.0 {
        return Ok(zero_result(d));
    }
    let mut theta = Array1::zeros(d);
    for i in 0..d {
        theta[i] = axes[i] * v[[i, d - 1]];
    }
    let value = quad_form(x, &theta);
    Ok(QuadMaxResult {
        maximizer: theta,
        value,
        kappa: 1.0,
    })
}

/// Reference oracle for tests: the max of `theta' X theta` over seeded
/// gauge-normalized random directions, plus every sign vertex for
/// hyperrectangles with d <= 12. A lower bound on the true maximum by
/// construction.
pub fn quad_max_bruteforce(
    set: &ConstraintSet,
    x: &Array2<f64>,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    linalg::check_finite(x, "quad_max input")?;
    let d = set.dim;
    let mut best = 0.0f64; // theta = 0 is always feasible
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let z: Vec<f64> = (0..d).map(|_| standard_normal(&mut rng)).collect();
        let g = gauge_eval(set, &z)?;
        if !(g.is_finite() && g > 0.0) {
            continue;
        }
        let theta = Array1::from_iter(z.iter().map(|v| v / g));
        best = best.max(quad_form(x, &theta));
    }
    if let SetKind::Hyperrectangle { half_widths } = &set.kind {
        if d <= 12 {
            for mask in 0..(1usize << d) {
                let theta = Array1::from_iter((0..d).map(|i| {
                    if mask >> i & 1 == 1 {
                        half_widths[i]
                    } else {
                        -half_widths[i]
                    }
                }));
                best = best.max(quad_form(x, &theta));
            }
        }
    }
    Ok(best)
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; only used for sampling directions here
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Approximation factor declared by [`quad_max_oracle`] for this kind.
pub fn declared_kappa(set: &ConstraintSet) -> f64 {
    match &set.kind {
        SetKind::Ball { .. } | SetKind::Ellipsoid { .. } => 1.0,
        SetKind::Hyperrectangle { .. } => HYPERRECT_KAPPA,
        SetKind::GaugeDefined { .. } => GAUGE_KAPPA,
    }
}

/// Constrained quadratic maximization oracle.
///
/// Dispatch: exact eigenvalue oracle for balls and ellipsoids (kappa = 1);
/// sign-rounding plus 1-flip local search over vertices for
/// hyperrectangles; projected multi-start ascent with gauge normalization
/// for membership-defined sets. The returned point is always feasible and
/// the value is `>= max / kappa` for the declared kappa.
pub fn quad_max_oracle(set: &ConstraintSet, x: &Array2<f64>) -> Result<QuadMaxResult> {
    linalg::check_finite(x, "quad_max input")?;
    linalg::check_symmetric(x, 1e-9)?;
    if x.nrows() != set.dim {
        return Err(Error::DimensionMismatch {
            what: "quad_max input",
            expected: set.dim,
            got: x.nrows(),
        });
    }
    if x.iter().all(|v| *v == 0.0) {
        return Ok(zero_result(set.dim));
    }
    match &set.kind {
        SetKind::Ball { .. } | SetKind::Ellipsoid { .. } => quad_max_exact(set, x),
        SetKind::Hyperrectangle { half_widths } => hyperrect_oracle(set, x, half_widths),
        SetKind::GaugeDefined { .. } => gauge_ascent_oracle(set, x),
    }
}

/// Search for hyperrectangles, best of two candidate families.
///
/// Vertices: over sign vectors `gamma`, maximize `gamma' B gamma` with
/// `B = D_a X D_a`, starting from the sign rounding of each eigenvector of
/// B and one power-step refinement of it (2d starts), then repeatedly
/// applying the best single sign flip. Vertices are optimal whenever the
/// diagonal of X is nonnegative, but under negative curvature the box
/// maximizer can sit on a face interior, so the exact eigen candidate of
/// the inscribed ellipsoid (feasible for the box) is also tried; it is
/// within a factor d of the box optimum on its own.
fn hyperrect_oracle(
    set: &ConstraintSet,
    x: &Array2<f64>,
    half_widths: &[f64],
) -> Result<QuadMaxResult> {
    let d = set.dim;
    let mut b = x.clone();
    for i in 0..d {
        for j in 0..d {
            b[[i, j]] *= half_widths[i] * half_widths[j];
        }
    }
    let (_, v) = linalg::eigh(&b)?;
    let sign = |t: f64| if t >= 0.0 { 1.0 } else { -1.0 };
    let mut starts: Vec<Vec<f64>> = Vec::new();
    for col in 0..d {
        let u: Vec<f64> = (0..d).map(|r| v[[r, col]]).collect();
        let s0: Vec<f64> = u.iter().map(|&t| sign(t)).collect();
        // one power step from the rounded vertex
        let bu: Vec<f64> = (0..d)
            .map(|i| (0..d).map(|j| b[[i, j]] * s0[j]).sum::<f64>())
            .collect();
        let s1: Vec<f64> = bu.iter().map(|&t| sign(t)).collect();
        starts.push(s0);
        starts.push(s1);
    }
    starts.dedup();

    let mut best_gamma: Vec<f64> = vec![1.0; d];
    let mut best_val = f64::NEG_INFINITY;
    for mut gamma in starts {
        // local search: flip the coordinate with the largest gain
        let mut bg: Vec<f64> = (0..d)
            .map(|i| (0..d).map(|j| b[[i, j]] * gamma[j]).sum::<f64>())
            .collect();
        let mut val: f64 = (0..d).map(|i| gamma[i] * bg[i]).sum();
        loop {
            let mut best_gain = 0.0;
            let mut best_j = usize::MAX;
            for j in 0..d {
                // flipping gamma_j changes the value by -4 gamma_j (B gamma)_j + 4 B_jj
                let gain = -4.0 * gamma[j] * bg[j] + 4.0 * b[[j, j]];
                if gain > best_gain + 1e-12 {
                    best_gain = gain;
                    best_j = j;
                }
            }
            if best_j == usize::MAX {
                break;
            }
            gamma[best_j] = -gamma[best_j];
            for i in 0..d {
                bg[i] += 2.0 * b[[i, best_j]] * gamma[best_j];
            }
            val += best_gain;
        }
        if val > best_val {
            best_val = val;
            best_gamma = gamma;
        }
    }
    let vertex = Array1::from_iter(best_gamma.iter().zip(half_widths).map(|(g, a)| g * a));
    let inscribed =
        ConstraintSet::ellipsoid(half_widths.to_vec()).and_then(|e| quad_max_exact(&e, x))?;

    let mut theta = Array1::zeros(d);
    let mut value = 0.0;
    for cand in [vertex, inscribed.maximizer] {
        let refined = box_coordinate_ascent(x, half_widths, cand);
        let v = quad_form(x, &refined);
        if v > value {
            value = v;
            theta = refined;
        }
    }
    if value <= 0.0 {
        return Ok(zero_result(d));
    }
    Ok(QuadMaxResult {
        maximizer: theta,
        value,
        kappa: HYPERRECT_KAPPA,
    })
}

/// Cyclic exact coordinate maximization of `theta' X theta` over the box.
/// Along coordinate j the form is quadratic with curvature `X_jj`: convex
/// (best endpoint) when `X_jj >= 0`, else concave with the unconstrained
/// optimum `-(sum_{i!=j} X_ij theta_i)/X_jj` clamped into the box.
fn box_coordinate_ascent(
    x: &Array2<f64>,
    half_widths: &[f64],
    mut theta: Array1<f64>,
) -> Array1<f64> {
    let d = theta.len();
    for _ in 0..30 {
        let mut improved = false;
        for j in 0..d {
            let a = half_widths[j];
            let cross: f64 = (0..d)
                .filter(|&i| i != j)
                .map(|i| x[[j, i]] * theta[i])
                .sum();
            let cjj = x[[j, j]];
            // value contribution of theta_j: cjj t^2 + 2 cross t
            let eval = |t: f64| cjj * t * t + 2.0 * cross * t;
            let mut best_t = if cjj < 0.0 {
                (-cross / cjj).clamp(-a, a)
            } else if cross >= 0.0 {
                a
            } else {
                -a
            };
            for t in [-a, a] {
                if eval(t) > eval(best_t) {
                    best_t = t;
                }
            }
            if eval(best_t) > eval(theta[j]) + 1e-14 {
                theta[j] = best_t;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    theta
}

/// Multi-start ascent for membership-defined sets.
///
/// Starts: the eigenvectors of X, the signed axis vectors, and the signed
/// all-ones direction, each normalized to the gauge boundary. Each start is
/// pushed along `X theta` (renormalizing to the boundary) while that
/// improves, then polished by a derivative-free coordinate ascent on the
/// scale-invariant ratio `theta' X theta / rho_K(theta)^2`, which escapes
/// the eigenvector fixed points of the power step on non-ellipsoidal
/// gauges.
fn gauge_ascent_oracle(set: &ConstraintSet, x: &Array2<f64>) -> Result<QuadMaxResult> {
    let d = set.dim;
    let (_, v) = linalg::eigh(x)?;
    let mut starts: Vec<Vec<f64>> = (0..d).map(|c| (0..d).map(|r| v[[r, c]]).collect()).collect();
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        starts.push(e.clone());
        e[i] = -1.0;
        starts.push(e);
    }
    starts.push(vec![1.0; d]);
    starts.push(vec![-1.0; d]);

    let mut best: Option<(Array1<f64>, f64)> = None;
    for s in starts {
        let g = gauge_eval(set, &s)?;
        if !(g.is_finite() && g > 0.0) {
            continue;
        }
        let mut theta = Array1::from_iter(s.iter().map(|t| t / g));
        let mut val = quad_form(x, &theta);

        for _ in 0..40 {
            let w = x.dot(&theta);
            let wn = w.dot(&w).sqrt();
            if wn < 1e-14 {
                break;
            }
            let g = gauge_eval(set, w.as_slice().unwrap())?;
            if !(g.is_finite() && g > 0.0) {
                break;
            }
            let cand = w.mapv(|t| t / g);
            let cv = quad_form(x, &cand);
            if cv <= val + 1e-12 * (1.0 + val.abs()) {
                break;
            }
            theta = cand;
            val = cv;
        }

        let (theta, val) = gauge_coordinate_ascent(set, x, theta, val)?;
        if best.as_ref().map_or(true, |(_, bv)| val > *bv) {
            best = Some((theta, val));
        }
    }
    match best {
        Some((theta, val)) if val > 0.0 => Ok(QuadMaxResult {
            maximizer: theta,
            value: val,
            kappa: GAUGE_KAPPA,
        }),
        _ => Ok(zero_result(d)),
    }
}

/// Coordinate-grid ascent on `theta' X theta / rho_K(theta)^2` from a
/// boundary point; returns an improved boundary point and its value.
fn gauge_coordinate_ascent(
    set: &ConstraintSet,
    x: &Array2<f64>,
    mut theta: Array1<f64>,
    mut val: f64,
) -> Result<(Array1<f64>, f64)> {
    let d = theta.len();
    let scale = theta.iter().fold(0.0f64, |m, t| m.max(t.abs())).max(1e-9);
    let steps = [0.5, -0.5, 0.2, -0.2, 0.08, -0.08, 0.03, -0.03];
    for _ in 0..8 {
        let mut improved = false;
        for j in 0..d {
            let mut best_cand: Option<(Array1<f64>, f64)> = None;
            for t in steps {
                let mut cand = theta.clone();
                cand[j] += t * scale;
                let g = gauge_eval(set, cand.as_slice().unwrap())?;
                if !(g.is_finite() && g > 0.0) {
                    continue;
                }
                cand.mapv_inplace(|u| u / g);
                let cv = quad_form(x, &cand);
                if cv > val + 1e-10 * (1.0 + val.abs())
                    && best_cand.as_ref().map_or(true, |(_, bv)| cv > *bv)
                {
                    best_cand = Some((cand, cv));
                }
            }
            if let Some((cand, cv)) = best_cand {
                theta = cand;
                val = cv;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    Ok((theta, val))
}

/// Order-of-magnitude type-2 constant of the set (metadata only):
/// an explicit estimate when one was attached (lp balls fill in the
/// Maurey-Pisier orders), otherwise 1 for the l2 ball and sqrt(ln d) for
/// the quadratically convex orthosymmetric kinds.
pub fn type2_constant_estimate(set: &ConstraintSet) -> f64 {
    if let Some(t2) = set.t2_estimate {
        return t2;
    }
    let d = set.dim.max(2) as f64;
    match &set.kind {
        SetKind::Ball { .. } => 1.0,
        SetKind::Ellipsoid { .. } | SetKind::Hyperrectangle { .. } | SetKind::GaugeDefined { .. } => {
            d.ln().sqrt()
        }
    }
}

/// Sample gauge values on the unit sphere and verify the balanced sandwich
/// `1/R <= rho_K(u) <= 1/r` holds for every sampled direction.
pub fn check_balanced(set: &ConstraintSet, samples: usize, seed: u64) -> Result<()> {
    let (r, big_r) = set.radii();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut z: Vec<f64> = (0..set.dim).map(|_| standard_normal(&mut rng)).collect();
        let n = z.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-12 {
            continue;
        }
        z.iter_mut().for_each(|x| *x /= n);
        let g = gauge_eval(set, &z)?;
        let lo = 1.0 / big_r * (1.0 - 1e-6);
        let hi = 1.0 / r * (1.0 + 1e-6);
        if !(g >= lo && g <= hi) {
            return Err(Error::invalid(
                "balancedness",
                format!("gauge {g} outside [{lo}, {hi}] on the sphere"),
            ));
        }
    }
    Ok(())
}
