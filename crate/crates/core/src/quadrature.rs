//! Singular-endpoint integrals of the closure machinery.
//!
//! In the u variable,
//!
//!     Lambda(d) = 36 int_beta^alpha u^(5/2) / ((16 d u^3 - rho) sqrt(Q(u))) du,
//!     period    =  3 int_beta^alpha du / (u sqrt(Q(u))),
//!
//! both with inverse-square-root singularities at the endpoints. The
//! substitution u = beta + (alpha - beta) sin^2(theta) cancels them through
//! the factorization sqrt(Q) = 3 sqrt((alpha-u)(u-beta)) sqrt(u^2 + p u + q),
//! leaving smooth integrands on [0, pi/2]:
//!
//!     Lambda(d) = 24 int_0^(pi/2) u^(5/2) / ((16 d u^3 - rho) sqrt(u^2+pu+q)) dtheta,
//!     period    =  2 int_0^(pi/2) dtheta / (u sqrt(u^2 + p u + q)).
//!
//! The denominator 16 d u^3 - rho is evaluated as Q(u) + 9u^4 through the
//! factorization, which keeps it accurate where it nearly vanishes (large d,
//! u near beta) and makes the boundary layer there resolvable by the
//! error-driven panel refinement below.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::LazyLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaceform::{
    critical_d, solve_extremal_curvatures, EnergyParameter, QuarticProfile, SpaceForm,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-11, abs_floor: 1e-14, max_panels: 4096 }
    }
}

/// One evaluation of the closure function and its companions at a given d.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClosureFunctionSample {
    pub d: f64,
    pub lambda_value: f64,
    pub i_value: f64,
    pub period: f64,
    pub est_abs_error: f64,
}

/// Lambda(d), the angular progress functional over one curvature period.
pub fn lambda_of_d(
    space_form: &SpaceForm,
    energy: &EnergyParameter,
    opts: &QuadOptions,
) -> Result<f64> {
    let quartic = solve_extremal_curvatures(space_form, energy)?;
    lambda_from_quartic(&quartic, opts).map(|(v, _)| v)
}

/// I(d) = sqrt(rho d) Lambda(d); strictly decreasing from sqrt(2) pi to pi.
pub fn i_of_d(space_form: &SpaceForm, energy: &EnergyParameter, opts: &QuadOptions) -> Result<f64> {
    let lambda = lambda_of_d(space_form, energy, opts)?;
    Ok((space_form.rho() * energy.d()).sqrt() * lambda)
}

/// The curvature period in arc length.
pub fn period_of_d(
    space_form: &SpaceForm,
    energy: &EnergyParameter,
    opts: &QuadOptions,
) -> Result<f64> {
    let quartic = solve_extremal_curvatures(space_form, energy)?;
    period_from_quartic(&quartic, opts).map(|(v, _)| v)
}

/// The advance of the rotation angle psi over one curvature period, -I(d).
pub fn delta_psi_per_period(
    space_form: &SpaceForm,
    energy: &EnergyParameter,
    opts: &QuadOptions,
) -> Result<f64> {
    Ok(-i_of_d(space_form, energy, opts)?)
}

/// Everything at once, sharing one root isolation.
pub fn sample_closure_function(
    space_form: &SpaceForm,
    d: f64,
    opts: &QuadOptions,
) -> Result<ClosureFunctionSample> {
    let energy = EnergyParameter::new(space_form, d)?;
    let quartic = solve_extremal_curvatures(space_form, &energy)?;
    let (lambda, lambda_err) = lambda_from_quartic(&quartic, opts)?;
    let (period, _) = period_from_quartic(&quartic, opts)?;
    let scale = (space_form.rho() * d).sqrt();
    Ok(ClosureFunctionSample {
        d,
        lambda_value: lambda,
        i_value: scale * lambda,
        period,
        est_abs_error: scale * lambda_err,
    })
}

pub(crate) fn lambda_from_quartic(
    quartic: &QuarticProfile,
    opts: &QuadOptions,
) -> Result<(f64, f64)> {
    let beta = quartic.beta();
    let span = quartic.alpha() - quartic.beta();
    let f = |theta: f64| {
        let sin = theta.sin();
        let cos = theta.cos();
        let u_minus_beta = span * sin * sin;
        let alpha_minus_u = span * cos * cos;
        let u = beta + u_minus_beta;
        let denom = quartic.w_squared_from_distances(alpha_minus_u, u_minus_beta, u);
        24.0 * u * u * u.sqrt() / (denom * quartic.cofactor(u).sqrt())
    };
    adaptive_gauss_legendre(&f, 0.0, FRAC_PI_2, opts)
}

pub(crate) fn period_from_quartic(
    quartic: &QuarticProfile,
    opts: &QuadOptions,
) -> Result<(f64, f64)> {
    let beta = quartic.beta();
    let span = quartic.alpha() - quartic.beta();
    let f = |theta: f64| {
        let sin = theta.sin();
        let u = beta + span * sin * sin;
        2.0 / (u * quartic.cofactor(u).sqrt())
    };
    adaptive_gauss_legendre(&f, 0.0, FRAC_PI_2, opts)
}

/// Closed form of lim_{d -> d_*} I(d): the integrand collapses onto the
/// double root u_0 = (rho/3)^(1/4), where -Q''(u_0)/2 controls the width.
/// Evaluates to sqrt(2) pi for every rho > 0.
pub fn dirac_limit_value(space_form: &SpaceForm) -> Result<f64> {
    let rho = space_form.rho();
    let d_star = critical_d(space_form)?;
    let u0 = (rho / 3.0).powf(0.25);
    let qpp = 96.0 * d_star * u0 - 108.0 * u0 * u0; // Q''(u0) at d = d_*
    let denom = 16.0 * d_star * (rho / 3.0).powf(0.75) - rho;
    Ok(36.0 * (rho * d_star).sqrt() * (rho / 3.0).powf(0.625) * PI / (denom * (-0.5 * qpp).sqrt()))
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Legendre with a global error heap.
//
// Each panel carries a GL-24 and a GL-48 estimate; their difference is the
// panel error. The worst panel is split until the summed error meets the
// tolerance. Error-driven (not width-driven) refinement is what lets the
// near-threshold and large-d boundary layers converge.
// ---------------------------------------------------------------------------

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn make_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let coarse = fixed_gl(f, a, b, &GL24);
    let fine = fixed_gl(f, a, b, &GL48);
    Panel { a, b, value: fine, err: (fine - coarse).abs() }
}

pub(crate) fn adaptive_gauss_legendre(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<(f64, f64)> {
    let mut heap = BinaryHeap::new();
    let first = make_panel(f, a, b);
    let mut total = first.value;
    let mut total_err = first.err;
    heap.push(first);

    while total_err > opts.abs_floor.max(opts.rel_tol * total.abs()) {
        if heap.len() >= opts.max_panels {
            return Err(Error::QuadratureTolerance { best: total, bound: total_err });
        }
        let worst = heap.pop().expect("heap nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel at floating-point resolution; keep its estimate
            total_err -= worst.err;
            total += 0.0;
            heap.push(Panel { err: 0.0, ..worst });
            continue;
        }
        let left = make_panel(f, worst.a, mid);
        let right = make_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    if !total.is_finite() {
        return Err(Error::QuadratureTolerance { best: total, bound: total_err });
    }
    Ok((total, total_err))
}

fn fixed_gl(f: &impl Fn(f64) -> f64, a: f64, b: f64, rule: &[(f64, f64)]) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in rule {
        acc += w * f(mid + half * x);
    }
    acc * half
}

static GL24: LazyLock<Vec<(f64, f64)>> = LazyLock::new(|| legendre_rule(24));
static GL48: LazyLock<Vec<(f64, f64)>> = LazyLock::new(|| legendre_rule(48));

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], by
/// Newton iteration from the Chebyshev-based initial guess.
fn legendre_rule(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_eval(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 2.0 * f64::EPSILON * x.abs().max(1.0) {
                let (_, d2) = legendre_eval(n, x);
                dp = d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((-x, w));
        if 2 * (i + 1) <= n {
            rule.push((x, w));
        }
    }
    rule.sort_by(|l, r| l.0.total_cmp(&r.0));
    rule.dedup_by(|l, r| l.0 == r.0);
    rule
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
