//! Ambient geometry and the quartic that governs the oscillatory regime.
//!
//! The curvature of a non-constant critical curve satisfies, after the
//! substitution u = kappa^(1/2),
//!
//!     u_s^2 = (4/9) u^2 Q(u),     Q(u) = 16 d u^3 - 9 u^4 - rho.
//!
//! For rho > 0 the polynomial Q is positive somewhere iff d exceeds the
//! threshold d_* = (27 rho)^(1/4) / 4, in which case Q has exactly two
//! positive roots 0 < beta < alpha and the curvature oscillates between
//! beta^2 and alpha^2.

use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Simply connected 3-space form of constant sectional curvature `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceForm {
    rho: f64,
}

impl SpaceForm {
    /// Any finite curvature. Non-positive values are accepted; the closure
    /// machinery rejects them where the sphere is required.
    pub fn new(rho: f64) -> Result<Self> {
        if !rho.is_finite() {
            return Err(Error::InvalidSpaceForm { rho });
        }
        Ok(Self { rho })
    }

    /// Round 3-sphere S^3(rho). Requires rho > 0.
    pub fn sphere(rho: f64) -> Result<Self> {
        let sf = Self::new(rho)?;
        if !sf.is_spherical() {
            return Err(Error::NonSphericalAmbient { rho });
        }
        Ok(sf)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn is_spherical(&self) -> bool {
        self.rho > 0.0
    }

    /// Sphere radius 1/sqrt(rho); defined only when rho > 0.
    pub fn radius(&self) -> Option<f64> {
        self.is_spherical().then(|| self.rho.sqrt().recip())
    }
}

/// First-integral constant `d` together with the derived threshold `d_*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyParameter {
    d: f64,
    d_star: Option<f64>,
}

impl EnergyParameter {
    pub fn new(space_form: &SpaceForm, d: f64) -> Result<Self> {
        if !d.is_finite() || d <= 0.0 {
            return Err(Error::InvalidEnergy { d });
        }
        let d_star = space_form.is_spherical().then(|| critical_d_value(space_form.rho()));
        Ok(Self { d, d_star })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// The threshold d_*; `None` for non-spherical ambients.
    pub fn d_star(&self) -> Option<f64> {
        self.d_star
    }

    /// Whether d > d_* on a sphere, i.e. Q has two positive roots.
    pub fn in_oscillatory_regime(&self) -> bool {
        matches!(self.d_star, Some(ds) if self.d > ds)
    }

    pub(crate) fn require_oscillatory(&self, rho: f64) -> Result<f64> {
        match self.d_star {
            None => Err(Error::NonSphericalAmbient { rho }),
            Some(ds) if self.d > ds => Ok(ds),
            Some(ds) => Err(Error::NoOscillatoryRegime { d: self.d, d_star: ds }),
        }
    }
}

fn critical_d_value(rho: f64) -> f64 {
    (27.0 * rho).powf(0.25) / 4.0
}

/// d_* = (27 rho)^(1/4) / 4, the smallest d with an oscillatory regime.
pub fn critical_d(space_form: &SpaceForm) -> Result<f64> {
    if !space_form.is_spherical() {
        return Err(Error::NonSphericalAmbient { rho: space_form.rho() });
    }
    Ok(critical_d_value(space_form.rho()))
}

/// Q(u) = 16 d u^3 - 9 u^4 - rho, evaluated from the coefficients.
pub fn eval_q(u: f64, space_form: &SpaceForm, energy: &EnergyParameter) -> f64 {
    q_poly(u, space_form.rho(), energy.d())
}

#[inline]
pub(crate) fn q_poly(u: f64, rho: f64, d: f64) -> f64 {
    let u2 = u * u;
    u2 * u * (16.0 * d - 9.0 * u) - rho
}

#[inline]
fn q_poly_deriv(u: f64, d: f64) -> f64 {
    12.0 * u * u * (4.0 * d - 3.0 * u)
}

/// Curvature of the constant-curvature critical curve, kappa_0 = sqrt(rho/3).
///
/// This is the flat isoparametric case (d = d_*, a double root of Q); it is
/// excluded from the surface construction.
pub fn constant_curvature_solution(space_form: &SpaceForm) -> Result<f64> {
    if !space_form.is_spherical() {
        return Err(Error::RoundSphereOnly { rho: space_form.rho() });
    }
    Ok((space_form.rho() / 3.0).sqrt())
}

/// The factored oscillatory-regime quartic
/// Q(u) = 9 (alpha - u)(u - beta)(u^2 + p u + q),
/// with 0 < beta < 4d/3 < alpha < 16d/9 and p^2 - 4q < 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuarticProfile {
    rho: f64,
    d: f64,
    beta: f64,
    alpha: f64,
    p: f64,
    q: f64,
}

impl QuarticProfile {
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// Smaller positive root; beta^2 is the minimum curvature.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Larger positive root; alpha^2 is the maximum curvature.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Q(u) from the coefficients.
    pub fn q_at(&self, u: f64) -> f64 {
        q_poly(u, self.rho, self.d)
    }

    /// Q(u) through the factorization, with the endpoint distances supplied
    /// exactly by the caller (cancellation-free near the roots).
    pub fn q_factored(&self, alpha_minus_u: f64, u_minus_beta: f64, u: f64) -> f64 {
        9.0 * alpha_minus_u * u_minus_beta * self.cofactor(u)
    }

    /// The positive quadratic cofactor u^2 + p u + q.
    pub fn cofactor(&self, u: f64) -> f64 {
        (u + self.p) * u + self.q
    }

    /// 16 d u^3 - rho = Q(u) + 9 u^4, computed through the factorization so
    /// that it stays positive to rounding on [beta, alpha]. This is W^2, the
    /// squared third/fourth-component amplitude of the parametrization.
    pub fn w_squared(&self, u: f64) -> f64 {
        let a = (self.alpha - u).max(0.0);
        let b = (u - self.beta).max(0.0);
        let u2 = u * u;
        9.0 * (a * b * self.cofactor(u) + u2 * u2)
    }

    /// Same as [`w_squared`](Self::w_squared) with exact endpoint distances.
    pub fn w_squared_from_distances(&self, alpha_minus_u: f64, u_minus_beta: f64, u: f64) -> f64 {
        let u2 = u * u;
        9.0 * (alpha_minus_u * u_minus_beta * self.cofactor(u) + u2 * u2)
    }
}

/// Isolates the two positive roots of Q and deflates the cofactor.
///
/// beta lives in (0, 4d/3) and alpha in (4d/3, 16d/9): Q'(u) = 12u^2(4d - 3u)
/// makes u = 4d/3 the unique positive critical point, Q(0) = -rho < 0 and
/// Q(16d/9) = -rho < 0, so both brackets are sign-changing whenever
/// Q(4d/3) = 256 d^4/27 - rho > 0, i.e. d > d_*.
pub fn solve_extremal_curvatures(
    space_form: &SpaceForm,
    energy: &EnergyParameter,
) -> Result<QuarticProfile> {
    solve_extremal_with(space_form, energy, &Tolerances::default())
}

pub fn solve_extremal_with(
    space_form: &SpaceForm,
    energy: &EnergyParameter,
    tol: &Tolerances,
) -> Result<QuarticProfile> {
    let rho = space_form.rho();
    let d = energy.d();
    energy.require_oscillatory(rho)?;

    let scale = 1.0_f64.max(rho.abs()).max(d.powi(4));
    let residual_target = tol.root_residual_factor * scale;
    let peak = 4.0 * d / 3.0;
    let outer = 16.0 * d / 9.0;

    let beta = refine_root(rho, d, 0.0, peak, tol.root_bisect_width, residual_target)?;
    let alpha = refine_root(rho, d, peak, outer, tol.root_bisect_width, residual_target)?;

    let (p, q) = deflate_cofactor(rho, d, beta, alpha);

    let profile = QuarticProfile { rho, d, beta, alpha, p, q };

    if !(beta > 0.0 && beta < peak && peak < alpha && alpha < outer) {
        return Err(Error::BracketFailure {
            detail: format!("root ordering violated: beta={beta}, alpha={alpha}, 4d/3={peak}"),
        });
    }
    if profile.p * profile.p - 4.0 * profile.q >= 0.0 {
        return Err(Error::BracketFailure {
            detail: format!("cofactor has real roots: p={p}, q={q}"),
        });
    }
    // Re-expansion guard against cancellation in the deflation.
    let mut worst = 0.0_f64;
    for k in 0..=200 {
        let u = 2.0 * alpha * k as f64 / 200.0;
        let direct = profile.q_at(u);
        let refactored = profile.q_factored(alpha - u, u - beta, u);
        let defect = (direct - refactored).abs() / (1.0 + direct.abs());
        worst = worst.max(defect);
    }
    if worst > 1e-9 {
        return Err(Error::BracketFailure {
            detail: format!("deflation re-expansion defect {worst} exceeds 1e-9"),
        });
    }
    Ok(profile)
}

/// Bisection to the requested width, then a bracket-guarded Newton polish.
fn refine_root(
    rho: f64,
    d: f64,
    mut lo: f64,
    mut hi: f64,
    width: f64,
    residual_target: f64,
) -> Result<f64> {
    let f_lo = q_poly(lo, rho, d);
    let f_hi = q_poly(hi, rho, d);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo * f_hi > 0.0 {
        return Err(Error::BracketFailure {
            detail: format!(
                "no sign change on [{lo}, {hi}]: Q = {f_lo}, {f_hi} (rho={rho}, d={d})"
            ),
        });
    }
    let rising = f_lo < 0.0;
    for _ in 0..200 {
        if hi - lo <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval at floating-point resolution
        }
        let fm = q_poly(mid, rho, d);
        let mid_negative = fm < 0.0;
        if mid_negative == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut u = 0.5 * (lo + hi);
    let mut best = u;
    let mut best_res = q_poly(u, rho, d).abs();
    for _ in 0..60 {
        let fu = q_poly(u, rho, d);
        if fu.abs() < best_res {
            best_res = fu.abs();
            best = u;
        }
        if fu.abs() <= residual_target {
            return Ok(u);
        }
        let dfu = q_poly_deriv(u, d);
        if dfu == 0.0 {
            break;
        }
        let next = u - fu / dfu;
        if !next.is_finite() || next <= lo || next >= hi {
            // fall back onto bisection inside the remaining bracket
            let fm = fu < 0.0;
            if fm == rising {
                lo = u;
            } else {
                hi = u;
            }
            u = 0.5 * (lo + hi);
        } else {
            u = next;
        }
        if u == best {
            break;
        }
    }
    if best_res <= residual_target.max(1e-10 * 1.0_f64.max(rho.abs()).max(d.powi(4))) {
        Ok(best)
    } else {
        Err(Error::BracketFailure {
            detail: format!("Newton polish stalled at u={best} with |Q| = {best_res}"),
        })
    }
}

/// Synthetic division of the monic quartic u^4 - (16d/9)u^3 + rho/9 by
/// (u - alpha)(u - beta); returns the (p, q) of the remaining quadratic.
fn deflate_cofactor(rho: f64, d: f64, beta: f64, alpha: f64) -> (f64, f64) {
    let c = [1.0, -16.0 * d / 9.0, 0.0, 0.0, rho / 9.0];
    let mut b = [0.0; 4];
    b[0] = c[0];
    for k in 1..4 {
        b[k] = c[k] + alpha * b[k - 1];
    }
    let mut a = [0.0; 3];
    a[0] = b[0];
    for k in 1..3 {
        a[k] = b[k] + beta * a[k - 1];
    }
    (a[1], a[2])
}

/// Lobe count m and winding number n of a closed profile curve.
///
/// Admissibility is exactly gcd(m, n) = 1 with m < 2n and 2n^2 < m^2, both
/// strict; the closure target 2 n pi / m then lies in (pi, sqrt(2) pi).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdmissiblePair {
    m: u32,
    n: u32,
}

impl AdmissiblePair {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::PairNotAdmissible {
                m,
                n,
                reason: "m and n must be positive".into(),
            });
        }
        if gcd(m, n) != 1 {
            return Err(Error::PairNotAdmissible {
                m,
                n,
                reason: format!("gcd is {}", gcd(m, n)),
            });
        }
        if !Self::strict_inequalities(m, n) {
            return Err(Error::PairNotAdmissible {
                m,
                n,
                reason: "m < 2n < sqrt(2) m fails (closure target leaves (pi, sqrt(2) pi))".into(),
            });
        }
        Ok(Self { m, n })
    }

    fn strict_inequalities(m: u32, n: u32) -> bool {
        let (m64, n64) = (m as u64, n as u64);
        m64 < 2 * n64 && 2 * n64 * n64 < m64 * m64
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The closure target I(d_{m,n}) = 2 n pi / m.
    pub fn target(&self) -> f64 {
        2.0 * self.n as f64 * std::f64::consts::PI / self.m as f64
    }
}

/// All admissible pairs with m <= m_max, sorted by (m, n).
pub fn enumerate_pairs(m_max: u32) -> Vec<AdmissiblePair> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        for n in (m / 2 + 1)..m {
            if AdmissiblePair::strict_inequalities(m, n) && gcd(m, n) == 1 {
                out.push(AdmissiblePair { m, n });
            }
        }
    }
    out
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    const D_STAR_RHO1: f64 = 0.569_876_764_238_694_4;

    fn sphere(rho: f64) -> SpaceForm {
        SpaceForm::sphere(rho).unwrap()
    }

    #[test]
    fn critical_d_values() {
        assert_eq!(critical_d(&sphere(3.0)).unwrap(), 0.75);
        assert!((critical_d(&sphere(1.0)).unwrap() - D_STAR_RHO1).abs() < 1e-15);
        assert!((critical_d(&sphere(1.0 / 27.0)).unwrap() - 0.25).abs() < 1e-15);
        assert!(matches!(
            critical_d(&SpaceForm::new(-1.0).unwrap()),
            Err(Error::NonSphericalAmbient { .. })
        ));
        assert!(matches!(
            critical_d(&SpaceForm::new(0.0).unwrap()),
            Err(Error::NonSphericalAmbient { .. })
        ));
    }

    #[test]
    fn eval_q_examples() {
        let sf = sphere(1.0);
        let ep = EnergyParameter::new(&sf, 1.0).unwrap();
        assert_eq!(eval_q(0.0, &sf, &ep), -1.0);
        assert!((eval_q(4.0 / 3.0, &sf, &ep) - 687.0 / 81.0).abs() < 1e-13);

        // At d = d_* the lone (double) root sits at u = 4 d_*/3 = (rho/3)^(1/4).
        let ep_star = EnergyParameter::new(&sf, D_STAR_RHO1).unwrap();
        let u0 = (1.0f64 / 3.0).powf(0.25);
        assert!(eval_q(u0, &sf, &ep_star).abs() < 1e-14);
    }

    #[test]
    fn roots_at_reference_point() {
        let sf = sphere(1.0);
        let ep = EnergyParameter::new(&sf, 1.0).unwrap();
        let qp = solve_extremal_curvatures(&sf, &ep).unwrap();
        // oracle: high-precision bisection on Q
        assert!((qp.beta() - 0.435_856_451_277_893_63).abs() < 1e-11);
        assert!((qp.alpha() - 1.757_303_080_979_214_6).abs() < 1e-11);
        assert!((qp.p() - 0.415_381_754_479_330_44).abs() < 1e-10);
        assert!((qp.q() - 0.145_066_569_666_715_9).abs() < 1e-10);
        assert!(qp.p() * qp.p() - 4.0 * qp.q() < 0.0);

        // sign changes quoted in the reference example
        assert!(eval_q(0.43, &sf, &ep) < 0.0 && eval_q(0.45, &sf, &ep) > 0.0);
        assert!(eval_q(1.75, &sf, &ep) > 0.0 && eval_q(1.76, &sf, &ep) < 0.0);
    }

    #[test]
    fn root_invariants_and_residuals() {
        let sf = sphere(1.0);
        for d in [0.58, 0.6, 1.0, 2.0, 10.0, 1e3] {
            let ep = EnergyParameter::new(&sf, d).unwrap();
            let qp = solve_extremal_curvatures(&sf, &ep).unwrap();
            let scale = 1.0_f64.max(d.powi(4));
            assert!(qp.q_at(qp.beta()).abs() < 1e-12 * scale, "d = {d}");
            assert!(qp.q_at(qp.alpha()).abs() < 1e-12 * scale, "d = {d}");
            assert!(qp.beta() < 4.0 * d / 3.0 && 4.0 * d / 3.0 < qp.alpha());
            assert!(qp.alpha() < 16.0 * d / 9.0);
            assert!(qp.q_at(4.0 * d / 3.0) > 0.0);
        }
    }

    #[test]
    fn factorization_identity_sampled() {
        let sf = sphere(1.0);
        let ep = EnergyParameter::new(&sf, 1.0).unwrap();
        let qp = solve_extremal_curvatures(&sf, &ep).unwrap();
        let mut worst = 0.0_f64;
        for k in 0..1000 {
            let u = 2.0 * qp.alpha() * k as f64 / 999.0;
            let direct = qp.q_at(u);
            let refactored = qp.q_factored(qp.alpha() - u, u - qp.beta(), u);
            worst = worst.max((direct - refactored).abs() / (1.0 + direct.abs()));
        }
        assert!(worst < 1e-9, "factorization defect {worst}");
    }

    #[test]
    fn near_threshold_roots_collapse_to_quarter_power() {
        let sf = sphere(1.0);
        let d = D_STAR_RHO1 * (1.0 + 1e-10);
        let ep = EnergyParameter::new(&sf, d).unwrap();
        let qp = solve_extremal_curvatures(&sf, &ep).unwrap();
        let u0 = (1.0f64 / 3.0).powf(0.25);
        assert!((qp.beta() - u0).abs() < 1e-5);
        assert!((qp.alpha() - u0).abs() < 1e-5);
        assert!(qp.beta() < qp.alpha());
    }

    #[test]
    fn roots_gap_shrinks_monotonically_toward_threshold() {
        let sf = sphere(1.0);
        let mut last_gap = f64::INFINITY;
        for k in 0..12 {
            let offset = 1e-1 * 0.25f64.powi(k);
            let ep = EnergyParameter::new(&sf, D_STAR_RHO1 * (1.0 + offset)).unwrap();
            let qp = solve_extremal_curvatures(&sf, &ep).unwrap();
            let gap = qp.alpha() - qp.beta();
            assert!(gap < last_gap, "gap not shrinking at offset {offset}");
            last_gap = gap;
        }
    }

    #[test]
    fn threshold_is_strict() {
        let sf = sphere(1.0);
        let ep = EnergyParameter::new(&sf, D_STAR_RHO1).unwrap();
        assert!(matches!(
            solve_extremal_curvatures(&sf, &ep),
            Err(Error::NoOscillatoryRegime { .. })
        ));
    }

    #[test]
    fn constant_curvature_examples() {
        assert!((constant_curvature_solution(&sphere(3.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!(
            (constant_curvature_solution(&sphere(1.0)).unwrap() - (1.0f64 / 3.0).sqrt()).abs()
                < 1e-15
        );
        assert!(matches!(
            constant_curvature_solution(&SpaceForm::new(-1.0).unwrap()),
            Err(Error::RoundSphereOnly { .. })
        ));
    }

    #[test]
    fn pair_enumeration_examples() {
        let to_tuples =
            |v: Vec<AdmissiblePair>| v.into_iter().map(|p| (p.m(), p.n())).collect::<Vec<_>>();
        assert_eq!(to_tuples(enumerate_pairs(3)), vec![(3, 2)]);
        assert_eq!(to_tuples(enumerate_pairs(5)), vec![(3, 2), (5, 3)]);
        assert_eq!(
            to_tuples(enumerate_pairs(10)),
            vec![(3, 2), (5, 3), (7, 4), (8, 5), (9, 5), (10, 7)]
        );
        assert!(enumerate_pairs(2).is_empty());
    }

    #[test]
    fn pair_validation() {
        assert!(AdmissiblePair::new(3, 2).is_ok());
        // n = 1 corresponds to an embedded (simple) profile curve; impossible.
        for m in 1..50 {
            assert!(AdmissiblePair::new(m, 1).is_err(), "(m, 1) = ({m}, 1)");
        }
        assert!(AdmissiblePair::new(6, 4).is_err()); // gcd 2
        assert!(AdmissiblePair::new(2, 1).is_err()); // target pi, open boundary
        assert!(AdmissiblePair::new(7, 5).is_err()); // 2n > sqrt(2) m
        let p = AdmissiblePair::new(3, 2).unwrap();
        let t = p.target();
        assert!(std::f64::consts::PI < t && t < std::f64::consts::SQRT_2 * std::f64::consts::PI);
    }

    /// Independent double-loop filter, deliberately written differently from
    /// the library (floating-point comparison instead of integer algebra).
    fn brute_force_pairs(m_max: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for m in 1..=m_max {
            for n in 1..=m_max {
                let mf = m as f64;
                let nf = n as f64;
                if mf < 2.0 * nf && 2.0 * nf < 2.0f64.sqrt() * mf && gcd(m, n) == 1 {
                    out.push((m, n));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn pair_enumeration_matches_brute_force_to_200() {
        for m_max in [0, 1, 2, 3, 10, 57, 199, 200] {
            let fast: Vec<_> = enumerate_pairs(m_max).iter().map(|p| (p.m(), p.n())).collect();
            assert_eq!(fast, brute_force_pairs(m_max), "m_max = {m_max}");
        }
    }

    #[test]
    fn radius_squares_to_inverse_curvature() {
        for rho in [0.5, 1.0, 3.0, 4.0, 17.0] {
            let r = sphere(rho).radius().unwrap();
            assert!((r * r * rho - 1.0).abs() < 4.0 * f64::EPSILON);
        }
        assert!(SpaceForm::new(-1.0).unwrap().radius().is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn enumeration_matches_brute_force(m_max in 0u32..200) {
                let fast: Vec<_> =
                    enumerate_pairs(m_max).iter().map(|p| (p.m(), p.n())).collect();
                prop_assert_eq!(fast, brute_force_pairs(m_max));
            }

            #[test]
            fn factorization_holds_across_regime(
                rho in 0.1f64..8.0,
                mult in 1.0001f64..50.0,
            ) {
                let sf = SpaceForm::sphere(rho).unwrap();
                let d = critical_d(&sf).unwrap() * mult;
                let ep = EnergyParameter::new(&sf, d).unwrap();
                let qp = solve_extremal_with(&sf, &ep, &Tolerances::default()).unwrap();
                let scale = 1.0_f64.max(rho).max(d.powi(4));
                prop_assert!(qp.q_at(qp.beta()).abs() < 1e-12 * scale);
                prop_assert!(qp.q_at(qp.alpha()).abs() < 1e-12 * scale);
                prop_assert!(qp.p() * qp.p() - 4.0 * qp.q() < 0.0);
                for k in 0..50 {
                    let u = qp.beta() + (qp.alpha() - qp.beta()) * k as f64 / 49.0;
                    let direct = qp.q_at(u);
                    let refactored = qp.q_factored(qp.alpha() - u, u - qp.beta(), u);
                    prop_assert!((direct - refactored).abs() / (1.0 + direct.abs()) < 1e-9);
                    prop_assert!(qp.w_squared(u) > 0.0);
                }
            }
        }
    }
}
