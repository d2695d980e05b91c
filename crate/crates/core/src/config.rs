//! Default numerical tolerances, grouped so front ends can override and
//! serialize them alongside every output.

use serde::{Deserialize, Serialize};

use crate::closure::SolveOptions;
use crate::curve::IntegrationOptions;
use crate::quadrature::QuadOptions;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Relative tolerance of the adaptive Gauss-Legendre quadrature.
    pub quad_rel: f64,
    /// Absolute floor below which quadrature error demands stop tightening.
    pub quad_abs_floor: f64,
    /// Bisection bracket width for the quartic roots.
    pub root_bisect_width: f64,
    /// Newton polish target: |Q(root)| <= this factor times max(1, |rho|, d^4).
    pub root_residual_factor: f64,
    /// Relative tolerance of the curvature ODE integrator.
    pub ode_rel: f64,
    /// Absolute tolerance of the curvature ODE integrator.
    pub ode_abs: f64,
    /// First-integral residual bound (times the trajectory scale).
    pub first_integral: f64,
    /// Absolute residual |I(d) - target| accepted by the closure solver.
    pub closure_residual: f64,
    /// Relative width of the closure solver's final d interval.
    pub closure_d_rel: f64,
    /// Profile-curve closure tolerance, in units of the sphere radius.
    pub curve_closure_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quad_rel: 1e-11,
            quad_abs_floor: 1e-14,
            root_bisect_width: 1e-8,
            root_residual_factor: 1e-13,
            ode_rel: 1e-12,
            ode_abs: 1e-14,
            first_integral: 1e-8,
            closure_residual: 1e-10,
            closure_d_rel: 1e-12,
            curve_closure_factor: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn quad_options(&self) -> QuadOptions {
        QuadOptions {
            rel_tol: self.quad_rel,
            abs_floor: self.quad_abs_floor,
            ..QuadOptions::default()
        }
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            residual_tol: self.closure_residual,
            d_rel_tol: self.closure_d_rel,
            quad: self.quad_options(),
            ..SolveOptions::default()
        }
    }

    pub fn integration_options(&self) -> IntegrationOptions {
        IntegrationOptions {
            rel_tol: self.ode_rel,
            abs_tol: self.ode_abs,
            first_integral_tol: self.first_integral,
            ..IntegrationOptions::default()
        }
    }
}
