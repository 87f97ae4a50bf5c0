//! Valuation of the stopping problem and the dual control problem.
//!
//! Everything is composed from one canonical formula set: the integral
//! representation of the early-exercise premium Q, the obstacle h, the
//! stopped value g = Q + h, and the dual value J and its lambda-derivative
//! (the promised-value map) built from g. The infinite-horizon limits have
//! closed forms used as oracles.

use crate::boundary::BoundaryGrid;
use crate::dist::normal_cdf;
use crate::error::{Error, Result};
use crate::model::{autarky_value, d_factors, dual_utility, DerivedConstants};
use crate::quad;

/// State-space classification relative to the free boundary: the costate
/// jumps in `Jump` (participation binds) and stays flat in `NoJump`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Jump,
    NoJump,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::Jump => write!(f, "JR"),
            Region::NoJump => write!(f, "NR"),
        }
    }
}

/// Immutable evaluation context: a solved boundary plus quadrature knobs.
#[derive(Debug, Clone)]
pub struct ValuationContext {
    pub grid: BoundaryGrid,
    /// Absolute tolerance of the adaptive time quadratures.
    pub quad_tol: f64,
    /// Truncation tolerance of the improper outer integral in the dual
    /// value.
    pub tail_tol: f64,
}

impl ValuationContext {
    pub fn new(grid: BoundaryGrid) -> Self {
        ValuationContext { grid, quad_tol: 1e-9, tail_tol: 1e-9 }
    }

    pub fn consts(&self) -> &DerivedConstants {
        &self.grid.consts
    }

    fn horizon(&self) -> f64 {
        self.grid.consts.params.horizon
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !(0.0 <= t && t <= self.horizon()) {
            return Err(Error::DomainViolation {
                what: format!("t = {t} outside [0, {}]", self.horizon()),
            });
        }
        Ok(())
    }

    /// First time the boundary reaches level `z`, for `z` in
    /// `(z*(t), 1]`. Used to split quadratures at the regime change.
    fn crossing_time(&self, t: f64, z: f64) -> f64 {
        let horizon = self.horizon();
        if z >= 1.0 {
            return horizon;
        }
        let (mut lo, mut hi) = (t, horizon);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.grid.boundary_at(mid).expect("mid in range") < z {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Obstacle of the stopping problem:
/// h(t,z) = (1/(1-gamma)) ((1-e^(-rho_hat (T-t)))/rho_hat
///          - ((1-e^(-K (T-t)))/K) z^(1/gamma - 1)).
pub fn obstacle_h(t: f64, z: f64, consts: &DerivedConstants) -> Result<f64> {
    let horizon = consts.params.horizon;
    if !(0.0 <= t && t <= horizon) {
        return Err(Error::DomainViolation { what: format!("obstacle_h: t = {t}") });
    }
    if !(z > 0.0) {
        return Err(Error::DomainViolation { what: format!("obstacle_h: z = {z}") });
    }
    let gamma = consts.params.gamma;
    let tau = horizon - t;
    let rho_leg = -(-consts.rho_hat * tau).exp_m1() / consts.rho_hat;
    let k_leg = -(-consts.k * tau).exp_m1() / consts.k;
    Ok((rho_leg - k_leg * z.powf(1.0 / gamma - 1.0)) / (1.0 - gamma))
}

/// Integrand of the premium representation at evaluation time `s`.
fn q_integrand(ctx: &ValuationContext, t: f64, z: f64, z_pow: f64, s: f64) -> f64 {
    let consts = ctx.consts();
    let xi = s - t;
    let z_star = ctx.grid.boundary_at(s).expect("s in range");
    let (d1, dg) = d_factors(xi, z / z_star, consts).expect("integrand domain");
    let n1 = normal_cdf(d1);
    let ng = normal_cdf(dg);
    (z_pow * (-consts.k * xi).exp() * ng - (-consts.rho_hat * xi).exp() * n1)
        / (1.0 - consts.params.gamma)
}

fn premium_q_with_tol(ctx: &ValuationContext, t: f64, z: f64, tol: f64) -> Result<f64> {
    ctx.check_time(t)?;
    if !(z > 0.0) {
        return Err(Error::DomainViolation { what: format!("premium_q: z = {z}") });
    }
    let horizon = ctx.horizon();
    if t == horizon {
        return Ok(0.0);
    }
    let z_star_t = ctx.grid.boundary_at(t)?;
    if z <= z_star_t {
        return Ok(0.0);
    }
    let z_pow = z.powf(1.0 / ctx.consts().params.gamma - 1.0);
    let f = |s: f64| q_integrand(ctx, t, z, z_pow, s);
    // Split where the boundary crosses the level z: the integrand switches
    // from the above-boundary to the below-boundary regime there.
    let s_x = ctx.crossing_time(t, z);
    if s_x > t && s_x < horizon {
        Ok(quad::integrate(&f, t, s_x, 0.5 * tol) + quad::integrate(&f, s_x, horizon, 0.5 * tol))
    } else {
        Ok(quad::integrate(&f, t, horizon, tol))
    }
}

/// Early-exercise premium Q(t, z): zero at and below the boundary,
/// otherwise the two-integral representation evaluated by adaptive
/// quadrature to `ctx.quad_tol`.
pub fn premium_q(ctx: &ValuationContext, t: f64, z: f64) -> Result<f64> {
    premium_q_with_tol(ctx, t, z, ctx.quad_tol)
}

/// Stopping value g = Q + h.
pub fn stop_value_g(ctx: &ValuationContext, t: f64, z: f64) -> Result<f64> {
    Ok(premium_q(ctx, t, z)? + obstacle_h(t, z, ctx.consts())?)
}

/// Closed-form infinite-horizon premium.
pub fn premium_q_infinity(z: f64, consts: &DerivedConstants) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::DomainViolation { what: format!("premium_q_infinity: z = {z}") });
    }
    if z <= consts.z_inf {
        return Ok(0.0);
    }
    let gamma = consts.params.gamma;
    let p = 1.0 / gamma - 1.0;
    let lead = -(1.0 / gamma) * (1.0 / consts.k) * (1.0 / consts.alpha_minus)
        * consts.z_inf.powf(p - consts.alpha_minus);
    Ok(lead * z.powf(consts.alpha_minus)
        + (z.powf(p) / consts.k - 1.0 / consts.rho_hat) / (1.0 - gamma))
}

/// Closed-form infinite-horizon stopped value,
/// g_inf = Q_inf + (1/(1-gamma)) (1/rho_hat - z^(1/gamma-1)/K).
pub fn g_infinity(z: f64, consts: &DerivedConstants) -> Result<f64> {
    let gamma = consts.params.gamma;
    let h_inf = (1.0 / consts.rho_hat - z.powf(1.0 / gamma - 1.0) / consts.k) / (1.0 - gamma);
    Ok(premium_q_infinity(z, consts)? + h_inf)
}

/// Classifies a dual state: jump region iff lambda <= z*(t) y^gamma
/// (boundary points are classified as jump).
pub fn classify_region(ctx: &ValuationContext, t: f64, lambda: f64, y: f64) -> Result<Region> {
    ctx.check_time(t)?;
    check_lambda_y(lambda, y)?;
    let z_star = ctx.grid.boundary_at(t)?;
    Ok(if lambda <= z_star * y.powf(ctx.consts().params.gamma) {
        Region::Jump
    } else {
        Region::NoJump
    })
}

fn check_lambda_y(lambda: f64, y: f64) -> Result<()> {
    if !(lambda > 0.0) {
        return Err(Error::DomainViolation { what: format!("lambda = {lambda} must be > 0") });
    }
    if !(y > 0.0) {
        return Err(Error::DomainViolation { what: format!("y = {y} must be > 0") });
    }
    Ok(())
}

/// Horizon legs of J0: (gamma/(1-gamma)) ((1-e^(-K tau))/K) lambda^(1/gamma)
/// + ((1-e^(-r_hat tau))/r_hat) y.
fn j0(t: f64, lambda: f64, y: f64, consts: &DerivedConstants) -> f64 {
    let gamma = consts.params.gamma;
    let tau = consts.params.horizon - t;
    let k_leg = -(-consts.k * tau).exp_m1() / consts.k;
    let r_leg = -(-consts.r_hat * tau).exp_m1() / consts.r_hat;
    gamma / (1.0 - gamma) * k_leg * lambda.powf(1.0 / gamma) + r_leg * y
}

/// The stopped value in its complementary-CDF composition,
/// g(t,z) = (1/(1-gamma)) int e^(-rho_hat xi) N(-d1) ds
///          - (z^(1/gamma-1)/(1-gamma)) int e^(-K xi) N(-d_gamma) ds.
///
/// Algebraically identical to Q + h (N(x) + N(-x) = 1) but free of the
/// cancellation between the two O(1/rho_hat) legs, so it stays accurate in
/// absolute terms deep in the tail where g itself vanishes. Used as the
/// outer integrand of the dual value.
fn g_tail_form(ctx: &ValuationContext, t: f64, z: f64, tol: f64) -> f64 {
    let consts = ctx.consts();
    let horizon = ctx.horizon();
    let gamma = consts.params.gamma;
    let z_pow = z.powf(1.0 / gamma - 1.0);
    let f = |s: f64| {
        let xi = s - t;
        let z_star = ctx.grid.boundary_at(s).expect("s in range");
        let (d1, dg) = d_factors(xi, z / z_star, consts).expect("integrand domain");
        ((-consts.rho_hat * xi).exp() * normal_cdf(-d1)
            - z_pow * (-consts.k * xi).exp() * normal_cdf(-dg))
            / (1.0 - gamma)
    };
    let s_x = ctx.crossing_time(t, z);
    if s_x > t && s_x < horizon {
        quad::integrate(&f, t, s_x, 0.5 * tol) + quad::integrate(&f, s_x, horizon, 0.5 * tol)
    } else {
        quad::integrate(&f, t, horizon, tol)
    }
}

/// Dual value function J(t, lambda, y).
///
/// In the no-jump region the outer integral of g over the dual ratio is
/// computed by substitution u = x / y^gamma and a doubling truncation that
/// stops once a segment contributes less than `ctx.tail_tol` (capped at
/// 1e6 z*(t), beyond which the tail is declared non-convergent). In the
/// jump region J extends linearly with slope U_d.
pub fn dual_j(ctx: &ValuationContext, t: f64, lambda: f64, y: f64) -> Result<f64> {
    ctx.check_time(t)?;
    check_lambda_y(lambda, y)?;
    let consts = ctx.consts();
    if t == ctx.horizon() {
        return Ok(0.0);
    }
    let gamma = consts.params.gamma;
    let z_star = ctx.grid.boundary_at(t)?;
    let lambda_boundary = z_star * y.powf(gamma);
    if lambda < lambda_boundary {
        let j_at_boundary = dual_j(ctx, t, lambda_boundary, y)?;
        let u_d = autarky_value(t, y, consts)?;
        return Ok(j_at_boundary + (lambda - lambda_boundary) * u_d);
    }
    let z_lambda = lambda / y.powf(gamma);
    let seg_tol = 0.1 * ctx.quad_tol;
    let inner_tol = 0.01 * seg_tol;
    let outer = quad::integrate_to_infinity(
        |u| y * g_tail_form(ctx, t, u, inner_tol),
        z_lambda,
        seg_tol,
        ctx.tail_tol,
        1e6 * z_star,
    )?;
    Ok(-outer + j0(t, lambda, y, consts))
}

/// The promised-value map w = dJ/dlambda.
///
/// Inside the no-jump region this is the single-time-integral form
/// composed from g; at and below the boundary it equals the autarky value
/// (value matching).
pub fn marginal_dual(ctx: &ValuationContext, t: f64, lambda: f64, y: f64) -> Result<f64> {
    ctx.check_time(t)?;
    check_lambda_y(lambda, y)?;
    let consts = ctx.consts();
    let horizon = ctx.horizon();
    if t == horizon {
        return Ok(0.0);
    }
    let gamma = consts.params.gamma;
    let z_star = ctx.grid.boundary_at(t)?;
    let y_gamma = y.powf(gamma);
    if lambda <= z_star * y_gamma {
        return autarky_value(t, y, consts);
    }
    let z_lambda = lambda / y_gamma;
    let coeff_rho = y.powf(1.0 - gamma) / (1.0 - gamma);
    let coeff_k = lambda.powf(1.0 / gamma - 1.0) / (1.0 - gamma);
    let f = |s: f64| {
        let xi = s - t;
        let ratio = z_lambda / ctx.grid.boundary_at(s).expect("s in range");
        let (d1, dg) = d_factors(xi, ratio, consts).expect("integrand domain");
        coeff_rho * (-consts.rho_hat * xi).exp() * normal_cdf(-d1)
            + coeff_k * (-consts.k * xi).exp() * normal_cdf(dg)
    };
    let s_x = ctx.crossing_time(t, z_lambda);
    Ok(if s_x > t && s_x < horizon {
        quad::integrate(&f, t, s_x, 0.5 * ctx.quad_tol)
            + quad::integrate(&f, s_x, horizon, 0.5 * ctx.quad_tol)
    } else {
        quad::integrate(&f, t, horizon, ctx.quad_tol)
    })
}

/// Both components of the HJB system at a point, by central finite
/// differences on [`dual_j`].
#[derive(Debug, Clone, Copy)]
pub struct HjbResidual {
    /// dJ/dt + A J + y + u~(lambda); ~0 in NR, >= 0 in JR.
    pub pde: f64,
    /// dJ/dlambda - U_d; > 0 in NR, ~0 in JR.
    pub gradient: f64,
    pub region: Region,
}

/// Evaluates the HJB residual at an interior point. The whole stencil must
/// sit inside one region; a straddling stencil is rejected.
pub fn hjb_residual(ctx: &ValuationContext, t: f64, lambda: f64, y: f64) -> Result<HjbResidual> {
    ctx.check_time(t)?;
    check_lambda_y(lambda, y)?;
    let consts = ctx.consts();
    let p = consts.params;
    let h_t = 1e-3;
    let h_l = 1e-3 * lambda;
    let h_y = 1e-3 * y;
    if t - h_t < 0.0 || t + h_t > ctx.horizon() {
        return Err(Error::DomainViolation {
            what: format!("hjb_residual: t = {t} too close to the time boundary"),
        });
    }
    let region = classify_region(ctx, t, lambda, y)?;
    // The whole stencil, with a two-step margin, must stay on one side of
    // the free boundary; the boundary is increasing in t, so its extremes
    // over the stencil are at t -+ h_t.
    let z_lo = ctx.grid.boundary_at(t - h_t)?;
    let z_hi = ctx.grid.boundary_at(t + h_t)?;
    let inside = match region {
        Region::NoJump => lambda - 2.0 * h_l > z_hi * (y + 2.0 * h_y).powf(p.gamma),
        Region::Jump => lambda + 2.0 * h_l <= z_lo * (y - 2.0 * h_y).powf(p.gamma),
    };
    if !inside {
        return Err(Error::StencilAcrossBoundary);
    }

    let j = |tt: f64, ll: f64, yy: f64| dual_j(ctx, tt, ll, yy);
    let j0 = j(t, lambda, y)?;
    let dt = (j(t + h_t, lambda, y)? - j(t - h_t, lambda, y)?) / (2.0 * h_t);
    let (j_lp, j_lm) = (j(t, lambda + h_l, y)?, j(t, lambda - h_l, y)?);
    let dl = (j_lp - j_lm) / (2.0 * h_l);
    let (j_yp, j_ym) = (j(t, lambda, y + h_y)?, j(t, lambda, y - h_y)?);
    let dy = (j_yp - j_ym) / (2.0 * h_y);
    let dyy = (j_yp - 2.0 * j0 + j_ym) / (h_y * h_y);

    let pde = dt + 0.5 * p.sigma * p.sigma * y * y * dyy + p.mu * y * dy
        + (p.r - p.rho) * lambda * dl
        - p.r * j0
        + y
        + dual_utility(lambda, p.gamma)?;
    let gradient = dl - autarky_value(t, y, consts)?;
    Ok(HjbResidual { pde, gradient, region })
}

/// CSV dump of the (Q, g) surface on the product of the given lattices:
/// header `t,z,Q,g`, 15 significant digits.
pub fn value_surface_csv(ctx: &ValuationContext, times: &[f64], levels: &[f64]) -> Result<String> {
    let mut out = String::from("t,z,Q,g\n");
    for &t in times {
        for &z in levels {
            let q = premium_q(ctx, t, z)?;
            let g = q + obstacle_h(t, z, ctx.consts())?;
            out.push_str(&format!("{:.14e},{:.14e},{:.14e},{:.14e}\n", t, z, q, g));
        }
    }
    Ok(out)
}
