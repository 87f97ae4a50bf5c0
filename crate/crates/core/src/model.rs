//! Model primitives: parameters, derived constants, CRRA utility and its
//! convex dual, the autarky value, the first-best benchmark, and the
//! lognormal `d`-factors shared by every integral representation.

use crate::error::{Error, Result};

/// Economic primitives of the contracting problem.
///
/// Rates are per year, the time unit is years, income is in consumption
/// units per year, promised values in utils.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Agent discount rate rho.
    pub rho: f64,
    /// Risk-free rate r, with 0 < r <= rho.
    pub r: f64,
    /// Income drift mu.
    pub mu: f64,
    /// Income volatility sigma.
    pub sigma: f64,
    /// Relative risk aversion gamma (> 0, != 1).
    pub gamma: f64,
    /// Contract horizon T in years.
    pub horizon: f64,
    /// Initial income y0.
    pub y0: f64,
    /// Initial promised value w0 (utils).
    pub w0: f64,
}

impl ModelParams {
    /// Base parameter set used throughout the tests, with the agent
    /// discount rate left free: `rho = 0.04` gives the equal-rates
    /// scenario and `rho = 0.07` the impatient-principal one.
    pub fn base(rho: f64) -> Self {
        ModelParams {
            rho,
            r: 0.04,
            mu: 0.02,
            sigma: 0.1,
            gamma: 3.0,
            horizon: 30.0,
            y0: 1.0,
            w0: -5.0,
        }
    }
}

/// Everything computable from [`ModelParams`] alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    pub params: ModelParams,
    /// Effective autarky discount rho_hat = rho - (1-gamma) mu
    /// + gamma (1-gamma) sigma^2 / 2.
    pub rho_hat: f64,
    /// r_hat = r - mu.
    pub r_hat: f64,
    /// K = r + (rho - r) / gamma.
    pub k: f64,
    /// Positive root of the characteristic quadratic.
    pub alpha_plus: f64,
    /// Negative root of the characteristic quadratic (< -1).
    pub alpha_minus: f64,
    /// Infinite-horizon boundary level z_inf in (0, 1).
    pub z_inf: f64,
    /// Terminal boundary level, identically 1.
    pub z_terminal: f64,
}

impl DerivedConstants {
    /// Characteristic quadratic f(alpha) = (gamma sigma)^2/2 alpha^2
    /// + (r_hat - rho_hat + (gamma sigma)^2/2) alpha - rho_hat.
    pub fn characteristic(&self, alpha: f64) -> f64 {
        let gs = self.gamma_sigma();
        let gs2 = gs * gs;
        0.5 * gs2 * alpha * alpha + (self.r_hat - self.rho_hat + 0.5 * gs2) * alpha - self.rho_hat
    }

    /// The lognormal scale gamma * sigma of the dual-ratio process.
    pub fn gamma_sigma(&self) -> f64 {
        self.params.gamma * self.params.sigma
    }
}

/// Validates the model assumptions and computes the derived constants.
///
/// Validation is fail-fast with a named violation per assumption; values
/// are never clamped. Feasibility of `w0` is checked separately because it
/// needs the autarky value.
pub fn derive_constants(params: &ModelParams) -> Result<DerivedConstants> {
    for (name, value) in [
        ("sigma", params.sigma),
        ("mu", params.mu),
        ("horizon", params.horizon),
        ("y0", params.y0),
    ] {
        if !(value > 0.0) {
            return Err(Error::NonpositiveParameter { name, value });
        }
    }
    if !(params.gamma > 0.0) || params.gamma == 1.0 {
        return Err(Error::GammaInvalid { gamma: params.gamma });
    }
    if !(params.r > 0.0 && params.r <= params.rho) {
        return Err(Error::RateOrderInvalid { r: params.r, rho: params.rho });
    }
    let gamma = params.gamma;
    let sigma_sq = params.sigma * params.sigma;
    let rho_hat = params.rho - (1.0 - gamma) * params.mu + 0.5 * gamma * (1.0 - gamma) * sigma_sq;
    if !(rho_hat > 0.0) {
        return Err(Error::RhoHatNonpositive { rho_hat });
    }
    let r_hat = params.r - params.mu;
    if !(r_hat > 0.0) {
        return Err(Error::RHatNonpositive { r_hat });
    }
    let k = params.r + (params.rho - params.r) / gamma;
    if !(k > 0.0) {
        return Err(Error::KNonpositive { k });
    }
    if !(params.mu > 0.5 * sigma_sq) {
        return Err(Error::MuTooSmall { mu: params.mu, sigma: params.sigma });
    }

    // Roots of (gamma sigma)^2/2 a^2 + (r_hat - rho_hat + (gamma sigma)^2/2) a
    // - rho_hat = 0 via the numerically stable quadratic formula. The
    // constant term is negative, so the roots straddle zero.
    let a = 0.5 * gamma * gamma * sigma_sq;
    let b = r_hat - rho_hat + a;
    let c = -rho_hat;
    let disc = (b * b - 4.0 * a * c).sqrt();
    let q = -0.5 * (b + b.signum() * disc);
    let (r1, r2) = (q / a, c / q);
    let (alpha_plus, alpha_minus) = if r1 > r2 { (r1, r2) } else { (r2, r1) };

    let z_inf = (rho_hat * (alpha_minus * gamma + gamma - 1.0) / (k * alpha_minus * gamma))
        .powf(gamma / (gamma - 1.0));

    Ok(DerivedConstants {
        params: *params,
        rho_hat,
        r_hat,
        k,
        alpha_plus,
        alpha_minus,
        z_inf,
        z_terminal: 1.0,
    })
}

/// CRRA utility u(c) = c^(1-gamma) / (1-gamma).
pub fn utility(c: f64, gamma: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::DomainViolation { what: format!("utility: c = {c} must be > 0") });
    }
    Ok(c.powf(1.0 - gamma) / (1.0 - gamma))
}

/// Convex dual of CRRA utility: u~(z) = max_c { z u(c) - c }
/// = (gamma / (1-gamma)) z^(1/gamma), with maximiser c* = z^(1/gamma).
pub fn dual_utility(z: f64, gamma: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::DomainViolation { what: format!("dual_utility: z = {z} must be > 0") });
    }
    Ok(gamma / (1.0 - gamma) * z.powf(1.0 / gamma))
}

/// Autarky (outside) value: utility of consuming own income until the
/// horizon, U_d(t, y) = y^(1-gamma)/(1-gamma) (1 - e^(-rho_hat (T-t))) / rho_hat.
pub fn autarky_value(t: f64, y: f64, consts: &DerivedConstants) -> Result<f64> {
    let horizon = consts.params.horizon;
    if !(0.0..=horizon).contains(&t) {
        return Err(Error::DomainViolation {
            what: format!("autarky_value: t = {t} outside [0, {horizon}]"),
        });
    }
    if !(y > 0.0) {
        return Err(Error::DomainViolation { what: format!("autarky_value: y = {y} must be > 0") });
    }
    let gamma = consts.params.gamma;
    let tau = horizon - t;
    Ok(y.powf(1.0 - gamma) / (1.0 - gamma) * (-(-consts.rho_hat * tau).exp_m1()) / consts.rho_hat)
}

/// The two lognormal arguments d^1 and d^gamma entering every normal-CDF
/// integrand, evaluated at elapsed time `xi = s - t` and level ratio
/// `z / z*(s)`.
///
/// At `xi = 0` the zero-lag limit is taken by the sign of `log(ratio)`:
/// signed infinity for ratio away from 1 and 0 at ratio 1, so that the CDF
/// evaluates to 1, 0, or 1/2.
pub fn d_factors(xi: f64, ratio: f64, consts: &DerivedConstants) -> Result<(f64, f64)> {
    if !(ratio > 0.0) {
        return Err(Error::DomainViolation { what: format!("d_factors: ratio = {ratio} must be > 0") });
    }
    if !(xi >= 0.0) {
        return Err(Error::DomainViolation { what: format!("d_factors: xi = {xi} must be >= 0") });
    }
    let gs = consts.gamma_sigma();
    let gs2 = gs * gs;
    if xi == 0.0 {
        let inf = if ratio > 1.0 {
            f64::INFINITY
        } else if ratio < 1.0 {
            f64::NEG_INFINITY
        } else {
            0.0
        };
        return Ok((inf, inf));
    }
    let log_ratio = ratio.ln();
    let scale = gs * xi.sqrt();
    let d1 = (log_ratio + (consts.r_hat - consts.rho_hat + 0.5 * gs2) * xi) / scale;
    let dgamma = (log_ratio
        + (consts.r_hat - consts.rho_hat - 0.5 * gs2 + gs2 / consts.params.gamma) * xi)
        / scale;
    Ok((d1, dgamma))
}

/// Closed form of the Laplace transform of a normal CDF ramp:
/// int_0^inf e^(-c xi) N(d sqrt(xi)) d xi = (1/2c)(1 + d / sqrt(d^2 + 2c)).
pub fn laplace_normal_integral(c: f64, d: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::DomainViolation {
            what: format!("laplace_normal_integral: c = {c} must be > 0"),
        });
    }
    Ok(0.5 / c * (1.0 + d / (d * d + 2.0 * c).sqrt()))
}

/// First-best consumption of the full-commitment benchmark at evaluation
/// time `s` for a contract signed at `t` with promised value `w`.
pub fn first_best_consumption(
    t: f64,
    s: f64,
    w: f64,
    consts: &DerivedConstants,
) -> Result<f64> {
    let p = &consts.params;
    if !(t <= s && s <= p.horizon && 0.0 <= t) {
        return Err(Error::DomainViolation {
            what: format!("first_best_consumption: need 0 <= t <= s <= T, got t = {t}, s = {s}"),
        });
    }
    if !(w * (1.0 - p.gamma) > 0.0) {
        return Err(Error::WInfeasible { w, autarky: f64::NAN });
    }
    let horizon_factor = -(-consts.k * (p.horizon - t)).exp_m1();
    let level = (consts.k * (1.0 - p.gamma) * w / horizon_factor).powf(1.0 / (1.0 - p.gamma));
    Ok((-(p.rho - p.r) / p.gamma * (s - t)).exp() * level)
}
