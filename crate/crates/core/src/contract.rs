//! Contract recovery and simulation.
//!
//! Given the solved boundary, the optimal contract follows from the dual
//! solution: the initial multiplier solves the promised-value equation,
//! the costate is the running maximum of the discount-adjusted boundary
//! level of income, and consumption is a power of the deflated costate.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{autarky_value, utility, DerivedConstants, ModelParams};
use crate::rng::standard_normal;
use crate::value::{marginal_dual, ValuationContext};

/// A simulated income trajectory on a uniform grid, generated by the exact
/// lognormal step from the counter-based stream.
#[derive(Debug, Clone)]
pub struct IncomePath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub seed: u64,
    pub path_index: u64,
}

/// Exact-scheme geometric Brownian motion on `n_steps` uniform intervals
/// over `[0, T]`. Reproducible given `(seed, path_index, n_steps)`.
pub fn simulate_income(
    params: &ModelParams,
    n_steps: usize,
    seed: u64,
    path_index: u64,
) -> IncomePath {
    let dt = params.horizon / n_steps as f64;
    let drift = (params.mu - 0.5 * params.sigma * params.sigma) * dt;
    let vol = params.sigma * dt.sqrt();
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut values = Vec::with_capacity(n_steps + 1);
    let mut y = params.y0;
    times.push(0.0);
    values.push(y);
    for i in 0..n_steps {
        y *= (drift + vol * standard_normal(seed, path_index, i as u64)).exp();
        times.push((i + 1) as f64 * dt);
        values.push(y);
    }
    IncomePath { times, values, seed, path_index }
}

/// Node classification along a simulated contract: the ratchet either set
/// a new record at this node (participation binds) or coasted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathRegion {
    JrHit,
    Nr,
}

impl std::fmt::Display for PathRegion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PathRegion::JrHit => write!(f, "JR_HIT"),
            PathRegion::Nr => write!(f, "NR"),
        }
    }
}

/// Joint trajectory of the optimal contract along one income path.
#[derive(Debug, Clone)]
pub struct ContractPath {
    pub times: Vec<f64>,
    pub income: Vec<f64>,
    /// Running-maximum costate X*.
    pub costate: Vec<f64>,
    /// Deflated multiplier lambda*_s = e^(-(rho-r)(s-t0)) X*_s.
    pub lambda: Vec<f64>,
    /// Optimal consumption C* = (lambda*_s)^(1/gamma).
    pub consumption: Vec<f64>,
    /// Continuation value w*_s = dJ/dlambda at (s, lambda*_s, Y_s).
    pub promised: Vec<f64>,
    /// Autarky value U_d(s, Y_s).
    pub autarky: Vec<f64>,
    pub region: Vec<PathRegion>,
}

impl ContractPath {
    /// CSV serialisation, one row per node, 15 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,Y,X_star,lambda_s,C_star,w_star,U_d,region\n");
        for i in 0..self.times.len() {
            out.push_str(&format!(
                "{:.14e},{:.14e},{:.14e},{:.14e},{:.14e},{:.14e},{:.14e},{}\n",
                self.times[i],
                self.income[i],
                self.costate[i],
                self.lambda[i],
                self.consumption[i],
                self.promised[i],
                self.autarky[i],
                self.region[i],
            ));
        }
        out
    }
}

/// Solves the promised-value equation w = dJ/dlambda for the unique
/// multiplier in the closure of the no-jump region.
///
/// `w = U_d(t, y)` returns the boundary multiplier z*(t) y^gamma itself;
/// larger promises are bracketed by doubling and bisected until the map
/// matches `w` to 1e-9 and the bracket is relatively tight.
pub fn solve_lambda_star(ctx: &ValuationContext, t: f64, y: f64, w: f64) -> Result<f64> {
    let consts = ctx.consts();
    let gamma = consts.params.gamma;
    let u_d = autarky_value(t, y, consts)?;
    if w < u_d || (gamma > 1.0 && !(w < 0.0)) {
        return Err(Error::WInfeasible { w, autarky: u_d });
    }
    // The promised-value map can be very flat in lambda, so quadrature
    // noise is amplified by its inverse slope; solve against an extra
    // tight quadrature to keep the root stable.
    let tight = ValuationContext {
        grid: ctx.grid.clone(),
        quad_tol: ctx.quad_tol.min(1e-12),
        tail_tol: ctx.tail_tol,
    };
    let lambda_boundary = tight.grid.boundary_at(t)? * y.powf(gamma);
    let lo0 = lambda_boundary * (1.0 + 1e-10);
    if w <= marginal_dual(&tight, t, lo0, y)? {
        return Ok(lambda_boundary);
    }
    let mut lo = lo0;
    let mut hi = 2.0 * lo;
    while marginal_dual(&tight, t, hi, y)? < w {
        hi *= 2.0;
        if hi > 1e30 {
            return Err(Error::BracketFailure { hi });
        }
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let diff = marginal_dual(&tight, t, mid, y)? - w;
        if diff.abs() <= 1e-9 && hi - lo <= 1e-12 * mid.max(1.0) {
            return Ok(mid);
        }
        if diff < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

/// Runs the optimal contract along an income path.
///
/// The costate is the running maximum over grid nodes of
/// e^((rho-r)(s-t0)) Y_s^gamma z*(s), floored at `lambda_star`. A node is
/// a ratchet hit when that maximum strictly increases (by more than 1e-14
/// relatively); at hits the multiplier is stored in its exact binding form
/// Y_s^gamma z*(s), which the running-max recursion equals in exact
/// arithmetic.
pub fn run_contract(
    ctx: &ValuationContext,
    path: &IncomePath,
    lambda_star: f64,
    t0: f64,
) -> Result<ContractPath> {
    if !(lambda_star > 0.0) {
        return Err(Error::DomainViolation {
            what: format!("run_contract: lambda_star = {lambda_star}"),
        });
    }
    let consts = ctx.consts();
    let p = consts.params;
    let n = path.times.len();
    let mut out = ContractPath {
        times: path.times.clone(),
        income: path.values.clone(),
        costate: Vec::with_capacity(n),
        lambda: Vec::with_capacity(n),
        consumption: Vec::with_capacity(n),
        promised: Vec::with_capacity(n),
        autarky: Vec::with_capacity(n),
        region: Vec::with_capacity(n),
    };
    let mut x = lambda_star;
    for i in 0..n {
        let s = path.times[i];
        let y = path.values[i];
        let growth = ((p.rho - p.r) * (s - t0)).exp();
        let z_star = ctx.grid.boundary_at(s)?;
        let binding = y.powf(p.gamma) * z_star;
        let candidate = growth * binding;
        let hit = candidate > x * (1.0 + 1e-14);
        if hit {
            x = candidate;
        }
        let lambda_s = if hit { binding } else { x / growth };
        let c = lambda_s.powf(1.0 / p.gamma);
        let w = marginal_dual(ctx, s, lambda_s, y)?;
        out.costate.push(x);
        out.lambda.push(lambda_s);
        out.consumption.push(c);
        out.promised.push(w);
        out.autarky.push(autarky_value(s, y, consts)?);
        out.region.push(if hit { PathRegion::JrHit } else { PathRegion::Nr });
    }
    Ok(out)
}

/// The limiting contract as time-to-maturity grows without bound.
#[derive(Debug, Clone, Copy)]
pub struct InfiniteHorizonContract {
    pub lambda_inf: f64,
    pub consts: DerivedConstants,
}

impl InfiniteHorizonContract {
    /// Promised-value map: w as a function of the current multiplier.
    pub fn promised_value(&self, lambda: f64, y: f64) -> Result<f64> {
        let c = &self.consts;
        let gamma = c.params.gamma;
        if !(lambda > 0.0 && y > 0.0) {
            return Err(Error::DomainViolation {
                what: format!("promised_value: lambda = {lambda}, y = {y}"),
            });
        }
        let scale = (c.z_inf * y.powf(gamma)).powf(1.0 / gamma - 1.0 - c.alpha_minus);
        Ok(-scale / (gamma * c.k * c.alpha_minus) * lambda.powf(c.alpha_minus)
            + lambda.powf(1.0 / gamma - 1.0) / ((1.0 - gamma) * c.k))
    }

    /// Consumption map: C = lambda_t^(1/gamma).
    pub fn consumption(&self, lambda_t: f64) -> f64 {
        lambda_t.powf(1.0 / self.consts.params.gamma)
    }

    /// Costate along an income path:
    /// X*_t = max(lambda_inf, z_inf sup e^((rho-r) xi) Y_xi^gamma).
    pub fn costate_path(&self, path: &IncomePath) -> Vec<f64> {
        let p = self.consts.params;
        let mut x = self.lambda_inf;
        path.times
            .iter()
            .zip(&path.values)
            .map(|(&s, &y)| {
                let cand = self.consts.z_inf * ((p.rho - p.r) * s).exp() * y.powf(p.gamma);
                if cand > x {
                    x = cand;
                }
                x
            })
            .collect()
    }
}

/// Solves the infinite-horizon promised-value equation for the initial
/// multiplier and returns the limiting contract maps.
pub fn infinite_horizon_contract(
    consts: &DerivedConstants,
    y: f64,
    w: f64,
) -> Result<InfiniteHorizonContract> {
    let gamma = consts.params.gamma;
    if !(y > 0.0) {
        return Err(Error::DomainViolation { what: format!("y = {y} must be > 0") });
    }
    let contract = InfiniteHorizonContract { lambda_inf: f64::NAN, consts: *consts };
    let lambda_floor = consts.z_inf * y.powf(gamma);
    let w_floor = contract.promised_value(lambda_floor, y)?;
    // Autarky limit: the root sits at the bracket edge.
    if w == w_floor {
        return Ok(InfiniteHorizonContract { lambda_inf: lambda_floor, consts: *consts });
    }
    if w < w_floor || (gamma > 1.0 && !(w < 0.0)) {
        return Err(Error::WInfeasible { w, autarky: w_floor });
    }
    let mut lo = lambda_floor;
    let mut hi = 2.0 * lambda_floor;
    while contract.promised_value(hi, y)? < w {
        hi *= 2.0;
        if hi > 1e30 {
            return Err(Error::BracketFailure { hi });
        }
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let diff = contract.promised_value(mid, y)? - w;
        if diff.abs() <= 1e-12 && hi - lo <= 1e-13 * mid.max(1.0) {
            break;
        }
        if diff < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(InfiniteHorizonContract { lambda_inf: mid, consts: *consts })
}

/// Monte Carlo estimates of the principal's and the agent's value under
/// the simulated optimal contract.
#[derive(Debug, Clone, Copy)]
pub struct McCheck {
    /// Estimate of E int_0^T e^(-r s) (Y_s - C*_s) ds.
    pub principal_value: f64,
    pub principal_se: f64,
    /// Estimate of E int_0^T e^(-rho s) u(C*_s) ds.
    pub agent_value: f64,
    pub agent_se: f64,
    pub n_paths: usize,
    pub n_steps: usize,
}

/// Simulates `n_paths` income paths under `params` (which may degenerate
/// to sigma = 0), applies the ratchet contract from `lambda_star`, and
/// integrates both discounted value flows by the trapezoid rule.
pub fn monte_carlo_check(
    ctx: &ValuationContext,
    params: &ModelParams,
    lambda_star: f64,
    n_paths: usize,
    n_steps: usize,
    seed: u64,
) -> Result<McCheck> {
    if n_paths == 0 || n_steps == 0 {
        return Err(Error::DomainViolation { what: "n_paths and n_steps must be positive".into() });
    }
    let consts = *ctx.consts();
    let gamma = consts.params.gamma;
    let dt = params.horizon / n_steps as f64;
    let drift = (params.mu - 0.5 * params.sigma * params.sigma) * dt;
    let vol = params.sigma * dt.sqrt();
    // Boundary and discount factors are shared across paths.
    let z_star: Vec<f64> = (0..=n_steps)
        .map(|i| ctx.grid.boundary_at((i as f64 * dt).min(params.horizon)).unwrap())
        .collect();
    let growth: Vec<f64> = (0..=n_steps).map(|i| ((params.rho - params.r) * i as f64 * dt).exp()).collect();
    let disc_r: Vec<f64> = (0..=n_steps).map(|i| (-params.r * i as f64 * dt).exp()).collect();
    let disc_rho: Vec<f64> = (0..=n_steps).map(|i| (-params.rho * i as f64 * dt).exp()).collect();

    let one_path = |k: u64| -> (f64, f64) {
        let mut y = params.y0;
        let mut x = lambda_star;
        let mut principal = 0.0;
        let mut agent = 0.0;
        for i in 0..=n_steps {
            if i > 0 {
                y *= (drift + vol * standard_normal(seed, k, (i - 1) as u64)).exp();
            }
            let candidate = growth[i] * y.powf(gamma) * z_star[i];
            if candidate > x {
                x = candidate;
            }
            let lambda_s = x / growth[i];
            let c = lambda_s.powf(1.0 / gamma);
            let weight = if i == 0 || i == n_steps { 0.5 * dt } else { dt };
            principal += weight * disc_r[i] * (y - c);
            agent += weight * disc_rho[i] * utility(c, gamma).expect("positive consumption");
        }
        (principal, agent)
    };

    let per_path: Vec<(f64, f64)> = (0..n_paths as u64).into_par_iter().map(one_path).collect();

    // Two-pass moments: centring before squaring keeps a zero-variance
    // ensemble at exactly zero standard error.
    let n = n_paths as f64;
    let mean_p = per_path.iter().map(|x| x.0).sum::<f64>() / n;
    let mean_a = per_path.iter().map(|x| x.1).sum::<f64>() / n;
    let var_p = per_path.iter().map(|x| (x.0 - mean_p) * (x.0 - mean_p)).sum::<f64>() / n;
    let var_a = per_path.iter().map(|x| (x.1 - mean_a) * (x.1 - mean_a)).sum::<f64>() / n;
    Ok(McCheck {
        principal_value: mean_p,
        principal_se: (var_p / n).sqrt(),
        agent_value: mean_a,
        agent_se: (var_a / n).sqrt(),
        n_paths,
        n_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::solve_boundary;
    use crate::model::derive_constants;
    use crate::value::{classify_region, Region};

    fn fig2_ctx(n: usize) -> ValuationContext {
        let consts = derive_constants(&ModelParams::base(0.04)).unwrap();
        ValuationContext::new(solve_boundary(&consts, n).unwrap())
    }

    #[test]
    fn income_deterministic_when_sigma_zero() {
        let mut p = ModelParams::base(0.04);
        p.sigma = 0.0;
        let path = simulate_income(&p, 64, 1, 0);
        for (t, y) in path.times.iter().zip(&path.values) {
            let want = (p.mu * t).exp();
            assert!((y - want).abs() <= 1e-13 * want, "t = {t}: {y} vs {want}");
        }
    }

    #[test]
    fn income_is_reproducible_and_path_sensitive() {
        let p = ModelParams::base(0.04);
        let a = simulate_income(&p, 32, 9, 5);
        let b = simulate_income(&p, 32, 9, 5);
        assert_eq!(a.values, b.values);
        let c = simulate_income(&p, 32, 9, 6);
        assert_ne!(a.values, c.values);
    }

    #[test]
    fn income_terminal_mean_matches_gbm() {
        // Moment oracle: E[Y_T] = y0 e^(mu T); the exact scheme has no
        // discretisation bias in the mean, so few steps suffice.
        let p = ModelParams::base(0.04);
        let n_paths = 100_000u64;
        let (mut sum, mut sumsq) = (0.0, 0.0);
        for k in 0..n_paths {
            let y_t = simulate_income(&p, 8, 2024, k).values[8];
            sum += y_t;
            sumsq += y_t * y_t;
        }
        let mean = sum / n_paths as f64;
        let var = sumsq / n_paths as f64 - mean * mean;
        let se = (var / n_paths as f64).sqrt();
        let want = (p.mu * p.horizon).exp();
        assert!((mean - want).abs() <= 3.0 * se, "mean {mean} vs {want} (se {se})");
    }

    #[test]
    fn lambda_star_solves_the_promise_equation() {
        let ctx = fig2_ctx(128);
        let lambda = solve_lambda_star(&ctx, 0.0, 1.0, -5.0).unwrap();
        let w = marginal_dual(&ctx, 0.0, lambda, 1.0).unwrap();
        assert!((w + 5.0).abs() <= 1e-9, "w = {w}");
        assert_eq!(classify_region(&ctx, 0.0, lambda, 1.0).unwrap(), Region::NoJump);
    }

    #[test]
    fn lambda_star_boundary_and_infeasible_cases() {
        let ctx = fig2_ctx(64);
        let consts = ctx.consts();
        let u_d = autarky_value(0.0, 1.0, consts).unwrap();
        let at_floor = solve_lambda_star(&ctx, 0.0, 1.0, u_d).unwrap();
        assert_eq!(at_floor, ctx.grid.boundary_at(0.0).unwrap());

        let err = solve_lambda_star(&ctx, 0.0, 1.0, u_d - 0.1).unwrap_err();
        assert_eq!(err.code(), "W_INFEASIBLE");
        // gamma > 1 requires a negative promise.
        let err = solve_lambda_star(&ctx, 0.0, 1.0, 0.5).unwrap_err();
        assert_eq!(err.code(), "W_INFEASIBLE");
    }

    #[test]
    fn lambda_star_scaling_homogeneity() {
        let ctx = fig2_ctx(128);
        let gamma = ctx.consts().params.gamma;
        let base = solve_lambda_star(&ctx, 0.0, 1.0, -5.0).unwrap();
        for k in [0.5f64, 2.0] {
            let scaled = solve_lambda_star(&ctx, 0.0, k, k.powf(1.0 - gamma) * -5.0).unwrap();
            let want = k.powf(gamma) * base;
            assert!(
                (scaled - want).abs() <= 1e-8 * want,
                "k = {k}: {scaled} vs {want}"
            );
        }
    }

    #[test]
    fn ratchet_on_rising_income_with_equal_rates() {
        // Hand-built monotone income; rho = r so the growth factor is 1
        // and C* must be the running max of (z*(s) Y^gamma v lambda*)^(1/3).
        let ctx = fig2_ctx(64);
        let n = 40;
        let times: Vec<f64> = (0..=n).map(|i| 30.0 * i as f64 / n as f64).collect();
        let values: Vec<f64> = (0..=n).map(|i| 1.0 + 0.05 * i as f64).collect();
        let path = IncomePath { times, values, seed: 0, path_index: 0 };
        let lambda_star = solve_lambda_star(&ctx, 0.0, 1.0, -5.0).unwrap();
        let cp = run_contract(&ctx, &path, lambda_star, 0.0).unwrap();

        let mut run_max = lambda_star;
        for i in 0..=n {
            let cand = ctx.grid.boundary_at(cp.times[i]).unwrap() * cp.income[i].powf(3.0);
            run_max = run_max.max(cand);
            assert!((cp.consumption[i] - run_max.powf(1.0 / 3.0)).abs() < 1e-12);
        }
        for w in cp.consumption.windows(2) {
            assert!(w[1] >= w[0], "C* must ratchet upward");
        }
        for w in cp.costate.windows(2) {
            assert!(w[1] >= w[0], "X* must be non-decreasing");
        }
    }

    #[test]
    fn no_hit_path_decays_at_the_impatience_rate() {
        // Constant low income, rho > r: the boundary is never hit, so
        // X* stays at lambda* and log C* falls at (rho - r)/gamma exactly.
        let consts = derive_constants(&ModelParams::base(0.07)).unwrap();
        let ctx = ValuationContext::new(solve_boundary(&consts, 64).unwrap());
        let n = 30;
        let times: Vec<f64> = (0..=n).map(|i| 30.0 * i as f64 / n as f64).collect();
        let values = vec![0.1; n + 1];
        let path = IncomePath { times, values, seed: 0, path_index: 0 };
        let lambda_star = solve_lambda_star(&ctx, 0.0, 1.0, -5.0).unwrap();
        let cp = run_contract(&ctx, &path, lambda_star, 0.0).unwrap();
        assert!(cp.costate.iter().all(|&x| x == lambda_star));
        for i in 0..n {
            let slope =
                (cp.consumption[i + 1].ln() - cp.consumption[i].ln()) / (cp.times[i + 1] - cp.times[i]);
            assert!((slope + 0.01).abs() < 1e-9, "slope {slope}");
        }
    }

    #[test]
    fn binding_nodes_touch_autarky_exactly() {
        let ctx = fig2_ctx(128);
        let lambda_star = solve_lambda_star(&ctx, 0.0, 1.0, -5.0).unwrap();
        let p = ModelParams::base(0.04);
        let mut hits = 0;
        for k in 0..20 {
            let path = simulate_income(&p, 300, 77, k);
            let cp = run_contract(&ctx, &path, lambda_star, 0.0).unwrap();
            // Promise keeping at inception.
            assert!((cp.promised[0] + 5.0).abs() <= 1e-9, "w*_0 = {}", cp.promised[0]);
            for i in 0..cp.times.len() {
                assert!(cp.promised[i] >= cp.autarky[i] - 1e-5, "participation violated");
                // The regulated state never enters the jump region.
                let binding = ctx.grid.boundary_at(cp.times[i]).unwrap()
                    * cp.income[i].powf(3.0);
                assert!(cp.lambda[i] >= binding * (1.0 - 1e-13), "state below the boundary");
                if cp.region[i] == PathRegion::JrHit {
                    hits += 1;
                    assert!(
                        (cp.promised[i] - cp.autarky[i]).abs() <= 1e-5,
                        "hit node not binding: {} vs {}",
                        cp.promised[i],
                        cp.autarky[i]
                    );
                }
            }
        }
        assert!(hits > 0, "no ratchet hits in 20 paths");
    }

    #[test]
    fn contract_csv_layout() {
        let ctx = fig2_ctx(32);
        let p = ModelParams::base(0.04);
        let path = simulate_income(&p, 8, 3, 0);
        let lambda_star = solve_lambda_star(&ctx, 0.0, 1.0, -5.0).unwrap();
        let cp = run_contract(&ctx, &path, lambda_star, 0.0).unwrap();
        let csv = cp.to_csv();
        assert_eq!(csv.lines().next().unwrap(), "t,Y,X_star,lambda_s,C_star,w_star,U_d,region");
        assert_eq!(csv.lines().count(), 10);
        assert!(csv.lines().nth(1).unwrap().ends_with(",NR") || csv.contains("JR_HIT"));
    }

    #[test]
    fn infinite_horizon_boundary_root_and_homogeneity() {
        let consts = derive_constants(&ModelParams::base(0.04)).unwrap();
        let gamma = consts.params.gamma;
        let probe = InfiniteHorizonContract { lambda_inf: f64::NAN, consts };
        let w_floor = probe.promised_value(consts.z_inf, 1.0).unwrap();
        // Autarky limit value: y^(1-gamma)/((1-gamma) rho_hat).
        assert!((w_floor - 1.0 / ((1.0 - gamma) * consts.rho_hat)).abs() < 1e-12);
        let at_floor = infinite_horizon_contract(&consts, 1.0, w_floor).unwrap();
        assert_eq!(at_floor.lambda_inf, consts.z_inf);

        let base = infinite_horizon_contract(&consts, 1.0, -5.0).unwrap().lambda_inf;
        for k in [0.5f64, 2.0] {
            let scaled =
                infinite_horizon_contract(&consts, k, k.powf(1.0 - gamma) * -5.0).unwrap().lambda_inf;
            assert!((scaled - k.powf(gamma) * base).abs() <= 1e-9 * k.powf(gamma) * base);
        }

        assert!(infinite_horizon_contract(&consts, 1.0, w_floor - 1.0).is_err());
    }

    #[test]
    fn infinite_horizon_costate_ratchets() {
        let consts = derive_constants(&ModelParams::base(0.04)).unwrap();
        let contract = infinite_horizon_contract(&consts, 1.0, -5.0).unwrap();
        let p = ModelParams::base(0.04);
        let path = simulate_income(&p, 200, 5, 1);
        let xs = contract.costate_path(&path);
        assert_eq!(xs[0], contract.lambda_inf.max(consts.z_inf * 1.0));
        for w in xs.windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn monte_carlo_degenerates_to_quadrature_at_zero_volatility() {
        let ctx = fig2_ctx(64);
        let mut p = ModelParams::base(0.04);
        p.sigma = 0.0;
        let lambda_star = solve_lambda_star(&ctx, 0.0, 1.0, -5.0).unwrap();
        let one = monte_carlo_check(&ctx, &p, lambda_star, 1, 400, 11).unwrap();
        let many = monte_carlo_check(&ctx, &p, lambda_star, 5, 400, 11).unwrap();
        assert_eq!(one.principal_value, many.principal_value);
        assert_eq!(one.agent_value, many.agent_value);
        assert_eq!(many.principal_se, 0.0);
        assert_eq!(many.agent_se, 0.0);
    }

    #[test]
    fn monte_carlo_estimates_are_seed_stable() {
        let ctx = fig2_ctx(64);
        let p = ModelParams::base(0.04);
        let lambda_star = solve_lambda_star(&ctx, 0.0, 1.0, -5.0).unwrap();
        let a = monte_carlo_check(&ctx, &p, lambda_star, 500, 150, 7).unwrap();
        let b = monte_carlo_check(&ctx, &p, lambda_star, 500, 150, 7).unwrap();
        assert_eq!(a.agent_value, b.agent_value);
        assert_eq!(a.principal_value, b.principal_value);
    }
}
