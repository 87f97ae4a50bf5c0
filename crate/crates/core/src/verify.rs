//! End-to-end verification checks.
//!
//! Each check cross-validates one face of the solution: boundary
//! structure, closed-form limits, duality identities, Monte Carlo
//! consistency, path invariants, and the finite-difference oracle. The CLI
//! `verify` subcommand and the acceptance test target both run this list.

use std::time::Instant;

use rayon::prelude::*;

use crate::boundary::solve_boundary;
use crate::contract::{
    monte_carlo_check, run_contract, simulate_income, solve_lambda_star, PathRegion,
};
use crate::dist::normal_cdf;
use crate::error::Result;
use crate::fd::solve_vi_fd;
use crate::model::{
    derive_constants, dual_utility, first_best_consumption, laplace_normal_integral, utility,
    ModelParams,
};
use crate::quad;
use crate::rng::standard_normal;
use crate::value::{dual_j, hjb_residual, marginal_dual, premium_q, premium_q_infinity, Region,
    ValuationContext};

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    /// Worst measured quantity, in the same units as `threshold`.
    pub measured: f64,
    pub threshold: f64,
    pub seconds: f64,
    pub detail: String,
}

impl CheckResult {
    fn assemble(
        name: &'static str,
        measured: f64,
        threshold: f64,
        started: Instant,
        detail: String,
    ) -> Self {
        CheckResult {
            name,
            pass: measured.is_finite() && measured <= threshold,
            measured,
            threshold,
            seconds: started.elapsed().as_secs_f64(),
            detail,
        }
    }

    fn failed(name: &'static str, started: Instant, why: String) -> Self {
        CheckResult {
            name,
            pass: false,
            measured: f64::NAN,
            threshold: 0.0,
            seconds: started.elapsed().as_secs_f64(),
            detail: why,
        }
    }
}

/// Solver and sampling scales for the verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub boundary_steps: usize,
    /// Steps for the long-horizon (T = 200) limit check.
    pub long_horizon_steps: usize,
    pub fd_time_steps: usize,
    pub fd_space_steps: usize,
    pub fd_zeta_min: f64,
    pub fd_zeta_max: f64,
    pub fd_theta: f64,
    pub mc_paths: usize,
    pub mc_steps: usize,
    pub invariant_paths: usize,
    /// Number of sampled state points in the gradient and HJB checks.
    pub check_points: usize,
    pub seed: u64,
    pub quad_tol: f64,
    pub tail_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            boundary_steps: 256,
            long_horizon_steps: 2048,
            fd_time_steps: 400,
            fd_space_steps: 400,
            fd_zeta_min: -2.5,
            fd_zeta_max: 5.0,
            fd_theta: 0.5,
            mc_paths: 100_000,
            mc_steps: 600,
            invariant_paths: 1000,
            check_points: 20,
            seed: 42,
            quad_tol: 1e-9,
            tail_tol: 1e-9,
        }
    }
}

/// Runs every check against the given parameter set. Individual check
/// failures (including solver errors) are reported in the results rather
/// than propagated.
pub fn run_all(params: &ModelParams, cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let consts = derive_constants(params)?;
    let started = Instant::now();
    let grid = match solve_boundary(&consts, cfg.boundary_steps) {
        Ok(g) => g,
        Err(e) => {
            // Without a boundary nothing else can run.
            return Ok(vec![CheckResult::failed(
                "boundary_structure",
                started,
                format!("boundary solve failed: {e}"),
            )]);
        }
    };
    let mut ctx = ValuationContext::new(grid);
    ctx.quad_tol = cfg.quad_tol;
    ctx.tail_tol = cfg.tail_tol;
    // Several checks only need modest quadrature accuracy and run much
    // faster with it.
    let mut fast_ctx = ctx.clone();
    fast_ctx.quad_tol = cfg.quad_tol.max(1e-8);

    Ok(vec![
        boundary_structure(&ctx),
        infinite_horizon_limit(params, cfg),
        laplace_identity(),
        duality_gradient(&fast_ctx, cfg.check_points, cfg.seed),
        cross_method_oracle(&ctx, cfg),
        monte_carlo_duality(&ctx, params, cfg),
        path_invariants(params, cfg),
        first_best_benchmark(params, &ctx),
        homogeneity(&fast_ctx),
        hjb_pointwise(&fast_ctx, cfg.check_points, cfg.seed),
    ])
}

fn boundary_structure(ctx: &ValuationContext) -> CheckResult {
    let t0 = Instant::now();
    let name = "boundary_structure";
    let grid = &ctx.grid;
    let consts = ctx.consts();
    let n = grid.values.len();
    if grid.values[n - 1] != 1.0 {
        return CheckResult::failed(name, t0, "terminal node is not exactly 1".into());
    }
    for i in 0..n - 1 {
        if !(grid.values[i] < grid.values[i + 1]) {
            return CheckResult::failed(name, t0, format!("not strictly increasing at node {i}"));
        }
        if !(grid.values[i] > consts.z_inf && grid.values[i] < 1.0) {
            return CheckResult::failed(name, t0, format!("node {i} outside (z_inf, 1)"));
        }
    }
    let residual = match grid.max_residual() {
        Ok(r) => r,
        Err(e) => return CheckResult::failed(name, t0, e.to_string()),
    };
    // The root solve zeroes its own discretisation, so the node residual
    // alone cannot see a too-coarse grid; estimate the discretisation
    // error by re-solving at half resolution.
    let half = match solve_boundary(consts, (n - 1) / 2) {
        Ok(h) => h,
        Err(e) => {
            return CheckResult::failed(name, t0, format!("half-resolution estimate failed: {e}"))
        }
    };
    let grid_error = (grid.values[0] - half.values[0]).abs();
    let measured = (residual / 1e-9).max(grid_error / 5e-3);
    CheckResult::assemble(
        name,
        measured,
        1.0,
        t0,
        format!(
            "strictly increasing, z*(0) = {:.6}, terminal exactly 1, max residual {residual:.3e} (<= 1e-9), grid-halving drift {grid_error:.3e} (<= 5e-3)",
            grid.values[0]
        ),
    )
}

fn infinite_horizon_limit(params: &ModelParams, cfg: &VerifyConfig) -> CheckResult {
    let t0 = Instant::now();
    let name = "infinite_horizon_limit";
    let mut long = *params;
    long.horizon = 200.0;
    let consts = match derive_constants(&long) {
        Ok(c) => c,
        Err(e) => return CheckResult::failed(name, t0, e.to_string()),
    };
    let grid = match solve_boundary(&consts, cfg.long_horizon_steps) {
        Ok(g) => g,
        Err(e) => return CheckResult::failed(name, t0, e.to_string()),
    };
    let boundary_gap = (grid.values[0] - consts.z_inf).abs();
    let mut ctx = ValuationContext::new(grid);
    ctx.quad_tol = cfg.quad_tol;

    // Premium vs its closed-form limit over a level sweep just above the
    // limiting boundary, relative to the scale of the compared surface.
    let z_lo = 1.0563 * consts.z_inf;
    let mut max_abs = 0.0f64;
    let mut scale = 0.0f64;
    for i in 0..=80 {
        let z = z_lo + (5.0 - z_lo) * i as f64 / 80.0;
        let q = match premium_q(&ctx, 0.0, z) {
            Ok(q) => q,
            Err(e) => return CheckResult::failed(name, t0, e.to_string()),
        };
        let q_inf = premium_q_infinity(z, &consts).unwrap();
        max_abs = max_abs.max((q - q_inf).abs());
        scale = scale.max(q_inf.abs());
    }
    let rel = max_abs / scale;
    let measured = rel.max(boundary_gap);
    CheckResult::assemble(
        name,
        measured,
        1e-3,
        t0,
        format!("|z*(0) - z_inf| = {boundary_gap:.3e}, sup-relative premium gap = {rel:.3e}"),
    )
}

fn laplace_identity() -> CheckResult {
    let t0 = Instant::now();
    let name = "laplace_identity";
    let mut worst = 0.0f64;
    for c in [0.01, 0.05, 0.1, 0.5, 1.0] {
        for d in [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0] {
            let f = |xi: f64| (-c * xi).exp() * normal_cdf(d * xi.sqrt());
            let oracle = quad::integrate(f, 0.0, 1.0, 1e-13)
                + quad::integrate_to_infinity(f, 1.0, 1e-13, 1e-14, 1e9).unwrap();
            let closed = laplace_normal_integral(c, d).unwrap();
            worst = worst.max(((closed - oracle) / oracle).abs());
        }
    }
    CheckResult::assemble(name, worst, 1e-8, t0, "closed form vs quadrature on 5x7 grid".into())
}

/// Deterministic uniforms for sampling check points.
fn unit(seed: u64, i: u64, k: u64) -> f64 {
    normal_cdf(standard_normal(seed, i, k))
}

fn duality_gradient(ctx: &ValuationContext, check_points: usize, seed: u64) -> CheckResult {
    let t0 = Instant::now();
    let name = "duality_gradient";
    let gamma = ctx.consts().params.gamma;
    let horizon = ctx.consts().params.horizon;
    let points: Vec<(f64, f64, f64)> = (0..check_points as u64)
        .map(|i| {
            let t = 0.5 + (horizon - 3.0) * unit(seed, i, 0);
            let y = 0.5 + 1.5 * unit(seed, i, 1);
            let mult = 1.05 + 4.95 * unit(seed, i, 2);
            let lambda = ctx.grid.boundary_at(t).unwrap() * y.powf(gamma) * mult;
            (t, lambda, y)
        })
        .collect();
    let rels: std::result::Result<Vec<f64>, String> = points
        .par_iter()
        .map(|&(t, lambda, y)| {
            let eps = 1e-4 * lambda;
            let plus = dual_j(ctx, t, lambda + eps, y).map_err(|e| e.to_string())?;
            let minus = dual_j(ctx, t, lambda - eps, y).map_err(|e| e.to_string())?;
            let direct = marginal_dual(ctx, t, lambda, y).map_err(|e| e.to_string())?;
            Ok((((plus - minus) / (2.0 * eps) - direct) / direct).abs())
        })
        .collect();
    match rels {
        Ok(v) => {
            let worst = v.into_iter().fold(0.0f64, f64::max);
            CheckResult::assemble(
                name,
                worst,
                1e-4,
                t0,
                format!("central difference of the dual value vs its derivative at {check_points} points"),
            )
        }
        Err(e) => CheckResult::failed(name, t0, e),
    }
}

fn cross_method_oracle(ctx: &ValuationContext, cfg: &VerifyConfig) -> CheckResult {
    let t0 = Instant::now();
    let name = "cross_method_oracle";
    let consts = ctx.consts();
    let sol = match solve_vi_fd(
        consts,
        (cfg.fd_zeta_min, cfg.fd_zeta_max),
        cfg.fd_time_steps,
        cfg.fd_space_steps,
        cfg.fd_theta,
    ) {
        Ok(s) => s,
        Err(e) => return CheckResult::failed(name, t0, e.to_string()),
    };
    let max_q = sol.q.iter().flatten().fold(0.0f64, |m, &v| m.max(v));

    // Interior lattice sample, a few nodes clear of every edge.
    let nt = sol.times.len();
    let ns = sol.zetas.len();
    let samples: Vec<(usize, usize)> = (5..nt - 5)
        .step_by(7)
        .flat_map(|n| (5..ns - 5).step_by(5).map(move |j| (n, j)))
        .collect();
    let max_dev = samples
        .par_iter()
        .map(|&(n, j)| {
            let q_int = premium_q(ctx, sol.times[n], sol.zetas[j].exp()).unwrap();
            (sol.q[n][j] - q_int).abs()
        })
        .reduce(|| 0.0, f64::max);

    // Boundary agreement in grid cells.
    let dz = sol.zetas[1] - sol.zetas[0];
    let mut max_cells = 0.0f64;
    for (t, z_fd) in sol.boundary_estimate() {
        let z_ref = ctx.grid.boundary_at(t).unwrap();
        max_cells = max_cells.max((z_fd.ln() - z_ref.ln()).abs() / dz);
    }
    let measured = (max_dev / max_q).max(max_cells / 2.0 * 1e-2);
    CheckResult::assemble(
        name,
        measured,
        1e-2,
        t0,
        format!(
            "surface deviation {:.3e} of max {max_q:.3}, boundary gap {max_cells:.2} cells (<= 2)",
            max_dev / max_q
        ),
    )
}

fn monte_carlo_duality(ctx: &ValuationContext, params: &ModelParams, cfg: &VerifyConfig) -> CheckResult {
    let t0 = Instant::now();
    let name = "monte_carlo_duality";
    let w = params.w0;
    let run = || -> Result<(f64, f64, String)> {
        let lambda_star = solve_lambda_star(ctx, 0.0, params.y0, w)?;
        let j = dual_j(ctx, 0.0, lambda_star, params.y0)?;
        let principal_target = j - lambda_star * w;
        let mc = monte_carlo_check(ctx, params, lambda_star, cfg.mc_paths, cfg.mc_steps, cfg.seed)?;
        let dt = params.horizon / cfg.mc_steps as f64;
        // Discretisation allowance: sampling the running maximum on the
        // grid biases both integrals O(sqrt(dt)); the constants cover the
        // measured refinement study (agent ~ 0.12 sqrt(dt), principal
        // ~ 0.6 sqrt(dt)) with headroom.
        let agent_allow = 3.0 * mc.agent_se + 0.16 * dt.sqrt();
        let principal_allow = 3.0 * mc.principal_se + 0.80 * dt.sqrt();
        let agent_ratio = (mc.agent_value - w).abs() / agent_allow;
        let principal_ratio = (mc.principal_value - principal_target).abs() / principal_allow;
        let detail = format!(
            "agent {:.6} vs {w} (allow {agent_allow:.4}), principal {:.6} vs {principal_target:.6} (allow {principal_allow:.4}), lambda* {lambda_star:.6}",
            mc.agent_value, mc.principal_value
        );
        Ok((agent_ratio, principal_ratio, detail))
    };
    match run() {
        Ok((a, p, detail)) => CheckResult::assemble(name, a.max(p), 1.0, t0, detail),
        Err(e) => CheckResult::failed(name, t0, e.to_string()),
    }
}

fn path_invariants(params: &ModelParams, cfg: &VerifyConfig) -> CheckResult {
    let t0 = Instant::now();
    let name = "path_invariants";
    let run = || -> std::result::Result<(f64, String), String> {
        // Ratchet configuration: equally patient principal and agent.
        let equal = *params;
        let consts = derive_constants(&equal).map_err(|e| e.to_string())?;
        let mut ctx = ValuationContext::new(
            solve_boundary(&consts, cfg.boundary_steps).map_err(|e| e.to_string())?,
        );
        ctx.quad_tol = cfg.quad_tol.max(1e-8);
        let lambda_star =
            solve_lambda_star(&ctx, 0.0, equal.y0, equal.w0).map_err(|e| e.to_string())?;

        let mut worst_particip = 0.0f64; // max of U_d - w* (should be <= 1e-5)
        let mut worst_hit = 0.0f64; // max |w* - U_d| at ratchet hits
        let mut hits = 0usize;
        let results: Vec<(f64, f64, usize, bool, bool)> = (0..cfg.invariant_paths as u64)
            .into_par_iter()
            .map(|k| {
                let path = simulate_income(&equal, cfg.mc_steps, cfg.seed, k);
                let cp = run_contract(&ctx, &path, lambda_star, 0.0).unwrap();
                let mut particip = 0.0f64;
                let mut hit_gap = 0.0f64;
                let mut hit_count = 0usize;
                let mut costate_ok = true;
                let mut consumption_ok = true;
                for i in 0..cp.times.len() {
                    particip = particip.max(cp.autarky[i] - cp.promised[i]);
                    if cp.region[i] == PathRegion::JrHit {
                        hit_count += 1;
                        hit_gap = hit_gap.max((cp.promised[i] - cp.autarky[i]).abs());
                    }
                    if i > 0 {
                        costate_ok &= cp.costate[i] >= cp.costate[i - 1];
                        // rho = r here, so consumption may never fall.
                        if equal.rho == equal.r {
                            consumption_ok &= cp.consumption[i] >= cp.consumption[i - 1];
                        }
                    }
                }
                (particip, hit_gap, hit_count, costate_ok, consumption_ok)
            })
            .collect();
        for (particip, hit_gap, hit_count, costate_ok, consumption_ok) in results {
            worst_particip = worst_particip.max(particip);
            worst_hit = worst_hit.max(hit_gap);
            hits += hit_count;
            if !costate_ok {
                return Err("costate decreased along a path".into());
            }
            if !consumption_ok {
                return Err("consumption fell in the equal-rates configuration".into());
            }
        }
        if hits == 0 {
            return Err("no ratchet hits across the ensemble".into());
        }

        // Impatient-principal configuration: between hits, log consumption
        // must fall at exactly (rho - r) / gamma per year.
        let mut impatient = *params;
        impatient.rho = params.r + 0.03;
        let consts3 = derive_constants(&impatient).map_err(|e| e.to_string())?;
        let mut ctx3 = ValuationContext::new(
            solve_boundary(&consts3, cfg.boundary_steps).map_err(|e| e.to_string())?,
        );
        ctx3.quad_tol = cfg.quad_tol.max(1e-8);
        let lambda3 =
            solve_lambda_star(&ctx3, 0.0, impatient.y0, impatient.w0).map_err(|e| e.to_string())?;
        let target_slope = -(impatient.rho - impatient.r) / impatient.gamma;
        let slope_errs: Vec<(f64, f64, f64)> = (0..cfg.invariant_paths as u64)
            .into_par_iter()
            .map(|k| {
                let path = simulate_income(&impatient, cfg.mc_steps, cfg.seed ^ 0x5eed, k);
                let cp = run_contract(&ctx3, &path, lambda3, 0.0).unwrap();
                let mut worst_slope = 0.0f64;
                let mut particip = 0.0f64;
                let mut hit_gap = 0.0f64;
                for i in 1..cp.times.len() {
                    particip = particip.max(cp.autarky[i] - cp.promised[i]);
                    if cp.region[i] == PathRegion::JrHit {
                        hit_gap = hit_gap.max((cp.promised[i] - cp.autarky[i]).abs());
                    } else {
                        let dt = cp.times[i] - cp.times[i - 1];
                        let slope = (cp.consumption[i].ln() - cp.consumption[i - 1].ln()) / dt;
                        worst_slope = worst_slope.max((slope - target_slope).abs());
                    }
                }
                (worst_slope, particip, hit_gap)
            })
            .collect();
        let mut worst_slope = 0.0f64;
        for (s, particip, hit_gap) in slope_errs {
            worst_slope = worst_slope.max(s);
            worst_particip = worst_particip.max(particip);
            worst_hit = worst_hit.max(hit_gap);
        }

        // Normalise each invariant by its tolerance and report the worst.
        let measured = (worst_particip / 1e-5).max(worst_hit / 1e-5).max(worst_slope / 1e-6);
        Ok((
            measured,
            format!(
                "participation slack {worst_particip:.2e} (<=1e-5), hit gap {worst_hit:.2e} (<=1e-5), slope error {worst_slope:.2e} (<=1e-6), {hits} hits"
            ),
        ))
    };
    match run() {
        Ok((m, detail)) => CheckResult::assemble(name, m, 1.0, t0, detail),
        Err(e) => CheckResult::failed(name, t0, e),
    }
}

fn first_best_benchmark(params: &ModelParams, ctx: &ValuationContext) -> CheckResult {
    let t0 = Instant::now();
    let name = "first_best_benchmark";
    let consts = ctx.consts();
    let w = params.w0;
    let c0 = match first_best_consumption(0.0, 0.0, w, consts) {
        Ok(c) => c,
        Err(e) => return CheckResult::failed(name, t0, e.to_string()),
    };
    // Frozen reference for the base configuration.
    let base = ModelParams::base(params.rho);
    let reference_gap = if *params == base && params.rho == 0.04 {
        (c0 - 1.321750).abs() / 1e-5
    } else {
        0.0
    };
    // Promise keeping by quadrature.
    let promise = quad::integrate(
        |s| {
            let c = first_best_consumption(0.0, s, w, consts).unwrap();
            (-params.rho * s).exp() * utility(c, params.gamma).unwrap()
        },
        0.0,
        params.horizon,
        1e-10,
    );
    let promise_gap = (promise - w).abs() / 1e-8;
    // Non-increasing consumption path.
    let mut monotone_ok = true;
    let mut prev = f64::INFINITY;
    for i in 0..=100 {
        let s = params.horizon * i as f64 / 100.0;
        let c = first_best_consumption(0.0, s, w, consts).unwrap();
        monotone_ok &= c <= prev + 1e-12;
        prev = c;
    }
    if !monotone_ok {
        return CheckResult::failed(name, t0, "first-best consumption increased".into());
    }
    CheckResult::assemble(
        name,
        reference_gap.max(promise_gap),
        1.0,
        t0,
        format!("C(0) = {c0:.6}, discounted utility {promise:.9} vs promise {w}"),
    )
}

fn homogeneity(ctx: &ValuationContext) -> CheckResult {
    let t0 = Instant::now();
    let name = "homogeneity";
    let gamma = ctx.consts().params.gamma;
    let w = ctx.consts().params.w0;
    let run = || -> Result<f64> {
        let lambda = 1.5 * ctx.grid.boundary_at(0.0)?;
        let j_base = dual_j(ctx, 0.0, lambda, 1.0)?;
        let l_base = solve_lambda_star(ctx, 0.0, 1.0, w)?;
        let mut worst = 0.0f64;
        for k in [0.5f64, 2.0] {
            let j_scaled = dual_j(ctx, 0.0, k.powf(gamma) * lambda, k)?;
            worst = worst.max(((j_scaled - k * j_base) / (k * j_base)).abs());
            let l_scaled = solve_lambda_star(ctx, 0.0, k, k.powf(1.0 - gamma) * w)?;
            worst = worst.max(((l_scaled - k.powf(gamma) * l_base) / (k.powf(gamma) * l_base)).abs());
        }
        Ok(worst)
    };
    match run() {
        Ok(worst) => CheckResult::assemble(
            name,
            worst,
            1e-8,
            t0,
            "dual value and multiplier scaling at k in {0.5, 2}".into(),
        ),
        Err(e) => CheckResult::failed(name, t0, e.to_string()),
    }
}

fn hjb_pointwise(ctx: &ValuationContext, check_points: usize, seed: u64) -> CheckResult {
    let t0 = Instant::now();
    let name = "hjb_pointwise";
    let gamma = ctx.consts().params.gamma;
    let horizon = ctx.consts().params.horizon;
    let half = (check_points / 2).max(1) as u64;
    let points: Vec<(f64, f64, f64, bool)> = (0..2 * half)
        .map(|i| {
            let jump = i >= half;
            let t = 1.0 + (horizon - 2.0) * unit(seed ^ 0xb0b, i, 0);
            let y = 0.7 + 0.8 * unit(seed ^ 0xb0b, i, 1);
            let z_star = ctx.grid.boundary_at(t).unwrap();
            let mult =
                if jump { 0.3 + 0.5 * unit(seed ^ 0xb0b, i, 2) } else { 1.3 + 3.0 * unit(seed ^ 0xb0b, i, 2) };
            (t, z_star * y.powf(gamma) * mult, y, jump)
        })
        .collect();
    let outcome: std::result::Result<Vec<f64>, String> = points
        .par_iter()
        .map(|&(t, lambda, y, jump)| {
            let res = hjb_residual(ctx, t, lambda, y).map_err(|e| e.to_string())?;
            if jump {
                if res.region != Region::Jump {
                    return Err(format!("expected jump region at t={t}, lambda={lambda}"));
                }
                // The gradient branch binds: |dJ/dlambda - U_d| <= 1e-6,
                // and the PDE branch must be nonnegative.
                let grad = res.gradient.abs() / 1e-6;
                let pde_sign = (-res.pde).max(0.0) / 1e-6;
                Ok(grad.max(pde_sign))
            } else {
                if res.region != Region::NoJump {
                    return Err(format!("expected no-jump region at t={t}, lambda={lambda}"));
                }
                let scale = y.abs() + dual_utility(lambda, gamma).unwrap().abs();
                Ok(res.pde.abs() / (5e-3 * scale))
            }
        })
        .collect();
    match outcome {
        Ok(v) => {
            let worst = v.into_iter().fold(0.0f64, f64::max);
            CheckResult::assemble(
                name,
                worst,
                1.0,
                t0,
                format!("{half} no-jump points (PDE residual) and {half} jump points (gradient binding)"),
            )
        }
        Err(e) => CheckResult::failed(name, t0, e),
    }
}
