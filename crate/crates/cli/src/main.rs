//! Command-line front end for the limited-commitment contract solver.
//!
//! Subcommands cover each workflow: the free boundary, the value surface,
//! contract simulation with a Monte Carlo duality summary, the first-best
//! benchmark, the infinite-horizon contract, and the full verification
//! suite. All outputs are deterministic functions of the configuration
//! (seeds included) and each file records the configuration hash.

mod config;

use std::path::Path;
use std::process::ExitCode;

use config::RunConfig;
use licom::boundary::solve_boundary;
use licom::contract::{
    infinite_horizon_contract, monte_carlo_check, run_contract, simulate_income, solve_lambda_star,
};
use licom::model::{autarky_value, derive_constants, first_best_consumption, DerivedConstants};
use licom::value::{dual_j, value_surface_csv, ValuationContext};
use licom::verify;
use licom::Error;

const USAGE: &str = "usage: licom <command> [options]

commands:
  boundary     solve the free boundary and write boundary.csv
  value        write the (Q, g) value surface on a lattice
  simulate     simulate optimal contract paths and a Monte Carlo summary
  first-best   write the full-commitment benchmark next to one contract path
  infinite     solve the infinite-horizon contract
  verify       run the verification suite and write a report

options:
  --config PATH     load a key=value configuration file
  --set KEY=VALUE   override one configuration key (repeatable)
  --out DIR         output directory (default: out)
  --seed N          shorthand for --set seed=N
  --paths N         shorthand for --set paths=N
  --steps N         shorthand for --set sim_steps=N
";

/// Exit policy: 1 verification failure, 2 invalid parameters or usage,
/// 3 infeasible promised value.
fn exit_for(err: &Error) -> u8 {
    match err {
        Error::WInfeasible { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

type CliResult = Result<ExitCode, (u8, String)>;

fn run(args: &[String]) -> CliResult {
    if args.is_empty() {
        return Err((2, format!("missing command\n{USAGE}")));
    }
    let command = args[0].as_str();
    let mut cfg = RunConfig::default();
    let mut i = 1;
    let take = |i: &mut usize, what: &str| -> Result<String, (u8, String)> {
        *i += 1;
        args.get(*i).cloned().ok_or((2, format!("{what} needs a value")))
    };
    while i < args.len() {
        match args[i].as_str() {
            "--config" => {
                let path = take(&mut i, "--config")?;
                cfg.load_file(&path).map_err(|e| (2, e))?;
            }
            "--set" => {
                let kv = take(&mut i, "--set")?;
                let (k, v) =
                    kv.split_once('=').ok_or((2, format!("--set expects KEY=VALUE, got {kv:?}")))?;
                cfg.set(k.trim(), v.trim()).map_err(|e| (2, e))?;
            }
            "--out" => cfg.out_dir = take(&mut i, "--out")?,
            "--seed" => {
                let v = take(&mut i, "--seed")?;
                cfg.set("seed", &v).map_err(|e| (2, e))?;
            }
            "--paths" => {
                let v = take(&mut i, "--paths")?;
                cfg.set("paths", &v).map_err(|e| (2, e))?;
            }
            "--steps" => {
                let v = take(&mut i, "--steps")?;
                cfg.set("sim_steps", &v).map_err(|e| (2, e))?;
            }
            other => return Err((2, format!("unknown option {other:?}\n{USAGE}"))),
        }
        i += 1;
    }

    // Every run validates the model assumptions up front.
    let consts = derive_constants(&cfg.model_params()).map_err(|e| (2, e.to_string()))?;

    match command {
        "boundary" => cmd_boundary(&cfg, &consts),
        "value" => cmd_value(&cfg, &consts),
        "simulate" => cmd_simulate(&cfg, &consts),
        "first-best" => cmd_first_best(&cfg, &consts),
        "infinite" => cmd_infinite(&cfg, &consts),
        "verify" => cmd_verify(&cfg),
        other => Err((2, format!("unknown command {other:?}\n{USAGE}"))),
    }
}

fn write_output(cfg: &RunConfig, name: &str, body: &str) -> Result<(), (u8, String)> {
    let dir = Path::new(&cfg.out_dir);
    std::fs::create_dir_all(dir).map_err(|e| (2, format!("cannot create {dir:?}: {e}")))?;
    let stamped = format!("# config_hash={}\n{body}", cfg.hash());
    std::fs::write(dir.join(name), stamped)
        .map_err(|e| (2, format!("cannot write {name}: {e}")))
}

fn write_json(cfg: &RunConfig, name: &str, value: &serde_json::Value) -> Result<(), (u8, String)> {
    let dir = Path::new(&cfg.out_dir);
    std::fs::create_dir_all(dir).map_err(|e| (2, format!("cannot create {dir:?}: {e}")))?;
    let text = serde_json::to_string_pretty(value).expect("serialisable");
    std::fs::write(dir.join(name), text + "\n")
        .map_err(|e| (2, format!("cannot write {name}: {e}")))
}

fn solve_context(
    cfg: &RunConfig,
    consts: &DerivedConstants,
) -> Result<ValuationContext, (u8, String)> {
    let grid =
        solve_boundary(consts, cfg.boundary_steps).map_err(|e| (exit_for(&e), e.to_string()))?;
    let mut ctx = ValuationContext::new(grid);
    ctx.quad_tol = cfg.quad_tol;
    ctx.tail_tol = cfg.tail_tol;
    Ok(ctx)
}

fn cmd_boundary(cfg: &RunConfig, consts: &DerivedConstants) -> CliResult {
    let ctx = solve_context(cfg, consts)?;
    let residual = ctx.grid.max_residual().map_err(|e| (exit_for(&e), e.to_string()))?;
    write_output(cfg, "boundary.csv", &ctx.grid.to_csv())?;
    println!(
        "boundary: n = {}, z*(0) = {:.9}, z_inf = {:.9}, max residual = {:.3e}",
        cfg.boundary_steps, ctx.grid.values[0], consts.z_inf, residual
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_value(cfg: &RunConfig, consts: &DerivedConstants) -> CliResult {
    let ctx = solve_context(cfg, consts)?;
    let times: Vec<f64> = (0..=cfg.value_time_steps)
        .map(|i| cfg.horizon * i as f64 / cfg.value_time_steps as f64)
        .collect();
    let levels: Vec<f64> = (0..=cfg.value_z_steps)
        .map(|i| {
            cfg.value_z_min
                + (cfg.value_z_max - cfg.value_z_min) * i as f64 / cfg.value_z_steps as f64
        })
        .collect();
    let csv =
        value_surface_csv(&ctx, &times, &levels).map_err(|e| (exit_for(&e), e.to_string()))?;
    write_output(cfg, "value_surface.csv", &csv)?;
    println!(
        "value surface: {} times x {} levels written to {}/value_surface.csv",
        times.len(),
        levels.len(),
        cfg.out_dir
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(cfg: &RunConfig, consts: &DerivedConstants) -> CliResult {
    let params = cfg.model_params();
    let floor = autarky_value(0.0, params.y0, consts).map_err(|e| (exit_for(&e), e.to_string()))?;
    if params.w0 < floor {
        let e = Error::WInfeasible { w: params.w0, autarky: floor };
        return Err((exit_for(&e), e.to_string()));
    }
    let ctx = solve_context(cfg, consts)?;
    let lambda_star = solve_lambda_star(&ctx, 0.0, params.y0, params.w0)
        .map_err(|e| (exit_for(&e), e.to_string()))?;
    let dual_value =
        dual_j(&ctx, 0.0, lambda_star, params.y0).map_err(|e| (exit_for(&e), e.to_string()))?;

    for k in 0..cfg.dump_paths {
        let path = simulate_income(&params, cfg.sim_steps, cfg.seed, k as u64);
        let contract = run_contract(&ctx, &path, lambda_star, 0.0)
            .map_err(|e| (exit_for(&e), e.to_string()))?;
        write_output(cfg, &format!("path_{k:03}.csv"), &contract.to_csv())?;
    }

    let mc = monte_carlo_check(&ctx, &params, lambda_star, cfg.paths, cfg.sim_steps, cfg.seed)
        .map_err(|e| (exit_for(&e), e.to_string()))?;
    let summary = serde_json::json!({
        "config_hash": cfg.hash(),
        "lambda_star": lambda_star,
        "dual_value": dual_value,
        "primal_value": dual_value - lambda_star * params.w0,
        "agent_value_mc": mc.agent_value,
        "agent_se": mc.agent_se,
        "principal_value_mc": mc.principal_value,
        "principal_se": mc.principal_se,
        "paths": cfg.paths,
        "sim_steps": cfg.sim_steps,
        "seed": cfg.seed,
    });
    write_json(cfg, "summary.json", &summary)?;
    println!(
        "simulate: lambda* = {lambda_star:.9}, J = {dual_value:.9}, J - lambda* w = {:.9}",
        dual_value - lambda_star * params.w0
    );
    println!(
        "monte carlo ({} paths x {} steps): agent {:.6} (se {:.2e}), principal {:.6} (se {:.2e})",
        cfg.paths, cfg.sim_steps, mc.agent_value, mc.agent_se, mc.principal_value, mc.principal_se
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_first_best(cfg: &RunConfig, consts: &DerivedConstants) -> CliResult {
    let params = cfg.model_params();
    let ctx = solve_context(cfg, consts)?;
    let lambda_star = solve_lambda_star(&ctx, 0.0, params.y0, params.w0)
        .map_err(|e| (exit_for(&e), e.to_string()))?;
    let path = simulate_income(&params, cfg.sim_steps, cfg.seed, 0);
    let contract =
        run_contract(&ctx, &path, lambda_star, 0.0).map_err(|e| (exit_for(&e), e.to_string()))?;

    let mut csv = String::from("t,Y,C_star,C_fb\n");
    let mut c_fb_last = 0.0;
    for i in 0..contract.times.len() {
        let s = contract.times[i];
        let c_fb = first_best_consumption(0.0, s, params.w0, consts)
            .map_err(|e| (exit_for(&e), e.to_string()))?;
        c_fb_last = c_fb;
        csv.push_str(&format!(
            "{:.14e},{:.14e},{:.14e},{:.14e}\n",
            s, contract.income[i], contract.consumption[i], c_fb
        ));
    }
    write_output(cfg, "first_best.csv", &csv)?;
    let exceeds = *contract.consumption.last().unwrap() > c_fb_last;
    let c_fb_initial = first_best_consumption(0.0, 0.0, params.w0, consts).unwrap();
    let summary = serde_json::json!({
        "config_hash": cfg.hash(),
        "c_fb_initial": c_fb_initial,
        "c_star_initial": contract.consumption[0],
        "last_node_exceeds_first_best": exceeds,
        "seed": cfg.seed,
    });
    write_json(cfg, "first_best_summary.json", &summary)?;
    println!(
        "first-best: C_fb(0) = {c_fb_initial:.9}, C*(0) = {:.9}, final C* {} final C_fb",
        contract.consumption[0],
        if exceeds { "exceeds" } else { "stays below" }
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_infinite(cfg: &RunConfig, consts: &DerivedConstants) -> CliResult {
    let params = cfg.model_params();
    let contract = infinite_horizon_contract(consts, params.y0, params.w0)
        .map_err(|e| (exit_for(&e), e.to_string()))?;
    let path = simulate_income(&params, cfg.sim_steps, cfg.seed, 0);
    let costate = contract.costate_path(&path);
    let mut csv = String::from("t,Y,X_inf,lambda_t,C_inf\n");
    for i in 0..path.times.len() {
        let t = path.times[i];
        let lambda_t = (-(params.rho - params.r) * t).exp() * costate[i];
        csv.push_str(&format!(
            "{:.14e},{:.14e},{:.14e},{:.14e},{:.14e}\n",
            t,
            path.values[i],
            costate[i],
            lambda_t,
            contract.consumption(lambda_t)
        ));
    }
    write_output(cfg, "infinite.csv", &csv)?;
    let summary = serde_json::json!({
        "config_hash": cfg.hash(),
        "lambda_inf": contract.lambda_inf,
        "z_inf": consts.z_inf,
        "seed": cfg.seed,
    });
    write_json(cfg, "infinite_summary.json", &summary)?;
    println!(
        "infinite horizon: lambda_inf = {:.9}, z_inf = {:.9}",
        contract.lambda_inf, consts.z_inf
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cfg: &RunConfig) -> CliResult {
    let results = verify::run_all(&cfg.model_params(), &cfg.verify_config())
        .map_err(|e| (exit_for(&e), e.to_string()))?;
    let mut all_pass = true;
    let checks: Vec<serde_json::Value> = results
        .iter()
        .map(|r| {
            all_pass &= r.pass;
            println!(
                "{} {:<24} measured {:>12.4e} vs {:>8.1e}  ({:.1}s)  {}",
                if r.pass { "PASS" } else { "FAIL" },
                r.name,
                r.measured,
                r.threshold,
                r.seconds,
                r.detail
            );
            serde_json::json!({
                "name": r.name,
                "pass": r.pass,
                "measured": r.measured,
                "threshold": r.threshold,
                "seconds": r.seconds,
                "detail": r.detail,
            })
        })
        .collect();
    let report = serde_json::json!({
        "config_hash": cfg.hash(),
        "all_pass": all_pass,
        "checks": checks,
    });
    write_json(cfg, "verify_report.json", &report)?;
    if all_pass {
        println!("verify: all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verify: FAILURES present");
        Ok(ExitCode::from(1))
    }
}
