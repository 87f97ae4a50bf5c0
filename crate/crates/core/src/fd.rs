//! Independent finite-difference oracle for the zero-obstacle variational
//! inequality in log space.
//!
//! The premium satisfies, wherever it is positive,
//! `-dQ/dt - L Q = (1/(1-gamma))(z^(1/gamma-1) - 1)` with terminal value 0
//! and the constraint Q >= 0. In `zeta = log z` coordinates the operator
//! has constant coefficients, and the obstacle problem is marched backward
//! with a theta-scheme, solving the complementarity system at each step by
//! projected SOR. This solver shares no code path with the integral
//! representation, which is what makes it an oracle.

use crate::error::{Error, Result};
use crate::model::DerivedConstants;

/// Solved lattice of the obstacle problem.
#[derive(Debug, Clone)]
pub struct FdSolution {
    pub times: Vec<f64>,
    pub zetas: Vec<f64>,
    /// `q[n][j]` is the premium at time `times[n]`, log-state `zetas[j]`.
    pub q: Vec<Vec<f64>>,
    /// Theta weight actually used at each backward step (Rannacher
    /// startup steps are fully implicit).
    pub thetas: Vec<f64>,
    pub consts: DerivedConstants,
    /// PSOR stopping tolerance (max absolute update per sweep).
    pub psor_tol: f64,
}

/// Far-field value: the unconstrained PDE with this source and a zero
/// terminal condition has the closed-form solution -h(t, z), which is what
/// Q approaches when the obstacle stops binding (large z).
fn far_field(t: f64, zeta: f64, consts: &DerivedConstants) -> f64 {
    let gamma = consts.params.gamma;
    let tau = consts.params.horizon - t;
    let rho_leg = -(-consts.rho_hat * tau).exp_m1() / consts.rho_hat;
    let k_leg = -(-consts.k * tau).exp_m1() / consts.k;
    -(rho_leg - k_leg * (zeta * (1.0 / gamma - 1.0)).exp()) / (1.0 - gamma)
}

/// Backward theta-scheme with projected SOR.
///
/// Defaults follow the oracle contract: theta = 1/2 with two fully
/// implicit startup steps, relaxation 1.2 auto-reduced on divergence,
/// sweeps iterated to 1e-10.
pub fn solve_vi_fd(
    consts: &DerivedConstants,
    domain: (f64, f64),
    n_time: usize,
    n_space: usize,
    theta: f64,
) -> Result<FdSolution> {
    let (zeta_min, zeta_max) = domain;
    if !(zeta_min < consts.z_inf.ln() - 1.0) {
        return Err(Error::DomainViolation {
            what: format!("zeta_min = {zeta_min} must sit below log z_inf - 1"),
        });
    }
    if !(zeta_max > 3.0) {
        return Err(Error::DomainViolation { what: format!("zeta_max = {zeta_max} must exceed 3") });
    }
    if n_time < 50 || n_space < 50 {
        return Err(Error::DomainViolation {
            what: format!("grid {n_time}x{n_space} too coarse (need >= 50)"),
        });
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::DomainViolation { what: format!("theta = {theta} outside [0, 1]") });
    }

    let p = consts.params;
    let gamma = p.gamma;
    let horizon = p.horizon;
    let dt = horizon / n_time as f64;
    let dz = (zeta_max - zeta_min) / n_space as f64;
    let times: Vec<f64> = (0..=n_time).map(|n| n as f64 * dt).collect();
    let zetas: Vec<f64> = (0..=n_space).map(|j| zeta_min + j as f64 * dz).collect();

    let diff = 0.5 * gamma * gamma * p.sigma * p.sigma;
    let drift = consts.r_hat - consts.rho_hat + diff;
    let source: Vec<f64> =
        zetas.iter().map(|&z| ((z * (1.0 / gamma - 1.0)).exp() - 1.0) / (1.0 - gamma)).collect();

    // Spatial operator stencil (constant coefficients).
    let lower = diff / (dz * dz) - drift / (2.0 * dz);
    let upper = diff / (dz * dz) + drift / (2.0 * dz);
    let center = -2.0 * diff / (dz * dz) - consts.rho_hat;
    let apply_l = |q: &[f64], j: usize| lower * q[j - 1] + center * q[j] + upper * q[j + 1];

    let psor_tol = 1e-10;
    let max_sweeps = 40_000;

    let mut q = vec![vec![0.0; n_space + 1]; n_time + 1];
    // Terminal slice is identically zero already.
    for n in (0..n_time).rev() {
        // Rannacher startup: two fully implicit steps off the terminal
        // kink, then the requested weighting.
        let th = if n >= n_time.saturating_sub(2) { 1.0 } else { theta };
        let t_here = times[n];
        let (prev, rest) = q.split_at_mut(n + 1);
        let now = &mut prev[n];
        let next = &rest[0];

        // rhs = source + next/dt + (1-theta) L next.
        let mut rhs = vec![0.0; n_space + 1];
        for j in 1..n_space {
            rhs[j] = source[j] + next[j] / dt + (1.0 - th) * apply_l(next, j);
        }
        let diag = 1.0 / dt + th * (2.0 * diff / (dz * dz) + consts.rho_hat);
        let off_lower = -th * lower;
        let off_upper = -th * upper;

        // Warm start from the later slice; pin the Dirichlet edges.
        now.copy_from_slice(next);
        now[0] = 0.0;
        now[n_space] = far_field(t_here, zeta_max, consts);

        let mut omega = 1.2;
        let mut prev_change = f64::INFINITY;
        let mut growth_streak = 0;
        let mut sweeps = 0;
        loop {
            let mut change: f64 = 0.0;
            for j in 1..n_space {
                let gs = (rhs[j] - off_lower * now[j - 1] - off_upper * now[j + 1]) / diag;
                let candidate = (now[j] + omega * (gs - now[j])).max(0.0);
                change = change.max((candidate - now[j]).abs());
                now[j] = candidate;
            }
            sweeps += 1;
            if change <= psor_tol {
                break;
            }
            if sweeps >= max_sweeps {
                return Err(Error::PsorNotConverged { time_index: n, residual: change });
            }
            // Back off the relaxation if the sweep updates keep growing.
            if change > prev_change {
                growth_streak += 1;
                if growth_streak >= 5 && omega > 1.0 {
                    omega = (omega - 0.1).max(1.0);
                    growth_streak = 0;
                }
            } else {
                growth_streak = 0;
            }
            prev_change = change;
        }
    }

    let mut thetas = vec![theta; n_time];
    let startup = n_time.saturating_sub(2);
    for th in thetas.iter_mut().skip(startup) {
        *th = 1.0;
    }
    Ok(FdSolution { times, zetas, q, thetas, consts: *consts, psor_tol })
}

impl FdSolution {
    /// Boundary estimate per time node: the smallest grid level where the
    /// premium exceeds 10x the solver tolerance, exponentiated, made
    /// non-decreasing in time. The terminal slice is identically zero by
    /// construction, so the terminal estimate is its known value 1.
    pub fn boundary_estimate(&self) -> Vec<(f64, f64)> {
        let threshold = 10.0 * self.psor_tol;
        let n_time = self.times.len() - 1;
        let mut out = Vec::with_capacity(n_time + 1);
        for n in 0..=n_time {
            let z = if n == n_time {
                1.0
            } else {
                match self.q[n].iter().position(|&v| v > threshold) {
                    Some(j) => self.zetas[j].exp(),
                    None => 1.0,
                }
            };
            out.push((self.times[n], z));
        }
        // Monotone cleanup of grid-level noise.
        let mut running = out[0].1;
        for item in out.iter_mut() {
            running = running.max(item.1);
            item.1 = running;
        }
        out
    }

    /// Discrete theta-scheme residual of the unconstrained PDE at an
    /// interior node, using the same stencil the solver used.
    fn pde_residual(&self, n: usize, j: usize) -> f64 {
        let p = self.consts.params;
        let gamma = p.gamma;
        let dt = self.times[1] - self.times[0];
        let dz = self.zetas[1] - self.zetas[0];
        let diff = 0.5 * gamma * gamma * p.sigma * p.sigma;
        let drift = self.consts.r_hat - self.consts.rho_hat + diff;
        let th = self.thetas[n];
        let lop = |row: &[f64]| {
            (diff * (row[j - 1] - 2.0 * row[j] + row[j + 1]) / (dz * dz))
                + drift * (row[j + 1] - row[j - 1]) / (2.0 * dz)
                - self.consts.rho_hat * row[j]
        };
        let source = ((self.zetas[j] * (1.0 / gamma - 1.0)).exp() - 1.0) / (1.0 - gamma);
        -(self.q[n + 1][j] - self.q[n][j]) / dt
            - th * lop(&self.q[n])
            - (1.0 - th) * lop(&self.q[n + 1])
            - source
    }

    /// CSV dump `t,zeta,Q_hat`, one row per lattice node.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,zeta,Q_hat\n");
        for (n, t) in self.times.iter().enumerate() {
            for (j, z) in self.zetas.iter().enumerate() {
                out.push_str(&format!("{:.14e},{:.14e},{:.14e}\n", t, z, self.q[n][j]));
            }
        }
        out
    }

    /// CSV dump of the boundary estimate, `t,z_fd`.
    pub fn boundary_csv(&self) -> String {
        let mut out = String::from("t,z_fd\n");
        for (t, z) in self.boundary_estimate() {
            out.push_str(&format!("{:.14e},{:.14e}\n", t, z));
        }
        out
    }
}

/// Complementarity statistics over all interior nodes.
#[derive(Debug, Clone, Copy)]
pub struct ComplementarityReport {
    /// max over nodes of |min(pde residual, Q)|, the defining residual of
    /// the discrete obstacle problem.
    pub max_min_form: f64,
    pub p50_min_form: f64,
    pub p90_min_form: f64,
    pub p99_min_form: f64,
    /// Largest |pde residual| over nodes where Q > 0 (continuation).
    pub max_continuation_residual: f64,
    /// Most negative pde residual over nodes where Q = 0 (stopped); the
    /// inequality branch requires this to be nonnegative up to tolerance.
    pub min_stopped_residual: f64,
}

/// Evaluates the discrete complementarity system over the whole lattice.
pub fn complementarity_report(sol: &FdSolution) -> ComplementarityReport {
    let n_time = sol.times.len() - 1;
    let n_space = sol.zetas.len() - 1;
    let mut min_forms = Vec::with_capacity(n_time * (n_space - 1));
    let mut max_cont = 0.0f64;
    let mut min_stopped = f64::INFINITY;
    for n in 0..n_time {
        for j in 1..n_space {
            let res = sol.pde_residual(n, j);
            let qv = sol.q[n][j];
            min_forms.push(res.min(qv).abs());
            if qv > 0.0 {
                max_cont = max_cont.max(res.abs());
            } else {
                min_stopped = min_stopped.min(res);
            }
        }
    }
    min_forms.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let quantile = |p: f64| min_forms[((min_forms.len() - 1) as f64 * p) as usize];
    ComplementarityReport {
        max_min_form: *min_forms.last().unwrap(),
        p50_min_form: quantile(0.5),
        p90_min_form: quantile(0.9),
        p99_min_form: quantile(0.99),
        max_continuation_residual: max_cont,
        min_stopped_residual: min_stopped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::solve_boundary;
    use crate::model::{derive_constants, ModelParams};

    fn fig2() -> DerivedConstants {
        derive_constants(&ModelParams::base(0.04)).unwrap()
    }

    fn small_solution() -> FdSolution {
        solve_vi_fd(&fig2(), (-2.5, 5.0), 100, 100, 0.5).unwrap()
    }

    #[test]
    fn terminal_slice_is_zero_and_solution_nonnegative() {
        let sol = small_solution();
        assert!(sol.q.last().unwrap().iter().all(|&v| v == 0.0));
        assert!(sol.q.iter().flatten().all(|&v| v >= 0.0));
    }

    #[test]
    fn premium_vanishes_below_the_infinite_horizon_level() {
        let sol = small_solution();
        let consts = fig2();
        let cut = consts.z_inf.ln();
        for (n, row) in sol.q.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if sol.zetas[j] <= cut {
                    assert!(v.abs() <= 1e-8, "Q({}, {}) = {v}", sol.times[n], sol.zetas[j]);
                }
            }
        }
    }

    #[test]
    fn monotone_in_state_and_time() {
        let sol = small_solution();
        let tol = 1e-9;
        for row in &sol.q {
            for j in 1..row.len() {
                assert!(row[j] >= row[j - 1] - tol, "not monotone in zeta");
            }
        }
        for n in 1..sol.times.len() {
            for j in 0..sol.zetas.len() {
                assert!(
                    sol.q[n][j] <= sol.q[n - 1][j] + tol,
                    "not non-increasing in time at ({n}, {j})"
                );
            }
        }
    }

    #[test]
    fn boundary_estimate_tracks_the_integral_equation() {
        let consts = fig2();
        let sol = solve_vi_fd(&consts, (-2.5, 5.0), 200, 200, 0.5).unwrap();
        let grid = solve_boundary(&consts, 200).unwrap();
        let dz = sol.zetas[1] - sol.zetas[0];
        let est = sol.boundary_estimate();
        assert_eq!(est.last().unwrap().1, 1.0);
        for (t, z_fd) in est {
            let z_ref = grid.boundary_at(t).unwrap();
            assert!(z_fd >= consts.z_inf - (consts.z_inf * (dz.exp() - 1.0)), "below z_inf at {t}");
            let gap = (z_fd.ln() - z_ref.ln()).abs();
            assert!(gap <= 2.0 * dz, "boundary gap {gap} at t = {t}");
        }
    }

    #[test]
    fn complementarity_holds_on_the_lattice() {
        let sol = small_solution();
        let rep = complementarity_report(&sol);
        assert!(rep.max_min_form <= 1e-6, "min-form residual {}", rep.max_min_form);
        // Continuation nodes solve the PDE; scaled tolerance.
        assert!(rep.max_continuation_residual <= 1e-6, "{}", rep.max_continuation_residual);
        // Stopped nodes satisfy the inequality branch.
        assert!(rep.min_stopped_residual >= -1e-8, "{}", rep.min_stopped_residual);
    }

    #[test]
    fn rejects_bad_domains_and_grids() {
        let c = fig2();
        assert!(solve_vi_fd(&c, (-0.5, 5.0), 100, 100, 0.5).is_err());
        assert!(solve_vi_fd(&c, (-2.5, 2.0), 100, 100, 0.5).is_err());
        assert!(solve_vi_fd(&c, (-2.5, 5.0), 30, 100, 0.5).is_err());
        assert!(solve_vi_fd(&c, (-2.5, 5.0), 100, 100, 1.5).is_err());
    }

    #[test]
    fn csv_dumps_have_headers() {
        let sol = solve_vi_fd(&fig2(), (-2.5, 5.0), 50, 50, 0.5).unwrap();
        assert!(sol.to_csv().starts_with("t,zeta,Q_hat\n"));
        assert!(sol.boundary_csv().starts_with("t,z_fd\n"));
        assert_eq!(sol.boundary_csv().lines().count(), 52);
    }
}
