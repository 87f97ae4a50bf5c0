//! Free-boundary solver.
//!
//! The early-exercise boundary z*(t) of the stopping problem satisfies a
//! Volterra-type integral equation coupling each node to all later ones.
//! It is solved backward in time ("recursive integration"): the terminal
//! value is pinned at 1, and each earlier node is the root of the residual
//! built from the already-solved future nodes, with the time integral
//! discretised by the composite trapezoid rule on the solver's own grid.

use crate::dist::normal_cdf;
use crate::error::{Error, Result};
use crate::model::{d_factors, DerivedConstants};

/// Discretised free boundary on a uniform time grid.
///
/// Immutable once solved; values are strictly increasing with
/// `values[n] = 1` at the horizon and every interior node in
/// `(z_inf, 1)`.
#[derive(Debug, Clone)]
pub struct BoundaryGrid {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub consts: DerivedConstants,
}

/// Knobs for [`solve_boundary_with`]. `richardson` combines the grid with
/// a half-resolution solve for a first-order error cancellation; it is off
/// by default.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub n_steps: usize,
    pub richardson: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { n_steps: 256, richardson: false }
    }
}

/// Trapezoid weight for node `j` of the subgrid `{i, .., n}`.
fn trapezoid_weight(j: usize, i: usize, n: usize, dt: f64) -> f64 {
    if j == i || j == n {
        0.5 * dt
    } else {
        dt
    }
}

/// Residual of the boundary integral equation at node `i` when the
/// boundary there is `candidate` and all later nodes hold solved values.
///
/// The zero-lag endpoint uses the signed-infinity convention of
/// [`d_factors`]; at the node itself the ratio is exactly one, so both
/// CDFs contribute 1/2.
pub fn boundary_residual(grid: &BoundaryGrid, i: usize, candidate: f64) -> Result<f64> {
    let n = grid.times.len() - 1;
    if i > n {
        return Err(Error::DomainViolation { what: format!("boundary_residual: node {i} > {n}") });
    }
    let consts = &grid.consts;
    if !(candidate > consts.z_inf && candidate <= 1.0) {
        return Err(Error::DomainViolation {
            what: format!("boundary_residual: candidate {candidate} outside (z_inf, 1]"),
        });
    }
    if i == n {
        return Ok(0.0);
    }
    let gamma = consts.params.gamma;
    let dt = grid.times[1] - grid.times[0];
    let t_i = grid.times[i];
    let mut int_k = 0.0;
    let mut int_rho = 0.0;
    for j in i..=n {
        let xi = grid.times[j] - t_i;
        let z_star_j = if j == i { candidate } else { grid.values[j] };
        let (d1, dg) = d_factors(xi, candidate / z_star_j, consts)?;
        let w = trapezoid_weight(j, i, n, dt);
        int_k += w * (-consts.k * xi).exp() * normal_cdf(dg);
        int_rho += w * (-consts.rho_hat * xi).exp() * normal_cdf(d1);
    }
    Ok((candidate.powf(1.0 / gamma - 1.0) * int_k - int_rho) / (1.0 - gamma))
}

fn solve_on_grid(consts: &DerivedConstants, n_steps: usize) -> Result<BoundaryGrid> {
    let horizon = consts.params.horizon;
    let dt = horizon / n_steps as f64;
    let times: Vec<f64> = (0..=n_steps).map(|i| i as f64 * dt).collect();
    let mut grid = BoundaryGrid { times, values: vec![1.0; n_steps + 1], consts: *consts };

    let lo_edge = consts.z_inf * (1.0 + 1e-12);
    for i in (0..n_steps).rev() {
        let mut lo = lo_edge;
        let mut hi = 1.0;
        let mut f_lo = boundary_residual(&grid, i, lo)?;
        let f_hi = boundary_residual(&grid, i, hi)?;
        if f_lo == 0.0 {
            grid.values[i] = lo;
            continue;
        }
        if f_lo * f_hi > 0.0 {
            return Err(Error::NoRootInBracket { node: i });
        }
        // Bisection to a 1e-12 bracket; robust even though monotonicity of
        // the residual is not proven.
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            let f_mid = boundary_residual(&grid, i, mid)?;
            if f_mid == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if f_lo * f_mid < 0.0 {
                hi = mid;
            } else {
                lo = mid;
                f_lo = f_mid;
            }
        }
        // Where the true boundary is flatter than the bracket width,
        // neighbouring roots can tie at rounding level; any value inside
        // the final bracket is an equally valid root, so take the one
        // that keeps the grid strictly increasing.
        grid.values[i] = (0.5 * (lo + hi)).min(grid.values[i + 1].next_down());
    }
    Ok(grid)
}

/// Solves the boundary integral equation on `n_steps` uniform intervals.
pub fn solve_boundary(consts: &DerivedConstants, n_steps: usize) -> Result<BoundaryGrid> {
    solve_boundary_with(consts, SolveOptions { n_steps, richardson: false })
}

/// Solve with explicit options.
pub fn solve_boundary_with(consts: &DerivedConstants, opts: SolveOptions) -> Result<BoundaryGrid> {
    if opts.n_steps < 8 {
        return Err(Error::DomainViolation {
            what: format!("solve_boundary: n_steps = {} < 8", opts.n_steps),
        });
    }
    let fine = solve_on_grid(consts, opts.n_steps)?;
    if !opts.richardson || opts.n_steps % 2 != 0 {
        return Ok(fine);
    }
    // First-order Richardson: z = 2 z_fine - z_coarse on the shared nodes,
    // clamped back into the admissible band.
    let coarse = solve_on_grid(consts, opts.n_steps / 2)?;
    let mut values = fine.values.clone();
    for (ci, v) in coarse.values.iter().enumerate() {
        let fi = 2 * ci;
        let extrapolated = 2.0 * fine.values[fi] - v;
        if extrapolated > consts.z_inf && extrapolated <= 1.0 {
            values[fi] = extrapolated;
        }
    }
    // Keep the grid monotone if the extrapolation introduced a wrinkle.
    for i in (0..values.len() - 1).rev() {
        if values[i] >= values[i + 1] {
            values[i] = fine.values[i].min(values[i + 1] * (1.0 - 1e-15));
        }
    }
    Ok(BoundaryGrid { times: fine.times, values, consts: *consts })
}

impl BoundaryGrid {
    /// Interpolated boundary at any `t` in `[0, T]`: linear in
    /// `(t, log z*)`, exact at the nodes, strictly monotone in between.
    pub fn boundary_at(&self, t: f64) -> Result<f64> {
        let horizon = self.consts.params.horizon;
        if !(0.0..=horizon).contains(&t) {
            return Err(Error::DomainViolation {
                what: format!("boundary_at: t = {t} outside [0, {horizon}]"),
            });
        }
        let n = self.times.len() - 1;
        let dt = self.times[1] - self.times[0];
        let pos = t / dt;
        let i = (pos.floor() as usize).min(n - 1);
        let frac = pos - i as f64;
        if frac == 0.0 {
            return Ok(self.values[i]);
        }
        if i + 1 == n && frac == 1.0 {
            return Ok(self.values[n]);
        }
        let log_lo = self.values[i].ln();
        let log_hi = self.values[i + 1].ln();
        Ok((log_lo + frac * (log_hi - log_lo)).exp())
    }

    /// Largest absolute residual of the integral equation over all nodes.
    pub fn max_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for i in 0..self.times.len() - 1 {
            let r = boundary_residual(self, i, self.values[i])?.abs();
            worst = worst.max(r);
        }
        Ok(worst)
    }

    /// CSV serialisation: `t,z_star`, one row per node, 15 significant
    /// digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,z_star\n");
        for (t, z) in self.times.iter().zip(&self.values) {
            out.push_str(&format!("{:.14e},{:.14e}\n", t, z));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{derive_constants, ModelParams};

    fn fig2_consts() -> DerivedConstants {
        derive_constants(&ModelParams::base(0.04)).unwrap()
    }

    #[test]
    fn terminal_node_is_one_and_interior_is_bracketed() {
        let c = fig2_consts();
        let grid = solve_boundary(&c, 64).unwrap();
        assert_eq!(*grid.values.last().unwrap(), 1.0);
        for (i, v) in grid.values.iter().enumerate().take(grid.values.len() - 1) {
            assert!(*v > c.z_inf && *v < 1.0, "node {i} = {v} outside (z_inf, 1)");
        }
    }

    #[test]
    fn boundary_is_strictly_increasing() {
        let grid = solve_boundary(&fig2_consts(), 64).unwrap();
        for w in grid.values.windows(2) {
            assert!(w[0] < w[1], "not strictly increasing: {} >= {}", w[0], w[1]);
        }
    }

    #[test]
    fn solved_nodes_satisfy_the_equation() {
        let grid = solve_boundary(&fig2_consts(), 64).unwrap();
        assert!(grid.max_residual().unwrap() <= 1e-9);
    }

    #[test]
    fn degenerate_terminal_residual_is_zero() {
        let grid = solve_boundary(&fig2_consts(), 16).unwrap();
        let n = grid.times.len() - 1;
        assert_eq!(boundary_residual(&grid, n, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn residual_changes_sign_across_the_band() {
        // Bracketing-scan oracle at the root node.
        let c = fig2_consts();
        let grid = solve_boundary(&c, 64).unwrap();
        let lo = boundary_residual(&grid, 0, c.z_inf * (1.0 + 1e-12)).unwrap();
        let hi = boundary_residual(&grid, 0, 1.0).unwrap();
        assert!(lo * hi < 0.0, "no sign change: {lo} vs {hi}");
    }

    #[test]
    fn rejects_out_of_bracket_candidates() {
        let grid = solve_boundary(&fig2_consts(), 16).unwrap();
        assert!(boundary_residual(&grid, 0, 0.1).is_err());
        assert!(boundary_residual(&grid, 0, 1.5).is_err());
    }

    #[test]
    fn rejects_tiny_grids() {
        assert!(solve_boundary(&fig2_consts(), 4).is_err());
    }

    #[test]
    fn interpolation_is_exact_at_nodes_and_monotone_between() {
        let grid = solve_boundary(&fig2_consts(), 32).unwrap();
        assert_eq!(grid.boundary_at(30.0).unwrap(), 1.0);
        for (i, &t) in grid.times.iter().enumerate() {
            assert_eq!(grid.boundary_at(t).unwrap(), grid.values[i], "node {i}");
        }
        for i in 0..grid.times.len() - 1 {
            let tm = 0.5 * (grid.times[i] + grid.times[i + 1]);
            let v = grid.boundary_at(tm).unwrap();
            assert!(grid.values[i] < v && v < grid.values[i + 1]);
        }
        assert!(grid.boundary_at(-0.1).is_err());
        assert!(grid.boundary_at(30.1).is_err());
    }

    #[test]
    fn grid_refinement_converges_at_t0() {
        let c = fig2_consts();
        let z128 = solve_boundary(&c, 128).unwrap().values[0];
        let z256 = solve_boundary(&c, 256).unwrap().values[0];
        let z512 = solve_boundary(&c, 512).unwrap().values[0];
        let d1 = (z128 - z256).abs();
        let d2 = (z256 - z512).abs();
        assert!(d2 < d1, "no convergence: {d1} then {d2}");
    }

    #[test]
    fn richardson_option_stays_admissible() {
        let c = fig2_consts();
        let plain = solve_boundary(&c, 64).unwrap();
        let rich = solve_boundary_with(&c, SolveOptions { n_steps: 64, richardson: true }).unwrap();
        assert_eq!(*rich.values.last().unwrap(), 1.0);
        for w in rich.values.windows(2) {
            assert!(w[0] < w[1]);
        }
        // Extrapolation should move the deep nodes, not corrupt them.
        assert!((plain.values[0] - rich.values[0]).abs() < 5e-3);
    }

    #[test]
    fn csv_has_header_and_full_precision() {
        let grid = solve_boundary(&fig2_consts(), 16).unwrap();
        let csv = grid.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,z_star");
        assert_eq!(csv.lines().count(), 18);
        let last = csv.lines().last().unwrap();
        assert!(last.starts_with("3.00000000000000e1,1.00000000000000e0"), "{last}");
    }
}
