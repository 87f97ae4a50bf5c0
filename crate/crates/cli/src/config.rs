//! Flat key=value run configuration.
//!
//! Every knob is a scalar, settable from a config file (`key = value`
//! lines, `#` comments) and overridable with repeated `--set key=value`
//! flags. The canonical serialisation of the full configuration is hashed
//! into every output file for provenance.

use licom::model::ModelParams;
use licom::verify::VerifyConfig;

#[derive(Debug, Clone)]
pub struct RunConfig {
    // Economic primitives.
    pub rho: f64,
    pub r: f64,
    pub mu: f64,
    pub sigma: f64,
    pub gamma: f64,
    pub horizon: f64,
    pub y0: f64,
    pub w0: f64,
    // Solver knobs.
    pub boundary_steps: usize,
    pub long_horizon_steps: usize,
    pub quad_tol: f64,
    pub tail_tol: f64,
    pub fd_time_steps: usize,
    pub fd_space_steps: usize,
    pub fd_zeta_min: f64,
    pub fd_zeta_max: f64,
    pub fd_theta: f64,
    // Simulation knobs.
    pub sim_steps: usize,
    pub paths: usize,
    pub dump_paths: usize,
    pub invariant_paths: usize,
    pub check_points: usize,
    pub seed: u64,
    // Value-surface lattice.
    pub value_time_steps: usize,
    pub value_z_min: f64,
    pub value_z_max: f64,
    pub value_z_steps: usize,
    // Output directory.
    pub out_dir: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            rho: 0.04,
            r: 0.04,
            mu: 0.02,
            sigma: 0.1,
            gamma: 3.0,
            horizon: 30.0,
            y0: 1.0,
            w0: -5.0,
            boundary_steps: 256,
            long_horizon_steps: 2048,
            quad_tol: 1e-9,
            tail_tol: 1e-9,
            fd_time_steps: 400,
            fd_space_steps: 400,
            fd_zeta_min: -2.5,
            fd_zeta_max: 5.0,
            fd_theta: 0.5,
            sim_steps: 600,
            paths: 100_000,
            dump_paths: 4,
            invariant_paths: 1000,
            check_points: 20,
            seed: 42,
            value_time_steps: 30,
            value_z_min: 0.05,
            value_z_max: 5.0,
            value_z_steps: 100,
            out_dir: "out".into(),
        }
    }
}

impl RunConfig {
    pub fn model_params(&self) -> ModelParams {
        ModelParams {
            rho: self.rho,
            r: self.r,
            mu: self.mu,
            sigma: self.sigma,
            gamma: self.gamma,
            horizon: self.horizon,
            y0: self.y0,
            w0: self.w0,
        }
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            boundary_steps: self.boundary_steps,
            long_horizon_steps: self.long_horizon_steps,
            fd_time_steps: self.fd_time_steps,
            fd_space_steps: self.fd_space_steps,
            fd_zeta_min: self.fd_zeta_min,
            fd_zeta_max: self.fd_zeta_max,
            fd_theta: self.fd_theta,
            mc_paths: self.paths,
            mc_steps: self.sim_steps,
            invariant_paths: self.invariant_paths,
            check_points: self.check_points,
            seed: self.seed,
            quad_tol: self.quad_tol,
            tail_tol: self.tail_tol,
        }
    }

    /// Applies one `key=value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn f(value: &str, key: &str) -> Result<f64, String> {
            value.parse().map_err(|_| format!("{key}: expected a number, got {value:?}"))
        }
        fn n(value: &str, key: &str) -> Result<usize, String> {
            value.parse().map_err(|_| format!("{key}: expected an integer, got {value:?}"))
        }
        match key {
            "rho" => self.rho = f(value, key)?,
            "r" => self.r = f(value, key)?,
            "mu" => self.mu = f(value, key)?,
            "sigma" => self.sigma = f(value, key)?,
            "gamma" => self.gamma = f(value, key)?,
            "horizon" => self.horizon = f(value, key)?,
            "y0" => self.y0 = f(value, key)?,
            "w0" => self.w0 = f(value, key)?,
            "boundary_steps" => self.boundary_steps = n(value, key)?,
            "long_horizon_steps" => self.long_horizon_steps = n(value, key)?,
            "quad_tol" => self.quad_tol = f(value, key)?,
            "tail_tol" => self.tail_tol = f(value, key)?,
            "fd_time_steps" => self.fd_time_steps = n(value, key)?,
            "fd_space_steps" => self.fd_space_steps = n(value, key)?,
            "fd_zeta_min" => self.fd_zeta_min = f(value, key)?,
            "fd_zeta_max" => self.fd_zeta_max = f(value, key)?,
            "fd_theta" => self.fd_theta = f(value, key)?,
            "sim_steps" => self.sim_steps = n(value, key)?,
            "paths" => self.paths = n(value, key)?,
            "dump_paths" => self.dump_paths = n(value, key)?,
            "invariant_paths" => self.invariant_paths = n(value, key)?,
            "check_points" => self.check_points = n(value, key)?,
            "seed" => {
                self.seed = value.parse().map_err(|_| format!("seed: bad integer {value:?}"))?
            }
            "value_time_steps" => self.value_time_steps = n(value, key)?,
            "value_z_min" => self.value_z_min = f(value, key)?,
            "value_z_max" => self.value_z_max = f(value, key)?,
            "value_z_steps" => self.value_z_steps = n(value, key)?,
            "out_dir" => self.out_dir = value.to_string(),
            _ => return Err(format!("unknown configuration key {key:?}")),
        }
        Ok(())
    }

    /// Loads `key = value` lines from a file over the current values.
    pub fn load_file(&mut self, path: &str) -> Result<(), String> {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("{path}:{}: expected key=value", lineno + 1))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| format!("{path}:{}: {e}", lineno + 1))?;
        }
        Ok(())
    }

    /// Canonical sorted serialisation used for hashing and provenance.
    pub fn canonical(&self) -> String {
        let mut lines = vec![
            format!("boundary_steps={}", self.boundary_steps),
            format!("dump_paths={}", self.dump_paths),
            format!("fd_space_steps={}", self.fd_space_steps),
            format!("fd_theta={}", self.fd_theta),
            format!("fd_time_steps={}", self.fd_time_steps),
            format!("fd_zeta_max={}", self.fd_zeta_max),
            format!("fd_zeta_min={}", self.fd_zeta_min),
            format!("gamma={}", self.gamma),
            format!("horizon={}", self.horizon),
            format!("check_points={}", self.check_points),
            format!("invariant_paths={}", self.invariant_paths),
            format!("long_horizon_steps={}", self.long_horizon_steps),
            format!("mu={}", self.mu),
            format!("paths={}", self.paths),
            format!("quad_tol={}", self.quad_tol),
            format!("r={}", self.r),
            format!("rho={}", self.rho),
            format!("seed={}", self.seed),
            format!("sigma={}", self.sigma),
            format!("sim_steps={}", self.sim_steps),
            format!("tail_tol={}", self.tail_tol),
            format!("value_time_steps={}", self.value_time_steps),
            format!("value_z_max={}", self.value_z_max),
            format!("value_z_min={}", self.value_z_min),
            format!("value_z_steps={}", self.value_z_steps),
            format!("w0={}", self.w0),
            format!("y0={}", self.y0),
        ];
        lines.sort();
        lines.join("\n")
    }

    /// FNV-1a hash of the canonical serialisation, as fixed-width hex.
    pub fn hash(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in self.canonical().bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{h:016x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_and_hash_are_stable() {
        let mut a = RunConfig::default();
        let b = RunConfig::default();
        assert_eq!(a.hash(), b.hash());
        a.set("rho", "0.07").unwrap();
        assert_ne!(a.hash(), b.hash());
        assert!(a.set("nonsense", "1").is_err());
        assert!(a.set("paths", "many").is_err());
    }

    #[test]
    fn file_parsing_accepts_comments_and_spaces() {
        let dir = std::env::temp_dir().join("licom-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.txt");
        std::fs::write(&path, "# comment\nrho = 0.07\nseed=9 # trailing\n\n").unwrap();
        let mut cfg = RunConfig::default();
        cfg.load_file(path.to_str().unwrap()).unwrap();
        assert_eq!(cfg.rho, 0.07);
        assert_eq!(cfg.seed, 9);
    }
}
