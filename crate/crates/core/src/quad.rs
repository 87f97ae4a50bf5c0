//! Adaptive Simpson quadrature and a doubling scheme for improper integrals.

use crate::error::{Error, Result};

/// Maximum recursion depth of the adaptive subdivision. Hitting the cap
/// returns the current best estimate for that panel.
const MAX_DEPTH: u32 = 28;

/// Panels may not be accepted before this depth. A three-point Simpson
/// probe of a wide panel can match its refinement by coincidence (an
/// inflection straddle) while carrying an error far above the tolerance;
/// forcing a few subdivisions first makes that failure mode implausible.
const MIN_DEPTH: u32 = 3;

/// Number of equal panels the interval is pre-split into before the
/// adaptive recursion starts. Guards against a deceptively smooth-looking
/// three-point sample across a localised feature.
const INITIAL_PANELS: usize = 8;

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    (fa + 4.0 * fm + fb) * h / 6.0
}

fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    // Stop on convergence, on NaN (nothing to gain from splitting), at the
    // depth cap, or once the panel is too narrow for the split to change
    // anything.
    if (depth >= MIN_DEPTH && !(delta.abs() > 15.0 * tol))
        || depth >= MAX_DEPTH
        || b - a < 1e-13 * (1.0 + a.abs() + b.abs())
    {
        // Richardson extrapolation of the composite estimate.
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
}

/// Adaptive Simpson integral of `f` over `[a, b]` with absolute tolerance
/// `tol`. The integrand must be finite at both endpoints.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let width = b - a;
    let mut total = 0.0;
    let panel_tol = tol / INITIAL_PANELS as f64;
    for i in 0..INITIAL_PANELS {
        let pa = a + width * i as f64 / INITIAL_PANELS as f64;
        let pb = a + width * (i + 1) as f64 / INITIAL_PANELS as f64;
        let pm = 0.5 * (pa + pb);
        let fa = f(pa);
        let fm = f(pm);
        let fb = f(pb);
        let whole = simpson(fa, fm, fb, pb - pa);
        total += adapt(&f, pa, pb, fa, fm, fb, whole, panel_tol, 0);
    }
    total
}

/// Integral of `f` over `[a, +inf)` by doubling segments.
///
/// Segments `[u, 2u]` are appended until one contributes less than
/// `tail_tol` in absolute value, at which point the remainder is dropped.
/// If that has not happened by `u_cap` the tail is declared non-convergent.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    seg_tol: f64,
    tail_tol: f64,
    u_cap: f64,
) -> Result<f64> {
    assert!(a > 0.0, "doubling scheme needs a positive left endpoint");
    let mut total = 0.0;
    let mut lo = a;
    let mut hi = 2.0 * a;
    loop {
        let seg = integrate(&f, lo, hi, seg_tol);
        total += seg;
        if seg.abs() < tail_tol {
            return Ok(total);
        }
        if hi >= u_cap {
            return Err(Error::TailNotConverged { u_max: hi });
        }
        lo = hi;
        hi = (2.0 * hi).min(u_cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        // Simpson is exact for cubics; the adaptive wrapper must be too.
        let v = integrate(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12);
        let exact = (81.0 / 4.0 - 1.0 / 4.0) - (9.0 - 1.0) + 4.0;
        assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
    }

    #[test]
    fn oscillatory_integrand() {
        let v = integrate(|x: f64| (10.0 * x).sin(), 0.0, 1.0, 1e-12);
        let exact = (1.0 - (10.0f64).cos()) / 10.0;
        assert!((v - exact).abs() < 1e-11, "{v} vs {exact}");
    }

    #[test]
    fn sqrt_singularity_in_derivative() {
        // f(x) = sqrt(x) has an unbounded derivative at 0 but finite values.
        let v = integrate(|x: f64| x.sqrt(), 0.0, 1.0, 1e-10);
        assert!((v - 2.0 / 3.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn improper_exponential_tail() {
        let v = integrate_to_infinity(|x: f64| (-x).exp(), 1.0, 1e-12, 1e-12, 1e9).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-10, "{v}");
    }

    #[test]
    fn improper_slow_tail_errors_at_cap() {
        // 1/x^1.1 converges but far too slowly for the cap.
        let err = integrate_to_infinity(|x: f64| x.powf(-1.1), 1.0, 1e-10, 1e-10, 1e4);
        assert_eq!(err.unwrap_err().code(), "TAIL_NOT_CONVERGED");
    }
}
