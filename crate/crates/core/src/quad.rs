//! Adaptive Simpson quadrature.

use crate::error::Result;

const MAX_DEPTH: u32 = 40;
const INITIAL_PANELS: usize = 8;

/// Integrates `f` over `[a, b]` until the local Simpson estimates of each
/// panel agree to within `eps` (absolute, shared across panels).
pub fn adaptive_simpson<F>(mut f: F, a: f64, b: f64, eps: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let width = (b - a) / INITIAL_PANELS as f64;
    let panel_eps = eps / INITIAL_PANELS as f64;
    let mut total = 0.0;
    let mut fa = f(a)?;
    for i in 0..INITIAL_PANELS {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == INITIAL_PANELS { b } else { lo + width };
        let mid = 0.5 * (lo + hi);
        let (fm, fb) = (f(mid)?, f(hi)?);
        let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += refine(&mut f, lo, hi, fa, fm, fb, whole, panel_eps, MAX_DEPTH)?;
        fa = fb;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(f: &mut F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // below this the difference is round-off, not truncation
    let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if depth == 0 || delta.abs() <= 15.0 * eps.max(floor) {
        return Ok(left + right + delta / 15.0);
    }
    Ok(refine(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)?
        + refine(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomials_and_transcendentals() {
        let v = adaptive_simpson(|x| Ok(3.0 * (x * x + 2.0)), 0.0, 1.0, 1e-12).unwrap();
        assert_relative_eq!(v, 7.0, max_relative = 1e-14);
        let v = adaptive_simpson(|x: f64| Ok(x.sin()), 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert_relative_eq!(v, 2.0, max_relative = 1e-11);
        let v = adaptive_simpson(|x: f64| Ok((-x * x).exp()), -6.0, 6.0, 1e-13).unwrap();
        assert_relative_eq!(v, std::f64::consts::PI.sqrt(), max_relative = 1e-11);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(adaptive_simpson(|_| Ok(1.0), 2.0, 2.0, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn tiny_tolerance_terminates() {
        let mut calls = 0usize;
        let v = adaptive_simpson(
            |x: f64| {
                calls += 1;
                Ok(x.cos())
            },
            0.0,
            1.0,
            1e-300,
        )
        .unwrap();
        assert_relative_eq!(v, 1f64.sin(), max_relative = 1e-14);
        assert!(calls < 100_000, "{calls}");
    }
}
