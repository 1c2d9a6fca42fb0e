//! Adaptive Simpson quadrature.

use crate::error::{CoreError, Result};

const MAX_DEPTH: usize = 48;

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(CoreError::Domain("non-finite quadrature interval".into()));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(CoreError::Convergence {
            iterations: MAX_DEPTH,
            residual: delta.abs(),
        });
    }
    let hl = recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let hr = recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(hl + hr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn integrates_smooth_functions() {
        let v = adaptive_simpson(&|x: f64| (PI * x).sin(), 0.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(v, 2.0 / PI, epsilon = 1e-11);
    }

    #[test]
    fn handles_kinked_integrands() {
        // |sin(pi x)| over a full period
        let v = adaptive_simpson(&|x: f64| (PI * x).sin().abs(), 0.0, 2.0, 1e-10).unwrap();
        assert_abs_diff_eq!(v, 4.0 / PI, epsilon = 1e-8);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(adaptive_simpson(&|x: f64| x, 0.3, 0.3, 1e-10).unwrap(), 0.0);
    }
}
