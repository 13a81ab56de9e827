//! Principal branch of the Lambert W function.
//!
//! `W(z)` solves `w·e^w = z`. Three entry points are provided:
//! [`w0_real`] for real arguments `x >= -1/e`, [`w0_from_log`] for arguments
//! given by their natural logarithm (so `z = e^L` never has to be formed), and
//! [`w0_complex`] for the complex principal branch.

use std::f64::consts::E;

pub use num_complex::Complex64;

use crate::error::{Error, Result};

/// `-1/e`, the branch point of W.
pub const BRANCH_POINT: f64 = -1.0 / E;

const MAX_ITERATIONS: u32 = 100;
const STEP_TOL: f64 = 4.0 * f64::EPSILON;

/// Outcome of a real principal-branch evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WResult {
    pub value: f64,
    /// `|w·e^w - x| / max(1, |x|)`.
    pub residual: f64,
    pub iterations: u32,
}

/// Real principal branch `W_0(x)` for `x >= -1/e`.
pub fn w0_real(x: f64) -> Result<WResult> {
    if !x.is_finite() {
        return Err(Error::domain(format!(
            "W0 requires a finite argument, got {x}"
        )));
    }
    if x < BRANCH_POINT {
        return Err(Error::domain(format!(
            "W0 has no real value below -1/e (x = {x})"
        )));
    }
    if x == 0.0 {
        return Ok(WResult {
            value: 0.0,
            residual: 0.0,
            iterations: 0,
        });
    }
    if x == BRANCH_POINT {
        return Ok(WResult {
            value: -1.0,
            residual: real_residual(-1.0, x),
            iterations: 0,
        });
    }
    let (value, iterations) = if x > E {
        solve_log_form(x.ln(), initial_log_guess(x.ln()))?
    } else {
        halley_real(x, initial_guess(x))?
    };
    Ok(WResult {
        value,
        residual: real_residual(value, x),
        iterations,
    })
}

/// Principal W evaluated at `e^log_x`.
///
/// For `log_x >= 1` this solves `w + ln w = log_x` directly; smaller values
/// go through [`w0_real`] on the materialised argument.
pub fn w0_from_log(log_x: f64) -> Result<f64> {
    if !log_x.is_finite() {
        return Err(Error::domain(format!(
            "log-argument must be finite, got {log_x}"
        )));
    }
    if log_x < 1.0 {
        return w0_real(log_x.exp()).map(|r| r.value);
    }
    solve_log_form(log_x, initial_log_guess(log_x)).map(|(w, _)| w)
}

/// Principal branch `W_0(z)` over the complex numbers.
///
/// On the negative real axis below `-1/e` the value with positive imaginary
/// part is returned (the cut is approached from above).
pub fn w0_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("complex W0 requires a finite argument"));
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if z.im == 0.0 && z.re >= BRANCH_POINT {
        return w0_real(z.re).map(|r| Complex64::new(r.value, 0.0));
    }
    let mut w = initial_complex_guess(z);
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + one;
        let denom = ew * wp1 - (w + two) * f / (two * wp1);
        let step = f / denom;
        if !(step.re.is_finite() && step.im.is_finite()) {
            break;
        }
        w -= step;
        if step.norm() <= STEP_TOL * w.norm().max(1e-300) {
            break;
        }
    }
    let residual = (w * w.exp() - z).norm();
    if residual > 1e-10 * z.norm().max(1.0) {
        return Err(Error::Numeric(format!(
            "complex W0 did not converge at z = {z} (residual {residual:e})"
        )));
    }
    Ok(w)
}

fn real_residual(w: f64, x: f64) -> f64 {
    if x > 1.0 {
        // relative form avoids forming w·e^w near f64::MAX
        (w.ln() + w - x.ln()).exp_m1().abs()
    } else {
        (w * w.exp() - x).abs()
    }
}

fn initial_guess(x: f64) -> f64 {
    if x < -0.25 {
        // series about the branch point in p = sqrt(2(ex + 1))
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x.abs() < 0.3 {
        x * (1.0 - x * (1.0 - x * (1.5 - x * 8.0 / 3.0)))
    } else {
        // Winitzki's approximation
        let l = x.ln_1p();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    }
}

fn initial_log_guess(log_x: f64) -> f64 {
    let ll = log_x.ln();
    (log_x - ll + ll / log_x).max(0.5)
}

fn halley_real(x: f64, mut w: f64) -> Result<(f64, u32)> {
    let mut prev_step = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            return Ok((w, it));
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        if !step.is_finite() {
            return Ok((w, it));
        }
        let next = (w - step).max(-1.0);
        let moved = (next - w).abs();
        // near -1/e rounding in f can make the iteration cycle at the ulp level
        if moved <= STEP_TOL * next.abs().max(f64::MIN_POSITIVE) || (it > 3 && moved >= prev_step) {
            return Ok((next, it));
        }
        prev_step = moved;
        w = next;
    }
    Err(Error::Numeric(format!(
        "W0({x}) did not converge in {MAX_ITERATIONS} iterations"
    )))
}

// Halley on g(w) = w + ln w - L, which is well conditioned for large L.
fn solve_log_form(log_x: f64, mut w: f64) -> Result<(f64, u32)> {
    for it in 1..=MAX_ITERATIONS {
        let g = w + w.ln() - log_x;
        if g == 0.0 {
            return Ok((w, it));
        }
        let d1 = 1.0 + 1.0 / w;
        let d2 = -1.0 / (w * w);
        let step = (g / d1) / (1.0 - g * d2 / (2.0 * d1 * d1));
        let next = (w - step).max(w * 0.5);
        let done = (next - w).abs() <= STEP_TOL * next.abs();
        w = next;
        if done {
            return Ok((w, it));
        }
    }
    Err(Error::Numeric(format!(
        "W0(exp({log_x})) did not converge in {MAX_ITERATIONS} iterations"
    )))
}

fn initial_complex_guess(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let near_branch = z + Complex64::new(1.0 / E, 0.0);
    if near_branch.norm() < 1.0 {
        let mut p = (2.0 * (E * z + one)).sqrt();
        // approaching the cut from above selects the sheet with Im w >= 0
        if z.im == 0.0 && p.im < 0.0 {
            p = -p;
        }
        return -one + p - p * p / 3.0 + p * p * p * (11.0 / 72.0);
    }
    if z.norm() > 3.0 {
        let l = z.ln();
        return l - l.ln();
    }
    let l = (one + z).ln();
    l * (one - (one + l).ln() / (2.0 + l))
}

/// Solves `x·a^x = b` for `x` via `W(b ln a) / ln a` (requires `a > 1`, `b > 0`).
pub fn solve_x_times_power(a: f64, b: f64) -> Result<f64> {
    if !(a > 1.0 && b > 0.0) {
        return Err(Error::domain("solve_x_times_power needs a > 1 and b > 0"));
    }
    let la = a.ln();
    Ok(w0_real(b * la)?.value / la)
}

/// Solves `4^t = 3t` style equations `a^t = c·t` on the complex principal
/// branch: `t = W(-ln a / c) / (-ln a)`.
pub fn solve_power_equals_linear(a: f64, c: f64) -> Result<Complex64> {
    let la = a.ln();
    let w = w0_complex(Complex64::new(-la / c, 0.0))?;
    Ok(w / (-la))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::LN_2;

    // Independent oracle: bisection on w·e^w - x.
    fn bisect_w(x: f64) -> f64 {
        let (mut lo, mut hi) = (-1.0f64, x.max(1.0));
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if mid * mid.exp() < x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn real_examples() {
        assert_eq!(w0_real(0.0).unwrap().value, 0.0);
        assert!((w0_real(E).unwrap().value - 1.0).abs() <= 1e-15);
        let omega = w0_real(1.0).unwrap().value;
        assert!((omega - 0.567_143_290_409_784).abs() <= 1e-12);
        assert!((omega - bisect_w(1.0)).abs() <= 1e-12);
    }

    #[test]
    fn real_domain_errors() {
        assert!(matches!(w0_real(-0.5), Err(Error::Domain(_))));
        assert!(w0_real(f64::NAN).is_err());
        assert!(w0_real(f64::INFINITY).is_err());
        assert_eq!(w0_real(BRANCH_POINT).unwrap().value, -1.0);
    }

    #[test]
    fn largest_finite_argument() {
        let r = w0_real(f64::MAX).unwrap();
        assert!(r.value.is_finite());
        assert!(r.residual <= 1e-12, "{r:?}");
    }

    #[test]
    fn near_branch_point() {
        let x = BRANCH_POINT + 1e-6;
        let r = w0_real(x).unwrap();
        assert!((r.value - bisect_w(x)).abs() <= 1e-9);
        assert!(r.residual <= 1e-12);
        assert!(r.value >= -1.0);
    }

    #[test]
    fn log_form_examples() {
        assert!((w0_from_log(1.0).unwrap() - 1.0).abs() <= 1e-15);
        let direct = w0_real(10.5).unwrap().value;
        assert!((w0_from_log(10.5f64.ln()).unwrap() - direct).abs() <= 1e-12);
        assert!((direct - 1.776_647_241_310_146_7).abs() <= 1e-12);
        // w + ln w = 1000, reference root 993.0991694723891...
        let w = w0_from_log(1000.0).unwrap();
        assert!((w - 993.099_169_472_389_1).abs() <= 1e-9 * 993.1);
        assert!((w + w.ln() - 1000.0).abs() <= 1e-12);
        assert!(w0_from_log(f64::NAN).is_err());
        assert!(w0_from_log(f64::INFINITY).is_err());
    }

    #[test]
    fn log_form_handles_enormous_arguments() {
        let l = 1e8 * LN_2;
        let w = w0_from_log(l).unwrap();
        assert!(((w + w.ln() - l) / l).abs() <= 1e-15);
    }

    #[test]
    fn complex_examples() {
        let w = w0_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!((w.re - 0.567_143_290_409_784).abs() <= 1e-12 && w.im == 0.0);
        let w = w0_complex(Complex64::new(E, 0.0)).unwrap();
        assert!((w.re - 1.0).abs() <= 1e-14);
        let z = Complex64::new(-(4f64.ln()) / 3.0, 0.0);
        let w = w0_complex(z).unwrap();
        assert!((w.re + 0.847_209_710_207_865).abs() <= 1e-9);
        assert!((w.im - 0.666_789_641_075_179).abs() <= 1e-9);
    }

    #[test]
    fn four_to_the_t_equals_three_t() {
        let t = solve_power_equals_linear(4.0, 3.0).unwrap();
        assert!((t.re - 0.611_132_623_758_349).abs() <= 1e-9);
        assert!((t.im + 0.480_987_054_240_275).abs() <= 1e-9);
        // substitute back: 4^t - 3t = 0
        let lhs = (t * 4f64.ln()).exp() - t * 3.0;
        assert!(lhs.norm() <= 1e-12);
    }

    #[test]
    fn x_times_power_identity() {
        for (a, b) in [(2.0, 3.0), (10.0, 7.0)] {
            let x = solve_x_times_power(a, b).unwrap();
            assert!((x * a.powf(x) - b).abs() <= 1e-12 * b);
        }
    }

    #[test]
    fn complex_grid_converges_on_principal_sheet() {
        for re in (-20..=20).map(|i| i as f64 * 0.75) {
            for im in (-20..=20).map(|i| i as f64 * 0.75) {
                let z = Complex64::new(re, im);
                let w = w0_complex(z).unwrap();
                assert!(
                    (w * w.exp() - z).norm() <= 1e-10 * z.norm().max(1.0),
                    "z={z}"
                );
                assert!(w.im.abs() < std::f64::consts::PI, "z={z} w={w}");
                if im > 0.0 {
                    assert!(w.im >= 0.0, "z={z} w={w}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn defining_identity(e in -300.0f64..300.0) {
            let x = 10f64.powf(e);
            let r = w0_real(x).unwrap();
            prop_assert!((r.value * r.value.exp() - x).abs() <= 1e-12 * x.max(1.0));
        }

        #[test]
        fn negative_arguments(t in 1e-9f64..1.0) {
            let x = BRANCH_POINT * t;
            let r = w0_real(x).unwrap();
            prop_assert!((r.value * r.value.exp() - x).abs() <= 1e-12);
            prop_assert!(r.value >= -1.0);
        }

        #[test]
        fn monotone(a in -0.36f64..50.0, d in 1e-6f64..10.0) {
            prop_assert!(w0_real(a).unwrap().value < w0_real(a + d).unwrap().value);
        }
    }
}
