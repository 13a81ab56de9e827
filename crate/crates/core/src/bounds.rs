//! Lower and upper bounds on `Γ(F_irred(k, p))`.
//!
//! With `s = p^{k/2}`, `A = (2s - 2)/(1 + 1/s)` and
//! `B = (2|G_{p,k}|/s - 2)/(1 + 1/s)`, the Lambert-W bound is
//! `log2(A / W(2^B·A))`. `A` overflows `f64` for moderate `k`, so everything is
//! carried as base-2 logarithms and W is evaluated from `ln(2^B·A)`.
//!
//! The pattern-count argument behind the bound reduces to the inequality
//! `B·2^j + j·2^j >= A`, i.e. to the positive root of `Bx + x·log2 x = A`.
//! That root is `A·ln2 / W(2^B·A·ln2)` ([`lemma4_closed_form`]); the bound as
//! stated drops both `ln 2` factors and is slightly larger. Both are reported:
//! [`theorem1_bound`] is the stated value, [`exact_threshold_bound`] the
//! log2 of the exact root.

use std::f64::consts::LN_2;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::lambertw::w0_from_log;
use crate::ntheory::{count_irreducibles, count_subfield_elements, is_prime, log2_of_big};

/// A positive real stored as its base-2 logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogMagnitude(f64);

impl LogMagnitude {
    pub fn from_log2(log2: f64) -> Self {
        Self(log2)
    }

    pub fn from_value(x: f64) -> Result<Self> {
        if x > 0.0 && x.is_finite() {
            Ok(Self(x.log2()))
        } else {
            Err(Error::domain(format!("{x} is not a positive finite value")))
        }
    }

    pub fn log2(self) -> f64 {
        self.0
    }

    pub fn ln(self) -> f64 {
        self.0 * LN_2
    }

    /// `2^log2`; infinite when the magnitude exceeds `f64::MAX`.
    pub fn value(self) -> f64 {
        self.0.exp2()
    }
}

fn check_params(p: u64, k: u64) -> Result<()> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::domain("p must be an odd prime"));
    }
    if k == 0 {
        return Err(Error::domain("k must be a positive integer"));
    }
    Ok(())
}

/// `A` (as a logarithm) and `B` for the pair `(p, k)`.
pub fn compute_a_b(p: u64, k: u64) -> Result<(LogMagnitude, f64)> {
    check_params(p, k)?;
    let half = 0.5 * k as f64 * (p as f64).log2();
    // u = p^{-k/2}; underflows harmlessly to 0
    let u = (-half).exp2();
    let log2_a = 1.0 + half + ((-u).ln_1p() - u.ln_1p()) / LN_2;
    let g = count_subfield_elements(p, k)?;
    let r = if g.bits() == 0 {
        0.0
    } else {
        (log2_of_big(&g)? - half).exp2()
    };
    let b = (2.0 * r - 2.0) / (1.0 + u);
    Ok((LogMagnitude(log2_a), b))
}

/// `A / W(2^B·A)` for arbitrary-size `A`, returned as a logarithm.
pub fn lambert_quotient(a: LogMagnitude, b: f64) -> Result<LogMagnitude> {
    if !(a.0.is_finite() && b.is_finite()) {
        return Err(Error::domain("A and B must be finite"));
    }
    let w = w0_from_log(LN_2 * (b + a.0))?;
    Ok(LogMagnitude(a.0 - w.log2()))
}

/// `log2(A / W(2^B·A))`.
pub fn theorem1_bound(p: u64, k: u64) -> Result<f64> {
    let (a, b) = compute_a_b(p, k)?;
    Ok(lambert_quotient(a, b)?.log2())
}

/// The same value, read as a bound for the family of all squarefree
/// polynomials of degree at most `K`, which contains `F_irred(K, p)`.
pub fn corollary2_bound(p: u64, big_k: u64) -> Result<f64> {
    theorem1_bound(p, big_k)
}

/// log2 of the positive root of `Bx + x·log2 x = A`.
pub fn exact_threshold_bound(p: u64, k: u64) -> Result<f64> {
    let (a, b) = compute_a_b(p, k)?;
    Ok(lambert_quotient(LogMagnitude(a.0 + LN_2.log2()), b)?.log2())
}

/// Positive root of `Bx + x·log2 x = A`, via `x = A·ln2 / W(2^B·A·ln2)`.
pub fn lemma4_closed_form(a: f64, b: f64) -> Result<f64> {
    let a = LogMagnitude::from_value(a)?;
    Ok(lambert_quotient(LogMagnitude(a.0 + LN_2.log2()), b)?.value())
}

/// `A / W(2^B·A)` for plain floating-point `A`.
pub fn stated_closed_form(a: f64, b: f64) -> Result<f64> {
    Ok(lambert_quotient(LogMagnitude::from_value(a)?, b)?.value())
}

/// Largest integer strictly below `bound`, clamped to `[0, p]`.
pub fn integer_guarantee(bound: f64, p: u64) -> u64 {
    if bound.is_nan() || bound <= 1.0 {
        return 0;
    }
    let j = bound.ceil() - 1.0;
    if j >= p as f64 {
        p
    } else {
        j as u64
    }
}

/// Integer lower bound on `Γ` delivered by [`theorem1_bound`].
pub fn guaranteed_j(p: u64, k: u64) -> Result<u64> {
    Ok(integer_guarantee(theorem1_bound(p, k)?, p))
}

/// `p^{1/4} / (10 ln p)`, the degree threshold selecting `c` in Gyarmati's bound.
pub fn gyarmati_threshold(p: u64) -> f64 {
    let pf = p as f64;
    pf.powf(0.25) / (10.0 * pf.ln())
}

/// Gyarmati's bound `min{p, (k - c)/(2 log 2) · log p}` and the chosen `c`.
pub fn gyarmati_bound(p: u64, k: u64) -> Result<(f64, f64)> {
    check_params(p, k)?;
    let c = if k as f64 <= gyarmati_threshold(p) {
        0.5
    } else {
        2.5
    };
    let bound = ((k as f64 - c) / 2.0 * (p as f64).log2()).min(p as f64);
    Ok((bound, c))
}

/// `log2 |F_irred(k, p)| = log2 I_p(k)`, from `2^Γ <= |F|`.
pub fn upper_bound(p: u64, k: u64) -> Result<f64> {
    check_params(p, k)?;
    log2_of_big(&count_irreducibles(p, k)?)
}

/// Smallest odd prime `p <= p_limit` with a positive Gyarmati bound for `k`.
///
/// The bound is positive iff `k > c`. That holds at once for `k >= 3`; for
/// `k <= 2` it needs `c = 1/2`, i.e. `k <= p^{1/4}/(10 ln p)`, whose right side
/// decreases up to `p = e^4` and increases afterwards. Past a short linear
/// prefix the first crossing is located by bisection and confirmed by a
/// prime scan.
pub fn crossover_prime(k: u64, p_limit: u64) -> Result<u64> {
    const PREFIX: u64 = 1000;
    if k == 0 {
        return Err(Error::domain("k must be a positive integer"));
    }
    let positive = |p: u64| gyarmati_bound(p, k).map(|(b, _)| b > 0.0);
    let not_found = || {
        Error::domain(format!(
            "no odd prime <= {p_limit} gives a positive bound for k = {k}"
        ))
    };
    for p in (3..=p_limit.min(PREFIX)).step_by(2) {
        if is_prime(p) && positive(p)? {
            return Ok(p);
        }
    }
    if p_limit <= PREFIX {
        return Err(not_found());
    }
    let reached = |n: u64| k as f64 <= gyarmati_threshold(n);
    if !reached(p_limit) {
        return Err(not_found());
    }
    let (mut lo, mut hi) = (PREFIX, p_limit);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if reached(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // guard against rounding wobble right at the crossing
    let mut start = hi;
    while start > PREFIX && reached(start - 1) {
        start -= 1;
    }
    let mut p = start | 1;
    while p <= p_limit {
        if is_prime(p) && positive(p)? {
            return Ok(p);
        }
        p += 2;
    }
    Err(not_found())
}

/// Everything known about one `(p, k)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub p: u64,
    pub k: u64,
    pub a_log2: LogMagnitude,
    pub b: f64,
    pub new_bound: f64,
    pub guaranteed_j: u64,
    /// log2 of the exact root of `Bx + x·log2 x = A`.
    pub exact_threshold: f64,
    pub gyarmati_bound: f64,
    pub gyarmati_c: f64,
    pub upper_bound: f64,
    pub eval_time_new: Duration,
    pub eval_time_gyarmati: Duration,
}

impl BoundReport {
    /// All fields except the timings, which are left at zero.
    pub fn compute(p: u64, k: u64) -> Result<Self> {
        let (a, b) = compute_a_b(p, k)?;
        let new_bound = lambert_quotient(a, b)?.log2();
        let exact_threshold = lambert_quotient(LogMagnitude(a.0 + LN_2.log2()), b)?.log2();
        let (gyarmati_bound, gyarmati_c) = gyarmati_bound(p, k)?;
        Ok(Self {
            p,
            k,
            a_log2: a,
            b,
            new_bound,
            guaranteed_j: integer_guarantee(new_bound, p),
            exact_threshold,
            gyarmati_bound,
            gyarmati_c,
            upper_bound: upper_bound(p, k)?,
            eval_time_new: Duration::ZERO,
            eval_time_gyarmati: Duration::ZERO,
        })
    }

    /// Like [`Self::compute`], also timing a from-scratch evaluation of each bound.
    pub fn compute_timed(p: u64, k: u64) -> Result<Self> {
        let mut report = Self::compute(p, k)?;
        let (_, t_new) = time_lambert_bound(p, k)?;
        let (_, t_gy) = time_gyarmati(p, k)?;
        report.eval_time_new = t_new;
        report.eval_time_gyarmati = t_gy;
        Ok(report)
    }
}

/// One timed evaluation of [`theorem1_bound`], including the subfield count.
pub fn time_lambert_bound(p: u64, k: u64) -> Result<(f64, Duration)> {
    let start = Instant::now();
    let v = theorem1_bound(p, k)?;
    Ok((v, start.elapsed()))
}

/// One timed evaluation of [`gyarmati_bound`].
pub fn time_gyarmati(p: u64, k: u64) -> Result<(f64, Duration)> {
    let start = Instant::now();
    let (v, _) = gyarmati_bound(p, k)?;
    Ok((v, start.elapsed()))
}
