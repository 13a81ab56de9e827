//! Exhaustive invariant suites over small fields, shared by the test suite
//! and the `verify` command.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::bounds::{exact_threshold_bound, guaranteed_j, integer_guarantee, upper_bound};
use crate::error::{Error, Result};
use crate::fcomplexity::{family_complexity, BinaryFamily, DEFAULT_CELL_BUDGET};
use crate::gf::{monic_irreducibles, ExtField, PatternCounter, DEFAULT_ENUMERATION_BUDGET};
use crate::legendre_seq::{build_family, legendre_symbol};
use crate::ntheory::{count_irreducibles, count_subfield_elements, divisors, is_prime};

const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Weil,
    Gauss,
    Corollary1,
    Sandwich,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Weil,
        Suite::Gauss,
        Suite::Corollary1,
        Suite::Sandwich,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Weil => "weil",
            Suite::Gauss => "gauss",
            Suite::Corollary1 => "corollary1",
            Suite::Sandwich => "sandwich",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown suite {s:?} (weil | gauss | corollary1 | sandwich)"
                ))
            })
    }
}

/// Outcome of one suite: the number of checks and the first few failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub failures: u64,
    pub failure_samples: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            checks: 0,
            failures: 0,
            failure_samples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.failure_samples.len() < MAX_RECORDED_FAILURES {
                self.failure_samples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} checks, {} failures",
            self.suite.name(),
            self.checks,
            self.failures
        )?;
        for s in &self.failure_samples {
            write!(f, "\n  {s}")?;
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite) -> Result<SuiteReport> {
    match suite {
        Suite::Weil => weil_suite(169, 3, Guarantee::Exact),
        Suite::Gauss => gauss_suite(),
        Suite::Corollary1 => corollary1_suite(1 << 12),
        Suite::Sandwich => sandwich_suite(),
    }
}

/// `(p, k)` with `p` an odd prime and `p^k <= max_order`.
pub fn small_fields(max_order: u64) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for p in (3..=max_order).step_by(2).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut k = 1;
        while q <= max_order {
            out.push((p, k));
            q = q.saturating_mul(p);
            k += 1;
        }
    }
    out
}

/// Calls `visit` with every strictly increasing `j`-tuple drawn from `0..n`.
pub fn for_each_combination(
    n: u64,
    j: usize,
    mut visit: impl FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    if j as u64 > n {
        return Ok(());
    }
    let mut c: Vec<u64> = (0..j as u64).collect();
    loop {
        visit(&c)?;
        let mut i = j;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if c[i] < n - (j - i) as u64 {
                break;
            }
        }
        c[i] += 1;
        for t in i + 1..j {
            c[t] = c[t - 1] + 1;
        }
    }
}

/// Right-hand side of the pattern-count deviation inequality.
pub fn weil_radius(p: u64, k: usize, j: usize) -> f64 {
    let j = j as f64;
    ((j - 2.0) / 2.0 + (-j).exp2()) * (p as f64).powf(k as f64 / 2.0) + j / 2.0
}

/// The smallest pattern count at one `j`, next to `|G_{p,k}|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarginCell {
    pub p: u64,
    pub k: usize,
    pub j: usize,
    pub min_count: u64,
    pub subfield_count: u64,
    /// `j <= guaranteed_j(p, k)`, the integer part of the stated bound.
    pub within_stated: bool,
    /// `j` lies below the exact root of `Bx + x·log2 x = A`.
    pub within_exact: bool,
}

impl MarginCell {
    pub fn holds(&self) -> bool {
        self.min_count > self.subfield_count
    }
}

/// One enumeration pass feeding both the deviation inequality and the
/// subfield-margin comparison.
///
/// For each field of order at most `max_order`, every `j <= max_j`, every
/// position tuple and every sign pattern is checked against
/// `|N - p^k/2^j| <= weil_radius`. Minimal counts are recorded for every `j`
/// up to the larger of the two integer guarantees.
pub fn weil_scan(max_order: u64, max_j: usize) -> Result<(SuiteReport, Vec<MarginCell>)> {
    let mut report = SuiteReport::new(Suite::Weil);
    let mut cells = Vec::new();
    for (p, k) in small_fields(max_order) {
        let field = ExtField::new(p, k)?;
        let counter = PatternCounter::new(&field, DEFAULT_ENUMERATION_BUDGET)?;
        let g = count_subfield_elements(p, k as u64)?
            .to_u64()
            .expect("small field");
        let stated = guaranteed_j(p, k as u64)? as usize;
        let exact = integer_guarantee(exact_threshold_bound(p, k as u64)?, p) as usize;
        let order = field.order() as f64;
        for j in 1..=max_j.max(stated).max(exact).min(p as usize) {
            let radius = weil_radius(p, k, j);
            let expected = order / (1u64 << j) as f64;
            let mut min_count = u64::MAX;
            counter.for_each_histogram(j, |pos, hist| {
                for (mask, &n) in hist.iter().enumerate() {
                    min_count = min_count.min(n);
                    if j <= max_j {
                        let dev = (n as f64 - expected).abs();
                        report.check(dev <= radius + 1e-9, || {
                            format!("p={p} k={k} positions={pos:?} mask={mask:b}: N={n}, |N-p^k/2^j|={dev} > {radius}")
                        });
                    }
                }
                Ok(())
            })?;
            if j <= stated || j <= exact {
                cells.push(MarginCell {
                    p,
                    k,
                    j,
                    min_count,
                    subfield_count: g,
                    within_stated: j <= stated,
                    within_exact: j <= exact,
                });
            }
        }
    }
    Ok((report, cells))
}

/// Which integer guarantee selects the `j` values checked against `|G_{p,k}|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guarantee {
    /// `guaranteed_j`, from the stated bound.
    Stated,
    /// The largest integer below the exact root of `Bx + x·log2 x = A`.
    Exact,
}

/// The deviation inequality, plus `|G_{p,k}| < min N` for every `j` admitted
/// by `guarantee`. With [`Guarantee::Stated`] this fails at `(p, k) = (5, 2)`,
/// `j = 2`, where the minimum count equals `|G|`.
pub fn weil_suite(max_order: u64, max_j: usize, guarantee: Guarantee) -> Result<SuiteReport> {
    let (mut report, cells) = weil_scan(max_order, max_j)?;
    for c in &cells {
        let selected = match guarantee {
            Guarantee::Stated => c.within_stated,
            Guarantee::Exact => c.within_exact,
        };
        if selected {
            report.check(c.holds(), || {
                format!("p={} k={} j={}: min N = {} <= |G| = {}", c.p, c.k, c.j, c.min_count, c.subfield_count)
            });
        }
    }
    Ok(report)
}

/// Gauss's identity, the subfield-count formula against a direct count, and
/// the enumerated number of monic irreducibles against Gauss's formula.
pub fn gauss_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Gauss);
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 25, 27] {
        for n in 1..=12u64 {
            let mut sum = BigUint::default();
            for d in divisors(n)? {
                sum += count_irreducibles(q, d)? * d;
            }
            let ok = sum == BigUint::from(q).pow(n as u32);
            report.check(ok, || format!("q={q} n={n}: sum of d*I_q(d) = {sum}"));
        }
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        let mut order = p;
        let mut k = 1usize;
        while order <= 1 << 12 {
            let enumerated = monic_irreducibles(p, k, DEFAULT_ENUMERATION_BUDGET)?.count() as u64;
            let formula = count_irreducibles(p, k as u64)?
                .to_u64()
                .expect("small count");
            report.check(enumerated == formula, || {
                format!("p={p} k={k}: enumerated {enumerated}, I = {formula}")
            });
            if p != 2 {
                let direct = subfield_elements_directly(p, k)?;
                let formula = count_subfield_elements(p, k as u64)?
                    .to_u64()
                    .expect("small count");
                report.check(direct == formula, || {
                    format!("p={p} k={k}: direct |G| {direct}, formula {formula}")
                });
            }
            order *= p;
            k += 1;
        }
    }
    Ok(report)
}

/// Elements of `F_{p^k}` fixed by the `p^d`-power map for a proper divisor `d` of `k`.
fn subfield_elements_directly(p: u64, k: usize) -> Result<u64> {
    let field = ExtField::new(p, k)?;
    let proper: Vec<usize> = divisors(k as u64)?
        .into_iter()
        .map(|d| d as usize)
        .filter(|&d| d < k)
        .collect();
    Ok(field
        .elements()
        .filter(|a| proper.iter().any(|&d| a.frobenius(d) == *a))
        .count() as u64)
}

/// `quad_char(α)` against the Legendre symbol of `norm(α)` for every nonzero
/// `α` of every odd-characteristic field of order at most `max_order`.
pub fn corollary1_suite(max_order: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Corollary1);
    for (p, k) in small_fields(max_order) {
        let field = ExtField::new(p, k)?;
        for a in field.elements().filter(|a| !a.is_zero()) {
            let chi = a.quad_char();
            let via_norm = legendre_symbol(a.norm() as i64, p)?;
            report.check(chi == via_norm, || {
                format!("F_{p}^{k}: alpha={a} quad_char={chi} (norm/p)={via_norm}")
            });
        }
    }
    Ok(report)
}

/// `guaranteed_j <= Γ <= log2 I_p(k)` against the exact oracle.
pub fn sandwich_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Sandwich);
    for p in [3u64, 5, 7, 11, 13] {
        for k in 1..=2u64 {
            let family = build_family(p, k as usize, DEFAULT_ENUMERATION_BUDGET)?;
            let gamma =
                family_complexity(&BinaryFamily::try_from(&family)?, None, DEFAULT_CELL_BUDGET)?
                    .gamma;
            let lower = guaranteed_j(p, k)?;
            let upper = upper_bound(p, k)?;
            report.check(lower as usize <= gamma, || {
                format!("p={p} k={k}: guaranteed {lower} > Γ {gamma}")
            });
            report.check(gamma as f64 <= upper + 1e-12, || {
                format!("p={p} k={k}: Γ {gamma} > log2 I {upper}")
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nonsense".parse::<Suite>().is_err());
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let mut seen = Vec::new();
        for_each_combination(5, 3, |c| {
            seen.push(c.to_vec());
            Ok(())
        })
        .unwrap();
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[9], vec![2, 3, 4]);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        let mut count = 0;
        for_each_combination(3, 4, |_| {
            count += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(count, 0);
        for_each_combination(4, 0, |c| {
            assert!(c.is_empty());
            count += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(count, 1);
    }

    #[test]
    fn small_fields_listing() {
        let f = small_fields(27);
        assert_eq!(
            f,
            vec![
                (3, 1),
                (3, 2),
                (3, 3),
                (5, 1),
                (5, 2),
                (7, 1),
                (11, 1),
                (13, 1),
                (17, 1),
                (19, 1),
                (23, 1)
            ]
        );
    }

    #[test]
    fn reduced_suites_pass() {
        let w = weil_suite(49, 3, Guarantee::Exact).unwrap();
        assert!(w.passed(), "{w}");
        let (_, cells) = weil_scan(49, 3).unwrap();
        let broken: Vec<_> = cells
            .iter()
            .filter(|c| !c.holds())
            .map(|c| (c.p, c.k, c.j))
            .collect();
        assert_eq!(broken, vec![(5, 2, 2)]);
        assert!(cells.iter().all(|c| c.within_stated || c.holds()));
        let stated = weil_suite(49, 3, Guarantee::Stated).unwrap();
        assert_eq!(stated.failures, 1);
        assert!(corollary1_suite(243).unwrap().passed());
    }

    #[test]
    fn report_display_mentions_failures() {
        let mut r = SuiteReport::new(Suite::Gauss);
        r.check(true, String::new);
        r.check(false, || "broken".into());
        assert!(!r.passed());
        let s = r.to_string();
        assert!(s.starts_with("FAIL gauss: 2 checks, 1 failures"));
        assert!(s.contains("broken"));
    }
}
