//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The process fails when any criterion outside `KNOWN_RED` fails, or when a
//! known-red criterion starts passing (the ledger entry must then be revisited).

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fcbound_core::bounds::{
    crossover_prime, guaranteed_j, gyarmati_bound, lemma4_closed_form, theorem1_bound,
    time_gyarmati, time_lambert_bound, upper_bound,
};
use fcbound_core::fcomplexity::{family_complexity, BinaryFamily, DEFAULT_CELL_BUDGET};
use fcbound_core::gf::DEFAULT_ENUMERATION_BUDGET;
use fcbound_core::lambertw::{solve_power_equals_linear, w0_from_log, w0_real, BRANCH_POINT};
use fcbound_core::legendre_seq::build_family;
use fcbound_core::ntheory::{
    count_irreducibles, count_subfield_elements, divisors, is_prime, prev_prime, prime_power,
};
use fcbound_core::verify::{weil_scan, MarginCell};

/// Criterion 8 cannot hold as stated: at `(p, k) = (5, 2)` the stated bound
/// admits `j = 2`, where the smallest pattern count equals `|G|`.
const KNOWN_RED: &[u32] = &[8];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn c1_subfield_formula() -> Outcome {
    let mut bad = Vec::new();
    for q in [2u32, 3, 5] {
        let big = |e: u32| BigUint::from(q).pow(e);
        let expected = big(35) + big(21) + big(15) + big(1) - big(7) - big(5) - big(3);
        if count_subfield_elements(q as u64, 105).unwrap() != expected {
            bad.push(q);
        }
    }
    outcome(
        bad.is_empty(),
        format!("q in {{2,3,5}}, n = 105; mismatches {bad:?}"),
    )
}

fn c2_example() -> Outcome {
    let t = solve_power_equals_linear(4.0, 3.0).unwrap();
    let (re, im) = (0.611_132_623_758_349, -0.480_987_054_240_275);
    let err = (t.re - re).abs().max((t.im - im).abs());
    outcome(
        err <= 1e-9,
        format!("t = {t}, max component error {err:.2e}"),
    )
}

fn c3_crossover() -> Outcome {
    let p = crossover_prime(1, 1 << 40).unwrap();
    let before = prev_prime(p - 1).unwrap();
    let (b_before, _) = gyarmati_bound(before, 1).unwrap();
    let (b_at, _) = gyarmati_bound(p, 1).unwrap();
    outcome(
        p == 2_128_240_847 && b_before <= 0.0 && b_at > 0.0,
        format!("crossover {p}; bound at {before} = {b_before:.4}, at {p} = {b_at:.4}"),
    )
}

fn c4_dominance() -> Outcome {
    let mut bad = Vec::new();
    let mut cells = 0;
    for p in (3..8000u64).filter(|&p| is_prime(p)) {
        for k in [1u64, 10] {
            let t = theorem1_bound(p, k).unwrap();
            let (g, _) = gyarmati_bound(p, k).unwrap();
            cells += 1;
            if t < g - 1e-9 || t <= 0.0 {
                bad.push((p, k));
            }
        }
    }
    for p in [10_000_019u64, 2_128_240_847] {
        for k in 1..=50 {
            let t = theorem1_bound(p, k).unwrap();
            let (g, _) = gyarmati_bound(p, k).unwrap();
            cells += 1;
            if t < g - 1e-9 {
                bad.push((p, k));
            }
        }
    }
    outcome(bad.is_empty(), format!("{cells} cells; violations {bad:?}"))
}

fn c5_lambert_w() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_residual: f64 = 0.0;
    let mut worst_log: f64 = 0.0;
    for i in 0..100_000 {
        let x = match i % 3 {
            0 => rng.gen_range(BRANCH_POINT + 1e-6..=1.0),
            1 => rng.gen_range(BRANCH_POINT + 1e-6..=BRANCH_POINT + 1e-2),
            _ => 10f64.powf(rng.gen_range(0.0..=300.0)),
        };
        let w = w0_real(x).unwrap().value;
        let residual = (w * w.exp() - x).abs() / x.abs().max(1.0);
        worst_residual = worst_residual.max(residual);
        if x > 0.0 {
            let via_log = w0_from_log(x.ln()).unwrap();
            worst_log = worst_log.max((via_log - w).abs() / w);
        }
    }
    outcome(
        worst_residual <= 1e-12 && worst_log <= 1e-11,
        format!("1e5 samples; worst scaled residual {worst_residual:.2e}, worst log-domain gap {worst_log:.2e}"),
    )
}

fn c6_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let a = 10f64.powf(rng.gen_range(-3.0..=12.0));
        let b = rng.gen_range(-10.0..=60.0);
        let x = lemma4_closed_form(a, b).unwrap();
        let r = common::bisect_root(a, b);
        worst = worst.max((x - r).abs() / r);
    }
    outcome(
        worst <= 1e-10,
        format!("1e4 instances; worst relative gap {worst:.2e}"),
    )
}

fn c7_sandwich() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for p in [3u64, 5, 7, 11, 13] {
        for k in 1..=2u64 {
            let fam = build_family(p, k as usize, DEFAULT_ENUMERATION_BUDGET).unwrap();
            let gamma = family_complexity(
                &BinaryFamily::try_from(&fam).unwrap(),
                None,
                DEFAULT_CELL_BUDGET,
            )
            .unwrap()
            .gamma;
            let gj = guaranteed_j(p, k).unwrap();
            let ub = upper_bound(p, k).unwrap();
            ok &= gj as usize <= gamma && gamma as f64 <= ub;
            if (p, k) == (3, 2) {
                ok &= gamma == 1 && (theorem1_bound(3, 2).unwrap() - 1.5147).abs() < 1e-4;
            }
            if (p, k) == (7, 2) {
                ok &= gj == 2 && gamma >= 2;
            }
            lines.push(format!("({p},{k}) {gj}<={gamma}<={ub:.3}"));
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    outcome(ok, format!("{} in {elapsed:.2?}", lines.join(" ")))
}

fn c8_weil() -> Outcome {
    let start = Instant::now();
    let (weil, cells) = weil_scan(169, 3).expect("weil scan");
    let elapsed = start.elapsed();
    let (weil_ok, checks) = (weil.passed(), weil.checks);
    let broken = |pick: fn(&MarginCell) -> bool| -> Vec<String> {
        cells
            .iter()
            .filter(|c| pick(c) && !c.holds())
            .map(|c| {
                format!(
                    "(p={},k={},j={}: min N {} vs |G| {})",
                    c.p, c.k, c.j, c.min_count, c.subfield_count
                )
            })
            .collect()
    };
    let stated = broken(|c| c.within_stated);
    let exact = broken(|c| c.within_exact);
    outcome(
        weil_ok && stated.is_empty() && elapsed < Duration::from_secs(120),
        format!(
            "deviation inequality {} over {checks} counts; subfield margin with the stated guarantee broken at {}, \
             with the exact-root guarantee {}; {elapsed:.2?}",
            if weil_ok { "holds" } else { "FAILS" },
            if stated.is_empty() { "no cell".to_string() } else { stated.join(" ") },
            if exact.is_empty() { "holds everywhere".to_string() } else { format!("broken at {}", exact.join(" ")) },
        ),
    )
}

fn c9_counting() -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for q in (2..=1u64 << 14).filter(|&q| prime_power(q).is_some()) {
        let mut n = 1usize;
        while (q as f64).powi(n as i32) <= (1u64 << 14) as f64 {
            let formula = count_irreducibles(q, n as u64).unwrap().to_u64().unwrap();
            if common::irreducible_count_by_sieve(q, n) != formula {
                bad.push(format!("I_{q}({n})"));
            }
            cases += 1;
            n += 1;
        }
    }
    for q in (2..=9u64).filter(|&q| prime_power(q).is_some()) {
        for n in 1..=12u64 {
            let mut sum = BigUint::default();
            for d in divisors(n).unwrap() {
                sum += count_irreducibles(q, d).unwrap() * d;
            }
            if sum != BigUint::from(q).pow(n as u32) {
                bad.push(format!("gauss q={q} n={n}"));
            }
            cases += 1;
        }
    }
    outcome(
        bad.is_empty(),
        format!("{cases} exact comparisons; mismatches {bad:?}"),
    )
}

fn c10_timing() -> Outcome {
    let p = 2_128_240_847;
    let mut worst_new = Duration::ZERO;
    let mut worst_gy = Duration::ZERO;
    for k in 1..=2000 {
        worst_new = worst_new.max(time_lambert_bound(p, k).unwrap().1);
        worst_gy = worst_gy.max(time_gyarmati(p, k).unwrap().1);
    }
    let limit = Duration::from_millis(100);
    outcome(
        worst_new < limit && worst_gy < limit,
        format!("p = {p}, k = 1..=2000; slowest cell {worst_new:.2?} (Lambert W), {worst_gy:.2?} (Gyarmati)"),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut run = |id: u32, name: &'static str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = f();
        eprintln!("  criterion {id} finished in {:.2?}", start.elapsed());
        results.push((id, name, o));
    };
    run(1, "subfield-count formula", &c1_subfield_formula);
    run(2, "complex W example", &c2_example);
    run(3, "crossover prime", &c3_crossover);
    run(4, "dominance grid", &c4_dominance);
    run(5, "Lambert W identity suite", &c5_lambert_w);
    run(6, "closed form vs bisection", &c6_closed_form);
    run(7, "oracle sandwich", &c7_sandwich);
    run(8, "pattern-count enumeration", &c8_weil);
    run(9, "counting cross-checks", &c9_counting);
    run(10, "timing sanity", &c10_timing);

    let p72 = theorem1_bound(7, 2).unwrap();
    let exact72 = fcbound_core::bounds::exact_threshold_bound(7, 2).unwrap();
    let notes = [format!(
        "stated bound at (7,2) = {p72:.6}; exact root gives {exact72:.6}"
    )];

    let mut unexpected = 0;
    for (id, name, o) in &results {
        let known = KNOWN_RED.contains(id);
        let tag = match (o.passed, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (expected FAIL)",
        };
        if o.passed == known {
            unexpected += 1;
        }
        println!("criterion {id:>2} {tag:<12} {name}: {}", o.detail);
    }
    for n in notes {
        println!("note: {n}");
    }
    let passed = results.iter().filter(|r| r.2.passed).count();
    println!(
        "{passed}/{} criteria pass; known red: {KNOWN_RED:?}",
        results.len()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
