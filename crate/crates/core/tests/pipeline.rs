mod common;

use fcbound_core::bounds::{
    exact_threshold_bound, gyarmati_bound, integer_guarantee, lemma4_closed_form, theorem1_bound,
    BoundReport,
};
use fcbound_core::fcomplexity::{family_complexity, BinaryFamily, DEFAULT_CELL_BUDGET};
use fcbound_core::gf::{monic_irreducibles, DEFAULT_ENUMERATION_BUDGET};
use fcbound_core::legendre_seq::build_family;
use fcbound_core::ntheory::{count_irreducibles, is_prime};
use fcbound_core::verify::{run_suite, Suite};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const PRIMES: [u64; 10] = [3, 5, 7, 11, 101, 7919, 65_537, 10_000_019, 2_128_240_847, 4_294_967_291];

#[test]
fn exact_complexity_respects_both_guarantees() {
    for p in [3u64, 5, 7, 11, 13] {
        for k in 1..=2u64 {
            let fam = build_family(p, k as usize, DEFAULT_ENUMERATION_BUDGET).unwrap();
            let bin = BinaryFamily::try_from(&fam).unwrap();
            let gamma = family_complexity(&bin, None, DEFAULT_CELL_BUDGET).unwrap().gamma;
            let report = BoundReport::compute(p, k).unwrap();
            assert!(report.guaranteed_j as usize <= gamma, "p={p} k={k}");
            assert!(integer_guarantee(report.exact_threshold, p) as usize <= gamma);
            if report.gyarmati_bound > 0.0 {
                assert!(gamma as f64 >= report.gyarmati_bound.ceil());
            }
            assert!(gamma as f64 <= report.upper_bound);
        }
    }
}

#[test]
fn irreducible_counts_agree_with_the_sieve_oracle() {
    for (q, n) in [(2u64, 6usize), (3, 4), (4, 3), (8, 2), (9, 3), (5, 3), (16, 2)] {
        let expected = count_irreducibles(q, n as u64).unwrap().to_u64().unwrap();
        assert_eq!(common::irreducible_count_by_sieve(q, n), expected, "q={q} n={n}");
        if is_prime(q) {
            let enumerated = monic_irreducibles(q, n, DEFAULT_ENUMERATION_BUDGET).unwrap().count();
            assert_eq!(enumerated as u64, expected);
        }
    }
}

#[test]
fn corollary1_and_sandwich_suites_pass() {
    for suite in [Suite::Corollary1, Suite::Sandwich] {
        let r = run_suite(suite).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks > 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn report_invariants(i in 0usize..PRIMES.len(), k in 1u64..400) {
        let p = PRIMES[i];
        let r = BoundReport::compute(p, k).unwrap();
        prop_assert!(r.new_bound.is_finite());
        prop_assert!(r.guaranteed_j <= p);
        prop_assert!(r.guaranteed_j as f64 <= r.upper_bound.floor());
        prop_assert!(r.exact_threshold < r.new_bound);
        prop_assert!(r.gyarmati_c == 0.5 || r.gyarmati_c == 2.5);
        prop_assert!(r.gyarmati_bound <= p as f64);
    }

    #[test]
    fn bounds_grow_with_the_degree(i in 0usize..PRIMES.len(), k in 1u64..300) {
        let p = PRIMES[i];
        prop_assert!(theorem1_bound(p, k + 1).unwrap() > theorem1_bound(p, k).unwrap());
        prop_assert!(exact_threshold_bound(p, k + 1).unwrap() > exact_threshold_bound(p, k).unwrap());
        let (g0, c0) = gyarmati_bound(p, k).unwrap();
        let (g1, c1) = gyarmati_bound(p, k + 1).unwrap();
        if c0 == c1 {
            prop_assert!(g1 >= g0);
        }
    }

    #[test]
    fn closed_form_matches_bisection(log_a in -3.0f64..15.0, b in -20.0f64..80.0) {
        let a = 10f64.powf(log_a);
        let x = lemma4_closed_form(a, b).unwrap();
        let r = common::bisect_root(a, b);
        prop_assert!((x - r).abs() <= 1e-10 * r, "A={} B={} x={} r={}", a, b, x, r);
    }
}
