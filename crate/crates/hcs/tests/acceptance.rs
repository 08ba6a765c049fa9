//! Release acceptance: one test per shipping criterion. Each test
//! prints a single `criterion N: PASS` line on success and enforces its
//! wall-clock budget; a failed assertion is the fail line.

use std::process::{Command, Output};
use std::time::Instant;

use hcs::constructor::{construct, BaseCycleSet, Construction};
use hcs::oracle::{contains_equivalent, search_base_sets, SearchMode, DEFAULT_CAP};
use hcs::trail::{ClosedTrail, DifferenceMultiset};
use hcs::verifier::{verify_base, verify_full, verify_parity, verify_symmetric};
use hcs::zmod::Params;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn timed<F: FnOnce()>(n: u32, what: &str, bound_ms: u128, body: F) {
    let start = Instant::now();
    body();
    let elapsed = start.elapsed().as_millis();
    assert!(
        elapsed <= bound_ms,
        "criterion {n} took {elapsed} ms, budget {bound_ms} ms"
    );
    println!("criterion {n}: PASS ({what}; {elapsed} ms <= {bound_ms} ms)");
}

fn run_binary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcs"))
        .env_remove("HCS_ORACLE_CAP")
        .args(args)
        .output()
        .expect("binary runs")
}

fn built(m: u64, n: u64, kappa: Option<u64>) -> BaseCycleSet {
    match construct(&Params::new(m, n).unwrap(), kappa).unwrap() {
        Construction::Built(set) => set,
        other => panic!("K_{{{m}x{n}}} did not build: {other:?}"),
    }
}

/// Every `Built` outcome over even m, n <= 20.
fn sweep() -> Vec<BaseCycleSet> {
    let mut sets = Vec::new();
    for m in (2..=20u64).step_by(2) {
        for n in (2..=20u64).step_by(2) {
            match construct(&Params::new(m, n).unwrap(), None).unwrap() {
                Construction::Built(set) => sets.push(set),
                Construction::DelegatedN2 { .. } | Construction::Nonexistent(_) => {}
                other => panic!("unexpected outcome for ({m},{n}): {other:?}"),
            }
        }
    }
    assert!(sets.len() > 50, "sweep produced only {} sets", sets.len());
    sets
}

#[test]
fn criterion_1_flagship_construction() {
    timed(1, "K_{10x6}: six reference trails, 27 cycles, 1620 edges", 1000, || {
        let out = run_binary(&["construct", "10", "6"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(
            String::from_utf8(out.stdout).unwrap(),
            "hcs 1\n\
             m 10\n\
             n 6\n\
             trail 10 0 19 1 17 3 15 6 14 8 12\n\
             trail 2 0 3\n\
             trail 2 0 7\n\
             trail 2 0 13\n\
             trail 10 0 29 1 28 2 27 3 26 4 25\n\
             trail 17 0\n"
        );
        let report = verify_full(&built(10, 6, None));
        assert!(report.pass());
        assert_eq!(report.cycles, 27);
        assert_eq!(report.edges, 1620);
    });
}

/// The `trail` lines of a demo's stdout, in order.
fn demo_trail_lines(name: &str) -> Vec<String> {
    let out = run_binary(&["demo", name]);
    assert_eq!(out.status.code(), Some(0), "demo {name} failed");
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .filter(|l| l.starts_with("trail "))
        .map(str::to_string)
        .collect()
}

fn pm_multiset(modulus: u64, positives: &[u64]) -> DifferenceMultiset {
    let mut ms = DifferenceMultiset::new(modulus);
    for &d in positives {
        ms.insert_pair(d);
    }
    ms
}

#[test]
fn criterion_2_reference_demos() {
    let k2x14 = [
        "trail 2 0 3",
        "trail 2 0 7",
        "trail 2 0 11",
        "trail 13 0",
    ];
    let k18x4 = [
        "trail 2 0 3",
        "trail 2 0 7",
        "trail 2 0 11",
        "trail 2 0 15",
        "trail 2 0 21",
        "trail 2 0 25",
        "trail 2 0 29",
        "trail 2 0 33",
        "trail 18 0 35 1 33 3 31 5 29 7 27 10 26 12 24 14 22 16 20",
    ];
    let k6x14 = [
        "trail 6 0 11 1 9 4 8",
        "trail 6 0 23 1 21 4 20",
        "trail 2 0 3",
        "trail 2 0 9",
        "trail 2 0 33",
        "trail 2 0 39",
        "trail 6 0 41 1 39 4 38",
        "trail 2 0 15",
        "trail 6 0 29 1 28 2 27",
        "trail 19 0",
    ];
    let k10x10 = [
        "trail 10 0 19 1 17 3 15 6 14 8 12",
        "trail 10 0 39 1 37 3 35 6 34 8 32",
        "trail 2 0 3",
        "trail 2 0 7",
        "trail 2 0 13",
        "trail 2 0 17",
        "trail 2 0 23",
        "trail 2 0 27",
        "trail 2 0 33",
        "trail 10 0 49 1 48 2 47 3 46 4 45",
        "trail 37 0",
    ];

    timed(2, "demo k2x14 trail lines", 1000, || {
        assert_eq!(demo_trail_lines("k2x14"), k2x14);
    });
    timed(2, "demo k18x4 trail lines and difference unions", 1000, || {
        assert_eq!(demo_trail_lines("k18x4"), k18x4);
        // The two documented difference unions, recomputed as multisets:
        // the eight pendants cover the odd residues except 17 and 35,
        // the long trail everything else off the part subgroup.
        let set = built(18, 4, None);
        let params = set.params();
        let mut pendants = DifferenceMultiset::new(72);
        for trail in set.trails().iter().filter(|t| t.r() == 2) {
            pendants.union_with(&trail.partial_differences(params).unwrap());
        }
        let mut odd: Vec<u64> = (1..=33).step_by(2).collect();
        odd.retain(|&d| d != 17);
        assert_eq!(pendants, pm_multiset(72, &odd));

        let long = set
            .trails()
            .iter()
            .find(|t| t.r() == 18)
            .expect("one long trail")
            .partial_differences(params)
            .unwrap();
        let mut evens: Vec<u64> = (2..=34).step_by(2).collect();
        evens.retain(|&d| d != 18);
        evens.extend([17, 35]);
        assert_eq!(long, pm_multiset(72, &evens));
    });
    timed(2, "demo k72x8 trail lines", 1000, || {
        let lines = demo_trail_lines("k72x8");
        assert_eq!(lines.len(), 22);
        assert_eq!(lines[0], "trail 2 0 3");
        assert_eq!(lines[11], "trail 2 0 147");
        assert_eq!(
            lines[8],
            "trail 18 0 35 1 33 3 31 5 29 7 27 10 26 12 24 14 22 16 20"
        );
        assert_eq!(
            lines[19],
            "trail 18 0 179 1 177 3 175 5 173 7 171 10 170 12 168 14 166 16 164"
        );
        assert_eq!(
            lines[21],
            "trail 72 0 287 1 286 2 285 3 284 4 283 5 282 6 281 7 280 8 279 \
             9 278 10 277 11 276 12 275 13 274 14 273 15 272 16 271 17 270 \
             18 269 19 268 20 267 21 266 22 265 23 264 24 263 25 262 26 261 \
             27 260 28 259 29 258 30 257 31 256 32 255 33 254 34 253 35 252"
        );
    });
    timed(2, "demo k6x14 trail lines", 1000, || {
        assert_eq!(demo_trail_lines("k6x14"), k6x14);
    });
    timed(2, "demo k10x10 (kappa 1) trail lines", 1000, || {
        assert_eq!(demo_trail_lines("k10x10"), k10x10);
    });
}

/// Replace one trail of `set` by a single-edit variant that is still
/// individually valid but has different partial differences. One entry
/// changes, or the stride does.
fn mutate_one_trail(rng: &mut StdRng, set: &BaseCycleSet) -> Option<BaseCycleSet> {
    let params = *set.params();
    let modulus = params.order();
    let idx = rng.random_range(0..set.trails().len());
    let original = &set.trails()[idx];
    let original_pd = original.partial_differences(&params).ok()?;
    for _ in 0..200 {
        let mut base = original.base().to_vec();
        let mut stride = original.stride();
        if base.len() > 1 && rng.random_bool(0.5) {
            let j = rng.random_range(1..base.len());
            base[j] = rng.random_range(0..modulus);
        } else {
            stride = rng.random_range(0..modulus);
        }
        let candidate = ClosedTrail::new(base, stride, &params);
        if candidate.validate(&params).is_err() {
            continue;
        }
        let pd = candidate.partial_differences(&params).expect("validated");
        if pd == original_pd {
            continue;
        }
        let mut trails = set.trails().to_vec();
        trails[idx] = candidate;
        return Some(BaseCycleSet::new(params, trails, None));
    }
    None
}

#[test]
fn criterion_3_verifier_agreement() {
    timed(
        3,
        "sweep m,n <= 20 plus 50 single-edit mutations: both verifiers agree",
        60_000,
        || {
            let sets = sweep();
            for set in &sets {
                let p = set.params();
                let base = verify_base(set).expect("constructed trails are valid");
                let full = verify_full(set);
                assert!(
                    base.pass && full.pass(),
                    "verifiers must both accept K_{{{}x{}}}",
                    p.m(),
                    p.n()
                );
            }
            let mut rng = StdRng::seed_from_u64(0xacce97);
            let mut mutants = 0;
            while mutants < 50 {
                let set = &sets[rng.random_range(0..sets.len())];
                let Some(mutant) = mutate_one_trail(&mut rng, set) else {
                    continue;
                };
                let base_pass = verify_base(&mutant).map(|r| r.pass).unwrap_or(false);
                let full_pass = verify_full(&mutant).pass();
                assert_eq!(
                    base_pass,
                    full_pass,
                    "verifiers disagree on a mutant of K_{{{}x{}}}",
                    mutant.params().m(),
                    mutant.params().n()
                );
                assert!(!base_pass, "a changed difference multiset cannot still partition");
                mutants += 1;
            }
        },
    );
}

#[test]
fn criterion_4_search_confirms_smallest_obstruction() {
    timed(4, "K_{4x2}: zero solutions, space exhausted", 60_000, || {
        let outcome = search_base_sets(
            &Params::new(4, 2).unwrap(),
            SearchMode::All,
            u64::MAX,
            DEFAULT_CAP,
        )
        .unwrap();
        assert!(outcome.exhausted);
        assert!(outcome.solutions.is_empty());
    });
}

#[test]
fn criterion_5_search_finds_the_constructions() {
    timed(5, "K_{2x2}, K_{2x4}: construction among all solutions", 60_000, || {
        for n in [2u64, 4] {
            let outcome = search_base_sets(
                &Params::new(2, n).unwrap(),
                SearchMode::All,
                u64::MAX,
                DEFAULT_CAP,
            )
            .unwrap();
            assert!(outcome.exhausted, "n={n}");
            assert!(
                contains_equivalent(&outcome, &built(2, n, None)),
                "n={n}: constructed set missing from the enumeration"
            );
        }
    });
}

#[test]
fn criterion_6_odd_orbit_parity() {
    timed(6, "every constructed system obeys the parity law", 10_000, || {
        for set in sweep() {
            let p = set.params();
            let report = verify_parity(&set).expect("even n in sweep");
            assert!(
                report.pass,
                "parity fails for K_{{{}x{}}}: observed {}, target {}",
                p.m(),
                p.n(),
                report.observed,
                report.target
            );
        }
        let report = verify_parity(&built(10, 6, None)).unwrap();
        assert_eq!((report.observed, report.target), (1, 1));
    });
}

#[test]
fn criterion_7_orbit_symmetry() {
    timed(7, "every constructed orbit length divides m", 10_000, || {
        for set in sweep() {
            let p = *set.params();
            assert_eq!(
                verify_symmetric(&set),
                Ok(()),
                "symmetry fails for K_{{{}x{}}}",
                p.m(),
                p.n()
            );
        }
    });
}

#[test]
fn criterion_8_unit_progression_counts() {
    timed(8, "progression unit counts: vanishing and positivity", 10_000, || {
        fn smallest_odd_prime_factor(w: u64) -> u64 {
            let mut p = 3;
            while p * p <= w {
                if w.is_multiple_of(p) {
                    return p;
                }
                p += 2;
            }
            w
        }
        let prime_powers = [
            3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49,
        ];
        for &w in &prime_powers {
            let p = smallest_odd_prime_factor(w);
            for s in 1..=30 {
                for d in 1..=30 {
                    let expect_zero = (s % p == 0 && d % p == 0) || (w == 3 && s % 3 == 0);
                    assert_eq!(
                        hcs::constructor::phi_count(s, d, w) == 0,
                        expect_zero,
                        "s={s} d={d} w={w}"
                    );
                }
            }
        }
        for w in (3..=45u64).step_by(2) {
            for s in 1..=30 {
                for d in 1..=30 {
                    if hcs::zmod::gcd(hcs::zmod::gcd(s, d), w) == 1 && s % 3 != 0 {
                        assert!(
                            hcs::constructor::phi_count(s, d, w) > 0,
                            "s={s} d={d} w={w}"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_9_large_case_verifies() {
    timed(9, "K_{72x8}: full verification of 163584 edges", 30_000, || {
        let report = verify_full(&built(72, 8, None));
        assert!(report.pass());
        assert_eq!(report.cycles, 284);
        assert_eq!(report.edges, 163_584);
    });
}
