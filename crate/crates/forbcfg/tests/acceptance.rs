//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measurements (run with `--nocapture` to see them). Expected values
//! come from independent oracles (exhaustive enumeration, brute-force
//! containment, direct recursion), never from the code paths under test.

use forbcfg::forb::{forb_exact, forb_k_exact, validate_result, SearchConfig};
use forbcfg::growth::{run_growth, FitStatus};
use forbcfg::matrix::RMatrix;
use forbcfg::naive;
use forbcfg::patterns::{
    all_columns, avoids, config_equal, contains, gen_i, gen_t, gen_t3, gen_tfam, half_triangular,
    ConfigFamily,
};
use forbcfg::prooflab::{
    best_row_pair, count_01_pairs, extract_config_from_template, f_recurrence, multinomial_bound,
    standard_decomposition, Extraction, PVector,
};
use std::time::{Duration, Instant};

struct Budget {
    start: Instant,
    limit: Duration,
    label: &'static str,
}

impl Budget {
    fn new(label: &'static str, limit_secs: u64) -> Budget {
        Budget {
            start: Instant::now(),
            limit: Duration::from_secs(limit_secs),
            label,
        }
    }

    fn pass(self, detail: String) {
        let elapsed = self.start.elapsed();
        assert!(
            elapsed <= self.limit,
            "{} exceeded its {:?} budget ({:?})",
            self.label,
            self.limit,
            elapsed
        );
        println!("{}: PASS ({detail}; {elapsed:.2?})", self.label);
    }
}

#[test]
fn criterion_01_containment_oracle_equivalence() {
    let budget = Budget::new("criterion 01 containment-oracle-equivalence", 60);
    let mut rng = naive::SplitMix64::new(0xacce97ed);
    let mut agreements = 0usize;
    for _ in 0..200 {
        let (am, an) = (
            1 + rng.next_below(5) as usize,
            1 + rng.next_below(7) as usize,
        );
        let (fm, fn_) = (
            1 + rng.next_below(3) as usize,
            1 + rng.next_below(3) as usize,
        );
        let a = naive::random_matrix(&mut rng, am, an, 3);
        let f = naive::random_matrix(&mut rng, fm, fn_, 3);
        let fast = contains(&a, &f);
        let slow = naive::contains_bruteforce(&a, &f);
        assert_eq!(
            fast.is_some(),
            slow,
            "oracle disagreement on {a:?} vs {f:?}"
        );
        if let Some(witness) = &fast {
            assert!(
                witness.verify(&a, &f),
                "witness fails entry check on {a:?} vs {f:?}"
            );
        }
        agreements += 1;
    }
    budget.pass(format!(
        "{agreements}/200 randomized pairs agree with brute force"
    ));
}

#[test]
fn criterion_02_identity_family_is_a_chain() {
    let budget = Budget::new("criterion 02 forb-identity-chain", 150);
    let family = ConfigFamily::from_members(2, [gen_i(2, 1, 0).unwrap()]);
    let mut values = Vec::new();
    for m in 1..=5usize {
        let instance = Instant::now();
        let res = forb_exact(m, 2, &family, &SearchConfig::default()).unwrap();
        assert!(res.exact);
        assert_eq!(res.value, m + 1, "forb({m}) should be {}", m + 1);
        if m <= 4 {
            let oracle = naive::max_feasible_columns(m, 2, &family, None);
            assert_eq!(
                res.value, oracle,
                "engine disagrees with exhaustive oracle at m={m}"
            );
        }
        assert!(validate_result(&res, &family).is_ok());
        assert!(
            instance.elapsed() <= Duration::from_secs(30),
            "instance m={m} too slow"
        );
        values.push(res.value);
    }
    budget.pass(format!(
        "values {values:?} match m+1, oracle-checked through m=4"
    ));
}

#[test]
fn criterion_03_empty_family_takes_all_columns() {
    let budget = Budget::new("criterion 03 forb-empty-family", 60);
    for m in 0..=4usize {
        let res = forb_exact(m, 2, &ConfigFamily::new(2), &SearchConfig::default()).unwrap();
        assert!(res.exact);
        assert_eq!(res.value, 1 << m);
        // the engine must return the full column universe
        assert_eq!(
            res.extremal.col_ids(),
            all_columns(m, 2, None).unwrap().col_ids()
        );
    }
    budget.pass("forb(m) = 2^m for m <= 4 with the full column set returned".to_string());
}

#[test]
fn criterion_04_triangular_family_plateau() {
    let budget = Budget::new("criterion 04 constant-plateau", 300);
    let family = gen_tfam(2, 2).unwrap();
    let mut values = Vec::new();
    for m in 4..=6usize {
        let res = forb_exact(m, 2, &family, &SearchConfig::default()).unwrap();
        assert!(res.exact);
        values.push(res.value);
    }
    assert_eq!(
        values[0], values[1],
        "plateau broken between m=4 and m=5: {values:?}"
    );
    assert_eq!(
        values[1], values[2],
        "plateau broken between m=5 and m=6: {values:?}"
    );
    budget.pass(format!("constant value {} at m = 4, 5, 6", values[0]));
}

#[test]
fn criterion_05_binary_columns_avoid_the_escaping_family() {
    let budget = Budget::new("criterion 05 binary-construction-avoids", 60);
    let escaping = gen_tfam(2, 3).unwrap().minus(&gen_tfam(2, 2).unwrap());
    for m in 3..=5usize {
        let all_binary = all_columns(m, 2, None).unwrap();
        assert_eq!(all_binary.col_count(), 1 << m);
        assert!(avoids(&all_binary, &escaping), "violation at m={m}");
    }
    budget.pass("all 2^m binary columns avoid every member for m = 3, 4, 5".to_string());
}

#[test]
fn criterion_06_halving_identity() {
    let budget = Budget::new("criterion 06 halving-identity", 60);
    let mut checked = 0usize;
    for l in 1..=4usize {
        for a in 0..3u8 {
            for b in 0..3u8 {
                for c in 0..3u8 {
                    let t = gen_t3(2 * l, a, b, c).unwrap();
                    let half = half_triangular(&t).unwrap();
                    let expected = gen_t(l, a, c)
                        .unwrap()
                        .with_alphabet(half.alphabet())
                        .unwrap();
                    assert_eq!(half, expected, "halving failed for l={l} ({a},{b},{c})");
                    checked += 1;
                }
            }
        }
    }
    budget.pass(format!("{checked} (l, a, b, c) combinations halve exactly"));
}

#[test]
fn criterion_07_recurrence_against_direct_evaluation() {
    let budget = Budget::new("criterion 07 recurrence-and-bound", 10);
    let mut checked = 0usize;
    let mut stack: Vec<Vec<u64>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        let sum: u64 = prefix.iter().sum();
        if !prefix.is_empty() {
            let p = PVector::new(prefix.clone()).unwrap();
            let memoized = f_recurrence(&p).unwrap();
            assert_eq!(
                memoized,
                naive::recurrence_direct(&prefix),
                "mismatch at {prefix:?}"
            );
            assert!(
                memoized <= multinomial_bound(&p).unwrap(),
                "bound violated at {prefix:?}"
            );
            checked += 1;
        }
        if prefix.len() < 4 {
            for next in 1..=(12 - sum) {
                let mut longer = prefix.clone();
                longer.push(next);
                stack.push(longer);
            }
        }
    }
    budget.pass(format!("{checked} budget vectors up to arity 4, total 12"));
}

#[test]
fn criterion_08_standard_decomposition_inequality() {
    let budget = Budget::new("criterion 08 standard-decomposition", 120);
    let mut rng = naive::SplitMix64::new(0xdec0);
    let mut strict = 0usize;
    for trial in 0..100 {
        let m = 2 + rng.next_below(5) as usize; // rows 2..=6
        let max_n = 3usize.pow(m as u32).min(12);
        let n = 1 + rng.next_below(max_n as u64) as usize;
        let a = naive::random_simple_matrix(&mut rng, m, n, 3);
        let i = rng.next_below(m as u64) as usize;
        let d = standard_decomposition(&a, i).unwrap();
        let (total, base, repeats) = d.counts(&a);
        assert!(
            total <= base + repeats,
            "count inequality failed on trial {trial}"
        );
        if total < base + repeats {
            strict += 1;
        }
        for sa in 0..3u8 {
            for sb in (sa + 1)..3u8 {
                if let Some(product) = d.pair_product(sa, sb, 3).unwrap() {
                    assert!(
                        contains(&a, &product).is_some(),
                        "pair product ({sa},{sb}) missing from the original on trial {trial}"
                    );
                }
            }
        }
    }
    budget.pass(format!(
        "100 random simple 3-matrices hold the inequality ({strict} strict)"
    ));
}

#[test]
fn criterion_09_pair_counting() {
    let budget = Budget::new("criterion 09 pair-counting", 10);
    let mut rng = naive::SplitMix64::new(0x9a175);
    for _ in 0..1000 {
        let m = 1 + rng.next_below(8) as usize;
        let col: Vec<u8> = (0..m).map(|_| rng.next_below(3) as u8).collect();
        let zeros = col.iter().filter(|&&s| s == 0).count();
        let ones = col.iter().filter(|&&s| s == 1).count();
        assert_eq!(count_01_pairs(&col), zeros * ones);
    }
    // best pair agrees with a direct tabulation on random matrices
    for _ in 0..50 {
        let m = 2 + rng.next_below(4) as usize;
        let n = 1 + rng.next_below(8) as usize;
        let a = naive::random_matrix(&mut rng, m, n, 3);
        let (bi, bj, bcount) = best_row_pair(&a).unwrap();
        let mut expected_best = 0usize;
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    let count = (0..n)
                        .filter(|&c| a.entry(i, c) == 0 && a.entry(j, c) == 1)
                        .count();
                    expected_best = expected_best.max(count);
                }
            }
        }
        assert_eq!(bcount, expected_best);
        assert_eq!(
            (0..n)
                .filter(|&c| a.entry(bi, c) == 0 && a.entry(bj, c) == 1)
                .count(),
            bcount
        );
    }
    budget.pass("1000 columns match zeros*ones; best pair matches tabulation".to_string());
}

#[test]
fn criterion_10_extraction_round_trip() {
    let budget = Budget::new("criterion 10 extraction-round-trip", 60);
    let escaping = gen_tfam(2, 3).unwrap().minus(&gen_tfam(2, 2).unwrap());
    let mut rng = naive::SplitMix64::new(0xe87);
    let mut members = 0usize;
    let mut exceptions = 0usize;

    // (x, diagonal, above) plants; `None` above means random entries
    let mut plants: Vec<(u8, u8, Option<u8>)> = vec![
        (2, 1, Some(1)), // pure (x, z): triangular comes back directly
        (2, 0, Some(0)),
        (0, 2, Some(2)),
        (1, 2, Some(2)),
        (2, 1, Some(2)), // above = x: identity
        (2, 0, Some(2)),
        (0, 2, Some(0)),
        (1, 2, Some(1)),
        (2, 1, Some(0)), // third color: halving
        (2, 0, Some(1)),
        (0, 2, Some(1)), // both outer symbols under the bound: exception
        (1, 2, Some(0)),
    ];
    plants.extend([(2, 1, None), (2, 0, None), (0, 2, None), (1, 2, None)]);
    plants.extend([(2, 1, None), (0, 2, None), (1, 2, None), (2, 0, None)]);
    assert_eq!(plants.len(), 20);

    for &(x, diag, above) in &plants {
        let rows: Vec<Vec<u8>> = (0..8)
            .map(|i| {
                (0..8)
                    .map(|j| {
                        if i > j {
                            x
                        } else if i == j {
                            diag
                        } else {
                            above.unwrap_or_else(|| rng.next_below(3) as u8)
                        }
                    })
                    .collect()
            })
            .collect();
        let g = RMatrix::from_rows(3, rows).unwrap();
        let pure_plant = above == Some(diag);
        match extract_config_from_template(&g, x, 2, 2).unwrap() {
            Extraction::Member {
                config, witness, ..
            } => {
                assert!(
                    witness.verify(&g, &config),
                    "witness fails on plant ({x},{diag},{above:?})"
                );
                assert!(contains(&g, &config).is_some());
                assert!(
                    escaping.members().iter().any(|m| config_equal(m, &config)),
                    "member not in the escaping family on plant ({x},{diag},{above:?})"
                );
                members += 1;
            }
            Extraction::Exception {
                config, witness, ..
            } => {
                assert!(!pure_plant, "pure plant ({x},{diag}) must yield a member");
                assert!(witness.verify(&g, &config));
                assert!(contains(&g, &config).is_some());
                exceptions += 1;
            }
            Extraction::TooSmall { reason, .. } => {
                panic!("plant ({x},{diag},{above:?}) unexpectedly too small: {reason}");
            }
        }
    }
    budget.pass(format!(
        "20 plants extracted: {members} members, {exceptions} exceptions"
    ));
}

#[test]
fn criterion_11_fixed_weight_sanity() {
    let budget = Budget::new("criterion 11 fixed-weight-sanity", 120);
    let identity = ConfigFamily::from_members(2, [gen_i(2, 1, 0).unwrap()]);
    let empty = ConfigFamily::new(2);
    for m in 2..=5usize {
        for k in 1..m {
            let res = forb_k_exact(m, 2, &identity, k, &SearchConfig::default()).unwrap();
            assert!(res.exact);
            assert_eq!(res.value, 1, "forb_k(m={m}, k={k}) must be 1");
        }
    }
    for m in 1..=5usize {
        for k in 0..=m {
            let res = forb_k_exact(m, 2, &empty, k, &SearchConfig::default()).unwrap();
            assert_eq!(
                res.value,
                binomial(m, k),
                "forb_k(m={m}, k={k}) must be C(m,k)"
            );
        }
    }
    budget.pass("identity family pins weight classes to 1; empty family gives C(m,k)".to_string());
}

fn binomial(n: usize, k: usize) -> usize {
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[test]
fn criterion_12_growth_fit_window() {
    let budget = Budget::new("criterion 12 growth-fit-window", 600);
    let report = run_growth(
        "Fabcd(0,2,2,0)",
        2,
        3,
        6,
        &SearchConfig::default(),
        None,
        None,
    )
    .unwrap();
    assert!(report.points.iter().all(|p| p.exact));
    match report.fit {
        FitStatus::Fitted { exponent, .. } => {
            assert!(
                (1.0..=3.0).contains(&exponent),
                "fitted exponent {exponent} outside [1.0, 3.0]"
            );
            assert!(
                report.fit_scope.contains("desk-scale"),
                "fit must be flagged desk-scale"
            );
            let values: Vec<usize> = report.points.iter().map(|p| p.value).collect();
            budget.pass(format!(
                "values {values:?}, exponent {exponent:.2} in [1.0, 3.0]"
            ));
        }
        other => panic!("expected a fitted exponent, got {other:?}"),
    }
}

#[test]
fn criterion_13_determinism_and_cache() {
    let budget = Budget::new("criterion 13 determinism-and-cache", 60);
    let dir = tempfile::tempdir().unwrap();
    let cache_path = dir.path().join("cache.jsonl");
    let exe = env!("CARGO_BIN_EXE_forbcfg");
    let run = || {
        let output = std::process::Command::new(exe)
            .args(["forb", "--m", "4", "--r", "2", "--family", "Fabcd(0,1,1,0)"])
            .env("FORB_CACHE", &cache_path)
            .output()
            .expect("binary runs");
        assert!(
            output.status.success(),
            "{}",
            String::from_utf8_lossy(&output.stderr)
        );
        serde_json::from_slice::<serde_json::Value>(&output.stdout).expect("json output")
    };
    let first = run();
    let second = run();
    assert_eq!(first["value"], second["value"]);
    assert_eq!(first["extremal"], second["extremal"]);
    assert_eq!(first["value"], serde_json::json!(5));
    assert!(first["nodes"].as_u64().unwrap() > 0, "first run searches");
    assert_eq!(
        second["nodes"].as_u64().unwrap(),
        0,
        "second run must be served from cache"
    );
    budget.pass(format!(
        "value/extremal byte-identical across runs; cached rerun reports 0 nodes (first: {} nodes)",
        first["nodes"]
    ));
}
