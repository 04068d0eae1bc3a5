// Acceptance suite: ten end-to-end checks covering the library and the
// binary.  Each test prints exactly one `criterion N: pass` or
// `criterion N: FAIL` line (visible under `--nocapture`) and enforces its
// own wall-clock budget where one applies.  Budgets, trial counts, and
// tolerances are pinned as the constants below.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num::{BigInt, One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use posmat::classes::{self, PowerLimitOutcome};
use posmat::matrix::{self, NonnegMatrix, PatternMatrix, Support};
use posmat::{bounds, fixtures, generate, gk, graph, Rational};
use posmat::bounds::TheoremId;
use posmat::graph::Graph;

const WIELANDT_BUDGET: Duration = Duration::from_secs(5);
const REGRESSION_BUDGET: Duration = Duration::from_secs(1);
const IRREDUCIBILITY_BUDGET: Duration = Duration::from_secs(30);
const CONNECTIVITY_BUDGET: Duration = Duration::from_secs(120);
const SWEEP_BUDGET: Duration = Duration::from_secs(180);

const RANDOM_PATTERNS_PER_SIZE: usize = 1000; // criterion 3, each n in 4..=10
const RANDOM_GRAPHS_PER_SIZE: usize = 500; // criterion 4, each n in 6..=9
const SWEEP_TRIALS_PER_SIZE: usize = 40; // criterion 5: 40 x (n in 3..=7) = 200 per rule
const HIERARCHY_SAMPLES: usize = 2000; // criterion 6
const STOCHASTIC_SAMPLES: usize = 500; // criterion 7
const GROWTH_SAMPLES: usize = 500; // criterion 8
const ORACLE_PRODUCT_CASES: usize = 1000; // criterion 9
const ORACLE_PERIOD_SAMPLES: usize = 300; // criterion 9, each n in 5..=6

// Convergence tolerance for the power-limit check: 10^-9, held exactly.
const LIMIT_TOLERANCE_DEN: u64 = 1_000_000_000;

const SEED_IRREDUCIBILITY: u64 = 0xACC3;
const SEED_CONNECTIVITY: u64 = 0xACC4;
const SEED_SWEEP: u64 = 0xACC5;
const SEED_HIERARCHY: u64 = 0xACC6;
const SEED_STOCHASTIC: u64 = 0xACC7;
const SEED_GROWTH: u64 = 0xACC8;
const SEED_ORACLE: u64 = 0xACC9;

/// Runs one criterion body, prints its pass/fail line, and enforces the
/// optional time budget.  The body returns a short detail string for the
/// pass line and panics on any violation.
fn run(criterion: usize, label: &str, budget: Option<Duration>, body: impl FnOnce() -> String) {
    let start = Instant::now();
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(detail) => {
            let elapsed = start.elapsed();
            if let Some(budget) = budget {
                if elapsed >= budget {
                    println!(
                        "criterion {criterion}: FAIL ({label}: {elapsed:.2?} exceeded the {budget:?} budget)"
                    );
                    panic!("criterion {criterion} ran over budget: {elapsed:.2?} >= {budget:?}");
                }
            }
            println!("criterion {criterion}: pass ({label}: {detail}; {elapsed:.2?})");
        }
        Err(cause) => {
            println!("criterion {criterion}: FAIL ({label})");
            panic::resume_unwind(cause);
        }
    }
}

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[test]
fn criterion_01_wielandt_extremality() {
    run(1, "extremal exponents", Some(WIELANDT_BUDGET), || {
        for n in 2..=10usize {
            let w = generate::wielandt(n).unwrap();
            let expected = (n * n - 2 * n + 2) as u64;
            assert_eq!(
                classes::gamma(&w).unwrap(),
                expected,
                "gamma of the {n}x{n} extremal pattern"
            );
            let prev = matrix::bool_power(&w, expected - 1).unwrap();
            assert!(
                !prev.is_all_ones(),
                "{n}x{n} extremal pattern already positive at exponent {}",
                expected - 1
            );
        }
        "n in 2..=10, gamma = n^2-2n+2 and the previous power falls short".into()
    });
}

#[test]
fn criterion_02_nine_by_nine_regression() {
    run(2, "9x9 fixture regression", Some(REGRESSION_BUDGET), || {
        let p = fixtures::example_4_11().indicator();
        assert!(gk::is_gk(&p, 3).unwrap().is_member, "fixture must be in class 3");
        assert_eq!(classes::gamma(&p).unwrap(), 3);
        assert!(!matrix::bool_power(&p, 2).unwrap().is_all_ones(), "square must not be positive");
        let res = bounds::verify_t4_10(std::slice::from_ref(&p), 3).unwrap();
        assert!(res.hypotheses_met, "rule 4.10 hypotheses: {}", res.note);
        assert_eq!(res.conclusion_holds, Some(true));
        assert_eq!(res.bound_value, Some(3));
        assert_eq!(res.slack, Some(0), "rule 4.10 must be tight here");
        "class 3, gamma 3, square not positive, rule 4.10 tight".into()
    });
}

#[test]
fn criterion_03_irreducibility_three_ways() {
    run(3, "irreducibility equivalence", Some(IRREDUCIBILITY_BUDGET), || {
        let mut checked = 0usize;
        let mut check = |p: &PatternMatrix| {
            let n = p.rows();
            let scc = classes::is_irreducible(p).unwrap();
            let power = matrix::bool_power(&p.with_identity().unwrap(), (n - 1) as u64)
                .unwrap()
                .is_all_ones();
            let class = gk::is_gk(p, 1).unwrap().is_member;
            assert!(
                scc == power && power == class,
                "disagreement at n={n}: scc={scc} power={power} class={class}"
            );
            checked += 1;
        };
        for bits in 0u32..512 {
            let p = PatternMatrix::from_fn(3, 3, |i, j| bits >> (3 * i + j) & 1 == 1).unwrap();
            check(&p);
        }
        let mut rng = generate::rng_from_seed(SEED_IRREDUCIBILITY);
        for n in 4..=10 {
            for _ in 0..RANDOM_PATTERNS_PER_SIZE {
                let p = generate::random_pattern(n, n, 1, 2, &mut rng).unwrap();
                check(&p);
            }
        }
        format!("{checked} patterns, zero disagreements")
    });
}

#[test]
fn criterion_04_connectivity_audit() {
    run(4, "connectivity audit", Some(CONNECTIVITY_BUDGET), || {
        let mut audits = 0usize;
        let mut audit_all_k = |g: &Graph| {
            for k in 1..g.n() {
                let audit = graph::equivalence_audit(g, k).unwrap();
                assert!(
                    audit.agreed(),
                    "route disagreement at n={} k={k} edges={:?}",
                    g.n(),
                    g.edges_one_based()
                );
                audits += 1;
            }
        };
        // Exhaustive over edge subsets, loops included.  One vertex has
        // no valid k, so sizes 2..=5 carry the audits.
        for n in 2..=5usize {
            let pairs: Vec<(usize, usize)> =
                (1..=n).flat_map(|u| (u..=n).map(move |v| (u, v))).collect();
            for mask in 0u32..1 << pairs.len() {
                let chosen = pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, e)| *e);
                audit_all_k(&Graph::new(n, chosen).unwrap());
            }
        }
        let mut rng = generate::rng_from_seed(SEED_CONNECTIVITY);
        for n in 6..=9 {
            for _ in 0..RANDOM_GRAPHS_PER_SIZE {
                audit_all_k(&generate::random_graph(n, 1, 2, &mut rng).unwrap());
            }
        }
        let pet = Graph::petersen();
        assert_eq!(graph::connectivity_bruteforce(&pet).unwrap().kappa, 3);
        assert!(graph::is_k_connected_via_gk(&pet, 3).unwrap());
        assert!(!graph::is_k_connected_via_gk(&pet, 4).unwrap());
        format!("{audits} four-way audits agreed, Petersen kappa 3 both ways")
    });
}

#[test]
fn criterion_05_bound_soundness_sweep() {
    run(5, "bound soundness sweep", Some(SWEEP_BUDGET), || {
        let rules = [
            TheoremId::T4_3,
            TheoremId::T4_8,
            TheoremId::T4_10,
            TheoremId::T4_13,
            TheoremId::T4_14,
            TheoremId::T4_15,
            TheoremId::T4_22,
            TheoremId::T4_23,
            TheoremId::T4_24,
            TheoremId::T5_7,
            TheoremId::T5_8,
            TheoremId::T5_10,
            TheoremId::T5_12,
            TheoremId::T5_13,
            TheoremId::T5_17,
            TheoremId::T5_19,
        ];
        let mut verified = 0usize;
        for (ri, id) in rules.iter().enumerate() {
            for n in 3..=7usize {
                let root = generate::derive_seed(SEED_SWEEP, (ri * 16 + n) as u64);
                let rep = bounds::random_sweep(*id, SWEEP_TRIALS_PER_SIZE, n, root).unwrap();
                assert_eq!(rep.verified, SWEEP_TRIALS_PER_SIZE, "rule {} n={n}", id.tag());
                verified += rep.verified;
            }
        }
        assert_eq!(verified, rules.len() * 5 * SWEEP_TRIALS_PER_SIZE);
        format!("{} rules x 200 instances, all conclusions held", rules.len())
    });
}

#[test]
fn criterion_06_class_hierarchy() {
    run(6, "class hierarchy", None, || {
        let mut rng = generate::rng_from_seed(SEED_HIERARCHY);
        for t in 0..HIERARCHY_SAMPLES {
            let n = 2 + t % 7; // sizes 2..=8
            let p = generate::random_pattern(n, n, 1, 2, &mut rng).unwrap();
            if classes::is_fully_indecomposable(&p).unwrap() {
                assert!(classes::is_irreducible(&p).unwrap(), "fully indecomposable but reducible");
            }
            let scrambling = classes::is_scrambling(&p).unwrap().scrambling;
            let sarymsakov = classes::is_sarymsakov(&p).unwrap().holds;
            if scrambling {
                assert!(sarymsakov, "scrambling without the Sarymsakov property");
            }
            if sarymsakov {
                assert!(matrix::is_row_allowable(&p), "Sarymsakov with an empty row");
            }
            if classes::is_markov(&p) {
                assert!(scrambling, "positive column but not scrambling");
            }
            let members: Vec<bool> =
                (1..n).map(|k| gk::is_gk(&p, k).unwrap().is_member).collect();
            for pair in members.windows(2) {
                assert!(pair[0] || !pair[1], "class k+1 membership without class k");
            }
            for (ki, member) in members.iter().enumerate() {
                if !member {
                    continue;
                }
                let k = ki + 1;
                for j in 0..n {
                    let off = (0..n).filter(|&i| i != j && p.get(i, j)).count();
                    assert!(off >= k, "class {k} member with only {off} off-diagonal hits in column {}", j + 1);
                }
            }
        }
        // The column-count condition does not imply membership: this 6x6
        // fixture serves every column twice off-diagonally yet sits only
        // in class 1.
        let r = fixtures::remark_3_13().indicator();
        for j in 0..r.cols() {
            let off = (0..r.rows()).filter(|&i| i != j && r.get(i, j)).count();
            assert!(off >= 2);
        }
        assert!(gk::is_gk(&r, 1).unwrap().is_member);
        assert!(!gk::is_gk(&r, 2).unwrap().is_member);
        format!("{HIERARCHY_SAMPLES} patterns, all implications held, converse refuted")
    });
}

#[test]
fn criterion_07_stochastic_coefficients() {
    run(7, "stochastic coefficients", None, || {
        let s = fixtures::stochastic_a();
        assert_eq!(classes::mu(&s).unwrap(), ratio(1, 2));
        assert_eq!(classes::alpha(&s).unwrap(), ratio(1, 2));
        let tol = Rational::new(BigInt::one(), BigInt::from(LIMIT_TOLERANCE_DEN));
        match classes::power_limit(&s, &tol, 1000).unwrap() {
            PowerLimitOutcome::Converged { matrix, .. } => {
                for i in 0..2 {
                    for j in 0..2 {
                        let target = if j == 0 { ratio(1, 3) } else { ratio(2, 3) };
                        let diff = (matrix.get(i, j) - &target).abs();
                        assert!(diff <= tol, "limit entry ({i},{j}) off by {diff}");
                    }
                }
            }
            PowerLimitOutcome::MaxIterExceeded { last_delta, .. } => {
                panic!("power limit failed to converge; last delta {last_delta}")
            }
        }
        let mut rng = generate::rng_from_seed(SEED_STOCHASTIC);
        for t in 0..STOCHASTIC_SAMPLES {
            let n = 2 + t % 5; // sizes 2..=6
            let num = (t % 3 + 1) as u32; // densities 1/4, 2/4, 3/4
            let s = generate::random_stochastic(n, num, 4, &mut rng).unwrap();
            assert_eq!(
                classes::mu(&s).unwrap() > Rational::zero(),
                classes::is_markov(&s),
                "mu positivity must match the positive-column test"
            );
            assert_eq!(
                classes::alpha(&s).unwrap() > Rational::zero(),
                classes::is_scrambling(&s).unwrap().scrambling,
                "alpha positivity must match the scrambling test"
            );
        }
        format!("coefficients exact, limit within 1e-9, {STOCHASTIC_SAMPLES} random coefficient checks")
    });
}

#[test]
fn criterion_08_vector_growth() {
    run(8, "vector growth", None, || {
        let mut rng = generate::rng_from_seed(SEED_GROWTH);
        for t in 0..GROWTH_SAMPLES {
            let n = 3 + t % 5; // sizes 3..=7
            let k = t % (n - 1) + 1;
            let density = ((k as u32 + 1).min(9), (k as u32 + 2).min(10));
            let p = generate::random_pattern_filtered(
                n,
                density.0,
                density.1,
                generate::PatternFilter::Gk(k),
                4000,
                &mut rng,
            )
            .unwrap();
            let m = NonnegMatrix::from_rows(
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                if p.get(i, j) {
                                    Rational::from_integer(rng.gen_range(1..=9).into())
                                } else {
                                    Rational::zero()
                                }
                            })
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            let h = rng.gen_range(1..=n - 1);
            let mut spots: Vec<usize> = (0..n).collect();
            spots.shuffle(&mut rng);
            let mut y = vec![Rational::zero(); n];
            for &i in spots.iter().take(h) {
                y[i] = Rational::from_integer(rng.gen_range(1..=9).into());
            }
            let rep = gk::vector_growth(&m, k, &y).unwrap();
            assert_eq!(rep.positive_before, h);
            assert_eq!(rep.guaranteed, h + k.min(n - h));
            assert!(
                rep.positive_after >= rep.guaranteed,
                "n={n} k={k} h={h}: grew to {} < {}",
                rep.positive_after,
                rep.guaranteed
            );
        }
        format!("{GROWTH_SAMPLES} instances, every growth bound held")
    });
}

#[test]
fn criterion_09_oracle_consistency() {
    run(9, "oracle consistency", None, || {
        let mut rng = generate::rng_from_seed(SEED_ORACLE);
        for t in 0..ORACLE_PRODUCT_CASES {
            if t % 2 == 0 {
                let r = rng.gen_range(1..=8);
                let m = rng.gen_range(1..=8);
                let c = rng.gen_range(1..=8);
                let a = generate::random_nonneg(r, m, 2, 3, &mut rng).unwrap();
                let b = generate::random_nonneg(m, c, 2, 3, &mut rng).unwrap();
                assert_eq!(
                    a.matmul(&b).unwrap().indicator(),
                    matrix::bool_product(&a.indicator(), &b.indicator()).unwrap(),
                    "boolean product disagrees with the exact product at {r}x{m}x{c}"
                );
            } else {
                let n = rng.gen_range(1..=8);
                let e = rng.gen_range(0..=4u64);
                let a = generate::random_nonneg(n, n, 2, 3, &mut rng).unwrap();
                assert_eq!(
                    a.pow(e).unwrap().indicator(),
                    matrix::bool_power(&a.indicator(), e).unwrap(),
                    "boolean power disagrees with the exact power at n={n} e={e}"
                );
            }
        }
        let mut compared = 0usize;
        let mut compare = |p: &PatternMatrix| {
            assert_eq!(
                classes::period(p).unwrap(),
                classes::period_by_return_times(p).unwrap(),
                "period routes disagree"
            );
            compared += 1;
        };
        for n in 1..=4usize {
            for bits in 0u32..1 << (n * n) {
                let p =
                    PatternMatrix::from_fn(n, n, |i, j| bits >> (n * i + j) & 1 == 1).unwrap();
                if classes::is_irreducible(&p).unwrap() {
                    compare(&p);
                }
            }
        }
        for sizes in [vec![1, 1, 1, 1], vec![2, 2, 2], vec![2, 3]] {
            compare(&generate::periodic_block(&sizes).unwrap());
        }
        for n in 5..=6 {
            let mut found = 0usize;
            while found < ORACLE_PERIOD_SAMPLES {
                let den = if found % 2 == 0 { 2 } else { 4 };
                let p = generate::random_pattern(n, n, 1, den, &mut rng).unwrap();
                if classes::is_irreducible(&p).unwrap() {
                    compare(&p);
                    found += 1;
                }
            }
        }
        format!("{ORACLE_PRODUCT_CASES} product cases and {compared} period cross-checks agreed")
    });
}

#[test]
fn criterion_10_cli_round_trip() {
    run(10, "round-trip and determinism", None, || {
        let bin = env!("CARGO_BIN_EXE_posmat");
        let repo = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
        for id in fixtures::ids() {
            let out = Command::new(bin).args(["generate", "fixture", id]).output().unwrap();
            assert!(out.status.success(), "fixture emit failed for {id}");
            let disk = std::fs::read(repo.join("fixtures").join(id)).unwrap();
            assert_eq!(out.stdout, disk, "emit differs from the stored file for {id}");
        }
        let fixture_arg = repo.join("fixtures/example-4-11");
        let fixture_arg = fixture_arg.to_str().unwrap();
        let reruns: &[&[&str]] = &[
            &["--json", "--seed", "20260823", "generate", "random", "--kind", "pattern", "--n", "6"],
            &["--json", "--seed", "20260823", "generate", "random", "--kind", "stochastic", "--n", "5", "--density", "2/3"],
            &["--json", "--seed", "7", "verify", "4.10", "--random", "5", "--size", "5"],
            &["--json", "classify", fixture_arg],
        ];
        for args in reruns {
            let a = Command::new(bin).args(*args).output().unwrap();
            let b = Command::new(bin).args(*args).output().unwrap();
            assert!(a.status.success(), "command failed: {args:?}");
            assert_eq!(a.stdout, b.stdout, "output drifted between reruns: {args:?}");
            assert_eq!(a.status.code(), b.status.code());
        }
        format!("{} fixtures emitted byte-exact, {} commands rerun byte-identical", fixtures::ids().len(), reruns.len())
    });
}
