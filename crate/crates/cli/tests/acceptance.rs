//! Exit criteria. Each test prints one `[PASS]`/`[FAIL]` line (visible with `--nocapture`)
//! and fails if its criterion does not hold.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use persub_cli::commands::{bound_rows, format_bound_table, BoundArgs};
use persub_core::generate::{generate, Family, GenParams};
use persub_core::maximize::{exact_max, greedy_alpha, greedy_max, naive_greedy_max};
use persub_core::oracle::{exact_multi_solve, exact_p1_solve, exact_pair_solve};
use persub_core::personalize::{
    enumeration_solve, gamma_bound, multi_enumeration_solve, sampling_solve,
};
use persub_core::{Budget, InnerSolver, Instance, ItemSet, SubmodularFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const TOL: f64 = 1e-9;

const FAMILIES: [Family; 5] = [
    Family::Modular,
    Family::Coverage,
    Family::Facility,
    Family::Concave,
    Family::Mixed,
];

fn verdict(id: &str, title: &str, failures: &[String], detail: String, start: Instant) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "[{status}] {id} {title}: {detail} ({:.2}s)",
        start.elapsed().as_secs_f64()
    );
    for f in failures.iter().take(10) {
        println!("       {f}");
    }
    assert!(
        failures.is_empty(),
        "{id} failed: {} violations",
        failures.len()
    );
}

/// 60 fixtures with n ≤ 7, k ≤ 2, m ≤ 4 cycling through every family.
fn small_fixtures() -> Vec<Instance> {
    (0..60u64)
        .map(|i| {
            let family = FAMILIES[i as usize % FAMILIES.len()];
            let n = 4 + (i as usize % 4);
            let k = 1 + (i as usize / 4) % 2;
            let m = 1 + (i as usize / 5) % 4;
            generate(family, n, k, m, 1_000 + i, &GenParams::default()).unwrap()
        })
        .collect()
}

#[test]
fn ac1_exactness_sandwich() {
    let start = Instant::now();
    let fixtures = small_fixtures();
    let failures: Vec<String> = fixtures
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, inst)| {
            let mut bad = Vec::new();
            let report = enumeration_solve(inst, &InnerSolver::exact()).unwrap();
            let opt0 = exact_pair_solve(inst).unwrap().opt_value;
            let opt1 = exact_p1_solve(inst).unwrap().opt_value;
            if (report.objective - opt0).abs() > TOL {
                bad.push(format!(
                    "fixture {i}: objective {} != OPT0 {opt0}",
                    report.objective
                ));
            }
            if opt1 < opt0 - TOL {
                bad.push(format!("fixture {i}: OPT1 {opt1} < OPT0 {opt0}"));
            }
            bad
        })
        .collect();
    verdict(
        "AC1",
        "enumeration + exact inner = OPT0, OPT1 >= OPT0",
        &failures,
        format!("{} fixtures", fixtures.len()),
        start,
    );
}

#[test]
fn ac2_enumeration_greedy_ratio() {
    let start = Instant::now();
    let fixtures = small_fixtures();
    let alpha = greedy_alpha();
    let worst = std::sync::Mutex::new(f64::INFINITY);
    let failures: Vec<String> = fixtures
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            let objective = enumeration_solve(inst, &InnerSolver::Greedy)
                .unwrap()
                .objective;
            let opt0 = exact_pair_solve(inst).unwrap().opt_value;
            if opt0 > 0.0 {
                let mut w = worst.lock().unwrap();
                *w = w.min(objective / opt0);
            }
            (objective < alpha * opt0 - TOL)
                .then(|| format!("fixture {i}: {objective} < (1-1/e) x {opt0}"))
        })
        .collect();
    verdict(
        "AC2",
        "enumeration + greedy >= (1-1/e) OPT0",
        &failures,
        format!(
            "{} fixtures, worst ratio {:.6}",
            fixtures.len(),
            worst.into_inner().unwrap()
        ),
        start,
    );
}

#[test]
fn ac3_single_round_sampling_ratio() {
    let start = Instant::now();
    let fixtures: Vec<Instance> = small_fixtures().into_iter().step_by(3).take(20).collect();
    assert_eq!(fixtures.len(), 20);
    let inners = [InnerSolver::exact(), InnerSolver::Greedy];
    let failures: Vec<String> = fixtures
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, inst)| {
            let opt0 = exact_pair_solve(inst).unwrap().opt_value;
            let mut bad = Vec::new();
            for inner in &inners {
                let alpha = inner.reported_alpha();
                for seed in 0..20u64 {
                    let report = sampling_solve(inst, 1, seed, inner).unwrap();
                    if report.objective < alpha / 2.0 * opt0 - TOL {
                        bad.push(format!(
                            "fixture {i}, {}, seed {seed}: {} < {alpha}/2 x {opt0}",
                            inner.name(),
                            report.objective
                        ));
                    }
                }
            }
            bad
        })
        .collect();
    verdict(
        "AC3",
        "sampling with T=1 >= (alpha/2) OPT0",
        &failures,
        "20 fixtures x 20 seeds x 2 inner solvers = 800 runs".into(),
        start,
    );
}

#[test]
fn ac4_bound_calculator() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let floor = gamma_bound(3, 0.0, 10, 1.0).unwrap();
    if floor.factor != 0.5 {
        failures.push(format!("(T=3, eps=0) gave {}", floor.factor));
    }
    let b = gamma_bound(1, 0.1, 100, 1.0).unwrap();
    if b.factor != 0.5 {
        failures.push(format!("(T=1, eps=0.1, m=100) gave {}", b.factor));
    }
    if (b.gamma.unwrap() - 0.413474).abs() > 1e-6 {
        failures.push(format!("gamma(1) = {:?}", b.gamma));
    }
    // The value printed in the table is what users see.
    let table = format_bound_table(
        &bound_rows(&BoundArgs {
            rounds: vec![1],
            eps: vec![0.1],
            m: 100,
            alpha: 1.0,
        })
        .unwrap(),
    );
    let row: Vec<&str> = table.lines().nth(1).unwrap().split('\t').collect();
    let term: f64 = row[3].parse().unwrap();
    if (term - 0.210872).abs() > 1e-6 {
        failures.push(format!("tabulated gamma term {term}"));
    }
    if row[4].parse::<f64>().unwrap() != 0.5 {
        failures.push(format!("tabulated factor {}", row[4]));
    }
    verdict(
        "AC4",
        "gamma bound reproduces hand-derived values",
        &failures,
        format!("gamma term {term:.6}"),
        start,
    );
}

#[test]
fn ac5_greedy_integrity() {
    let start = Instant::now();
    let alpha = greedy_alpha();
    let budget = Budget::default().exact_sets;
    let failures: Vec<String> = (0..240u64)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(50_000 + i);
            let n = rng.gen_range(2..=30);
            let k = rng.gen_range(1..=6usize).min(n);
            let m = rng.gen_range(1..=4);
            let family = FAMILIES[rng.gen_range(0..FAMILIES.len())];
            let inst = generate(family, n, k, m, rng.gen(), &GenParams::default()).unwrap();
            let group: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.7)).collect();
            let lazy = greedy_max(&inst, &group, k).unwrap();
            let naive = naive_greedy_max(&inst, &group, k).unwrap();
            let mut bad = Vec::new();
            if lazy != naive {
                bad.push(format!("instance {i}: lazy {lazy} != naive {naive}"));
            }
            if lazy.len() != k {
                bad.push(format!(
                    "instance {i}: greedy returned {} items",
                    lazy.len()
                ));
            }
            let exact = exact_max(&inst, &group, k, budget).unwrap();
            let g = inst.group_evaluate(&group, &lazy).unwrap();
            let e = inst.group_evaluate(&group, &exact).unwrap();
            if g < alpha * e - TOL {
                bad.push(format!("instance {i}: greedy {g} < (1-1/e) x exact {e}"));
            }
            bad
        })
        .collect();
    verdict(
        "AC5",
        "lazy greedy = naive greedy, greedy >= (1-1/e) exact",
        &failures,
        "240 instances, n <= 30, k <= 6".into(),
        start,
    );
}

#[test]
fn ac6_submodularity_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut triples = 0;
    while triples < 12_000 {
        let n = rng.gen_range(1..=12);
        let family = FAMILIES[rng.gen_range(0..4)];
        let params = GenParams {
            density: rng.gen_range(0.05..0.9),
            exponent: rng.gen_range(0.1..=1.0),
            ..GenParams::default()
        };
        let inst = generate(family, n, 1, 1, rng.gen(), &params).unwrap();
        let f = &inst.functions()[0];
        for _ in 0..20 {
            let x = rng.gen_range(0..n);
            let small = ItemSet::new((0..n).filter(|&i| i != x && rng.gen_bool(0.3)));
            let large = ItemSet::new(
                (0..n).filter(|&i| i != x && (small.contains(i) || rng.gen_bool(0.4))),
            );
            let gs = f.marginal_gain(x, &small).unwrap();
            let gl = f.marginal_gain(x, &large).unwrap();
            if gs < gl - TOL {
                failures.push(format!("{}: gain {gs} < {gl}", f.family()));
            }
            if f.evaluate(&small).unwrap() > f.evaluate(&large).unwrap() + TOL {
                failures.push(format!("{}: not monotone", f.family()));
            }
            if f.evaluate(&ItemSet::empty()).unwrap() != 0.0 {
                failures.push(format!("{}: f(empty) != 0", f.family()));
            }
            triples += 1;
        }
    }

    // Lifted ground set items x {1, 2} under max{f(S1), f(S2)}: adding (1, 2) gains
    // nothing on top of {(0, 1)} but gains 1 on top of {(0, 1), (0, 2)}.
    let inst = Instance::new(
        2,
        2,
        vec![SubmodularFunction::Modular {
            weights: vec![1.0, 1.0],
        }],
    )
    .unwrap();
    let lifted = |s1: &[usize], s2: &[usize]| {
        inst.pair_objective(&ItemSet::new(s1.to_vec()), &ItemSet::new(s2.to_vec()))
            .unwrap()
    };
    let gain_small = lifted(&[0], &[1]) - lifted(&[0], &[]);
    let gain_large = lifted(&[0], &[0, 1]) - lifted(&[0], &[0]);
    let violated = gain_small < gain_large - TOL;
    if !violated {
        failures.push(format!(
            "lifted counterexample did not violate diminishing returns: {gain_small} vs {gain_large}"
        ));
    }
    verdict(
        "AC6",
        "diminishing returns and monotonicity; lifted objective violates it",
        &failures,
        format!("{triples} triples, lifted gains {gain_small} < {gain_large}"),
        start,
    );
}

#[test]
fn ac7_multi_candidate_extension() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for i in 0..10u64 {
        let family = FAMILIES[i as usize % FAMILIES.len()];
        let n = 4 + (i as usize % 3);
        let inst = generate(family, n, 1, 3, 7_000 + i, &GenParams::default()).unwrap();
        let mut previous = f64::NEG_INFINITY;
        for l in [2, 3] {
            let report = multi_enumeration_solve(&inst, l, &InnerSolver::exact()).unwrap();
            let opt = exact_multi_solve(&inst, l).unwrap().opt_value;
            if (report.objective - opt).abs() > TOL {
                failures.push(format!(
                    "fixture {i}, l={l}: {} != OPT_l {opt}",
                    report.objective
                ));
            }
            if report.objective < previous - TOL {
                failures.push(format!("fixture {i}: objective decreased at l={l}"));
            }
            previous = report.objective;
            if l == 2 {
                let pair = enumeration_solve(&inst, &InnerSolver::exact()).unwrap();
                if pair.sets != report.sets
                    || pair.objective.to_bits() != report.objective.to_bits()
                {
                    failures.push(format!(
                        "fixture {i}: l=2 differs from the pair enumeration"
                    ));
                }
            }
        }
    }
    verdict(
        "AC7",
        "l-candidate enumeration = exhaustive optimum for l in {2,3}",
        &failures,
        "10 fixtures, n <= 6, k = 1, m = 3".into(),
        start,
    );
}

fn run_cli(args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_persub"))
        .args(args)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn pipeline(dir: &Path, tag: &str, threads: usize) -> Vec<Vec<u8>> {
    let instance = dir.join(format!("{tag}-instance.json"));
    let inst = instance.to_str().unwrap();
    run_cli(&[
        "gen", "--family", "mixed", "--n", "7", "--k", "2", "--m", "5", "--seed", "99", "--out",
        inst,
    ]);
    let threads = threads.to_string();
    let runs: [(&str, Vec<&str>); 4] = [
        (
            "solve-enum",
            vec!["solve", inst, "--algo", "enum", "--inner", "greedy"],
        ),
        (
            "solve-sample",
            vec![
                "solve", inst, "--algo", "sample", "--inner", "exact", "-T", "12", "--seed", "4",
            ],
        ),
        (
            "solve-multi",
            vec![
                "solve", inst, "--algo", "multi", "--l", "3", "--inner", "greedy",
            ],
        ),
        (
            "compare",
            vec![
                "compare", inst, "--algo", "sample", "--inner", "greedy", "-T", "6", "--seed", "8",
            ],
        ),
    ];
    let mut files = vec![std::fs::read(&instance).unwrap()];
    for (name, mut args) in runs {
        let out = dir.join(format!("{tag}-{name}.json"));
        let out_str = out.to_str().unwrap().to_string();
        args.extend(["--threads", &threads, "--out", &out_str]);
        run_cli(&args);
        files.push(std::fs::read(&out).unwrap());
    }
    files
}

#[test]
fn ac8_cli_determinism() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let reference = pipeline(dir.path(), "seq", 1);
    let repeat = pipeline(dir.path(), "seq-again", 1);
    // Several multi-threaded pipelines at once.
    let parallel: Vec<Vec<Vec<u8>>> = (0..4)
        .into_par_iter()
        .map(|i| pipeline(dir.path(), &format!("par{i}"), 4))
        .collect();
    let mut failures = Vec::new();
    if repeat != reference {
        failures.push("repeated sequential pipeline differs".to_string());
    }
    for (i, run) in parallel.iter().enumerate() {
        if *run != reference {
            failures.push(format!("parallel pipeline {i} differs"));
        }
    }
    verdict(
        "AC8",
        "gen -> solve -> compare reports are byte-identical",
        &failures,
        format!("{} files x 6 pipelines", reference.len()),
        start,
    );
}
