//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use greedy_sombor::{
    apply_switch, build_greedy, compute_q, count_trees, descend, enumerate_trees, prufer_decode,
    prufer_encode, pseudo_sombor, random_tree, score_assignment, sombor, sombor_spectrum,
    switch_sign, valid_plans, verify_theorem, DegreeSequence, LabeledTree, PruferCode, QBranch,
    SignOutcome, DEFAULT_CAP,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SO_TOLERANCE: f64 = 1e-9;
const STRICT_MARGIN: f64 = 1e-12;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sombor_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sombor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn sequences(lo: usize, hi: usize) -> Vec<DegreeSequence> {
    (lo..=hi).flat_map(DegreeSequence::all_realizable).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn figure_reproduction() -> Outcome {
    let out = sombor_cli(&["greedy", "-d", "4,3,3,2,1,1,1,1,1,1", "--format", "edges"]);
    ensure(out.status.success(), || {
        format!("exit {:?}", out.status.code())
    })?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let tree = LabeledTree::from_edge_list(&text).map_err(|e| e.to_string())?;
    let got: BTreeSet<(usize, usize)> = tree.edges().into_iter().collect();
    let want: BTreeSet<(usize, usize)> = [
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 6),
        (2, 7),
        (3, 8),
        (3, 9),
        (4, 10),
    ]
    .into_iter()
    .collect();
    ensure(got == want, || format!("edges {got:?}"))?;

    let d: DegreeSequence = "4,3,3,2,1,1,1,1,1,1".parse().unwrap();
    let mut best = Duration::MAX;
    for _ in 0..100 {
        let start = Instant::now();
        let t = build_greedy(&d).unwrap();
        best = best.min(start.elapsed());
        std::hint::black_box(t);
    }
    ensure(best < Duration::from_millis(1), || {
        format!("build took {best:?}")
    })?;
    Ok(format!("9 edges match, build {best:?}"))
}

fn theorem_sweep() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut max_trees = 0;
    for d in sequences(2, 9) {
        let r = verify_theorem::<f64>(&d, SO_TOLERANCE, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(
            r.theorem_holds && (r.greedy_so - r.z1).abs() <= SO_TOLERANCE,
            || format!("{d}: SO(GT) = {} but z1 = {}", r.greedy_so, r.z1),
        )?;
        ensure(r.greedy_is_argmin, || {
            format!("{d}: greedy tree missing from enumeration")
        })?;
        max_trees = max_trees.max(r.tree_count);
        checked += 1;
    }
    let elapsed = start.elapsed();
    ensure(max_trees <= 5040, || {
        format!("{max_trees} trees in one class")
    })?;
    ensure(elapsed < Duration::from_secs(120), || {
        format!("sweep took {elapsed:?}")
    })?;
    Ok(format!(
        "{checked} sequences, max {max_trees} trees, {elapsed:.2?}"
    ))
}

fn monotone_scores() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checks = 0u64;
    for d in sequences(2, 8) {
        let n = d.len();
        let bound = 1.0 / (2.0 * n as f64);
        // 1 - U lies in (0, 1].
        let qs: Vec<f64> = (0..20).map(|_| (1.0 - rng.gen::<f64>()) * bound).collect();
        for t in enumerate_trees(&d).unwrap() {
            for &q in &qs {
                let s = score_assignment(&t, q).unwrap();
                let v = s.scores();
                ensure(v.windows(2).all(|w| w[0] > w[1]), || {
                    format!("{d} q={q}: {v:?}")
                })?;
                ensure(v[n - 1] >= 0.5 - 1e-12, || {
                    format!("{d} q={q}: scr(n)={}", v[n - 1])
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (tree, q) pairs"))
}

fn pso_sandwich() -> Outcome {
    let mut trees = 0u64;
    let mut worst = f64::INFINITY;
    for d in sequences(2, 8) {
        let spectrum = sombor_spectrum::<f64>(&d, SO_TOLERANCE).unwrap();
        let Some(z2) = spectrum.z2() else { continue };
        let q = compute_q(&d, Some(&spectrum)).unwrap();
        ensure(q.branch == QBranch::Exact, || {
            format!("{d}: branch {:?}", q.branch)
        })?;
        let half_gap = (z2 - spectrum.z1()) / 2.0;
        for t in enumerate_trees(&d).unwrap() {
            let so = sombor::<f64>(&t);
            let pso = pseudo_sombor(&t, &score_assignment(&t, q.value).unwrap()).unwrap();
            let lower = pso - (so - half_gap);
            let upper = so - pso;
            worst = worst.min(lower).min(upper);
            ensure(lower > STRICT_MARGIN && upper > STRICT_MARGIN, || {
                format!("{d} {:?}: SO={so} pSO={pso} half-gap={half_gap}", t.edges())
            })?;
            trees += 1;
        }
    }
    Ok(format!("{trees} trees, smallest margin {worst:.3e}"))
}

fn argmin_transfer() -> Outcome {
    let mut classes = 0;
    for d in sequences(2, 8) {
        let spectrum = sombor_spectrum::<f64>(&d, SO_TOLERANCE).unwrap();
        let q = compute_q(&d, Some(&spectrum)).unwrap();
        let evaluated: Vec<(f64, f64)> = enumerate_trees(&d)
            .unwrap()
            .map(|t| {
                let s = score_assignment(&t, q.value).unwrap();
                (pseudo_sombor(&t, &s).unwrap(), sombor::<f64>(&t))
            })
            .collect();
        let min_pso = evaluated.iter().map(|e| e.0).fold(f64::INFINITY, f64::min);
        for &(pso, so) in &evaluated {
            if pso <= min_pso + STRICT_MARGIN {
                ensure((so - spectrum.z1()).abs() <= SO_TOLERANCE, || {
                    format!("{d}: pSO-argmin has SO {so}, z1 = {}", spectrum.z1())
                })?;
            }
        }
        classes += 1;
    }
    Ok(format!("{classes} sequences"))
}

fn switch_sign_rule() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pool = sequences(4, 9);
    let mut matched = 0;
    while matched < 10_000 {
        let d = &pool[rng.gen_range(0..pool.len())];
        let t = random_tree(d, &mut rng).unwrap();
        let plans = valid_plans(&t);
        if plans.is_empty() {
            continue;
        }
        let plan = plans[rng.gen_range(0..plans.len())];
        let q = (1.0 - rng.gen::<f64>()) / (2.0 * d.len() as f64);
        let s = score_assignment(&t, q).unwrap();
        let t1 = apply_switch(&t, &plan).unwrap();
        let diff = pseudo_sombor(&t, &s).unwrap() - pseudo_sombor(&t1, &s).unwrap();
        let sign = switch_sign(&t, &plan, &s).unwrap();
        let direct = if diff > 0.0 {
            SignOutcome::Decrease
        } else if diff < 0.0 {
            SignOutcome::Increase
        } else {
            SignOutcome::Tie
        };
        ensure(sign.outcome != SignOutcome::Tie, || {
            format!("tie on {plan:?}")
        })?;
        ensure(sign.outcome == direct, || {
            format!(
                "{d} {:?} {plan:?}: reported {:?}, direct {diff}",
                t.edges(),
                sign.outcome
            )
        })?;
        matched += 1;
    }
    Ok(format!("{matched}/10000 signs match"))
}

fn descent() -> Outcome {
    let mut starts = 0u64;
    let mut longest = 0;
    let mut check =
        |t: &LabeledTree, d: &DegreeSequence, greedy: &LabeledTree| -> Result<(), String> {
            let q = 1.0 / (2.0 * d.len() as f64);
            let (end, trace) = descend(t, q).map_err(|e| format!("{d} {:?}: {e}", t.edges()))?;
            ensure(&end == greedy, || {
                format!("{d}: terminal {:?}", end.edges())
            })?;
            ensure(
                trace.steps.iter().all(|s| s.pso_after < s.pso_before),
                || format!("{d}: non-decreasing step"),
            )?;
            longest = longest.max(trace.steps.len());
            starts += 1;
            Ok(())
        };
    for d in sequences(1, 8) {
        let greedy = build_greedy(&d).unwrap();
        for t in enumerate_trees(&d).unwrap() {
            check(&t, &d, &greedy)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in sequences(10, 12) {
        let greedy = build_greedy(&d).unwrap();
        for _ in 0..100 {
            let t = random_tree(&d, &mut rng).unwrap();
            check(&t, &d, &greedy)?;
        }
    }
    Ok(format!("{starts} starts, longest descent {longest} steps"))
}

fn prufer_oracle() -> Outcome {
    let mut trees = 0u64;
    for n in 2..=7usize {
        let total = n.pow(n as u32 - 2);
        let mut seen = BTreeSet::new();
        for index in 0..total {
            // Mixed-radix digits of `index` give every code exactly once.
            let mut rest = index;
            let code: Vec<usize> = (0..n - 2)
                .map(|_| {
                    let digit = rest % n;
                    rest /= n;
                    digit + 1
                })
                .collect();
            let code = PruferCode::new(n, code).unwrap();
            let t = prufer_decode(&code);
            ensure(prufer_encode(&t).unwrap() == code, || {
                format!("encode∘decode on {code:?}")
            })?;
            ensure(prufer_decode(&prufer_encode(&t).unwrap()) == t, || {
                format!("decode∘encode on {:?}", t.edges())
            })?;
            seen.insert(t.edges());
            trees += 1;
        }
        ensure(seen.len() == total, || {
            format!("n={n}: {} distinct trees", seen.len())
        })?;
    }
    let factorial = |k: usize| (1..=k as u128).product::<u128>();
    for d in sequences(2, 9) {
        let formula = factorial(d.len() - 2)
            / d.degrees()
                .iter()
                .map(|&x| factorial(x - 1))
                .product::<u128>();
        let counted = enumerate_trees(&d).unwrap().count() as u128;
        ensure(
            counted == formula && count_trees(&d).unwrap() == formula,
            || format!("{d}: counted {counted}, formula {formula}"),
        )?;
    }
    Ok(format!(
        "{trees} labeled trees round-trip; counts match for n <= 9"
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let tree = dir.path().join("tree.txt");
    fs::write(&tree, "1 2\n2 3\n3 4\n1 5\n1 6\n").unwrap();
    let t = tree.to_str().unwrap();
    let trace = dir.path().join("trace.json");
    let tr = trace.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["greedy", "-d", "4,3,3,2,1,1,1,1,1,1", "--format", "edges"],
        vec!["greedy", "-d", "4,3,3,2,1,1,1,1,1,1", "--format", "json"],
        vec![
            "greedy",
            "-d",
            "4,3,3,2,1,1,1,1,1,1",
            "--format",
            "dot",
            "--annotate",
        ],
        vec!["index", t, "--q", "auto"],
        vec!["verify", "-d", "3,2,2,1,1,1"],
        vec!["verify", "--sweep", "--max-n", "8", "--format", "json"],
        vec!["descend", t, "--trace-json", tr],
        vec![
            "descend",
            "--random",
            "-d",
            "4,3,3,2,1,1,1,1,1,1",
            "--seed",
            "7",
            "--trace-json",
            tr,
        ],
        vec!["enumerate", "-d", "3,3,2,1,1,1,1", "--list"],
    ];
    for args in &commands {
        let first = sombor_cli(args);
        let first_trace = fs::read(&trace).ok();
        let second = sombor_cli(args);
        let second_trace = fs::read(&trace).ok();
        ensure(first.status.success(), || {
            format!("{args:?} exit {:?}", first.status.code())
        })?;
        ensure(
            first.stdout == second.stdout && first.status == second.status,
            || format!("{args:?}: stdout differs"),
        )?;
        ensure(first_trace == second_trace, || {
            format!("{args:?}: trace differs")
        })?;
    }
    Ok(format!("{} commands byte-identical", commands.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 figure reproduction", figure_reproduction),
        ("2 theorem sweep n <= 9", theorem_sweep),
        ("3 score monotonicity", monotone_scores),
        ("4 pseudo-Sombor sandwich", pso_sandwich),
        ("5 argmin transfer", argmin_transfer),
        ("6 switch sign rule", switch_sign_rule),
        ("7 descent to greedy tree", descent),
        ("8 Prüfer oracle", prufer_oracle),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
