//! Acceptance checks, one line per criterion.
//!
//! Each criterion prints PASS or FAIL with the measured numbers. Some
//! criteria cannot hold at the stated sizes; for those the expected failure
//! mode is pinned down exactly, and the run exits nonzero only when an
//! outcome differs from what is expected.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cubenet::canon;
use cubenet::iso::{self, CubeBase};
use cubenet::perc;
use cubenet::product::Family;
use cubenet::reliability;
use cubenet::uor::{self, TableMismatch, Verdict};
use cubenet::Graph;

struct Outcome {
    passed: bool,
    /// Whether this result is the anticipated one.
    as_expected: bool,
    detail: String,
}

fn pass_if(passed: bool, detail: String) -> Outcome {
    Outcome {
        passed,
        as_expected: passed,
        detail,
    }
}

/// A criterion known to fail; `matches` says whether it failed in the
/// anticipated way and nothing else went wrong.
fn known_failure(passed: bool, matches: bool, detail: String) -> Outcome {
    Outcome {
        passed,
        as_expected: !passed && matches,
        detail,
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn crossing_of(n: usize, m: usize) -> Option<f64> {
    match uor::find_uor(n, m).ok()?.verdict {
        Verdict::NoUor { crossings, .. } if crossings.len() == 1 => Some(crossings[0].p),
        _ => None,
    }
}

fn describe(d: &[TableMismatch]) -> String {
    d.iter()
        .map(|x| {
            format!(
                "m={}{} s_{}: computed {} published {}",
                x.m,
                x.variant.map(String::from).unwrap_or_default(),
                x.k.map_or("?".into(), |k| k.to_string()),
                x.computed.as_deref().unwrap_or("-"),
                x.published.as_deref().unwrap_or("-")
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let args = cubenet_cli::UorTableArgs { n: 5, max_m: None };
    let rows = cubenet_cli::table_for(&args).unwrap();
    let csv = cubenet_cli::render_table(&rows);
    let diffs = uor::compare_with_published(5, &rows).unwrap();
    let elapsed = t.elapsed();
    let has_examples = csv.contains("\n9,,9 36 82 111 75\n") && csv.contains("\n10,,10 45 120 205 222 125\n");
    pass_if(
        diffs.is_empty() && has_examples && elapsed < Duration::from_secs(10),
        format!("n=5 table: {} rows, {} differences, {}", rows.len(), diffs.len(), secs(elapsed)),
    )
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let rows = uor::uor_table(6, 15).unwrap();
    let diffs = uor::compare_with_published(6, &rows).unwrap();
    let root = crossing_of(6, 11);
    let elapsed = t.elapsed();
    let target = 1.0 - 2f64.sqrt() / 2.0;
    let root_ok = root.is_some_and(|p| (p - target).abs() < 1e-6);
    let split_ok = ['a', 'b'].iter().all(|&v| rows.iter().any(|r| r.m == 11 && r.variant == Some(v)));
    let fast = elapsed < Duration::from_secs(300);
    // The printed s_9 = 771 for m = 13 exceeds C(13, 9) = 715, so it cannot be a count.
    let only_typo = diffs.len() == 1
        && diffs[0].m == 13
        && diffs[0].k == Some(9)
        && diffs[0].published.as_deref() == Some("771")
        && diffs[0].computed.as_deref() == Some("711");
    known_failure(
        diffs.is_empty() && root_ok && split_ok && fast,
        only_typo && root_ok && split_ok && fast,
        format!(
            "n=6 table: {} rows, both m=11 rows {}; differences: [{}] (771 > C(13,9)=715); crossover {:.9} vs 1-sqrt(2)/2={target:.9}; {}",
            rows.len(),
            if split_ok { "present" } else { "missing" },
            describe(&diffs),
            root.unwrap_or(f64::NAN),
            secs(elapsed)
        ),
    )
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let rows = uor::uor_table(7, 21).unwrap();
    let diffs = uor::compare_with_published(7, &rows).unwrap();
    let root = crossing_of(7, 15);
    let elapsed = t.elapsed();
    let low_rows_exact = !diffs.iter().any(|d| d.m <= 16);
    let split_ok = ['a', 'b'].iter().all(|&v| rows.iter().any(|r| r.m == 15 && r.variant == Some(v)));
    let flagged = diffs.len() == 1 && diffs[0].m == 17 && diffs[0].published.as_deref() == Some("1226");
    let root_ok = root.is_some_and(|p| (p - 0.813).abs() <= 0.005);
    pass_if(
        low_rows_exact && split_ok && flagged && root_ok && elapsed < Duration::from_secs(3600),
        format!(
            "n=7 table: rows m<=16 exact={low_rows_exact}, both m=15 rows {}; flagged: [{}]; crossover {:.6}; {}",
            if split_ok { "present" } else { "missing" },
            describe(&diffs),
            root.unwrap_or(f64::NAN),
            secs(elapsed)
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut graphs = 0usize;
    let mut violations = Vec::new();
    for n in 2..=7 {
        for m in n - 1..=n * (n - 1) / 2 {
            for g in canon::enumerate_classes(n, m, true).unwrap().representatives {
                let c = reliability::reliability_coefficients(&g).unwrap();
                let trees = g.count_spanning_trees();
                let bridges = g.count_bridges();
                graphs += 1;
                if c.s[n - 1] != trees || c.s[m - 1] != num_bigint::BigUint::from(m - bridges) {
                    violations.push(format!("({n},{m}) {:?}", g.edges()));
                }
            }
        }
    }
    pass_if(
        violations.is_empty(),
        format!("{graphs} connected classes with n<=7, {} violations", violations.len()),
    )
}

fn criterion_5() -> Outcome {
    let counts: Vec<String> = (5..=7).map(|n| Graph::complete(n).count_spanning_trees().to_string()).collect();
    pass_if(
        counts == ["125", "1296", "16807"],
        format!("tau(K5,K6,K7) = {}", counts.join(", ")),
    )
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for (family, base, max_n) in [(Family::Q, CubeBase::Binary, 4), (Family::Q3, CubeBase::Ternary, 2)] {
        for n in 1..=max_n {
            let g = family.spec(n).unwrap().build();
            for m in 2..=g.vertex_count() {
                let oracle = iso::oracle_max_induced_edges(&g, m).unwrap() as u64;
                if oracle != iso::max_induced_edges(base, n, m as u64).unwrap() {
                    bad.push(format!("{family} n={n} m={m}"));
                }
            }
        }
    }
    let mut lemma_failures = 0usize;
    for base in [CubeBase::Binary, CubeBase::Ternary] {
        let prefix: Vec<u64> = (0..=8192).map(|m| iso::prefix_digit_sum(m, base)).collect();
        for l in 1..=4096usize {
            for k in 1..=l {
                if prefix[l + k] - prefix[l] < prefix[k] + k as u64 {
                    lemma_failures += 1;
                }
            }
        }
    }
    let elapsed = t.elapsed();
    pass_if(
        bad.is_empty() && lemma_failures == 0 && elapsed < Duration::from_secs(120),
        format!(
            "oracle mismatches: {}; segment lemma failures over 1<=k<=l<=4096 (both bases): {lemma_failures}; {}",
            bad.len(),
            secs(elapsed)
        ),
    )
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let trials = 20_000;
    let q12 = Family::Q.spec(12).unwrap().build();
    let at = |p: f64| perc::estimate_connectivity(&q12, p, trials, 7).unwrap();
    let (mid, low, high) = (at(0.5), at(0.4), at(0.6));
    let limit = (-1f64).exp();
    let mid_ok = (mid.estimate - limit).abs() <= 0.05;
    let low_ok = low.estimate < 0.05;
    let high_ok = high.estimate > 0.95;

    let q3_7 = Family::Q3.spec(7).unwrap().build();
    let p_star = (3f64.sqrt() - 1.0) / 3f64.sqrt();
    let noiso = perc::estimate_no_isolated(&q3_7, p_star, trials, 7).unwrap();
    let noiso_ok = (noiso.estimate - limit).abs() <= 0.06;

    let p3_8 = Family::P3.spec(8).unwrap().build();
    let mut mean_ok = true;
    let mut zs = Vec::new();
    for p in [0.3, 0.5, 0.58, 0.7] {
        let est = perc::estimate_isolated_count(&p3_8, p, trials, 7).unwrap();
        let exact = perc::isolated_moments_theoretical(Family::P3, 8, p).unwrap();
        let z = (est.estimate - exact.mean) / (exact.variance / trials as f64).sqrt();
        mean_ok &= z.abs() <= 4.0;
        zs.push(format!("{z:+.2}"));
    }
    let middle = perc::middle_component_probability(&p3_8, 0.67, trials, 7).unwrap();
    let middle_ok = middle.estimate < 0.05;
    let elapsed = t.elapsed();
    let fast = elapsed < Duration::from_secs(600);

    // With q = 0.4 the expected number of isolated vertices of Q^12 is
    // 4096 * 0.4^12 = 0.069, so P(connected) <= exp(-0.069) = 0.934 < 0.95.
    let isolated_bound = (-(4096.0 * 0.4f64.powi(12))).exp();
    known_failure(
        mid_ok && low_ok && high_ok && noiso_ok && mean_ok && middle_ok && fast,
        mid_ok && low_ok && !high_ok && high.estimate <= isolated_bound + 4.0 * high.stderr
            && noiso_ok && mean_ok && middle_ok && fast,
        format!(
            "Q^12 conn: p=.5 {:.4} (e^-1 {limit:.4}), p=.4 {:.4}, p=.6 {:.4} (needs >0.95; bound exp(-4096*0.4^12)={isolated_bound:.4}); \
             3Q^7 noiso {:.4}; P3^8 isolated z={}; middle@0.67 {:.4}; {}",
            mid.estimate,
            low.estimate,
            high.estimate,
            noiso.estimate,
            zs.join(","),
            middle.estimate,
            secs(elapsed)
        ),
    )
}

fn criterion_8() -> Outcome {
    let n = 12;
    let p = 1.0 - 0.5 * 1f64.powf(1.0 / n as f64);
    let g = Family::Q.spec(n).unwrap().build();
    let m = perc::empirical_factorial_moments(&g, p, 20_000, 2, 8).unwrap();
    let (e1, e2) = (m[1].estimate, m[2].estimate);
    pass_if(
        (e1 - 1.0).abs() <= 0.15 && (e2 - 1.0).abs() <= 0.15,
        format!("Q^12 at p={p}: E_1={e1:.4}, E_2={e2:.4}"),
    )
}

fn criterion_9() -> Outcome {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let trials = 20_000u64;
    let mut graphs = 0;
    let mut worst = 0f64;
    while graphs < 20 {
        let n = rng.random_range(4..=8usize);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|_| rng.random::<f64>() < 0.5).collect();
        if edges.is_empty() || edges.len() > 16 {
            continue;
        }
        let g = Graph::new(n, edges).unwrap();
        let c = reliability::reliability_coefficients(&g).unwrap();
        let p = rng.random_range(0.2..0.95);
        let exact = c.evaluate(p);
        let est = perc::estimate_connectivity(&g, p, trials, graphs as u64).unwrap();
        let sd = (exact * (1.0 - exact) / trials as f64).sqrt();
        let z = if sd > 0.0 { (est.estimate - exact).abs() / sd } else if est.estimate == exact { 0.0 } else { f64::INFINITY };
        worst = worst.max(z);
        graphs += 1;
    }
    pass_if(worst <= 4.0, format!("20 random graphs (m<=16): largest |z| = {worst:.2}"))
}

fn criterion_10() -> Outcome {
    let cmp = perc::compare_qn_vs_gnm(10, 0.45, 20_000, 10, false).unwrap();
    let margin = cmp.difference / cmp.pooled_stderr;
    // Percolated G(N, M) has Poisson-like retained degrees (mean 4.5) and
    // about 1024 * e^-4.5 = 11 isolated vertices; Q^10 has 1024 * 0.55^10 = 2.6.
    let gnm_isolated = 1024.0 * (-4.5f64).exp();
    let cube_isolated = 1024.0 * 0.55f64.powi(10);
    known_failure(
        margin > 4.0,
        margin < -4.0,
        format!(
            "p=0.45: G(1024,5120) {:.4} vs Q^10 {:.4}, difference {:+.4} = {margin:+.1} pooled SE \
             (expected isolated: random ~{gnm_isolated:.1}, cube {cube_isolated:.2})",
            cmp.random.estimate, cmp.cube.estimate, cmp.difference
        ),
    )
}

fn run_cli(args: &[&str], workers: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_cubenet"))
        .args(args)
        .env("CUBENET_WORKERS", workers)
        .output()
        .expect("spawn cubenet");
    assert!(out.status.success(), "cubenet {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let c4 = dir.path().join("c4.txt");
    std::fs::write(&c4, "4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap();
    let c4_spec = format!("file:{}", c4.display());
    let commands: Vec<Vec<&str>> = vec![
        vec!["iso", "--base", "3", "--n", "2", "--oracle"],
        vec!["perc", "--family", "q", "--n", "9", "--sweep", "0.4:0.6:0.1", "--trials", "3000", "--seed", "7", "--stat", "conn"],
        vec!["perc", "--family", "p3", "--n", "5", "--p", "0.5", "--trials", "2000", "--seed", "3", "--stat", "moments"],
        vec!["perc", "--family", "gnm", "--n", "6", "--p", "0.6", "--trials", "500", "--seed", "3", "--stat", "conn"],
        vec!["rel", "--graph", &c4_spec, "--p", "0.5"],
        vec!["uor", "--n", "6", "--m", "11"],
        vec!["uor-table", "--n", "6"],
        vec!["access", "--graph", "c:6", "--graph", "star:5", "--trials", "2000", "--seed", "5", "--weighted"],
    ];
    let mut differing = Vec::new();
    for cmd in &commands {
        let first = run_cli(cmd, "1");
        let again = run_cli(cmd, "1");
        let wide = run_cli(cmd, "4");
        if first != again || first != wide || first.is_empty() {
            differing.push(cmd[0]);
        }
    }
    pass_if(
        differing.is_empty(),
        format!(
            "{} commands run twice with 1 worker and once with 4: {} differ {:?}",
            commands.len(),
            differing.len(),
            differing
        ),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "table n=5", criterion_1),
        (2, "table n=6", criterion_2),
        (3, "table n=7", criterion_3),
        (4, "coefficient cross-checks", criterion_4),
        (5, "complete-graph tree counts", criterion_5),
        (6, "isoperimetric oracle and lemma", criterion_6),
        (7, "percolation limits", criterion_7),
        (8, "Poisson factorial moments", criterion_8),
        (9, "exact vs Monte Carlo", criterion_9),
        (10, "G(N,M) versus Q^10", criterion_10),
        (11, "CLI determinism", criterion_11),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (id, name, check) in criteria {
        let o = check();
        passed += usize::from(o.passed);
        let note = match (o.passed, o.as_expected) {
            (_, false) => {
                unexpected += 1;
                " (UNEXPECTED)"
            }
            (false, true) => " (known; see analysis)",
            (true, true) => "",
        };
        println!(
            "criterion {id:>2} {:<4} {name}: {}{note}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {passed}/11 passed, {unexpected} unexpected outcomes");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
