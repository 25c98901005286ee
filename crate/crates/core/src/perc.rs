//! Edge percolation experiments.
//!
//! Each trial keeps every edge independently with probability `p` (one
//! uniform draw per edge, in edge-index order, from the trial's own stream)
//! and records what the retained subgraph looks like. Outcomes are
//! collected in trial order and reduced sequentially, so estimates are
//! bit-identical for any number of worker threads.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::product::Family;
use crate::rng::{domain, stream, trial_rng};
use crate::unionfind::DisjointSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Statistic {
    /// The retained subgraph is connected.
    Connected,
    /// The retained subgraph has minimum degree at least one.
    NoIsolated,
    /// Some component has between 2 and |V|/2 vertices.
    MiddleComponent,
    /// No isolated vertex, yet disconnected.
    ConnectivityGap,
    /// Mean number of isolated vertices.
    IsolatedCount,
    /// Mean of the r-th falling factorial of the isolated count.
    FactorialMoment(u8),
    /// Mean number of retained edges.
    KeptEdges,
}

impl Statistic {
    pub fn name(&self) -> String {
        match self {
            Statistic::Connected => "conn".into(),
            Statistic::NoIsolated => "noiso".into(),
            Statistic::MiddleComponent => "middle".into(),
            Statistic::ConnectivityGap => "gap".into(),
            Statistic::IsolatedCount => "isolated".into(),
            Statistic::FactorialMoment(r) => format!("e{r}"),
            Statistic::KeptEdges => "kept".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PercolationEstimate {
    pub statistic: Statistic,
    pub p: f64,
    pub estimate: f64,
    /// Binomial standard error for indicator statistics, sample standard
    /// deviation over sqrt(trials) for count statistics.
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
    pub vertices: usize,
    pub edges: usize,
}

impl PercolationEstimate {
    /// Number of standard errors separating the estimate from `value`.
    /// Zero standard error counts as infinitely precise.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = self.estimate - value;
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }

    pub fn within_sigmas(&self, value: f64, k: f64) -> bool {
        self.z_score(value).abs() <= k
    }
}

/// What a single trial saw.
#[derive(Clone, Copy, Debug, Default)]
struct Outcome {
    connected: bool,
    isolated: u32,
    middle: bool,
    kept: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Depth {
    /// Only connectivity; stops drawing once everything is joined.
    ConnectivityOnly,
    /// Everything, no early exit.
    Full,
}

struct Scratch {
    ds: DisjointSet,
    degree: Vec<u32>,
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    Ok(())
}

/// Percolates `g` once with draws from `rng`.
fn percolate_once(
    g: &Graph,
    p: f64,
    rng: &mut ChaCha8Rng,
    depth: Depth,
    scratch: &mut Scratch,
) -> Outcome {
    let n = g.vertex_count();
    scratch.ds.reset(n);
    let track_degrees = depth == Depth::Full;
    if track_degrees {
        scratch.degree.clear();
        scratch.degree.resize(n, 0);
    }
    let mut kept = 0u32;
    for &(u, v) in g.edges() {
        if rng.random::<f64>() < p {
            kept += 1;
            scratch.ds.union(u as usize, v as usize);
            if track_degrees {
                scratch.degree[u as usize] += 1;
                scratch.degree[v as usize] += 1;
            } else if scratch.ds.components() == 1 {
                break;
            }
        }
    }
    let connected = scratch.ds.components() <= 1;
    if !track_degrees {
        return Outcome {
            connected,
            kept,
            ..Outcome::default()
        };
    }
    let isolated = scratch.degree.iter().filter(|&&d| d == 0).count() as u32;
    let half = n / 2;
    let middle = !connected
        && scratch
            .ds
            .set_sizes()
            .into_iter()
            .any(|s| (2..=half).contains(&s));
    Outcome {
        connected,
        isolated,
        middle,
        kept,
    }
}

fn run_trials(g: &Graph, p: f64, trials: u64, seed: u64, depth: Depth) -> Vec<Outcome> {
    let n = g.vertex_count();
    (0..trials)
        .into_par_iter()
        .map_init(
            || Scratch {
                ds: DisjointSet::new(n),
                degree: Vec::new(),
            },
            |scratch, t| percolate_once(g, p, &mut trial_rng(seed, t), depth, scratch),
        )
        .collect()
}

fn bernoulli(
    statistic: Statistic,
    hits: u64,
    trials: u64,
    p: f64,
    seed: u64,
    g: &Graph,
) -> PercolationEstimate {
    let est = hits as f64 / trials as f64;
    PercolationEstimate {
        statistic,
        p,
        estimate: est,
        stderr: (est * (1.0 - est) / trials as f64).sqrt(),
        trials,
        seed,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
    }
}

fn sample_mean<I: IntoIterator<Item = f64>>(
    statistic: Statistic,
    values: I,
    p: f64,
    seed: u64,
    g: &Graph,
) -> PercolationEstimate {
    let (mut count, mut mean, mut m2) = (0u64, 0.0f64, 0.0f64);
    for x in values {
        count += 1;
        let delta = x - mean;
        mean += delta / count as f64;
        m2 += delta * (x - mean);
    }
    let variance = if count > 1 { m2 / (count - 1) as f64 } else { 0.0 };
    PercolationEstimate {
        statistic,
        p,
        estimate: mean,
        stderr: (variance / count as f64).sqrt(),
        trials: count,
        seed,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
    }
}

/// One percolated copy of `g`: the same draws as trial 0 of every estimator.
pub fn sample_subgraph(g: &Graph, p: f64, seed: u64) -> Result<Graph> {
    check_p(p)?;
    let mut rng = trial_rng(seed, 0);
    Ok(g.spanning_subgraph(|_| rng.random::<f64>() < p))
}

pub fn estimate_connectivity(g: &Graph, p: f64, trials: u64, seed: u64) -> Result<PercolationEstimate> {
    check_p(p)?;
    check_trials(trials)?;
    let hits = run_trials(g, p, trials, seed, Depth::ConnectivityOnly)
        .iter()
        .filter(|o| o.connected)
        .count() as u64;
    Ok(bernoulli(Statistic::Connected, hits, trials, p, seed, g))
}

pub fn estimate_no_isolated(g: &Graph, p: f64, trials: u64, seed: u64) -> Result<PercolationEstimate> {
    Ok(summary(g, p, trials, seed)?.no_isolated)
}

pub fn middle_component_probability(
    g: &Graph,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<PercolationEstimate> {
    Ok(summary(g, p, trials, seed)?.middle)
}

pub fn estimate_isolated_count(g: &Graph, p: f64, trials: u64, seed: u64) -> Result<PercolationEstimate> {
    Ok(summary(g, p, trials, seed)?.isolated)
}

pub fn estimate_kept_edges(g: &Graph, p: f64, trials: u64, seed: u64) -> Result<PercolationEstimate> {
    Ok(summary(g, p, trials, seed)?.kept)
}

/// Every per-trial statistic, estimated from one shared set of samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PercolationSummary {
    pub connected: PercolationEstimate,
    pub no_isolated: PercolationEstimate,
    pub middle: PercolationEstimate,
    pub gap: PercolationEstimate,
    pub isolated: PercolationEstimate,
    pub kept: PercolationEstimate,
}

pub fn summary(g: &Graph, p: f64, trials: u64, seed: u64) -> Result<PercolationSummary> {
    check_p(p)?;
    check_trials(trials)?;
    let outcomes = run_trials(g, p, trials, seed, Depth::Full);
    let count = |f: &dyn Fn(&Outcome) -> bool| outcomes.iter().filter(|o| f(o)).count() as u64;
    Ok(PercolationSummary {
        connected: bernoulli(Statistic::Connected, count(&|o| o.connected), trials, p, seed, g),
        no_isolated: bernoulli(Statistic::NoIsolated, count(&|o| o.isolated == 0), trials, p, seed, g),
        middle: bernoulli(Statistic::MiddleComponent, count(&|o| o.middle), trials, p, seed, g),
        gap: bernoulli(
            Statistic::ConnectivityGap,
            count(&|o| o.isolated == 0 && !o.connected),
            trials,
            p,
            seed,
            g,
        ),
        isolated: sample_mean(
            Statistic::IsolatedCount,
            outcomes.iter().map(|o| o.isolated as f64),
            p,
            seed,
            g,
        ),
        kept: sample_mean(
            Statistic::KeptEdges,
            outcomes.iter().map(|o| o.kept as f64),
            p,
            seed,
            g,
        ),
    })
}

fn falling_factorial(x: u32, r: u8) -> f64 {
    (0..r as u32).map(|i| x.saturating_sub(i) as f64).product()
}

/// Monte Carlo estimates of `E[X (X-1) ... (X-r+1)]` for the isolated-vertex
/// count `X`, for every `r` in `0..=r_max`.
pub fn empirical_factorial_moments(
    g: &Graph,
    p: f64,
    trials: u64,
    r_max: u8,
    seed: u64,
) -> Result<Vec<PercolationEstimate>> {
    check_p(p)?;
    check_trials(trials)?;
    if r_max > 4 {
        return Err(Error::OutOfRange(format!("factorial moments go up to r=4, asked for {r_max}")));
    }
    let outcomes = run_trials(g, p, trials, seed, Depth::Full);
    Ok((0..=r_max)
        .map(|r| {
            sample_mean(
                Statistic::FactorialMoment(r),
                outcomes.iter().map(|o| falling_factorial(o.isolated, r)),
                p,
                seed,
                g,
            )
        })
        .collect())
}

/// Closed-form mean and variance of the isolated-vertex count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsolatedMoments {
    pub family: Option<Family>,
    pub n: u32,
    pub p: f64,
    pub mean: f64,
    pub variance: f64,
    /// Poisson rate the isolated count is compared against; equal to the mean.
    pub lambda: f64,
}

/// Mean and variance of the number of isolated vertices of the percolated
/// `Q^n`, `3Q^n` or `P3^n`.
///
/// Only vertices that share an edge are correlated: for adjacent `u, v`,
/// `Cov = p (1-p)^{deg u + deg v - 1}`. Summing over the degree classes of
/// each family gives
///
/// * `Q^n`:  `mu = 2^n q^n`, `Var = mu - mu q^n + mu n p q^{n-1}`
/// * `3Q^n`: `mu = 3^n q^{2n}`, `Var = mu - mu q^{2n} + mu 2n p q^{2n-1}`
/// * `P3^n`: `mu = (q (3-p))^n`,
///   `Var = mu - q^{2n} (2+q^2)^n + 4 n p q^{2n} (2+q^2)^{n-1}`
///
/// with `q = 1 - p`. The forms avoid dividing by `q`, so `p = 1` is exact.
pub fn isolated_moments_theoretical(family: Family, n: u32, p: f64) -> Result<IsolatedMoments> {
    check_p(p)?;
    if n == 0 {
        return Err(Error::OutOfRange("exponent must be at least 1".into()));
    }
    let q = 1.0 - p;
    let nf = n as f64;
    let ni = n as i32;
    let (mean, variance) = match family {
        Family::Q => {
            let mu = 2f64.powi(ni) * q.powi(ni);
            (mu, mu - mu * q.powi(ni) + mu * nf * p * q.powi(ni - 1))
        }
        Family::Q3 => {
            let mu = 3f64.powi(ni) * q.powi(2 * ni);
            (mu, mu - mu * q.powi(2 * ni) + mu * 2.0 * nf * p * q.powi(2 * ni - 1))
        }
        Family::P3 => {
            let mu = (q * (3.0 - p)).powi(ni);
            let s = 2.0 + q * q;
            let var = mu - q.powi(2 * ni) * s.powi(ni) + 4.0 * nf * p * q.powi(2 * ni) * s.powi(ni - 1);
            (mu, var)
        }
    };
    Ok(IsolatedMoments {
        family: Some(family),
        n,
        p,
        mean,
        variance: variance.max(0.0),
        lambda: mean,
    })
}

/// Mean and variance of the isolated count for an arbitrary graph, summed
/// vertex by vertex and edge by edge.
pub fn isolated_moments_exact(g: &Graph, p: f64) -> Result<IsolatedMoments> {
    check_p(p)?;
    let q = 1.0 - p;
    let mut mean = 0.0;
    let mut variance = 0.0;
    for v in 0..g.vertex_count() {
        let iso = q.powi(g.degree(v) as i32);
        mean += iso;
        variance += iso * (1.0 - iso);
    }
    for &(u, v) in g.edges() {
        let d = g.degree(u as usize) + g.degree(v as usize);
        variance += 2.0 * p * q.powi(d as i32 - 1);
    }
    Ok(IsolatedMoments {
        family: None,
        n: g.vertex_count() as u32,
        p,
        mean,
        variance,
        lambda: mean,
    })
}

/// Percolation parameter at which the expected isolated count of the
/// `n`-th power equals `lambda`.
pub fn p_for_isolated_mean(family: Family, n: u32, lambda: f64) -> Result<f64> {
    if n == 0 || lambda <= 0.0 {
        return Err(Error::OutOfRange(format!("need n >= 1 and lambda > 0, got n={n} lambda={lambda}")));
    }
    let root = lambda.powf(1.0 / n as f64);
    let p = match family {
        Family::Q => 1.0 - root / 2.0,
        Family::Q3 => 1.0 - (root / 3.0).sqrt(),
        Family::P3 => 2.0 - (1.0 + root).sqrt(),
    };
    check_p(p)?;
    Ok(p)
}

/// Asymptotic connectivity threshold of each family.
pub fn critical_value(family: Family) -> f64 {
    match family {
        Family::Q => 0.5,
        Family::Q3 => (3f64.sqrt() - 1.0) / 3f64.sqrt(),
        Family::P3 => 2.0 - 2f64.sqrt(),
    }
}

/// Lower end of the range where `P3^n` is proven connected with high probability.
pub const P3_PROVEN_CONNECTED_FROM: f64 = 0.67;

fn pair_from_index(k: u64, n: u64) -> (u32, u32) {
    // rows of the upper triangle: row u holds n - 1 - u pairs
    let mut u = {
        let nf = n as f64;
        let disc = (2.0 * nf - 1.0).powi(2) - 8.0 * k as f64;
        ((2.0 * nf - 1.0 - disc.max(0.0).sqrt()) / 2.0).floor() as u64
    };
    let start = |u: u64| u * (2 * n - u - 1) / 2;
    while u > 0 && start(u) > k {
        u -= 1;
    }
    while start(u + 1) <= k {
        u += 1;
    }
    let v = u + 1 + (k - start(u));
    (u as u32, v as u32)
}

fn gnm_with(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let pairs = (n as u64) * (n as u64).saturating_sub(1) / 2;
    if m as u64 > pairs {
        return Err(Error::Precondition(format!(
            "{m} edges do not fit in a simple graph on {n} vertices"
        )));
    }
    // Floyd's sampler: a uniform m-subset of pair indices.
    let mut chosen = std::collections::HashSet::with_capacity(m);
    for j in pairs - m as u64..pairs {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut idx: Vec<u64> = chosen.into_iter().collect();
    idx.sort_unstable();
    let edges = idx.into_iter().map(|k| pair_from_index(k, n as u64)).collect();
    Ok(Graph::from_sorted_edges(n, edges))
}

/// Uniform random simple graph with `n` vertices and `m` edges.
pub fn sample_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    gnm_with(n, m, &mut stream(seed, domain::GNM_STRUCTURE, 0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GnmComparison {
    pub n: u32,
    pub cube: PercolationEstimate,
    pub random: PercolationEstimate,
    /// `random - cube`.
    pub difference: f64,
    pub pooled_stderr: f64,
}

/// Connectivity of the percolated `Q^n` against percolated uniform random
/// graphs with the same vertex and edge counts, a fresh graph per trial.
/// With `common_numbers` both percolations of trial `t` consume the same
/// uniforms edge by edge (both graphs have `n 2^{n-1}` edges).
pub fn compare_qn_vs_gnm(
    n: u32,
    p: f64,
    trials: u64,
    seed: u64,
    common_numbers: bool,
) -> Result<GnmComparison> {
    check_p(p)?;
    check_trials(trials)?;
    let cube_graph = Family::Q.spec(n)?.build();
    let cube = estimate_connectivity(&cube_graph, p, trials, seed)?;
    let (vertices, edges) = (cube_graph.vertex_count(), cube_graph.edge_count());
    let hits: Vec<bool> = (0..trials)
        .into_par_iter()
        .map_init(
            || DisjointSet::new(vertices),
            |ds, t| -> Result<bool> {
                let g = gnm_with(vertices, edges, &mut stream(seed, domain::GNM_STRUCTURE, t))?;
                let mut perc = if common_numbers {
                    trial_rng(seed, t)
                } else {
                    stream(seed, domain::GNM_PERCOLATION, t)
                };
                ds.reset(vertices);
                for &(u, v) in g.edges() {
                    if perc.random::<f64>() < p {
                        ds.union(u as usize, v as usize);
                    }
                }
                Ok(ds.components() <= 1)
            },
        )
        .collect::<Result<_>>()?;
    let random = bernoulli(
        Statistic::Connected,
        hits.iter().filter(|&&h| h).count() as u64,
        trials,
        p,
        seed,
        &cube_graph,
    );
    Ok(GnmComparison {
        n,
        difference: random.estimate - cube.estimate,
        pooled_stderr: (cube.stderr.powi(2) + random.stderr.powi(2)).sqrt(),
        cube,
        random,
    })
}

/// Connectivity of `G(N, p')` with `p' = (ln N + c) / N`.
pub fn gnp_connectivity(vertices: usize, c: f64, trials: u64, seed: u64) -> Result<PercolationEstimate> {
    check_trials(trials)?;
    if vertices < 2 {
        return Err(Error::Precondition("G(N, p) experiment needs N >= 2".into()));
    }
    let nf = vertices as f64;
    let p = ((nf.ln() + c) / nf).clamp(0.0, 1.0);
    let pairs = (vertices as u64) * (vertices as u64 - 1) / 2;
    let hits: Vec<bool> = (0..trials)
        .into_par_iter()
        .map_init(
            || DisjointSet::new(vertices),
            |ds, t| {
                let mut rng = stream(seed, domain::GNP, t);
                ds.reset(vertices);
                if p >= 1.0 {
                    return true;
                }
                // geometric skips between retained pairs
                let log_q = (1.0 - p).ln();
                let mut k: u64 = 0;
                loop {
                    let u: f64 = rng.random();
                    let skip = ((1.0 - u).ln() / log_q).floor();
                    if !skip.is_finite() || skip >= (pairs - k) as f64 {
                        break;
                    }
                    k += skip as u64;
                    let (a, b) = pair_from_index(k, vertices as u64);
                    ds.union(a as usize, b as usize);
                    k += 1;
                    if k >= pairs {
                        break;
                    }
                }
                ds.components() <= 1
            },
        )
        .collect();
    let est = hits.iter().filter(|&&h| h).count() as f64 / trials as f64;
    Ok(PercolationEstimate {
        statistic: Statistic::Connected,
        p,
        estimate: est,
        stderr: (est * (1.0 - est) / trials as f64).sqrt(),
        trials,
        seed,
        vertices,
        edges: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::ProductSpec;

    #[test]
    fn extremes() {
        let q4 = ProductSpec::hypercube(4).unwrap().build();
        assert_eq!(sample_subgraph(&q4, 1.0, 3).unwrap(), q4);
        assert_eq!(sample_subgraph(&q4, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(middle_component_probability(&q4, 0.0, 50, 1).unwrap().estimate, 0.0);
        assert_eq!(estimate_connectivity(&q4, 1.0, 20, 1).unwrap().estimate, 1.0);
        assert!(estimate_connectivity(&q4, 1.5, 20, 1).is_err());
        assert!(estimate_connectivity(&q4, 0.5, 0, 1).is_err());
    }

    #[test]
    fn zeroth_moment_is_one() {
        let g = Graph::cycle(5).unwrap();
        let m = empirical_factorial_moments(&g, 0.3, 100, 2, 9).unwrap();
        assert_eq!(m[0].estimate, 1.0);
        assert_eq!(m[0].stderr, 0.0);
        assert!(empirical_factorial_moments(&g, 0.3, 100, 5, 9).is_err());
    }

    #[test]
    fn sample_subgraph_matches_trial_zero() {
        let g = ProductSpec::hypercube(5).unwrap().build();
        let sub = sample_subgraph(&g, 0.5, 11).unwrap();
        let one = summary(&g, 0.5, 1, 11).unwrap();
        assert_eq!(one.kept.estimate, sub.edge_count() as f64);
        assert_eq!(one.connected.estimate == 1.0, sub.is_connected());
    }

    #[test]
    fn pair_unranking_is_lexicographic() {
        for n in 2..12u64 {
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    assert_eq!(pair_from_index(k, n), (u as u32, v as u32));
                    k += 1;
                }
            }
        }
    }

    #[test]
    fn gnm_basics() {
        assert_eq!(sample_gnm(4, 6, 5).unwrap(), Graph::complete(4));
        let g = sample_gnm(50, 100, 5).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (50, 100));
        assert!(sample_gnm(4, 7, 5).is_err());
    }

    #[test]
    fn critical_values() {
        assert_eq!(critical_value(Family::Q), 0.5);
        assert!((critical_value(Family::Q3) - 0.422_649_730_810_374).abs() < 1e-12);
        assert!((critical_value(Family::P3) - 0.585_786_437_626_905).abs() < 1e-12);
        for fam in [Family::Q, Family::Q3, Family::P3] {
            for n in [3, 7, 12] {
                let p = p_for_isolated_mean(fam, n, 1.0).unwrap();
                let mu = isolated_moments_theoretical(fam, n, p).unwrap().mean;
                assert!((mu - 1.0).abs() < 1e-9, "{fam} {n} {mu}");
            }
        }
    }

    #[test]
    fn theoretical_moments() {
        let p3 = isolated_moments_theoretical(Family::P3, 1, 0.5).unwrap();
        assert!((p3.mean - 1.25).abs() < 1e-12);
        assert!((p3.variance - 1.1875).abs() < 1e-12);
        let q = isolated_moments_theoretical(Family::Q, 10, 0.5).unwrap();
        assert!((q.mean - 1.0).abs() < 1e-12);
        let q3 = isolated_moments_theoretical(Family::Q3, 5, critical_value(Family::Q3)).unwrap();
        assert!((q3.mean - 1.0).abs() < 1e-9);
        let full = isolated_moments_theoretical(Family::P3, 4, 1.0).unwrap();
        assert_eq!((full.mean, full.variance), (0.0, 0.0));
    }

    #[test]
    fn closed_forms_match_exact_sums() {
        for fam in [Family::Q, Family::Q3, Family::P3] {
            for n in 1..=6 {
                let g = fam.spec(n).unwrap().build();
                for p in [0.1, 0.3, 0.5, 0.7, 0.95] {
                    let closed = isolated_moments_theoretical(fam, n, p).unwrap();
                    let exact = isolated_moments_exact(&g, p).unwrap();
                    let tol = 1e-9 * exact.variance.max(1.0);
                    assert!((closed.mean - exact.mean).abs() < tol, "{fam} {n} {p}");
                    assert!(
                        (closed.variance - exact.variance).abs() < tol,
                        "{fam} n={n} p={p}: {} vs {}",
                        closed.variance,
                        exact.variance
                    );
                }
            }
        }
    }
}
