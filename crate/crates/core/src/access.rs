//! Random accessibility: how many steps a simple random walk needs to
//! reach `j` vertices other than its starting point.
//!
//! One walk serves every `j`, since the milestones are nested: the step at
//! which the count of new vertices first reaches `j` is recorded for each
//! `j` on the way to `n - 1`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{domain, stream};

/// Largest graph accepted by the exact oracle (states are `n * 2^n`).
pub const EXACT_VERTEX_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StartPolicy {
    Fixed(usize),
    /// Start at `v` with probability `deg(v) / 2m`.
    DegreeWeighted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AccessibilityEstimate {
    pub j: usize,
    pub policy: StartPolicy,
    pub mean: f64,
    /// Unbiased sample variance of `X_j`.
    pub variance: f64,
    /// Standard error of `mean`.
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

fn check(g: &Graph, policy: StartPolicy) -> Result<()> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "random accessibility needs at least 2 vertices, got {n}"
        )));
    }
    if !g.is_connected() {
        return Err(Error::Precondition(
            "random accessibility needs a connected graph; some vertices are unreachable".into(),
        ));
    }
    if let StartPolicy::Fixed(v) = policy {
        if v >= n {
            return Err(Error::OutOfRange(format!("start vertex {v} not in 0..{n}")));
        }
    }
    Ok(())
}

/// Walks from the chosen start until `target` new vertices are seen,
/// writing the step count at each milestone into `steps[j - 1]`.
fn walk<R: Rng>(
    g: &Graph,
    policy: StartPolicy,
    target: usize,
    rng: &mut R,
    seen: &mut [u64],
    stamp: u64,
    steps: &mut [u64],
) {
    let mut at = match policy {
        StartPolicy::Fixed(v) => v,
        StartPolicy::DegreeWeighted => {
            let (u, v) = g.edge(rng.random_range(0..g.edge_count()));
            if rng.random::<bool>() {
                u
            } else {
                v
            }
        }
    };
    seen[at] = stamp;
    let mut new = 0;
    let mut t = 0u64;
    while new < target {
        let nbrs = g.incident(at);
        at = nbrs[rng.random_range(0..nbrs.len())].0 as usize;
        t += 1;
        if seen[at] != stamp {
            seen[at] = stamp;
            steps[new] = t;
            new += 1;
        }
    }
}

fn run(g: &Graph, policy: StartPolicy, target: usize, trials: u64, seed: u64) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    (0..trials)
        .into_par_iter()
        .map_init(
            || vec![0u64; n],
            |seen, t| {
                let mut steps = vec![0u64; target];
                let mut rng = stream(seed, domain::WALK, t);
                walk(g, policy, target, &mut rng, seen, t + 1, &mut steps);
                steps
            },
        )
        .collect()
}

fn aggregate(
    samples: impl Iterator<Item = u64>,
    j: usize,
    policy: StartPolicy,
    trials: u64,
    seed: u64,
) -> AccessibilityEstimate {
    let (mut sum, mut sq) = (0u128, 0u128);
    for x in samples {
        sum += u128::from(x);
        sq += u128::from(x) * u128::from(x);
    }
    let t = trials as f64;
    let mean = sum as f64 / t;
    let variance = if trials > 1 {
        // exact integer numerator avoids cancellation
        let num = sq as f64 * t - (sum as f64) * (sum as f64);
        (num / (t * (t - 1.0))).max(0.0)
    } else {
        0.0
    };
    AccessibilityEstimate {
        j,
        policy,
        mean,
        variance,
        stderr: (variance / t).sqrt(),
        trials,
        seed,
    }
}

pub fn estimate_accessibility(
    g: &Graph,
    j: usize,
    policy: StartPolicy,
    trials: u64,
    seed: u64,
) -> Result<AccessibilityEstimate> {
    check(g, policy)?;
    let n = g.vertex_count();
    if j == 0 || j >= n {
        return Err(Error::OutOfRange(format!("j must be in 1..={}, got {j}", n - 1)));
    }
    if trials == 0 {
        return Err(Error::Precondition("at least one walk is required".into()));
    }
    let walks = run(g, policy, j, trials, seed);
    Ok(aggregate(walks.iter().map(|w| w[j - 1]), j, policy, trials, seed))
}

/// Estimates for every `j` in `1..n`, all from the same walks.
pub fn accessibility_profile(
    g: &Graph,
    policy: StartPolicy,
    trials: u64,
    seed: u64,
) -> Result<Vec<AccessibilityEstimate>> {
    check(g, policy)?;
    if trials == 0 {
        return Err(Error::Precondition("at least one walk is required".into()));
    }
    let n = g.vertex_count();
    let walks = run(g, policy, n - 1, trials, seed);
    Ok((1..n)
        .map(|j| aggregate(walks.iter().map(|w| w[j - 1]), j, policy, trials, seed))
        .collect())
}

/// Exact mean and variance of `X_j` for every `j` in `1..n`, from the
/// absorbing chain on `(current vertex, visited set)`.
pub fn exact_profile(g: &Graph, policy: StartPolicy) -> Result<Vec<(f64, f64)>> {
    check(g, policy)?;
    let n = g.vertex_count();
    if n > EXACT_VERTEX_CAP {
        return Err(Error::Capacity {
            what: "exact accessibility vertex count",
            requested: n as u128,
            cap: EXACT_VERTEX_CAP as u128,
        });
    }
    let starts: Vec<(usize, f64)> = match policy {
        StartPolicy::Fixed(v) => vec![(v, 1.0)],
        StartPolicy::DegreeWeighted => {
            let two_m = 2.0 * g.edge_count() as f64;
            (0..n).map(|v| (v, g.degree(v) as f64 / two_m)).collect()
        }
    };
    Ok((1..n)
        .map(|j| {
            let (h1, h2) = hitting_moments(g, j + 1);
            let idx = |v: usize| v * (1 << n) + (1 << v);
            let mean: f64 = starts.iter().map(|&(v, w)| w * h1[idx(v)]).sum();
            let second: f64 = starts.iter().map(|&(v, w)| w * h2[idx(v)]).sum();
            (mean, second - mean * mean)
        })
        .collect())
}

/// First and second moments of the time until the visited set reaches
/// `size`, indexed by `v * 2^n + set`. Sets are handled from largest to
/// smallest; moves inside a set form a small linear system.
fn hitting_moments(g: &Graph, size: usize) -> (Vec<f64>, Vec<f64>) {
    let n = g.vertex_count();
    let mut h1 = vec![0.0; n << n];
    let mut h2 = vec![0.0; n << n];
    let mut sets: Vec<usize> = (1..1usize << n)
        .filter(|s| (s.count_ones() as usize) < size)
        .collect();
    sets.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    for set in sets {
        let members: Vec<usize> = (0..n).filter(|v| set >> v & 1 == 1).collect();
        let k = members.len();
        let pos = |v: usize| members.iter().position(|&x| x == v);
        let mut a = DMatrix::<f64>::identity(k, k);
        let mut b1 = DVector::<f64>::from_element(k, 1.0);
        let mut out_second = DVector::<f64>::zeros(k);
        for (r, &v) in members.iter().enumerate() {
            let deg = g.degree(v) as f64;
            for w in g.neighbors(v) {
                match pos(w) {
                    Some(c) => a[(r, c)] -= 1.0 / deg,
                    None => {
                        let next = (w << n) + (set | 1 << w);
                        b1[r] += h1[next] / deg;
                        out_second[r] += (2.0 * h1[next] + h2[next]) / deg;
                    }
                }
            }
        }
        let lu = a.lu();
        let x1 = lu.solve(&b1).expect("transient states form a nonsingular system");
        // E[T^2] = 1 + sum_w P(w) (2 E[T_w] + E[T_w^2])
        let mut b2 = DVector::<f64>::from_element(k, 1.0) + out_second;
        for (r, &v) in members.iter().enumerate() {
            let deg = g.degree(v) as f64;
            for w in g.neighbors(v) {
                if let Some(c) = pos(w) {
                    b2[r] += 2.0 * x1[c] / deg;
                }
            }
        }
        let x2 = lu.solve(&b2).expect("transient states form a nonsingular system");
        for (r, &v) in members.iter().enumerate() {
            h1[(v << n) + set] = x1[r];
            h2[(v << n) + set] = x2[r];
        }
    }
    (h1, h2)
}
