//! All-terminal reliability.
//!
//! `R(G, p) = sum_k s_k p^k (1-p)^{m-k}`, where `s_k` counts the connected
//! spanning subgraphs with exactly `k` edges. The coefficients are found by
//! visiting every one of the `2^m` edge subsets, so the edge count is
//! capped (25 by default, about 3.4e7 subsets).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{self, IsolatedRoot};

pub const DEFAULT_EDGE_CAP: usize = 25;

/// Bracket width to which crossover points are refined.
pub const CROSSOVER_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReliabilityCoefficients {
    pub n: usize,
    pub m: usize,
    /// `s[k]` for `k = 0..=m`.
    pub s: Vec<BigUint>,
}

impl ReliabilityCoefficients {
    pub fn from_counts(n: usize, counts: &[u64]) -> Self {
        Self {
            n,
            m: counts.len() - 1,
            s: counts.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    /// `R(p)` in floating point; every term is nonnegative on `[0, 1]`.
    pub fn evaluate(&self, p: f64) -> f64 {
        let q = 1.0 - p;
        let m = self.m as i32;
        self.s
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(k, s)| s.to_f64().unwrap_or(f64::INFINITY) * p.powi(k as i32) * q.powi(m - k as i32))
            .sum()
    }

    pub fn evaluate_exact(&self, p: &BigRational) -> BigRational {
        let q = BigRational::one() - p;
        let mut acc = BigRational::zero();
        for (k, s) in self.s.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            acc += BigRational::from_integer(BigInt::from(s.clone()))
                * num_traits::pow(p.clone(), k)
                * num_traits::pow(q.clone(), self.m - k);
        }
        acc
    }

    /// `s_{m-1}, s_{m-2}, ..., s_{n-1}`: the layout of a published table row.
    pub fn table_row(&self) -> Vec<BigUint> {
        if self.m == 0 || self.n == 0 || self.m + 1 < self.n {
            return Vec::new();
        }
        (self.n - 1..self.m).rev().map(|k| self.s[k].clone()).collect()
    }

    fn signed(&self) -> Vec<BigInt> {
        self.s.iter().cloned().map(BigInt::from).collect()
    }
}

/// Reliability coefficients with the default edge cap.
pub fn reliability_coefficients(g: &Graph) -> Result<ReliabilityCoefficients> {
    reliability_coefficients_with_cap(g, DEFAULT_EDGE_CAP)
}

pub fn reliability_coefficients_with_cap(g: &Graph, cap: usize) -> Result<ReliabilityCoefficients> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if m > cap.min(63) {
        return Err(Error::Capacity {
            what: "reliability enumeration edge count",
            requested: m as u128,
            cap: cap.min(63) as u128,
        });
    }
    if n <= 1 {
        let mut counts = vec![0u64; m + 1];
        counts[m] = 1;
        return Ok(ReliabilityCoefficients::from_counts(n, &counts));
    }
    let edges: Vec<(usize, usize)> = (0..m).map(|i| g.edge(i)).collect();
    let need = (n - 1) as u32;
    let total: u64 = 1 << m;
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut counts = vec![0u64; m + 1];
            let mut parent = vec![0usize; n];
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let k = mask.count_ones();
                if k < need {
                    continue;
                }
                if spans(mask, &edges, &mut parent) {
                    counts[k as usize] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; m + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(ReliabilityCoefficients::from_counts(n, &counts))
}

/// Whether the edges selected by `mask` connect all vertices.
fn spans(mut mask: u64, edges: &[(usize, usize)], parent: &mut [usize]) -> bool {
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i;
    }
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = parent.len();
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        let (u, v) = edges[i];
        let (ru, rv) = (find(parent, u), find(parent, v));
        if ru != rv {
            parent[ru] = rv;
            components -= 1;
            if components == 1 {
                return true;
            }
        }
    }
    components == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub checks: Vec<Check>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Compares the enumerated coefficients with independent structural counts:
/// spanning trees (matrix-tree), bridges, and connectivity of `g` itself.
pub fn cross_check_report(g: &Graph, coeffs: &ReliabilityCoefficients) -> CrossCheckReport {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut checks = Vec::new();
    let mut push = |name, expected: String, actual: String| {
        let passed = expected == actual;
        checks.push(Check {
            name,
            expected,
            actual,
            passed,
        });
    };
    push("shape", format!("n={n} m={m}"), format!("n={} m={}", coeffs.n, coeffs.m));
    if coeffs.n != n || coeffs.m != m || coeffs.s.len() != m + 1 {
        return CrossCheckReport { checks };
    }
    let connected = g.is_connected();
    if n >= 1 && n - 1 <= m {
        push(
            "spanning_trees",
            g.count_spanning_trees().to_string(),
            coeffs.s[n - 1].to_string(),
        );
    }
    if connected && m >= 1 {
        push(
            "one_edge_removed",
            (m - g.count_bridges()).to_string(),
            coeffs.s[m - 1].to_string(),
        );
    }
    push(
        "all_edges",
        u8::from(connected).to_string(),
        coeffs.s[m].to_string(),
    );
    let below = coeffs.s[..n.saturating_sub(1).min(m + 1)]
        .iter()
        .all(Zero::is_zero);
    push("below_tree_size", "all zero".into(), if below { "all zero" } else { "nonzero" }.into());
    let mut binom = BigUint::one();
    let mut bounded = true;
    for (k, s) in coeffs.s.iter().enumerate() {
        bounded &= s <= &binom;
        binom = binom * BigUint::from(m - k) / BigUint::from(k + 1);
    }
    push("binomial_bound", "true".into(), bounded.to_string());
    CrossCheckReport { checks }
}

/// Like [`cross_check_report`], failing with an integrity error on any mismatch.
pub fn cross_check(g: &Graph, coeffs: &ReliabilityCoefficients) -> Result<CrossCheckReport> {
    let report = cross_check_report(g, coeffs);
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::Integrity(format!(
            "{} check failed: expected {}, enumeration gave {}",
            bad.name, bad.expected, bad.actual
        )));
    }
    Ok(report)
}

/// A point where two reliability polynomials swap order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub p: f64,
    pub lo: f64,
    pub hi: f64,
    /// True when the first polynomial is the larger one just below `p`.
    pub first_better_below: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Comparison {
    Identical,
    /// `R_a(p) >= R_b(p)` on all of `(0, 1)`, with strict inequality except
    /// at finitely many touching points.
    FirstDominates,
    SecondDominates,
    Crossover(Vec<Crossing>),
}

/// `R_a - R_b` in the power basis, exactly.
pub fn difference_polynomial(a: &ReliabilityCoefficients, b: &ReliabilityCoefficients) -> Vec<BigInt> {
    let d: Vec<BigInt> = a.signed().into_iter().zip(b.signed()).map(|(x, y)| x - y).collect();
    poly::from_reliability_basis(&d)
}

/// Orders two reliability polynomials on `(0, 1)`.
///
/// The difference `sum_i d_i p^i (1-p)^{m-i}` is stripped of its factors
/// `p^lo (1-p)^{m-hi}` (which do not vanish inside the interval); if the
/// remaining coefficients share a sign the order is settled at once,
/// otherwise the roots are isolated exactly and refined by bisection.
pub fn compare(a: &ReliabilityCoefficients, b: &ReliabilityCoefficients) -> Result<Comparison> {
    if a.n != b.n || a.m != b.m {
        return Err(Error::Precondition(format!(
            "comparing reliability of (n, m) = ({}, {}) with ({}, {})",
            a.n, a.m, b.n, b.m
        )));
    }
    let d: Vec<BigInt> = a.signed().into_iter().zip(b.signed()).map(|(x, y)| x - y).collect();
    let Some(lo) = d.iter().position(|x| !x.is_zero()) else {
        return Ok(Comparison::Identical);
    };
    let hi = d.iter().rposition(|x| !x.is_zero()).unwrap();
    let core = &d[lo..=hi];
    let first_sign_positive = core[0] > BigInt::zero();
    let dominated = |positive: bool| {
        if positive {
            Comparison::FirstDominates
        } else {
            Comparison::SecondDominates
        }
    };
    if core.iter().all(|x| x >= &BigInt::zero()) || core.iter().all(|x| x <= &BigInt::zero()) {
        return Ok(dominated(first_sign_positive));
    }
    let power = poly::from_reliability_basis(core);
    let roots: Vec<IsolatedRoot> = poly::roots_in_unit_interval(&power, CROSSOVER_TOL)
        .into_iter()
        .filter(|r| r.sign_change)
        .collect();
    if roots.is_empty() {
        // the sign at p -> 0 is the sign of the lowest surviving coefficient
        return Ok(dominated(first_sign_positive));
    }
    let mut better = first_sign_positive;
    let crossings = roots
        .into_iter()
        .map(|r| {
            let c = Crossing {
                p: r.value,
                lo: r.lo,
                hi: r.hi,
                first_better_below: better,
            };
            better = !better;
            c
        })
        .collect();
    Ok(Comparison::Crossover(crossings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::ProductSpec;

    fn coeffs(n: usize, row: &[u64]) -> ReliabilityCoefficients {
        ReliabilityCoefficients::from_counts(n, row)
    }

    #[test]
    fn cycle_four() {
        let c4 = Graph::cycle(4).unwrap();
        let r = reliability_coefficients(&c4).unwrap();
        assert_eq!(r.s, [0u32, 0, 0, 4, 1].map(BigUint::from).to_vec());
        assert!((r.evaluate(0.5) - 0.3125).abs() < 1e-15);
        assert_eq!(r.evaluate(1.0), 1.0);
        assert_eq!(r.evaluate(0.0), 0.0);
        assert_eq!(
            r.evaluate_exact(&BigRational::new(1.into(), 2.into())),
            BigRational::new(5.into(), 16.into())
        );
        cross_check(&c4, &r).unwrap();
    }

    #[test]
    fn complete_graph_tree_counts() {
        for (n, trees) in [(5usize, 125u32), (6, 1296)] {
            let g = Graph::complete(n);
            let r = reliability_coefficients(&g).unwrap();
            assert_eq!(r.s[n - 1], BigUint::from(trees));
            cross_check(&g, &r).unwrap();
        }
    }

    #[test]
    fn trees_and_disconnected_graphs() {
        let t = Graph::path(6);
        let r = reliability_coefficients(&t).unwrap();
        assert_eq!(r.s[5], BigUint::one());
        assert!(r.s[4].is_zero());
        cross_check(&t, &r).unwrap();

        let split = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let r = reliability_coefficients(&split).unwrap();
        assert!(r.s.iter().all(Zero::is_zero));
        cross_check(&split, &r).unwrap();

        let single = Graph::empty(1);
        assert_eq!(reliability_coefficients(&single).unwrap().s, vec![BigUint::one()]);
    }

    #[test]
    fn cap_is_enforced() {
        let q = ProductSpec::hypercube(4).unwrap().build();
        let err = reliability_coefficients_with_cap(&q, 25).unwrap_err();
        assert!(err.to_string().contains("cap is 25"), "{err}");
    }

    #[test]
    fn cross_check_catches_corruption() {
        let g = Graph::complete(4);
        let mut r = reliability_coefficients(&g).unwrap();
        r.s[3] += 1u32;
        assert!(matches!(cross_check(&g, &r), Err(Error::Integrity(_))));
        assert!(!cross_check_report(&g, &r).passed());
    }

    #[test]
    fn comparisons() {
        let a = coeffs(3, &[0, 0, 3, 1]);
        assert_eq!(compare(&a, &a).unwrap(), Comparison::Identical);
        let b = coeffs(3, &[0, 0, 2, 1]);
        assert_eq!(compare(&a, &b).unwrap(), Comparison::FirstDominates);
        assert_eq!(compare(&b, &a).unwrap(), Comparison::SecondDominates);
        assert!(compare(&a, &coeffs(4, &[0, 0, 3, 1])).is_err());
    }

    #[test]
    fn six_eleven_crossover() {
        // published (6, 11) rows, s_10 .. s_5, with s_11 = 1
        let row = |r: [u64; 6]| {
            let mut s = vec![0u64; 12];
            s[11] = 1;
            for (i, v) in r.into_iter().enumerate() {
                s[10 - i] = v;
            }
            coeffs(6, &s)
        };
        let a = row([11, 55, 163, 309, 368, 225]);
        let b = row([11, 55, 163, 310, 370, 224]);
        let Comparison::Crossover(x) = compare(&a, &b).unwrap() else {
            panic!("expected a crossover");
        };
        assert_eq!(x.len(), 1);
        assert!((x[0].p - (1.0 - 2f64.sqrt() / 2.0)).abs() < 1e-9);
        assert!(x[0].first_better_below);
    }
}
