//! Edge-isoperimetry of the binary and ternary cubes.
//!
//! With `h(i)` the digit sum of `i` and `f(l, m) = sum_{l <= i < m} h(i)`,
//! the initial segment `{0, .., m-1}` of the positional labelling induces
//! exactly `f(0, m)` edges, and no `m`-set does better. Boundaries follow
//! from regularity: `b(S) = d|S| - 2e(S)` with `d = n` for `Q^n` and
//! `d = 2n` for `3Q^n`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{next_combination, Graph};

/// Default limit on the number of candidate sets the exhaustive oracle visits.
pub const DEFAULT_ORACLE_CAP: u128 = 100_000_000;

/// Digit base of a cube family; only binary and ternary are modelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CubeBase {
    Binary,
    Ternary,
}

impl CubeBase {
    pub fn radix(self) -> u64 {
        match self {
            CubeBase::Binary => 2,
            CubeBase::Ternary => 3,
        }
    }

    /// Degree of the `n`-dimensional cube in this base.
    pub fn regular_degree(self, n: u32) -> u64 {
        match self {
            CubeBase::Binary => n as u64,
            CubeBase::Ternary => 2 * n as u64,
        }
    }

    pub fn from_radix(radix: u32) -> Result<Self> {
        match radix {
            2 => Ok(CubeBase::Binary),
            3 => Ok(CubeBase::Ternary),
            r => Err(Error::OutOfRange(format!("base must be 2 or 3, got {r}"))),
        }
    }
}

pub fn digit_sum(mut i: u64, base: CubeBase) -> u64 {
    let b = base.radix();
    let mut s = 0;
    while i > 0 {
        s += i % b;
        i /= b;
    }
    s
}

/// `sum_{0 <= i < m} h(i)`, counted digit position by digit position.
pub fn prefix_digit_sum(m: u64, base: CubeBase) -> u64 {
    let b = base.radix();
    let mut total = 0u64;
    let mut w = 1u64;
    while w <= m {
        let cycle = w * b;
        let (full, rem) = (m / cycle, m % cycle);
        let (d, r) = (rem / w, rem % w);
        total += full * w * (b * (b - 1) / 2) + w * (d * d.saturating_sub(1) / 2) + d * r;
        match w.checked_mul(b) {
            Some(next) => w = next,
            None => break,
        }
    }
    total
}

/// `f(l, m)` via the closed form; requires `l <= m`.
pub fn f_sum(l: u64, m: u64, base: CubeBase) -> u64 {
    assert!(l <= m, "f_sum needs l <= m, got l={l} m={m}");
    prefix_digit_sum(m, base) - prefix_digit_sum(l, base)
}

/// `f(l, m)` by direct summation.
pub fn f_sum_linear(l: u64, m: u64, base: CubeBase) -> u64 {
    (l..m).map(|i| digit_sum(i, base)).sum()
}

fn check_set_size(base: CubeBase, n: u32, m: u64) -> Result<()> {
    let order = base
        .radix()
        .checked_pow(n)
        .ok_or_else(|| Error::OutOfRange(format!("cube dimension {n} too large")))?;
    if m < 2 || m > order {
        return Err(Error::OutOfRange(format!(
            "set size {m} outside 2..={order} for dimension {n}"
        )));
    }
    Ok(())
}

/// Maximum number of edges induced by `m` vertices of the cube (`e_n(m)`).
pub fn max_induced_edges(base: CubeBase, n: u32, m: u64) -> Result<u64> {
    check_set_size(base, n, m)?;
    Ok(prefix_digit_sum(m, base))
}

/// Minimum edge boundary over all `m`-vertex sets of the cube (`b(m)`).
pub fn min_edge_boundary(base: CubeBase, n: u32, m: u64) -> Result<u64> {
    check_set_size(base, n, m)?;
    Ok(base.regular_degree(n) * m - 2 * prefix_digit_sum(m, base))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoEntry {
    pub m: u64,
    pub max_edges: u64,
    pub min_boundary: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoProfile {
    pub base: CubeBase,
    pub n: u32,
    /// One entry per set size `m = 2..=|V|`.
    pub entries: Vec<IsoEntry>,
}

pub fn iso_profile(base: CubeBase, n: u32) -> Result<IsoProfile> {
    let order = base
        .radix()
        .checked_pow(n)
        .ok_or_else(|| Error::OutOfRange(format!("cube dimension {n} too large")))?;
    let entries = (2..=order)
        .map(|m| {
            Ok(IsoEntry {
                m,
                max_edges: max_induced_edges(base, n, m)?,
                min_boundary: min_edge_boundary(base, n, m)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(IsoProfile { base, n, entries })
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Exhaustive maximum of the induced edge count over all `m`-subsets of
/// `g`, with the default candidate cap.
pub fn oracle_max_induced_edges(g: &Graph, m: usize) -> Result<usize> {
    oracle_max_induced_edges_with_cap(g, m, DEFAULT_ORACLE_CAP)
}

pub fn oracle_max_induced_edges_with_cap(g: &Graph, m: usize, cap: u128) -> Result<usize> {
    let n = g.vertex_count();
    if m > n {
        return Err(Error::OutOfRange(format!("set size {m} exceeds {n} vertices")));
    }
    if n > 128 {
        return Err(Error::Capacity {
            what: "oracle vertex count",
            requested: n as u128,
            cap: 128,
        });
    }
    let candidates = binomial_u128(n as u128, m as u128);
    if candidates > cap {
        return Err(Error::Capacity {
            what: "oracle candidate sets",
            requested: candidates,
            cap,
        });
    }
    if m == 0 {
        return Ok(0);
    }
    let adj: Vec<u128> = (0..n)
        .map(|v| g.neighbors(v).fold(0u128, |acc, w| acc | 1u128 << w))
        .collect();
    // Split on the smallest member so workers scan disjoint ranges.
    let best = (0..=n - m)
        .into_par_iter()
        .map(|first| {
            let rest = n - first - 1;
            let mut tail: Vec<usize> = (0..m - 1).collect();
            let mut best = 0usize;
            loop {
                let mut set = 1u128 << first;
                for &t in &tail {
                    set |= 1u128 << (first + 1 + t);
                }
                let mut twice = (adj[first] & set).count_ones();
                for &t in &tail {
                    twice += (adj[first + 1 + t] & set).count_ones();
                }
                best = best.max(twice as usize / 2);
                if tail.is_empty() || !next_combination(&mut tail, rest) {
                    break;
                }
            }
            best
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::ProductSpec;

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(11, CubeBase::Binary), 3);
        assert_eq!(digit_sum(5, CubeBase::Ternary), 3);
        assert_eq!(digit_sum(0, CubeBase::Binary), 0);
        assert_eq!(digit_sum(0, CubeBase::Ternary), 0);
    }

    #[test]
    fn small_f_values() {
        assert_eq!(f_sum(0, 4, CubeBase::Binary), 4);
        assert_eq!(f_sum(0, 3, CubeBase::Ternary), 3);
        for base in [CubeBase::Binary, CubeBase::Ternary] {
            for l in 0..300 {
                for m in l..300 {
                    assert_eq!(f_sum(l, m, base), f_sum_linear(l, m, base));
                }
            }
        }
    }

    #[test]
    fn reflection_identity() {
        // f(l, l+k) + f(2^r - l - k, 2^r - l) = r k
        for r in 0..=10u32 {
            let top = 1u64 << r;
            for l in 0..=top {
                for k in 0..=top - l {
                    let lhs = f_sum(l, l + k, CubeBase::Binary)
                        + f_sum(top - l - k, top - l, CubeBase::Binary);
                    assert_eq!(lhs, r as u64 * k, "l={l} k={k} r={r}");
                }
            }
        }
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(min_edge_boundary(CubeBase::Binary, 3, 4).unwrap(), 4);
        assert_eq!(min_edge_boundary(CubeBase::Ternary, 2, 3).unwrap(), 6);
        for n in 1..=10u32 {
            for k in 1..=n {
                let m = 1u64 << k;
                assert_eq!(
                    min_edge_boundary(CubeBase::Binary, n, m).unwrap(),
                    m * (n - k) as u64
                );
            }
        }
        assert_eq!(max_induced_edges(CubeBase::Binary, 5, 4).unwrap(), 4);
        assert!(min_edge_boundary(CubeBase::Binary, 3, 1).is_err());
        assert!(min_edge_boundary(CubeBase::Binary, 3, 9).is_err());
    }

    #[test]
    fn profile_shape() {
        let p = iso_profile(CubeBase::Ternary, 3).unwrap();
        assert_eq!(p.entries.len(), 26);
        assert!(p.entries.windows(2).all(|w| w[0].max_edges <= w[1].max_edges));
        assert_eq!(p.entries.last().unwrap().min_boundary, 0);
    }

    #[test]
    fn oracle_on_cube() {
        let q3 = ProductSpec::hypercube(3).unwrap().build();
        assert_eq!(oracle_max_induced_edges(&q3, 4).unwrap(), 4);
        assert_eq!(oracle_max_induced_edges(&q3, 8).unwrap(), 12);
        assert!(matches!(
            oracle_max_induced_edges_with_cap(&q3, 4, 69),
            Err(Error::Capacity { .. })
        ));
    }
}
