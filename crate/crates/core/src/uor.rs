//! Uniformly optimally reliable graphs: exhaustive search over isomorphism
//! classes, the reliability envelope when no single graph is optimal, and
//! the known subdivision constructions.

use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{self, slot_count};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reference;
use crate::reliability::{self, Comparison, Crossing, ReliabilityCoefficients};

/// Grid used to seed the envelope search with likely maximizers.
const GRID: u32 = 1000;

/// Crossings closer than this are treated as the same point.
const MERGE_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct ClassReliability {
    pub graph: Graph,
    pub coefficients: ReliabilityCoefficients,
}

/// One stretch of the upper envelope of all reliability polynomials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnvelopePiece {
    /// Index into [`CrossoverReport::classes`].
    pub class: usize,
    pub from: f64,
    pub to: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Verdict {
    Uor {
        representative: usize,
        /// Other classes with exactly the same reliability polynomial.
        equivalent: Vec<usize>,
    },
    NoUor {
        /// The optimal classes on either side of the first crossover.
        witness: (usize, usize),
        crossings: Vec<Crossing>,
        envelope: Vec<EnvelopePiece>,
    },
}

#[derive(Clone, Debug)]
pub struct CrossoverReport {
    pub n: usize,
    pub m: usize,
    pub classes: Vec<ClassReliability>,
    pub verdict: Verdict,
}

impl CrossoverReport {
    /// Classes that are optimal somewhere, in order of increasing `p`.
    pub fn optimal_classes(&self) -> Vec<usize> {
        match &self.verdict {
            Verdict::Uor { representative, .. } => vec![*representative],
            Verdict::NoUor { envelope, .. } => {
                let mut out: Vec<usize> = Vec::new();
                for piece in envelope {
                    if !out.contains(&piece.class) {
                        out.push(piece.class);
                    }
                }
                out
            }
        }
    }

    /// Necessary conditions every optimal graph must meet: most spanning
    /// trees in the class and edge connectivity `floor(2m/n)`. Returns a
    /// description of each violation; an empty list means none.
    pub fn corollary_violations(&self) -> Vec<String> {
        let Verdict::Uor { representative, .. } = &self.verdict else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let best = &self.classes[*representative];
        let trees = &best.coefficients.s[self.n - 1];
        if let Some(max) = self.classes.iter().map(|c| &c.coefficients.s[self.n - 1]).max() {
            if trees < max {
                out.push(format!(
                    "({}, {}): optimal graph has {trees} spanning trees, class maximum is {max}",
                    self.n, self.m
                ));
            }
        }
        let lambda = best.graph.edge_connectivity();
        let bound = 2 * self.m / self.n;
        if lambda != bound {
            out.push(format!(
                "({}, {}): optimal graph has edge connectivity {lambda}, expected {bound}",
                self.n, self.m
            ));
        }
        out
    }
}

/// Near `p = 0` the polynomial with the larger `s_{n-1}` wins, ties broken
/// by `s_n`, and so on upward.
fn near_zero_key(c: &ReliabilityCoefficients) -> Vec<BigUint> {
    c.s.clone()
}

/// Near `p = 1` the order is decided by `s_{m-1}`, then `s_{m-2}`, ...
fn near_one_key(c: &ReliabilityCoefficients) -> Vec<BigUint> {
    c.s.iter().rev().cloned().collect()
}

fn argmax_by_key<K: Ord>(items: impl Iterator<Item = (usize, K)>) -> usize {
    let mut best: Option<(usize, K)> = None;
    for (i, k) in items {
        if best.as_ref().is_none_or(|(_, b)| k > *b) {
            best = Some((i, k));
        }
    }
    best.map(|(i, _)| i).unwrap_or(0)
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite probability")
}

/// Whether `x` is strictly more reliable than `w` somewhere in `(a, b)`.
fn beats_somewhere(
    w: &ReliabilityCoefficients,
    x: &ReliabilityCoefficients,
    a: f64,
    b: f64,
) -> Result<bool> {
    Ok(match reliability::compare(w, x)? {
        Comparison::Identical | Comparison::FirstDominates => false,
        Comparison::SecondDominates => true,
        Comparison::Crossover(cs) => {
            let mut edges = vec![0.0];
            edges.extend(cs.iter().map(|c| c.p));
            edges.push(1.0);
            let mut w_better = cs[0].first_better_below;
            let mut found = false;
            for pair in edges.windows(2) {
                let (lo, hi) = (pair[0].max(a), pair[1].min(b));
                if !w_better && hi - lo > MERGE_TOL {
                    found = true;
                    break;
                }
                w_better = !w_better;
            }
            found
        }
    })
}

/// The upper envelope of the candidate polynomials on `[0, 1]`.
fn envelope_of(classes: &[ClassReliability], candidates: &[usize]) -> Result<Vec<EnvelopePiece>> {
    let mut points = vec![0.0, 1.0];
    for (i, &a) in candidates.iter().enumerate() {
        for &b in &candidates[i + 1..] {
            if let Comparison::Crossover(cs) =
                reliability::compare(&classes[a].coefficients, &classes[b].coefficients)?
            {
                points.extend(cs.iter().map(|c| c.p));
            }
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup_by(|x, y| (*x - *y).abs() < MERGE_TOL);

    let mut pieces: Vec<EnvelopePiece> = Vec::new();
    for pair in points.windows(2) {
        let mid = rational((pair[0] + pair[1]) / 2.0);
        let winner = candidates
            .iter()
            .copied()
            .max_by(|&a, &b| {
                let (ra, rb) = (
                    classes[a].coefficients.evaluate_exact(&mid),
                    classes[b].coefficients.evaluate_exact(&mid),
                );
                // on ties prefer the earlier class
                ra.cmp(&rb).then(b.cmp(&a))
            })
            .expect("nonempty candidate set");
        match pieces.last_mut() {
            Some(last) if last.class == winner => last.to = pair[1],
            _ => pieces.push(EnvelopePiece {
                class: winner,
                from: pair[0],
                to: pair[1],
            }),
        }
    }
    Ok(pieces)
}

/// Determines whether a uniformly optimally reliable graph exists among
/// the connected graphs with `n <= 8` vertices and `m <= 25` edges.
pub fn find_uor(n: usize, m: usize) -> Result<CrossoverReport> {
    if m > reliability::DEFAULT_EDGE_CAP {
        return Err(Error::Capacity {
            what: "reliability enumeration edge count",
            requested: m as u128,
            cap: reliability::DEFAULT_EDGE_CAP as u128,
        });
    }
    let catalog = canon::enumerate_classes(n, m, true)?;
    if catalog.representatives.is_empty() {
        return Err(Error::Precondition(format!(
            "no connected graph has {n} vertices and {m} edges"
        )));
    }
    let classes: Vec<ClassReliability> = catalog
        .representatives
        .into_par_iter()
        .map(|graph| {
            reliability::reliability_coefficients(&graph).map(|coefficients| ClassReliability {
                graph,
                coefficients,
            })
        })
        .collect::<Result<_>>()?;

    let low = argmax_by_key(classes.iter().map(|c| near_zero_key(&c.coefficients)).enumerate());
    let high = argmax_by_key(classes.iter().map(|c| near_one_key(&c.coefficients)).enumerate());

    // A uniform optimum must win at both ends, so only `low` can be one.
    if classes[low].coefficients == classes[high].coefficients {
        let mut dominates = true;
        for (i, c) in classes.iter().enumerate() {
            if i == low {
                continue;
            }
            if !matches!(
                reliability::compare(&classes[low].coefficients, &c.coefficients)?,
                Comparison::Identical | Comparison::FirstDominates
            ) {
                dominates = false;
                break;
            }
        }
        if dominates {
            let equivalent = (0..classes.len())
                .filter(|&i| i != low && classes[i].coefficients == classes[low].coefficients)
                .collect();
            return Ok(CrossoverReport {
                n,
                m,
                classes,
                verdict: Verdict::Uor {
                    representative: low,
                    equivalent,
                },
            });
        }
    }

    let mut candidates = vec![low, high];
    for k in 1..GRID {
        let p = f64::from(k) / f64::from(GRID);
        let best = (0..classes.len())
            .max_by(|&a, &b| {
                classes[a]
                    .coefficients
                    .evaluate(p)
                    .total_cmp(&classes[b].coefficients.evaluate(p))
                    .then(b.cmp(&a))
            })
            .unwrap();
        candidates.push(best);
    }
    candidates.sort_unstable();
    candidates.dedup();

    // Grow the candidate set until no other class beats the envelope.
    let envelope = loop {
        let envelope = envelope_of(&classes, &candidates)?;
        let mut added = false;
        for i in 0..classes.len() {
            if candidates.contains(&i) {
                continue;
            }
            for piece in &envelope {
                let w = &classes[piece.class].coefficients;
                if beats_somewhere(w, &classes[i].coefficients, piece.from, piece.to)? {
                    candidates.push(i);
                    added = true;
                    break;
                }
            }
        }
        if !added {
            break envelope;
        }
        candidates.sort_unstable();
    };

    if envelope.len() == 1 {
        // The grid found a dominating class the end-point test missed.
        let representative = envelope[0].class;
        let equivalent = (0..classes.len())
            .filter(|&i| {
                i != representative && classes[i].coefficients == classes[representative].coefficients
            })
            .collect();
        return Ok(CrossoverReport {
            n,
            m,
            classes,
            verdict: Verdict::Uor {
                representative,
                equivalent,
            },
        });
    }
    let (a, b) = (envelope[0].class, envelope[1].class);
    let crossings = match reliability::compare(&classes[a].coefficients, &classes[b].coefficients)? {
        Comparison::Crossover(cs) => cs,
        other => {
            return Err(Error::Integrity(format!(
                "envelope classes {a} and {b} at ({n}, {m}) do not cross: {other:?}"
            )))
        }
    };
    Ok(CrossoverReport {
        n,
        m,
        classes,
        verdict: Verdict::NoUor {
            witness: (a, b),
            crossings,
            envelope,
        },
    })
}

/// One row of an optimal-reliability table: `s_{m-1}, ..., s_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub m: usize,
    /// `None` when a uniform optimum exists; otherwise `a`, `b`, ... in
    /// order of the range of `p` where the class is optimal.
    pub variant: Option<char>,
    pub coefficients: Vec<BigUint>,
}

impl TableRow {
    pub fn label(&self) -> String {
        match self.variant {
            Some(v) => format!("{}{v}", self.m),
            None => self.m.to_string(),
        }
    }
}

pub fn table_rows(report: &CrossoverReport) -> Vec<TableRow> {
    let optimal = report.optimal_classes();
    let single = optimal.len() == 1;
    optimal
        .into_iter()
        .enumerate()
        .map(|(i, c)| TableRow {
            m: report.m,
            variant: (!single).then(|| (b'a' + i as u8) as char),
            coefficients: report.classes[c].coefficients.table_row(),
        })
        .collect()
}

/// Optimal rows for every `m` from `n` to `max_m`.
pub fn uor_table(n: usize, max_m: usize) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for m in n..=max_m.min(slot_count(n)) {
        rows.extend(table_rows(&find_uor(n, m)?));
    }
    Ok(rows)
}

/// A disagreement between computed rows and the published table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub m: usize,
    pub variant: Option<char>,
    /// `k` of the differing `s_k`, or `None` when a whole row is missing.
    pub k: Option<usize>,
    pub computed: Option<String>,
    pub published: Option<String>,
}

/// Compares computed rows with the published table for `n`, restricted to
/// the `m` values present in `rows`. `None` when no table is known.
pub fn compare_with_published(n: usize, rows: &[TableRow]) -> Option<Vec<TableMismatch>> {
    let published = reference::published_table(n)?;
    let mut out = Vec::new();
    let covered = |m: usize| rows.iter().any(|r| r.m == m);
    for p in published.iter().filter(|p| covered(p.m)) {
        let Some(row) = rows.iter().find(|r| r.m == p.m && r.variant == p.variant) else {
            out.push(TableMismatch {
                m: p.m,
                variant: p.variant,
                k: None,
                computed: None,
                published: Some(format!("{:?}", p.coefficients)),
            });
            continue;
        };
        let expected = p.as_big();
        for i in 0..expected.len().max(row.coefficients.len()) {
            let (c, e) = (row.coefficients.get(i), expected.get(i));
            if c != e {
                out.push(TableMismatch {
                    m: p.m,
                    variant: p.variant,
                    k: Some(p.m - 1 - i),
                    computed: c.map(ToString::to_string),
                    published: e.map(ToString::to_string),
                });
            }
        }
    }
    for r in rows {
        if !published.iter().any(|p| p.m == r.m && p.variant == r.variant) {
            out.push(TableMismatch {
                m: r.m,
                variant: r.variant,
                k: None,
                computed: Some(
                    r.coefficients
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                ),
                published: None,
            });
        }
    }
    Some(out)
}

/// Subdivides each line of a seed multigraph so that `extra` new vertices
/// are spread over the lines as evenly as possible, earlier lines first.
fn subdivide(seed_vertices: usize, lines: &[(usize, usize)], extra: usize) -> Result<Graph> {
    let per = extra / lines.len();
    let rem = extra % lines.len();
    let mut next = seed_vertices;
    let mut edges = Vec::new();
    for (i, &(u, v)) in lines.iter().enumerate() {
        let count = per + usize::from(i < rem);
        let mut prev = u;
        for _ in 0..count {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::new(next, edges)
}

/// K4 lines ordered so the first three form a perfect matching plus one
/// more edge; spreading one or two subdivisions this way keeps them on
/// disjoint lines.
const K4_LINES: [(usize, usize); 6] = [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)];

/// Optimal graphs for `m = n + 1` (a subdivided theta multigraph, `n >= 5`)
/// and `m = n + 2` (a subdivided K4, `n >= 4`).
pub fn boesch_construction(n: usize, m: usize) -> Result<Graph> {
    if m == n + 1 {
        if n < 5 {
            return Err(Error::Precondition(format!(
                "the theta construction needs n >= 5, got {n}"
            )));
        }
        subdivide(2, &[(0, 1), (0, 1), (0, 1)], n - 2)
    } else if m == n + 2 {
        if n < 4 {
            return Err(Error::Precondition(format!(
                "the K4 construction needs n >= 4, got {n}"
            )));
        }
        subdivide(4, &K4_LINES, n - 4)
    } else {
        Err(Error::Precondition(format!(
            "subdivision constructions cover m = n+1 and m = n+2, got n={n} m={m}"
        )))
    }
}

/// Subdivided `K_{3,3}` with `n >= 6` vertices and `n + 3` edges.
pub fn wang_construction(n: usize) -> Result<Graph> {
    if n < 6 {
        return Err(Error::Precondition(format!(
            "the K33 construction needs n >= 6, got {n}"
        )));
    }
    // a perfect matching first, then the remaining two matchings
    let lines = [(0, 3), (1, 4), (2, 5), (0, 4), (1, 5), (2, 3), (0, 5), (1, 3), (2, 4)];
    subdivide(6, &lines, n - 6)
}

/// Edge count of the known families without a uniform optimum.
pub fn counterexample_parameters(n: usize) -> Result<usize> {
    if n < 6 {
        return Err(Error::Precondition(format!(
            "counterexample families start at n = 6, got {n}"
        )));
    }
    let full = n * (n - 1) / 2;
    Ok(if n.is_multiple_of(2) {
        full - (n + 2) / 2
    } else {
        full - (n + 5) / 2
    })
}
