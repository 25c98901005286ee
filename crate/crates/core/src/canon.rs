//! Graphs on at most eight vertices packed into a `u32`, canonical forms,
//! and isomorph-free enumeration.
//!
//! The pair `i < j` occupies slot `j(j-1)/2 + i` (column-wise upper
//! triangle), so the slots among the first `k` vertices form a prefix.
//! The canonical form of a graph is the relabelling whose adjacency bit
//! string, read slot 0 first, is lexicographically smallest. The search
//! only tries labellings that list vertices by refined colour class
//! (degree, then neighbour colours iterated to a fixed point) and abandons
//! a branch as soon as its prefix exceeds the best string found so far.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_VERTICES: usize = 8;

pub const fn slot(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

pub const fn slot_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SmallGraph {
    n: u8,
    /// Bit `slot(i, j)` is set when `i` and `j` are adjacent.
    mask: u32,
}

impl SmallGraph {
    pub fn new(n: usize, mask: u32) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "small-graph vertex count",
                requested: n as u128,
                cap: MAX_VERTICES as u128,
            });
        }
        let slots = slot_count(n);
        if slots < 32 && mask >> slots != 0 {
            return Err(Error::InvalidGraph(format!(
                "mask {mask:#x} uses slots beyond {slots} for {n} vertices"
            )));
        }
        Ok(Self { n: n as u8, mask })
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        let mut mask = 0u32;
        if n <= MAX_VERTICES {
            for &(u, v) in g.edges() {
                mask |= 1 << slot(u as usize, v as usize);
            }
        }
        Self::new(n, mask)
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_edge(i, j))
            .map(|(i, j)| (i as u32, j as u32))
            .collect();
        Graph::from_sorted_edges(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        i != j && self.mask >> slot(i, j) & 1 == 1
    }

    pub fn with_slot(&self, s: usize) -> Self {
        Self {
            n: self.n,
            mask: self.mask | 1 << s,
        }
    }

    pub fn complement(&self) -> Self {
        let slots = slot_count(self.n as usize);
        let full = if slots == 32 { u32::MAX } else { (1u32 << slots) - 1 };
        Self {
            n: self.n,
            mask: !self.mask & full,
        }
    }

    /// Adjacency rows as vertex bitmasks.
    fn rows(&self) -> [u8; MAX_VERTICES] {
        let mut rows = [0u8; MAX_VERTICES];
        let n = self.n as usize;
        for j in 1..n {
            for i in 0..j {
                if self.mask >> slot(i, j) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        rows
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n as usize;
        if n <= 1 {
            return true;
        }
        let rows = self.rows();
        let all = ((1u16 << n) - 1) as u8;
        let mut seen = 1u8;
        let mut frontier = 1u8;
        while frontier != 0 {
            let mut next = 0u8;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == all
    }

    /// The canonical representative of this graph's isomorphism class.
    pub fn canonical(&self) -> Self {
        let n = self.n as usize;
        if n <= 1 {
            return *self;
        }
        let rows = self.rows();
        let colour = refine_colours(&rows, n);
        // positions are filled class by class, in colour order
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| colour[v]);
        let position_colour: Vec<u8> = order.iter().map(|&v| colour[v]).collect();

        let mut search = Search {
            n,
            rows,
            colour,
            position_colour,
            perm: [0; MAX_VERTICES],
            best: u64::MAX,
            total_slots: slot_count(n) as u32,
        };
        search.descend(0, 0, 0);
        let s = slot_count(n);
        let mut mask = 0u32;
        for k in 0..s {
            if search.best >> (s - 1 - k) & 1 == 1 {
                mask |= 1 << k;
            }
        }
        Self { n: self.n, mask }
    }

    /// Applies `perm`, mapping vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n as usize;
        let mut mask = 0u32;
        for j in 1..n {
            for i in 0..j {
                if self.mask >> slot(i, j) & 1 == 1 {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    mask |= 1 << slot(a, b);
                }
            }
        }
        Self { n: self.n, mask }
    }
}

/// Colour refinement from degrees; colours are ranks of sorted signatures,
/// hence independent of the labelling.
fn refine_colours(rows: &[u8; MAX_VERTICES], n: usize) -> Vec<u8> {
    let mut colour: Vec<u8> = (0..n).map(|v| rows[v].count_ones() as u8).collect();
    let mut classes = 0usize;
    loop {
        let signatures: Vec<(u8, Vec<u8>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u8> = (0..n)
                    .filter(|&w| rows[v] >> w & 1 == 1)
                    .map(|w| colour[w])
                    .collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        colour = signatures
            .iter()
            .map(|s| distinct.binary_search(s).unwrap() as u8)
            .collect();
        if distinct.len() == classes {
            return colour;
        }
        classes = distinct.len();
    }
}

struct Search {
    n: usize,
    rows: [u8; MAX_VERTICES],
    colour: Vec<u8>,
    position_colour: Vec<u8>,
    perm: [usize; MAX_VERTICES],
    best: u64,
    total_slots: u32,
}

impl Search {
    /// `code` holds the bits of every slot among positions `0..k`,
    /// slot 0 most significant.
    fn descend(&mut self, k: usize, used: u8, code: u64) {
        if k == self.n {
            if code < self.best {
                self.best = code;
            }
            return;
        }
        for v in 0..self.n {
            if used >> v & 1 == 1 || self.colour[v] != self.position_colour[k] {
                continue;
            }
            let mut next = code;
            for i in 0..k {
                next = next << 1 | u64::from(self.rows[v] >> self.perm[i] & 1);
            }
            let prefix_len = slot_count(k + 1) as u32;
            if self.best != u64::MAX && next > self.best >> (self.total_slots - prefix_len) {
                continue;
            }
            self.perm[k] = v;
            self.descend(k + 1, used | 1 << v, next);
        }
    }
}

/// Canonical representatives of every isomorphism class of graphs with `n`
/// vertices and `m` edges, sorted by mask. Built by adding one edge at a
/// time to the classes with one edge fewer; above half the slots the
/// complements of the sparser side are used instead.
pub fn all_classes(n: usize, m: usize) -> Result<Vec<SmallGraph>> {
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "class enumeration vertex count",
            requested: n as u128,
            cap: MAX_VERTICES as u128,
        });
    }
    let slots = slot_count(n);
    if m > slots {
        return Err(Error::OutOfRange(format!(
            "{m} edges do not fit on {n} vertices (at most {slots})"
        )));
    }
    if 2 * m > slots {
        let mut out: Vec<SmallGraph> = all_classes(n, slots - m)?
            .into_iter()
            .map(|g| g.complement().canonical())
            .collect();
        out.sort();
        return Ok(out);
    }
    let mut level: BTreeSet<SmallGraph> = BTreeSet::from([SmallGraph::new(n, 0)?]);
    for _ in 0..m {
        let mut next = BTreeSet::new();
        for g in &level {
            for s in 0..slots {
                if g.mask >> s & 1 == 0 {
                    next.insert(g.with_slot(s).canonical());
                }
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

/// The same classes as [`all_classes`], by canonicalizing every labelled
/// graph. Exponential; meant for cross-checking at small `n`.
pub fn all_classes_exhaustive(n: usize, m: usize) -> Result<Vec<SmallGraph>> {
    let slots = slot_count(n);
    if n > 6 || m > slots {
        return Err(Error::OutOfRange(format!(
            "exhaustive enumeration is limited to n <= 6, got n={n} m={m}"
        )));
    }
    let mut seen = BTreeSet::new();
    for mask in 0u32..1 << slots {
        if mask.count_ones() as usize == m {
            seen.insert(SmallGraph::new(n, mask)?.canonical());
        }
    }
    Ok(seen.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClassCatalog {
    pub n: usize,
    pub m: usize,
    pub connected_only: bool,
    /// One canonical representative per isomorphism class.
    pub representatives: Vec<Graph>,
}

pub fn enumerate_classes(n: usize, m: usize, connected_only: bool) -> Result<GraphClassCatalog> {
    let classes = all_classes(n, m)?;
    let representatives = classes
        .into_iter()
        .filter(|g| !connected_only || g.is_connected())
        .map(|g| g.to_graph())
        .collect();
    Ok(GraphClassCatalog {
        n,
        m,
        connected_only,
        representatives,
    })
}

/// Canonical form of an arbitrary graph on at most eight vertices.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    Ok(SmallGraph::from_graph(g)?.canonical().to_graph())
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    Ok(a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && SmallGraph::from_graph(a)?.canonical() == SmallGraph::from_graph(b)?.canonical())
}
