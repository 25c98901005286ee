//! Undirected simple graphs on dense vertex ids, with the structural
//! quantities the rest of the crate leans on: components, spanning-tree
//! counts, bridges, Laplacian spectra and Cartesian products.
//!
//! Edges are stored in lexicographic order `(u, v)` with `u < v`; the
//! position of an edge in that order is its stable index, so percolation
//! masks and subset enumeration can address edges by bit position.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::unionfind::DisjointSet;

/// Default cap on the vertex count of a constructed product graph.
pub const DEFAULT_VERTEX_CAP: usize = 1 << 24;

/// Eigenvalues closer to zero than this are treated as zero.
pub const EIGEN_ZERO_TOL: f64 = 1e-9;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    // CSR adjacency: neighbours of v are adj[offsets[v]..offsets[v + 1]],
    // sorted by neighbour id, each paired with the edge index.
    offsets: Vec<usize>,
    adj: Vec<(u32, u32)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Endpoints may come in either order;
    /// self-loops, duplicates and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::InvalidGraph(format!("{n} vertices do not fit in u32 ids")));
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            list.push((a.min(b) as u32, a.max(b) as u32));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_edges(n, list))
    }

    /// Trusted constructor: `edges` must be strictly increasing with `u < v < n`.
    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && (v as usize) < n));
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut adj = vec![(0u32, 0u32); 2 * edges.len()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[fill[u as usize]] = (v, i as u32);
            fill[u as usize] += 1;
            adj[fill[v as usize]] = (u, i as u32);
            fill[v as usize] += 1;
        }
        for v in 0..n {
            adj[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Self {
            n,
            edges,
            offsets,
            adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        Self::from_sorted_edges(n, edges)
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n as u32).map(|v| (v - 1, v)).collect();
        Self::from_sorted_edges(n, edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("a simple cycle needs 3 vertices, got {n}")));
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_sorted_edges(leaves + 1, (1..=leaves as u32).map(|v| (0, v)).collect())
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a as u32)
            .flat_map(|u| (a as u32..(a + b) as u32).map(move |v| (u, v)))
            .collect();
        Self::from_sorted_edges(a + b, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in index order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        let (u, v) = self.edges[index];
        (u as usize, v as usize)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[self.offsets[v]..self.offsets[v + 1]]
            .iter()
            .map(|&(w, _)| w as usize)
    }

    /// Neighbours of `v` paired with the index of the joining edge.
    pub fn incident(&self, v: usize) -> &[(u32, u32)] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let list = self.incident(u);
        list.binary_search_by_key(&(v as u32), |&(w, _)| w)
            .ok()
            .map(|i| list[i].1 as usize)
    }

    /// Subgraph on the same vertices keeping the edges whose index satisfies `keep`.
    pub fn spanning_subgraph<F: FnMut(usize) -> bool>(&self, mut keep: F) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| keep(i))
            .map(|(_, &e)| e)
            .collect();
        Graph::from_sorted_edges(self.n, edges)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n as u32;
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u as usize, v as usize))
            .collect();
        Graph::from_sorted_edges(self.n, edges)
    }

    /// Partition of the vertices into connected components. Parts are listed
    /// by smallest member, each part sorted.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut parts = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut part = Vec::new();
            while let Some(v) = stack.pop() {
                part.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    /// The empty graph and the single vertex count as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut ds = DisjointSet::new(self.n);
        for &(u, v) in &self.edges {
            ds.union(u as usize, v as usize);
            if ds.components() == 1 {
                return true;
            }
        }
        false
    }

    /// Number of spanning trees, by fraction-free elimination of the
    /// Laplacian with the last row and column removed.
    pub fn count_spanning_trees(&self) -> BigUint {
        let n = self.n;
        if n <= 1 {
            return BigUint::one();
        }
        let k = n - 1;
        let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); k]; k];
        for (v, row) in a.iter_mut().enumerate() {
            row[v] = BigInt::from(self.degree(v));
        }
        for &(u, v) in &self.edges {
            let (u, v) = (u as usize, v as usize);
            if u < k && v < k {
                a[u][v] -= 1;
                a[v][u] -= 1;
            }
        }
        bareiss_determinant(a)
            .to_biguint()
            .expect("reduced Laplacian of a graph has a nonnegative determinant")
    }

    /// Number of edges whose removal increases the component count.
    pub fn count_bridges(&self) -> usize {
        self.bridges().len()
    }

    /// Indices of bridge edges, ascending.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.n;
        let mut disc = vec![u32::MAX; n];
        let mut low = vec![0u32; n];
        let mut timer = 0u32;
        let mut out = Vec::new();
        // Frames: (vertex, edge index used to enter it, next adjacency cursor).
        let mut stack: Vec<(usize, u32, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != u32::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, u32::MAX, self.offsets[root]));
            while let Some(frame) = stack.last_mut() {
                let (v, via, cursor) = *frame;
                if cursor < self.offsets[v + 1] {
                    frame.2 += 1;
                    let (w, e) = self.adj[cursor];
                    if e == via {
                        continue;
                    }
                    let w = w as usize;
                    if disc[w] == u32::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, e, self.offsets[w]));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push(via as usize);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Edge connectivity: the fewest edges whose removal disconnects the
    /// graph, by exhaustive search over edge subsets of growing size.
    /// Returns 0 for disconnected graphs and for graphs with < 2 vertices.
    pub fn edge_connectivity(&self) -> usize {
        if self.n < 2 || !self.is_connected() {
            return 0;
        }
        let min_degree = self.degrees().into_iter().min().unwrap_or(0);
        let m = self.edges.len();
        let mut removed = vec![false; m];
        for k in 1..min_degree {
            let mut chosen: Vec<usize> = (0..k).collect();
            loop {
                for &i in &chosen {
                    removed[i] = true;
                }
                let cut = !self.spanning_subgraph(|i| !removed[i]).is_connected();
                for &i in &chosen {
                    removed[i] = false;
                }
                if cut {
                    return k;
                }
                if !next_combination(&mut chosen, m) {
                    break;
                }
            }
        }
        min_degree
    }

    /// Eigenvalues of the combinatorial or normalized Laplacian, ascending.
    pub fn laplacian_spectrum(&self, kind: LaplacianKind) -> Result<Spectrum> {
        if self.n < 2 {
            return Err(Error::Precondition(format!(
                "Laplacian spectrum needs at least 2 vertices, got {}",
                self.n
            )));
        }
        let n = self.n;
        let mut l = DMatrix::<f64>::zeros(n, n);
        match kind {
            LaplacianKind::Combinatorial => {
                for v in 0..n {
                    l[(v, v)] = self.degree(v) as f64;
                }
                for &(u, v) in &self.edges {
                    l[(u as usize, v as usize)] = -1.0;
                    l[(v as usize, u as usize)] = -1.0;
                }
            }
            LaplacianKind::Normalized => {
                // Isolated vertices get a zero diagonal entry.
                for v in 0..n {
                    if self.degree(v) > 0 {
                        l[(v, v)] = 1.0;
                    }
                }
                for &(u, v) in &self.edges {
                    let (u, v) = (u as usize, v as usize);
                    let w = -1.0 / ((self.degree(u) * self.degree(v)) as f64).sqrt();
                    l[(u, v)] = w;
                    l[(v, u)] = w;
                }
            }
        }
        let mut eigenvalues: Vec<f64> = l.symmetric_eigenvalues().iter().copied().collect();
        if let Some(bad) = eigenvalues.iter().find(|x| !x.is_finite()) {
            return Err(Error::Numerical(format!("non-finite eigenvalue {bad}")));
        }
        eigenvalues.sort_by(f64::total_cmp);
        Ok(Spectrum { eigenvalues, kind })
    }

    /// Second-smallest eigenvalue of the combinatorial Laplacian.
    pub fn algebraic_connectivity(&self) -> Result<f64> {
        Ok(self.laplacian_spectrum(LaplacianKind::Combinatorial)?.eigenvalues[1])
    }

    /// Number of edges with both endpoints in `set` (given as a membership mask).
    pub fn induced_edge_count(&self, member: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| member[u as usize] && member[v as usize])
            .count()
    }

    /// Number of edges with exactly one endpoint in `set`.
    pub fn edge_boundary(&self, member: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| member[u as usize] != member[v as usize])
            .count()
    }

    /// Canonical text form: `n m` then one `u v` line per edge, sorted.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines.by_ref().take(m) {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header promises {m} edges, found {}",
                edges.len()
            )));
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing line after {m} edges: {extra:?}")));
        }
        Graph::new(n, edges)
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::from_text(s)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a?, b?)),
        _ => Err(Error::Parse(format!("expected two integers, got {line:?}"))),
    }
}

/// Advances `c` (strictly increasing indices below `m`) to the next
/// combination in lexicographic order; false when exhausted.
pub(crate) fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub(crate) fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let k = a.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..k {
        if a[col][col].is_zero() {
            match (col + 1..k).find(|&r| !a[r][col].is_zero()) {
                Some(r) => {
                    a.swap(col, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in col + 1..k {
            for j in col + 1..k {
                let v = (&a[i][j] * &a[col][col] - &a[i][col] * &a[col][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[col][col].clone();
    }
    sign * &a[k - 1][k - 1]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LaplacianKind {
    /// `D - A`.
    Combinatorial,
    /// `I - D^{-1/2} A D^{-1/2}`, with zero rows for isolated vertices.
    Normalized,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub kind: LaplacianKind,
}

impl Spectrum {
    /// Number of eigenvalues within [`EIGEN_ZERO_TOL`] of zero; for either
    /// Laplacian this is the number of connected components.
    pub fn zero_multiplicity(&self) -> usize {
        self.eigenvalues
            .iter()
            .filter(|x| x.abs() <= EIGEN_ZERO_TOL)
            .count()
    }
}

/// Erdős–Gallai test. The input is sorted internally, so any order is accepted.
pub fn is_graphic(seq: &[usize]) -> bool {
    let mut d = seq.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    let total: usize = d.iter().sum();
    if !total.is_multiple_of(2) {
        return false;
    }
    let mut prefix = 0usize;
    for k in 1..=n {
        prefix += d[k - 1];
        let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

/// Cartesian product with the default vertex cap.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    cartesian_product_with_cap(g, h, DEFAULT_VERTEX_CAP)
}

/// Cartesian product `g □ h`; vertex `(u, v)` is encoded as `u * |V(h)| + v`.
pub fn cartesian_product_with_cap(g: &Graph, h: &Graph, cap: usize) -> Result<Graph> {
    if g.n == 0 || h.n == 0 {
        return Err(Error::Precondition("Cartesian product of an empty graph".into()));
    }
    let total = (g.n as u128) * (h.n as u128);
    if total > cap as u128 {
        return Err(Error::Capacity {
            what: "product vertex count",
            requested: total,
            cap: cap as u128,
        });
    }
    let hn = h.n;
    let mut edges = Vec::with_capacity(g.n * h.edge_count() + h.n * g.edge_count());
    for x in 0..total as usize {
        let (u, v) = (x / hn, x % hn);
        // Larger neighbours of x, ascending: first same-u moves in h (smaller
        // codes), then moves in g (which change the high part).
        for w in h.neighbors(v).filter(|&w| w > v) {
            edges.push((x as u32, (u * hn + w) as u32));
        }
        for w in g.neighbors(u).filter(|&w| w > u) {
            edges.push((x as u32, (w * hn + v) as u32));
        }
    }
    Ok(Graph::from_sorted_edges(total as usize, edges))
}
