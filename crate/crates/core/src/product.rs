//! Cartesian powers of a small base graph: the binary cube `Q^n` (base K2),
//! the ternary cube `3Q^n` (base K3) and the grid `P3^n` (base path on
//! three vertices), plus powers of an arbitrary base.
//!
//! Vertices are positional base-`|V|` numerals: vertex `x` has digit
//! `(x / b^j) % b` in coordinate `j`. Two vertices are adjacent when they
//! differ in exactly one coordinate and the two digits are adjacent in the
//! base graph.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, DEFAULT_VERTEX_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    K2,
    K3,
    P3,
    Custom(Graph),
}

impl Base {
    pub fn graph(&self) -> Graph {
        match self {
            Base::K2 => Graph::complete(2),
            Base::K3 => Graph::complete(3),
            Base::P3 => Graph::path(3),
            Base::Custom(g) => g.clone(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Base::K2 => 2,
            Base::K3 | Base::P3 => 3,
            Base::Custom(g) => g.vertex_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    pub base: Base,
    pub exponent: u32,
    pub vertex_cap: usize,
}

impl ProductSpec {
    pub fn new(base: Base, exponent: u32) -> Result<Self> {
        Self::with_cap(base, exponent, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(base: Base, exponent: u32, vertex_cap: usize) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::OutOfRange("product exponent must be at least 1".into()));
        }
        if base.order() == 0 {
            return Err(Error::Precondition("base graph has no vertices".into()));
        }
        let spec = Self {
            base,
            exponent,
            vertex_cap,
        };
        let count = spec.vertex_count_u128();
        if count > vertex_cap as u128 {
            return Err(Error::Capacity {
                what: "product vertex count",
                requested: count,
                cap: vertex_cap as u128,
            });
        }
        Ok(spec)
    }

    pub fn hypercube(n: u32) -> Result<Self> {
        Self::new(Base::K2, n)
    }

    pub fn ternary_cube(n: u32) -> Result<Self> {
        Self::new(Base::K3, n)
    }

    pub fn path_power(n: u32) -> Result<Self> {
        Self::new(Base::P3, n)
    }

    fn vertex_count_u128(&self) -> u128 {
        // saturates well above any sensible cap
        (self.base.order() as u128)
            .checked_pow(self.exponent)
            .unwrap_or(u128::MAX)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count_u128() as usize
    }

    /// Closed-form edge count: `n 2^{n-1}`, `n 3^n`, `2n 3^{n-1}`, or
    /// `n |E| |V|^{n-1}` for a custom base.
    pub fn edge_count(&self) -> usize {
        let n = self.exponent as usize;
        match &self.base {
            Base::K2 => n << (n - 1),
            Base::K3 => n * 3usize.pow(n as u32),
            Base::P3 => 2 * n * 3usize.pow(n as u32 - 1),
            Base::Custom(g) => n * g.edge_count() * g.vertex_count().pow(n as u32 - 1),
        }
    }

    /// Degree of `vertex` from its digits alone.
    pub fn degree_of(&self, vertex: usize) -> Result<usize> {
        if vertex >= self.vertex_count() {
            return Err(Error::OutOfRange(format!(
                "vertex {vertex} not below {}",
                self.vertex_count()
            )));
        }
        let n = self.exponent as usize;
        Ok(match &self.base {
            Base::K2 => n,
            Base::K3 => 2 * n,
            Base::P3 => n + digits(vertex, 3, n).filter(|&d| d == 1).count(),
            Base::Custom(g) => digits(vertex, g.vertex_count(), n)
                .map(|d| g.degree(d))
                .sum(),
        })
    }

    pub fn build(&self) -> Graph {
        let base = self.base.graph();
        let b = base.vertex_count();
        let n = self.exponent as usize;
        let total = self.vertex_count();
        let mut weights = Vec::with_capacity(n);
        let mut w = 1usize;
        for _ in 0..n {
            weights.push(w);
            w *= b;
        }
        let mut edges = Vec::with_capacity(self.edge_count());
        let mut larger = Vec::new();
        for x in 0..total {
            larger.clear();
            for &wj in &weights {
                let d = (x / wj) % b;
                for e in base.neighbors(d).filter(|&e| e > d) {
                    larger.push((x + (e - d) * wj) as u32);
                }
            }
            larger.sort_unstable();
            edges.extend(larger.iter().map(|&y| (x as u32, y)));
        }
        Graph::from_sorted_edges(total, edges)
    }

    pub fn family(&self) -> Option<Family> {
        match self.base {
            Base::K2 => Some(Family::Q),
            Base::K3 => Some(Family::Q3),
            Base::P3 => Some(Family::P3),
            Base::Custom(_) => None,
        }
    }
}

/// Digits of `x` in base `b`, least significant first, exactly `n` of them.
pub fn digits(mut x: usize, b: usize, n: usize) -> impl Iterator<Item = usize> {
    (0..n).map(move |_| {
        let d = x % b;
        x /= b;
        d
    })
}

/// The three named product families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    /// Binary hypercube `Q^n`.
    Q,
    /// Ternary Hamming graph `3Q^n`.
    Q3,
    /// Grid `P3^n`.
    P3,
}

impl Family {
    pub fn base(self) -> Base {
        match self {
            Family::Q => Base::K2,
            Family::Q3 => Base::K3,
            Family::P3 => Base::P3,
        }
    }

    pub fn spec(self, n: u32) -> Result<ProductSpec> {
        ProductSpec::new(self.base(), n)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Family::Q => "q",
            Family::Q3 => "q3",
            Family::P3 => "p3",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Family::Q),
            "q3" => Ok(Family::Q3),
            "p3" => Ok(Family::P3),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// Textual graph selector: `q:<n>`, `q3:<n>`, `p3:<n>`, `file:<path>`,
/// and the small named graphs `k:<n>`, `c:<n>`, `path:<n>`, `star:<n>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Product(Family, u32),
    File(PathBuf),
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Star(usize),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Product(f, n) => Ok(f.spec(*n)?.build()),
            GraphSpec::File(path) => Graph::from_text(&std::fs::read_to_string(path)?),
            GraphSpec::Complete(n) => Ok(Graph::complete(*n)),
            GraphSpec::Cycle(n) => Graph::cycle(*n),
            GraphSpec::Path(n) => Ok(Graph::path(*n)),
            GraphSpec::Star(n) => Ok(Graph::star(*n)),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Product(fam, n) => write!(f, "{fam}:{n}"),
            GraphSpec::File(p) => write!(f, "file:{}", p.display()),
            GraphSpec::Complete(n) => write!(f, "k:{n}"),
            GraphSpec::Cycle(n) => write!(f, "c:{n}"),
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Star(n) => write!(f, "star:{n}"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("graph spec {s:?} is not of the form kind:arg")))?;
        if kind == "file" {
            return Ok(GraphSpec::File(PathBuf::from(arg)));
        }
        let num: usize = arg
            .parse()
            .map_err(|e| Error::Parse(format!("bad size in {s:?}: {e}")))?;
        Ok(match kind {
            "q" | "q3" | "p3" => GraphSpec::Product(kind.parse()?, num as u32),
            "k" => GraphSpec::Complete(num),
            "c" => GraphSpec::Cycle(num),
            "path" => GraphSpec::Path(num),
            "star" => GraphSpec::Star(num),
            other => return Err(Error::Parse(format!("unknown graph kind {other:?}"))),
        })
    }
}
