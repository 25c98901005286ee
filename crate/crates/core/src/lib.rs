//! Exact and Monte Carlo tools for connectivity of random subgraphs:
//! cube-like product graphs, their edge-isoperimetric profiles, edge
//! percolation experiments, all-terminal reliability polynomials, and the
//! search for uniformly optimally reliable graphs.

pub mod error;
pub mod access;
pub mod canon;
pub mod graph;
pub mod iso;
pub mod perc;
pub mod poly;
pub mod product;
pub mod reference;
pub mod reliability;
pub mod rng;
pub mod unionfind;
pub mod uor;

pub use error::{Error, Result};
pub use graph::{Graph, LaplacianKind, Spectrum};
