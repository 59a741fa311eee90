//! Riordan graphs over GF(2): construction, classification, decomposition
//! and independent brute-force verification.
//!
//! A binary Riordan matrix `B(g,f)` is the mod-2 reduction of the lower
//! triangular matrix whose j-th column has generating function `g*f^j`. A
//! Riordan graph `G_n(g,f)` is the graph on vertices `1..=n` whose adjacency
//! matrix is `B + B^T` for `B = B(tg,f)_n`. This crate implements the series
//! substrate, the matrix and graph layers, the odd/even decomposition
//! machinery, fractal relabeling, Eulerian/Hamiltonian criteria, and an
//! oracle layer of exhaustive searches that every structural formula is
//! tested against.

pub mod bits;
pub mod decomp;
pub mod error;
pub mod fractal;
pub mod graph;
pub mod matrix;
pub mod ops;
pub mod oracle;
pub mod rng;
pub mod series;
pub mod spec_lang;
pub mod traversal;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, RiordanGraphSpec};
pub use series::BitSeries;
pub use spec_lang::{parse_series_spec, SeriesSpec};

/// Working truncation for a graph of order `n`: the deepest consumers need
/// coefficients to degree `n-1`; the margin absorbs index shifts.
pub fn working_trunc(n: usize) -> usize {
    n + 2
}
