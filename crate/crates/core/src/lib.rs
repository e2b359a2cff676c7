//! Computational companion for shadows, clique counts and intersecting
//! families of uniform hypergraphs.
//!
//! An `r`-graph on at most 64 vertices is a [`KGraph`]; each edge is a `u64`
//! bitmask, so numeric order on edges of equal size is colex order.
//!
//! ```
//! use extremal::{gbinom, KGraph};
//!
//! let c4 = KGraph::from_lists(4, 2, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]).unwrap();
//! assert_eq!(c4.shadow().unwrap().len(), 4);
//! let x = gbinom::solve_x(c4.len() as u64, 2).unwrap();
//! assert!(c4.shadow().unwrap().len() as f64 >= gbinom::gbinom(x, 1));
//! ```

pub mod bits;
pub mod cayley;
pub mod colex;
pub mod cyclic;
pub mod ekr;
pub mod enumerate;
pub mod error;
pub mod estimates;
pub mod gbinom;
pub mod gen;
pub mod incmat;
pub mod kgraph;
pub mod kkbound;
pub mod rank;
pub mod stability;

pub use error::{Error, Result};
pub use kgraph::KGraph;

/// Guide chapters, compiled so their snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hypergraphs.md")]
    mod hypergraphs {}
    #[doc = include_str!("../../../book/src/kruskal-katona.md")]
    mod kruskal_katona {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/intersecting.md")]
    mod intersecting {}
    #[doc = include_str!("../../../book/src/cyclic-orders.md")]
    mod cyclic_orders {}
    #[doc = include_str!("../../../book/src/cayley.md")]
    mod cayley {}
    #[doc = include_str!("../../../book/src/inclusion-matrices.md")]
    mod inclusion_matrices {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
