//! Book drawings of complete bipartite graphs `K_{m,n}` in the circular model.
//!
//! A `k`-page drawing is a single cyclic vertex order (the spine) together
//! with an assignment of every edge to one of `k` pages; two edges on the
//! same page cross iff their endpoints interleave around the circle.
//!
//! The crate provides the drawing representation and crossing counter
//! ([`drawings`]), the explicit drawing families ([`constructions`]),
//! enumeration of layouts up to rotation and reflection ([`enumeration`]),
//! the conflict-graph colorability pipeline ([`coloring`]), closed-form
//! bounds ([`bounds`]), a brute-force ground truth for tiny instances
//! ([`oracle`]) and SVG rendering ([`render`]).

pub mod bounds;
pub mod coloring;
pub mod constructions;
pub mod drawings;
pub mod enumeration;
mod error;
pub mod oracle;
pub mod render;

pub use error::{Error, Result};
