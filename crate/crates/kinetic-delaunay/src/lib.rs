//! Planar Delaunay triangulations and Voronoi diagrams, computed
//! output-sensitively: refine the input into a well-spaced superset, then
//! grow the input weights and flip the Steiner points back out of the
//! weighted Delaunay triangulation in event order.
//!
//! The crate is organized around the phases of that pipeline:
//!
//! * [`kernel`] — exact predicates: orientation, the time-parameterized
//!   power in-circle test, event-time solving, circumballs.
//! * [`complex`] — the mutable triangulation with point location, insertion
//!   and bistellar flips.
//! * [`mesher`] — Voronoi refinement producing a well-spaced superset inside
//!   a bounding box.
//! * [`kinetic`] — the certificate heap and the flip loop that removes
//!   Steiner points as the time parameter grows.
//! * [`oracle`] — brute-force reference constructions and instrumentation
//!   used to cross-check everything above.
//! * [`pipeline`], [`io`], [`gen`], [`render`], [`bench`], [`cli`] — the
//!   end-to-end driver and its command-line surface.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod bench;
pub mod cli;
pub mod complex;
pub mod gen;
pub mod io;
pub mod kernel;
pub mod kinetic;
pub mod mesher;
pub mod oracle;
pub mod pipeline;
pub mod render;
