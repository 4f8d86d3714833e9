//! Exact algebra for edge ideals of small graphs.
//!
//! The crate builds the parity binomial edge ideal `I_G`, the binomial edge
//! ideal `J_G`, the LSS ideal `L_G` and the permanental edge ideal `Pi_G` of a
//! finite simple graph, computes Groebner bases, colon ideals and
//! eliminations, and produces graded Betti tables by two independent routes
//! (Schreyer resolutions and Koszul homology). The [`theorems`] module turns
//! the known structural results about these ideals into checkable claims and
//! sweeps them over exhaustively enumerated graphs.

pub mod error;
pub mod graphs;
pub mod groebner;
pub mod ideals;
pub mod resolution;
pub mod ring;
pub mod theorems;

pub use error::{Error, Result};
pub use graphs::Graph;
