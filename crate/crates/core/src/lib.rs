//! A combinatorial engine for spanning surfaces of knots and links.
//!
//! The crate builds state surfaces from knot diagrams, decides the
//! adequacy/homogeneity conditions that make them essential, runs the
//! Montesinos and pretzel decision procedures, and assembles normal surfaces
//! in triangulated knot exteriors from a Z/2 edge labeling.  Everything is
//! exact: diagrams are purely combinatorial (PD codes with a rotation
//! system), tangle slopes are big-integer rationals, and every certificate
//! can be re-validated from its witness alone.

pub mod census;
pub mod codes;
pub mod decide;
pub mod diagram;
pub mod fraction;
pub mod normal;
pub mod oracle;
pub mod state;
pub mod tangles;

pub use diagram::Diagram;
pub use fraction::{ContinuedFraction, Fraction};
pub use state::State;
