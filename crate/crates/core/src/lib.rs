//! Exact-arithmetic toolkit for signed and weighted graph adjacency matrices.
//!
//! A graph has a sign `σ: E → {±1}` making `A(G^σ)` nonsingular exactly when
//! it has a {1,2}-factor, and a nowhere-zero integer weighting making
//! `A(G^ω)` singular exactly when it has at least two {1,2}-factors. This
//! crate decides both questions, constructs witnesses, and verifies them with
//! exact determinants.

pub mod assignment;
pub mod detpoly;
pub mod error;
pub mod factors;
pub mod flow;
pub mod graph;
pub mod harness;
pub mod linalg;
pub mod rng;
pub mod signs;
pub mod weights;

pub use assignment::{AssignmentKind, EdgeAssignment};
pub use detpoly::DetPolynomial;
pub use error::{Error, Result};
pub use factors::Factor;
pub use graph::Graph;
pub use linalg::IntMatrix;
