//! Richardson elements for seaweed Lie algebras in `gl_n`.
//!
//! A seaweed given by two compositions of `n` determines a type-A quiver and a
//! Δ-dimension vector. The unique exceptional Δ-filtered module with that
//! vector is assembled from staircase modules on linear segments glued at the
//! interior sources and sinks, and its arrow diagram is read off as an
//! explicit element of the nilradical. Every claim is checked by exact
//! rational linear algebra.

pub mod builder;
pub mod diagram;
pub mod error;
pub mod gluing;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod seaweed;

pub use error::{Error, Result};
pub use linalg::{Rational, RationalMatrix};
pub use quiver::{Edge, TypeAQuiver};
pub use rep::{DeltaVector, Representation};
