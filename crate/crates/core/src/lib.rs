//! Exact computation with continuous piecewise-linear self-maps of `[0, 1]`.
//!
//! * [`plmap`]: the map type and its exact algebra.
//! * [`entropy`]: certified entropy bounds from lap growth, Markov
//!   partitions and horseshoes.
//! * [`homotopy`]: box maps and the homotopies built from them and from the
//!   monotone envelope.
//! * [`paperlab`]: a seeded verification harness over random map corpora.

pub mod entropy;
pub mod error;
pub mod homotopy;
pub mod paperlab;
pub mod plmap;
pub mod rational;

pub use error::{Error, Result};
pub use plmap::{affine_combine, compose, make_broken_line, reflect_values, PlMap, Point};
pub use rational::{rat, Rational};
