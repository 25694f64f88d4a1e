//! Colored point selection: exact colorful simplicial depth, deep-point
//! search, and Monte Carlo containment probabilities for families of
//! continuous measures.
//!
//! The crate is organised by capability:
//!
//! - [`geometry`]: exact rational points, orientation and closed-simplex membership
//! - [`depth`]: colorful depth (brute force in any dimension, angular sweep in
//!   the plane), exact planar maximum-depth search and selection-bound checks
//! - [`measures`]: samplers, mollification of point sets, containment
//!   probability estimation and deep-point search
//! - [`constructions`]: seeded instance generators
//! - [`bounds`]: the table of known first-selection constants
//! - [`io`] and [`cli`]: dataset formats and the experiment runner behind `colsel`

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod depth;
pub mod error;
pub mod geometry;
pub mod io;
pub mod measures;
pub mod rational;
pub mod rng;

pub use error::{Error, Result};
pub use geometry::{
    contains, general_position_check, orientation, perturb, ColoredPointSet, Orientation, Point,
    PositionReport, Simplex,
};
pub use rational::Rational;
