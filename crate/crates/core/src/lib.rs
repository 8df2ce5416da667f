//! Exact rational theta-parallelogram envelopes and the elliptic curves that
//! govern them.
//!
//! An angle `theta` with `cos theta = s/r` and a positive integer `n` admit an
//! envelope when positive rationals `a, b, c, d, e` satisfy
//!
//! ```text
//! a^2 + b^2 - (2s/r) a b = c^2
//! a^2 + d^2 + (2s/r) a d = e^2
//! a (b + d) = r n
//! ```
//!
//! The crate verifies and constructs such envelopes, implements the curve
//! families and birational maps that parametrize them, classifies the torsion
//! of the ratio curve `G_theta^m`, and searches for points of bounded height.
//! All arithmetic is exact.

pub mod angle;
pub mod cli;
pub mod elliptic;
pub mod envelopes;
pub mod error;
pub mod factor;
pub mod poly;
pub mod rational;
pub mod records;
pub mod reproduce;
pub mod search;
pub mod tables;
pub mod theta_curves;
pub mod transforms;

pub use angle::Angle;
pub use elliptic::{CubicCurve, CurvePoint, PointOrder};
pub use error::{Error, Result};
pub use rational::{int, parse_rational, sqrt_exact, squarefree_part, Rational};
