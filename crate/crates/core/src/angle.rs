//! Angles with rational cosine.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::rational::{sqrt_int, Rational};

/// An angle `theta` in `(0, pi)` with `cos theta = s / r`.
///
/// `r > 0`, `|s| < r`, `gcd(r, s) = 1`. When `r^2 - s^2` is a perfect square
/// its root `t` is cached and the angle is called Pythagorean.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Angle {
    r: BigInt,
    s: BigInt,
    t: Option<BigInt>,
}

impl Angle {
    pub fn new(r: impl Into<BigInt>, s: impl Into<BigInt>) -> Result<Self> {
        let (r, s) = (r.into(), s.into());
        if !r.is_positive() {
            return domain(format!("angle ({r},{s}): r must be positive"));
        }
        if s.abs() >= r {
            return domain(format!("angle ({r},{s}): need |s| < r"));
        }
        if !r.gcd(&s).is_one() {
            return domain(format!("angle ({r},{s}): r and s must be coprime"));
        }
        let t = sqrt_int(&(&r * &r - &s * &s));
        Ok(Self { r, s, t })
    }

    /// The angle whose cosine is `c`, with `-1 < c < 1`.
    pub fn from_cos(c: &Rational) -> Result<Self> {
        Self::new(c.denom().clone(), c.numer().clone())
    }

    /// The right angle, `cos = 0`.
    pub fn right() -> Self {
        Self::new(1, 0).expect("valid angle")
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    /// `sqrt(r^2 - s^2)` when it is an integer.
    pub fn t(&self) -> Option<&BigInt> {
        self.t.as_ref()
    }

    pub fn is_pythagorean(&self) -> bool {
        self.t.is_some()
    }

    pub fn cos(&self) -> Rational {
        Rational::new(self.s.clone(), self.r.clone())
    }

    /// `sin theta = t / r` for Pythagorean angles.
    pub fn sin(&self) -> Option<Rational> {
        self.t.as_ref().map(|t| Rational::new(t.clone(), self.r.clone()))
    }

    /// `r^2 - s^2`.
    pub fn t_squared(&self) -> BigInt {
        &self.r * &self.r - &self.s * &self.s
    }

    /// The supplementary angle `pi - theta`.
    pub fn reflect(&self) -> Self {
        Self {
            r: self.r.clone(),
            s: -&self.s,
            t: self.t.clone(),
        }
    }

    pub fn is_right(&self) -> bool {
        self.s.is_zero()
    }

    /// `(r, s, r^2 - s^2)` as rationals.
    pub(crate) fn rationals(&self) -> (Rational, Rational, Rational) {
        (
            Rational::from_integer(self.r.clone()),
            Rational::from_integer(self.s.clone()),
            Rational::from_integer(self.t_squared()),
        )
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}
