//! Plane cubics `y^2 = x^3 + a2 x^2 + a4 x + a6` over the rationals and their
//! chord-tangent group law.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::poly::rational_roots;
use crate::rational::Rational;

/// A point of a cubic: the point at infinity or an affine pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl CurvePoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        Self::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            Self::Affine { x, .. } => Some(x),
            Self::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&Rational> {
        match self {
            Self::Affine { y, .. } => Some(y),
            Self::Infinity => None,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "O"),
            Self::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// Order of a point in the Mordell-Weil group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointOrder {
    Finite(u32),
    Infinite,
}

impl PointOrder {
    pub fn is_torsion(&self) -> bool {
        matches!(self, Self::Finite(_))
    }
}

impl fmt::Display for PointOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(k) => write!(f, "{k}"),
            Self::Infinite => write!(f, "infinite"),
        }
    }
}

/// Largest order a rational torsion point can have.
pub const MAX_TORSION_ORDER: u32 = 12;

/// `y^2 = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicCurve {
    a2: Rational,
    a4: Rational,
    a6: Rational,
}

impl CubicCurve {
    /// A nonsingular cubic; fails when the discriminant vanishes.
    pub fn new(a2: Rational, a4: Rational, a6: Rational) -> Result<Self> {
        let curve = Self::new_unchecked(a2, a4, a6);
        if curve.discriminant().is_zero() {
            return domain(format!("{curve} is singular"));
        }
        Ok(curve)
    }

    /// A cubic that may be singular. The group law is meaningless on singular
    /// curves, but point membership still is.
    pub fn new_unchecked(a2: Rational, a4: Rational, a6: Rational) -> Self {
        Self { a2, a4, a6 }
    }

    pub fn a2(&self) -> &Rational {
        &self.a2
    }

    pub fn a4(&self) -> &Rational {
        &self.a4
    }

    pub fn a6(&self) -> &Rational {
        &self.a6
    }

    /// `x^3 + a2 x^2 + a4 x + a6`.
    pub fn rhs(&self, x: &Rational) -> Rational {
        ((x + &self.a2) * x + &self.a4) * x + &self.a6
    }

    fn rhs_derivative(&self, x: &Rational) -> Rational {
        (Rational::from_integer(3.into()) * x + &self.a2 * Rational::from_integer(2.into())) * x
            + &self.a4
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    fn require(&self, p: &CurvePoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve(p.to_string()))
        }
    }

    pub fn negate(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.require(p)?;
        Ok(neg(p))
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.require(p)?;
        self.require(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn double(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.add(p, p)
    }

    pub(crate) fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return CurvePoint::Infinity;
            }
            self.rhs_derivative(x1) / (y1 * Rational::from_integer(2.into()))
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - &self.a2 - x1 - x2;
        let y3 = lambda * (x1 - &x3) - y1;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// `[k] P` by double-and-add.
    pub fn scalar_mul(&self, k: i64, p: &CurvePoint) -> Result<CurvePoint> {
        self.require(p)?;
        let base = if k < 0 { neg(p) } else { p.clone() };
        Ok(self.mul_unchecked(k.unsigned_abs(), &base))
    }

    pub(crate) fn mul_unchecked(&self, mut k: u64, p: &CurvePoint) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        let mut base = p.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        acc
    }

    /// `[1] P, [2] P, ..., [count] P`.
    pub fn multiples(&self, p: &CurvePoint, count: usize) -> Result<Vec<CurvePoint>> {
        self.require(p)?;
        let mut out = Vec::with_capacity(count);
        let mut cur = CurvePoint::Infinity;
        for _ in 0..count {
            cur = self.add_unchecked(&cur, p);
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Order of `P`, found by scanning `[k] P` for `k <= 12`.
    ///
    /// A rational point whose multiples up to twelve never reach the identity
    /// cannot be torsion, so this is exact.
    pub fn point_order(&self, p: &CurvePoint) -> Result<PointOrder> {
        self.require(p)?;
        let mut cur = p.clone();
        for k in 1..=MAX_TORSION_ORDER {
            if cur.is_infinity() {
                return Ok(PointOrder::Finite(k));
            }
            cur = self.add_unchecked(&cur, p);
        }
        Ok(PointOrder::Infinite)
    }

    fn b_invariants(&self) -> (Rational, Rational, Rational, Rational) {
        let k = |n: i64| Rational::from_integer(n.into());
        let b2 = k(4) * &self.a2;
        let b4 = k(2) * &self.a4;
        let b6 = k(4) * &self.a6;
        let b8 = k(4) * &self.a2 * &self.a6 - &self.a4 * &self.a4;
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> Rational {
        let k = |n: i64| Rational::from_integer(n.into());
        let (b2, b4, b6, b8) = self.b_invariants();
        -(&b2 * &b2 * &b8) - k(8) * &b4 * &b4 * &b4 - k(27) * &b6 * &b6 + k(9) * &b2 * &b4 * &b6
    }

    pub fn j_invariant(&self) -> Result<Rational> {
        let delta = self.discriminant();
        if delta.is_zero() {
            return domain(format!("{self} is singular"));
        }
        let (b2, b4, _, _) = self.b_invariants();
        let c4 = &b2 * &b2 - Rational::from_integer(24.into()) * b4;
        Ok(&c4 * &c4 * &c4 / delta)
    }

    /// The rational points of order two, sorted by `x`.
    pub fn two_torsion(&self) -> Vec<CurvePoint> {
        rational_roots(&[
            self.a6.clone(),
            self.a4.clone(),
            self.a2.clone(),
            Rational::one(),
        ])
        .into_iter()
        .map(|x| CurvePoint::affine(x, Rational::zero()))
        .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.a2.is_integer() && self.a4.is_integer() && self.a6.is_integer()
    }

    /// An isomorphic model with integer coefficients, together with the scale
    /// `u > 0` such that `(x, y) -> (u^2 x, u^3 y)` maps this curve onto it.
    pub fn integral_model(&self) -> (CubicCurve, BigInt) {
        // Smallest u with u^2 a2, u^4 a4, u^6 a6 integral: take u to be the
        // product over primes p of p^ceil(max(v2/2, v4/4, v6/6)).
        let mut u = BigInt::one();
        let dens = [self.a2.denom(), self.a4.denom(), self.a6.denom()];
        let all = dens.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
        for (p, _) in crate::factor::factorize(all.magnitude()) {
            let p = BigInt::from(p);
            let mut need = 0u32;
            for (d, w) in dens.iter().zip([2u32, 4, 6]) {
                let mut v = 0u32;
                let mut dd = (*d).clone();
                while (&dd % &p).is_zero() {
                    dd /= &p;
                    v += 1;
                }
                need = need.max(v.div_ceil(w));
            }
            u *= p.pow(need);
        }
        (self.scaled(&u), u)
    }

    fn scaled(&self, u: &BigInt) -> CubicCurve {
        let u2 = Rational::from_integer(u * u);
        let u4 = &u2 * &u2;
        let u6 = &u4 * &u2;
        CubicCurve::new_unchecked(&self.a2 * u2, &self.a4 * u4, &self.a6 * u6)
    }

    /// Maps a point through `(x, y) -> (u^2 x, u^3 y)`.
    pub fn scale_point(p: &CurvePoint, u: &BigInt) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let u = Rational::from_integer(u.clone());
                CurvePoint::affine(x * &u * &u, y * &u * &u * &u)
            }
        }
    }

    /// Inverse of [`CubicCurve::scale_point`].
    pub fn unscale_point(p: &CurvePoint, u: &BigInt) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let u = Rational::from_integer(u.clone());
                CurvePoint::affine(x / (&u * &u), y / (&u * &u * &u))
            }
        }
    }

    /// `true` when the point is affine with `y == 0` or is the identity.
    pub fn is_two_torsion(p: &CurvePoint) -> bool {
        p.y().is_none_or(|y| y.is_zero())
    }
}

fn neg(p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => CurvePoint::affine(x.clone(), -y),
    }
}

impl fmt::Display for CubicCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3")?;
        for (c, mono) in [(&self.a2, " x^2"), (&self.a4, " x"), (&self.a6, "")] {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}{mono}", c.abs())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn pt(x: i64, y: i64) -> CurvePoint {
        CurvePoint::affine(int(x), int(y))
    }

    #[test]
    fn congruent_curve_five() {
        // y^2 = x^3 - 25 x carries (-4, 6) of infinite order.
        let e = CubicCurve::new(int(0), int(-25), int(0)).unwrap();
        let p = pt(-4, 6);
        assert!(e.contains(&p));
        assert_eq!(e.point_order(&p).unwrap(), PointOrder::Infinite);
        let two_p = e.double(&p).unwrap();
        assert_eq!(
            two_p,
            CurvePoint::affine(frac(1681, 144), frac(-62279, 1728))
        );
        assert_eq!(e.two_torsion().len(), 3);
    }

    #[test]
    fn order_four_point() {
        // y^2 = x^3 - x^2 + x: the tangent at (1, 1) meets the curve at (0, 0).
        let e = CubicCurve::new(int(-1), int(1), int(0)).unwrap();
        assert_eq!(e.point_order(&pt(1, 1)).unwrap(), PointOrder::Finite(4));
        assert_eq!(e.point_order(&pt(0, 0)).unwrap(), PointOrder::Finite(2));
        assert_eq!(e.point_order(&CurvePoint::Infinity).unwrap(), PointOrder::Finite(1));
    }

    #[test]
    fn singular_rejected() {
        assert!(CubicCurve::new(int(2), int(1), int(0)).is_err());
        assert!(CubicCurve::new(int(0), int(0), int(0)).is_err());
        let c = CubicCurve::new_unchecked(int(2), int(1), int(0));
        assert!(c.j_invariant().is_err());
    }

    #[test]
    fn discriminant_and_j() {
        let e = CubicCurve::new(int(0), int(-1), int(0)).unwrap();
        assert_eq!(e.discriminant(), int(64));
        assert_eq!(e.j_invariant().unwrap(), int(1728));
        let e = CubicCurve::new(int(0), int(0), int(1)).unwrap();
        assert_eq!(e.j_invariant().unwrap(), int(0));
    }

    #[test]
    fn off_curve_errors() {
        let e = CubicCurve::new(int(0), int(-25), int(0)).unwrap();
        assert!(matches!(e.add(&pt(1, 1), &pt(-4, 6)), Err(Error::NotOnCurve(_))));
    }

    #[test]
    fn integral_model_scales() {
        let e = CubicCurve::new(frac(1, 4), frac(-1, 16), frac(1, 27)).unwrap();
        let (model, u) = e.integral_model();
        assert!(model.is_integral());
        assert_eq!(u, BigInt::from(6));
        assert_eq!(model.j_invariant().unwrap(), e.j_invariant().unwrap());
    }
}
