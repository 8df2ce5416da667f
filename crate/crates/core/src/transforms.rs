//! Birational maps and correspondences: the quartic `G_theta^(m,n)` and the
//! cubic `G_theta^m`, curve-system solutions and envelopes, `C_T` and `E_T`,
//! and the certification of `n` from a point of `G_theta^m`.

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::angle::Angle;
use crate::elliptic::{CurvePoint, PointOrder};
use crate::envelopes::{Envelope, Triangle};
use crate::error::{domain, Error, Result};
use crate::rational::{int, sqrt_exact, squarefree_part, Rational};
use crate::theta_curves::{
    a_expression, g_coefficients, g_cubic_unchecked, g_quartic_m, make_c_t, make_e_t,
    make_e_theta, make_f_theta, make_g_cubic,
};

/// A rational solution of
///
/// ```text
/// y^2 = x (x + (r+s) w)(x - (r-s) w)
/// v^2 = u (u - (r+s) N)(u + (r-s) N)
/// x v = u y
/// ```
///
/// with `N = 2n - w`, `y v != 0` and `0 < w < 2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SystemSolution {
    pub u: Rational,
    pub v: Rational,
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
}

impl SystemSolution {
    /// Checks every invariant for `n`.
    pub fn check(&self, angle: &Angle, n: u64) -> Result<()> {
        self.check_q(angle, &int(n))
    }

    pub(crate) fn check_q(&self, angle: &Angle, n: &Rational) -> Result<()> {
        let big_n = int(2) * n - &self.w;
        if !self.w.is_positive() || !big_n.is_positive() {
            return domain(format!("w = {} is outside (0, 2n)", self.w));
        }
        if self.y.is_zero() || self.v.is_zero() {
            return domain("solution has y v = 0");
        }
        let e = make_e_theta(angle, &self.w)?;
        if !e.contains(&CurvePoint::affine(self.x.clone(), self.y.clone())) {
            return domain(format!("({}, {}) is not on E_theta^w", self.x, self.y));
        }
        let f = make_f_theta(angle, &big_n)?;
        if !f.contains(&CurvePoint::affine(self.u.clone(), self.v.clone())) {
            return domain(format!("({}, {}) is not on F_theta^N", self.u, self.v));
        }
        if &self.x * &self.v != &self.u * &self.y {
            return domain("x v != u y");
        }
        Ok(())
    }
}

fn require_m(m: &Rational) -> Result<()> {
    if m.is_positive() {
        Ok(())
    } else {
        domain(format!("m must be positive, got {m}"))
    }
}

fn require_n(n: u64) -> Result<Rational> {
    if n == 0 {
        domain("n must be a positive integer")
    } else {
        Ok(int(n))
    }
}

/// Maps a point of `G_theta^m` to the quartic `G_theta^(m,n)`.
///
/// The point at infinity goes to `(0, 4 n^2 (r^2-s^2) / (m+1)^2)`. Points with
/// `X = 0` or `X = -(r^2 - s^2)` are poles.
pub fn cubic_to_quartic(
    angle: &Angle,
    m: &Rational,
    n: u64,
    p: &CurvePoint,
) -> Result<(Rational, Rational)> {
    let n = require_n(n)?;
    cubic_to_quartic_q(angle, m, &n, p)
}

pub(crate) fn cubic_to_quartic_q(
    angle: &Angle,
    m: &Rational,
    n: &Rational,
    p: &CurvePoint,
) -> Result<(Rational, Rational)> {
    require_m(m)?;
    let (_, s, t2) = angle.rationals();
    let m1 = m + Rational::one();
    let (big_x, big_y) = match p {
        CurvePoint::Infinity => {
            return Ok((Rational::zero(), int(4) * n * n * &t2 / (&m1 * &m1)));
        }
        CurvePoint::Affine { x, y } => (x, y),
    };
    if !g_cubic_unchecked(angle, m).contains(p) {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    if big_x.is_zero() || *big_x == -t2.clone() {
        return Err(Error::Pole(format!(
            "X = {big_x}: the map is undefined on X = 0 and X = -(r^2 - s^2)"
        )));
    }
    let (d1, d2) = g_coefficients(angle, m);
    let xx = big_x + &t2;
    let x = -(int(2) * n * &t2 * (big_y + &s * &m1 * big_x)) / (&m1 * big_x * &xx);
    let cubic = big_x * big_x * big_x
        + (int(2) * &d2 - &t2) * big_x * big_x
        + (int(3) * &d1 + int(2) * &s * &m1 * big_y) * big_x
        + &t2 * &d1;
    let z = int(4) * n * n * &t2 * cubic / (&m1 * &m1 * big_x * &xx * &xx);
    Ok((x, z))
}

/// Maps a point of the quartic `G_theta^(m,n)` to `G_theta^m`; the inverse of
/// [`cubic_to_quartic`].
///
/// The rational expressions for `(X, Y)` in terms of `(x, z)` land on the
/// point `Q - P` when `(x, z)` is the image of `Q`, where `P` is the
/// independent point; the translation by `P` is applied here so that the two
/// maps are mutually inverse. The two points over `x = 0` are handled
/// explicitly: `(0, +4n^2(r^2-s^2)/(m+1)^2)` goes to infinity and
/// `(0, -4n^2(r^2-s^2)/(m+1)^2)` to `P`.
pub fn quartic_to_cubic(
    angle: &Angle,
    m: &Rational,
    n: u64,
    x: &Rational,
    z: &Rational,
) -> Result<CurvePoint> {
    let n = require_n(n)?;
    quartic_to_cubic_q(angle, m, &n, x, z)
}

pub(crate) fn quartic_to_cubic_q(
    angle: &Angle,
    m: &Rational,
    n: &Rational,
    x: &Rational,
    z: &Rational,
) -> Result<CurvePoint> {
    let quartic = g_quartic_m(angle, m, n)?;
    if !quartic.contains(x, z) {
        return Err(Error::NotOnCurve(format!("({x}, {z})")));
    }
    let (_, s, t2) = angle.rationals();
    let m1 = m + Rational::one();
    let m1sq = &m1 * &m1;
    if x.is_zero() {
        return if z.is_positive() {
            Ok(CurvePoint::Infinity)
        } else {
            crate::theta_curves::independent_point(angle, m)
        };
    }
    let (_, d2) = g_coefficients(angle, m);
    let n2t2 = n * n * &t2;
    let zz = &m1sq * z;
    let big_x = -(&t2 * (&m1sq * x * x + int(4) * &s * n * &m1sq * x + &zz - int(4) * &n2t2))
        / (int(2) * &m1sq * x * x);
    let c0 = -(int(2) * n * &t2 * (&zz - int(4) * &n2t2));
    let c1 = &s * &m1sq * (&zz - int(12) * &n2t2);
    let c2 = int(2) * n * &m1sq * (int(2) * &d2 - int(3) * &t2);
    let big_y = &t2 * (&s * &m1sq * &m1sq * x * x * x + c2 * x * x + c1 * x + c0)
        / (int(2) * &m1sq * &m1 * x * x * x);
    let shifted = CurvePoint::affine(big_x, big_y);
    let cubic = g_cubic_unchecked(angle, m);
    if !cubic.contains(&shifted) {
        return Err(Error::Internal(format!("quartic image {shifted} is off the cubic")));
    }
    let p = crate::theta_curves::independent_point(angle, m)?;
    Ok(cubic.add_unchecked(&shifted, &p))
}

/// Both roots of `x u^2 - B u - (r^2-s^2) N^2 x = 0`, where
/// `B = x^2 + 2 x s (N + w) - (r^2 - s^2) w^2`, given the square root `z` of
/// `B^2 + 4 (r^2 - s^2) N^2 x^2`.
pub fn solve_u(
    angle: &Angle,
    w: &Rational,
    big_n: &Rational,
    x: &Rational,
    z: &Rational,
) -> Result<(Rational, Rational)> {
    if x.is_zero() {
        return domain("solve_u needs x != 0");
    }
    let (_, s, t2) = angle.rationals();
    let b = x * x + int(2) * x * &s * (big_n + w) - &t2 * w * w;
    if z * z != &b * &b + int(4) * &t2 * big_n * big_n * x * x {
        return domain(format!("z = {z} is not a square root of the quartic at x = {x}"));
    }
    let two_x = int(2) * x;
    Ok(((&b + z) / &two_x, (&b - z) / &two_x))
}

/// The envelope `(|y/2x|, |rwx/y|, |(x^2 + t2 w^2)/2y|, |rNu/v|, |(u^2 + t2 N^2)/2v|)`.
pub fn solution_to_envelope(angle: &Angle, n: u64, sol: &SystemSolution) -> Result<Envelope> {
    let n = require_n(n)?;
    solution_to_envelope_q(angle, &n, sol)
}

pub(crate) fn solution_to_envelope_q(
    angle: &Angle,
    n: &Rational,
    sol: &SystemSolution,
) -> Result<Envelope> {
    sol.check_q(angle, n)?;
    let (r, _, t2) = angle.rationals();
    let SystemSolution { u, v, w, x, y } = sol;
    let big_n = int(2) * n - w;
    let a = (y / (int(2) * x)).abs();
    let b = (&r * w * x / y).abs();
    let c = ((x * x + &t2 * w * w) / (int(2) * y)).abs();
    let d = (&r * &big_n * u / v).abs();
    let e = ((u * u + &t2 * &big_n * &big_n) / (int(2) * v)).abs();
    let env = Envelope::new(angle.clone(), [a, b, c, d, e])?;
    if !env.failed_relations(n).is_empty() {
        return Err(Error::Internal(format!("solution maps to non-envelope {env}")));
    }
    Ok(env)
}

/// The inverse correspondence: `x = 2a(a + c - (s/r) b)`, `y = 2a x`,
/// `w = 2ab/r`, `u = 2a(a + e + (s/r) d)`, `v = 2a u`.
pub fn envelope_to_solution(env: &Envelope) -> Result<SystemSolution> {
    let n = env.n();
    if !env.failed_relations(&n).is_empty() {
        return domain(format!("{env} is not an envelope"));
    }
    let (r, s, _) = env.angle().rationals();
    let sigma = s / &r;
    let (a, b, c, d, e) = (env.a(), env.b(), env.c(), env.d(), env.e());
    let two_a = int(2) * a;
    let x = &two_a * (a + c - &sigma * b);
    let y = &two_a * &x;
    let w = &two_a * b / &r;
    let u = &two_a * (a + e + &sigma * d);
    let v = &two_a * &u;
    let sol = SystemSolution { u, v, w, x, y };
    sol.check_q(env.angle(), &n)?;
    Ok(sol)
}

/// The point `(X, Y, Z)` of the membership curve attached to a solution,
/// with `m = N / w`.
pub fn solution_to_membership_point(
    angle: &Angle,
    n: u64,
    sol: &SystemSolution,
) -> Result<(Rational, Rational, Rational)> {
    let n = require_n(n)?;
    sol.check_q(angle, &n)?;
    let (_, s, t2) = angle.rationals();
    let SystemSolution { u, w, x, y, .. } = sol;
    let big_n = int(2) * &n - w;
    let m = &big_n / w;
    let b = x * x + int(2) * x * &s * (&big_n + w) - &t2 * w * w;
    let z = int(2) * x * u - b;
    let p = quartic_to_cubic_q(angle, &m, &n, x, &z)?;
    let (big_x, big_y) = match p {
        CurvePoint::Affine { x, y } => (x, y),
        CurvePoint::Infinity => return Err(Error::Pole("solution maps to infinity".into())),
    };
    let big_z = (&m + Rational::one()) * &big_x * (&big_x + &t2) * y / (int(2) * &n * &t2);
    Ok((big_x, big_y, big_z))
}

/// A point of the quartic `C_T`, including its points at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CtPoint {
    Affine { x: Rational, y: Rational },
    AtInfinity,
}

/// `C_T -> E_T`: `X = (T^2 x - 1)/(x + 1)`, `Y = (T^2 + 1) y/(x + 1)^2`;
/// `(-1, 0)` goes to infinity.
pub fn ct_to_et(t: &Rational, x: &Rational, y: &Rational) -> Result<CurvePoint> {
    let c = make_c_t(t)?;
    if !c.contains(x, y) {
        return Err(Error::NotOnCurve(format!("({x}, {y})")));
    }
    let x1 = x + Rational::one();
    if x1.is_zero() {
        return Ok(CurvePoint::Infinity);
    }
    let t2 = t * t;
    Ok(CurvePoint::affine(
        (&t2 * x - Rational::one()) / &x1,
        (&t2 + Rational::one()) * y / (&x1 * &x1),
    ))
}

/// `E_T -> C_T`: `x = (X + 1)/(T^2 - X)`, `y = (T^2 + 1) Y/(T^2 - X)^2`;
/// infinity goes to `(-1, 0)` and `(T^2, +-T (T^2 + 1))` to infinity.
pub fn et_to_ct(t: &Rational, p: &CurvePoint) -> Result<CtPoint> {
    let e = make_e_t(t)?;
    if !e.contains(p) {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    let (big_x, big_y) = match p {
        CurvePoint::Infinity => {
            return Ok(CtPoint::Affine { x: -Rational::one(), y: Rational::zero() })
        }
        CurvePoint::Affine { x, y } => (x, y),
    };
    let t2 = t * t;
    let den = &t2 - big_x;
    if den.is_zero() {
        return Ok(CtPoint::AtInfinity);
    }
    Ok(CtPoint::Affine {
        x: (big_x + Rational::one()) / &den,
        y: (&t2 + Rational::one()) * big_y / (&den * &den),
    })
}

/// The triangle `(|y/x|, |(T^2 x^2 + 1)/y|, |(T^2 x^4 + 1)/(x y)|)` of area `T`.
pub fn triangle_from_ct_point(t: &Rational, x: &Rational, y: &Rational) -> Result<Triangle> {
    if x.is_zero() || y.is_zero() {
        return domain(format!("C_T point ({x}, {y}) has a zero coordinate"));
    }
    let c = make_c_t(t)?;
    if !c.contains(x, y) {
        return Err(Error::NotOnCurve(format!("({x}, {y})")));
    }
    let t2 = t * t;
    let x2 = x * x;
    Triangle::new([
        (y / x).abs(),
        ((&t2 * &x2 + Rational::one()) / y).abs(),
        ((&t2 * &x2 * &x2 + Rational::one()) / (x * y)).abs(),
    ])
}

/// The outcome of [`certified_n`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Squarefree `n` with an envelope of ratio `m`.
    pub n: BigUint,
    /// The input point with the sign of `Y` that was used.
    pub point: CurvePoint,
    pub solution: SystemSolution,
    pub envelope: Envelope,
}

/// From a point of infinite order on `G_theta^m`, the squarefree `n` for which
/// it yields an envelope with ratio `m`, and that envelope.
///
/// Both signs of `Y` are tried; a sign qualifies when the quantity
/// `2 phi / ((m+1) X (X + r^2 - s^2))` is positive, and `n` is its squarefree
/// part. Envelopes for `n k^2` follow by scaling.
pub fn certified_n(angle: &Angle, m: &Rational, p: &CurvePoint) -> Result<Certificate> {
    let curve = make_g_cubic(angle, m)?;
    if let PointOrder::Finite(k) = curve.point_order(p)? {
        return domain(format!("{p} has finite order {k}; torsion points give no envelope"));
    }
    let (big_x, big_y) = match p {
        CurvePoint::Affine { x, y } => (x, y),
        CurvePoint::Infinity => unreachable!("infinity is torsion"),
    };
    let (_, _, t2) = angle.rationals();
    if big_x.is_zero() || *big_x == -t2.clone() {
        return Err(Error::Pole(format!("X = {big_x}")));
    }
    let m1 = m + Rational::one();
    let mut last_err = None;
    for ys in [big_y.clone(), -big_y] {
        let k = a_expression(angle, m, &Rational::one(), big_x, &ys).expect("poles excluded");
        if !k.is_positive() {
            continue;
        }
        let n_int = squarefree_part(&k)?;
        let n = Rational::from_integer(n_int.clone().into());
        let point = CurvePoint::affine(big_x.clone(), ys);
        match certify_with(angle, m, &m1, &n, &k, &point) {
            Ok((solution, envelope)) => {
                return Ok(Certificate { n: n_int, point, solution, envelope });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::Construction(format!("{p}: the square condition is negative for both signs of Y"))
    }))
}

fn certify_with(
    angle: &Angle,
    m: &Rational,
    m1: &Rational,
    n: &Rational,
    k: &Rational,
    p: &CurvePoint,
) -> Result<(SystemSolution, Envelope)> {
    let (_, _, t2) = angle.rationals();
    let big_x = p.x().expect("affine");
    let root = sqrt_exact(&(n * k))?
        .ok_or_else(|| Error::Internal("squarefree scaling did not produce a square".into()))?;
    let (x, z) = cubic_to_quartic_q(angle, m, n, p)?;
    if x.is_zero() {
        return Err(Error::Construction(format!("{p} maps to x = 0")));
    }
    let y = int(2) * n * &t2 / (m1 * big_x * (big_x + &t2)) * root;
    let w = int(2) * n / m1;
    let big_n = int(2) * n * m / m1;
    let (u_plus, u_minus) = solve_u(angle, &w, &big_n, &x, &z)?;
    let mut last = Error::Construction("both roots u vanish".into());
    for u in [u_plus, u_minus] {
        if u.is_zero() {
            continue;
        }
        let v = &u * &y / &x;
        let sol = SystemSolution { u, v, w: w.clone(), x: x.clone(), y: y.clone() };
        match solution_to_envelope_q(angle, n, &sol) {
            Ok(env) if env.ratio() == *m => return Ok((sol, env)),
            Ok(env) => last = Error::Internal(format!("{env} has ratio {} != {m}", env.ratio())),
            Err(e) => last = e,
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, parse_rational};
    use crate::theta_curves::{independent_point, make_g_quartic_m, on_c_theta_mn};

    fn angle(r: i64, s: i64) -> Angle {
        Angle::new(r, s).unwrap()
    }

    #[test]
    fn quartic_roundtrip() {
        let a = angle(2, 1);
        let m = int(2);
        let g = make_g_cubic(&a, &m).unwrap();
        let p = independent_point(&a, &m).unwrap();
        let q = make_g_quartic_m(&a, &m, 3).unwrap();
        for k in 2..6 {
            let pk = g.scalar_mul(k, &p).unwrap();
            let (x, z) = cubic_to_quartic(&a, &m, 3, &pk).unwrap();
            assert!(q.contains(&x, &z));
            assert_eq!(quartic_to_cubic(&a, &m, 3, &x, &z).unwrap(), pk);
        }
        let (x, z) = cubic_to_quartic(&a, &m, 3, &CurvePoint::Infinity).unwrap();
        assert_eq!(x, int(0));
        assert_eq!(quartic_to_cubic(&a, &m, 3, &x, &z).unwrap(), CurvePoint::Infinity);
        let (x, z) = cubic_to_quartic(&a, &m, 3, &p).unwrap();
        assert_eq!(x, int(0));
        assert!(z.is_negative());
        assert_eq!(quartic_to_cubic(&a, &m, 3, &x, &z).unwrap(), p);
        assert!(matches!(
            cubic_to_quartic(&a, &m, 3, &CurvePoint::affine(int(0), int(0))),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn right_angle_example() {
        // (1, 2) lies on y^2 = x^3 + 2x^2 + x, the (singular) curve at m = 1.
        let a = Angle::right();
        let (x, z) = cubic_to_quartic(&a, &int(1), 1, &CurvePoint::affine(int(1), int(2))).unwrap();
        let q = make_g_quartic_m(&a, &int(1), 1).unwrap();
        assert!(q.contains(&x, &z));
    }

    #[test]
    fn table_row_solution() {
        let env = Envelope::new(
            angle(2, 1),
            ["2", "5/4", "7/4", "7/4", "13/4"].map(|p| parse_rational(p).unwrap()),
        )
        .unwrap();
        let sol = envelope_to_solution(&env).unwrap();
        assert_eq!(sol.w, frac(5, 2));
        assert_eq!(solution_to_envelope(&angle(2, 1), 3, &sol).unwrap(), env);
        let big_n = int(6) - &sol.w;
        let b = &sol.x * &sol.x + int(2) * &sol.x * (&big_n + &sol.w) - int(3) * &sol.w * &sol.w;
        let z = int(2) * &sol.x * &sol.u - &b;
        let (up, um) = solve_u(&angle(2, 1), &sol.w, &big_n, &sol.x, &z).unwrap();
        assert!(up == sol.u || um == sol.u);
        assert_eq!(&up * &um, -(int(3) * &big_n * &big_n));
        let (bx, by, bz) = solution_to_membership_point(&angle(2, 1), 3, &sol).unwrap();
        assert!(on_c_theta_mn(&angle(2, 1), &frac(7, 5), 3, &bx, &by, &bz).unwrap());
        assert!(!on_c_theta_mn(&angle(2, 1), &frac(7, 5), 3, &bx, &by, &(bz + int(1))).unwrap());
    }

    #[test]
    fn heron_maps() {
        let t = int(6);
        let t2 = &t * &t;
        let q1 = CurvePoint::affine(&t2 / int(4), &t * (&t2 - int(8)) / int(8));
        let CtPoint::Affine { x, y } = et_to_ct(&t, &q1).unwrap() else { panic!() };
        assert_eq!(x, (&t2 + int(4)) / (int(3) * &t2));
        assert_eq!(y, int(2) * (&t2 + int(1)) * (&t2 - int(8)) / (int(9) * &t2 * &t));
        assert_eq!(ct_to_et(&t, &x, &y).unwrap(), q1);
        let tri = triangle_from_ct_point(&t, &x, &y).unwrap();
        assert_eq!(tri.area(), Some(t.clone()));
        assert_eq!(ct_to_et(&t, &int(-1), &int(0)).unwrap(), CurvePoint::Infinity);
        let q0 = CurvePoint::affine(t2.clone(), &t * (&t2 + int(1)));
        assert_eq!(et_to_ct(&t, &q0).unwrap(), CtPoint::AtInfinity);
    }

    #[test]
    fn certification() {
        let a = angle(2, 1);
        let m = int(2);
        let g = make_g_cubic(&a, &m).unwrap();
        let p = independent_point(&a, &m).unwrap();
        for k in [2, 4, 5, 6, -1] {
            let pk = g.scalar_mul(k, &p).unwrap();
            let cert = certified_n(&a, &m, &pk).unwrap();
            let n = crate::rational::to_integer(&cert.envelope.n()).unwrap();
            assert_eq!(n, cert.n.clone().into());
            assert_eq!(cert.envelope.ratio(), m);
        }
        // Both signs of Y make the square condition negative at 3P.
        let p3 = g.scalar_mul(3, &p).unwrap();
        assert!(matches!(certified_n(&a, &m, &p3), Err(Error::Construction(_))));
        let t = crate::theta_curves::order_four_point(&a, &m).unwrap();
        assert!(matches!(certified_n(&a, &m, &t), Err(Error::Domain(_))));
    }
}
