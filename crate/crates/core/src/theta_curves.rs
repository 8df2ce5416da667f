//! The curve families attached to an angle: `E_theta^w`, `F_theta^N`, the
//! quartics `G`, the ratio curve `G_theta^m` with its torsion classification,
//! the auxiliary curve `E0`, and the Heron pair `E_T`, `C_T`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::elliptic::{CubicCurve, CurvePoint};
use crate::error::{domain, Error, Result};
use crate::poly::rational_roots;
use crate::rational::{int, is_square, sqrt_exact, squarefree_part, Rational};

/// `z^2 = q4 x^4 + q3 x^3 + q2 x^2 + q1 x + q0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuarticCurve {
    coeffs: [Rational; 5],
}

impl QuarticCurve {
    pub fn new(q4: Rational, q3: Rational, q2: Rational, q1: Rational, q0: Rational) -> Result<Self> {
        let coeffs = [q4, q3, q2, q1, q0];
        if coeffs.iter().all(Zero::is_zero) {
            return domain("quartic with all coefficients zero");
        }
        Ok(Self { coeffs })
    }

    /// `[q4, q3, q2, q1, q0]`.
    pub fn coefficients(&self) -> &[Rational; 5] {
        &self.coeffs
    }

    pub fn rhs(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn contains(&self, x: &Rational, z: &Rational) -> bool {
        z * z == self.rhs(x)
    }
}

impl fmt::Display for QuarticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^2 =")?;
        let monos = [" x^4", " x^3", " x^2", " x", ""];
        let mut first = true;
        for (c, mono) in self.coeffs.iter().zip(monos) {
            if c.is_zero() {
                continue;
            }
            let sign = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => "+ ",
                (false, true) => "- ",
            };
            write!(f, " {sign}{}{mono}", c.abs())?;
            first = false;
        }
        Ok(())
    }
}

fn require_positive(name: &str, q: &Rational) -> Result<()> {
    if q.is_positive() {
        Ok(())
    } else {
        domain(format!("{name} must be positive, got {q}"))
    }
}

/// `E_theta^w : y^2 = x (x + (r+s) w)(x - (r-s) w)`.
pub fn make_e_theta(angle: &Angle, w: &Rational) -> Result<CubicCurve> {
    require_positive("w", w)?;
    let (_, s, t2) = angle.rationals();
    CubicCurve::new(int(2) * s * w, -(t2 * w * w), Rational::zero())
}

/// `F_theta^N : v^2 = u (u - (r+s) N)(u + (r-s) N)`, which is `E` for the
/// reflected angle.
pub fn make_f_theta(angle: &Angle, big_n: &Rational) -> Result<CubicCurve> {
    make_e_theta(&angle.reflect(), big_n)
}

/// The quartic `z^2 = (x^2 + 2s(N+w)x - (r^2-s^2)w^2)^2 + 4(r^2-s^2)N^2 x^2`
/// with `N = 2n - w`.
///
/// `w` ranges over `0 < w < 2n`, i.e. both `w` and `N` positive; envelopes with
/// `d < b` have `w > n`.
pub fn make_g_quartic_w(angle: &Angle, w: &Rational, n: u64) -> Result<QuarticCurve> {
    g_quartic_w(angle, w, &int(n))
}

pub(crate) fn g_quartic_w(angle: &Angle, w: &Rational, n: &Rational) -> Result<QuarticCurve> {
    let big_n = int(2) * n - w;
    if !w.is_positive() || !big_n.is_positive() {
        return domain(format!("w = {w} must satisfy 0 < w < 2n = {}", int(2) * n));
    }
    let (_, s, t2) = angle.rationals();
    let a = int(4) * &s * n;
    let b = -(&t2 * w * w);
    QuarticCurve::new(
        Rational::one(),
        int(2) * &a,
        &a * &a + int(2) * &b + int(4) * &t2 * &big_n * &big_n,
        int(2) * &a * &b,
        &b * &b,
    )
}

/// The quartic `G_theta^(m,n)`, i.e. [`make_g_quartic_w`] at `w = 2n/(m+1)`.
pub fn make_g_quartic_m(angle: &Angle, m: &Rational, n: u64) -> Result<QuarticCurve> {
    if n == 0 {
        return domain("n must be a positive integer");
    }
    g_quartic_m(angle, m, &int(n))
}

pub(crate) fn g_quartic_m(angle: &Angle, m: &Rational, n: &Rational) -> Result<QuarticCurve> {
    require_positive("m", m)?;
    let (r, s, t2) = angle.rationals();
    let m1 = m + Rational::one();
    let m1sq = &m1 * &m1;
    let n2 = n * n;
    QuarticCurve::new(
        Rational::one(),
        int(8) * n * &s,
        int(8) * &n2 * (int(2) * m * m * &r * &r + int(4) * &s * &s * m + int(3) * &s * &s - &r * &r)
            / &m1sq,
        -(int(32) * &n2 * n * &s * &t2) / &m1sq,
        int(16) * &n2 * &n2 * &t2 * &t2 / (&m1sq * &m1sq),
    )
}

/// `(d1, d2) = (m^2 (r^2-s^2)^2, r^2 m^2 + 2 s^2 m + r^2)`.
pub(crate) fn g_coefficients(angle: &Angle, m: &Rational) -> (Rational, Rational) {
    let (r, s, t2) = angle.rationals();
    let d1 = m * m * &t2 * &t2;
    let d2 = &r * &r * m * m + int(2) * &s * &s * m + &r * &r;
    (d1, d2)
}

/// `G_theta^m : Y^2 = X^3 + d2 X^2 + d1 X`. Singular only for the right angle
/// at `m = 1`.
pub fn make_g_cubic(angle: &Angle, m: &Rational) -> Result<CubicCurve> {
    require_positive("m", m)?;
    let (d1, d2) = g_coefficients(angle, m);
    CubicCurve::new(d2, d1, Rational::zero())
}

pub(crate) fn g_cubic_unchecked(angle: &Angle, m: &Rational) -> CubicCurve {
    let (d1, d2) = g_coefficients(angle, m);
    CubicCurve::new_unchecked(d2, d1, Rational::zero())
}

/// `P = (-(r^2-s^2) m^2, s (r^2-s^2) m^2 (m+1))`. Of order two at the right
/// angle, of infinite order for all but finitely many `m` otherwise.
pub fn independent_point(angle: &Angle, m: &Rational) -> Result<CurvePoint> {
    require_positive("m", m)?;
    let (_, s, t2) = angle.rationals();
    let x = -(&t2 * m * m);
    let y = s * &t2 * m * m * (m + Rational::one());
    let p = CurvePoint::affine(x, y);
    if !g_cubic_unchecked(angle, m).contains(&p) {
        return Err(Error::Internal(format!("independent point {p} is off the curve")));
    }
    Ok(p)
}

/// The order-four point `(M0, r (m+1) M0)`; its double is `(0, 0)`.
pub fn order_four_point(angle: &Angle, m: &Rational) -> Result<CurvePoint> {
    require_positive("m", m)?;
    let (r, _, t2) = angle.rationals();
    let m0 = m * t2;
    let y = r * (m + Rational::one()) * &m0;
    Ok(CurvePoint::affine(m0, y))
}

/// An element `rational + coefficient * sqrt(radicand)` of a real quadratic
/// field, with `radicand` squarefree; `radicand == 1` means the value is the
/// rational `rational + coefficient`, normalized to `coefficient == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    pub rational: Rational,
    pub coefficient: Rational,
    pub radicand: BigUint,
}

impl Surd {
    pub fn new(rational: Rational, coefficient: Rational, radicand: BigUint) -> Result<Self> {
        if radicand.is_zero() {
            return domain("surd radicand must be positive");
        }
        let k = crate::rational::squarefree_part_int(&radicand);
        // sqrt(radicand) = sqrt(k) * sqrt(radicand / k).
        let ratio = Rational::new((&radicand / &k).into(), One::one());
        let scale = sqrt_exact(&ratio)?.expect("radicand / squarefree part is a square");
        let coefficient = coefficient * scale;
        if k.is_one() {
            return Ok(Self::from_rational(rational + coefficient));
        }
        if coefficient.is_zero() {
            return Ok(Self::from_rational(rational));
        }
        Ok(Self { rational, coefficient, radicand: k })
    }

    pub fn from_rational(q: Rational) -> Self {
        Self {
            rational: q,
            coefficient: Rational::zero(),
            radicand: BigUint::one(),
        }
    }

    /// `sqrt(q)` for `q >= 0` as an element of `Q(sqrt(k))`.
    pub fn sqrt_of(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return domain(format!("square root of negative rational {q}"));
        }
        if q.is_zero() {
            return Ok(Self::from_rational(Rational::zero()));
        }
        let k = squarefree_part(q)?;
        let kq = Rational::from_integer(k.clone().into());
        let w = sqrt_exact(&(q / &kq))?.expect("q / squarefree part is a square");
        Self::new(Rational::zero(), w, k)
    }

    pub fn is_rational(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rational.clone())
    }

    fn k(&self) -> Rational {
        Rational::from_integer(self.radicand.clone().into())
    }

    /// The square, in the same field.
    pub fn square(&self) -> Self {
        let rational = &self.rational * &self.rational + &self.coefficient * &self.coefficient * self.k();
        let coefficient = int(2) * &self.rational * &self.coefficient;
        Self { rational, coefficient, radicand: self.radicand.clone() }.normalized()
    }

    fn normalized(self) -> Self {
        if self.coefficient.is_zero() {
            Self::from_rational(self.rational)
        } else {
            self
        }
    }

    /// A square root with positive real value inside the same quadratic field,
    /// if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_rational() {
            if self.rational.is_negative() {
                return None;
            }
            if let Ok(Some(root)) = sqrt_exact(&self.rational) {
                return Some(Self::from_rational(root));
            }
            return None;
        }
        // (p + q sqrt k)^2 = a + b sqrt k  <=>  p^2 + k q^2 = a, 2 p q = b.
        let (a, b, k) = (&self.rational, &self.coefficient, self.k());
        let disc = a * a - &k * b * b;
        let root = sqrt_exact(&disc).ok().flatten()?;
        for p2 in [(a + &root) / int(2), (a - &root) / int(2)] {
            if let Ok(Some(p)) = sqrt_exact(&p2) {
                if p.is_zero() {
                    continue;
                }
                let q = b / (int(2) * &p);
                let cand = Self { rational: p, coefficient: q, radicand: self.radicand.clone() };
                let cand = if cand.is_negative_real() { cand.negated() } else { cand };
                if cand.square() == *self {
                    return Some(cand);
                }
            }
        }
        None
    }

    fn negated(&self) -> Self {
        Self {
            rational: -&self.rational,
            coefficient: -&self.coefficient,
            radicand: self.radicand.clone(),
        }
    }

    /// Sign test without floating point: compare `rational` with
    /// `-coefficient * sqrt(k)` through squares.
    pub fn is_negative_real(&self) -> bool {
        let a = &self.rational;
        let b = &self.coefficient;
        match (a.is_negative(), b.is_negative()) {
            (true, true) => true,
            (false, false) => false,
            _ => {
                let lhs = a * a;
                let rhs = b * b * self.k();
                if a.is_negative() {
                    lhs > rhs
                } else {
                    rhs > lhs
                }
            }
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let coef = if self.coefficient.abs().is_one() {
            String::new()
        } else {
            format!("{}*", self.coefficient.abs())
        };
        let sign = if self.coefficient.is_negative() { "-" } else { "+" };
        if self.rational.is_zero() {
            let lead = if self.coefficient.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coef}sqrt({})", self.radicand)
        } else {
            write!(f, "{} {sign} {coef}sqrt({})", self.rational, self.radicand)
        }
    }
}

/// The quantities `M0 = m (r^2 - s^2)` and
/// `M1, M2 = r (m+1) (r (m+1) +- 2 sqrt(M0))` whose rationality of square roots
/// decides the torsion of `G_theta^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MQuantities {
    pub m0: Rational,
    pub m1: Surd,
    pub m2: Surd,
    pub sqrt_m0: Option<Rational>,
    pub sqrt_m1: Option<Rational>,
    pub sqrt_m2: Option<Rational>,
}

impl MQuantities {
    /// `M1 + M2 = 2 r^2 (m+1)^2`, rational in all cases.
    pub fn sum(&self) -> Rational {
        &self.m1.rational + &self.m2.rational
    }

    /// `M1 M2 = r^2 (m+1)^2 (r^2 (m+1)^2 - 4 M0)`, rational in all cases.
    pub fn product(&self) -> Rational {
        let (a, b) = (&self.m1, &self.m2);
        &a.rational * &b.rational + &a.coefficient * &b.coefficient * a.k()
    }

    /// `sqrt(M1)` inside `Q(sqrt(M0))`, when it lies there.
    pub fn sqrt_m1_surd(&self) -> Option<Surd> {
        self.m1.sqrt()
    }

    pub fn sqrt_m2_surd(&self) -> Option<Surd> {
        self.m2.sqrt()
    }
}

pub fn m_quantities(angle: &Angle, m: &Rational) -> Result<MQuantities> {
    require_positive("m", m)?;
    let (r, _, t2) = angle.rationals();
    let m0 = m * t2;
    let big_r = r * (m + Rational::one());
    let root = Surd::sqrt_of(&m0)?;
    // M1,2 = R^2 +- 2 R sqrt(M0)
    let r2 = &big_r * &big_r;
    let twice = int(2) * &big_r;
    let k = root.radicand.clone();
    let m1 = Surd::new(&r2 + &twice * &root.rational, &twice * &root.coefficient, k.clone())?;
    let m2 = Surd::new(&r2 - &twice * &root.rational, -(&twice * &root.coefficient), k)?;
    let sqrt_m0 = root.to_rational();
    let sqrt_m1 = m1.to_rational().and_then(|q| sqrt_exact(&q).ok().flatten());
    let sqrt_m2 = m2.to_rational().and_then(|q| sqrt_exact(&q).ok().flatten());
    Ok(MQuantities { m0, m1, m2, sqrt_m0, sqrt_m1, sqrt_m2 })
}

/// The possible torsion subgroups of `G_theta^m(Q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TorsionStructure {
    Z4,
    Z8,
    Z2xZ4,
    Z2xZ8,
}

impl TorsionStructure {
    pub fn order(&self) -> u32 {
        match self {
            Self::Z4 => 4,
            Self::Z8 | Self::Z2xZ4 => 8,
            Self::Z2xZ8 => 16,
        }
    }

    pub fn has_full_two_torsion(&self) -> bool {
        matches!(self, Self::Z2xZ4 | Self::Z2xZ8)
    }

    pub fn has_order_eight(&self) -> bool {
        matches!(self, Self::Z8 | Self::Z2xZ8)
    }
}

impl fmt::Display for TorsionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Z4 => "Z/4Z",
            Self::Z8 => "Z/8Z",
            Self::Z2xZ4 => "Z/2Z x Z/4Z",
            Self::Z2xZ8 => "Z/2Z x Z/8Z",
        })
    }
}

impl std::str::FromStr for TorsionStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "Z/4Z" | "Z4" => Ok(Self::Z4),
            "Z/8Z" | "Z8" => Ok(Self::Z8),
            "Z/2ZxZ/4Z" | "Z2xZ4" => Ok(Self::Z2xZ4),
            "Z/2ZxZ/8Z" | "Z2xZ8" => Ok(Self::Z2xZ8),
            _ => Err(Error::Parse(format!("unknown torsion structure {s:?}"))),
        }
    }
}

/// Torsion of `G_theta^m(Q)` with explicit witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionClass {
    pub structure: TorsionStructure,
    pub quantities: MQuantities,
    /// Rational points of order two, sorted by `x`.
    pub two_torsion: Vec<CurvePoint>,
    /// `(M0, +-r (m+1) M0)`.
    pub order_four: Vec<CurvePoint>,
    /// Rational points over the order-four pair, both signs of `Y`.
    pub order_eight: Vec<CurvePoint>,
}

pub fn classify_torsion(angle: &Angle, m: &Rational) -> Result<TorsionClass> {
    let curve = make_g_cubic(angle, m)?;
    let quantities = m_quantities(angle, m)?;
    let (d1, d2) = g_coefficients(angle, m);
    let full_two = !rational_roots(&[d1, d2, Rational::one()]).is_empty();
    let two_torsion = curve.two_torsion();

    let t = order_four_point(angle, m)?;
    let order_four = vec![t.clone(), curve.negate(&t)?];

    let mut order_eight = Vec::new();
    if let Some(c) = &quantities.sqrt_m0 {
        let (r, _, _) = angle.rationals();
        let big_r = r * (m + Rational::one());
        let m0 = &quantities.m0;
        let mut xs = Vec::new();
        if let Some(s1) = &quantities.sqrt_m1 {
            xs.push(m0 + (&big_r + s1) * c);
            xs.push(m0 + (&big_r - s1) * c);
        }
        if let Some(s2) = &quantities.sqrt_m2 {
            xs.push(m0 - (&big_r + s2) * c);
            xs.push(m0 - (&big_r - s2) * c);
        }
        for x in xs {
            let y = sqrt_exact(&curve.rhs(&x))?.ok_or_else(|| {
                Error::Internal(format!("order-eight abscissa {x} has no rational ordinate"))
            })?;
            order_eight.push(CurvePoint::affine(x.clone(), y.clone()));
            order_eight.push(CurvePoint::affine(x, -y));
        }
    }

    let structure = match (order_eight.is_empty(), full_two) {
        (true, false) => TorsionStructure::Z4,
        (true, true) => TorsionStructure::Z2xZ4,
        (false, false) => TorsionStructure::Z8,
        (false, true) => TorsionStructure::Z2xZ8,
    };
    Ok(TorsionClass { structure, quantities, two_torsion, order_four, order_eight })
}

/// `E0 : Y^2 = X^3 - 108 r^2 (r^2-s^2)^2 (r^2+3s^2) X + 432 r^4 (r^2-s^2)^3 (r^2-9s^2)`.
/// Singular at the right angle.
pub fn make_e0(angle: &Angle) -> Result<CubicCurve> {
    let (r, s, t2) = angle.rationals();
    let r2 = &r * &r;
    let s2 = &s * &s;
    let a4 = -(int(108) * &r2 * &t2 * &t2 * (&r2 + int(3) * &s2));
    let a6 = int(432) * &r2 * &r2 * &t2 * &t2 * &t2 * (&r2 - int(9) * &s2);
    CubicCurve::new(Rational::zero(), a4, a6)
}

/// The 2-torsion points and the point `Q` of infinite order on `E0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E0Points {
    pub p0: CurvePoint,
    pub p1: CurvePoint,
    pub p2: CurvePoint,
    pub q: CurvePoint,
}

/// `P0 = (-12 r^2 t2, 0)`, `P1 = (6 r (r-3s) t2, 0)`, `P2 = (6 r (r+3s) t2, 0)`,
/// `Q = (-3 t2 (r^2+3s^2), 27 t2^3)` with `t2 = r^2 - s^2`.
pub fn e0_points(angle: &Angle) -> Result<E0Points> {
    let curve = make_e0(angle)?;
    let (r, s, t2) = angle.rationals();
    let zero = Rational::zero;
    let p0 = CurvePoint::affine(-(int(12) * &r * &r * &t2), zero());
    let p1 = CurvePoint::affine(int(6) * &r * (&r - int(3) * &s) * &t2, zero());
    let p2 = CurvePoint::affine(int(6) * &r * (&r + int(3) * &s) * &t2, zero());
    let q = CurvePoint::affine(
        -(int(3) * &t2 * (&r * &r + int(3) * &s * &s)),
        int(27) * &t2 * &t2 * &t2,
    );
    for (name, p) in [("P0", &p0), ("P1", &p1), ("P2", &p2), ("Q", &q)] {
        if !curve.contains(p) {
            return Err(Error::Internal(format!("{name} = {p} is not on E0")));
        }
    }
    Ok(E0Points { p0, p1, p2, q })
}

/// Right-hand sides of the two quartics in `m0` whose squareness decides
/// whether `sqrt(M1)`, `sqrt(M2)` are rational at `m = m0^2 / (r^2 - s^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgValues {
    pub m1_squared: Rational,
    pub m2_squared: Rational,
    pub m1_is_square: bool,
    pub m2_is_square: bool,
}

impl FgValues {
    pub fn both_rational_squares(&self) -> bool {
        self.m1_is_square && self.m2_is_square
    }
}

pub fn verify_fg(angle: &Angle, m0: &Rational) -> Result<FgValues> {
    if m0.is_negative() {
        return domain(format!("m0 must be nonnegative, got {m0}"));
    }
    let (r, _, t2) = angle.rationals();
    let base = &r * (m0 * m0 + &t2);
    let cross = int(2) * m0 * &t2;
    let m1_squared = &base * (&base + &cross);
    let m2_squared = &base * (&base - &cross);
    Ok(FgValues {
        m1_is_square: is_square(&m1_squared),
        m2_is_square: is_square(&m2_squared),
        m1_squared,
        m2_squared,
    })
}

/// `E_T : Y^2 = X^3 + 3 T^2 X - T^2 (T^2 - 1)`.
pub fn make_e_t(t: &Rational) -> Result<CubicCurve> {
    require_positive("T", t)?;
    let t2 = t * t;
    CubicCurve::new(Rational::zero(), int(3) * &t2, -(&t2 * (&t2 - Rational::one())))
}

/// `C_T : y^2 = T^2 x^4 + T^2 x^3 - x - 1`.
pub fn make_c_t(t: &Rational) -> Result<QuarticCurve> {
    require_positive("T", t)?;
    let t2 = t * t;
    QuarticCurve::new(t2.clone(), t2, Rational::zero(), -Rational::one(), -Rational::one())
}

/// The space curve pairing `G_theta^m` with the square condition that turns
/// one of its points into an envelope with ratio `m` for `n`:
///
/// `Y^2 = X^3 + d2 X^2 + d1 X`,
/// `Z^2 = 2 n phi(X, Y) / ((m+1) X (X + r^2 - s^2))`,
///
/// where `phi = (Y + s(m+1)X) A1 A2` with
/// `A1 = X^2 - (r-s)(ms-r) X - (r-s) Y` and `A2 = X^2 + (r+s)(ms+r) X + (r+s) Y`.
/// Points with `Y = 0` are excluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCurve {
    angle: Angle,
    m: Rational,
    n: Rational,
    cubic: CubicCurve,
}

impl MembershipCurve {
    pub fn cubic(&self) -> &CubicCurve {
        &self.cubic
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn n(&self) -> &Rational {
        &self.n
    }

    /// `phi(X, Y) = (Y + s(m+1)X) A1 A2`.
    pub fn phi(&self, x: &Rational, y: &Rational) -> Rational {
        phi(&self.angle, &self.m, x, y)
    }

    /// The right-hand side of the `Z^2` equation; `None` where `X (X + r^2 - s^2) = 0`.
    pub fn z_squared(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        a_expression(&self.angle, &self.m, &self.n, x, y)
    }

    pub fn contains(&self, x: &Rational, y: &Rational, z: &Rational) -> bool {
        if y.is_zero() || !self.cubic.contains(&CurvePoint::affine(x.clone(), y.clone())) {
            return false;
        }
        self.z_squared(x, y).is_some_and(|rhs| z * z == rhs)
    }
}

pub(crate) fn phi(angle: &Angle, m: &Rational, x: &Rational, y: &Rational) -> Rational {
    let (r, s, _) = angle.rationals();
    let m1 = m + Rational::one();
    let lin = y + &s * &m1 * x;
    let a1 = x * x - (&r - &s) * (m * &s - &r) * x - (&r - &s) * y;
    let a2 = x * x + (&r + &s) * (m * &s + &r) * x + (&r + &s) * y;
    lin * a1 * a2
}

/// `A = 2 n phi / ((m+1) X (X + r^2 - s^2))`, the quantity that must be a
/// rational square.
pub(crate) fn a_expression(
    angle: &Angle,
    m: &Rational,
    n: &Rational,
    x: &Rational,
    y: &Rational,
) -> Option<Rational> {
    let (_, _, t2) = angle.rationals();
    let den = (m + Rational::one()) * x * (x + t2);
    if den.is_zero() {
        return None;
    }
    Some(int(2) * n * phi(angle, m, x, y) / den)
}

pub fn make_c_theta_mn(angle: &Angle, m: &Rational, n: u64) -> Result<MembershipCurve> {
    if n == 0 {
        return domain("n must be a positive integer");
    }
    Ok(MembershipCurve {
        angle: angle.clone(),
        m: m.clone(),
        n: int(n),
        cubic: make_g_cubic(angle, m)?,
    })
}

pub fn on_c_theta_mn(
    angle: &Angle,
    m: &Rational,
    n: u64,
    x: &Rational,
    y: &Rational,
    z: &Rational,
) -> Result<bool> {
    Ok(make_c_theta_mn(angle, m, n)?.contains(x, y, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::PointOrder;
    use crate::rational::frac;

    fn angle(r: i64, s: i64) -> Angle {
        Angle::new(r, s).unwrap()
    }

    #[test]
    fn e_theta_examples() {
        let e = make_e_theta(&angle(2, 1), &int(1)).unwrap();
        assert_eq!((e.a2(), e.a4(), e.a6()), (&int(2), &int(-3), &int(0)));
        let e = make_e_theta(&angle(1, 0), &int(5)).unwrap();
        assert_eq!((e.a2(), e.a4()), (&int(0), &int(-25)));
        let e = make_e_theta(&angle(5, 3), &int(2)).unwrap();
        assert_eq!((e.a2(), e.a4()), (&int(12), &int(-64)));
        let f = make_f_theta(&angle(2, 1), &int(1)).unwrap();
        assert_eq!((f.a2(), f.a4()), (&int(-2), &int(-3)));
        assert!(make_e_theta(&angle(2, 1), &int(0)).is_err());
    }

    #[test]
    fn quartic_forms_agree() {
        let a = angle(2, 1);
        let q = make_g_quartic_w(&a, &int(1), 1).unwrap();
        // (x^2 + 4x - 3)^2 + 12 x^2
        let expect = [int(1), int(8), int(22), int(-24), int(9)];
        assert_eq!(q.coefficients(), &expect);
        let qm = make_g_quartic_m(&a, &int(1), 1).unwrap();
        assert_eq!(qm, q);
        let q = make_g_quartic_m(&angle(1, 0), &int(1), 1).unwrap();
        assert_eq!(q.coefficients(), &[int(1), int(0), int(2), int(0), int(1)]);
        assert!(make_g_quartic_w(&a, &int(2), 1).is_err());
    }

    #[test]
    fn g_cubic_examples() {
        let g = make_g_cubic(&angle(2, 1), &int(1)).unwrap();
        assert_eq!((g.a2(), g.a4()), (&int(10), &int(9)));
        assert!(g.contains(&CurvePoint::affine(int(3), int(12))));
        assert!(!g.contains(&CurvePoint::affine(int(3), int(11))));
        assert!(make_g_cubic(&angle(1, 0), &int(1)).is_err());
    }

    #[test]
    fn independent_point_examples() {
        let a = angle(2, 1);
        assert_eq!(
            independent_point(&a, &int(2)).unwrap(),
            CurvePoint::affine(int(-12), int(36))
        );
        let p = independent_point(&a, &int(3)).unwrap();
        assert_eq!(p, CurvePoint::affine(int(-27), int(108)));
        // At m = 3 the torsion is Z/8Z and P is one of its order-eight points.
        let g = make_g_cubic(&a, &int(3)).unwrap();
        assert_eq!(g.point_order(&p).unwrap(), PointOrder::Finite(8));
        let g = make_g_cubic(&a, &int(2)).unwrap();
        let p = independent_point(&a, &int(2)).unwrap();
        assert_eq!(g.point_order(&p).unwrap(), PointOrder::Infinite);
        let p = independent_point(&angle(1, 0), &int(2)).unwrap();
        assert_eq!(p.y(), Some(&int(0)));
    }

    #[test]
    fn m_quantities_examples() {
        let q = m_quantities(&angle(2, 1), &int(3)).unwrap();
        assert_eq!(q.sqrt_m0, Some(int(3)));
        assert_eq!(q.sqrt_m1, None);
        assert_eq!(q.sqrt_m2, Some(int(4)));
        assert_eq!(q.m1, Surd::from_rational(int(112)));
        let q = m_quantities(&angle(25, 7), &int(1)).unwrap();
        assert_eq!((q.sqrt_m0, q.sqrt_m1, q.sqrt_m2), (Some(int(24)), Some(int(70)), Some(int(10))));
        let q = m_quantities(&angle(2, 1), &int(1)).unwrap();
        assert_eq!(q.sqrt_m0, None);
        let s1 = q.sqrt_m1_surd().unwrap();
        assert_eq!(s1, Surd::new(int(2), int(2), BigUint::from(3u32)).unwrap());
        let s2 = q.sqrt_m2_surd().unwrap();
        assert_eq!(s2, Surd::new(int(-2), int(2), BigUint::from(3u32)).unwrap());
        assert_eq!(q.sum(), int(32));
        assert_eq!(q.product(), int(64));
    }

    #[test]
    fn table_one_classes() {
        let cases = [
            ((2, 1), int(2), TorsionStructure::Z4),
            ((2, 1), int(3), TorsionStructure::Z8),
            ((2, 1), int(1), TorsionStructure::Z2xZ4),
            ((25, 7), int(1), TorsionStructure::Z2xZ8),
        ];
        for ((r, s), m, tag) in cases {
            let c = classify_torsion(&angle(r, s), &m).unwrap();
            assert_eq!(c.structure, tag, "({r},{s},{m})");
        }
        let c = classify_torsion(&angle(25, 7), &int(1)).unwrap();
        assert!(c.order_eight.contains(&CurvePoint::affine(int(3456), int(241920))));
    }

    #[test]
    fn e0_example() {
        let pts = e0_points(&angle(2, 1)).unwrap();
        assert_eq!(pts.p0, CurvePoint::affine(int(-144), int(0)));
        assert_eq!(pts.q, CurvePoint::affine(int(-63), int(729)));
        let e0 = make_e0(&angle(2, 1)).unwrap();
        assert_eq!(
            e0.two_torsion().iter().filter_map(|p| p.x().cloned()).collect::<Vec<_>>(),
            vec![int(-144), int(-36), int(180)]
        );
        assert_eq!(e0.point_order(&pts.q).unwrap(), PointOrder::Infinite);
        assert!(make_e0(&angle(1, 0)).is_err());
    }

    #[test]
    fn fg_examples() {
        let v = verify_fg(&angle(25, 7), &int(24)).unwrap();
        assert!(v.both_rational_squares());
        let v = verify_fg(&angle(2, 1), &int(3)).unwrap();
        assert_eq!((v.m1_squared.clone(), v.m2_squared.clone()), (int(1008), int(144)));
        assert!(!v.m1_is_square && v.m2_is_square);
        let v = verify_fg(&angle(2, 1), &int(0)).unwrap();
        assert_eq!(v.m1_squared, int(36));
    }

    #[test]
    fn heron_curves() {
        let e = make_e_t(&int(2)).unwrap();
        assert_eq!((e.a4(), e.a6()), (&int(12), &int(-12)));
        for t in [int(2), int(6), frac(7, 3)] {
            let c = make_c_t(&t).unwrap();
            assert!(c.contains(&int(-1), &int(0)));
            let e = make_e_t(&t).unwrap();
            let t2 = &t * &t;
            let q1 = CurvePoint::affine(&t2 / int(4), &t * (&t2 - int(8)) / int(8));
            assert!(e.contains(&q1));
        }
    }

    #[test]
    fn surd_display_and_sign() {
        let s = Surd::new(int(2), int(-2), BigUint::from(12u32)).unwrap();
        assert_eq!(s.to_string(), "2 - 4*sqrt(3)");
        assert!(s.is_negative_real());
        assert!(!Surd::new(int(-1), int(1), BigUint::from(2u32)).unwrap().is_negative_real());
        assert_eq!(Surd::new(int(1), int(3), BigUint::from(4u32)).unwrap(), Surd::from_rational(int(7)));
    }
}
