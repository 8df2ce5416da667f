//! Envelopes: quintuples `(a, b, c, d, e)` of positive rationals with
//!
//! ```text
//! a^2 + b^2 - (2s/r) a b = c^2
//! a^2 + d^2 + (2s/r) a d = e^2
//! a (b + d) = r n
//! ```
//!
//! together with their dualities, the tau-triangle correspondence and the
//! Heron-triangle generator.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::angle::Angle;
use crate::elliptic::{CurvePoint, PointOrder};
use crate::error::{domain, Error, Result};
use crate::rational::{int, sqrt_exact, Rational};
use crate::theta_curves::make_e_t;
use crate::transforms::{et_to_ct, triangle_from_ct_point, CtPoint};

/// One of the three defining relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    First,
    Second,
    Area,
}

impl Relation {
    pub fn index(&self) -> u8 {
        match self {
            Self::First => 1,
            Self::Second => 2,
            Self::Area => 3,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Self::First => "a^2 + b^2 - (2s/r)ab = c^2",
            Self::Second => "a^2 + d^2 + (2s/r)ad = e^2",
            Self::Area => "a(b + d) = rn",
        };
        write!(f, "equation {} ({text})", self.index())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Envelope {
    angle: Angle,
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
    e: Rational,
}

impl Envelope {
    /// Wraps a quintuple; every component must be positive. The relations are
    /// not checked here, see [`Envelope::verify`].
    pub fn new(angle: Angle, [a, b, c, d, e]: [Rational; 5]) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b), ("c", &c), ("d", &d), ("e", &e)] {
            if !v.is_positive() {
                return domain(format!("envelope component {name} = {v} is not positive"));
            }
        }
        Ok(Self { angle, a, b, c, d, e })
    }

    pub fn angle(&self) -> &Angle {
        &self.angle
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn e(&self) -> &Rational {
        &self.e
    }

    pub fn components(&self) -> [&Rational; 5] {
        [&self.a, &self.b, &self.c, &self.d, &self.e]
    }

    /// `a (b + d) / r`.
    pub fn n(&self) -> Rational {
        let (r, _, _) = self.angle.rationals();
        &self.a * (&self.b + &self.d) / r
    }

    /// The relations that fail for `n`, in order.
    pub fn failed_relations(&self, n: &Rational) -> Vec<Relation> {
        let (r, s, _) = self.angle.rationals();
        let cos2 = int(2) * &s / &r;
        let (a, b, c, d, e) = (&self.a, &self.b, &self.c, &self.d, &self.e);
        let mut out = Vec::new();
        if a * a + b * b - &cos2 * a * b != c * c {
            out.push(Relation::First);
        }
        if a * a + d * d + &cos2 * a * d != e * e {
            out.push(Relation::Second);
        }
        if a * (b + d) != r * n {
            out.push(Relation::Area);
        }
        out
    }

    /// `true` iff all three relations hold exactly for `n`.
    pub fn verify(&self, n: u64) -> bool {
        self.failed_relations(&int(n)).is_empty()
    }

    /// The integer `n` this envelope certifies, if the two triangle relations
    /// hold and `a (b + d) / r` is an integer.
    pub fn certified_n(&self) -> Option<BigInt> {
        let n = self.n();
        (n.is_integer() && self.failed_relations(&n).is_empty()).then(|| n.to_integer())
    }

    /// `(ka, kb, kc, kd, ke)`, an envelope for `n k^2`.
    pub fn scale(&self, k: &Rational) -> Result<Self> {
        if !k.is_positive() {
            return domain(format!("scale factor must be positive, got {k}"));
        }
        Ok(Self {
            angle: self.angle.clone(),
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
            d: &self.d * k,
            e: &self.e * k,
        })
    }

    /// `(a, d, e, b, c)` for the supplementary angle, same `n`.
    pub fn reflect_dual(&self) -> Self {
        Self {
            angle: self.angle.reflect(),
            a: self.a.clone(),
            b: self.d.clone(),
            c: self.e.clone(),
            d: self.b.clone(),
            e: self.c.clone(),
        }
    }

    /// `m = d / b`.
    pub fn ratio(&self) -> Rational {
        &self.d / &self.b
    }

    /// `(d, a, e, m a, m c)` for the supplementary angle: an envelope with the
    /// same ratio `m` for `m n`.
    pub fn ratio_dual(&self) -> Self {
        let m = self.ratio();
        Self {
            angle: self.angle.reflect(),
            a: self.d.clone(),
            b: self.a.clone(),
            c: self.e.clone(),
            d: &m * &self.a,
            e: &m * &self.c,
        }
    }

    /// `cos tau = (a^2 - b d - (s/r) a (b - d)) / (c e)`, the cosine of the
    /// angle between the diagonals `c` and `e`.
    pub fn cos_tau(&self) -> Rational {
        let (r, s, _) = self.angle.rationals();
        let (a, b, c, d, e) = (&self.a, &self.b, &self.c, &self.d, &self.e);
        (a * a - b * d - s / r * a * (b - d)) / (c * e)
    }

    /// The triangle `(c, e, b + d)` with the angle `tau` between `c` and `e`.
    pub fn tau_triangle(&self) -> Result<Triangle> {
        let cos = self.cos_tau();
        if cos.abs() >= Rational::one() {
            return domain(format!("cos tau = {cos} is not in (-1, 1)"));
        }
        let tau = Angle::from_cos(&cos)?;
        Triangle::with_angle(
            [self.c.clone(), self.e.clone(), &self.b + &self.d],
            tau,
        )
    }
}

impl fmt::Display for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {}) at {}",
            self.a, self.b, self.c, self.d, self.e, self.angle
        )
    }
}

/// `true` iff `env` satisfies all three relations for `n`.
pub fn verify(env: &Envelope, n: u64) -> bool {
    env.verify(n)
}

/// A triangle with positive rational sides, optionally carrying the angle
/// between its first two sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    sides: [Rational; 3],
    angle: Option<Angle>,
}

impl Triangle {
    pub fn new(sides: [Rational; 3]) -> Result<Self> {
        if sides.iter().any(|s| !s.is_positive()) {
            return domain("triangle sides must be positive");
        }
        let [a, b, c] = &sides;
        if a + b <= *c || a + c <= *b || b + c <= *a {
            return domain(format!("sides {a}, {b}, {c} violate the triangle inequality"));
        }
        Ok(Self { sides, angle: None })
    }

    /// A triangle whose first two sides meet at `angle`:
    /// `first^2 + second^2 - 2 cos(angle) first second = third^2`.
    pub fn with_angle(sides: [Rational; 3], angle: Angle) -> Result<Self> {
        let mut tri = Self::new(sides)?;
        let [a, b, c] = &tri.sides;
        if a * a + b * b - int(2) * angle.cos() * a * b != c * c {
            return domain(format!("sides {a}, {b}, {c} do not meet at angle {angle}"));
        }
        tri.angle = Some(angle);
        Ok(tri)
    }

    pub fn sides(&self) -> &[Rational; 3] {
        &self.sides
    }

    pub fn context_angle(&self) -> Option<&Angle> {
        self.angle.as_ref()
    }

    /// `(a+b+c)(a+b-c)(b+c-a)(a-b+c) = 16 Area^2`.
    pub fn heron_product(&self) -> Rational {
        let [a, b, c] = &self.sides;
        (a + b + c) * (a + b - c) * (b + c - a) * (a - b + c)
    }

    pub fn area_squared(&self) -> Rational {
        self.heron_product() / int(16)
    }

    /// The area when it is rational.
    pub fn area(&self) -> Option<Rational> {
        sqrt_exact(&self.area_squared()).ok().flatten()
    }

    pub fn scale(&self, k: &Rational) -> Result<Self> {
        let sides = self.sides.clone().map(|s| s * k);
        let mut tri = Self::new(sides)?;
        tri.angle = self.angle.clone();
        Ok(tri)
    }

    /// Same shape up to scaling, ignoring side order.
    pub fn is_similar_to(&self, other: &Triangle) -> bool {
        let mut x = self.sides.clone();
        let mut y = other.sides.clone();
        x.sort();
        y.sort();
        let k = &y[0] / &x[0];
        x.iter().zip(&y).all(|(p, q)| p * &k == *q)
    }
}

/// Builds an envelope for `n` with angle `theta` whose diagonals meet at
/// `tau`, from a triangle `(a, b, c)` whose sides `a, b` meet at `tau` with
/// `a b = 4 q n n'` (`cos tau = p/q`).
///
/// `sin(theta) / sin(tau)` must equal `n'` times a rational square `rho`, and
/// `rho` must itself be a square so that the triangle can be rescaled to make
/// its area exactly `2 n sqrt(r^2 - s^2)`.
pub fn envelope_from_tau_triangle(
    theta: &Angle,
    tau: &Angle,
    n_prime: u64,
    tri: &[Rational; 3],
) -> Result<Envelope> {
    if n_prime == 0 {
        return domain("n' must be a positive integer");
    }
    let tri = Triangle::with_angle(tri.clone(), tau.clone())?;
    let (r, s, t2) = theta.rationals();
    let (q, p, u2) = tau.rationals();
    let np = int(n_prime);
    let [a, b, _] = tri.sides();
    let n = a * b / (int(4) * &q * &np);
    if !n.is_integer() {
        return domain(format!("a b / (4 q n') = {n} is not an integer"));
    }
    let rho = sqrt_exact(&(&t2 / (&np * &np * &u2)))?.ok_or_else(|| {
        Error::Domain(format!(
            "sin theta / sin tau is not a rational multiple of n' = {n_prime} (theta {theta}, tau {tau})"
        ))
    })?;
    let v = sqrt_exact(&rho)?.ok_or_else(|| {
        Error::Domain(format!(
            "sin theta / (n' sin tau) = {rho} is not a rational square (theta {theta}, tau {tau})"
        ))
    })?;
    let tri = tri.scale(&v)?;
    let npp = &np * &rho;
    let [a, b, c] = tri.sides();
    let k = a * b / (int(2) * &q * c * &npp);
    let shift = (&p * &npp - &s) * &k;
    let env = Envelope::new(
        theta.clone(),
        [
            &r * &k,
            a * a / (int(2) * c) - &shift,
            a / int(2),
            (c * c - a * a) / (int(2) * c) + &shift,
            b / int(2),
        ],
    )?;
    if !env.failed_relations(&n).is_empty() {
        return Err(Error::Internal(format!("tau construction produced non-envelope {env}")));
    }
    if env.cos_tau() != tau.cos() {
        return Err(Error::Internal(format!("tau construction lost the angle {tau}")));
    }
    Ok(env)
}

/// Builds an envelope for `n` from a rational triangle of area
/// `T = 2 n sqrt(r^2 - s^2)`.
///
/// With the sides labelled `(c, e, f)`, set `a = 4rn/f`,
/// `b = (f^2 + c^2 - e^2)/(2f) + a s/r`, `d = (f^2 + e^2 - c^2)/(2f) - a s/r`;
/// then `(a, b, c, d, e)/2` is the envelope. The six labellings are tried with
/// the longest side as `f` first.
pub fn envelope_from_triangle(angle: &Angle, n: u64, tri: &[Rational; 3]) -> Result<Envelope> {
    if n == 0 {
        return domain("n must be a positive integer");
    }
    envelope_from_triangle_q(angle, &int(n), tri)
}

pub(crate) fn envelope_from_triangle_q(
    angle: &Angle,
    n: &Rational,
    tri: &[Rational; 3],
) -> Result<Envelope> {
    if !angle.is_pythagorean() {
        return domain(format!("angle {angle} is not Pythagorean"));
    }
    let triangle = Triangle::new(tri.clone())?;
    let (r, s, t2) = angle.rationals();
    if int(64) * n * n * &t2 != triangle.heron_product() {
        return domain(format!(
            "triangle area squared {} differs from 4 n^2 (r^2 - s^2) = {}",
            triangle.area_squared(),
            int(4) * n * n * &t2
        ));
    }
    let mut sorted = tri.clone();
    sorted.sort();
    let [lo, mid, hi] = sorted;
    let orders = [
        (&lo, &mid, &hi),
        (&mid, &lo, &hi),
        (&lo, &hi, &mid),
        (&hi, &lo, &mid),
        (&mid, &hi, &lo),
        (&hi, &mid, &lo),
    ];
    for (c, e, f) in orders {
        let a = int(4) * &r * n / f;
        let shift = &a * &s / &r;
        let b = (f * f + c * c - e * e) / (int(2) * f) + &shift;
        let d = (f * f + e * e - c * c) / (int(2) * f) - &shift;
        if !b.is_positive() || !d.is_positive() {
            continue;
        }
        let half = Rational::new(One::one(), 2.into());
        let env = Envelope::new(angle.clone(), [a, b, c.clone(), d, e.clone()])?.scale(&half)?;
        if !env.failed_relations(n).is_empty() {
            return Err(Error::Internal(format!("triangle construction produced non-envelope {env}")));
        }
        return Ok(env);
    }
    Err(Error::Construction(format!(
        "no labelling of the triangle ({}, {}, {}) gives positive b and d",
        tri[0], tri[1], tri[2]
    )))
}

/// An envelope produced from the multiple `[ell] Q1` on `E_T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedEnvelope {
    pub multiple: u64,
    /// The point `(x, y)` on `C_T`.
    pub ct_point: (Rational, Rational),
    pub triangle: Triangle,
    pub envelope: Envelope,
}

/// Lazily walks the multiples of `Q1 = (T^2/4, T (T^2 - 8)/8)` on `E_T` with
/// `T = 2 n sqrt(r^2 - s^2)` and turns each usable one into an envelope.
pub struct EnvelopeStream {
    angle: Angle,
    n: Rational,
    t: Rational,
    curve: crate::elliptic::CubicCurve,
    base: CurvePoint,
    current: CurvePoint,
    ell: u64,
    seen: HashSet<Envelope>,
}

/// Multiples examined per parallel batch.
const BATCH: usize = 4;

impl EnvelopeStream {
    pub fn new(angle: &Angle, n: u64) -> Result<Self> {
        let t = angle.t().ok_or_else(|| {
            Error::Domain(format!(
                "angle {angle} is not Pythagorean: r^2 - s^2 = {} is not a square, so the Heron construction has no rational sine to work with",
                angle.t_squared()
            ))
        })?;
        if n == 0 {
            return domain("n must be a positive integer");
        }
        let t = int(2 * n) * Rational::from_integer(t.clone());
        let curve = make_e_t(&t)?;
        let t2 = &t * &t;
        let base = CurvePoint::affine(&t2 / int(4), &t * (&t2 - int(8)) / int(8));
        if let PointOrder::Finite(k) = curve.point_order(&base)? {
            return Err(Error::Construction(format!(
                "Q1 has finite order {k} on E_T for T = {t}"
            )));
        }
        Ok(Self {
            angle: angle.clone(),
            n: int(n),
            t,
            curve,
            base,
            current: CurvePoint::Infinity,
            ell: 0,
            seen: HashSet::new(),
        })
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// The next batch of new envelopes, in order of `ell`; may be empty when
    /// every multiple in the batch was degenerate or a repeat.
    pub fn next_batch(&mut self) -> Vec<GeneratedEnvelope> {
        let mut points = Vec::with_capacity(BATCH);
        for _ in 0..BATCH {
            self.current = self.curve.add_unchecked(&self.current, &self.base);
            self.ell += 1;
            points.push((self.ell, self.current.clone()));
        }
        let built: Vec<Option<GeneratedEnvelope>> = points
            .par_iter()
            .map(|(ell, p)| build(&self.angle, &self.n, &self.t, *ell, p))
            .collect();
        built
            .into_iter()
            .flatten()
            .filter(|g| self.seen.insert(g.envelope.clone()))
            .collect()
    }

    /// Multiples examined so far.
    pub fn multiples_examined(&self) -> u64 {
        self.ell
    }
}

fn build(angle: &Angle, n: &Rational, t: &Rational, ell: u64, p: &CurvePoint) -> Option<GeneratedEnvelope> {
    let (x, y) = match et_to_ct(t, p).ok()? {
        CtPoint::Affine { x, y } => (x, y),
        CtPoint::AtInfinity => return None,
    };
    let triangle = triangle_from_ct_point(t, &x, &y).ok()?;
    let envelope = envelope_from_triangle_q(angle, n, triangle.sides()).ok()?;
    Some(GeneratedEnvelope { multiple: ell, ct_point: (x, y), triangle, envelope })
}

fn multiple_cap(count: usize) -> u64 {
    4 * count as u64 + 16
}

/// `count` distinct envelopes for `n` with the Pythagorean angle, together
/// with the multiple, `C_T` point and triangle behind each.
pub fn generate_envelope_witnesses(
    angle: &Angle,
    n: u64,
    count: usize,
) -> Result<Vec<GeneratedEnvelope>> {
    if count == 0 {
        return domain("count must be at least 1");
    }
    let mut stream = EnvelopeStream::new(angle, n)?;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if stream.multiples_examined() >= multiple_cap(count) {
            return Err(Error::Construction(format!(
                "only {} envelopes from the first {} multiples",
                out.len(),
                stream.multiples_examined()
            )));
        }
        out.extend(stream.next_batch());
    }
    out.truncate(count);
    Ok(out)
}

/// `count` distinct verified envelopes for `n` at a Pythagorean angle.
pub fn generate_envelopes(angle: &Angle, n: u64, count: usize) -> Result<Vec<Envelope>> {
    Ok(generate_envelope_witnesses(angle, n, count)?
        .into_iter()
        .map(|g| g.envelope)
        .collect())
}

/// `count` distinct ratios `m = d/b` of generated envelopes for `n`, each with
/// its witnessing envelope.
pub fn infinitely_many_ratios(
    angle: &Angle,
    n: u64,
    count: usize,
) -> Result<Vec<(Rational, Envelope)>> {
    if count == 0 {
        return domain("count must be at least 1");
    }
    let mut stream = EnvelopeStream::new(angle, n)?;
    let mut ratios = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if stream.multiples_examined() >= multiple_cap(count) {
            return Err(Error::Construction(format!(
                "only {} distinct ratios from the first {} multiples",
                out.len(),
                stream.multiples_examined()
            )));
        }
        for g in stream.next_batch() {
            let m = g.envelope.ratio();
            if out.len() < count && ratios.insert(m.clone()) {
                out.push((m, g.envelope));
            }
        }
    }
    Ok(out)
}
