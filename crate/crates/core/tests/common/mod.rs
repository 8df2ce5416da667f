//! Test-side oracles that do not go through the library's own formulas.

#![allow(dead_code)]

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use theta_envelope::poly::rational_roots;
use theta_envelope::{int, sqrt_exact, Angle, CurvePoint, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn random_angle(rng: &mut ChaCha8Rng, max_r: i64) -> Angle {
    loop {
        let r = rng.gen_range(1..=max_r);
        let s = rng.gen_range(-(r - 1)..=(r - 1));
        if let Ok(a) = Angle::new(r, s) {
            return a;
        }
    }
}

/// `(p^2 + q^2, +-(p^2 - q^2) or +-2pq)` for coprime `p > q` of opposite
/// parity, or the right angle.
pub fn random_pythagorean(rng: &mut ChaCha8Rng) -> Angle {
    loop {
        let p: i64 = rng.gen_range(1..=5);
        let qq: i64 = rng.gen_range(0..p);
        if qq == 0 {
            if p == 1 {
                return Angle::right();
            }
            continue;
        }
        if p.gcd(&qq) != 1 || (p - qq) % 2 == 0 {
            continue;
        }
        let r = p * p + qq * qq;
        let mut s = if rng.gen_bool(0.5) { p * p - qq * qq } else { 2 * p * qq };
        if rng.gen_bool(0.5) {
            s = -s;
        }
        return Angle::new(r, s).unwrap();
    }
}

pub fn random_m(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    q(rng.gen_range(1..=max), rng.gen_range(1..=max))
}

/// `a^2 + b^2 - (2s/r)ab = c^2`, `a^2 + d^2 + (2s/r)ad = e^2`, `a(b+d) = rn`,
/// multiplied through by `r`.
pub fn relations_hold(r: i64, s: i64, n: i64, [a, b, c, d, e]: &[Rational; 5]) -> bool {
    let (r, s) = (int(r), int(s));
    let two_s = int(2) * &s;
    r.clone() * (a * a + b * b - c * c) == &two_s * a * b
        && r.clone() * (a * a + d * d - e * e) == -(&two_s * a * d)
        && a * (b + d) == r * int(n)
        && [a, b, c, d, e].iter().all(|x| x.is_positive())
}

/// `(c+e+f)(c+e-f)(e+f-c)(c-e+f) = 16 Area^2`.
pub fn heron16(c: &Rational, e: &Rational, f: &Rational) -> Rational {
    (c + e + f) * (c + e - f) * (e + f - c) * (c - e + f)
}

/// Doubling on `y^2 = x^3 + a x^2 + b x`, written out from the tangent line.
pub fn double(a: &Rational, b: &Rational, p: &CurvePoint) -> CurvePoint {
    let (x, y) = match p {
        CurvePoint::Infinity => return CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => (x, y),
    };
    if y.is_zero() {
        return CurvePoint::Infinity;
    }
    let lambda = (int(3) * x * x + int(2) * a * x + b) / (int(2) * y);
    let x3 = &lambda * &lambda - a - int(2) * x;
    let y3 = -(y + &lambda * (&x3 - x));
    CurvePoint::affine(x3, y3)
}

fn rhs(a: &Rational, b: &Rational, x: &Rational) -> Rational {
    x * x * x + a * x * x + b * x
}

fn lift(a: &Rational, b: &Rational, x: &Rational) -> Vec<CurvePoint> {
    match sqrt_exact(&rhs(a, b, x)) {
        Ok(Some(y)) if y.is_zero() => vec![CurvePoint::affine(x.clone(), y)],
        Ok(Some(y)) => vec![CurvePoint::affine(x.clone(), y.clone()), CurvePoint::affine(x.clone(), -y)],
        _ => Vec::new(),
    }
}

/// Ground-truth torsion of `y^2 = x^3 + a x^2 + b x` by brute force: close
/// the 2-torsion under halving (rational roots of `(x^2 - b)^2 = 4 x0 y^2`)
/// and look for rational 3-division points. Returns
/// `(group order, full 2-torsion)`.
pub fn torsion_oracle(a: &Rational, b: &Rational) -> (usize, bool) {
    let mut points = vec![CurvePoint::Infinity];
    for x in rational_roots(&[Rational::zero(), b.clone(), a.clone(), Rational::one()]) {
        points.extend(lift(a, b, &x));
    }
    let full_two = points.len() == 4;
    let mut i = 0;
    while i < points.len() {
        let target = points[i].clone();
        i += 1;
        let x0 = match target.x() {
            Some(x) => x.clone(),
            None => continue,
        };
        let four_x0 = int(4) * &x0;
        let poly = [
            b * b,
            -(&four_x0 * b),
            -(int(2) * b) - &four_x0 * a,
            -four_x0.clone(),
            Rational::one(),
        ];
        for x in rational_roots(&poly) {
            for p in lift(a, b, &x) {
                if double(a, b, &p) == target && !points.contains(&p) {
                    points.push(p);
                }
            }
        }
    }
    // 3-division polynomial for a6 = 0.
    let psi3 = [-(b * b), Rational::zero(), int(6) * b, int(4) * a, int(3)];
    let three = rational_roots(&psi3).iter().any(|x| !lift(a, b, x).is_empty());
    (points.len() * if three { 3 } else { 1 }, full_two)
}

pub fn torsion_name(order: usize, full_two: bool) -> &'static str {
    match (order, full_two) {
        (4, false) => "Z/4Z",
        (8, false) => "Z/8Z",
        (8, true) => "Z/2Z x Z/4Z",
        (16, true) => "Z/2Z x Z/8Z",
        _ => "unexpected",
    }
}
