//! Bounded searches: rational points of small height, rank evidence, and ad
//! hoc envelope hunting.
//!
//! Nothing here ever proves a negative. Exhausting a budget yields
//! [`Evidence::Unknown`] or `None`, never a claim that no solution exists.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::angle::Angle;
use crate::elliptic::{CubicCurve, CurvePoint, PointOrder};
use crate::envelopes::Envelope;
use crate::error::{domain, Result};
use crate::rational::{int, sqrt_exact, sqrt_int, Rational};
use crate::theta_curves::{independent_point, make_e_theta, make_g_cubic};

/// Default height bound. Large enough for the ad hoc search to find the
/// small envelopes (for instance `n = 3` at `cos theta = 1/2` appears at
/// slope height 7) in well under a second.
pub const DEFAULT_HEIGHT: u64 = 200;

/// Limits for a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    height_bound: u64,
    time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn new(height_bound: u64, time_limit: Option<Duration>) -> Result<Self> {
        if height_bound == 0 {
            return domain("height bound must be at least 1");
        }
        Ok(Self { height_bound, time_limit })
    }

    pub fn with_height(height_bound: u64) -> Result<Self> {
        Self::new(height_bound, None)
    }

    pub fn height_bound(&self) -> u64 {
        self.height_bound
    }

    pub fn time_limit(&self) -> Option<Duration> {
        self.time_limit
    }

    fn deadline(&self) -> Deadline {
        Deadline {
            at: self.time_limit.map(|d| Instant::now() + d),
            hit: AtomicBool::new(false),
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { height_bound: DEFAULT_HEIGHT, time_limit: None }
    }
}

struct Deadline {
    at: Option<Instant>,
    hit: AtomicBool,
}

impl Deadline {
    fn expired(&self) -> bool {
        if self.hit.load(Ordering::Relaxed) {
            return true;
        }
        match self.at {
            Some(at) if Instant::now() >= at => {
                self.hit.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }
}

/// Outcome of a search for a single witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Witness(CurvePoint),
    Unknown,
}

impl Evidence {
    pub fn witness(&self) -> Option<&CurvePoint> {
        match self {
            Evidence::Witness(p) => Some(p),
            Evidence::Unknown => None,
        }
    }
}

/// Points found by [`naive_points`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSearch {
    pub points: Vec<CurvePoint>,
    /// `false` when the time limit cut the scan short.
    pub complete: bool,
}

// Quadratic residue masks for cheap non-square rejection.
struct Residues {
    m64: u64,
    m63: u64,
    m65: u128,
    m11: u16,
}

const fn residues() -> Residues {
    let (mut m64, mut m63, mut m65, mut m11) = (0u64, 0u64, 0u128, 0u16);
    let mut i = 0u32;
    while i < 65 {
        m64 |= 1 << ((i * i) % 64);
        m63 |= 1 << ((i * i) % 63);
        m65 |= 1 << ((i * i) % 65);
        m11 |= 1 << ((i * i) % 11);
        i += 1;
    }
    Residues { m64, m63, m65, m11 }
}

const RES: Residues = residues();

fn isqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let u = n as u128;
    if RES.m64 >> (u % 64) & 1 == 0
        || RES.m63 >> (u % 63) & 1 == 0
        || RES.m65 >> (u % 65) & 1 == 0
        || RES.m11 >> (u % 11) & 1 == 0
    {
        return None;
    }
    let r = u.isqrt();
    (r * r == u).then_some(r as i128)
}

/// All affine points `(p/e^2, q/e^3)` with `|p| <= bound`, `1 <= e <= bound`
/// on the integral model of `curve`, mapped back to `curve`.
///
/// Points come sorted by `max(|p|, e^2)`, then `x`, then non-negative `y`
/// first. The scan is split over numerator ranges and merged, so the result
/// does not depend on the number of worker threads.
pub fn naive_points(curve: &CubicCurve, budget: &SearchBudget) -> PointSearch {
    let (model, u) = curve.integral_model();
    let coeffs = [model.a2(), model.a4(), model.a6()].map(|c| c.to_integer());
    let bound = budget.height_bound as i64;
    let deadline = budget.deadline();

    let fast = fits_i128(&coeffs, bound).then(|| coeffs.clone().map(|c| c.to_i128().unwrap()));
    let chunk = 64i64;
    let starts: Vec<i64> = (-bound..=bound).step_by(chunk as usize).collect();
    let mut found: Vec<(BigInt, i64, i64, BigInt)> = starts
        .par_iter()
        .flat_map_iter(|&lo| {
            let hi = (lo + chunk - 1).min(bound);
            let mut out = Vec::new();
            if deadline.expired() {
                return out;
            }
            for e in 1..=bound {
                for p in lo..=hi {
                    if p.gcd(&e) != 1 {
                        continue;
                    }
                    let root = match &fast {
                        Some(c) => isqrt_i128(rhs_i128(c, p, e)).map(BigInt::from),
                        None => rhs_big(&coeffs, p, e),
                    };
                    if let Some(q) = root {
                        let h = BigInt::from(p.abs().max(e * e));
                        out.push((h, p, e, q));
                    }
                }
            }
            out
        })
        .collect();

    found.sort_by(|a, b| {
        let xa = Rational::new(a.1.into(), (a.2 * a.2).into());
        let xb = Rational::new(b.1.into(), (b.2 * b.2).into());
        a.0.cmp(&b.0).then(xa.cmp(&xb))
    });
    let mut points = Vec::new();
    for (_, p, e, q) in found {
        let x = Rational::new(p.into(), (e * e).into());
        let y = Rational::new(q, BigInt::from(e).pow(3));
        let negative = -&y;
        let zero = y.is_zero();
        points.push(CubicCurve::unscale_point(&CurvePoint::affine(x.clone(), y), &u));
        if !zero {
            points.push(CubicCurve::unscale_point(&CurvePoint::affine(x, negative), &u));
        }
    }
    PointSearch { points, complete: !deadline.hit.load(Ordering::Relaxed) }
}

// Whether p^3 + a2 p^2 e^2 + a4 p e^4 + a6 e^6 stays well inside i128.
fn fits_i128(coeffs: &[BigInt; 3], bound: i64) -> bool {
    let b = (bound.max(2) as f64).log2();
    let mut worst = 3.0 * b;
    for (c, k) in coeffs.iter().zip([4.0, 5.0, 6.0]) {
        if !c.is_zero() {
            worst = f64::max(worst, c.bits() as f64 + k * b);
        }
    }
    worst < 122.0
}

fn rhs_i128(c: &[i128; 3], p: i64, e: i64) -> i128 {
    let (p, e2) = (p as i128, (e * e) as i128);
    let e4 = e2 * e2;
    p * p * p + c[0] * p * p * e2 + c[1] * p * e4 + c[2] * e4 * e2
}

fn rhs_big(c: &[BigInt; 3], p: i64, e: i64) -> Option<BigInt> {
    let (p, e2) = (BigInt::from(p), BigInt::from(e * e));
    let e4 = &e2 * &e2;
    let v = &p * &p * &p + &c[0] * &p * &p * &e2 + &c[1] * &p * &e4 + &c[2] * &e4 * &e2;
    if v.is_negative() {
        None
    } else {
        sqrt_int(&v)
    }
}

/// Looks for a point of infinite order on `G_theta^m`: first the independent
/// point, then the bounded search. Never claims rank zero.
pub fn heuristic_rank_positive(angle: &Angle, m: &Rational, budget: &SearchBudget) -> Result<Evidence> {
    let curve = make_g_cubic(angle, m)?;
    let p = independent_point(angle, m)?;
    if curve.point_order(&p)? == PointOrder::Infinite {
        return Ok(Evidence::Witness(p));
    }
    for q in naive_points(&curve, budget).points {
        if curve.point_order(&q)? == PointOrder::Infinite {
            return Ok(Evidence::Witness(q));
        }
    }
    Ok(Evidence::Unknown)
}

/// First point of `E_theta^n` of order other than one or two within budget.
/// Such a point is what makes `n` theta-congruent.
pub fn theta_congruent_heuristic(angle: &Angle, n: u64, budget: &SearchBudget) -> Result<Evidence> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let curve = make_e_theta(angle, &int(n))?;
    Ok(naive_points(&curve, budget)
        .points
        .into_iter()
        .find(|p| !CubicCurve::is_two_torsion(p))
        .map_or(Evidence::Unknown, Evidence::Witness))
}

// A chord slope p/q through the trivial point of a triangle conic, tagged
// with its height.
#[derive(Clone, Copy)]
struct Slope {
    p: i64,
    q: i64,
}

fn slopes_of_level(level: i64) -> Vec<Slope> {
    let mut out = Vec::new();
    for q in 1..=level {
        for p in -level..=level {
            if p.abs().max(q) == level && p.gcd(&q) == 1 && p.abs() != q {
                out.push(Slope { p, q });
            }
        }
    }
    out
}

// Ratio b/a (first conic) or d/a (second) produced by a slope, as a reduced
// fraction with positive denominator, or `None` if not positive.
fn conic_ratio(r: i64, s: i64, k: Slope, sign: i64) -> Option<(i128, i128)> {
    let (p, q, r, s) = (k.p as i128, k.q as i128, r as i128, sign as i128 * s as i128);
    let mut num = 2 * (p * r + s * q) * q;
    let mut den = r * (q * q - p * p);
    if den < 0 {
        num = -num;
        den = -den;
    }
    if num <= 0 {
        return None;
    }
    let g = num.gcd(&den);
    Some((num / g, den / g))
}

/// Hunts for an envelope with chord parametrizations of both triangle
/// relations.
///
/// With `b = a beta` and `d = a delta`, a slope `k` through `(0, 1)` on
/// `1 + beta^2 - 2 sigma beta = gamma^2` gives
/// `beta = 2(k + sigma)/(1 - k^2)`, and likewise a slope `l` gives
/// `delta = 2(l - sigma)/(1 - l^2)` with `sigma = s/r`. The area relation
/// then asks that `r n / (beta + delta)` be a square `a^2`. Slope pairs are
/// tried in order of increasing height up to the budget.
pub fn find_envelope_adhoc(angle: &Angle, n: u64, budget: &SearchBudget) -> Option<Envelope> {
    let (r, s) = (angle.r().to_i64()?, angle.s().to_i64()?);
    if n == 0 {
        return None;
    }
    let rn = (r as i128).checked_mul(n as i128)?;
    let deadline = budget.deadline();
    let mut levels: Vec<Vec<Slope>> = vec![Vec::new()];
    for level in 1..=budget.height_bound as i64 {
        if deadline.expired() {
            return None;
        }
        levels.push(slopes_of_level(level));
        let newest = &levels[level as usize];
        let older: Vec<Slope> = levels[..level as usize].iter().flatten().copied().collect();
        let every: Vec<Slope> = levels.iter().flatten().copied().collect();
        // Pairs whose larger height is exactly `level`, in a fixed order.
        let pairs = newest
            .iter()
            .flat_map(|k| every.iter().map(move |l| (*k, *l)))
            .chain(older.iter().flat_map(|k| newest.iter().map(move |l| (*k, *l))));
        let candidates: Vec<(Slope, Slope)> = pairs.collect();
        let hit = candidates.par_iter().find_map_first(|&(k, l)| {
            let beta = conic_ratio(r, s, k, 1)?;
            let delta = conic_ratio(r, s, l, -1)?;
            if !area_is_square(rn, beta, delta) {
                return None;
            }
            build(angle, n, k, l)
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

// rn (beta + delta) is a rational square, checked in i128 when possible.
fn area_is_square(rn: i128, (bn, bd): (i128, i128), (dn, dd): (i128, i128)) -> bool {
    let quick = || {
        let num = bn.checked_mul(dd)?.checked_add(dn.checked_mul(bd)?)?;
        let den = bd.checked_mul(dd)?;
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        let g = rn.gcd(&den);
        num.checked_mul(rn / g)?.checked_mul(den / g)
    };
    match quick() {
        Some(v) => isqrt_i128(v).is_some(),
        None => {
            let sum = Rational::new(bn.into(), bd.into()) + Rational::new(dn.into(), dd.into());
            sqrt_exact(&(sum * Rational::from_integer(rn.into()))).ok().flatten().is_some()
        }
    }
}

fn build(angle: &Angle, n: u64, k: Slope, l: Slope) -> Option<Envelope> {
    let (r, s, _) = angle.rationals();
    let sigma = &s / &r;
    let one = Rational::one();
    let k = Rational::new(k.p.into(), k.q.into());
    let l = Rational::new(l.p.into(), l.q.into());
    let beta = int(2) * (&k + &sigma) / (&one - &k * &k);
    let delta = int(2) * (&l - &sigma) / (&one - &l * &l);
    let a = sqrt_exact(&(&r * int(n) / (&beta + &delta))).ok()??;
    let b = &a * &beta;
    let d = &a * &delta;
    let c = (&a + &k * &b).abs();
    let e = (&a + &l * &d).abs();
    let env = Envelope::new(angle.clone(), [a, b, c, d, e]).ok()?;
    env.verify(n).then_some(env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn congruent_five_has_small_witness() {
        let angle = Angle::right();
        let ev = theta_congruent_heuristic(&angle, 5, &SearchBudget::default()).unwrap();
        assert_eq!(ev, Evidence::Witness(CurvePoint::affine(int(-4), int(6))));
    }

    #[test]
    fn one_is_unknown() {
        let angle = Angle::right();
        let ev = theta_congruent_heuristic(&angle, 1, &SearchBudget::with_height(100).unwrap()).unwrap();
        assert_eq!(ev, Evidence::Unknown);
    }

    #[test]
    fn naive_points_are_on_curve_and_closed_under_negation() {
        let curve = CubicCurve::new(int(0), int(-25), int(0)).unwrap();
        let found = naive_points(&curve, &SearchBudget::with_height(50).unwrap());
        assert!(found.complete);
        for p in &found.points {
            assert!(curve.contains(p));
            assert!(found.points.contains(&curve.negate(p).unwrap()));
        }
        assert!(found.points.contains(&CurvePoint::affine(int(0), int(0))));
        assert!(found.points.contains(&CurvePoint::affine(int(45), int(-300))));
    }

    #[test]
    fn naive_points_handles_rational_models() {
        let curve = CubicCurve::new(frac(1, 4), frac(-1, 16), int(0)).unwrap();
        let found = naive_points(&curve, &SearchBudget::with_height(20).unwrap());
        assert!(found.points.iter().all(|p| curve.contains(p)));
        assert!(found.points.contains(&CurvePoint::affine(int(0), int(0))));
    }

    #[test]
    fn rank_witness_via_independent_point() {
        let angle = Angle::new(2, 1).unwrap();
        let ev = heuristic_rank_positive(&angle, &int(2), &SearchBudget::default()).unwrap();
        assert_eq!(ev.witness(), Some(&independent_point(&angle, &int(2)).unwrap()));
    }

    #[test]
    fn rank_zero_rows_stay_unknown() {
        let budget = SearchBudget::with_height(60).unwrap();
        let ev = heuristic_rank_positive(&Angle::new(2, 1).unwrap(), &frac(1, 3), &budget).unwrap();
        assert_eq!(ev, Evidence::Unknown);
    }

    #[test]
    fn adhoc_finds_n3() {
        let angle = Angle::new(2, 1).unwrap();
        let env = find_envelope_adhoc(&angle, 3, &SearchBudget::default()).unwrap();
        assert!(env.verify(3));
    }

    #[test]
    fn adhoc_budget_one_finds_nothing() {
        let angle = Angle::new(2, 1).unwrap();
        assert!(find_envelope_adhoc(&angle, 3, &SearchBudget::with_height(1).unwrap()).is_none());
    }

    #[test]
    fn zero_height_is_rejected() {
        assert!(SearchBudget::with_height(0).is_err());
    }
}
