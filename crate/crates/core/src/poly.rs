//! Exact rational roots of univariate polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::factor::factorize;
use crate::rational::Rational;

/// Evaluates a polynomial given by coefficients in increasing degree.
pub fn eval(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, e) in factorize(n.magnitude()) {
        let p = BigInt::from(p);
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        out = next;
    }
    out
}

/// Distinct rational roots, sorted ascending, of the polynomial with the given
/// coefficients in increasing degree. The zero polynomial has no listed roots.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    if ints.len() < 2 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let lead_zero = ints.iter().take_while(|c| c.is_zero()).count();
    if lead_zero > 0 {
        roots.push(Rational::zero());
        ints.drain(..lead_zero);
    }
    if ints.len() >= 2 {
        let constant = ints[0].abs();
        let leading = ints.last().unwrap().abs();
        let nums = divisors(&constant);
        let dens = divisors(&leading);
        let degree = ints.len() - 1;
        for p in &nums {
            for q in &dens {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for p in [p.clone(), -p] {
                    // q^deg f(p/q) as an integer.
                    let mut acc = BigInt::zero();
                    let mut ppow = BigInt::one();
                    let mut qpow = q.pow(degree as u32);
                    for c in &ints {
                        acc += c * &ppow * &qpow;
                        ppow *= &p;
                        qpow /= q;
                    }
                    if acc.is_zero() {
                        roots.push(Rational::new(p, q.clone()));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn cubic_roots() {
        // (x + 144)(x + 36)(x - 180)
        let c = [
            int(144 * 36 * -180),
            int(144 * 36 - 144 * 180 - 36 * 180),
            int(0),
            int(1),
        ];
        assert_eq!(rational_roots(&c), vec![int(-144), int(-36), int(180)]);
    }

    #[test]
    fn fractional_and_zero_roots() {
        // x (2x - 1)(3x + 2) = 6x^3 + x^2 - 2x
        let c = [int(0), int(-2), int(1), int(6)];
        assert_eq!(rational_roots(&c), vec![frac(-2, 3), int(0), frac(1, 2)]);
        assert!(rational_roots(&[int(1), int(0), int(1)]).is_empty());
        assert!(rational_roots(&[frac(1, 2), frac(1, 3)])
            .iter()
            .all(|r| eval(&[frac(1, 2), frac(1, 3)], r).is_zero()));
    }
}
