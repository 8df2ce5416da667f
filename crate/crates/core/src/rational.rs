//! Exact rational scalars and the square/squarefree helpers built on them.
//!
//! Every value is a [`num_rational::BigRational`], which is kept in lowest
//! terms with a positive denominator after each operation, so structural
//! equality coincides with numeric equality.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::factor::factorize;

pub type Rational = num_rational::BigRational;

/// The integer `n` as a rational.
pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` in lowest terms. Panics if `den` is zero.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Parses `"p/q"` or `"p"` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    trimmed
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("invalid rational {trimmed:?}: {e}")))
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Nonnegative integer square root of `n` when `n` is a perfect square.
pub fn sqrt_int(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    // Squares are 0, 1, 4 or 9 mod 16.
    let low = n.iter_u32_digits().next().unwrap_or(0) & 15;
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

/// The nonnegative rational square root of `q`, if `q` is a rational square.
pub fn sqrt_exact(q: &Rational) -> Result<Option<Rational>> {
    if q.is_negative() {
        return domain(format!("square root of negative rational {q}"));
    }
    Ok(sqrt_nonneg(q))
}

/// `true` iff `q` is the square of a rational (negative values are not).
pub fn is_square(q: &Rational) -> bool {
    !q.is_negative() && sqrt_nonneg(q).is_some()
}

fn sqrt_nonneg(q: &Rational) -> Option<Rational> {
    let num = sqrt_int(q.numer())?;
    let den = sqrt_int(q.denom())?;
    Some(Rational::new(num, den))
}

/// The squarefree positive integer `u` with `|q| = u * w^2` for a rational `w`.
///
/// This is the class of `|q|` in `Q*/(Q*)^2`; the sign of `q` is not part of
/// the answer and is available from `q` itself.
pub fn squarefree_part(q: &Rational) -> Result<BigUint> {
    if q.is_zero() {
        return domain("squarefree part of zero");
    }
    // num/den and num*den differ by the square den^2.
    let product = q.numer().magnitude() * q.denom().magnitude();
    Ok(squarefree_part_int(&product))
}

pub(crate) fn squarefree_part_int(n: &BigUint) -> BigUint {
    factorize(n)
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p)
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(q: &Rational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Converts an integral rational to `BigInt`.
pub fn to_integer(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.numer().clone())
}

/// Height of a rational: the larger of `|numerator|` and the denominator.
pub fn height(q: &Rational) -> BigInt {
    let n = q.numer().abs();
    if &n > q.denom() {
        n
    } else {
        q.denom().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_table_value() {
        assert_eq!(sqrt_exact(&int(576)).unwrap(), Some(int(24)));
        assert_eq!(sqrt_exact(&int(0)).unwrap(), Some(int(0)));
        assert_eq!(sqrt_exact(&frac(16, 9)).unwrap(), Some(frac(4, 3)));
        assert_eq!(sqrt_exact(&frac(112, 9)).unwrap(), None);
        assert!(sqrt_exact(&int(-4)).is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&int(48)).unwrap(), BigUint::from(3u32));
        assert_eq!(squarefree_part(&frac(3, 4)).unwrap(), BigUint::from(3u32));
        // m (r^2 - s^2) for (r, s, m) = (2, 1, 3) is 9.
        assert_eq!(squarefree_part(&int(9)).unwrap(), BigUint::one());
        assert_eq!(squarefree_part(&frac(-12, 5)).unwrap(), BigUint::from(15u32));
        assert!(squarefree_part(&int(0)).is_err());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational(" 10/4 ").unwrap(), frac(5, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(format_rational(&frac(6, 4)), "3/2");
        assert_eq!(format_rational(&int(3)), "3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn heights() {
        assert_eq!(height(&frac(-7, 3)), BigInt::from(7));
        assert_eq!(height(&frac(2, 9)), BigInt::from(9));
    }
}
