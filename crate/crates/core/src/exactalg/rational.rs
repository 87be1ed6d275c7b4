use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn inverse(a: &Rational) -> Result<Rational> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a.recip())
}

/// `a^e` for any integer `e`; negative exponents need `a != 0`. `0^0 = 1`.
pub fn pow(a: &Rational, e: i64) -> Result<Rational> {
    if e == 0 {
        return Ok(Rational::one());
    }
    let base = if e < 0 { inverse(a)? } else { a.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    Ok(acc)
}

/// `n choose k`, zero when `k < 0` or `k > n`. Requires `n >= 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::InvalidRange(format!("bad rational `{s}`")))?;
    let den: BigInt = den.parse().map_err(|_| Error::InvalidRange(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let r = Rational::new(num, den);
    debug_assert!(r.denom().is_positive());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(inverse(&int(0)), Err(Error::DivisionByZero));
        assert_eq!(inverse(&rat(-2, 3)).unwrap(), rat(-3, 2));
    }

    #[test]
    fn canonical_form() {
        let r = rat(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(format_rational(&r), "-2/3");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(parse_rational("-4/6").unwrap(), r);
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&int(0), 0).unwrap(), int(1));
        assert_eq!(pow(&int(2), -3).unwrap(), rat(1, 8));
        assert_eq!(pow(&rat(-1, 2), 3).unwrap(), rat(-1, 8));
        assert_eq!(pow(&int(0), -1), Err(Error::DivisionByZero));
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(0, 1), BigInt::from(0));
        assert_eq!(binomial(5, -1), BigInt::from(0));
    }
}
