use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::rational::{inverse, Rational};
use crate::error::{Error, Result};

/// Finite Laurent polynomial in `t` with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentT {
    coeffs: BTreeMap<i32, Rational>,
}

impl LaurentT {
    pub fn zero() -> Self {
        LaurentT::default()
    }

    pub fn one() -> Self {
        LaurentT::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentT::monomial(c, 0)
    }

    /// The weight `t`.
    pub fn t() -> Self {
        LaurentT::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, exponent: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exponent, c);
        }
        LaurentT { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^exponent`; `coefficient(0)` is the
    /// non-equivariant limit.
    pub fn coefficient(&self, exponent: i32) -> Rational {
        self.coeffs.get(&exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// `Some((c, e))` when this is the single term `c·t^e`.
    pub fn as_monomial(&self) -> Option<(&Rational, i32)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        self.coeffs.iter().next().map(|(&e, c)| (c, e))
    }

    /// Inverse of a nonzero monomial `c·t^e`.
    pub fn inverse(&self) -> Result<LaurentT> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (c, e) =
            self.as_monomial().ok_or_else(|| Error::PreconditionViolated(format!("{self} is not a monomial in t")))?;
        Ok(LaurentT::monomial(inverse(c)?, -e))
    }

    pub fn scale(&self, c: &Rational) -> LaurentT {
        if c.is_zero() {
            return LaurentT::zero();
        }
        LaurentT { coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect() }
    }

    pub fn powi(&self, n: u32) -> LaurentT {
        (0..n).fold(LaurentT::one(), |acc, _| &acc * self)
    }

    fn add_term(&mut self, exponent: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exponent).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }
}

impl Add for &LaurentT {
    type Output = LaurentT;

    fn add(self, rhs: &LaurentT) -> LaurentT {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for LaurentT {
    type Output = LaurentT;

    fn add(self, rhs: LaurentT) -> LaurentT {
        &self + &rhs
    }
}

impl Neg for &LaurentT {
    type Output = LaurentT;

    fn neg(self) -> LaurentT {
        LaurentT { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Neg for LaurentT {
    type Output = LaurentT;

    fn neg(self) -> LaurentT {
        -&self
    }
}

impl Sub for &LaurentT {
    type Output = LaurentT;

    fn sub(self, rhs: &LaurentT) -> LaurentT {
        self + &(-rhs)
    }
}

impl Sub for LaurentT {
    type Output = LaurentT;

    fn sub(self, rhs: LaurentT) -> LaurentT {
        &self - &rhs
    }
}

impl Mul for &LaurentT {
    type Output = LaurentT;

    fn mul(self, rhs: &LaurentT) -> LaurentT {
        let mut out = LaurentT::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentT {
    type Output = LaurentT;

    fn mul(self, rhs: LaurentT) -> LaurentT {
        &self * &rhs
    }
}

impl fmt::Display for LaurentT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentT {
    /// A list of `{"exp": e, "coeff": "num/den"}` in increasing exponent order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            exp: i32,
            coeff: String,
        }
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (&exp, c) in &self.coeffs {
            seq.serialize_element(&Term { exp, coeff: c.to_string() })?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn poly(terms: &[(i32, i64)]) -> LaurentT {
        terms.iter().fold(LaurentT::zero(), |acc, &(e, c)| acc + LaurentT::monomial(int(c), e))
    }

    #[test]
    fn degenerate_product() {
        let t = LaurentT::t();
        let inv_t = t.inverse().unwrap();
        let inv_neg_t = (-&t).inverse().unwrap();
        assert_eq!(&inv_t * &inv_neg_t, LaurentT::monomial(int(-1), -2));
    }

    #[test]
    fn coefficient_extraction() {
        let f = poly(&[(-1, 3), (0, 5), (1, 2)]);
        assert_eq!(f.coefficient(0), int(5));
        assert_eq!(f.coefficient(7), int(0));
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(&[(1, 1), (0, -2)]);
        let b = poly(&[(1, 1), (0, 2)]);
        assert_eq!(&a * &b, poly(&[(2, 1), (0, -4)]));
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = poly(&[(3, 2)]);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).terms().count(), 0);
    }

    #[test]
    fn inverse_needs_monomial() {
        assert_eq!(LaurentT::zero().inverse(), Err(Error::DivisionByZero));
        assert!(matches!(poly(&[(0, 1), (1, 1)]).inverse(), Err(Error::PreconditionViolated(_))));
        let w = LaurentT::monomial(rat(-1, 3), 1);
        assert_eq!(&w * &w.inverse().unwrap(), LaurentT::one());
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[(-2, -1)]).to_string(), "-t^-2");
        assert_eq!(poly(&[(0, -4), (2, 1)]).to_string(), "-4 + t^2");
        assert_eq!(LaurentT::monomial(rat(1, 2), -2).to_string(), "1/2*t^-2");
    }
}
