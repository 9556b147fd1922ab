//! Rational functions in the formal square root `s = q^{1/2}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{write_rational_poly, QPoly};

/// `s^shift * num / den` in canonical form.
///
/// Canonical means: `num` and `den` are coprime, neither is divisible by `s`,
/// `den` is monic, and zero is stored as `0 / 1` with shift 0. Keeping powers
/// of `s` out of the polynomials makes multiplication by powers of `q` free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    shift: i64,
    num: QPoly,
    den: QPoly,
}

fn valuation(p: &QPoly) -> usize {
    p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0)
}

fn strip_low(p: &QPoly, k: usize) -> QPoly {
    if k == 0 {
        p.clone()
    } else {
        QPoly::new(p.coeffs()[k..].to_vec())
    }
}

fn times_s_pow(p: &QPoly, k: usize) -> QPoly {
    if k == 0 {
        return p.clone();
    }
    let mut v = vec![BigRational::zero(); k];
    v.extend_from_slice(p.coeffs());
    QPoly::new(v)
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            shift: 0,
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            shift: 0,
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    /// `s^k`.
    pub fn s_pow(k: i64) -> Self {
        RatFunc {
            shift: k,
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    /// `num / den` for polynomials in `s`.
    pub fn from_polys(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(0, num, den))
    }

    fn normalize(shift: i64, num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let vn = valuation(&num);
        let vd = valuation(&den);
        let mut num = strip_low(&num, vn);
        let mut den = strip_low(&den, vd);
        let g = num.gcd(&den);
        if g.degree().unwrap_or(0) > 0 {
            num = num.exact_div(&g);
            den = den.exact_div(&g);
        }
        let lc = den.leading().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc {
            shift: shift + vn as i64 - vd as i64,
            num,
            den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.den.degree() == Some(0) && self.num == QPoly::one()
    }

    /// Numerator and denominator as plain polynomials in `s`, denominator monic.
    pub fn as_fraction(&self) -> (QPoly, QPoly) {
        if self.shift >= 0 {
            (
                times_s_pow(&self.num, self.shift as usize),
                self.den.clone(),
            )
        } else {
            (
                self.num.clone(),
                times_s_pow(&self.den, (-self.shift) as usize),
            )
        }
    }

    /// The constant value when this is a rational number.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        (self.shift == 0 && self.num.degree() == Some(0) && self.den.degree() == Some(0))
            .then(|| self.num.coeff(0))
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            shift: self.shift,
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(rhs.shift);
        let n1 = times_s_pow(&self.num, (self.shift - m) as usize);
        let n2 = times_s_pow(&rhs.num, (rhs.shift - m) as usize);
        if self.den == rhs.den {
            return Self::normalize(m, &n1 + &n2, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let d1 = self.den.exact_div(&g);
        let d2 = rhs.den.exact_div(&g);
        let num = &(&n1 * &d2) + &(&n2 * &d1);
        Self::normalize(m, num, &self.den * &d2)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = if g1.degree().unwrap_or(0) > 0 {
            (self.num.exact_div(&g1), rhs.den.exact_div(&g1))
        } else {
            (self.num.clone(), rhs.den.clone())
        };
        let (n2, d1) = if g2.degree().unwrap_or(0) > 0 {
            (rhs.num.exact_div(&g2), self.den.exact_div(&g2))
        } else {
            (rhs.num.clone(), self.den.clone())
        };
        RatFunc {
            shift: self.shift + rhs.shift,
            num: &n1 * &n2,
            den: &d1 * &d2,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.leading().expect("nonzero").recip();
        Ok(RatFunc {
            shift: -self.shift,
            num: self.den.scale(&lc),
            den: self.num.scale(&lc),
        })
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.as_fraction();
        if den.degree() == Some(0) {
            return write_rational_poly(f, num.coeffs(), "s");
        }
        f.write_str("(")?;
        write_rational_poly(f, num.coeffs(), "s")?;
        f.write_str(")/(")?;
        write_rational_poly(f, den.coeffs(), "s")?;
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn normalizes_common_factors() {
        // (s^2 - 1) / (s - 1) = s + 1
        let r = RatFunc::from_polys(poly(&[-1, 0, 1]), poly(&[-1, 1])).unwrap();
        assert_eq!(r, RatFunc::from_polys(poly(&[1, 1]), poly(&[1])).unwrap());
        // s^3 / (2 s) = s^2 / 2
        let r = RatFunc::from_polys(poly(&[0, 0, 0, 1]), poly(&[0, 2])).unwrap();
        assert_eq!(r.to_string(), "1/2*s^2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::from_polys(poly(&[1]), QPoly::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(RatFunc::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn q_minus_q_inverse_times_inverse() {
        let x = RatFunc::s_pow(2).sub(&RatFunc::s_pow(-2));
        assert_eq!(x.to_string(), "(s^4 - 1)/(s^2)");
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn addition_with_distinct_denominators() {
        let a = RatFunc::from_polys(poly(&[1]), poly(&[1, 1])).unwrap();
        let b = RatFunc::from_polys(poly(&[1]), poly(&[-1, 1])).unwrap();
        // 1/(s+1) + 1/(s-1) = 2s/(s^2-1)
        let expect = RatFunc::from_polys(poly(&[0, 2]), poly(&[-1, 0, 1])).unwrap();
        assert_eq!(a.add(&b), expect);
        assert!(a.sub(&a).is_zero());
    }
}
