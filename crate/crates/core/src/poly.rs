//! Dense univariate polynomials with exact coefficients.
//!
//! `Poly1<T>` stores coefficients lowest degree first and never keeps a zero
//! leading coefficient, so structural equality is polynomial equality. The
//! rational specialisation adds Euclidean division and a gcd that runs the
//! primitive remainder sequence over the integers to keep coefficient growth
//! in check.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly1<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num> Poly1<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<U: Clone + Num>(&self, f: impl Fn(&T) -> U) -> Poly1<U> {
        Poly1::new(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// True when only degrees congruent to `parity` mod 2 occur.
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || i % 2 == parity % 2)
    }
}

impl<'a, T: Clone + Num> Add<&'a Poly1<T>> for &'a Poly1<T> {
    type Output = Poly1<T>;
    fn add(self, rhs: &'a Poly1<T>) -> Poly1<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, T: Clone + Num> Sub<&'a Poly1<T>> for &'a Poly1<T> {
    type Output = Poly1<T>;
    fn sub(self, rhs: &'a Poly1<T>) -> Poly1<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, T: Clone + Num> Mul<&'a Poly1<T>> for &'a Poly1<T> {
    type Output = Poly1<T>;
    fn mul(self, rhs: &'a Poly1<T>) -> Poly1<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly1::new(out)
    }
}

impl<T: Clone + Num> Neg for &Poly1<T> {
    type Output = Poly1<T>;
    fn neg(self) -> Poly1<T> {
        Poly1::new(self.coeffs.iter().map(|c| T::zero() - c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Clone + Num> $tr for Poly1<T> {
            type Output = Poly1<T>;
            fn $m(self, rhs: Poly1<T>) -> Poly1<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Clone + Num> Neg for Poly1<T> {
    type Output = Poly1<T>;
    fn neg(self) -> Poly1<T> {
        -&self
    }
}

/// Rational polynomials.
pub type QPoly = Poly1<BigRational>;

impl Poly1<BigRational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// # Panics
    /// Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "exact_div left a remainder");
        q
    }

    /// Scale to a monic polynomial (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Self::one();
        }
        let g = int_poly_gcd(primitive_int(self), primitive_int(other));
        Self::from_bigints(&g).monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Formats with the given variable name, highest degree first.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayPoly { poly: self, var }
    }
}

struct DisplayPoly<'a> {
    poly: &'a QPoly,
    var: &'a str,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational_poly(f, self.poly.coeffs(), self.var)
    }
}

/// Writes `sum c_i var^i` as e.g. `1/2*z^3 - z + 2`.
pub(crate) fn write_rational_poly(
    f: &mut impl fmt::Write,
    coeffs: &[BigRational],
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let a = c.abs();
        let unit = a.is_one();
        if i == 0 {
            write!(f, "{a}")?;
            continue;
        }
        if !unit {
            write!(f, "{a}*")?;
        }
        f.write_str(var)?;
        if i > 1 {
            write!(f, "^{i}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Integer coefficients of the primitive part (positive leading coefficient).
pub(crate) fn primitive_int(p: &QPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_part(ints)
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive_part(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut g = content(&p);
    if g.is_zero() {
        return p;
    }
    if p.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if !g.is_one() {
        for c in p.iter_mut() {
            *c = &*c / &g;
        }
    }
    p
}

/// Pseudo-remainder of `a` by `b` over the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn int_poly_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = primitive_part(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn trims_leading_zeros() {
        assert_eq!(q(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(q(&[0, 0]).is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = q(&[-1, 0, 0, 0, 0, 0, 1]);
        let b = q(&[1, 1, 1]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.degree().is_none_or(|d| d < 2));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x^2+1)
        let a = q(&[-2, 1, 1]);
        let b = q(&[-1, 1, -1, 1]);
        assert_eq!(a.gcd(&b), q(&[-1, 1]));
        assert_eq!(a.gcd(&q(&[5])), QPoly::one());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = q(&[1, 0, 1]);
        let b = q(&[1, -1, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g, QPoly::one());
    }

    #[test]
    fn compose_and_eval() {
        let p = q(&[2, 0, 1]); // x^2 + 2
        let inner = q(&[1, 1]); // x + 1
        let c = p.compose(&inner);
        assert_eq!(c, q(&[3, 2, 1]));
        let three = BigRational::from_integer(3.into());
        assert_eq!(c.eval(&three), BigRational::from_integer(18.into()));
    }

    #[test]
    fn display_format() {
        let p = QPoly::new(vec![
            BigRational::from_integer(2.into()),
            BigRational::from_integer((-1).into()),
            BigRational::zero(),
            BigRational::new(1.into(), 2.into()),
        ]);
        assert_eq!(p.display_in("z").to_string(), "1/2*z^3 - z + 2");
        assert_eq!(QPoly::zero().display_in("z").to_string(), "0");
    }
}
