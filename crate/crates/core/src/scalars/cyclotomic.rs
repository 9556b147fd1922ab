//! Cyclotomic fields `Q(zeta_N)` in the power basis.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{write_rational_poly, QPoly};

/// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by `Phi_d` for
/// every proper divisor `d` of `n`.
///
/// # Panics
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: usize) -> QPoly {
    assert!(n > 0, "cyclotomic_polynomial: n must be positive");
    let mut coeffs = vec![0i64; n + 1];
    coeffs[0] = -1;
    coeffs[n] = 1;
    let mut p = QPoly::from_ints(&coeffs);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = p.exact_div(&cyclotomic_polynomial(d));
    }
    p
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Context for `Q(zeta_N)`: the modulus and precomputed powers of `zeta`.
#[derive(Debug)]
pub struct CycField {
    n: usize,
    degree: usize,
    phi: QPoly,
    /// `x^(degree + j) mod Phi_N` for `j < degree - 1`.
    fold: Vec<Vec<BigInt>>,
    /// `zeta^j` for `0 <= j < n`.
    powers: Vec<Vec<BigInt>>,
}

impl CycField {
    pub fn new(n: usize) -> Self {
        let phi = cyclotomic_polynomial(n);
        let degree = phi.degree().expect("nonzero");
        let phi_int: Vec<BigInt> = phi.coeffs().iter().map(|c| c.to_integer()).collect();

        // x^degree = -sum_{i<degree} phi_i x^i, then shift repeatedly.
        let mut fold = Vec::with_capacity(degree.saturating_sub(1));
        let mut cur: Vec<BigInt> = phi_int[..degree].iter().map(|c| -c).collect();
        for _ in 0..degree.saturating_sub(1) {
            fold.push(cur.clone());
            cur = shift_reduce(&cur, &phi_int);
        }

        let mut powers = Vec::with_capacity(n);
        let mut p = vec![BigInt::zero(); degree];
        p[0] = BigInt::one();
        for _ in 0..n {
            powers.push(p.clone());
            p = shift_reduce(&p, &phi_int);
        }
        CycField {
            n,
            degree,
            phi,
            fold,
            powers,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &QPoly {
        &self.phi
    }

    fn reduce(&self, wide: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        let mut out: Vec<BigInt> = wide.iter().take(d).cloned().collect();
        out.resize(d, BigInt::zero());
        for (j, c) in wide.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, f) in out.iter_mut().zip(&self.fold[j - d]) {
                if !f.is_zero() {
                    *o += c * f;
                }
            }
        }
        out
    }
}

/// Multiply by `x` and reduce modulo the monic integer polynomial `phi`.
fn shift_reduce(v: &[BigInt], phi: &[BigInt]) -> Vec<BigInt> {
    let d = v.len();
    let top = v[d - 1].clone();
    let mut out = Vec::with_capacity(d);
    out.push(BigInt::zero());
    out.extend_from_slice(&v[..d - 1]);
    if !top.is_zero() {
        for (o, p) in out.iter_mut().zip(phi) {
            *o -= &top * p;
        }
    }
    out
}

/// An element `num / den` of `Q(zeta_N)`, with `num` an integer vector in the
/// power basis, `den > 0`, and `gcd(content(num), den) = 1`.
#[derive(Clone, Debug)]
pub struct CycElem {
    field: Arc<CycField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycElem {}

impl std::hash::Hash for CycElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl CycElem {
    fn make(field: &Arc<CycField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = CycElem {
            field: Arc::clone(field),
            num,
            den,
        };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.iter().fold(
            self.den.clone(),
            |g, c| if c.is_zero() { g } else { g.gcd(c) },
        );
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(field: &Arc<CycField>) -> Self {
        CycElem {
            field: Arc::clone(field),
            num: vec![BigInt::zero(); field.degree],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(field: &Arc<CycField>, c: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = c.numer().clone();
        Self::make(field, num, c.denom().clone())
    }

    /// `zeta^j` for any integer `j`.
    pub fn zeta_pow(field: &Arc<CycField>, j: i64) -> Self {
        let idx = j.rem_euclid(field.n as i64) as usize;
        CycElem {
            field: Arc::clone(field),
            num: field.powers[idx].clone(),
            den: BigInt::one(),
        }
    }

    /// Coefficients over the rationals, lowest power of `zeta` first.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn from_coeffs(field: &Arc<CycField>, coeffs: &[BigRational]) -> Self {
        let p = QPoly::new(coeffs.to_vec());
        Self::from_qpoly(field, &p)
    }

    /// Reduce an arbitrary rational polynomial in `zeta`.
    pub fn from_qpoly(field: &Arc<CycField>, p: &QPoly) -> Self {
        let den = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let wide: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut num = vec![BigInt::zero(); field.degree];
        for (j, c) in wide.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < field.degree {
                num[j] += c;
            } else {
                for (o, p) in num.iter_mut().zip(&field.powers[j % field.n]) {
                    if !p.is_zero() {
                        *o += c * p;
                    }
                }
            }
        }
        Self::make(field, num, den)
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn neg(&self) -> Self {
        CycElem {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return Self::make(&self.field, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        Self::make(&self.field, num, &self.den * &rhs.den)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.field);
        }
        let d = self.field.degree;
        let mut wide = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce(wide);
        Self::make(&self.field, num, &self.den * &rhs.den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = QPoly::new(self.coeffs());
        let (g, s, _) = a.ext_gcd(&self.field.phi);
        // Phi_N is irreducible, so a nonzero residue is coprime to it.
        debug_assert_eq!(g, QPoly::one());
        Ok(Self::from_qpoly(&self.field, &s))
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational_poly(f, &self.coeffs(), "z")
    }
}
