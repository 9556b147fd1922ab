//! The polynomial families `P_m`, `Q_m`, `R_m` and their identities.
//!
//! `P_m` is a polynomial in `S`, while `Q_m` and `R_m` are polynomials in
//! `C`. All three have integer coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pbw::AlgebraElement;
use crate::poly::{Poly1, QPoly};
use crate::scalars::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    P,
    Q,
    R,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::P, Family::Q, Family::R];

    /// The variable the family is written in.
    pub fn variable(self) -> &'static str {
        match self {
            Family::P => "S",
            Family::Q | Family::R => "C",
        }
    }

    pub fn poly(self, m: usize) -> QPoly {
        match self {
            Family::P => cheb_p(m),
            Family::Q => cheb_q(m),
            Family::R => cheb_r(m),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" | "P" => Ok(Family::P),
            "q" | "Q" => Ok(Family::Q),
            "r" | "R" => Ok(Family::R),
            _ => Err(Error::usage(format!(
                "unknown family {s:?}, expected p, q or r"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::P => "p",
            Family::Q => "q",
            Family::R => "r",
        })
    }
}

/// `x_m = x * x_{m-1} + sign * x_{m-2}`, starting from `x_0`, `x_1`.
fn three_term(m: usize, x0: QPoly, x1: QPoly, sign: i64) -> QPoly {
    if m == 0 {
        return x0;
    }
    let x = QPoly::x();
    let sign = QPoly::from_ints(&[sign]);
    let (mut prev, mut cur) = (x0, x1);
    for _ in 1..m {
        let next = &(&x * &cur) + &(&sign * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_0 = 2`, `P_1 = S`, `P_m = S P_{m-1} + P_{m-2}`.
pub fn cheb_p(m: usize) -> QPoly {
    three_term(m, QPoly::from_ints(&[2]), QPoly::x(), 1)
}

/// `Q_0 = 2`, `Q_1 = C`, `Q_m = C Q_{m-1} - Q_{m-2}`.
pub fn cheb_q(m: usize) -> QPoly {
    three_term(m, QPoly::from_ints(&[2]), QPoly::x(), -1)
}

/// `R_0 = 1`, `R_1 = C + 1`, `R_m = C R_{m-1} - R_{m-2}`.
pub fn cheb_r(m: usize) -> QPoly {
    three_term(m, QPoly::one(), QPoly::from_ints(&[1, 1]), -1)
}

/// First `n` coefficients in `t` of `num(t) / den(t)` where the entries are
/// polynomials in one variable and `den(0) = 1`.
pub fn series_divide(num: &[QPoly], den: &[QPoly], n: usize) -> Vec<QPoly> {
    assert!(
        den.first().is_some_and(|d| *d == QPoly::one()),
        "series divisor must start with 1"
    );
    let mut out: Vec<QPoly> = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = num.get(j).cloned().unwrap_or_else(QPoly::zero);
        for (i, d) in den.iter().enumerate().skip(1).take(j) {
            c = &c - &(d * &out[j - i]);
        }
        out.push(c);
    }
    out
}

/// The generating-function expansion of a family, as an independent check
/// on the recursions:
/// `(2 - tS)/(1 - tS - t^2)`, `(2 - tC)/(1 - tC + t^2)`, `(1 + t)/(1 - tC + t^2)`.
pub fn generating_series(family: Family, n: usize) -> Vec<QPoly> {
    let x = QPoly::x();
    let c = |v: i64| QPoly::from_ints(&[v]);
    match family {
        Family::P => series_divide(&[c(2), -&x], &[c(1), -&x, c(-1)], n),
        Family::Q => series_divide(&[c(2), -&x], &[c(1), -&x, c(1)], n),
        Family::R => series_divide(&[c(1), c(1)], &[c(1), -&x, c(1)], n),
    }
}

type GaussPoly = Poly1<Complex<BigRational>>;

fn to_gauss(p: &QPoly) -> GaussPoly {
    p.map(|c| Complex::new(c.clone(), BigRational::zero()))
}

fn i_pow(m: usize) -> Complex<BigRational> {
    let (one, zero) = (BigRational::one(), BigRational::zero());
    match m % 4 {
        0 => Complex::new(one, zero),
        1 => Complex::new(zero, one),
        2 => Complex::new(-one, zero),
        _ => Complex::new(zero, -one),
    }
}

/// Outcome of one identity at one `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChebCheck {
    pub identity: &'static str,
    pub m: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChebReport {
    pub checks: Vec<ChebCheck>,
}

impl ChebReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Identity names, in report order.
pub const CHEB_IDENTITIES: [&str; 5] = [
    "P_2m(S) = Q_m(S^2+2)",
    "P_m(iS) = i^m Q_m(S)",
    "Q_m(iS) = i^m P_m(S)",
    "Q_m(S^2+2) = P_m(S)^2 + 2(-1)^(m+1)",
    "P_2m+1(S) = S R_m(S^2+2)",
];

/// Checks every identity for `0 <= m <= m_max` as polynomial identities.
pub fn verify_cheb_identities(m_max: usize) -> ChebReport {
    let x = QPoly::x();
    let c_of_s = QPoly::from_ints(&[2, 0, 1]);
    let ix = GaussPoly::monomial(i_pow(1), 1);
    let mut checks = Vec::new();
    for m in 0..=m_max {
        let (p, q, r) = (cheb_p(m), cheb_q(m), cheb_r(m));
        let sign = if m % 2 == 0 { -2 } else { 2 };
        let results = [
            cheb_p(2 * m) == q.compose(&c_of_s),
            to_gauss(&p).compose(&ix) == to_gauss(&q).scale(&i_pow(m)),
            to_gauss(&q).compose(&ix) == to_gauss(&p).scale(&i_pow(m)),
            q.compose(&c_of_s) == &(&p * &p) + &QPoly::from_ints(&[sign]),
            cheb_p(2 * m + 1) == &x * &r.compose(&c_of_s),
        ];
        for (identity, pass) in CHEB_IDENTITIES.iter().zip(results) {
            checks.push(ChebCheck { identity, m, pass });
        }
    }
    ChebReport { checks }
}

/// Horner evaluation of a polynomial with scalar coefficients at an element.
pub fn eval_scalar_poly(coeffs: &[Scalar], x: &AlgebraElement) -> Result<AlgebraElement> {
    let field = x.field();
    let mut acc = AlgebraElement::zero(field);
    for c in coeffs.iter().rev() {
        acc = acc
            .try_mul(x)?
            .try_add(&AlgebraElement::scalar(field, c.clone()))?;
    }
    Ok(acc)
}

/// Evaluates a rational polynomial at an element.
pub fn eval_poly_at_element(p: &QPoly, x: &AlgebraElement) -> Result<AlgebraElement> {
    let field = x.field();
    let coeffs: Vec<Scalar> = p.coeffs().iter().map(|c| field.from_rational(c)).collect();
    eval_scalar_poly(&coeffs, x)
}

/// Integer coefficients, lowest degree first.
pub fn integer_coeffs(p: &QPoly) -> Vec<BigInt> {
    p.coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "family coefficients are integral");
            c.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::{casimir, scasimir};
    use crate::scalars::ScalarField;
    use proptest::prelude::*;

    fn ints(p: &QPoly) -> Vec<i64> {
        integer_coeffs(p)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn small_members() {
        assert_eq!(ints(&cheb_p(2)), vec![2, 0, 1]);
        assert_eq!(ints(&cheb_p(3)), vec![0, 3, 0, 1]);
        assert_eq!(ints(&cheb_r(1)), vec![1, 1]);
        assert_eq!(ints(&cheb_q(0)), vec![2]);
        assert_eq!(ints(&cheb_p(4)), vec![2, 0, 4, 0, 1]);
    }

    #[test]
    fn recursion_matches_generating_functions() {
        for fam in Family::ALL {
            let series = generating_series(fam, 12);
            for (m, s) in series.iter().enumerate() {
                assert_eq!(*s, fam.poly(m), "family {fam} at m = {m}");
            }
        }
    }

    #[test]
    fn identities_hold_to_twenty() {
        let report = verify_cheb_identities(20);
        assert_eq!(report.checks.len(), 21 * CHEB_IDENTITIES.len());
        assert!(report.all_pass());
    }

    #[test]
    fn eval_at_scasimir() {
        let k = ScalarField::generic();
        let s = scasimir(&k);
        assert_eq!(eval_poly_at_element(&cheb_p(2), &s).unwrap(), casimir(&k));
        assert_eq!(eval_poly_at_element(&cheb_p(1), &s).unwrap(), s);
        assert_eq!(
            eval_poly_at_element(&QPoly::from_ints(&[2]), &AlgebraElement::e(&k)).unwrap(),
            AlgebraElement::scalar(&k, k.from_int(2))
        );
    }

    #[test]
    fn family_names() {
        assert_eq!("q".parse::<Family>().unwrap(), Family::Q);
        assert!("x".parse::<Family>().is_err());
        assert_eq!(Family::R.variable(), "C");
    }

    proptest! {
        #[test]
        fn degree_and_parity(m in 0usize..40) {
            for fam in Family::ALL {
                prop_assert_eq!(fam.poly(m).degree(), Some(m));
            }
            prop_assert!(cheb_p(m).has_parity(m % 2));
        }
    }
}
