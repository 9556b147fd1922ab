//! Exact scalars for the two coefficient domains.
//!
//! Generic mode works in the rational-function field `Q(s)` with `s = q^{1/2}`
//! a formal square root of `q`. Root mode works in `Q(zeta)`, `zeta` a
//! primitive `4l`-th root of unity, with `q = zeta^4` and `q^{1/2} = zeta^2`.
//! Both live behind the single [`Scalar`] type; every scalar knows which
//! field it belongs to and mixing fields is rejected.

mod cyclotomic;
mod ratfunc;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde_json::{json, Value};

pub use cyclotomic::{cyclotomic_polynomial, totient, CycElem, CycField};
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};
use crate::pbw::ReorderMemo;
use crate::rootdata::RootData;

/// Identifies a scalar field; two fields with the same key are the same field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKey {
    Generic,
    /// Root mode for a primitive `l`-th root of unity.
    Root(u32),
}

impl fmt::Display for FieldKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKey::Generic => f.write_str("generic"),
            FieldKey::Root(l) => write!(f, "root(l={l}, N={})", 4 * l),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Generic(RatFunc),
    Root(CycElem),
}

impl Scalar {
    pub fn key(&self) -> FieldKey {
        match self {
            Scalar::Generic(_) => FieldKey::Generic,
            Scalar::Root(c) => FieldKey::Root((c.field().order() / 4) as u32),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Generic(r) => r.is_zero(),
            Scalar::Root(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Generic(r) => r.is_one(),
            Scalar::Root(c) => c.is_one(),
        }
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Generic(r) => r.as_rational(),
            Scalar::Root(c) => c.as_rational(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch {
            left: self.key().to_string(),
            right: other.key().to_string(),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Generic(a), Scalar::Generic(b)) => Ok(Scalar::Generic(a.add(b))),
            (Scalar::Root(a), Scalar::Root(b)) if a.field().order() == b.field().order() => {
                Ok(Scalar::Root(a.add(b)))
            }
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_add(&rhs.neg())
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Generic(a), Scalar::Generic(b)) => Ok(Scalar::Generic(a.mul(b))),
            (Scalar::Root(a), Scalar::Root(b)) if a.field().order() == b.field().order() => {
                Ok(Scalar::Root(a.mul(b)))
            }
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Generic(r) => Scalar::Generic(r.neg()),
            Scalar::Root(c) => Scalar::Root(c.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        Ok(match self {
            Scalar::Generic(r) => Scalar::Generic(r.inv()?),
            Scalar::Root(c) => Scalar::Root(c.inv()?),
        })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, n: i64) -> Result<Scalar> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut b = base;
        let mut acc: Option<Scalar> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => &a * &b,
                });
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(match acc {
            Some(a) => a,
            None => self.one_like(),
        })
    }

    /// The unit of this scalar's field.
    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Generic(_) => Scalar::Generic(RatFunc::one()),
            Scalar::Root(c) => Scalar::Root(CycElem::from_rational(
                c.field(),
                &BigRational::from_integer(1.into()),
            )),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Generic(_) => Scalar::Generic(RatFunc::zero()),
            Scalar::Root(c) => Scalar::Root(CycElem::zero(c.field())),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Generic(r) => r.fmt(f),
            Scalar::Root(c) => c.fmt(f),
        }
    }
}

// Operator forms panic on field mismatch, the way shape mismatches panic in
// array libraries; the `checked_*` methods report it instead.
macro_rules! scalar_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
scalar_op!(Add, add, checked_add);
scalar_op!(Sub, sub, checked_sub);
scalar_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

struct FieldInner {
    key: FieldKey,
    cyc: Option<Arc<CycField>>,
    root: Option<RootData>,
    q: Scalar,
    q_inv: Scalar,
    q_half: Scalar,
    q_half_inv: Scalar,
    eta: Scalar,
    /// `1 / (q - q^{-1})`.
    bracket_inv: Scalar,
    memo: ReorderMemo,
}

/// A coefficient field together with its distinguished constants.
///
/// Cheap to clone; clones share constants and the multiplication memo.
#[derive(Clone)]
pub struct ScalarField(Arc<FieldInner>);

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarField({})", self.0.key)
    }
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        self.0.key == other.0.key
    }
}

impl Eq for ScalarField {}

impl ScalarField {
    /// `Q(s)`, `q = s^2`.
    pub fn generic() -> Self {
        let s = Scalar::Generic(RatFunc::s_pow(1));
        Self::assemble(FieldKey::Generic, None, None, s)
    }

    /// `Q(zeta_{4l})` with `q = zeta^4` a primitive `l`-th root of unity.
    pub fn root(l: u32) -> Result<Self> {
        let root = RootData::closed_form(l)?;
        let cyc = Arc::new(CycField::new(root.n as usize));
        let s = Scalar::Root(CycElem::zeta_pow(&cyc, 2));
        Ok(Self::assemble(FieldKey::Root(l), Some(cyc), Some(root), s))
    }

    fn assemble(
        key: FieldKey,
        cyc: Option<Arc<CycField>>,
        root: Option<RootData>,
        q_half: Scalar,
    ) -> Self {
        let q_half_inv = q_half.inv().expect("q^{1/2} is nonzero");
        let q = &q_half * &q_half;
        let q_inv = &q_half_inv * &q_half_inv;
        let bracket = &q - &q_inv;
        let eta = &(&q_half + &q_half_inv) * &bracket;
        let bracket_inv = bracket.inv().expect("q^2 != 1");
        ScalarField(Arc::new(FieldInner {
            key,
            cyc,
            root,
            q,
            q_inv,
            q_half,
            q_half_inv,
            eta,
            bracket_inv,
            memo: ReorderMemo::default(),
        }))
    }

    pub fn key(&self) -> FieldKey {
        self.0.key
    }

    pub fn is_generic(&self) -> bool {
        self.0.key == FieldKey::Generic
    }

    pub fn root_data(&self) -> Option<&RootData> {
        self.0.root.as_ref()
    }

    /// Root data, or a usage error in generic mode.
    pub fn require_root(&self) -> Result<&RootData> {
        self.root_data()
            .ok_or_else(|| Error::usage("operation requires root-of-unity mode"))
    }

    pub fn cyclotomic(&self) -> Option<&Arc<CycField>> {
        self.0.cyc.as_ref()
    }

    pub(crate) fn memo(&self) -> &ReorderMemo {
        &self.0.memo
    }

    pub fn from_rational(&self, c: &BigRational) -> Scalar {
        match &self.0.cyc {
            None => Scalar::Generic(RatFunc::from_rational(c.clone())),
            Some(k) => Scalar::Root(CycElem::from_rational(k, c)),
        }
    }

    pub fn from_int(&self, c: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn q(&self) -> &Scalar {
        &self.0.q
    }

    pub fn q_inv(&self) -> &Scalar {
        &self.0.q_inv
    }

    pub fn q_half(&self) -> &Scalar {
        &self.0.q_half
    }

    pub fn q_half_inv(&self) -> &Scalar {
        &self.0.q_half_inv
    }

    /// `q' = -q`.
    pub fn q_prime(&self) -> Scalar {
        self.0.q.neg()
    }

    /// `(q^{1/2} + q^{-1/2})(q - q^{-1})`.
    pub fn eta(&self) -> &Scalar {
        &self.0.eta
    }

    /// `1 / (q - q^{-1})`.
    pub fn bracket_inv(&self) -> &Scalar {
        &self.0.bracket_inv
    }

    /// `(q^{1/2})^j`, cheap in both modes.
    pub fn q_half_pow(&self, j: i64) -> Scalar {
        match &self.0.cyc {
            None => Scalar::Generic(RatFunc::s_pow(j)),
            Some(k) => Scalar::Root(CycElem::zeta_pow(k, 2 * j)),
        }
    }

    /// `q^j`.
    pub fn q_pow(&self, j: i64) -> Scalar {
        self.q_half_pow(2 * j)
    }

    /// `q'^j = (-1)^j q^j`.
    pub fn q_prime_pow(&self, j: i64) -> Scalar {
        let p = self.q_pow(j);
        if j.rem_euclid(2) == 1 {
            p.neg()
        } else {
            p
        }
    }

    /// `zeta^j` in root mode.
    pub fn root_power(&self, j: i64) -> Result<Scalar> {
        match &self.0.cyc {
            None => Err(Error::usage("root_power requires root-of-unity mode")),
            Some(k) => Ok(Scalar::Root(CycElem::zeta_pow(k, j))),
        }
    }

    /// Checks that `x` lives in this field.
    pub fn check(&self, x: &Scalar) -> Result<()> {
        if x.key() == self.0.key {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.0.key.to_string(),
                right: x.key().to_string(),
            })
        }
    }

    pub fn to_json(&self) -> Value {
        match self.0.key {
            FieldKey::Generic => json!({"mode": "generic"}),
            FieldKey::Root(l) => json!({"mode": "root", "l": l, "N": 4 * l}),
        }
    }

    /// Inverse of [`ScalarField::to_json`].
    pub fn from_json(v: &Value) -> Result<Self> {
        match v.get("mode").and_then(Value::as_str) {
            Some("generic") => Ok(Self::generic()),
            Some("root") => {
                let l = v
                    .get("l")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Input("field record lacks integer `l`".into()))?;
                Self::root(l as u32)
            }
            _ => Err(Error::Input("field record lacks a valid `mode`".into())),
        }
    }

    /// A random element with small integer coefficients, used by the
    /// randomized property suites. Generic mode draws `p(s)/r(s)` with a
    /// nonzero denominator; root mode draws an integer vector in powers of
    /// `zeta`.
    pub fn random_scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match &self.0.cyc {
            None => {
                let mut draw = |len: usize| {
                    crate::poly::QPoly::new(
                        (0..len)
                            .map(|_| BigRational::from_integer(rng.gen_range(-4i64..=4).into()))
                            .collect(),
                    )
                };
                let num = draw(4);
                let mut den = draw(3);
                if den.is_zero() {
                    den = crate::poly::QPoly::one();
                }
                let shift = rng.gen_range(-2i64..=2);
                let r = RatFunc::from_polys(num, den).expect("nonzero denominator");
                Scalar::Generic(r.mul(&RatFunc::s_pow(shift)))
            }
            Some(k) => {
                let coeffs: Vec<BigRational> = (0..k.degree())
                    .map(|_| BigRational::from_integer(rng.gen_range(-3i64..=3).into()))
                    .collect();
                Scalar::Root(CycElem::from_coeffs(k, &coeffs))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fields() -> Vec<ScalarField> {
        vec![
            ScalarField::generic(),
            ScalarField::root(3).unwrap(),
            ScalarField::root(5).unwrap(),
            ScalarField::root(6).unwrap(),
        ]
    }

    #[test]
    fn q_half_squares_to_q() {
        for k in fields() {
            assert_eq!(k.q_half() * k.q_half(), k.q().clone());
            assert!(!k.eta().is_zero());
        }
    }

    #[test]
    fn generic_q_half_squared_minus_q_is_zero() {
        let k = ScalarField::generic();
        assert!((&(k.q_half() * k.q_half()) - k.q()).is_zero());
    }

    #[test]
    fn root_mode_three_has_q_cubed_one() {
        let k = ScalarField::root(3).unwrap();
        assert!(k.q().pow(3).unwrap().is_one());
        assert!(!k.q().is_one());
        assert_eq!(k.root_power(4).unwrap(), k.q().clone());
        let x = k.q() - k.q_inv();
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn root_power_edges() {
        let k = ScalarField::root(3).unwrap();
        assert!(k.root_power(0).unwrap().is_one());
        assert!(k.root_power(12).unwrap().is_one());
        for j in -30..30 {
            assert!((&k.root_power(j).unwrap() * &k.root_power(-j).unwrap()).is_one());
        }
        assert!(matches!(
            ScalarField::generic().root_power(1),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn zeta_has_exact_order_n() {
        for l in 3..=12u32 {
            let k = ScalarField::root(l).unwrap();
            let n = 4 * l as i64;
            for m in 1..n {
                assert!(!k.root_power(m).unwrap().is_one(), "l={l} m={m}");
            }
            assert!(k.root_power(n).unwrap().is_one());
        }
    }

    #[test]
    fn eta_matches_definition() {
        for k in fields() {
            let direct = &(k.q_half() + k.q_half_inv()) * &(k.q() - k.q_inv());
            assert_eq!(&direct, k.eta());
        }
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = ScalarField::generic().one();
        let b = ScalarField::root(3).unwrap().one();
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::FieldMismatch { .. })
        ));
        let c = ScalarField::root(4).unwrap().one();
        assert!(matches!(
            b.checked_mul(&c),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        for k in fields() {
            assert_eq!(k.one().checked_div(&k.zero()), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn field_axioms_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in [ScalarField::generic(), ScalarField::root(5).unwrap()] {
            let mut inverted = 0;
            while inverted < 200 {
                let a = k.random_scalar(&mut rng);
                let b = k.random_scalar(&mut rng);
                let c = k.random_scalar(&mut rng);
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &b, &b * &a);
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                if !a.is_zero() {
                    assert!((&a * &a.inv().unwrap()).is_one());
                    inverted += 1;
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in fields() {
            for _ in 0..50 {
                let a = k.random_scalar(&mut rng);
                // Re-normalizing through a neutral operation is a no-op.
                assert_eq!(&a * &k.one(), a);
                assert_eq!(&a + &k.zero(), a);
                assert_eq!(a.to_string(), (&a * &k.one()).to_string());
            }
        }
    }

    #[test]
    fn display_forms() {
        let g = ScalarField::generic();
        assert_eq!(g.eta().to_string(), "(s^6 + s^4 - s^2 - 1)/(s^3)");
        let r = ScalarField::root(3).unwrap();
        // zeta^4 = zeta^2 - 1 in Q(zeta_12)
        assert_eq!(r.q().to_string(), "z^2 - 1");
        assert_eq!(
            r.from_rational(&BigRational::new(1.into(), 2.into()))
                .to_string(),
            "1/2"
        );
    }
}
