//! The algebra `U_q(osp(1|2))` in the PBW basis `f^a e^b k^c`.
//!
//! Elements are always kept in normal order. Multiplication moves `k` past
//! `f` and `e` by powers of `q` and rewrites `e^b f^a` with the closed-form
//! step
//!
//! ```text
//! e f^m = (-1)^m f^m e + (-1)^(m-1) f^(m-1) w_m,
//! w_m = [ (sum_{j<m} q'^-j) k - (sum_{j<m} q'^j) k^-1 ] / (q - q^-1)
//! ```
//!
//! The normal forms of `e^b f^a` are memoized per field.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::{Scalar, ScalarField};

/// `f^a e^b k^c`. The derived order is lexicographic on `(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0 };

    pub fn new(a: u32, b: u32, c: i32) -> Self {
        Monomial { a, b, c }
    }

    pub fn parity(&self) -> u32 {
        (self.a + self.b) % 2
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sym, exp) in [
            ("f", self.a as i64),
            ("e", self.b as i64),
            ("k", self.c as i64),
        ] {
            match exp {
                0 => {}
                1 => parts.push(sym.to_string()),
                _ => parts.push(format!("{sym}^{exp}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

type TermList = Arc<Vec<(Monomial, Scalar)>>;

/// Per-field memo of `e^b f^a` normal forms and the `w_m` coefficients.
#[derive(Default)]
pub(crate) struct ReorderMemo {
    ef: Mutex<HashMap<(u32, u32), TermList>>,
    w: Mutex<HashMap<u32, (Scalar, Scalar)>>,
}

/// Coefficients `(alpha_m, beta_m)` with `w_m = alpha_m k + beta_m k^-1`.
fn w_coeffs(field: &ScalarField, m: u32) -> (Scalar, Scalar) {
    if let Some(w) = field.memo().w.lock().expect("memo lock").get(&m) {
        return w.clone();
    }
    let mut up = field.zero();
    let mut down = field.zero();
    for j in 0..m as i64 {
        up = &up + &field.q_prime_pow(-j);
        down = &down + &field.q_prime_pow(j);
    }
    let alpha = &up * field.bracket_inv();
    let beta = -(&down * field.bracket_inv());
    field
        .memo()
        .w
        .lock()
        .expect("memo lock")
        .insert(m, (alpha.clone(), beta.clone()));
    (alpha, beta)
}

fn add_term(acc: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Normal form of `e^b f^a`.
fn reorder(field: &ScalarField, b: u32, a: u32) -> TermList {
    if let Some(t) = field.memo().ef.lock().expect("memo lock").get(&(b, a)) {
        return Arc::clone(t);
    }
    let terms: Vec<(Monomial, Scalar)> = if a == 0 || b == 0 {
        vec![(Monomial::new(a, b, 0), field.one())]
    } else {
        let mut acc = BTreeMap::new();
        let sign = |n: u32| if n.is_multiple_of(2) { 1 } else { -1 };
        // (-1)^a e^(b-1) f^a e
        for (m, c) in reorder(field, b - 1, a).iter() {
            let mut coef = c * &field.q_pow(m.c as i64);
            if sign(a) < 0 {
                coef = -coef;
            }
            add_term(&mut acc, Monomial::new(m.a, m.b + 1, m.c), coef);
        }
        // (-1)^(a-1) e^(b-1) f^(a-1) w_a
        let (alpha, beta) = w_coeffs(field, a);
        let (alpha, beta) = if sign(a - 1) < 0 {
            (-alpha, -beta)
        } else {
            (alpha, beta)
        };
        for (m, c) in reorder(field, b - 1, a - 1).iter() {
            add_term(&mut acc, Monomial::new(m.a, m.b, m.c + 1), c * &alpha);
            add_term(&mut acc, Monomial::new(m.a, m.b, m.c - 1), c * &beta);
        }
        acc.into_iter().collect()
    };
    let terms = Arc::new(terms);
    field
        .memo()
        .ef
        .lock()
        .expect("memo lock")
        .insert((b, a), Arc::clone(&terms));
    terms
}

/// Accumulates `coef * (m1 * m2)` into `acc`.
fn mul_monomials_into(
    field: &ScalarField,
    acc: &mut BTreeMap<Monomial, Scalar>,
    m1: Monomial,
    m2: Monomial,
    coef: &Scalar,
) {
    let base = m1.c as i64 * (m2.b as i64 - m2.a as i64);
    for (m, c) in reorder(field, m1.b, m2.a).iter() {
        let qexp = base + m.c as i64 * m2.b as i64;
        let mut t = c * coef;
        if qexp != 0 {
            t = &t * &field.q_pow(qexp);
        }
        add_term(
            acc,
            Monomial::new(m1.a + m.a, m.b + m2.b, m.c + m1.c + m2.c),
            t,
        );
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E,
    F,
    K,
    KInv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grade {
    Even,
    Odd,
    Mixed,
}

impl Grade {
    fn bit(self) -> Result<u32> {
        match self {
            Grade::Even => Ok(0),
            Grade::Odd => Ok(1),
            Grade::Mixed => Err(Error::NotHomogeneous),
        }
    }
}

/// A finite linear combination of PBW monomials; zero coefficients are
/// never stored, so equality of elements is equality of term maps.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    field: ScalarField,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(field: &ScalarField) -> Self {
        AlgebraElement {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &ScalarField) -> Self {
        Self::scalar(field, field.one())
    }

    pub fn scalar(field: &ScalarField, c: Scalar) -> Self {
        Self::monomial(field, Monomial::ONE, c)
    }

    pub fn monomial(field: &ScalarField, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlgebraElement {
            field: field.clone(),
            terms,
        }
    }

    /// Builds an element from arbitrary (possibly repeated) terms.
    pub fn from_terms(
        field: &ScalarField,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut acc = BTreeMap::new();
        for (m, c) in terms {
            field.check(&c)?;
            add_term(&mut acc, m, c);
        }
        Ok(AlgebraElement {
            field: field.clone(),
            terms: acc,
        })
    }

    pub fn generator(field: &ScalarField, g: Generator) -> Self {
        let m = match g {
            Generator::E => Monomial::new(0, 1, 0),
            Generator::F => Monomial::new(1, 0, 0),
            Generator::K => Monomial::new(0, 0, 1),
            Generator::KInv => Monomial::new(0, 0, -1),
        };
        Self::monomial(field, m, field.one())
    }

    pub fn e(field: &ScalarField) -> Self {
        Self::generator(field, Generator::E)
    }

    pub fn f(field: &ScalarField) -> Self {
        Self::generator(field, Generator::F)
    }

    pub fn k(field: &ScalarField) -> Self {
        Self::generator(field, Generator::K)
    }

    pub fn k_inv(field: &ScalarField) -> Self {
        Self::generator(field, Generator::KInv)
    }

    /// `f^a e^b k^c` with coefficient 1.
    pub fn basis(field: &ScalarField, a: u32, b: u32, c: i32) -> Self {
        Self::monomial(field, Monomial::new(a, b, c), field.one())
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `Some(c)` when the element is `c * 1`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.key().to_string(),
                right: other.field.key().to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut acc = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut acc, *m, c.clone());
        }
        Ok(AlgebraElement {
            field: self.field.clone(),
            terms: acc,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        self.field.check(c)?;
        if c.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        Ok(AlgebraElement {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        })
    }

    /// The product in PBW normal form.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut acc = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                mul_monomials_into(&self.field, &mut acc, *m1, *m2, &(c1 * c2));
            }
        }
        Ok(AlgebraElement {
            field: self.field.clone(),
            terms: acc,
        })
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn grade(&self) -> Grade {
        let mut parities = self.terms.keys().map(Monomial::parity);
        let Some(first) = parities.next() else {
            return Grade::Even;
        };
        if parities.all(|p| p == first) {
            if first == 0 {
                Grade::Even
            } else {
                Grade::Odd
            }
        } else {
            Grade::Mixed
        }
    }

    /// Keep only the terms without `e` or `f` (the image under `e = f = 0`).
    pub fn cartan_part(&self) -> Self {
        AlgebraElement {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.a == 0 && m.b == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Canonical text: parseable by the expression language.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!({"a": m.a, "b": m.b, "c": m.c, "coeff": c.to_string()}))
            .collect();
        json!({"field": self.field.to_json(), "terms": terms})
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let minus_one = (-c).is_one();
            if i == 0 {
                if minus_one {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if minus_one { " - " } else { " + " })?;
            }
            let unit = c.is_one() || minus_one;
            match (unit, *m == Monomial::ONE) {
                (true, true) => f.write_str("1")?,
                (true, false) => write!(f, "{m}")?,
                (false, true) => write!(f, "({c})")?,
                (false, false) => write!(f, "({c})*{m}")?,
            }
        }
        Ok(())
    }
}

macro_rules! element_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$m(&rhs)
            }
        }
    };
}
element_op!(Add, add, try_add);
element_op!(Sub, sub, try_sub);
element_op!(Mul, mul, try_mul);

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::neg(self)
    }
}

impl std::ops::Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::neg(&self)
    }
}

/// `xy - (-1)^{d(x)d(y)} yx` for homogeneous `x`, `y`.
pub fn supercommutator(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    let dx = x.grade().bit()?;
    let dy = y.grade().bit()?;
    let xy = x.try_mul(y)?;
    let yx = y.try_mul(x)?;
    if dx * dy == 1 {
        xy.try_add(&yx)
    } else {
        xy.try_sub(&yx)
    }
}

pub fn commutator(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.try_mul(y)?.try_sub(&y.try_mul(x)?)
}

pub fn anticommutator(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.try_mul(y)?.try_add(&y.try_mul(x)?)
}

/// `S = q^{1/2} k - q^{-1/2} k^{-1} - eta f e`.
pub fn scasimir(field: &ScalarField) -> AlgebraElement {
    AlgebraElement::from_terms(
        field,
        [
            (Monomial::new(0, 0, 1), field.q_half().clone()),
            (Monomial::new(0, 0, -1), -field.q_half_inv()),
            (Monomial::new(1, 1, 0), -field.eta()),
        ],
    )
    .expect("constants live in their field")
}

/// `C = q k^2 + q^-1 k^-2 + (q - q^-1)^2 (q k + q^-1 k^-1) f e
///      - (q - q^-1)^2 (q + 2 + q^-1) f^2 e^2`.
pub fn casimir(field: &ScalarField) -> AlgebraElement {
    let q = field.q();
    let qi = field.q_inv();
    let br = q - qi;
    let br2 = &br * &br;
    let two = field.from_int(2);
    AlgebraElement::from_terms(
        field,
        [
            (Monomial::new(0, 0, 2), q.clone()),
            (Monomial::new(0, 0, -2), qi.clone()),
            (Monomial::new(1, 1, 1), &br2 * q),
            (Monomial::new(1, 1, -1), &br2 * qi),
            (Monomial::new(2, 2, 0), -(&br2 * &(&(q + &two) + qi))),
        ],
    )
    .expect("constants live in their field")
}

/// Automorphisms generated by rescaling and the signed permutation.
#[derive(Clone, Debug)]
pub enum Automorphism {
    /// `(e, f, k, k^-1) -> (a e, a^-1 f, k, k^-1)`.
    Scale(Scalar),
    /// `(e, f, k, k^-1) -> (-f, e, k^-1, k)`.
    SignedPermutation,
}

impl Automorphism {
    /// Images of `(e, f, k, k^-1)`.
    pub fn generator_images(&self, field: &ScalarField) -> Result<[AlgebraElement; 4]> {
        let e = AlgebraElement::e(field);
        let f = AlgebraElement::f(field);
        let k = AlgebraElement::k(field);
        let ki = AlgebraElement::k_inv(field);
        match self {
            Automorphism::Scale(a) => {
                field.check(a)?;
                if a.is_zero() {
                    return Err(Error::usage("scale automorphism needs a nonzero factor"));
                }
                Ok([e.scale(a)?, f.scale(&a.inv()?)?, k, ki])
            }
            Automorphism::SignedPermutation => Ok([-f, e, ki, k]),
        }
    }

    /// Image of `x`, renormalized to PBW form.
    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        let field = x.field();
        let [ie, i_f, ik, iki] = self.generator_images(field)?;
        let mut acc = AlgebraElement::zero(field);
        for (m, c) in x.terms() {
            let kpart = if m.c >= 0 {
                ik.pow(m.c as u32)
            } else {
                iki.pow(m.c.unsigned_abs())
            };
            let img = i_f.pow(m.a).try_mul(&ie.pow(m.b))?.try_mul(&kpart)?;
            acc = acc.try_add(&img.scale(c)?)?;
        }
        Ok(acc)
    }

    /// True when the generator images satisfy the defining relations, i.e.
    /// the map extends to an algebra morphism.
    pub fn preserves_relations(&self, field: &ScalarField) -> Result<bool> {
        let [e, f, k, ki] = self.generator_images(field)?;
        defining_relations_hold(field, &e, &f, &k, &ki)
    }
}

/// Checks `k e k^-1 = q e`, `k f k^-1 = q^-1 f`,
/// `ef + fe = (k - k^-1)/(q - q^-1)` and `k k^-1 = k^-1 k = 1`.
pub fn defining_relations_hold(
    field: &ScalarField,
    e: &AlgebraElement,
    f: &AlgebraElement,
    k: &AlgebraElement,
    ki: &AlgebraElement,
) -> Result<bool> {
    let one = AlgebraElement::one(field);
    let ok = k.try_mul(ki)? == one
        && ki.try_mul(k)? == one
        && k.try_mul(e)?.try_mul(ki)? == e.scale(field.q())?
        && k.try_mul(f)?.try_mul(ki)? == f.scale(field.q_inv())?
        && anticommutator(e, f)? == k.try_sub(ki)?.scale(field.bracket_inv())?;
    Ok(ok)
}

/// Commutes with `e`, `f` and `k`.
pub fn is_central(x: &AlgebraElement) -> Result<bool> {
    let field = x.field();
    for g in [
        AlgebraElement::e(field),
        AlgebraElement::f(field),
        AlgebraElement::k(field),
    ] {
        if !commutator(x, &g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Anticommutes with `e`, `f` and commutes with `k`.
pub fn is_scentral(x: &AlgebraElement) -> Result<bool> {
    let field = x.field();
    Ok(anticommutator(x, &AlgebraElement::e(field))?.is_zero()
        && anticommutator(x, &AlgebraElement::f(field))?.is_zero()
        && commutator(x, &AlgebraElement::k(field))?.is_zero())
}

/// Bounds for [`random_element`].
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_ab: u32,
    pub max_abs_c: i32,
    pub max_terms: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_ab: 3,
            max_abs_c: 2,
            max_terms: 3,
        }
    }
}

/// A random element with small coefficients `n * q^{j/2}`.
pub fn random_element<R: Rng + ?Sized>(
    field: &ScalarField,
    rng: &mut R,
    shape: RandomShape,
) -> AlgebraElement {
    let n = rng.gen_range(1..=shape.max_terms);
    let terms: Vec<(Monomial, Scalar)> = (0..n)
        .map(|_| {
            let m = Monomial::new(
                rng.gen_range(0..=shape.max_ab),
                rng.gen_range(0..=shape.max_ab),
                rng.gen_range(-shape.max_abs_c..=shape.max_abs_c),
            );
            let mut k = rng.gen_range(-3i64..=3);
            if k == 0 {
                k = 1;
            }
            let c = &field.from_int(k) * &field.q_half_pow(rng.gen_range(-2..=2));
            (m, c)
        })
        .collect();
    AlgebraElement::from_terms(field, terms).expect("same field")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gens(
        k: &ScalarField,
    ) -> (
        AlgebraElement,
        AlgebraElement,
        AlgebraElement,
        AlgebraElement,
    ) {
        (
            AlgebraElement::e(k),
            AlgebraElement::f(k),
            AlgebraElement::k(k),
            AlgebraElement::k_inv(k),
        )
    }

    /// Normal ordering by single applications of the defining relations on
    /// words in e, f, k, K = k^-1. Independent of the closed-form step.
    fn naive_normal_form(field: &ScalarField, word: &[char]) -> BTreeMap<Monomial, Scalar> {
        let mut stack: Vec<(Vec<char>, Scalar)> = vec![(word.to_vec(), field.one())];
        let mut out = BTreeMap::new();
        while let Some((w, c)) = stack.pop() {
            let pos = (0..w.len().saturating_sub(1)).find(|&i| {
                matches!(
                    (w[i], w[i + 1]),
                    ('e', 'f')
                        | ('k', 'e')
                        | ('K', 'e')
                        | ('k', 'f')
                        | ('K', 'f')
                        | ('k', 'K')
                        | ('K', 'k')
                )
            });
            let Some(i) = pos else {
                let a = w.iter().filter(|&&x| x == 'f').count() as u32;
                let b = w.iter().filter(|&&x| x == 'e').count() as u32;
                let kc = w.iter().filter(|&&x| x == 'k').count() as i32
                    - w.iter().filter(|&&x| x == 'K').count() as i32;
                add_term(&mut out, Monomial::new(a, b, kc), c);
                continue;
            };
            let splice = |mid: &[char]| -> Vec<char> {
                let mut v = w[..i].to_vec();
                v.extend_from_slice(mid);
                v.extend_from_slice(&w[i + 2..]);
                v
            };
            match (w[i], w[i + 1]) {
                ('e', 'f') => {
                    stack.push((splice(&['f', 'e']), -&c));
                    stack.push((splice(&['k']), &c * field.bracket_inv()));
                    stack.push((splice(&['K']), -(&c * field.bracket_inv())));
                }
                ('k', 'e') => stack.push((splice(&['e', 'k']), &c * field.q())),
                ('K', 'e') => stack.push((splice(&['e', 'K']), &c * field.q_inv())),
                ('k', 'f') => stack.push((splice(&['f', 'k']), &c * field.q_inv())),
                ('K', 'f') => stack.push((splice(&['f', 'K']), &c * field.q())),
                _ => stack.push((splice(&[]), c)),
            }
        }
        out
    }

    fn word_product(field: &ScalarField, word: &[char]) -> AlgebraElement {
        let (e, f, k, ki) = gens(field);
        word.iter().fold(AlgebraElement::one(field), |acc, ch| {
            let g = match ch {
                'e' => &e,
                'f' => &f,
                'k' => &k,
                _ => &ki,
            };
            &acc * g
        })
    }

    #[test]
    fn generators_are_basis_monomials() {
        let k = ScalarField::generic();
        assert_eq!(
            AlgebraElement::e(&k).terms().collect::<Vec<_>>(),
            vec![(&Monomial::new(0, 1, 0), &k.one())]
        );
        assert_eq!(
            AlgebraElement::k_inv(&k).terms().next().unwrap().0,
            &Monomial::new(0, 0, -1)
        );
        assert_eq!(
            AlgebraElement::f(&k).terms().next().unwrap().0,
            &Monomial::new(1, 0, 0)
        );
    }

    #[test]
    fn e_times_f() {
        let k = ScalarField::generic();
        let (e, f, kk, ki) = gens(&k);
        let expect = &(-(&f * &e)) + &(&kk - &ki).scale(k.bracket_inv()).unwrap();
        assert_eq!(&e * &f, expect);
        assert_eq!((&e * &f).len(), 3);
    }

    #[test]
    fn k_times_e() {
        let k = ScalarField::generic();
        let (e, _, kk, _) = gens(&k);
        assert_eq!(&kk * &e, (&e * &kk).scale(k.q()).unwrap());
    }

    #[test]
    fn e_times_f_squared_by_hand() {
        // e f^2 = f^2 e + f [(q^-1 - 1) k - (q - 1) k^-1] / (q - q^-1)
        let k = ScalarField::generic();
        let (e, f, kk, ki) = gens(&k);
        let one = k.one();
        let bracket = &kk.scale(&(k.q_inv() - &one)).unwrap() - &ki.scale(&(k.q() - &one)).unwrap();
        let expect = &(&(&f * &f) * &e) + &(&f * &bracket).scale(k.bracket_inv()).unwrap();
        assert_eq!(&e * &(&f * &f), expect);
    }

    #[test]
    fn closed_form_matches_naive_rewriting() {
        for field in [ScalarField::generic(), ScalarField::root(5).unwrap()] {
            let words: [&str; 8] = [
                "ef", "eff", "eef", "eeff", "kefK", "eKfke", "efefe", "eeefff",
            ];
            for w in words {
                let chars: Vec<char> = w.chars().collect();
                let naive = naive_normal_form(&field, &chars);
                let fast = word_product(&field, &chars);
                assert_eq!(fast.terms, naive, "word {w} in {:?}", field);
            }
        }
    }

    #[test]
    fn k_times_k_inverse_is_one() {
        let k = ScalarField::root(4).unwrap();
        let (_, _, kk, ki) = gens(&k);
        assert_eq!(&kk * &ki, AlgebraElement::one(&k));
        assert_eq!(&ki * &kk, AlgebraElement::one(&k));
    }

    #[test]
    fn linear_ops() {
        let k = ScalarField::root(3).unwrap();
        let (e, f, _, _) = gens(&k);
        assert!((&e + &(-&e)).is_zero());
        assert_eq!(f.pow(6), AlgebraElement::basis(&k, 6, 0, 0));
        let fe = &f * &e;
        let scaled = fe.scale(k.eta()).unwrap();
        assert_eq!(scaled.len(), 1);
        assert_eq!(scaled.coeff(&Monomial::new(1, 1, 0)), k.eta().clone());
        assert!(e.scale(&ScalarField::generic().one()).is_err());
    }

    #[test]
    fn grades() {
        let k = ScalarField::generic();
        let (e, _, kk, _) = gens(&k);
        assert_eq!(e.grade(), Grade::Odd);
        assert_eq!(scasimir(&k).grade(), Grade::Even);
        assert_eq!(casimir(&k).grade(), Grade::Even);
        assert_eq!((&e + &kk).grade(), Grade::Mixed);
    }

    #[test]
    fn supercommutator_examples() {
        let k = ScalarField::generic();
        let (e, f, kk, ki) = gens(&k);
        assert_eq!(
            supercommutator(&e, &f).unwrap(),
            (&kk - &ki).scale(k.bracket_inv()).unwrap()
        );
        assert!(supercommutator(&kk, &ki).unwrap().is_zero());
        // S is even, so the graded bracket with e is the plain commutator.
        let s = scasimir(&k);
        assert_eq!(
            supercommutator(&s, &e).unwrap(),
            commutator(&s, &e).unwrap()
        );
        assert!(anticommutator(&s, &e).unwrap().is_zero());
        assert_eq!(supercommutator(&(&e + &kk), &e), Err(Error::NotHomogeneous));
    }

    #[test]
    fn scasimir_and_casimir_coefficients() {
        let k = ScalarField::generic();
        let s = scasimir(&k);
        assert_eq!(s.coeff(&Monomial::new(1, 1, 0)), -k.eta());
        assert_eq!(s.coeff(&Monomial::new(0, 0, 1)), k.q_half().clone());
        let c = casimir(&k);
        let br = k.q() - k.q_inv();
        let expect = -(&(&br * &br) * &(&(k.q() + &k.from_int(2)) + k.q_inv()));
        assert_eq!(c.coeff(&Monomial::new(2, 2, 0)), expect);
    }

    #[test]
    fn scasimir_squared_plus_two_is_casimir() {
        for k in [ScalarField::generic(), ScalarField::root(3).unwrap()] {
            let s = scasimir(&k);
            let two = AlgebraElement::scalar(&k, k.from_int(2));
            assert_eq!(&(&s * &s) + &two, casimir(&k));
            assert!(is_scentral(&s).unwrap());
            assert!(is_central(&casimir(&k)).unwrap());
            assert!(!is_central(&AlgebraElement::e(&k)).unwrap());
        }
    }

    #[test]
    fn signed_permutation_examples() {
        let k = ScalarField::generic();
        let (e, f, kk, ki) = gens(&k);
        let perm = Automorphism::SignedPermutation;
        assert_eq!(perm.apply(&e).unwrap(), -&f);
        assert!(perm.preserves_relations(&k).unwrap());
        // image of the defining relation's two sides agree
        let lhs = perm.apply(&supercommutator(&e, &f).unwrap()).unwrap();
        let rhs = supercommutator(&-&f, &e).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, (&ki - &kk).scale(k.bracket_inv()).unwrap());
    }

    #[test]
    fn scale_automorphism() {
        let k = ScalarField::generic();
        let s = scasimir(&k);
        assert_eq!(Automorphism::Scale(k.one()).apply(&s).unwrap(), s);
        let a = Automorphism::Scale(k.from_int(3));
        assert!(a.preserves_relations(&k).unwrap());
        assert_eq!(a.apply(&s).unwrap(), s);
        assert!(matches!(
            Automorphism::Scale(k.zero()).apply(&s),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn associativity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in [ScalarField::generic(), ScalarField::root(5).unwrap()] {
            for _ in 0..10 {
                let x = random_element(&k, &mut rng, RandomShape::default());
                let y = random_element(&k, &mut rng, RandomShape::default());
                let z = random_element(&k, &mut rng, RandomShape::default());
                assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            }
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = AlgebraElement::e(&ScalarField::generic());
        let b = AlgebraElement::e(&ScalarField::root(3).unwrap());
        assert!(matches!(a.try_mul(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn display_text() {
        let k = ScalarField::generic();
        assert_eq!(
            scasimir(&k).to_string(),
            "((-1)/(s))*k^-1 + (s)*k + ((-s^6 - s^4 + s^2 + 1)/(s^3))*f*e"
        );
        assert_eq!(AlgebraElement::zero(&k).to_string(), "0");
        assert_eq!((-AlgebraElement::f(&k)).to_string(), "-f");
        assert_eq!(AlgebraElement::basis(&k, 2, 0, -3).to_string(), "f^2*k^-3");
    }
}
