//! Central elements and the relations among them.
//!
//! Every check here is a two-sided normal-form comparison: a [`Relation`]
//! holds when both of its sides reduce to the same PBW expansion.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chebychev::{cheb_p, cheb_q, cheb_r, eval_poly_at_element};
use crate::error::{Error, Result};
use crate::exprparse::parse_element;
use crate::pbw::{
    casimir, is_central, random_element, scasimir, AlgebraElement, Automorphism, Generator,
    RandomShape,
};
use crate::rootdata::{epsilon, RootData};
use crate::scalars::{Scalar, ScalarField};

/// A claimed identity `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
}

/// Outcome of checking a [`Relation`]; both sides are included on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationOutcome {
    pub relation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl Relation {
    pub fn new(name: impl Into<String>, lhs: AlgebraElement, rhs: AlgebraElement) -> Self {
        Relation {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn check(&self) -> RelationOutcome {
        let pass = self.holds();
        RelationOutcome {
            relation: self.name.clone(),
            l: self.lhs.field().root_data().map(|r| r.l),
            pass,
            lhs: (!pass).then(|| self.lhs.to_text()),
            rhs: (!pass).then(|| self.rhs.to_text()),
        }
    }
}

/// Writes relations as a fixture: both sides in canonical text, readable
/// back with [`relations_from_fixture`].
pub fn relations_to_fixture(field: &ScalarField, relations: &[Relation]) -> Value {
    let rels: Vec<Value> = relations
        .iter()
        .map(|r| json!({"name": r.name, "lhs": r.lhs.to_text(), "rhs": r.rhs.to_text()}))
        .collect();
    json!({"field": field.to_json(), "relations": rels})
}

pub fn relations_from_fixture(v: &Value) -> Result<(ScalarField, Vec<Relation>)> {
    let field = ScalarField::from_json(
        v.get("field")
            .ok_or_else(|| Error::Input("fixture lacks `field`".into()))?,
    )?;
    let list = v
        .get("relations")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Input("fixture lacks a `relations` array".into()))?;
    let text = |r: &Value, key: &str| -> Result<String> {
        r.get(key)
            .and_then(Value::as_str)
            .map(str::to_owned)
            .ok_or_else(|| Error::Input(format!("fixture relation lacks string `{key}`")))
    };
    let mut out = Vec::with_capacity(list.len());
    for r in list {
        let name = text(r, "name")?;
        let side = |key: &str| {
            parse_element(&field, &text(r, key)?)
                .map_err(|e| Error::Input(format!("{name}.{key}: {e}")))
        };
        out.push(Relation::new(name.clone(), side("lhs")?, side("rhs")?));
    }
    Ok((field, out))
}

fn k_pow(field: &ScalarField, c: i32) -> AlgebraElement {
    AlgebraElement::basis(field, 0, 0, c)
}

fn f_e(field: &ScalarField, a: u32, b: u32, c: i32) -> AlgebraElement {
    AlgebraElement::basis(field, a, b, c)
}

fn sc(x: &AlgebraElement, c: &Scalar) -> AlgebraElement {
    x.scale(c).expect("scalar from the same field")
}

fn int(field: &ScalarField, n: i64) -> AlgebraElement {
    AlgebraElement::scalar(field, field.from_int(n))
}

fn sign(field: &ScalarField, exponent: u64) -> Scalar {
    field.from_int(if exponent.is_multiple_of(2) { 1 } else { -1 })
}

/// `(-eta)^m`.
fn minus_eta_pow(field: &ScalarField, m: u32) -> Scalar {
    (-field.eta()).pow(m as i64).expect("nonzero eta")
}

fn eta_pow(field: &ScalarField, m: u32) -> Scalar {
    field.eta().pow(m as i64).expect("nonzero eta")
}

/// `prod_{n<m} (S - q'^n q^{1/2} k + q'^-n q^{-1/2} k^-1) = eps(m) (-eta)^m f^m e^m`.
pub fn scasimir_product_relation(field: &ScalarField, m: u32) -> Result<Relation> {
    if m == 0 {
        return Err(Error::usage("the product needs m >= 1"));
    }
    let s = scasimir(field);
    let mut lhs = AlgebraElement::one(field);
    for n in 0..m as i64 {
        let up = field.q_prime_pow(n).checked_mul(field.q_half())?;
        let down = field.q_prime_pow(-n).checked_mul(field.q_half_inv())?;
        let factor = s
            .try_sub(&sc(&k_pow(field, 1), &up))?
            .try_add(&sc(&k_pow(field, -1), &down))?;
        lhs = lhs.try_mul(&factor)?;
    }
    let coeff = &field.from_int(epsilon(m as u64)) * &minus_eta_pow(field, m);
    let rhs = sc(&f_e(field, m, m, 0), &coeff);
    Ok(Relation::new(format!("scasm[m={m}]"), lhs, rhs))
}

pub fn verify_scasimir_product(m: u32, field: &ScalarField) -> Result<bool> {
    Ok(scasimir_product_relation(field, m)?.holds())
}

/// `(q - q^-1)(f^m e + (-1)^{m-1} e f^m) = f^{m-1} w'_m` where
/// `w'_m = (q'^-m - 1)/(q'^-1 - 1) k - (q'^m - 1)/(q' - 1) k^-1`.
pub fn comemf_relation(field: &ScalarField, m: u32) -> Result<Relation> {
    if m == 0 {
        return Err(Error::usage("the relation needs m >= 1"));
    }
    let e = AlgebraElement::e(field);
    let fm = f_e(field, m, 0, 0);
    let bracket = field.q() - field.q_inv();
    let inner = fm
        .try_mul(&e)?
        .try_add(&sc(&e.try_mul(&fm)?, &sign(field, (m - 1) as u64)))?;
    let lhs = sc(&inner, &bracket);
    let (mut up, mut down) = (field.zero(), field.zero());
    for j in 0..m as i64 {
        up = &up + &field.q_prime_pow(-j);
        down = &down + &field.q_prime_pow(j);
    }
    let w = sc(&k_pow(field, 1), &up).try_sub(&sc(&k_pow(field, -1), &down))?;
    let rhs = f_e(field, m - 1, 0, 0).try_mul(&w)?;
    Ok(Relation::new(format!("comemf[m={m}]"), lhs, rhs))
}

/// Image of [`comemf_relation`] under the signed permutation.
pub fn comemf_mirror_relation(field: &ScalarField, m: u32) -> Result<Relation> {
    let r = comemf_relation(field, m)?;
    let sp = Automorphism::SignedPermutation;
    Ok(Relation::new(
        format!("comemf_mirror[m={m}]"),
        sp.apply(&r.lhs)?,
        sp.apply(&r.rhs)?,
    ))
}

/// `S e = -e S`, `S f = -f S`, `S k = k S` and `S^2 + 2 = C`.
pub fn scasimir_relations(field: &ScalarField) -> Result<Vec<Relation>> {
    let s = scasimir(field);
    let minus = field.from_int(-1);
    let mut out = Vec::new();
    for (name, g, odd) in [
        ("e", Generator::E, true),
        ("f", Generator::F, true),
        ("k", Generator::K, false),
    ] {
        let x = AlgebraElement::generator(field, g);
        let right = x.try_mul(&s)?;
        let (rhs, op) = if odd {
            (sc(&right, &minus), "-")
        } else {
            (right, "")
        };
        out.push(Relation::new(
            format!("S*{name} = {op}{name}*S"),
            s.try_mul(&x)?,
            rhs,
        ));
    }
    out.push(Relation::new(
        "S^2 + 2 = C",
        s.pow(2).try_add(&int(field, 2))?,
        casimir(field),
    ));
    Ok(out)
}

/// `E = e^L` and `F = f^L`.
pub fn build_ef(field: &ScalarField) -> Result<(AlgebraElement, AlgebraElement)> {
    let rd = field.require_root()?;
    Ok((f_e(field, 0, rd.big_l, 0), f_e(field, rd.big_l, 0, 0)))
}

/// `[x, g] = 0` written as `x g = g x`.
fn commutes(name: &str, x: &AlgebraElement, g: &AlgebraElement, gname: &str) -> Result<Relation> {
    Ok(Relation::new(
        format!("{name}*{gname} = {gname}*{name}"),
        x.try_mul(g)?,
        g.try_mul(x)?,
    ))
}

/// `x g = -g x`.
fn anticommutes(
    name: &str,
    x: &AlgebraElement,
    g: &AlgebraElement,
    gname: &str,
) -> Result<Relation> {
    Ok(Relation::new(
        format!("{name}*{gname} = -{gname}*{name}"),
        x.try_mul(g)?,
        g.try_mul(x)?.neg(),
    ))
}

fn generator_list(field: &ScalarField) -> [(AlgebraElement, &'static str); 3] {
    [
        (AlgebraElement::generator(field, Generator::E), "e"),
        (AlgebraElement::generator(field, Generator::F), "f"),
        (AlgebraElement::generator(field, Generator::K), "k"),
    ]
}

fn centrality_relations(name: &str, x: &AlgebraElement) -> Result<Vec<Relation>> {
    generator_list(x.field())
        .iter()
        .map(|(g, gname)| commutes(name, x, g, gname))
        .collect()
}

/// `E` and `F` commute with `e`, `f`, `k`.
pub fn ef_central_relations(field: &ScalarField) -> Result<Vec<Relation>> {
    let (e_big, f_big) = build_ef(field)?;
    let mut out = centrality_relations("E", &e_big)?;
    out.extend(centrality_relations("F", &f_big)?);
    Ok(out)
}

pub fn verify_ef_central(field: &ScalarField) -> Result<bool> {
    Ok(ef_central_relations(field)?.iter().all(Relation::holds))
}

fn require_twice_odd(field: &ScalarField) -> Result<RootData> {
    let rd = *field.require_root()?;
    if !rd.twice_odd {
        return Err(Error::usage(format!(
            "l = {} is not twice an odd integer",
            rd.l
        )));
    }
    Ok(rd)
}

/// For `l` twice odd: `e^{l'}` and `f^{l'}` anticommute with `k`, `k^-1`,
/// `S`, the opposite generator and each other, and
/// `e^{L/2} f^{L/2} k^{L/2}` is central.
pub fn half_power_relations(field: &ScalarField) -> Result<Vec<Relation>> {
    let rd = require_twice_odd(field)?;
    let lp = rd.l_prime;
    let e_half = f_e(field, 0, lp, 0);
    let f_half = f_e(field, lp, 0, 0);
    let s = scasimir(field);
    let e_name = format!("e^{lp}");
    let f_name = format!("f^{lp}");
    let mut out = Vec::new();
    for (x, name, other, oname) in [
        (&e_half, &e_name, AlgebraElement::f(field), "f"),
        (&f_half, &f_name, AlgebraElement::e(field), "e"),
    ] {
        out.push(anticommutes(name, x, &k_pow(field, 1), "k")?);
        out.push(anticommutes(name, x, &k_pow(field, -1), "k^-1")?);
        out.push(anticommutes(name, x, &s, "S")?);
        out.push(anticommutes(name, x, &other, oname)?);
    }
    out.push(anticommutes(&e_name, &e_half, &f_half, &f_name)?);
    let half = rd.big_l / 2;
    let z = e_half
        .try_mul(&f_half)?
        .try_mul(&k_pow(field, half as i32))?;
    out.extend(centrality_relations(
        &format!("e^{half}*f^{half}*k^{half}"),
        &z,
    )?);
    Ok(out)
}

pub fn verify_half_powers(field: &ScalarField) -> Result<bool> {
    Ok(half_power_relations(field)?.iter().all(Relation::holds))
}

/// The right side of the `l'`-th power relation,
/// `q^{l'/2} k^{l'} + (-1)^{l'} q^{-l'/2} k^{-l'} + eps(l') (-eta)^{l'} f^{l'} e^{l'}`.
fn srel_rhs(field: &ScalarField, lp: u32, with_fe: bool) -> Result<AlgebraElement> {
    let lpi = lp as i32;
    let mut rhs = sc(&k_pow(field, lpi), &field.q_half_pow(lp as i64));
    let low = &sign(field, lp as u64) * &field.q_half_pow(-(lp as i64));
    rhs = rhs.try_add(&sc(&k_pow(field, -lpi), &low))?;
    if with_fe {
        let c = &field.from_int(epsilon(lp as u64)) * &minus_eta_pow(field, lp);
        rhs = rhs.try_add(&sc(&f_e(field, lp, lp, 0), &c))?;
    }
    Ok(rhs)
}

/// `P_{l'}(S) = q^{l'/2} k^{l'} + (-1)^{l'} q^{-l'/2} k^{-l'} + eps(l') (-eta)^{l'} f^{l'} e^{l'}`.
pub fn srel_relation(field: &ScalarField) -> Result<Relation> {
    let lp = field.require_root()?.l_prime;
    let lhs = eval_poly_at_element(&cheb_p(lp as usize), &scasimir(field))?;
    Ok(Relation::new("srel", lhs, srel_rhs(field, lp, true)?))
}

pub fn verify_srel(field: &ScalarField) -> Result<bool> {
    Ok(srel_relation(field)?.holds())
}

/// The same relation with `e = f = 0`: `P_{l'}` evaluated at the Cartan
/// part `q^{1/2} k - q^{-1/2} k^-1` of `S`, against the Cartan part of the
/// right side.
pub fn srel_cartan_relation(field: &ScalarField) -> Result<Relation> {
    let lp = field.require_root()?.l_prime;
    let s0 = scasimir(field).cartan_part();
    let lhs = eval_poly_at_element(&cheb_p(lp as usize), &s0)?;
    Ok(Relation::new(
        "srel[e=f=0]",
        lhs,
        srel_rhs(field, lp, false)?,
    ))
}

/// For `l` not twice odd:
/// `(-1)^{L/2} Q_{L/2}(C) = -k^L - k^-L + eta^L f^L e^L`.
pub fn centre_relation_even(field: &ScalarField) -> Result<Relation> {
    let rd = *field.require_root()?;
    if rd.twice_odd {
        return Err(Error::usage(format!(
            "l = {} is twice an odd integer; use rel2, rel3 and rel4",
            rd.l
        )));
    }
    let big_l = rd.big_l;
    let half = big_l / 2;
    let q_c = eval_poly_at_element(&cheb_q(half as usize), &casimir(field))?;
    let lhs = sc(&q_c, &sign(field, half as u64));
    let rhs = k_pow(field, big_l as i32)
        .neg()
        .try_sub(&k_pow(field, -(big_l as i32)))?
        .try_add(&sc(&f_e(field, big_l, big_l, 0), &eta_pow(field, big_l)))?;
    Ok(Relation::new("centre_even", lhs, rhs))
}

pub fn verify_centre_relation_even(field: &ScalarField) -> Result<bool> {
    Ok(centre_relation_even(field)?.holds())
}

/// For `l` twice odd, the three relations `rel2`, `rel3`, `rel4`.
/// `q^{L/4}` is `(q^{1/2})^{L/2}`.
pub fn centre_relations_twice_odd(field: &ScalarField) -> Result<Vec<Relation>> {
    let rd = require_twice_odd(field)?;
    let big_l = rd.big_l;
    let li = big_l as i32;
    let half = big_l / 2;
    let hi = half as i32;
    let quarter_q = field.q_half_pow(half as i64);
    let sgn = sign(field, ((big_l + 2) / 4) as u64);
    let s = scasimir(field);
    let c = casimir(field);
    let r_c = eval_poly_at_element(&cheb_r(((big_l - 2) / 4) as usize), &c)?;
    let q_c = eval_poly_at_element(&cheb_q(half as usize), &c)?;
    let s_r = s.try_mul(&r_c)?;
    let k_sum = k_pow(field, hi).try_add(&k_pow(field, -hi))?;
    let eta_l_fe = sc(&f_e(field, big_l, big_l, 0), &eta_pow(field, big_l));
    let fe_half = f_e(field, half, half, 0);

    let rel2_lhs = s_r.try_mul(&k_pow(field, hi))?;
    let rel2_rhs = sc(&k_pow(field, li), &quarter_q)
        .try_sub(&AlgebraElement::scalar(field, quarter_q.inv()?))?
        .try_add(&sc(
            &fe_half.try_mul(&k_pow(field, hi))?,
            &(&sgn * &eta_pow(field, half)),
        ))?;

    let two = field.from_int(2);
    let rel3_coeff = &(&(&two * &sgn) * &quarter_q) * &eta_pow(field, half);
    let rel3_rhs = k_pow(field, li)
        .neg()
        .try_sub(&k_pow(field, -li))?
        .try_add(&sc(&fe_half.try_mul(&k_sum)?, &rel3_coeff))?
        .try_sub(&eta_l_fe)?;

    let rel4_rhs = k_pow(field, li)
        .try_add(&k_pow(field, -li))?
        .try_add(&int(field, 4))?
        .try_add(&sc(&s_r.try_mul(&k_sum)?, &(&two * &quarter_q)))?
        .try_sub(&eta_l_fe)?;

    Ok(vec![
        Relation::new("rel2", rel2_lhs, rel2_rhs),
        Relation::new("rel3", q_c.clone(), rel3_rhs),
        Relation::new("rel4", q_c, rel4_rhs),
    ])
}

/// Named central elements at a root of unity.
#[derive(Clone, Debug)]
pub struct CentreCatalog {
    pub root: RootData,
    pub elements: Vec<(String, AlgebraElement)>,
    pub central: Vec<bool>,
    pub has_half_scasimir: bool,
    pub twice_odd: bool,
}

impl CentreCatalog {
    pub fn all_central(&self) -> bool {
        self.central.iter().all(|&c| c)
    }

    pub fn get(&self, name: &str) -> Option<&AlgebraElement> {
        self.elements
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, x)| x)
    }
}

/// `k^l`, `k^-l`, `C`, `E`, `F` and, for even `l`, `k^{l/2} S`.
pub fn centre_catalog(field: &ScalarField) -> Result<CentreCatalog> {
    let rd = *field.require_root()?;
    let l = rd.l as i32;
    let (e_big, f_big) = build_ef(field)?;
    let mut elements = vec![
        (format!("k^{l}"), k_pow(field, l)),
        (format!("k^-{l}"), k_pow(field, -l)),
        ("C".to_string(), casimir(field)),
        ("E".to_string(), e_big),
        ("F".to_string(), f_big),
    ];
    let even = rd.l % 2 == 0;
    if even {
        elements.push((
            format!("k^{}*S", l / 2),
            k_pow(field, l / 2).try_mul(&scasimir(field))?,
        ));
    }
    let central = elements
        .iter()
        .map(|(_, x)| is_central(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(CentreCatalog {
        root: rd,
        elements,
        central,
        has_half_scasimir: even,
        twice_odd: rd.twice_odd,
    })
}

/// Catalog elements commute with the generators, as relations.
pub fn catalog_relations(field: &ScalarField) -> Result<Vec<Relation>> {
    let cat = centre_catalog(field)?;
    let mut out = Vec::new();
    for (name, x) in &cat.elements {
        out.extend(centrality_relations(name, x)?);
    }
    Ok(out)
}

/// `(xy)z = x(yz)` for seeded random triples.
pub fn associativity_relations(field: &ScalarField, count: usize, seed: u64) -> Vec<Relation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = RandomShape::default();
    (0..count)
        .map(|i| {
            let x = random_element(field, &mut rng, shape);
            let y = random_element(field, &mut rng, shape);
            let z = random_element(field, &mut rng, shape);
            Relation::new(format!("assoc[{i}]"), &(&x * &y) * &z, &x * &(&y * &z))
        })
        .collect()
}

/// Which relations a verification run covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    Scasm,
    Srel,
    Centre,
    Scasimir,
    Comemf,
    Assoc,
    All,
}

impl std::str::FromStr for Selection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scasm" => Ok(Selection::Scasm),
            "srel" => Ok(Selection::Srel),
            "centre" | "center" => Ok(Selection::Centre),
            "scasimir" => Ok(Selection::Scasimir),
            "comemf" => Ok(Selection::Comemf),
            "assoc" => Ok(Selection::Assoc),
            "all" => Ok(Selection::All),
            _ => Err(Error::usage(format!(
                "unknown check {s:?}, expected one of scasm, srel, centre, scasimir, comemf, assoc, all"
            ))),
        }
    }
}

/// Options for [`collect_relations`].
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub selection: Selection,
    /// Largest `m` for the scasimir product; defaults to `L`, or to
    /// [`GENERIC_SCASM_MAX`] in generic mode.
    pub max_m: Option<u32>,
    pub seed: u64,
    pub assoc_count: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            selection: Selection::All,
            max_m: None,
            seed: 0,
            assoc_count: 20,
        }
    }
}

pub const GENERIC_SCASM_MAX: u32 = 6;
pub const COMEMF_MAX: u32 = 10;

type Group<'a> = Box<dyn Fn() -> Result<Vec<Relation>> + Send + Sync + 'a>;

/// Builds the selected relations. Independent groups run on separate
/// threads; the result order depends only on the options.
///
/// `srel` and `centre` only make sense at a root of unity; in generic mode
/// `all` skips them and selecting them directly is an error. `comemf` is
/// part of `all` in generic mode only.
pub fn collect_relations(field: &ScalarField, opts: &VerifyOptions) -> Result<Vec<Relation>> {
    let rd = field.root_data().copied();
    let sel = opts.selection;
    if rd.is_none() && matches!(sel, Selection::Srel | Selection::Centre) {
        return Err(Error::usage(
            "srel and centre checks need a root of unity (--l)",
        ));
    }
    let want = |s: Selection| sel == s || sel == Selection::All;
    let mut groups: Vec<Group> = Vec::new();
    if want(Selection::Scasimir) {
        groups.push(Box::new(|| scasimir_relations(field)));
    }
    // at a root the relation collapses to 0 = 0 whenever l' divides m, so
    // `all` only includes it in generic mode
    if sel == Selection::Comemf || (sel == Selection::All && rd.is_none()) {
        for m in 1..=COMEMF_MAX {
            groups.push(Box::new(move || {
                Ok(vec![
                    comemf_relation(field, m)?,
                    comemf_mirror_relation(field, m)?,
                ])
            }));
        }
    }
    if want(Selection::Scasm) {
        let max_m = opts
            .max_m
            .unwrap_or(rd.map_or(GENERIC_SCASM_MAX, |r| r.big_l));
        for m in 1..=max_m {
            groups.push(Box::new(move || {
                Ok(vec![scasimir_product_relation(field, m)?])
            }));
        }
    }
    if let Some(rd) = rd {
        if want(Selection::Srel) {
            groups.push(Box::new(|| {
                Ok(vec![srel_relation(field)?, srel_cartan_relation(field)?])
            }));
        }
        if want(Selection::Centre) {
            groups.push(Box::new(|| ef_central_relations(field)));
            groups.push(Box::new(|| catalog_relations(field)));
            if rd.twice_odd {
                groups.push(Box::new(|| centre_relations_twice_odd(field)));
                groups.push(Box::new(|| half_power_relations(field)));
            } else {
                groups.push(Box::new(|| Ok(vec![centre_relation_even(field)?])));
            }
        }
    }
    if want(Selection::Assoc) {
        let (count, seed) = (opts.assoc_count, opts.seed);
        groups.push(Box::new(move || {
            Ok(associativity_relations(field, count, seed))
        }));
    }
    let results: Vec<Result<Vec<Relation>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = groups.iter().map(|g| scope.spawn(g)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(l: u32) -> ScalarField {
        ScalarField::root(l).unwrap()
    }

    #[test]
    fn scasm_first_cases_generic() {
        let k = ScalarField::generic();
        let r1 = scasimir_product_relation(&k, 1).unwrap();
        assert!(r1.holds());
        assert_eq!(r1.rhs, sc(&f_e(&k, 1, 1, 0), &-k.eta()));
        let r2 = scasimir_product_relation(&k, 2).unwrap();
        assert!(r2.holds());
        let eta2 = k.eta().pow(2).unwrap();
        assert_eq!(r2.rhs, sc(&f_e(&k, 2, 2, 0), &-eta2));
        assert!(scasimir_product_relation(&k, 0).is_err());
    }

    #[test]
    fn scasm_root_l3_up_to_six() {
        let k = root(3);
        for m in 1..=6 {
            assert!(verify_scasimir_product(m, &k).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn e_and_f_powers_central() {
        for l in [3, 4] {
            let k = root(l);
            assert!(verify_ef_central(&k).unwrap());
            let (e_big, f_big) = build_ef(&k).unwrap();
            assert!(is_central(&e_big).unwrap() && is_central(&f_big).unwrap());
        }
        assert!(matches!(
            build_ef(&ScalarField::generic()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn f_power_l_commutes_with_e() {
        let k = root(5);
        let (_, f_big) = build_ef(&k).unwrap();
        let e = AlgebraElement::e(&k);
        assert!((&(&f_big * &e) - &(&e * &f_big)).is_zero());
    }

    #[test]
    fn half_powers_l6() {
        let k = root(6);
        let rels = half_power_relations(&k).unwrap();
        for r in &rels {
            assert!(r.holds(), "{}", r.name);
        }
        assert!(rels.iter().any(|r| r.name == "e^3*f = -f*e^3"));
        assert!(matches!(
            half_power_relations(&root(4)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn srel_small_l() {
        for l in [3, 4, 6] {
            let k = root(l);
            assert!(verify_srel(&k).unwrap(), "l = {l}");
            assert!(srel_cartan_relation(&k).unwrap().holds(), "l = {l}");
        }
    }

    #[test]
    fn centre_even_cases() {
        for l in [3, 4, 8] {
            assert!(verify_centre_relation_even(&root(l)).unwrap(), "l = {l}");
        }
        assert!(matches!(
            centre_relation_even(&root(6)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn twice_odd_l6() {
        let rels = centre_relations_twice_odd(&root(6)).unwrap();
        assert_eq!(rels.len(), 3);
        for r in rels {
            assert!(r.holds(), "{}", r.name);
        }
        assert!(centre_relations_twice_odd(&root(5)).is_err());
    }

    #[test]
    fn catalogs() {
        let c4 = centre_catalog(&root(4)).unwrap();
        assert!(c4.all_central());
        assert!(c4.get("k^2*S").is_some());
        let c3 = centre_catalog(&root(3)).unwrap();
        assert_eq!(c3.elements.len(), 5);
        assert!(c3.all_central());
        assert!(!centre_catalog(&root(5)).unwrap().has_half_scasimir);
    }

    #[test]
    fn outcome_reports_sides_on_failure() {
        let k = root(3);
        let e = AlgebraElement::e(&k);
        let bad = Relation::new("bad", e.clone(), e.neg()).check();
        assert!(!bad.pass);
        assert_eq!(bad.lhs.as_deref(), Some("e"));
        assert_eq!(bad.rhs.as_deref(), Some("-e"));
        assert_eq!(bad.l, Some(3));
        let good = Relation::new("good", e.clone(), e).check();
        assert!(good.pass && good.lhs.is_none());
    }

    #[test]
    fn comemf_and_mirror_generic() {
        let k = ScalarField::generic();
        for m in 1..=4 {
            assert!(comemf_relation(&k, m).unwrap().holds(), "m = {m}");
            assert!(comemf_mirror_relation(&k, m).unwrap().holds(), "m = {m}");
        }
        let r = root(5);
        assert!(comemf_relation(&r, 7).unwrap().holds());
    }

    #[test]
    fn scasimir_suite() {
        for field in [ScalarField::generic(), root(4)] {
            let rels = scasimir_relations(&field).unwrap();
            assert_eq!(rels.len(), 4);
            assert!(rels.iter().all(Relation::holds));
        }
    }

    #[test]
    fn generic_selection() {
        let k = ScalarField::generic();
        let opts = VerifyOptions {
            selection: Selection::Centre,
            ..VerifyOptions::default()
        };
        assert!(matches!(collect_relations(&k, &opts), Err(Error::Usage(_))));
        let opts = VerifyOptions {
            assoc_count: 2,
            ..VerifyOptions::default()
        };
        let rels = collect_relations(&k, &opts).unwrap();
        assert_eq!(
            rels.len(),
            4 + 2 * COMEMF_MAX as usize + GENERIC_SCASM_MAX as usize + 2
        );
        assert!(rels.iter().all(Relation::holds));
    }

    #[test]
    fn fixture_round_trip() {
        let k = root(6);
        let rels = centre_relations_twice_odd(&k).unwrap();
        let v = relations_to_fixture(&k, &rels);
        let (field, back) = relations_from_fixture(&v).unwrap();
        assert_eq!(field, k);
        assert_eq!(back.len(), rels.len());
        for (a, b) in rels.iter().zip(&back) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.lhs, b.lhs);
            assert_eq!(a.rhs, b.rhs);
        }
    }

    #[test]
    fn collect_is_deterministic() {
        let k = root(3);
        let opts = VerifyOptions {
            selection: Selection::All,
            max_m: Some(3),
            seed: 7,
            assoc_count: 3,
        };
        let a: Vec<String> = collect_relations(&k, &opts)
            .unwrap()
            .iter()
            .map(|r| r.name.clone())
            .collect();
        let b: Vec<String> = collect_relations(&k, &opts)
            .unwrap()
            .iter()
            .map(|r| r.name.clone())
            .collect();
        assert_eq!(a, b);
        assert_eq!(a[0], "S*e = -e*S");
        assert!(collect_relations(&k, &opts)
            .unwrap()
            .iter()
            .all(Relation::holds));
    }
}
