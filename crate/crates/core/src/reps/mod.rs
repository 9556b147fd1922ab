//! Finite-dimensional representations at a root of unity.
//!
//! Basis convention: `|m>` is column `m` (0-based). `P` maps `|m>` to
//! `|m+1>` (wrapping in periodic mode), `P'` maps `|m>` to `|m-1>`,
//! `Q|m> = q^-m |m>` and `U|m> = (-1)^m |m>`.

mod classify;
mod equiv;
mod irreducible;
mod matrix;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

pub use classify::{classify, Classification, NilpotentCell, PeriodicFamily};
pub use equiv::{
    basis_change_plus_to_minus, equivalence_move, intertwiner, is_intertwiner, split_sigma_zero,
    Move,
};
pub use irreducible::{
    irreducibility_criterion_nilpotent, is_irreducible_burnside, span_dimension,
};
pub use matrix::ExactMatrix;

use crate::error::{Error, Result};
use crate::exprparse::parse_scalar;
use crate::pbw::{casimir, scasimir, AlgebraElement, Generator};
use crate::scalars::{Scalar, ScalarField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepFamily {
    /// `f`-periodic, dimension `L`.
    MPlus,
    /// `e`-periodic, dimension `L`.
    MMinus,
    /// `f`-periodic with `sigma = 0`, dimension `l` (odd `l`).
    MPlusSmall,
    /// `e`-periodic with `sigma = 0`, dimension `l` (odd `l`).
    MMinusSmall,
    /// Highest and lowest weight, dimension `d`.
    Nilpotent,
}

impl RepFamily {
    pub fn name(self) -> &'static str {
        match self {
            RepFamily::MPlus => "mplus",
            RepFamily::MMinus => "mminus",
            RepFamily::MPlusSmall => "mplus-small",
            RepFamily::MMinusSmall => "mminus-small",
            RepFamily::Nilpotent => "nilpotent",
        }
    }

    /// `f` acts invertibly on the periodic member (the `phi` families).
    pub fn is_plus(self) -> bool {
        matches!(self, RepFamily::MPlus | RepFamily::MPlusSmall)
    }
}

impl FromStr for RepFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            RepFamily::MPlus,
            RepFamily::MMinus,
            RepFamily::MPlusSmall,
            RepFamily::MMinusSmall,
            RepFamily::Nilpotent,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| Error::usage(format!("unknown family {s:?}")))
    }
}

impl fmt::Display for RepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of a module. `param` is `phi` for the `f`-periodic families
/// and `eps` for the `e`-periodic ones; `sigma` is derived for nilpotent
/// modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSpec {
    pub family: RepFamily,
    pub l: u32,
    pub lambda: Scalar,
    pub param: Option<Scalar>,
    pub sigma: Scalar,
    pub d: Option<u32>,
}

impl RepSpec {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("family".into(), json!(self.family.name()));
        m.insert("l".into(), json!(self.l));
        m.insert("lambda".into(), json!(self.lambda.to_string()));
        if let Some(p) = &self.param {
            let key = if self.family.is_plus() { "phi" } else { "eps" };
            m.insert(key.into(), json!(p.to_string()));
        }
        m.insert("sigma".into(), json!(self.sigma.to_string()));
        if let Some(d) = self.d {
            m.insert("d".into(), json!(d));
        }
        Value::Object(m)
    }

    pub fn from_json(field: &ScalarField, v: &Value) -> Result<Self> {
        let text = |key: &str| v.get(key).and_then(Value::as_str);
        let scalar = |key: &str| -> Result<Option<Scalar>> {
            text(key).map(|t| parse_scalar(field, t)).transpose()
        };
        let family: RepFamily = text("family")
            .ok_or_else(|| Error::Input("spec lacks `family`".into()))?
            .parse()?;
        let l = v
            .get("l")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Input("spec lacks integer `l`".into()))? as u32;
        let lambda = scalar("lambda")?.ok_or_else(|| Error::Input("spec lacks `lambda`".into()))?;
        let param = if family.is_plus() {
            scalar("phi")?
        } else {
            scalar("eps")?
        };
        let sigma = scalar("sigma")?.unwrap_or_else(|| field.zero());
        let d = v.get("d").and_then(Value::as_u64).map(|d| d as u32);
        Ok(RepSpec {
            family,
            l,
            lambda,
            param,
            sigma,
            d,
        })
    }

    /// Builds the module this spec describes.
    pub fn build(&self, field: &ScalarField) -> Result<Representation> {
        let need = |p: &Option<Scalar>| {
            p.clone().ok_or_else(|| {
                Error::usage(format!(
                    "family {} needs {}",
                    self.family,
                    if self.family.is_plus() {
                        "--phi"
                    } else {
                        "--eps"
                    }
                ))
            })
        };
        match self.family {
            RepFamily::MPlus => build_m_plus(field, &self.lambda, &need(&self.param)?, &self.sigma),
            RepFamily::MMinus => {
                build_m_minus(field, &self.lambda, &need(&self.param)?, &self.sigma)
            }
            RepFamily::MPlusSmall => build_m_small(field, &self.lambda, &need(&self.param)?, true),
            RepFamily::MMinusSmall => {
                build_m_small(field, &self.lambda, &need(&self.param)?, false)
            }
            RepFamily::Nilpotent => {
                let d = self
                    .d
                    .ok_or_else(|| Error::usage("family nilpotent needs --d"))?;
                build_nilpotent(field, d, &self.lambda)
            }
        }
    }
}

/// The operators `Q`, `U`, `P`, `P'` on a space of dimension `dim`.
#[derive(Clone, Debug)]
pub struct Qup {
    pub q: ExactMatrix,
    pub u: ExactMatrix,
    pub p: ExactMatrix,
    pub p_prime: ExactMatrix,
}

pub fn build_qup(field: &ScalarField, dim: usize, periodic: bool) -> Result<Qup> {
    if dim == 0 {
        return Err(Error::usage("dimension must be at least 1"));
    }
    let qd: Vec<Scalar> = (0..dim).map(|m| field.q_pow(-(m as i64))).collect();
    let ud: Vec<Scalar> = (0..dim)
        .map(|m| field.from_int(if m % 2 == 0 { 1 } else { -1 }))
        .collect();
    let shift = |up: bool| {
        ExactMatrix::from_fn(field, dim, dim, |i, j| {
            // column j goes to row j+1 (up) or j-1 (down)
            let hit = match (up, periodic) {
                (true, true) => i == (j + 1) % dim,
                (false, true) => (i + 1) % dim == j,
                (true, false) => i == j + 1,
                (false, false) => i + 1 == j,
            };
            if hit {
                field.one()
            } else {
                field.zero()
            }
        })
    };
    Ok(Qup {
        q: ExactMatrix::diagonal(field, &qd),
        u: ExactMatrix::diagonal(field, &ud),
        p: shift(true),
        p_prime: shift(false),
    })
}

/// A module given by the matrices of `e`, `f`, `k`, `k^-1`.
#[derive(Clone, Debug)]
pub struct Representation {
    /// `None` for modules not built from a parameter set, such as
    /// restrictions to a subspace.
    pub spec: Option<RepSpec>,
    pub field: ScalarField,
    pub e: ExactMatrix,
    pub f: ExactMatrix,
    pub k: ExactMatrix,
    pub kinv: ExactMatrix,
}

fn nonzero(x: &Scalar, name: &str) -> Result<()> {
    if x.is_zero() {
        Err(Error::usage(format!("{name} must be nonzero")))
    } else {
        Ok(())
    }
}

/// Diagonal of `q^{1/2} lambda Q - q^{-1/2} lambda^-1 Q^-1 - sigma U`.
fn d_diagonal(
    field: &ScalarField,
    dim: usize,
    lambda: &Scalar,
    sigma: &Scalar,
) -> Result<Vec<Scalar>> {
    let li = lambda.inv()?;
    Ok((0..dim as i64)
        .map(|m| {
            let up = &(field.q_half() * lambda) * &field.q_pow(-m);
            let down = &(field.q_half_inv() * &li) * &field.q_pow(m);
            let par = if m % 2 == 0 { sigma.clone() } else { -sigma };
            &(&up - &down) - &par
        })
        .collect())
}

fn check_params(field: &ScalarField, xs: &[&Scalar]) -> Result<()> {
    field.require_root()?;
    for x in xs {
        field.check(x)?;
    }
    Ok(())
}

fn k_pair(field: &ScalarField, dim: usize, lambda: &Scalar) -> Result<(ExactMatrix, ExactMatrix)> {
    let li = lambda.inv()?;
    let kd: Vec<Scalar> = (0..dim as i64).map(|m| lambda * &field.q_pow(-m)).collect();
    let kid: Vec<Scalar> = (0..dim as i64).map(|m| &li * &field.q_pow(m)).collect();
    Ok((
        ExactMatrix::diagonal(field, &kd),
        ExactMatrix::diagonal(field, &kid),
    ))
}

fn periodic_module(
    field: &ScalarField,
    dim: usize,
    lambda: &Scalar,
    param: &Scalar,
    sigma: &Scalar,
    plus: bool,
    spec: RepSpec,
) -> Result<Representation> {
    let qup = build_qup(field, dim, true)?;
    let dm = ExactMatrix::diagonal(field, &d_diagonal(field, dim, lambda, sigma)?);
    let (k, kinv) = k_pair(field, dim, lambda)?;
    let c = (field.eta() * param).inv()?;
    let (e, f) = if plus {
        ((&qup.p_prime * &dm).scale(&c), qup.p.scale(param))
    } else {
        (qup.p_prime.scale(param), (&dm * &qup.p).scale(&c))
    };
    Ok(Representation {
        spec: Some(spec),
        field: field.clone(),
        e,
        f,
        k,
        kinv,
    })
}

/// `M_+(lambda, phi, sigma)`: `k = lambda Q`, `f = phi P`,
/// `e = (eta phi)^-1 P^-1 (q^{1/2} lambda Q - q^{-1/2} lambda^-1 Q^-1 - sigma U)`.
pub fn build_m_plus(
    field: &ScalarField,
    lambda: &Scalar,
    phi: &Scalar,
    sigma: &Scalar,
) -> Result<Representation> {
    check_params(field, &[lambda, phi, sigma])?;
    nonzero(lambda, "lambda")?;
    nonzero(phi, "phi")?;
    let rd = field.require_root()?;
    let spec = RepSpec {
        family: RepFamily::MPlus,
        l: rd.l,
        lambda: lambda.clone(),
        param: Some(phi.clone()),
        sigma: sigma.clone(),
        d: None,
    };
    periodic_module(field, rd.big_l as usize, lambda, phi, sigma, true, spec)
}

/// `M_-(lambda, eps, sigma)`: `k = lambda Q`, `e = eps P^-1`,
/// `f = (eta eps)^-1 (q^{1/2} lambda Q - q^{-1/2} lambda^-1 Q^-1 - sigma U) P`.
pub fn build_m_minus(
    field: &ScalarField,
    lambda: &Scalar,
    eps: &Scalar,
    sigma: &Scalar,
) -> Result<Representation> {
    check_params(field, &[lambda, eps, sigma])?;
    nonzero(lambda, "lambda")?;
    nonzero(eps, "eps")?;
    let rd = field.require_root()?;
    let spec = RepSpec {
        family: RepFamily::MMinus,
        l: rd.l,
        lambda: lambda.clone(),
        param: Some(eps.clone()),
        sigma: sigma.clone(),
        d: None,
    };
    periodic_module(field, rd.big_l as usize, lambda, eps, sigma, false, spec)
}

/// The `l`-dimensional modules `M_+(lambda, phi)` (`plus`) or
/// `M_-(lambda, eps)` for odd `l`, with `sigma = 0`.
pub fn build_m_small(
    field: &ScalarField,
    lambda: &Scalar,
    param: &Scalar,
    plus: bool,
) -> Result<Representation> {
    check_params(field, &[lambda, param])?;
    nonzero(lambda, "lambda")?;
    nonzero(param, if plus { "phi" } else { "eps" })?;
    let rd = field.require_root()?;
    if rd.l % 2 == 0 {
        return Err(Error::usage(format!(
            "small modules need odd l, got l = {}",
            rd.l
        )));
    }
    let spec = RepSpec {
        family: if plus {
            RepFamily::MPlusSmall
        } else {
            RepFamily::MMinusSmall
        },
        l: rd.l,
        lambda: lambda.clone(),
        param: Some(param.clone()),
        sigma: field.zero(),
        d: None,
    };
    periodic_module(
        field,
        rd.l as usize,
        lambda,
        param,
        &field.zero(),
        plus,
        spec,
    )
}

/// `(q'^d - 1)(lambda^2 - q'^{d-1})`.
pub fn quantisation_defect(field: &ScalarField, d: u32, lambda: &Scalar) -> Scalar {
    let a = &field.q_prime_pow(d as i64) - &field.one();
    let b = &(lambda * lambda) - &field.q_prime_pow(d as i64 - 1);
    &a * &b
}

pub(crate) fn check_quantisation(field: &ScalarField, d: u32, lambda: &Scalar) -> Result<()> {
    if d == 0 {
        return Err(Error::usage("d must be at least 1"));
    }
    check_params(field, &[lambda])?;
    nonzero(lambda, "lambda")?;
    if quantisation_defect(field, d, lambda).is_zero() {
        Ok(())
    } else {
        Err(Error::Quantisation(format!(
            "lambda = {lambda} violates (q'^{d} - 1)(lambda^2 - q'^{}) = 0",
            d - 1
        )))
    }
}

/// `sigma = q^{1/2} lambda - q^{-1/2} lambda^-1` for nilpotent modules.
pub fn nilpotent_sigma(field: &ScalarField, lambda: &Scalar) -> Result<Scalar> {
    Ok(&(field.q_half() * lambda) - &(field.q_half_inv() * &lambda.inv()?))
}

/// `M_d(lambda)`: `k = lambda Q`, `f = P`,
/// `e = eta^-1 P' (q^{1/2} lambda Q - q^{-1/2} lambda^-1 Q^-1 - sigma U)`.
pub fn build_nilpotent(field: &ScalarField, d: u32, lambda: &Scalar) -> Result<Representation> {
    check_quantisation(field, d, lambda)?;
    let rd = field.require_root()?;
    let dim = d as usize;
    let sigma = nilpotent_sigma(field, lambda)?;
    let qup = build_qup(field, dim, false)?;
    let dm = ExactMatrix::diagonal(field, &d_diagonal(field, dim, lambda, &sigma)?);
    let (k, kinv) = k_pair(field, dim, lambda)?;
    let e = (&qup.p_prime * &dm).scale(&field.eta().inv()?);
    Ok(Representation {
        spec: Some(RepSpec {
            family: RepFamily::Nilpotent,
            l: rd.l,
            lambda: lambda.clone(),
            param: None,
            sigma,
            d: Some(d),
        }),
        field: field.clone(),
        e,
        f: qup.p,
        k,
        kinv,
    })
}

/// Scalar values of central elements; `None` marks a non-scalar action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharacter {
    pub entries: Vec<(String, Option<Scalar>)>,
}

impl CentralCharacter {
    pub fn get(&self, name: &str) -> Option<&Option<Scalar>> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let m: Map<String, Value> = self
            .entries
            .iter()
            .map(|(n, v)| {
                let s = v
                    .as_ref()
                    .map_or_else(|| "not-scalar".to_string(), |x| x.to_string());
                (n.clone(), Value::String(s))
            })
            .collect();
        Value::Object(m)
    }
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    pub fn matrix(&self, g: Generator) -> &ExactMatrix {
        match g {
            Generator::E => &self.e,
            Generator::F => &self.f,
            Generator::K => &self.k,
            Generator::KInv => &self.kinv,
        }
    }

    /// The defining relations as named matrix identities.
    pub fn relation_checks(&self) -> Vec<(&'static str, bool)> {
        let n = self.dim();
        let field = &self.field;
        let id = ExactMatrix::identity(field, n);
        let ef = &(&self.e * &self.f) + &(&self.f * &self.e);
        let cartan = (&self.k - &self.kinv).scale(field.bracket_inv());
        vec![
            ("k*kinv = 1", &self.k * &self.kinv == id),
            ("kinv*k = 1", &self.kinv * &self.k == id),
            (
                "k*e*kinv = q*e",
                &(&self.k * &self.e) * &self.kinv == self.e.scale(field.q()),
            ),
            (
                "k*f*kinv = q^-1*f",
                &(&self.k * &self.f) * &self.kinv == self.f.scale(field.q_inv()),
            ),
            ("e*f + f*e = (k - kinv)/(q - q^-1)", ef == cartan),
        ]
    }

    pub fn verify_relations(&self) -> bool {
        self.relation_checks().iter().all(|(_, ok)| *ok)
    }

    /// The matrix of an algebra element: `sum coeff * f^a e^b k^c`.
    pub fn evaluate(&self, x: &AlgebraElement) -> Result<ExactMatrix> {
        self.field.check(&x.field().one())?;
        let n = self.dim();
        let mut cache: HashMap<(char, u32), ExactMatrix> = HashMap::new();
        let mut power = |name: char, base: &ExactMatrix, exp: u32| -> ExactMatrix {
            cache
                .entry((name, exp))
                .or_insert_with(|| base.pow(exp))
                .clone()
        };
        let mut acc = ExactMatrix::zeros(&self.field, n, n);
        for (m, c) in x.terms() {
            let kp = if m.c >= 0 {
                power('k', &self.k, m.c as u32)
            } else {
                power('K', &self.kinv, m.c.unsigned_abs())
            };
            let term = &(&power('f', &self.f, m.a) * &power('e', &self.e, m.b)) * &kp;
            acc = &acc + &term.scale(c);
        }
        Ok(acc)
    }

    /// Values of `k^l`, `k^L`, `C`, `E`, `F` and, for even `l`, `k^{l/2} S`.
    pub fn central_character(&self) -> Result<CentralCharacter> {
        let rd = *self.field.require_root()?;
        let f = &self.field;
        let l = rd.l as i32;
        let big = rd.big_l as i32;
        let mut list: Vec<(String, AlgebraElement)> = vec![
            (format!("k^{l}"), AlgebraElement::basis(f, 0, 0, l)),
            (format!("k^{big}"), AlgebraElement::basis(f, 0, 0, big)),
            ("C".into(), casimir(f)),
            ("E".into(), AlgebraElement::basis(f, 0, rd.big_l, 0)),
            ("F".into(), AlgebraElement::basis(f, rd.big_l, 0, 0)),
        ];
        if rd.l % 2 == 0 {
            list.push((
                format!("k^{}*S", l / 2),
                AlgebraElement::basis(f, 0, 0, l / 2).try_mul(&scasimir(f))?,
            ));
        }
        let entries = list
            .into_iter()
            .map(|(name, x)| Ok((name, self.evaluate(&x)?.scalar_of())))
            .collect::<Result<Vec<_>>>()?;
        Ok(CentralCharacter { entries })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "spec": self.spec.as_ref().map_or(Value::Null, RepSpec::to_json),
            "field": self.field.to_json(),
            "matrices": {
                "e": self.e.to_json(),
                "f": self.f.to_json(),
                "k": self.k.to_json(),
                "kinv": self.kinv.to_json(),
            }
        })
    }

    /// Reads a module back, taking the matrices as given (they are not
    /// rebuilt from the spec, so a file can be checked as-is).
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = ScalarField::from_json(
            v.get("field")
                .ok_or_else(|| Error::Input("representation lacks `field`".into()))?,
        )?;
        let spec = match v.get("spec") {
            None | Some(Value::Null) => None,
            Some(s) => Some(RepSpec::from_json(&field, s)?),
        };
        let mats = v
            .get("matrices")
            .ok_or_else(|| Error::Input("representation lacks `matrices`".into()))?;
        let read = |name: &str| -> Result<ExactMatrix> {
            let rows = mats
                .get(name)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Input(format!("matrix `{name}` missing")))?;
            let n = rows.len();
            let mut cells = Vec::with_capacity(n * n);
            for row in rows {
                let row = row
                    .as_array()
                    .filter(|r| r.len() == n)
                    .ok_or_else(|| Error::Input(format!("matrix `{name}` is not square")))?;
                for cell in row {
                    let text = cell.as_str().ok_or_else(|| {
                        Error::Input(format!("matrix `{name}` has a non-string entry"))
                    })?;
                    cells.push(parse_scalar(&field, text)?);
                }
            }
            Ok(ExactMatrix::from_fn(&field, n, n, |i, j| {
                cells[i * n + j].clone()
            }))
        };
        let (e, f, k, kinv) = (read("e")?, read("f")?, read("k")?, read("kinv")?);
        let n = k.dim();
        if n == 0 || [&e, &f, &kinv].iter().any(|m| m.dim() != n) {
            return Err(Error::Input(
                "matrices must share one positive dimension".into(),
            ));
        }
        Ok(Representation {
            spec,
            field,
            e,
            f,
            k,
            kinv,
        })
    }
}
