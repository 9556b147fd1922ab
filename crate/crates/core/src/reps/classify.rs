//! Enumeration of the irreducible families for one `l`.

use serde_json::{json, Value};

use super::irreducible::{irreducibility_criterion_nilpotent, is_irreducible_burnside};
use super::{build_nilpotent, RepFamily, RepSpec};
use crate::error::Result;
use crate::rootdata::RootData;
use crate::scalars::{Scalar, ScalarField};

/// One nilpotent module `M_d(lambda)` with both irreducibility verdicts.
#[derive(Clone, Debug)]
pub struct NilpotentCell {
    pub d: u32,
    pub lambda: Scalar,
    /// `q'^d = 1`, so `lambda` is a sampled witness rather than forced.
    pub lambda_free: bool,
    pub criterion: bool,
    pub burnside: bool,
    pub relations: bool,
}

impl NilpotentCell {
    pub fn agrees(&self) -> bool {
        self.criterion == self.burnside
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "lambda": self.lambda.to_string(),
            "lambda_free": self.lambda_free,
            "criterion": self.criterion,
            "burnside": self.burnside,
            "relations": self.relations,
        })
    }
}

/// A periodic family with a checked sample member.
#[derive(Clone, Debug)]
pub struct PeriodicFamily {
    pub family: RepFamily,
    pub dimension: u32,
    pub condition: &'static str,
    pub moves: Vec<&'static str>,
    pub sample: RepSpec,
    pub sample_relations: bool,
    pub sample_irreducible: bool,
}

impl PeriodicFamily {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.name(),
            "dimension": self.dimension,
            "condition": self.condition,
            "moves": self.moves,
            "sample": self.sample.to_json(),
            "sample_relations": self.sample_relations,
            "sample_irreducible": self.sample_irreducible,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub root: RootData,
    pub nilpotent: Vec<NilpotentCell>,
    pub periodic: Vec<PeriodicFamily>,
}

impl Classification {
    /// Every sample satisfies the relations, every periodic sample is
    /// irreducible, and the two irreducibility tests agree on every cell.
    pub fn consistent(&self) -> bool {
        self.nilpotent.iter().all(|c| c.relations && c.agrees())
            && self
                .periodic
                .iter()
                .all(|p| p.sample_relations && p.sample_irreducible)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "root": self.root,
            "nilpotent": self.nilpotent.iter().map(NilpotentCell::to_json).collect::<Vec<_>>(),
            "periodic": self.periodic.iter().map(PeriodicFamily::to_json).collect::<Vec<_>>(),
            "consistent": self.consistent(),
        })
    }
}

/// The admissible `lambda` for dimension `d`: the two square roots of
/// `q'^{d-1}` when `q'^d != 1`, otherwise four witnesses of a free `lambda`,
/// two on each side of the `d = l'` clause.
pub fn nilpotent_lambdas(field: &ScalarField, d: u32) -> Result<(Vec<Scalar>, bool)> {
    let rd = field.require_root()?;
    let l = rd.l as i64;
    // q' = zeta^{2l+4}
    if !field.q_prime_pow(d as i64).is_one() {
        let root = field.root_power((l + 2) * (d as i64 - 1))?;
        return Ok((vec![root.clone(), -&root], false));
    }
    let lp = rd.l_prime as i64;
    Ok((
        vec![
            field.from_int(2),
            field.root_power(-(l + 2))?,
            field.one(),
            field.root_power((l + 2) * (lp - 2))?,
        ],
        true,
    ))
}

fn nilpotent_cell(
    field: &ScalarField,
    d: u32,
    lambda: Scalar,
    free: bool,
) -> Result<NilpotentCell> {
    let rep = build_nilpotent(field, d, &lambda)?;
    Ok(NilpotentCell {
        d,
        criterion: irreducibility_criterion_nilpotent(field, d, &lambda)?,
        burnside: is_irreducible_burnside(&rep),
        relations: rep.verify_relations(),
        lambda,
        lambda_free: free,
    })
}

fn periodic_family(
    field: &ScalarField,
    family: RepFamily,
    dimension: u32,
    condition: &'static str,
    moves: Vec<&'static str>,
    sigma: Scalar,
) -> Result<PeriodicFamily> {
    let rd = field.require_root()?;
    let sample = RepSpec {
        family,
        l: rd.l,
        lambda: field.one(),
        param: Some(field.one()),
        sigma,
        d: None,
    };
    let rep = sample.build(field)?;
    Ok(PeriodicFamily {
        family,
        dimension,
        condition,
        moves,
        sample_relations: rep.verify_relations(),
        sample_irreducible: is_irreducible_burnside(&rep),
        sample,
    })
}

/// All nilpotent cells `1 <= d <= l'` and the periodic families for `l`.
/// Cells are checked concurrently; the output order is fixed.
pub fn classify(l: u32) -> Result<Classification> {
    let field = ScalarField::root(l)?;
    let rd = *field.require_root()?;
    let mut jobs = Vec::new();
    for d in 1..=rd.l_prime {
        let (lambdas, free) = nilpotent_lambdas(&field, d)?;
        jobs.extend(lambdas.into_iter().map(|lam| (d, lam, free)));
    }
    let nilpotent = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .into_iter()
            .map(|(d, lam, free)| {
                let field = &field;
                scope.spawn(move || nilpotent_cell(field, d, lam, free))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("classification thread panicked"))
            .collect::<Result<Vec<_>>>()
    })?;

    let big = rd.big_l;
    let plus_moves = vec![
        "(lambda, phi, sigma) ~ (lambda, q^-1 phi, sigma)",
        "(lambda, phi, sigma) ~ (q lambda, phi, -sigma)",
        "(lambda, phi, sigma) ~ (lambda, -phi, sigma)",
    ];
    let minus_moves = vec![
        "(lambda, eps, sigma) ~ (lambda, q eps, sigma)",
        "(lambda, eps, sigma) ~ (q lambda, eps, -sigma)",
        "(lambda, eps, sigma) ~ (lambda, -eps, sigma)",
    ];
    let big_condition = if l % 2 == 1 {
        "lambda, phi nonzero; sigma nonzero"
    } else {
        "lambda, phi nonzero"
    };
    let mut periodic = vec![
        periodic_family(
            &field,
            RepFamily::MPlus,
            big,
            big_condition,
            plus_moves.clone(),
            field.one(),
        )?,
        periodic_family(
            &field,
            RepFamily::MMinus,
            big,
            if l % 2 == 1 {
                "lambda, eps nonzero; sigma nonzero"
            } else {
                "lambda, eps nonzero"
            },
            minus_moves.clone(),
            field.one(),
        )?,
    ];
    if l % 2 == 1 {
        periodic.push(periodic_family(
            &field,
            RepFamily::MPlusSmall,
            l,
            "lambda, phi nonzero; sigma = 0",
            plus_moves[..1].to_vec(),
            field.zero(),
        )?);
        periodic.push(periodic_family(
            &field,
            RepFamily::MMinusSmall,
            l,
            "lambda, eps nonzero; sigma = 0",
            minus_moves[..1].to_vec(),
            field.zero(),
        )?);
    }
    Ok(Classification {
        root: rd,
        nilpotent,
        periodic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l3_catalog() {
        let c = classify(3).unwrap();
        let ds: Vec<u32> = c.nilpotent.iter().map(|n| n.d).collect();
        assert_eq!(*ds.iter().max().unwrap(), 6);
        assert!(c
            .nilpotent
            .iter()
            .filter(|n| n.d == 6)
            .all(|n| n.lambda_free));
        assert!(c
            .nilpotent
            .iter()
            .filter(|n| n.d < 6)
            .all(|n| !n.lambda_free));
        assert!(c.consistent());
        assert_eq!(c.periodic.len(), 4);
    }

    #[test]
    fn l6_stops_at_three() {
        let c = classify(6).unwrap();
        assert_eq!(c.nilpotent.iter().map(|n| n.d).max(), Some(3));
        assert!(c.consistent());
    }

    #[test]
    fn free_witnesses_cover_both_verdicts() {
        let c = classify(4).unwrap();
        let free: Vec<&NilpotentCell> = c.nilpotent.iter().filter(|n| n.lambda_free).collect();
        assert!(free.iter().any(|n| n.criterion));
        assert!(free.iter().any(|n| !n.criterion));
    }
}
