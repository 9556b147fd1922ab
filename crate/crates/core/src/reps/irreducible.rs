//! Irreducibility: the closed-form criterion for nilpotent modules and an
//! independent span-dimension test.

use std::collections::{BTreeMap, HashMap};

use super::matrix::ExactMatrix;
use super::{check_quantisation, Representation};
use crate::error::Result;
use crate::scalars::{Scalar, ScalarField};

/// `prod_{n=1}^{d-1} (q'^n - 1)(q^{1/2-d} lambda + q^{d-1/2} lambda^-1 q'^-n) != 0`.
pub fn irreducibility_criterion_nilpotent(
    field: &ScalarField,
    d: u32,
    lambda: &Scalar,
) -> Result<bool> {
    check_quantisation(field, d, lambda)?;
    let d = d as i64;
    let li = lambda.inv()?;
    let low = &field.q_half_pow(1 - 2 * d) * lambda;
    let high = &field.q_half_pow(2 * d - 1) * &li;
    for n in 1..d {
        let a = &field.q_prime_pow(n) - &field.one();
        let b = &low + &(&high * &field.q_prime_pow(-n));
        if a.is_zero() || b.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

type SparseVec = BTreeMap<usize, Scalar>;

/// Row echelon basis of sparse vectors; each row's smallest index is its
/// pivot and carries coefficient 1.
#[derive(Default)]
struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    /// Adds `v` to the span; returns whether the span grew.
    fn insert(&mut self, mut v: SparseVec) -> bool {
        let mut cursor = 0;
        loop {
            let next = v
                .range(cursor..)
                .map(|(i, _)| *i)
                .find(|i| self.pivot_row.contains_key(i));
            let Some(p) = next else { break };
            let c = v.get(&p).cloned().expect("present");
            for (j, x) in &self.rows[self.pivot_row[&p]] {
                let y = v.get(j).map_or_else(|| -&(&c * x), |old| old - &(&c * x));
                if y.is_zero() {
                    v.remove(j);
                } else {
                    v.insert(*j, y);
                }
            }
            cursor = p + 1;
        }
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        for x in v.values_mut() {
            *x = &*x * &inv;
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(v);
        true
    }

    fn len(&self) -> usize {
        self.rows.len()
    }
}

fn vectorize(m: &ExactMatrix) -> SparseVec {
    m.entries()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Dimension of the algebra of matrices generated by the representation:
/// the span of all words in `k`, `k^-1`, `e`, `f`, closed under left
/// multiplication by the generators, starting from the identity.
pub fn span_dimension(rep: &Representation) -> usize {
    let n = rep.dim();
    let target = n * n;
    let gens = [&rep.k, &rep.kinv, &rep.e, &rep.f];
    let mut echelon = Echelon::default();
    let id = ExactMatrix::identity(&rep.field, n);
    echelon.insert(vectorize(&id));
    let mut queue = vec![id];
    while let Some(b) = queue.pop() {
        for g in gens {
            if echelon.len() == target {
                return target;
            }
            let gb = g * &b;
            if echelon.insert(vectorize(&gb)) {
                queue.push(gb);
            }
        }
    }
    echelon.len()
}

/// Irreducible over every extension field iff the generated matrix algebra
/// is the full matrix algebra.
pub fn is_irreducible_burnside(rep: &Representation) -> bool {
    let n = rep.dim();
    span_dimension(rep) == n * n
}
