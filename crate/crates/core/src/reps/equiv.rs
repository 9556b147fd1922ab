//! Equivalences between modules.

use super::matrix::ExactMatrix;
use super::{build_m_plus, build_qup, RepFamily, RepSpec, Representation};
use crate::error::{Error, Result};
use crate::pbw::Generator;
use crate::scalars::Scalar;

const CHECKED: [Generator; 3] = [Generator::E, Generator::F, Generator::K];

/// `t` is invertible and `t rho_a(g) = rho_b(g) t` for `g = e, f, k`.
pub fn is_intertwiner(t: &ExactMatrix, a: &Representation, b: &Representation) -> bool {
    t.is_invertible() && CHECKED.iter().all(|&g| t * a.matrix(g) == b.matrix(g) * t)
}

/// An invertible `T` with `T rho_a(g) = rho_b(g) T`, if one exists.
///
/// Solves the linear system exactly. When both `k` matrices are diagonal,
/// `T_ij` is forced to vanish unless the eigenvalues match, which keeps the
/// system small. Candidates are the nullspace basis vectors, then a fixed
/// sequence of integer combinations of them.
pub fn intertwiner(a: &Representation, b: &Representation) -> Option<ExactMatrix> {
    let n = a.dim();
    if b.dim() != n || a.field != b.field {
        return None;
    }
    let field = &a.field;
    let diagonal = a.k.is_diagonal() && b.k.is_diagonal();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !diagonal || b.k.get(i, i) == a.k.get(j, j))
        .collect();
    if free.is_empty() {
        return None;
    }
    let index = |i: usize, j: usize| free.iter().position(|&x| x == (i, j));
    // (T A)_ij - (B T)_ij = sum_p T_ip A_pj - sum_p B_ip T_pj
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in CHECKED {
        let (ma, mb) = (a.matrix(g), b.matrix(g));
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![field.zero(); free.len()];
                for p in 0..n {
                    if let Some(u) = index(i, p) {
                        row[u] = &row[u] + ma.get(p, j);
                    }
                    if let Some(u) = index(p, j) {
                        row[u] = &row[u] - mb.get(i, p);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..free.len())
            .map(|u| {
                let mut v = vec![field.zero(); free.len()];
                v[u] = field.one();
                v
            })
            .collect()
    } else {
        ExactMatrix::from_fn(field, rows.len(), free.len(), |i, j| rows[i][j].clone()).nullspace()
    };
    let to_matrix = |v: &[Scalar]| {
        let mut t = ExactMatrix::zeros(field, n, n);
        for (u, &(i, j)) in free.iter().enumerate() {
            t.set(i, j, v[u].clone());
        }
        t
    };
    let mut candidates: Vec<Vec<Scalar>> = basis.clone();
    for round in 1..=4i64 {
        let mut v = vec![field.zero(); free.len()];
        for (idx, b) in basis.iter().enumerate() {
            let c = field.from_int((idx as i64 + 1).pow(round as u32) + round);
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x + &(&c * y);
            }
        }
        candidates.push(v);
    }
    candidates
        .iter()
        .map(|v| to_matrix(v))
        .find(|t| is_intertwiner(t, a, b))
}

/// The conjugations relating `M_+` modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `M_+(lambda, phi, sigma) -> M_+(lambda, q^-1 phi, sigma)`.
    Q,
    /// `M_+(lambda, phi, sigma) -> M_+(q lambda, phi, -sigma)`.
    P,
    /// `M_+(lambda, phi, sigma) -> M_+(lambda, -phi, sigma)`.
    U,
}

/// The conjugating matrix `T` and the target module for a move applied to
/// `M_+(lambda, phi, sigma)`; `T rho_source = rho_target T`.
pub fn equivalence_move(rep: &Representation, mv: Move) -> Result<(ExactMatrix, Representation)> {
    let spec = plus_spec(rep)?;
    let field = &rep.field;
    let phi = spec.param.clone().expect("M_+ has phi");
    let qup = build_qup(field, rep.dim(), true)?;
    let (t, lambda, phi, sigma) = match mv {
        Move::Q => (
            qup.q,
            spec.lambda.clone(),
            field.q_inv() * &phi,
            spec.sigma.clone(),
        ),
        Move::P => (qup.p, field.q() * &spec.lambda, phi, -&spec.sigma),
        Move::U => (qup.u, spec.lambda.clone(), -&phi, spec.sigma.clone()),
    };
    Ok((t, build_m_plus(field, &lambda, &phi, &sigma)?))
}

fn plus_spec(rep: &Representation) -> Result<&RepSpec> {
    match &rep.spec {
        Some(s) if s.family == RepFamily::MPlus => Ok(s),
        _ => Err(Error::usage("expected a module of family mplus")),
    }
}

/// The change of basis `|m> -> eps^m e^-m |0>` taking `M_+(lambda, phi, sigma)`
/// to `M_-(lambda, eps, sigma)`. Requires `e` invertible on the source and
/// `eps^L` equal to the scalar by which `e^L` acts. Returns `T` with
/// `T rho_+ = rho_- T`.
pub fn basis_change_plus_to_minus(rep: &Representation, eps: &Scalar) -> Result<ExactMatrix> {
    plus_spec(rep)?;
    let field = &rep.field;
    let n = rep.dim();
    let e_inv = rep
        .e
        .inverse()
        .ok_or_else(|| Error::usage("e is not invertible on this module"))?;
    let e_pow = rep
        .e
        .pow(n as u32)
        .scalar_of()
        .ok_or_else(|| Error::usage("e^L does not act by a scalar"))?;
    if eps.pow(n as i64)? != e_pow {
        return Err(Error::usage(format!(
            "eps^L = {} differs from the value {e_pow} of e^L",
            eps.pow(n as i64)?
        )));
    }
    let mut col: Vec<Scalar> = (0..n)
        .map(|i| if i == 0 { field.one() } else { field.zero() })
        .collect();
    let mut columns = Vec::with_capacity(n);
    for _ in 0..n {
        columns.push(col.clone());
        col = e_inv.apply(&col).iter().map(|x| x * eps).collect();
    }
    ExactMatrix::from_columns(field, n, &columns)
        .inverse()
        .ok_or_else(|| Error::usage("basis change is singular"))
}

/// For odd `l` and `sigma = 0`, splits an `M_+` (or `M_-`) module into the
/// two eigenspaces of `f^l` (or `e^l`), each a subrepresentation.
pub fn split_sigma_zero(rep: &Representation) -> Result<(Representation, Representation)> {
    let spec = rep
        .spec
        .as_ref()
        .ok_or_else(|| Error::usage("module has no parameter set"))?;
    let plus = match spec.family {
        RepFamily::MPlus => true,
        RepFamily::MMinus => false,
        _ => return Err(Error::usage("expected a module of family mplus or mminus")),
    };
    if spec.l % 2 == 0 || !spec.sigma.is_zero() {
        return Err(Error::usage("splitting needs odd l and sigma = 0"));
    }
    let field = &rep.field;
    let l = spec.l;
    let param = spec.param.clone().expect("periodic module has a parameter");
    let m = if plus { rep.f.pow(l) } else { rep.e.pow(l) };
    let c = param.pow(l as i64)?;
    let n = rep.dim();
    let id = ExactMatrix::identity(field, n);
    let mut pieces = Vec::new();
    for sign in [1i64, -1] {
        let shifted = &m - &id.scale(&(&field.from_int(sign) * &c));
        let (basis, free) = nullspace_with_free(&shifted);
        let b = ExactMatrix::from_columns(field, n, &basis);
        let restrict = |g: &ExactMatrix| -> Result<ExactMatrix> {
            let gb = g * &b;
            let x = ExactMatrix::from_fn(field, free.len(), free.len(), |i, j| {
                gb.get(free[i], j).clone()
            });
            if &b * &x != gb {
                return Err(Error::Input("eigenspace is not invariant".into()));
            }
            Ok(x)
        };
        pieces.push(Representation {
            spec: None,
            field: field.clone(),
            e: restrict(&rep.e)?,
            f: restrict(&rep.f)?,
            k: restrict(&rep.k)?,
            kinv: restrict(&rep.kinv)?,
        });
    }
    let second = pieces.pop().expect("two pieces");
    let first = pieces.pop().expect("two pieces");
    Ok((first, second))
}

/// Nullspace basis and, for each basis vector, the free coordinate where it
/// has a 1 (all other free coordinates are 0).
fn nullspace_with_free(m: &ExactMatrix) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let basis = m.nullspace();
    let pivots = m.rref().1;
    let free = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    (basis, free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{build_m_minus, build_m_small, is_irreducible_burnside};
    use crate::scalars::ScalarField;

    #[test]
    fn identity_for_equal_modules() {
        let k = ScalarField::root(3).unwrap();
        let rep = build_m_plus(&k, &k.from_int(2), &k.one(), &k.one()).unwrap();
        let t = intertwiner(&rep, &rep).unwrap();
        assert!(is_intertwiner(&t, &rep, &rep));
    }

    #[test]
    fn moves_intertwine() {
        for l in [3, 4] {
            let k = ScalarField::root(l).unwrap();
            let rep = build_m_plus(&k, &k.from_int(2), &k.from_int(3), &k.one()).unwrap();
            for mv in [Move::Q, Move::P, Move::U] {
                let (t, target) = equivalence_move(&rep, mv).unwrap();
                assert!(is_intertwiner(&t, &rep, &target), "l = {l}, {mv:?}");
                assert!(intertwiner(&rep, &target).is_some());
            }
        }
    }

    #[test]
    fn plus_to_minus_l4() {
        let k = ScalarField::root(4).unwrap();
        let rep = build_m_plus(&k, &k.one(), &k.one(), &k.zero()).unwrap();
        // e^4 = 4 / eta^4, so eps = sqrt(2)/eta with sqrt(2) = z^2 + z^-2
        let sqrt2 = &k.root_power(2).unwrap() + &k.root_power(-2).unwrap();
        let eps = &sqrt2 * &k.eta().inv().unwrap();
        let t = basis_change_plus_to_minus(&rep, &eps).unwrap();
        let minus = build_m_minus(&k, &k.one(), &eps, &k.zero()).unwrap();
        assert!(is_intertwiner(&t, &rep, &minus));
        let wrong = &k.from_int(2) * &eps;
        assert!(basis_change_plus_to_minus(&rep, &wrong).is_err());
    }

    #[test]
    fn split_l3() {
        let k = ScalarField::root(3).unwrap();
        let rep = build_m_plus(&k, &k.one(), &k.one(), &k.zero()).unwrap();
        let (a, b) = split_sigma_zero(&rep).unwrap();
        for (piece, phi) in [(&a, k.one()), (&b, k.from_int(-1))] {
            assert_eq!(piece.dim(), 3);
            assert!(piece.verify_relations());
            assert!(is_irreducible_burnside(piece));
            let small = build_m_small(&k, &k.one(), &phi, true).unwrap();
            assert!(intertwiner(piece, &small).is_some());
        }
        let other = build_m_plus(&k, &k.one(), &k.one(), &k.one()).unwrap();
        assert!(split_sigma_zero(&other).is_err());
    }
}
