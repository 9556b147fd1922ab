//! Integer data attached to a primitive `l`-th root of unity `q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::ScalarField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootData {
    pub l: u32,
    /// Multiplicative order of `q' = -q`.
    #[serde(rename = "lprime")]
    pub l_prime: u32,
    /// Smallest even multiple of `l`.
    #[serde(rename = "L")]
    pub big_l: u32,
    /// Order of the working cyclotomic field, `4l`.
    #[serde(rename = "N")]
    pub n: u32,
    /// `l` is twice an odd integer.
    pub twice_odd: bool,
}

impl RootData {
    /// Closed-form values, without the cross-check against the field.
    pub fn closed_form(l: u32) -> Result<Self> {
        if l < 3 {
            return Err(Error::usage(format!("l must be at least 3, got {l}")));
        }
        let big_l = if l.is_multiple_of(2) { l } else { 2 * l };
        let twice_odd = l.is_multiple_of(2) && (l / 2) % 2 == 1;
        let l_prime = if twice_odd { l / 2 } else { big_l };
        Ok(RootData {
            l,
            l_prime,
            big_l,
            n: 4 * l,
            twice_odd,
        })
    }
}

/// Root data for `l`, with `l'` cross-checked by computing the order of `-q`
/// directly in `Q(zeta_{4l})` and `q^L = 1` verified.
pub fn compute_root_data(l: u32) -> Result<RootData> {
    let rd = RootData::closed_form(l)?;
    let field = ScalarField::root(l)?;
    let order = multiplicative_order(&field, &field.q_prime(), rd.n)
        .ok_or_else(|| Error::Input(format!("-q has no finite order below {}", rd.n)))?;
    if order != rd.l_prime {
        return Err(Error::Input(format!(
            "order of -q is {order} but the closed form gives l' = {}",
            rd.l_prime
        )));
    }
    if !field.q().pow(rd.big_l as i64)?.is_one() {
        return Err(Error::Input(format!("q^{} != 1", rd.big_l)));
    }
    Ok(rd)
}

/// Smallest `m` in `1..=bound` with `x^m = 1`.
pub fn multiplicative_order(
    field: &ScalarField,
    x: &crate::scalars::Scalar,
    bound: u32,
) -> Option<u32> {
    let mut acc = field.one();
    for m in 1..=bound {
        acc = &acc * x;
        if acc.is_one() {
            return Some(m);
        }
    }
    None
}

/// `+1` if `m = 0, 1 mod 4`, otherwise `-1`.
pub fn epsilon(m: u64) -> i64 {
    if m % 4 <= 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r3 = compute_root_data(3).unwrap();
        assert_eq!((r3.l_prime, r3.big_l), (6, 6));
        let r6 = compute_root_data(6).unwrap();
        assert_eq!((r6.l_prime, r6.big_l), (3, 6));
        assert!(r6.twice_odd);
        let r4 = compute_root_data(4).unwrap();
        assert_eq!((r4.l_prime, r4.big_l), (4, 4));
        assert!(!r4.twice_odd);
    }

    #[test]
    fn l_below_three_rejected() {
        for l in 0..3 {
            assert!(matches!(compute_root_data(l), Err(Error::Usage(_))));
        }
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(0), 1);
        assert_eq!(epsilon(2), -1);
        assert_eq!(epsilon(5), 1);
        for m in 0..=16u64 {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            assert_eq!(sign * epsilon(m) * epsilon(m + 1), 1, "m = {m}");
        }
    }

    #[test]
    fn lprime_closed_form_is_brute_force_order() {
        let mut seen = std::collections::HashSet::new();
        for l in 3..=24 {
            let rd = compute_root_data(l).unwrap();
            assert!(seen.insert(rd.l_prime), "l -> l' not injective at l = {l}");
        }
    }
}
