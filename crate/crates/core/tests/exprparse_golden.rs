use qosp_core::exprparse::{parse, parse_element};
use qosp_core::pbw::{random_element, RandomShape};
use qosp_core::{Error, ScalarField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CORPUS: &str = include_str!("data/golden_exprs.txt");

fn lines() -> impl Iterator<Item = &'static str> {
    CORPUS
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
}

#[test]
fn corpus_is_thirty_plus() {
    assert!(lines().count() >= 30);
}

#[test]
fn equalities_hold_in_both_modes() {
    for field in [ScalarField::generic(), ScalarField::root(5).unwrap()] {
        for line in lines().filter(|l| l.contains("==")) {
            let (lhs, rhs) = line.split_once("==").unwrap();
            let a = parse_element(&field, lhs).unwrap_or_else(|e| panic!("{lhs}: {e}"));
            let b = parse_element(&field, rhs).unwrap_or_else(|e| panic!("{rhs}: {e}"));
            assert_eq!(a, b, "{line} in {:?}", field);
        }
    }
}

#[test]
fn errors_at_expected_offsets() {
    for line in lines().filter(|l| l.contains("!!")) {
        let (text, at) = line.split_once("!!").unwrap();
        let text = text.strip_suffix(' ').unwrap_or(text);
        let at: usize = at.trim().parse().unwrap();
        match parse(text) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, at, "{line}"),
            other => panic!("{line}: {other:?}"),
        }
    }
}

#[test]
fn printed_elements_parse_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for field in [
        ScalarField::generic(),
        ScalarField::root(3).unwrap(),
        ScalarField::root(6).unwrap(),
    ] {
        for _ in 0..40 {
            let x = random_element(&field, &mut rng, RandomShape::default());
            let back = parse_element(&field, &x.to_text()).unwrap();
            assert_eq!(back, x, "{}", x.to_text());
        }
    }
}
