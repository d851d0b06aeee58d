use proptest::prelude::*;
use qhc::modules::{simple_module, WeightModule};
use qhc::rootdata::{CartanMatrix, CartanType, HermitianPair, RootDatum, Weight};
use qhc::scalars::QScalar;
use qhc::uqg::{antipode, bar, coproduct, counit, is_in_k, parse_word, star, Letter, UqElement};

fn el(s: &str) -> UqElement {
    s.parse().unwrap()
}

fn module(kind: CartanType, n: usize, hw: &[i64]) -> WeightModule {
    simple_module(&RootDatum::new(CartanMatrix::of_type(kind, n).unwrap()), &Weight(hw.to_vec())).unwrap()
}

/// Equality of the actions of x and y on every basis vector.
fn same_operator(m: &WeightModule, x: &UqElement, y: &UqElement) -> bool {
    (0..m.dim()).all(|k| m.act(x, &m.unit(k)).unwrap() == m.act(y, &m.unit(k)).unwrap())
}

#[test]
fn word_syntax() {
    assert_eq!(parse_word("E1*F2*K1^-1").unwrap(), vec![Letter::e(0), Letter::f(1), Letter::kinv(0)]);
    assert_eq!(parse_word("1").unwrap(), vec![]);
    assert!(parse_word("E0").is_err());
    assert!(parse_word("E1^-1").is_err());
    assert!(parse_word("X2").is_err());
}

#[test]
fn coproduct_examples() {
    let d = coproduct(&el("K1"));
    let terms: Vec<_> = d.terms().collect();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].0, &(vec![Letter::k(0)], vec![Letter::k(0)]));
    let d = coproduct(&UqElement::one());
    assert_eq!(d.terms().map(|(w, c)| (w.clone(), c.clone())).collect::<Vec<_>>(), vec![((vec![], vec![]), QScalar::one())]);
    assert_eq!(coproduct(&el("E1*F1")).len(), 4);
}

#[test]
fn counit_examples() {
    assert_eq!(counit(&el("K1*K2^-1")), QScalar::one());
    assert_eq!(counit(&el("E1")), QScalar::zero());
    assert_eq!(counit(&UqElement::one().add(&el("E1*F1"))), QScalar::one());
}

#[test]
fn antipode_examples() {
    assert_eq!(antipode(&el("K1")), el("K1^-1"));
    assert_eq!(antipode(&UqElement::one()), UqElement::one());
    // S(E1F2) = S(F2)S(E1) = (−F2K2)(−K1^{-1}E1)
    assert_eq!(antipode(&el("E1*F2")), el("F2*K2*K1^-1*E1"));
}

#[test]
fn star_and_bar_examples() {
    assert_eq!(star(&el("E1")), el("K1*F1"));
    assert_eq!(star(&el("F1")), el("E1*K1^-1"));
    let m = module(CartanType::A, 2, &[1, 1]);
    assert!(same_operator(&m, &star(&star(&el("E1"))), &el("E1")));
    let qe = UqElement::term(QScalar::q_pow(1), vec![Letter::e(0)]);
    assert_eq!(bar(&qe), qe);
}

#[test]
fn membership_in_k() {
    let pair = HermitianPair::of_type(CartanType::A, 2, 2).unwrap();
    assert!(is_in_k(&[Letter::e(0)], &pair));
    assert!(!is_in_k(&[Letter::f(1)], &pair));
    assert!(is_in_k(&[Letter::k(1)], &pair));
}

fn letter(n: usize) -> impl Strategy<Value = Letter> {
    (0usize..4, 0..n).prop_map(|(g, i)| match g {
        0 => Letter::e(i),
        1 => Letter::f(i),
        2 => Letter::k(i),
        _ => Letter::kinv(i),
    })
}

fn element(n: usize) -> impl Strategy<Value = UqElement> {
    prop::collection::vec((prop::collection::vec(letter(n), 0..4), -2i64..=2, -2i64..=2), 1..3).prop_map(|ts| {
        ts.into_iter().fold(UqElement::zero(), |acc, (w, c, e)| acc.add(&UqElement::term(QScalar::from_int(c) * QScalar::q_pow(e), w)))
    })
}

fn fixtures() -> Vec<WeightModule> {
    vec![module(CartanType::A, 2, &[1, 1]), module(CartanType::C, 2, &[1, 0])]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn star_and_bar_are_involutions(x in element(2)) {
        for m in fixtures() {
            prop_assert!(same_operator(&m, &star(&star(&x)), &x));
        }
        prop_assert_eq!(bar(&bar(&x)), x);
    }

    #[test]
    fn antipode_reverses_products(x in element(2), y in element(2)) {
        prop_assert_eq!(antipode(&x.mul(&y)), antipode(&y).mul(&antipode(&x)));
        prop_assert_eq!(star(&x.mul(&y)), star(&y).mul(&star(&x)));
    }

    #[test]
    fn counit_axiom(x in element(2)) {
        let d = coproduct(&x);
        for m in fixtures() {
            prop_assert!(same_operator(&m, &d.counit_left(), &x));
            prop_assert!(same_operator(&m, &d.counit_right(), &x));
        }
    }

    #[test]
    fn antipode_axiom(x in element(2)) {
        // m ∘ (S ⊗ id) ∘ Δ = ε·1 and m ∘ (id ⊗ S) ∘ Δ = ε·1
        let mut left = UqElement::zero();
        let mut right = UqElement::zero();
        for ((a, b), c) in coproduct(&x).terms() {
            let a = UqElement::word(a.clone());
            let b = UqElement::word(b.clone());
            left = left.add(&antipode(&a).mul(&b).scale(c));
            right = right.add(&a.mul(&antipode(&b)).scale(c));
        }
        let eps = UqElement::scalar(counit(&x));
        for m in fixtures() {
            prop_assert!(same_operator(&m, &left, &eps));
            prop_assert!(same_operator(&m, &right, &eps));
        }
    }

    #[test]
    fn coproduct_is_multiplicative(x in element(2), y in element(2)) {
        prop_assert_eq!(coproduct(&x.mul(&y)), coproduct(&x).mul(&coproduct(&y)));
    }
}
