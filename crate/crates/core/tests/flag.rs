use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use qhc::flag::{conjugation_operator, FlagAlgebra, GradedFunction, LocalizedFunction};
use qhc::modules::k_highest_vectors;
use qhc::rootdata::{CartanType, HermitianPair, Weight};
use qhc::scalars::{pole_free_on_unit_interval, QScalar};
use qhc::uqg::{counit, Letter, UqElement};

fn a2() -> Arc<FlagAlgebra> {
    static A: OnceLock<Arc<FlagAlgebra>> = OnceLock::new();
    A.get_or_init(|| Arc::new(FlagAlgebra::new(HermitianPair::of_type(CartanType::A, 2, 1).unwrap(), 8).unwrap())).clone()
}

fn a1() -> Arc<FlagAlgebra> {
    static A: OnceLock<Arc<FlagAlgebra>> = OnceLock::new();
    A.get_or_init(|| Arc::new(FlagAlgebra::new(HermitianPair::of_type(CartanType::A, 1, 1).unwrap(), 12).unwrap())).clone()
}

/// Element of one weight block of L(λ) with the given small integer coordinates.
fn homogeneous(alg: &FlagAlgebra, lam: &[i64], block: usize, coords: &[i64]) -> GradedFunction {
    let lam = Weight(lam.to_vec());
    let m = alg.module(&lam).unwrap();
    let b = block % m.blocks.len();
    let mut local: Vec<QScalar> = (0..m.blocks[b].dim).map(|k| QScalar::from_int(coords[k % coords.len()])).collect();
    if local.iter().all(|x| x.is_zero()) {
        local[0] = QScalar::one();
    }
    GradedFunction::homogeneous(lam, m.extend(&local, b))
}

const A2_WEIGHTS: [[i64; 2]; 5] = [[1, 0], [0, 1], [1, 1], [2, 0], [0, 2]];

fn a2_element() -> impl Strategy<Value = GradedFunction> {
    (0usize..A2_WEIGHTS.len(), 0usize..8, prop::collection::vec(-2i64..=2, 1..4)).prop_map(|(w, b, c)| homogeneous(&a2(), &A2_WEIGHTS[w], b, &c))
}

fn letter(n: usize) -> impl Strategy<Value = Letter> {
    (0usize..4, 0..n).prop_map(|(g, i)| [Letter::e(i), Letter::f(i), Letter::k(i), Letter::kinv(i)][g])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn multiplication_is_associative(f in a2_element(), g in a2_element(), h in a2_element()) {
        let alg = a2();
        let fg_h = alg.multiply(&alg.multiply(&f, &g).unwrap(), &h).unwrap();
        let f_gh = alg.multiply(&f, &alg.multiply(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(fg_h, f_gh);
    }

    #[test]
    fn products_of_nonzero_elements_are_nonzero(f in a2_element(), g in a2_element()) {
        prop_assert!(!a2().multiply(&f, &g).unwrap().is_zero());
    }

    #[test]
    fn leibniz_on_polynomial_functions(l in letter(2), f in a2_element(), g in a2_element()) {
        let alg = a2();
        let zero = vec![0; alg.rank()];
        let f = LocalizedFunction::new(f, zero.clone());
        let g = LocalizedFunction::new(g, zero);
        prop_assert!(alg.leibniz_check(&UqElement::letter(l), &f, &g).unwrap());
    }

    #[test]
    fn leibniz_with_denominators(l in letter(2), f in a2_element(), g in a2_element(), d in 0u32..=1) {
        let alg = a2();
        let f = LocalizedFunction::new(f, vec![0]);
        let g = LocalizedFunction::new(g, vec![d]);
        prop_assert!(alg.leibniz_check(&UqElement::letter(l), &f, &g).unwrap());
    }
}

#[test]
fn negative_powers_follow_from_the_counit() {
    // ξ(ψ^n ψ^{-n}) = ε(ξ) for ξ in a spanning set of short words.
    let alg = a2();
    for n in 1..=2u32 {
        let pos = alg.localize(alg.psi_monomial(&[n]).unwrap(), vec![0]);
        let neg = alg.localize(alg.unit(), vec![n]);
        for w in ["E1", "F1", "K1", "E2*F2", "F1*E1", "K1^-1*E2"] {
            let xi: UqElement = w.parse().unwrap();
            let lhs = alg.act_element(&xi, &alg.lf_mul(&pos, &neg).unwrap()).unwrap();
            let rhs = alg.lf_one().scale(&counit(&xi));
            assert!(alg.lf_equals(&lhs, &rhs).unwrap(), "{w} n={n}");
            if n == 1 {
                assert!(alg.leibniz_check(&xi, &pos, &neg).unwrap(), "{w}");
            }
        }
    }
}

#[test]
fn canonical_forms_cancel_common_factors() {
    let alg = a2();
    let f = homogeneous(&alg, &[2, 1], 3, &[1, -1, 2]);
    let fpsi = alg.multiply(&f, &alg.psi_function(0)).unwrap();
    let x = alg.canonicalize(&alg.localize(fpsi, vec![1])).unwrap();
    assert_eq!(x, alg.localize(f, vec![0]));
    assert_eq!(alg.canonicalize(&alg.localize(alg.unit(), vec![2])).unwrap().den, vec![2]);
}

#[test]
fn conjugation_operators_are_consistent_and_pole_free() {
    for alg in [a1(), a2()] {
        for k in 0..alg.rank() {
            let m = alg.module(alg.mu(k)).unwrap();
            for (tau, _, _) in k_highest_vectors(&alg.pair, &m) {
                let (Ok(op), Ok(next)) = (conjugation_operator(&alg, k, &tau, 1), conjugation_operator(&alg, k, &tau, 2)) else {
                    continue;
                };
                assert!(op.consistent_with(&alg, &next).unwrap(), "{tau:?}");
                assert!(op.matrix.entries().iter().all(|x| pole_free_on_unit_interval(x).pole_free));
            }
        }
    }
}

#[test]
fn spherical_vectors_commute() {
    for (kind, n, l0, bound) in [(CartanType::A, 3, 2, 4), (CartanType::C, 2, 2, 4)] {
        let alg = FlagAlgebra::new(HermitianPair::of_type(kind, n, l0).unwrap(), bound).unwrap();
        let (p1, p2) = (alg.psi_function(0), alg.psi_function(1));
        assert_eq!(alg.multiply(&p1, &p2).unwrap(), alg.multiply(&p2, &p1).unwrap());
    }
}
