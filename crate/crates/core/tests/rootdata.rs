use std::collections::BTreeSet;

use proptest::prelude::*;
use qhc::modules::{invariant_vector, simple_module};
use qhc::rootdata::{
    check_hermitian, spherical_weight_semigroup, strongly_orthogonal_roots, CartanMatrix, CartanType, HermitianPair, RootDatum, RootError, Weight,
};

fn datum(kind: CartanType, n: usize) -> RootDatum {
    RootDatum::new(CartanMatrix::of_type(kind, n).unwrap())
}

/// Positive roots by closing the simple roots under the simple reflections.
fn brute_positive_roots(a: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let l = a.len();
    let mut all: BTreeSet<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
    loop {
        let mut grew = false;
        for b in all.clone() {
            for i in 0..l {
                let c: i64 = (0..l).map(|j| b[j] * a[i][j]).sum();
                let mut r = b.clone();
                r[i] -= c;
                if all.insert(r) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    all.into_iter().filter(|b| b.iter().all(|&x| x >= 0)).collect()
}

const TYPES: [(CartanType, usize); 9] = [
    (CartanType::A, 1),
    (CartanType::A, 2),
    (CartanType::A, 3),
    (CartanType::A, 4),
    (CartanType::B, 2),
    (CartanType::B, 3),
    (CartanType::C, 2),
    (CartanType::C, 3),
    (CartanType::D, 4),
];

#[test]
fn positive_roots_match_reflection_closure() {
    for (kind, n) in TYPES {
        let dat = datum(kind, n);
        let expect = brute_positive_roots(&dat.cartan.a);
        let got: BTreeSet<Vec<i64>> = dat.positive_roots.iter().cloned().collect();
        assert_eq!(got, expect, "{kind:?}{n}");
        assert_eq!(dat.positive_roots.len(), dat.w0_word.len(), "{kind:?}{n}");
        let height = |b: &Vec<i64>| b.iter().sum::<i64>();
        let top = expect.iter().max_by_key(|b| height(b)).unwrap();
        assert_eq!(&dat.delta, top, "{kind:?}{n}");
        assert!(dat.delta.iter().all(|&c| c >= 1));
    }
}

#[test]
fn datum_examples() {
    let a1 = datum(CartanType::A, 1);
    assert_eq!((a1.positive_roots.len(), a1.delta.clone(), a1.w0_word.clone()), (1, vec![1], vec![0]));
    let a2 = datum(CartanType::A, 2);
    assert_eq!((a2.positive_roots.len(), a2.delta.clone()), (3, vec![1, 1]));
    let c2 = datum(CartanType::C, 2);
    assert_eq!(c2.cartan.a, vec![vec![2, -2], vec![-1, 2]]);
    assert_eq!((c2.positive_roots.len(), c2.delta.clone()), (4, vec![2, 1]));
}

#[test]
fn invalid_matrices_are_rejected() {
    assert!(matches!(CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]), Err(RootError::NotFinite { .. })));
    assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).is_err());
    assert!(CartanMatrix::new(vec![vec![2, -1, 0]]).is_err());
}

#[test]
fn hermitian_checks() {
    let a1 = HermitianPair::of_type(CartanType::A, 1, 1).unwrap();
    assert_eq!(a1.h0, vec![2]);
    assert!(HermitianPair::of_type(CartanType::C, 2, 2).is_ok());
    assert_eq!(HermitianPair::of_type(CartanType::C, 2, 1).unwrap_err(), RootError::NotHermitian { c: 2 });
    assert_eq!(check_hermitian(datum(CartanType::A, 2), 3).unwrap_err(), RootError::NodeOutOfRange(3, 2));
    for (kind, n) in TYPES {
        let dat = datum(kind, n);
        for l0 in 1..=n {
            if check_hermitian(dat.clone(), l0).is_ok() {
                assert!(dat.positive_roots.iter().all(|b| b[l0 - 1] <= 1), "{kind:?}{n} l0={l0}");
            } else {
                assert_ne!(dat.delta[l0 - 1], 1);
            }
        }
    }
}

#[test]
fn cascades() {
    for (kind, n, l0, r) in [(CartanType::A, 1, 1, 1), (CartanType::A, 2, 1, 1), (CartanType::A, 3, 2, 2), (CartanType::C, 2, 2, 2), (CartanType::C, 3, 3, 3), (CartanType::A, 4, 2, 2)] {
        let pair = HermitianPair::of_type(kind, n, l0).unwrap();
        let s = strongly_orthogonal_roots(&pair).unwrap();
        assert_eq!(s.rank, r, "{kind:?}{n} l0={l0}");
        assert_eq!(s.gammas[0], pair.datum.delta);
        for (i, g) in s.gammas.iter().enumerate() {
            assert_eq!(g[pair.l0], 1);
            for h in &s.gammas[i + 1..] {
                assert_eq!(pair.datum.root_pairing(g, h), 0);
            }
        }
    }
}

#[test]
fn spherical_semigroups() {
    for (kind, n, l0, expect) in [
        (CartanType::A, 1, 1, vec![vec![2]]),
        (CartanType::A, 2, 1, vec![vec![1, 1]]),
        (CartanType::A, 3, 2, vec![vec![1, 0, 1], vec![0, 2, 0]]),
        (CartanType::C, 2, 2, vec![vec![2, 0], vec![0, 2]]),
    ] {
        let pair = HermitianPair::of_type(kind, n, l0).unwrap();
        let s = spherical_weight_semigroup(&pair, 4, |w| {
            let m = simple_module(&pair.datum, w).map_err(|e| e.to_string())?;
            Ok(invariant_vector(&pair, &m).len() == 1)
        })
        .unwrap();
        let got: Vec<Vec<i64>> = s.fundamental_spherical.iter().map(|w| w.0.clone()).collect();
        assert_eq!(got, expect);
        assert_eq!(s.rank, strongly_orthogonal_roots(&pair).unwrap().rank);
    }
    // Too small a search bound is reported, not a crash.
    let pair = HermitianPair::of_type(CartanType::A, 1, 1).unwrap();
    let err = spherical_weight_semigroup(&pair, 1, |w| {
        let m = simple_module(&pair.datum, w).map_err(|e| e.to_string())?;
        Ok(invariant_vector(&pair, &m).len() == 1)
    });
    assert!(matches!(err, Err(RootError::InsufficientBound { .. })));
}

/// Type A dimension by the hook-content style product over i < j.
fn type_a_dimension(lam: &[i64]) -> u64 {
    let n = lam.len() + 1;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..n {
        for j in i + 1..n {
            num *= (lam[i..j].iter().sum::<i64>() + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    (num / den) as u64
}

proptest! {
    #[test]
    fn weyl_dimension_type_a(lam in prop::collection::vec(0i64..5, 1..5)) {
        let dat = datum(CartanType::A, lam.len());
        prop_assert_eq!(dat.weyl_dimension(&Weight(lam.clone())), type_a_dimension(&lam));
    }

    #[test]
    fn reflections_are_involutions(idx in 0usize..TYPES.len(), w in prop::collection::vec(-4i64..5, 4), i in 0usize..4) {
        let (kind, n) = TYPES[idx];
        let dat = datum(kind, n);
        let w = Weight(w[..n].to_vec());
        let i = i % n;
        prop_assert_eq!(dat.reflect_weight(i, &dat.reflect_weight(i, &w)), w.clone());
        // Reflections preserve the form.
        let s = dat.reflect_weight(i, &w);
        prop_assert_eq!(dat.weight_pairing(&s, &s), dat.weight_pairing(&w, &w));
    }

    #[test]
    fn w0_negates_onto_positive_roots(idx in 0usize..TYPES.len()) {
        let (kind, n) = TYPES[idx];
        let dat = datum(kind, n);
        let pos: BTreeSet<Vec<i64>> = dat.positive_roots.iter().cloned().collect();
        for b in &dat.positive_roots {
            let w = dat.w0_root(b);
            let neg: Vec<i64> = w.iter().map(|x| -x).collect();
            prop_assert!(pos.contains(&neg));
        }
    }

    #[test]
    fn dominant_weight_enumeration(idx in 0usize..TYPES.len(), bound in 0i64..4) {
        let (kind, n) = TYPES[idx];
        let ws = datum(kind, n).dominant_weights(bound);
        let expect = (1..=n as i64).fold(1i64, |acc, k| acc * (bound + k) / k);
        prop_assert_eq!(ws.len() as i64, expect);
        prop_assert!(ws.iter().all(|w| w.is_dominant() && w.level() <= bound));
    }
}
