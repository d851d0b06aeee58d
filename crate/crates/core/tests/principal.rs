use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qhc::flag::FlagAlgebra;
use qhc::linalg::Matrix;
use qhc::par::Exec;
use qhc::principal::{
    bernoulli_numbers, bernoulli_sum, binomial_sum, eval_rat_poly, geometric_sum, matrix_power, uniqueness_holds, ContinuedVector, ExpPolySequence,
    ExpTerm, PrincipalSeries,
};
use qhc::rootdata::{CartanType, HermitianPair};
use qhc::scalars::QScalar;
use qhc::uqg::Letter;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn a1() -> Arc<FlagAlgebra> {
    static A: OnceLock<Arc<FlagAlgebra>> = OnceLock::new();
    A.get_or_init(|| Arc::new(FlagAlgebra::new(HermitianPair::of_type(CartanType::A, 1, 1).unwrap(), 12).unwrap())).clone()
}

fn a1_series() -> &'static PrincipalSeries {
    static S: OnceLock<PrincipalSeries> = OnceLock::new();
    S.get_or_init(|| PrincipalSeries::degenerate(a1(), 0, 4).unwrap())
}

#[test]
fn bernoulli_numbers_known_values() {
    let b = bernoulli_numbers(8);
    let want = [rat(1, 1), rat(-1, 2), rat(1, 6), rat(0, 1), rat(-1, 30), rat(0, 1), rat(1, 42), rat(0, 1), rat(-1, 30)];
    assert_eq!(b, want);
}

#[test]
fn power_sums_match_brute_force() {
    for k in 1..=8usize {
        let p = bernoulli_sum(k);
        for n in 0..=15i64 {
            let brute: BigInt = (0..n).map(|j| BigInt::from(j).pow(k as u32 - 1)).sum();
            assert_eq!(eval_rat_poly(&p, n), BigRational::from_integer(brute), "k = {k}, n = {n}");
        }
    }
    // Σ_{j<n} j² = n(n−1)(2n−1)/6
    let p = bernoulli_sum(3);
    for n in 0..10i64 {
        assert_eq!(eval_rat_poly(&p, n), rat(n * (n - 1) * (2 * n - 1), 6));
    }
}

#[test]
fn binomial_sums_match_brute_force() {
    fn choose(n: i64, a: i64) -> i64 {
        if a > n {
            return 0;
        }
        (0..a).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for a in 0..=6usize {
        let p = binomial_sum(a);
        for n in 0..=14i64 {
            let brute: i64 = (0..n).map(|j| choose(j, a as i64)).sum();
            assert_eq!(eval_rat_poly(&p, n), rat(brute, 1), "a = {a}, n = {n}");
        }
    }
}

/// Upper triangular matrix with diagonal `q^{m_i}` and small integer entries above it.
fn triangular() -> impl Strategy<Value = Matrix> {
    (1usize..=4)
        .prop_flat_map(|d| (prop::collection::vec(-3i64..=3, d), prop::collection::vec(-2i64..=2, d * d)))
        .prop_map(|(diag, upper)| {
            let d = diag.len();
            let mut a = Matrix::zeros(d, d);
            for i in 0..d {
                a[(i, i)] = QScalar::q_pow(diag[i]);
                for j in i + 1..d {
                    a[(i, j)] = QScalar::from_int(upper[i * d + j]);
                }
            }
            a
        })
}

fn naive_power(a: &Matrix, n: i64) -> Matrix {
    let base = if n >= 0 { a.clone() } else { a.inverse().unwrap() };
    (0..n.abs()).fold(Matrix::identity(a.rows()), |acc, _| acc.mul(&base))
}

fn naive_geometric(a: &Matrix, n: i64) -> Matrix {
    let d = a.rows();
    if n >= 0 {
        (0..n).fold(Matrix::zeros(d, d), |acc, j| acc.add(&naive_power(a, j)))
    } else {
        (n..0).fold(Matrix::zeros(d, d), |acc, j| acc.sub(&naive_power(a, j)))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn geometric_sum_substitutes_correctly(a in triangular()) {
        let (spectrum, s) = geometric_sum(&a, 1, &[]).unwrap();
        for n in -4..=6 {
            prop_assert_eq!(s.specialize(&[n], 1), naive_geometric(&a, n), "u = {}", n);
        }
        prop_assert!(s.u_degree() as usize <= spectrum.max_multiplicity());
    }

    #[test]
    fn matrix_power_substitutes_correctly(a in triangular()) {
        let (spectrum, p) = matrix_power(&a, 1, &[]).unwrap();
        for n in -3..=5 {
            prop_assert_eq!(p.specialize(&[n], 1), naive_power(&a, n), "u = {}", n);
        }
        prop_assert!((p.u_degree() as usize) < spectrum.max_multiplicity().max(1));
    }

    #[test]
    fn nonzero_sequence_is_seen_within_determining_length(
        raw in prop::collection::vec((-4i64..=4, 0u32..=2, -3i64..=3), 1..6),
        root in 1u32..=2,
    ) {
        let terms: Vec<ExpTerm> = raw.iter().map(|&(m, j, c)| ExpTerm { coeff: vec![QScalar::from_int(c)], exponent: m, power: j }).collect();
        let s = ExpPolySequence::new(root, 1, terms);
        prop_assume!(!s.is_zero());
        let len = s.determining_length();
        prop_assert!((0..len as i64).any(|n| !s.value(n)[0].is_zero()));
    }

    #[test]
    fn shift_moves_the_index(
        raw in prop::collection::vec((-3i64..=3, 0u32..=2, -3i64..=3), 1..5),
        n in -3i64..=5,
    ) {
        let terms: Vec<ExpTerm> = raw.iter().map(|&(m, j, c)| ExpTerm { coeff: vec![QScalar::from_int(c)], exponent: m, power: j }).collect();
        let s = ExpPolySequence::new(1, 1, terms);
        prop_assert_eq!(s.shift().value(n), s.value(n + 1));
    }

    #[test]
    fn distinct_exponents_are_unique(mut ms in prop::collection::vec(-5i64..=5, 1..4), p in 0u32..=2, root in 1u32..=2) {
        ms.sort();
        ms.dedup();
        prop_assert!(uniqueness_holds(&ms, p, root));
    }
}

#[test]
fn repeated_exponents_break_uniqueness() {
    assert!(!uniqueness_holds(&[1, 1], 0, 1));
}

#[test]
fn a1_relations_hold_symbolically() {
    let rep = a1_series();
    let report = rep.verify_dj_relations(2, Exec::Parallel).unwrap();
    let failed: Vec<_> = report.relations.iter().filter(|r| !r.passed).map(|r| r.name.clone()).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
    assert!(report.sources > 0);
}

#[test]
fn a1_spectra_satisfy_the_contract() {
    let rep = a1_series();
    assert!(!rep.spectra.is_empty());
    assert!(rep.spectra.iter().all(|s| s.contract_ok));
}

#[test]
fn zero_parameter_is_the_untwisted_action() {
    let rep = a1_series();
    let alg = &rep.alg;
    let sources = rep.guarded_sources(2).unwrap();
    for s in &sources {
        for l in [Letter::e(0), Letter::f(0), Letter::k(0), Letter::kinv(0)] {
            let sym = rep.act(l, &ContinuedVector::from_fraction(1, s)).unwrap();
            let at_zero = rep.specialize_vector(&sym, &[0]).unwrap();
            let plain = alg.localized_action(l, s).unwrap();
            assert!(alg.lf_equals(&at_zero, &plain).unwrap());
        }
    }
}

#[test]
fn integer_points_match_direct_twisting() {
    let rep = a1_series();
    let sources = rep.guarded_sources(1).unwrap();
    let points: Vec<Vec<i64>> = (-2..=2).map(|u| vec![u]).collect();
    let report = rep.integer_specialization(&points, &sources, Exec::Sequential).unwrap();
    assert!(report.passed(), "{:?}", report.mismatches);
    assert_eq!(report.comparisons, sources.len() * 4 * points.len());
}

#[test]
fn cartan_blocks_do_not_depend_on_u() {
    let rep = a1_series();
    for n in 0..=2 {
        for l in [Letter::k(0), Letter::kinv(0)] {
            let block = rep.operator_block(l, n).unwrap();
            for r in 0..block.rows {
                for c in 0..block.cols {
                    assert!(block.get(r, c).is_u_free(), "K block at level {n}");
                }
            }
        }
    }
}

#[test]
fn u_degree_is_bounded_by_jordan_multiplicity() {
    let rep = a1_series();
    let mult = rep.spectra.iter().flat_map(|s| s.exponents.iter().map(|e| e.1)).max().unwrap();
    for n in 0..=2 {
        for l in [Letter::e(0), Letter::f(0)] {
            assert!(rep.operator_block(l, n).unwrap().u_degree() as usize <= mult);
        }
    }
}

#[test]
fn one_is_spherical() {
    let rep = a1_series();
    assert!(rep.spherical_vector_check().unwrap().iter().all(|(_, ok)| *ok));
}

#[test]
fn parameter_index_is_validated() {
    assert!(PrincipalSeries::degenerate(a1(), 1, 2).is_err());
}
