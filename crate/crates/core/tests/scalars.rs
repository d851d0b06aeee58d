use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qhc::scalars::{evaluate, from_text, pole_free_on_unit_interval, q_binom, q_int, to_text, Poly, QScalar};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn q(k: i64) -> QScalar {
    QScalar::q_pow(k)
}

/// Laurent polynomial in q from (exponent, coefficient) pairs.
fn laurent(terms: &[(i64, i64)]) -> QScalar {
    terms.iter().fold(QScalar::zero(), |acc, &(e, c)| acc + QScalar::from_int(c) * q(e))
}

#[test]
fn q_integers() {
    assert_eq!(q_int(1, 1), QScalar::one());
    assert_eq!(q_int(2, 1), laurent(&[(1, 1), (-1, 1)]));
    assert_eq!(q_int(3, 1), laurent(&[(2, 1), (0, 1), (-2, 1)]));
    assert_eq!(q_int(-3, 1), -q_int(3, 1));
    assert_eq!(q_int(2, 2), laurent(&[(2, 1), (-2, 1)]));
}

#[test]
fn q_binomials() {
    assert_eq!(q_binom(2, 1, 1).unwrap(), laurent(&[(1, 1), (-1, 1)]));
    assert_eq!(q_binom(5, 0, 1).unwrap(), QScalar::one());
    assert_eq!(q_binom(3, 1, 1).unwrap(), laurent(&[(2, 1), (0, 1), (-2, 1)]));
    assert!(q_binom(2, 3, 1).is_err());
    // q-Pascal: [m n] = q^n [m−1 n] + q^{n−m} [m−1 n−1]
    for d in 1..=2u32 {
        for m in 2..=6i64 {
            for n in 1..m {
                let lhs = q_binom(m, n, d).unwrap();
                let rhs = q(d as i64 * n) * q_binom(m - 1, n, d).unwrap() + q(d as i64 * (n - m)) * q_binom(m - 1, n - 1, d).unwrap();
                assert_eq!(lhs, rhs, "m={m} n={n} d={d}");
            }
        }
    }
}

#[test]
fn poles_on_the_unit_interval() {
    let one = QScalar::one();
    assert!(pole_free_on_unit_interval(&(&one / &(q(1) - QScalar::from_int(2)))).pole_free);
    let r = pole_free_on_unit_interval(&(&one / &(q(1) - one.clone())));
    assert!(!r.pole_free);
    let (lo, hi) = r.witness_q.unwrap();
    assert!(lo <= rat(1, 1) && rat(1, 1) <= hi);
    assert!(pole_free_on_unit_interval(&laurent(&[(-3, 2), (5, -7)])).pole_free);
    // Pole at q = 1/3.
    assert!(!pole_free_on_unit_interval(&(&one / &(QScalar::from_int(3) * q(1) - one.clone()))).pole_free);
}

#[test]
fn evaluation_examples() {
    let v = evaluate(&q_int(2, 1), &rat(1, 2)).unwrap();
    assert_eq!(v.exact, Some(rat(5, 2)));
    assert_eq!(evaluate(&QScalar::one(), &rat(1, 3)).unwrap().exact, Some(rat(1, 1)));
    let v = evaluate(&QScalar::q_frac_pow(1, 2), &rat(1, 4)).unwrap();
    assert_eq!(v.exact, Some(rat(1, 2)));
    assert!((v.value - 0.5).abs() < 1e-12);
    assert!(evaluate(&(QScalar::one() / (q(2) - QScalar::from_ratio(1, 4))), &rat(1, 2)).is_err());
    assert!(evaluate(&QScalar::one(), &rat(3, 2)).is_err());
}

/// Direct substitution s = s0 into `s^shift num/den`, independent of the field code.
fn horner(cs: &[i64], s0: &BigRational) -> BigRational {
    cs.iter().rev().fold(rat(0, 1), |acc, &c| acc * s0 + rat(c, 1))
}

fn scalar() -> impl Strategy<Value = (QScalar, i64, Vec<i64>, Vec<i64>, u32)> {
    (
        -3i64..=3,
        prop::collection::vec(-3i64..=3, 1..4),
        prop::collection::vec(-3i64..=3, 1..3).prop_filter("nonzero denominator", |d| d.iter().any(|&x| x != 0)),
        1u32..=2,
    )
        .prop_map(|(shift, num, den, root)| {
            let x = QScalar::from_parts(shift, Poly::from_i64s(&num), Poly::from_i64s(&den), root);
            (x, shift, num, den, root)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, ..) in scalar(), (b, ..) in scalar(), (c, ..) in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn exact_evaluation_matches_substitution((x, shift, num, den, root) in scalar(), k in 2i64..7) {
        // q0 = 1/k², so s0 = q0^{1/root} is rational for root 1 and 2.
        let q0 = rat(1, k * k);
        let s0 = if root == 2 { rat(1, k) } else { q0.clone() };
        let d = horner(&den, &s0);
        prop_assume!(d != rat(0, 1));
        let p = num_traits::pow(s0.clone(), shift.unsigned_abs() as usize);
        let p = if shift >= 0 { p } else { rat(1, 1) / p };
        let expect = p * horner(&num, &s0) / d;
        prop_assert_eq!(evaluate(&x, &q0).unwrap().exact, Some(expect));
    }

    #[test]
    fn evaluation_is_multiplicative((a, ..) in scalar(), (b, ..) in scalar()) {
        for q0 in [rat(1, 4), rat(1, 9), rat(4, 9)] {
            if let (Ok(x), Ok(y), Ok(z)) = (evaluate(&a, &q0), evaluate(&b, &q0), evaluate(&(&a * &b), &q0)) {
                prop_assert!((x.value * y.value - z.value).abs() <= 1e-9 * (1.0 + z.value.abs()));
            }
        }
    }

    #[test]
    fn text_round_trip((x, ..) in scalar()) {
        prop_assert_eq!(from_text(&to_text(&x)).unwrap(), x);
    }
}
