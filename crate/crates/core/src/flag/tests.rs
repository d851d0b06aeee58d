use super::*;
use crate::uqg::UqElement;
use crate::rootdata::CartanType;
use crate::uqg::Letter;

fn alg(kind: CartanType, n: usize, l0: usize, bound: i64) -> FlagAlgebra {
    FlagAlgebra::new(HermitianPair::of_type(kind, n, l0).unwrap(), bound).unwrap()
}

#[test]
fn spherical_generators() {
    let a1 = alg(CartanType::A, 1, 1, 8);
    assert_eq!(a1.spherical.fundamental_spherical, vec![Weight(vec![2])]);
    // ψ_1 is proportional to F_1 v.
    let m = a1.module(&Weight(vec![2])).unwrap();
    assert_eq!(a1.psi[0], m.unit(1));
    let a3 = alg(CartanType::A, 3, 2, 6);
    assert_eq!(a3.spherical.fundamental_spherical, vec![Weight(vec![1, 0, 1]), Weight(vec![0, 2, 0])]);
    let c2 = alg(CartanType::C, 2, 2, 6);
    assert_eq!(c2.rank(), 2);
    let a2 = alg(CartanType::A, 2, 1, 6);
    assert_eq!(a2.spherical.fundamental_spherical, vec![Weight(vec![1, 1])]);
}

#[test]
fn products_and_units() {
    let a1 = alg(CartanType::A, 1, 1, 8);
    let psi = a1.psi_function(0);
    assert_eq!(a1.multiply(&a1.unit(), &psi).unwrap(), psi);
    let sq = a1.multiply(&psi, &psi).unwrap();
    assert!(!sq.is_zero());
    assert_eq!(sq.components().next().unwrap().0, &Weight(vec![4]));
    let v1 = a1.module(&Weight(vec![1])).unwrap();
    let hw = GradedFunction::homogeneous(Weight(vec![1]), v1.unit(0));
    let p = a1.multiply(&hw, &hw).unwrap();
    let v2 = a1.module(&Weight(vec![2])).unwrap();
    assert_eq!(p, GradedFunction::homogeneous(Weight(vec![2]), v2.unit(0)));
}

#[test]
fn psi_commute() {
    for (kind, n, l0) in [(CartanType::A, 3, 2), (CartanType::C, 2, 2)] {
        let a = alg(kind, n, l0, 8);
        let p1 = a.psi_function(0);
        let p2 = a.psi_function(1);
        assert_eq!(a.multiply(&p1, &p2).unwrap(), a.multiply(&p2, &p1).unwrap());
    }
}

#[test]
fn localization_basics() {
    let a1 = alg(CartanType::A, 1, 1, 10);
    let psi = a1.psi_function(0);
    let x = a1.localize(psi.clone(), vec![1]);
    assert!(a1.lf_equals(&x, &a1.lf_one()).unwrap());
    assert_eq!(a1.canonicalize(&x).unwrap(), a1.lf_one());
    let m = a1.module(&Weight(vec![2])).unwrap();
    let f = GradedFunction::homogeneous(Weight(vec![2]), m.unit(0));
    let fpsi = a1.multiply(&f, &psi).unwrap();
    let y = a1.localize(fpsi, vec![1]);
    assert!(a1.lf_equals(&y, &a1.localize(f.clone(), vec![0])).unwrap());
    // ψ^{-1} ψ = 1 through the Ore swap.
    let prod = a1.lf_mul(&a1.psi_inverse(0), &a1.localize(psi, vec![0])).unwrap();
    assert!(a1.lf_equals(&prod, &a1.lf_one()).unwrap());
    // K acts trivially on 1/ψ, E and F with i ≠ l0 do not exist in A1; E_1(1) = 0.
    let inv = a1.psi_inverse(0);
    assert_eq!(a1.localized_action(Letter::k(0), &inv).unwrap(), inv);
    assert!(a1.localized_action(Letter::e(0), &a1.lf_one()).unwrap().is_zero());
    // E(ψ^{-1}ψ) = 0 via Leibniz.
    let e = UqElement::e(0);
    assert!(a1.leibniz_check(&e, &a1.psi_inverse(0), &a1.psi_inverse(0)).unwrap());
    assert!(a1.leibniz_check(&UqElement::f(0), &a1.lf_one(), &a1.psi_inverse(0)).unwrap());
    assert!(a1.leibniz_check(&UqElement::k(0), &a1.psi_inverse(0), &y).unwrap());
}

#[test]
fn conjugation_a1() {
    let a1 = alg(CartanType::A, 1, 1, 12);
    // Weight-zero type at level 1: a scalar power of q.
    for n in 1..4u32 {
        let op = conjugation_operator(&a1, 0, &Weight(vec![0]), n).unwrap();
        assert_eq!(op.matrix.rows(), 1);
        let next = conjugation_operator(&a1, 0, &Weight(vec![0]), n + 1).unwrap();
        assert!(op.consistent_with(&a1, &next).unwrap());
        println!("{:?}", op.matrix);
    }
    let op = conjugation_operator(&a1, 0, &Weight(vec![2]), 1).unwrap();
    println!("{:?}", op.matrix);
}

#[test]
fn ore_stabilizes() {
    let a1 = alg(CartanType::A, 1, 1, 14);
    assert_eq!(ore_stabilization_check(&a1, &Weight(vec![0]), &Weight(vec![2]), &Weight(vec![0]), 6).unwrap(), Some(1));
    let a2 = alg(CartanType::A, 2, 1, 10);
    let j = ore_stabilization_check(&a2, &Weight(vec![1, 1]), &Weight(vec![1, 1]), &Weight(vec![0, 0]), 6).unwrap();
    assert!(j.is_some());
}
