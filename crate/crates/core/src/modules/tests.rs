use std::sync::Arc;

use super::*;
use crate::linalg::{axpy, scale_vector};
use crate::rootdata::{CartanMatrix, CartanType, HermitianPair, RootDatum};
use crate::uqg::defining_relations;

fn datum(kind: CartanType, n: usize) -> RootDatum {
    RootDatum::new(CartanMatrix::of_type(kind, n).unwrap())
}

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

fn q(k: i64) -> QScalar {
    QScalar::q_pow(k)
}

#[test]
fn a1_fundamental_matrices() {
    let dat = datum(CartanType::A, 1);
    let m = simple_module(&dat, &w(&[1])).unwrap();
    assert_eq!(m.dim(), 2);
    let v = m.unit(0);
    let fv = m.apply_letter(Letter::f(0), &v);
    assert_eq!(fv, m.unit(1));
    assert_eq!(m.apply_letter(Letter::e(0), &fv), v);
    assert!(m.apply_letter(Letter::f(0), &fv).iter().all(|x| x.is_zero()));
    assert_eq!(m.apply_letter(Letter::k(0), &v), scale_vector(&q(1), &v));
    assert_eq!(m.apply_letter(Letter::k(0), &fv), scale_vector(&q(-1), &fv));
    // <Fv, Fv> = q^{-wt(Fv)} <v, EFv> = q
    assert_eq!(m.form(&fv, &fv), q(1));
}

#[test]
fn trivial_module() {
    let dat = datum(CartanType::A, 2);
    let m = simple_module(&dat, &w(&[0, 0])).unwrap();
    assert_eq!(m.dim(), 1);
    for i in 0..2 {
        assert!(m.e_map(i, 0).is_none() && m.f_map(i, 0).is_none());
    }
}

#[test]
fn weyl_dimensions_and_relations() {
    let cases: Vec<(CartanType, usize, Vec<i64>, usize)> = vec![
        (CartanType::A, 2, vec![1, 0], 3),
        (CartanType::A, 2, vec![1, 1], 8),
        (CartanType::A, 2, vec![2, 1], 15),
        (CartanType::C, 2, vec![1, 0], 4),
        (CartanType::C, 2, vec![0, 1], 5),
        (CartanType::C, 2, vec![1, 1], 16),
        (CartanType::B, 2, vec![1, 0], 5),
        (CartanType::A, 3, vec![1, 0, 1], 15),
        (CartanType::D, 4, vec![1, 0, 0, 0], 8),
    ];
    for (kind, n, hw, dim) in cases {
        let dat = datum(kind, n);
        let m = simple_module(&dat, &w(&hw)).unwrap();
        assert_eq!(m.dim(), dim, "{kind:?}{n} {hw:?}");
        let fails = m.relation_failures(&defining_relations(&dat));
        assert!(fails.is_empty(), "{kind:?}{n} {hw:?}: {fails:?}");
        for bi in 0..m.blocks.len() {
            let g = m.gram(bi);
            assert_eq!(g, &g.transpose());
            assert!(g.det() != QScalar::zero());
        }
    }
}

#[test]
fn gram_matches_shapovalov_recursion() {
    for (kind, n, hw) in [(CartanType::A, 2, vec![1, 1]), (CartanType::C, 2, vec![1, 1]), (CartanType::A, 1, vec![3])] {
        let dat = datum(kind, n);
        let lam = w(&hw);
        let m = simple_module(&dat, &lam).unwrap();
        for (bi, b) in m.blocks.iter().enumerate() {
            for r in 0..b.dim {
                for c in 0..b.dim {
                    let (Label::Word(x), Label::Word(y)) = (&m.labels[b.offset + r], &m.labels[b.offset + c]) else {
                        panic!()
                    };
                    assert_eq!(shapovalov_pair(&dat, &lam, x, y), m.gram(bi)[(r, c)]);
                }
            }
        }
    }
    let a2 = datum(CartanType::A, 2);
    assert_eq!(shapovalov_pair(&a2, &w(&[1, 0]), &[0], &[1]), QScalar::zero());
    assert_eq!(shapovalov_pair(&a2, &w(&[1, 0]), &[], &[]), QScalar::one());
}

#[test]
fn form_is_star_compatible() {
    let dat = datum(CartanType::C, 2);
    let m = simple_module(&dat, &w(&[1, 1])).unwrap();
    for i in 0..2 {
        // <E_i x, y> = <x, K_i F_i y>
        for x in 0..m.dim() {
            for y in 0..m.dim() {
                let ex = m.apply_letter(Letter::e(i), &m.unit(x));
                let kfy = m.apply_word(&[Letter::k(i), Letter::f(i)], &m.unit(y));
                assert_eq!(m.form(&ex, &m.unit(y)), m.form(&m.unit(x), &kfy));
            }
        }
    }
}

#[test]
fn invariants_and_isotypic() {
    let a1 = HermitianPair::of_type(CartanType::A, 1, 1).unwrap();
    let m = simple_module_for(&a1, &w(&[2])).unwrap();
    let inv = invariant_vector(&a1, &m);
    assert_eq!(inv.len(), 1);
    assert_eq!(inv[0], m.unit(1));
    assert_eq!(m.labels[1], Label::Word(vec![0]));
    let m1 = simple_module_for(&a1, &w(&[1])).unwrap();
    assert!(invariant_vector(&a1, &m1).is_empty());
    let comps = isotypic_decomposition(&a1, &m).unwrap();
    assert_eq!(comps.len(), 3);

    let a2 = HermitianPair::of_type(CartanType::A, 2, 1).unwrap();
    let m = simple_module_for(&a2, &w(&[1, 0])).unwrap();
    let comps = isotypic_decomposition(&a2, &m).unwrap();
    let mut dims: Vec<usize> = comps.iter().map(|c| c.dim()).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 2]);
    let triv = simple_module_for(&a2, &w(&[0, 0])).unwrap();
    assert_eq!(isotypic_decomposition(&a2, &triv).unwrap().len(), 1);
    assert_eq!(invariant_vector(&a2, &triv).len(), 1);
}

#[test]
fn tensor_and_cartan_maps_a1() {
    let dat = datum(CartanType::A, 1);
    let v1 = Arc::new(simple_module(&dat, &w(&[1])).unwrap());
    let t = tensor_product(&v1, &v1);
    assert_eq!(t.dim(), 4);
    let fails = t.relation_failures(&defining_relations(&dat));
    assert!(fails.is_empty(), "{fails:?}");
    let vv = t.labels.iter().position(|l| *l == Label::Pair(0, 0)).unwrap();
    assert_eq!(t.apply_letter(Letter::k(0), &t.unit(vv)), scale_vector(&q(2), &t.unit(vv)));

    let (emb, mm) = cartan_pair(&dat, &w(&[1]), &w(&[1])).unwrap();
    let l = emb.source.clone();
    // ι(F v) = q^{-1} Fv⊗v + v⊗Fv
    let img = emb.apply(&l.unit(1));
    let tt = &emb.tensor;
    let fv_v = tt.labels.iter().position(|x| *x == Label::Pair(1, 0)).unwrap();
    let v_fv = tt.labels.iter().position(|x| *x == Label::Pair(0, 1)).unwrap();
    let mut expect = scale_vector(&q(-1), &tt.unit(fv_v));
    axpy(&mut expect, &QScalar::one(), &tt.unit(v_fv));
    assert_eq!(img, expect);
    // m(v⊗v) = v and m∘ι = id
    assert_eq!(mm.apply(&v1.unit(0), &v1.unit(0)), l.unit(0));
    for k in 0..l.dim() {
        assert_eq!(mm.apply_tensor(tt, &emb.apply(&l.unit(k))), l.unit(k));
    }
    // Independent check: m intertwines F, so m(F(v⊗v)) = F v.
    // F(v⊗v) = q^{-1} Fv⊗v + v⊗Fv, and m(v⊗Fv) = x Fv, m(Fv⊗v) = y Fv with q^{-1}y + x = 1.
    // E(Fv⊗v) = v⊗v and E(v⊗Fv) = q v⊗v; so m∘E gives [2] y = 1 and [2] x = q.
    let x = mm.apply(&v1.unit(0), &v1.unit(1));
    let y = mm.apply(&v1.unit(1), &v1.unit(0));
    let two = crate::scalars::q_int(2, 1);
    assert_eq!(x, scale_vector(&(&q(1) / &two), &l.unit(1)));
    assert_eq!(y, scale_vector(&two.inv(), &l.unit(1)));
}

#[test]
fn cartan_maps_higher_rank() {
    let dat = datum(CartanType::A, 2);
    let (emb, mm) = cartan_pair(&dat, &w(&[1, 0]), &w(&[0, 1])).unwrap();
    assert_eq!(emb.source.dim(), 8);
    assert_eq!(mm.apply(&mm.left.unit(0), &mm.right.unit(0)), emb.source.unit(0));
    let dat = datum(CartanType::C, 2);
    let (emb, _) = cartan_pair(&dat, &w(&[0, 1]), &w(&[0, 0])).unwrap();
    assert_eq!(emb.source.dim(), emb.tensor.dim());
}

#[test]
fn star_involution() {
    let a1 = HermitianPair::of_type(CartanType::A, 1, 1).unwrap();
    let m = simple_module_for(&a1, &w(&[2])).unwrap();
    let j = star_on_spherical(&a1, &m).unwrap();
    assert_eq!(j.apply(&m, &j.spherical), j.spherical);
    let c2 = HermitianPair::of_type(CartanType::C, 2, 2).unwrap();
    for hw in [[2, 0], [0, 2], [2, 2]] {
        let m = simple_module_for(&c2, &w(&hw)).unwrap();
        let j = star_on_spherical(&c2, &m).unwrap();
        assert_eq!(j.apply(&m, &j.spherical), j.spherical);
    }
    let triv = simple_module_for(&c2, &w(&[0, 0])).unwrap();
    let j = star_on_spherical(&c2, &triv).unwrap();
    assert_eq!(j.apply(&triv, &triv.unit(0)), triv.unit(0));
}

#[test]
fn data_round_trip() {
    let dat = datum(CartanType::C, 2);
    let m = simple_module(&dat, &w(&[1, 1])).unwrap();
    let back = WeightModule::from_data(&m.to_data()).unwrap();
    assert_eq!(back.to_data(), m.to_data());
}
