mod common;

use common::suites::*;
use common::*;
use proptest::prelude::*;
use sasakian_products::tensor::{commutator, identity, mat_mul, mat_vec, pair, transpose};
use sasakian_products::{ExteriorForm, HermitianParams, ProductHermitian};

const PAIRS: &[(&str, &str)] = &[
    ("su2", "su2"),
    ("h3", "su2"),
    ("su2", "h3"),
    ("sl2r", "su2"),
    ("sl2r", "h3"),
    ("h5", "su2"),
    ("abelian1", "su2"),
    ("su2", "abelian1"),
    ("abelian1", "abelian1"),
];

fn products(seed: u64, count: usize) -> Vec<ProductHermitian<Q>> {
    let params = random_params_list(seed, count);
    PAIRS
        .iter()
        .flat_map(|(f1, f2)| params.iter().map(move |(a, b)| product(f1, f2, a.clone(), b.clone())))
        .collect()
}

#[test]
fn zero_b_rejected() {
    assert!(HermitianParams::new(q(1, 1), zero()).is_err());
}

#[test]
fn non_sasakian_factor_rejected() {
    let su2 = structure("su2");
    let bad = sasakian_products::SasakiStructure::new(
        su2.metric_algebra().clone(),
        su2.phi().scale(&q(-1, 1)),
        su2.xi().clone(),
        su2.eta().clone(),
    )
    .unwrap();
    let params = HermitianParams::new(zero(), q(1, 1)).unwrap();
    assert!(ProductHermitian::new(bad, structure("h3"), params).is_err());
}

#[test]
fn structure_examples() {
    for p in products(11, 4) {
        let (a, b) = (p.a().clone(), p.b().clone());
        let jxi1 = p.j_of(p.xi1());
        let expected = add(&scale(&(-&a / &b), p.xi1()), &scale(&(q(1, 1) / &b), p.xi2()));
        assert_eq!(jxi1, expected);
        assert_eq!(p.omega().eval(&[p.xi1().clone(), p.xi2().clone()]).unwrap(), -b.clone());
        assert_eq!(pair(p.g(), p.xi2(), p.xi2()), &a * &a + &b * &b);
        assert_eq!(pair(p.g(), p.xi1(), p.xi2()), a.clone());

        let n = p.dim();
        assert_eq!(mat_mul(p.j(), p.j()), identity::<Q>(n).scale(&q(-1, 1)));
        for x in basis(n) {
            for y in basis(n) {
                assert_eq!(pair(p.g(), &p.j_of(&x), &p.j_of(&y)), pair(p.g(), &x, &y));
            }
        }
        assert!(p.nijenhuis_j().is_zero());
        let f1 = p.factor1();
        for i in f1.offset..f1.offset + f1.dim {
            for j in f1.offset..f1.offset + f1.dim {
                assert_eq!(p.g().get(&[i, j]), f1.g.get(&[i, j]));
            }
        }
        let model = f1
            .fundamental_form
            .add(&p.factor2().fundamental_form)
            .sub(&p.eta1_form().wedge(&p.eta2_form()).unwrap().scale(&b));
        assert_eq!(p.omega(), &model);
        // ω(X, Y) = g(X, JY)
        for x in basis(n) {
            for y in basis(n) {
                let lhs = p.omega().eval(&[x.clone(), y.clone()]).unwrap();
                assert_eq!(lhs, pair(p.g(), &x, &p.j_of(&y)));
            }
        }
    }
}

#[test]
fn standard_parameters_give_product_metric() {
    let p = product("h3", "sl2r", zero(), q(1, 1));
    let f1 = p.factor1();
    let f2 = p.factor2();
    assert_eq!(p.g(), &f1.g.add(&f2.g));
}

#[test]
fn levi_civita_closed_form_matches_koszul() {
    for p in products(12, 10) {
        let koszul = p.metric_algebra().koszul_connection();
        assert_eq!(p.levi_civita_closed_form(), koszul);
        assert_eq!(p.levi_civita(), &koszul);
        for u in [p.xi1(), p.xi2()] {
            for v in [p.xi1(), p.xi2()] {
                assert!(is_zero_vec(&p.nabla(u, v)));
            }
        }
    }
    let p = product("h3", "su2", q(-1, 1), q(1, 1));
    let e1 = basis(6)[0].clone();
    assert_eq!(p.nabla(&e1, p.xi2()), p.factor1().phi_of(&e1));
}

#[test]
fn nabla_j_blocks_and_closed_form() {
    for p in products(13, 5) {
        assert_eq!(p.nabla_j_closed_form(), *p.nabla_j());
        product_nabla_j_blocks(&p).unwrap();
    }
}

#[test]
fn nabla_j_examples() {
    for (a, b) in random_params_list(14, 4) {
        let p = product("h3", "su2", a.clone(), b.clone());
        let f1 = p.factor1();
        for e in f1.distribution_basis() {
            assert_eq!(mat_vec(&p.nabla_j_along(&e), &e), f1.xi);
            let lhs = mat_vec(&p.nabla_j_along(&e), p.xi2());
            let rhs = add(&scale(&-a.clone(), &e), &scale(&b, &f1.phi_of(&e)));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn codifferential_of_j() {
    for p in products(15, 3) {
        let n1 = q(2 * p.n1() as i64, 1);
        let n2 = q(2 * p.n2() as i64, 1);
        let expected = add(&scale(&n1, p.xi1()), &scale(&n2, p.xi2()));
        let delta = p.codifferential_j();
        assert_eq!(delta, expected);
        assert!(p.nabla_j_along(&delta).is_zero());
    }
    let p = product("abelian1", "abelian1", q(2, 3), q(-1, 2));
    assert!(is_zero_vec(&p.codifferential_j()));
    assert!(p.rough_laplacian_j().is_zero());
    assert!(p.p_tensor().is_zero());
}

#[test]
fn p_tensor_properties() {
    for p in products(16, 3) {
        let pt = p.p_tensor();
        assert!(commutator(p.j(), &pt).is_zero());
        // g(PX, Y) + g(X, PY) = 0, i.e. gP + Pᵀg = 0
        let gp = mat_mul(p.g(), &pt);
        assert!(gp.add(&transpose(&gp)).is_zero());
    }
}

#[test]
fn harmonicity_examples() {
    for (f1, f2, a, b) in [
        ("su2", "su2", zero(), q(1, 1)),
        ("su2", "su2", q(3, 5), q(4, 5)),
        ("sl2r", "su2", q(-3, 2), q(1, 2)),
        ("h5", "su2", q(-1, 2), q(1, 2)),
    ] {
        let p = product(f1, f2, a, b);
        let h = p.harmonicity_defect();
        assert!(h.harmonic, "{f1} x {f2}");
        assert!(h.defect.is_zero());
    }
}

#[test]
fn wood_identity() {
    let p = product("h3", "su2", q(-3, 2), q(1, 2));
    assert!(p.wood_residual().is_zero());
    for p in products(17, 2) {
        assert!(p.wood_residual().is_zero());
    }
}

#[test]
fn curvature_blocks() {
    for p in products(18, 5) {
        product_curvature_blocks(&p).unwrap();
    }
    let p = product("su2", "h3", q(2, 3), q(5, 4));
    product_curvature_blocks(&p).unwrap();
}

#[test]
fn ricci_closed_form_matches() {
    for p in products(19, 4) {
        assert_eq!(p.ricci_closed_form(), p.ricci());
    }
}

#[test]
fn levi_civita_torsion_free() {
    for p in products(20, 2) {
        assert!(p.levi_civita_torsion().is_zero());
    }
}

fn small_rational() -> impl Strategy<Value = Q> {
    (-8i64..=8, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn j_integrable_for_random_params(a in small_rational(), b in small_rational().prop_filter("b != 0", |b| *b != zero())) {
        let p = product("sl2r", "h3", a, b);
        prop_assert!(p.nijenhuis_j().is_zero());
        prop_assert_eq!(mat_mul(p.j(), p.j()), identity::<Q>(6).scale(&q(-1, 1)));
    }

    #[test]
    fn omega_is_nondegenerate(a in small_rational(), b in small_rational().prop_filter("b != 0", |b| *b != zero())) {
        let p = product("su2", "h3", a, b);
        let top = p.omega().power(3);
        prop_assert!(!top.is_zero());
        let zero_form = ExteriorForm::<Q>::zero(6, 0);
        prop_assert!(sasakian_products::classes::j_on_forms(&p, &zero_form).is_zero());
    }
}
