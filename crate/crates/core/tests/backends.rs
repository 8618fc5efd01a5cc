mod common;

use common::*;
use num_traits::ToPrimitive;
use sasakian_products::bismut::{rho_bismut_closed_form, ricci_bismut_closed_form};
use sasakian_products::classes::classify;
use sasakian_products::scalar::DEFAULT_EPSILON;
use sasakian_products::{catalog, BismutAnalysis, QuadSurd, Scalar};

const PAIRS: &[(&str, &str)] = &[("su2", "su2"), ("h3", "su2"), ("h5", "su2"), ("abelian1", "su2"), ("h3", "h3")];

fn f(x: &Q) -> f64 {
    ToPrimitive::to_f64(x).unwrap()
}

fn float_product(f1: &str, f2: &str, a: f64, b: f64) -> sasakian_products::FloatProduct {
    product_of(catalog::by_name(f1).unwrap(), catalog::by_name(f2).unwrap(), a, b)
}

#[test]
fn float_flags_agree_with_exact() {
    let mut params = random_params_list(60, 4);
    params.extend([(q(-1, 1), q(1, 1)), (zero(), q(1, 1)), (q(-1, 2), q(1, 2)), (q(3, 5), q(4, 5))]);
    for (f1, f2) in PAIRS {
        for (a, b) in &params {
            let exact = product(f1, f2, a.clone(), b.clone());
            let float = float_product(f1, f2, f(a), f(b));
            let ce = classify(&exact).unwrap();
            let cf = classify(&float).unwrap();
            let ctx = format!("{f1} x {f2} at ({a}, {b})");
            assert_eq!(ce.kahler, cf.kahler, "{ctx}");
            assert_eq!(ce.balanced, cf.balanced, "{ctx}");
            assert_eq!(ce.lck, cf.lck, "{ctx}");
            assert_eq!(ce.vaisman, cf.vaisman, "{ctx}");
            assert_eq!(ce.skt, cf.skt, "{ctx}");
            assert_eq!(ce.astheno_kahler, cf.astheno_kahler, "{ctx}");
            assert_eq!(ce.k_gauduchon, cf.k_gauduchon, "{ctx}");

            let be = BismutAnalysis::new(&exact).unwrap().flags;
            let bf = BismutAnalysis::new(&float).unwrap().flags;
            assert_eq!(be, bf, "{ctx}");
        }
    }
}

#[test]
fn float_tensors_agree_with_exact() {
    for (a, b) in random_params_list(61, 3) {
        let exact = product("h3", "su2", a.clone(), b.clone());
        let float = float_product("h3", "su2", f(&a), f(&b));
        let re = ricci_bismut_closed_form(&exact);
        let rf = BismutAnalysis::new(&float).unwrap().ricci;
        for (x, y) in re.data().iter().zip(rf.data()) {
            assert!((f(x) - y).abs() <= DEFAULT_EPSILON * (1.0 + f(x).abs()));
        }
        let rho_e = rho_bismut_closed_form(&exact);
        let rho_f = BismutAnalysis::new(&float).unwrap().rho;
        for (idx, c) in rho_e.terms() {
            assert!((f(c) - rho_f.coefficient(idx)).abs() < 1e-9);
        }
    }
}

#[test]
fn quadratic_backend_is_exact() {
    // b = √2 on su(2) x su(2)(s = 1/2) is CYT, checked without rounding
    let s2 = catalog::su2::<QuadSurd>().d_homothety(&QuadSurd::ratio(1, 2)).unwrap();
    let b = QuadSurd::sqrt_of(&q(2, 1)).unwrap();
    let p = product_of(catalog::su2::<QuadSurd>(), s2, QuadSurd::from_i64(0), b);
    let ba = BismutAnalysis::new(&p).unwrap();
    assert!(ba.rho.is_zero());
    assert!(ba.flags.cyt);
    // λ₂ = 6 = 2(2(a² + b²) − 1) as well
    assert!(ba.flags.ric_b_zero);
}
