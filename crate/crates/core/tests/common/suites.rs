//! Identity families checked over all basis tuples. Each returns the first
//! failure as a message.

use super::*;
use sasakian_products::bismut::BismutAnalysis;
use sasakian_products::lie::{connection_apply, curvature_apply};
use sasakian_products::tensor::{mat_vec, pair};

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_eq(lhs: &[Q], rhs: &[Q], what: impl FnOnce() -> String) -> Check {
    ensure(lhs == rhs, || format!("{}: {:?} != {:?}", what(), lhs, rhs))
}

fn phi_form(s: &SasakiStructure<Q>, x: &[Q], y: &[Q]) -> Q {
    s.fundamental_form().eval(&[x.to_vec(), y.to_vec()]).unwrap()
}

fn inner(s: &SasakiStructure<Q>, x: &[Q], y: &[Q]) -> Q {
    s.metric_algebra().inner(x, y)
}

/// ξ unit Killing, `∇_Xξ = −φX`, `∇_ξX = [ξ,X] − φX`,
/// `(∇_Xφ)Y = g(X,Y)ξ − η(Y)X`.
pub fn sasaki_connection_identities(s: &SasakiStructure<Q>) -> Check {
    let n = s.dim();
    let gamma = s.levi_civita();
    let nabla = |x: &[Q], y: &[Q]| connection_apply(&gamma, x, y);
    let xi = s.xi();
    let e = basis(n);
    ensure(inner(s, xi, xi) == q(1, 1), || "xi is not unit".into())?;
    for x in &e {
        for y in &e {
            let killing = inner(s, &nabla(x, xi), y) + inner(s, x, &nabla(y, xi));
            ensure(killing == zero(), || format!("{}: xi not Killing", s.name()))?;
            let lhs = sub(&nabla(x, &s.phi_of(y)), &s.phi_of(&nabla(x, y)));
            let rhs = sub(&scale(&inner(s, x, y), xi), &scale(&s.eta_of(y), x));
            ensure_eq(&lhs, &rhs, || format!("{}: (nabla phi)", s.name()))?;
        }
        ensure_eq(&nabla(x, xi), &scale(&q(-1, 1), &s.phi_of(x)), || format!("{}: nabla xi", s.name()))?;
        let rhs = sub(&s.algebra().bracket(xi, x), &s.phi_of(x));
        ensure_eq(&nabla(xi, x), &rhs, || format!("{}: nabla_xi", s.name()))?;
    }
    Ok(())
}

/// `[ξ, X] ∈ 𝒟`.
pub fn reeb_bracket_in_distribution(s: &SasakiStructure<Q>) -> Check {
    for x in basis(s.dim()) {
        let v = s.algebra().bracket(s.xi(), &x);
        ensure(s.eta_of(&v) == zero(), || format!("{}: eta([xi, X]) != 0", s.name()))?;
    }
    Ok(())
}

fn transverse(s: &SasakiStructure<Q>, x: &[Q], u: &[Q]) -> Vector<Q> {
    s.transverse_connection(x, u).unwrap()
}

fn transverse_curvature(s: &SasakiStructure<Q>, u: &[Q], v: &[Q], w: &[Q]) -> Vector<Q> {
    let a = transverse(s, u, &transverse(s, v, w));
    let b = transverse(s, v, &transverse(s, u, w));
    let c = transverse(s, &s.algebra().bracket(u, v), w);
    sub(&sub(&a, &b), &c)
}

/// Defining properties of `∇^T` and the four identities relating it to
/// `∇` and `R` on 𝒟-triples.
pub fn transverse_identities(s: &SasakiStructure<Q>) -> Check {
    let d = s.distribution_basis();
    let all = basis(s.dim());
    let xi = s.xi().clone();
    let gamma = s.levi_civita();
    let nabla = |x: &[Q], y: &[Q]| connection_apply(&gamma, x, y);
    let name = s.name().to_string();
    let r = s.metric_algebra().levi_civita_curvature();
    for x in &all {
        for u in &d {
            let lhs = transverse(s, x, &s.phi_of(u));
            ensure_eq(&lhs, &s.phi_of(&transverse(s, x, u)), || format!("{name}: nabla^T phi"))?;
            for v in &d {
                let m = inner(s, &transverse(s, x, u), v) + inner(s, u, &transverse(s, x, v));
                ensure(m == zero(), || format!("{name}: nabla^T g"))?;
            }
        }
    }
    for u in &d {
        for v in &d {
            let br = s.algebra().bracket(u, v);
            let br_d = s.project(&br);
            let tor = sub(&transverse(s, u, v), &transverse(s, v, u));
            ensure_eq(&tor, &br_d, || format!("{name}: transverse torsion"))?;
            let puv = phi_form(s, u, v);
            ensure_eq(&nabla(u, v), &add(&scale(&-puv.clone(), &xi), &transverse(s, u, v)), || {
                format!("{name}: nabla_U V split")
            })?;
            ensure_eq(&br, &add(&scale(&(q(-2, 1) * &puv), &xi), &br_d), || format!("{name}: bracket split"))?;
            ensure(is_zero_vec(&curvature_apply(&r, u, v, &xi)), || format!("{name}: R(U,V)xi"))?;
            for w in &d {
                let i_lhs = transverse(s, &br_d, w);
                let i_rhs = add(&transverse(s, &br, w), &scale(&(q(2, 1) * &puv), &s.algebra().bracket(&xi, w)));
                ensure_eq(&i_lhs, &i_rhs, || format!("{name}: transverse (i)"))?;

                let ii_rhs = combo(&[
                    (q(2, 1) * &puv, &s.phi_of(w)),
                    (-phi_form(s, &br_d, w), &xi),
                    (q(1, 1), &transverse(s, &br, w)),
                ]);
                ensure_eq(&nabla(&br, w), &ii_rhs, || format!("{name}: transverse (ii)"))?;

                let ruvw = curvature_apply(&r, u, v, w);
                let iii_rhs = combo(&[
                    (q(1, 1), &transverse_curvature(s, u, v, w)),
                    (phi_form(s, v, w), &s.phi_of(u)),
                    (-phi_form(s, u, w), &s.phi_of(v)),
                    (q(-2, 1) * &puv, &s.phi_of(w)),
                ]);
                ensure_eq(&ruvw, &iii_rhs, || format!("{name}: transverse (iii)"))?;
            }
        }
    }
    Ok(())
}

/// `R(U, φU)` preserves 𝒟 and commutes with `φ` there.
pub fn curvature_commutes_with_phi(s: &SasakiStructure<Q>) -> Check {
    let r = s.metric_algebra().levi_civita_curvature();
    let d = s.distribution_basis();
    for u in &d {
        let pu = s.phi_of(u);
        for w in &d {
            let rw = curvature_apply(&r, u, &pu, w);
            ensure(s.eta_of(&rw) == zero(), || format!("{}: R(U,phiU) leaves D", s.name()))?;
            let lhs = curvature_apply(&r, u, &pu, &s.phi_of(w));
            ensure_eq(&lhs, &s.phi_of(&rw), || format!("{}: R(U,phiU) phi", s.name()))?;
        }
    }
    Ok(())
}

/// The four block formulas for `(∇_X J)Y`, checked on basis vectors of
/// each factor, together with `∇_{ξ_i}J = 0`.
pub fn product_nabla_j_blocks(p: &ProductHermitian<Q>) -> Check {
    let (f1, f2) = (p.factor1(), p.factor2());
    let (a, b) = (p.a().clone(), p.b().clone());
    let norm2 = p.params().norm2();
    let lam = p.params().lambda().clone();
    let n = p.dim();
    let e = basis(n);
    let nj = |x: &[Q], y: &[Q]| mat_vec(&p.nabla_j_along(x), y);
    let fund = |f: &sasakian_products::product::EmbeddedFactor<Q>, x: &[Q], y: &[Q]| pair(&f.fundamental, x, y);
    for x in &e {
        for y in &e {
            let expected = match (f1.contains(index_of(x)), f1.contains(index_of(y))) {
                (true, true) => combo(&[
                    (pair(&f1.g, x, y), &f1.xi),
                    (-f1.eta_of(y), x),
                    (-(&a / &b) * fund(f1, x, y), &f1.xi),
                    (fund(f1, x, y) / &b, &f2.xi),
                ]),
                (false, false) => combo(&[
                    (pair(&f2.g, x, y) + &lam * f2.eta_of(x) * f2.eta_of(y), &f2.xi),
                    (-(&norm2 * f2.eta_of(y)), x),
                    (-(&norm2 / &b) * fund(f2, x, y), &f1.xi),
                    ((&a / &b) * fund(f2, x, y), &f2.xi),
                ]),
                (true, false) => combo(&[
                    (&a * f2.eta_of(y) * f1.eta_of(x), &f1.xi),
                    (-(&a * f2.eta_of(y)), x),
                    (&b * f2.eta_of(y), &f1.phi_of(x)),
                ]),
                (false, true) => combo(&[
                    (&a * f1.eta_of(y) * f2.eta_of(x), &f2.xi),
                    (-(&a * f1.eta_of(y)), x),
                    (-(&b * f1.eta_of(y)), &f2.phi_of(x)),
                ]),
            };
            ensure_eq(&nj(x, y), &expected, || format!("nabla J block at {x:?}, {y:?}"))?;
        }
    }
    for xi in [p.xi1(), p.xi2()] {
        ensure(p.nabla_j_along(xi).is_zero(), || "nabla_xi J != 0".into())?;
    }
    Ok(())
}

fn index_of(x: &[Q]) -> usize {
    x.iter().position(|c| *c != zero()).unwrap()
}

/// Curvature blocks of the product in terms of the factor curvatures.
pub fn product_curvature_blocks(p: &ProductHermitian<Q>) -> Check {
    let r = p.curvature();
    let (f1, f2) = (p.factor1(), p.factor2());
    let a = p.a().clone();
    let lam = p.params().lambda().clone();
    let n = p.dim();
    let rf = |s: &SasakiStructure<Q>, off: usize, u: &[Q], v: &[Q], z: &[Q]| -> Vector<Q> {
        let d = s.dim();
        let loc = |x: &[Q]| x[off..off + d].to_vec();
        let out = curvature_apply(&s.metric_algebra().levi_civita_curvature(), &loc(u), &loc(v), &loc(z));
        let mut full = vec![zero(); n];
        full[off..off + d].clone_from_slice(&out);
        full
    };
    let fund = |f: &sasakian_products::product::EmbeddedFactor<Q>, x: &[Q], y: &[Q]| pair(&f.fundamental, x, y);
    for z in [p.xi1(), p.xi2()].into_iter().cloned().chain(basis(n)) {
        ensure(is_zero_vec(&curvature_apply(r, p.xi1(), p.xi2(), &z)), || "R(xi1, xi2) != 0".into())?;
    }
    let d1 = f1.distribution_basis();
    let d2 = f2.distribution_basis();
    let z1: Vec<Vector<Q>> = (f1.offset..f1.offset + f1.dim).map(|i| basis(n)[i].clone()).collect();
    let z2: Vec<Vector<Q>> = (f2.offset..f2.offset + f2.dim).map(|i| basis(n)[i].clone()).collect();
    for u in &d1 {
        for v in &d1 {
            for z in &z1 {
                let lhs = curvature_apply(r, u, v, z);
                ensure_eq(&lhs, &rf(p.first(), f1.offset, u, v, z), || "R(U1,V1)Z1".into())?;
            }
            for z in &z2 {
                let lhs = curvature_apply(r, u, v, z);
                let rhs = scale(&(q(-2, 1) * &a * fund(f1, u, v)), &f2.phi_of(z));
                ensure_eq(&lhs, &rhs, || "R(U1,V1)Z2".into())?;
            }
            for xi in [p.xi1(), p.xi2()] {
                ensure(is_zero_vec(&curvature_apply(r, u, v, xi)), || "R(U1,V1)xi".into())?;
            }
        }
    }
    for u in &d2 {
        for v in &d2 {
            for z in &z1 {
                let lhs = curvature_apply(r, u, v, z);
                let rhs = scale(&(q(-2, 1) * &a * fund(f2, u, v)), &f1.phi_of(z));
                ensure_eq(&lhs, &rhs, || "R(U2,V2)Z1".into())?;
            }
            for z in &z2 {
                let lhs = curvature_apply(r, u, v, z);
                let rhs = combo(&[
                    (q(1, 1), &rf(p.second(), f2.offset, u, v, z)),
                    (&lam * fund(f2, v, z), &f2.phi_of(u)),
                    (-(&lam * fund(f2, u, z)), &f2.phi_of(v)),
                    (q(-2, 1) * &lam * fund(f2, u, v), &f2.phi_of(z)),
                ]);
                ensure_eq(&lhs, &rhs, || "R(U2,V2)Z2".into())?;
            }
            for xi in [p.xi1(), p.xi2()] {
                ensure(is_zero_vec(&curvature_apply(r, u, v, xi)), || "R(U2,V2)xi".into())?;
            }
        }
    }
    Ok(())
}

/// The Bismut torsion table on the frame `ξ₁, Jξ₁, 𝒟₁, 𝒟₂`.
pub fn bismut_torsion_frame_table(p: &ProductHermitian<Q>) -> Check {
    let ba = BismutAnalysis::new(p).map_err(|e| e.to_string())?;
    let t = |x: &[Q], y: &[Q]| ba.torsion_of(x, y);
    let (f1, f2) = (p.factor1(), p.factor2());
    let (a, b) = (p.a().clone(), p.b().clone());
    let norm2 = p.params().norm2();
    let n = p.dim();
    let xi1 = p.xi1().clone();
    let jxi1 = p.j_of(&xi1);
    let fund = |f: &sasakian_products::product::EmbeddedFactor<Q>, x: &[Q], y: &[Q]| pair(&f.fundamental, x, y);
    let e = basis(n);
    let (x1s, x2s): (Vec<_>, Vec<_>) = e.iter().cloned().partition(|x| f1.contains(index_of(x)));
    let d1 = f1.distribution_basis();
    let d2 = f2.distribution_basis();
    for x in &x1s {
        let h = f1.eta_of(x);
        ensure_eq(&t(x, &xi1), &scale(&q(2, 1), &f1.phi_of(x)), || "T(X1, xi1)".into())?;
        ensure(is_zero_vec(&t(x, &jxi1)), || "T(X1, J xi1)".into())?;
        for ej in &d1 {
            let rhs = combo(&[(q(-2, 1) * &h, &f1.phi_of(ej)), (q(-2, 1) * fund(f1, ej, x), &f1.xi)]);
            ensure_eq(&t(x, ej), &rhs, || "T(X1, e_j)".into())?;
        }
        for fk in &d2 {
            let rhs = scale(&(q(-2, 1) * &a * &h), &f2.phi_of(fk));
            ensure_eq(&t(x, fk), &rhs, || "T(X1, f_k)".into())?;
        }
    }
    for x in &x2s {
        let h = f2.eta_of(x);
        ensure_eq(&t(x, &xi1), &scale(&(q(2, 1) * &a), &f2.phi_of(x)), || "T(X2, xi1)".into())?;
        ensure_eq(&t(x, &jxi1), &scale(&(q(2, 1) * &b), &f2.phi_of(x)), || "T(X2, J xi1)".into())?;
        for ej in &d1 {
            let rhs = scale(&(q(-2, 1) * &a * &h), &f1.phi_of(ej));
            ensure_eq(&t(x, ej), &rhs, || "T(X2, e_j)".into())?;
        }
        for fk in &d2 {
            let rhs = combo(&[(q(-2, 1) * &norm2 * &h, &f2.phi_of(fk)), (q(2, 1) * fund(f2, x, fk), &f2.xi)]);
            ensure_eq(&t(x, fk), &rhs, || "T(X2, f_k)".into())?;
        }
    }
    for (d, f) in [(&d1, f1), (&d2, f2)] {
        for u in d.iter() {
            for v in d.iter() {
                ensure_eq(&t(u, v), &scale(&(q(2, 1) * fund(f, u, v)), &f.xi), || "T(X_i, Y_i)".into())?;
            }
        }
    }
    for u in &d1 {
        for v in &d2 {
            ensure(is_zero_vec(&t(u, v)), || "T(X1, Y2)".into())?;
        }
    }
    Ok(())
}
