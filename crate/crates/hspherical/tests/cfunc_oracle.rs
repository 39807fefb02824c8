//! c_w against direct integrals over Nbar_w in SL(2,R) and SL(3,R).

use hspherical::cfunc::CFunctionContext;
use hspherical::numerics::{integrate_halfline, QuadratureConfig};
use hspherical::rootcore::{rho, CaseTag, RootSystem};
use hspherical::Complex64;
use nalgebra::Matrix3;
use std::f64::consts::PI;

fn line_integral(f: &dyn Fn(f64) -> Complex64, cfg: &QuadratureConfig) -> Complex64 {
    let right = integrate_halfline(&|x| f(x), cfg).unwrap().value;
    let left = integrate_halfline(&|x| f(-x), cfg).unwrap().value;
    right + left
}

/// a(g)^nu for g = n a k in SL(3,R), from the bottom-right minors of g g^T.
/// nu is a covector on (u, v) with log a = diag(u, v - u, -v).
fn a_power_sl3(g: &Matrix3<f64>, nu: &[Complex64]) -> Complex64 {
    let m = g * g.transpose();
    let x3 = 0.5 * m[(2, 2)].ln();
    let minor = m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)];
    let x2 = 0.5 * minor.ln() - x3;
    let x1 = -x2 - x3;
    let (u, v) = (x1, -x3);
    (nu[0] * u + nu[1] * v).exp()
}

/// Matrix entry (row, col) of the Nbar root space for the negative of a positive A2 root.
fn nbar_slot(alpha: &[f64]) -> (usize, usize) {
    match (alpha[0] as i64, alpha[1] as i64) {
        (2, -1) => (1, 0),
        (-1, 2) => (2, 1),
        (1, 1) => (2, 0),
        _ => panic!("not a positive A2 root: {alpha:?}"),
    }
}

#[test]
fn sl2_factor_matches_line_integral() {
    let rs = RootSystem::build(CaseTag::A1).unwrap();
    let ctx = CFunctionContext::new(&rs).unwrap();
    let cfg = QuadratureConfig::with_tolerance(1e-11);
    for lam in [
        Complex64::new(-2.0, 0.0),
        Complex64::new(-3.0, 0.5),
        Complex64::new(-1.5, -1.0),
    ] {
        // a(nbar_x)^{rho - lambda} = (1 + x^2)^{(lambda - 1)/2}; tan substitution keeps it on a compact interval
        let f = |th: f64| Complex64::new(th.cos(), 0.0).powc(-lam - 1.0) / PI;
        let oracle = hspherical::numerics::integrate_interval(&f, -PI / 2.0, PI / 2.0, &cfg)
            .unwrap()
            .value;
        let w = ctx.weyl.longest_index();
        let v = ctx.c_w(w, &[lam]).unwrap();
        assert!(
            (v - oracle).norm() / oracle.norm() < 1e-8,
            "{lam}: {v} vs {oracle}"
        );
    }
}

#[test]
fn sl3_length_two_elements_match_double_integral() {
    let rs = RootSystem::build(CaseTag::A2).unwrap();
    let ctx = CFunctionContext::new(&rs).unwrap();
    let r = rho(&rs);
    let lambda = [Complex64::new(-3.0, 0.4), Complex64::new(-2.5, -0.3)];
    let exponent: Vec<Complex64> = r.iter().zip(&lambda).map(|(p, l)| p - l).collect();
    let cfg = QuadratureConfig {
        abs_tol: 1e-10,
        rel_tol: 1e-9,
        tail_tol: 1e-12,
        ..Default::default()
    };
    let mut checked = 0;
    for w in 0..ctx.weyl.order() {
        if ctx.weyl.elements[w].length() != 2 {
            continue;
        }
        let inv = ctx.inversion_set(w);
        let slots: Vec<(usize, usize)> = inv
            .iter()
            .map(|&i| nbar_slot(&rs.roots[i].covector))
            .collect();
        let integrand = |x: f64, y: f64| {
            let mut g = Matrix3::identity();
            g[slots[0]] = x;
            g[slots[1]] = y;
            a_power_sl3(&g, &exponent) / (PI * PI)
        };
        let oracle = line_integral(&|x| line_integral(&|y| integrand(x, y), &cfg), &cfg);
        let v = ctx.c_w(w, &lambda).unwrap();
        assert!(
            (v - oracle).norm() / oracle.norm() < 1e-6,
            "w = {:?}: {v} vs {oracle}",
            ctx.weyl.elements[w].word
        );
        checked += 1;
    }
    assert_eq!(checked, 2);
}

#[test]
fn cocycle_for_length_additive_products() {
    // c_{w1 w2}(lambda) = c_{w1}(lambda) c_{w2}(w1^{-1} lambda) when lengths add
    let rs = RootSystem::build(CaseTag::A2).unwrap();
    let ctx = CFunctionContext::new(&rs).unwrap();
    let lambda = [Complex64::new(-1.3, 0.7), Complex64::new(0.4, -1.1)];
    let n = ctx.weyl.order();
    let mut checked = 0;
    for w1 in 0..n {
        for w2 in 0..n {
            let w = ctx.weyl.compose(w1, w2);
            let l = |i: usize| ctx.weyl.elements[i].length();
            if l(w) != l(w1) + l(w2) {
                continue;
            }
            let shifted = ctx.weyl.elements[ctx.weyl.inverse_index(w1)].act_dual_c(&lambda);
            let lhs = ctx.c_w(w, &lambda).unwrap();
            let rhs = ctx.c_w(w1, &lambda).unwrap() * ctx.c_w(w2, &shifted).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm(), "{w1} {w2}");
            checked += 1;
        }
    }
    assert!(checked > 6);
}
