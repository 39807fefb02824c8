//! Line-model experiments for SL(2,R) against closed forms and the c-function.

use hspherical::numerics::{complex_gamma, QuadratureConfig};
use hspherical::sl2::*;
use hspherical::Complex64 as C;
use std::f64::consts::PI;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::with_tolerance(1e-11)
}

/// phi_lambda(x_H) = sqrt(pi) / (Gamma((3 - lambda)/4) Gamma((3 + lambda)/4)), from 2F1 at 1/2.
fn phi_at_x_h(lambda: C) -> C {
    PI.sqrt()
        / (complex_gamma((3.0 - lambda) / 4.0).unwrap()
            * complex_gamma((3.0 + lambda) / 4.0).unwrap())
}

#[test]
fn intertwiner_scales_the_k_vector_by_c_w() {
    let lam = C::new(-2.5, 0.0);
    let r = intertwiner_k_ratio(lam, &[0.0, 1.0], &cfg()).unwrap();
    for q in &r.ratios {
        assert!((q - r.c_w).norm() / r.c_w.norm() < 1e-6, "{q} vs {}", r.c_w);
    }
    let lam = C::new(-1.7, 0.6);
    let r = intertwiner_k_ratio(lam, &[0.0, 1.0, -2.0], &cfg()).unwrap();
    for q in &r.ratios {
        assert!((q - r.c_w).norm() / r.c_w.norm() < 1e-6, "{q} vs {}", r.c_w);
    }
}

#[test]
fn intertwiner_is_linear() {
    let lam = C::new(-2.0, 0.3);
    let f = LineModelFunction::k_vector_of_pi(lam);
    let g = LineModelFunction::v_k(C::new(2.0, 0.0));
    let (f2, g2) = (f.clone(), g.clone());
    let sum = LineModelFunction::numeric(
        lam,
        f.integrable_exponent.max(g.integrable_exponent),
        vec![],
        move |p| f2.eval_at(p) + C::new(0.0, 2.0) * g2.eval_at(p),
    );
    let xs = [0.0, 0.5, 3.0];
    let a = intertwiner_apply(lam, &f, &xs, &cfg()).unwrap();
    let b = intertwiner_apply(lam, &g, &xs, &cfg()).unwrap();
    let s = intertwiner_apply(lam, &sum, &xs, &cfg()).unwrap();
    for i in 0..xs.len() {
        assert!((s[i] - (a[i] + C::new(0.0, 2.0) * b[i])).norm() < 1e-9);
    }
}

#[test]
fn intertwining_pairing_identity() {
    let r = check_intertwining_pairing(-2.5, &cfg()).unwrap();
    assert!(r.rel_err <= 1e-4, "{r:?}");
}

#[test]
fn boundary_limit_of_translated_k_vector() {
    let lam = C::new(0.0, 1.0);
    let vk = LineModelFunction::v_k(lam);
    let r = boundary_convergence(lam, &[0.0, 0.9, 0.99, 0.999], &vk, &cfg()).unwrap();
    assert!((r.rows[0].pairing - 1.0).norm() < 1e-9);
    let d: Vec<f64> = r.rows[1..].iter().map(|x| x.abs_diff).collect();
    assert!(d[0] > d[1] && d[1] > d[2] && d[2] <= 1e-2, "{d:?}");
    assert!(r.target.norm() > 0.1);
    // the limit is the spherical function at the base point
    let phi = phi_at_x_h(lam);
    assert!((r.target - phi).norm() < 1e-3, "{} vs {phi}", r.target);
}

#[test]
fn unitary_translates_keep_norm_one() {
    let lam = C::new(0.0, 0.8);
    let vk = LineModelFunction::v_k(lam);
    let rule = LineRule::Adaptive(cfg());
    for g in [
        [[2.0, 0.0], [0.0, 0.5]],
        [[1.0, 1.5], [0.0, 1.0]],
        [[0.6, -0.8], [0.8, 0.6]],
        [[1.0, 0.0], [-2.0, 1.0]],
    ] {
        let moved = pi_apply(lam, g, &vk);
        let n = pairing(&moved, &moved, &rule).unwrap();
        assert!((n - 1.0).norm() < 1e-8, "{g:?}: {n}");
    }
}

#[test]
fn support_dichotomy_and_full_support() {
    let lam = C::new(0.0, 0.4);
    let e1 = LineModelFunction::eta_1(lam).unwrap();
    let ew = LineModelFunction::eta_w(lam).unwrap();
    let vh = LineModelFunction::v_h(lam).unwrap();
    for x in eta_check_grid() {
        assert_eq!(e1.eval(x) * ew.eval(x), C::new(0.0, 0.0));
        assert!(vh.eval(x).norm() > 0.0);
    }
}

#[test]
fn dilation_moves_the_support_of_eta_1() {
    let lam = C::new(0.0, 0.4);
    let e1 = LineModelFunction::eta_1(lam).unwrap();
    let s: f64 = 0.5;
    // (pi(diag(e^s, e^-s)) f)(x) = e^{s(1 + conj lambda)} f(e^{2s} x)
    let moved = pi_apply(lam, [[s.exp(), 0.0], [0.0, (-s).exp()]], &e1);
    let edge = (-2.0 * s).exp();
    assert_eq!(moved.eval(1.01 * edge), C::new(0.0, 0.0));
    assert!(moved.eval(0.99 * edge).norm() > 0.0);
}

#[test]
fn smoothness_probe_is_second_order() {
    let grid = [C::new(0.1, 0.3), C::new(-0.4, -0.5), C::new(0.5, 1.0)];
    let r1 = lambda_smoothness_probe(&ProbeVector::KVector, &grid, 1e-3).unwrap();
    assert!(r1.max_residual <= 1e-5, "{r1:?}");
    let r2 = lambda_smoothness_probe(&ProbeVector::KVector, &grid, 5e-4).unwrap();
    let ratio = r1.max_residual / r2.max_residual;
    assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
}
