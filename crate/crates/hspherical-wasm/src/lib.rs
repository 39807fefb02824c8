//! Browser bindings. Each export returns a JSON string or throws a string.
//!
//! The `*_json` functions are plain Rust so they can be tested natively.

use hspherical::cfunc::CFunctionContext;
use hspherical::crown::{BasePoint, Crown};
use hspherical::hardy::{plancherel_density, sl2_theta, KernelPath};
use hspherical::rootcore::{CaseTag, RootSystem};
use hspherical::Complex64;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_SAMPLES: usize = 2000;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn context(case: &str) -> Result<(RootSystem, CFunctionContext, Crown), String> {
    let tag: CaseTag = case.parse().map_err(err)?;
    if tag == CaseTag::Custom {
        return Err("only catalog cases are available".into());
    }
    let rs = RootSystem::build(tag).map_err(err)?;
    let ctx = CFunctionContext::new(&rs).map_err(err)?;
    let crown = Crown::new(&rs, &ctx.weyl, BasePoint::catalog(&rs).map_err(err)?).map_err(err)?;
    Ok((rs, ctx, crown))
}

fn check_samples(n: usize) -> Result<(), String> {
    if (2..=MAX_SAMPLES).contains(&n) {
        Ok(())
    } else {
        Err(format!("sample count must lie in [2, {MAX_SAMPLES}]"))
    }
}

/// Vertices of Omega and Omega_H in point coordinates, with X_H.
pub fn crown_json(case: &str) -> Result<String, String> {
    let (rs, _, crown) = context(case)?;
    Ok(json!({
        "case": crown.case_tag.to_string(),
        "rank": rs.rank,
        "x_h": crown.base_point.x_h,
        "omega": crown.omega.vertex_points(),
        "omega_h": crown.omega_h.vertex_points(),
        "omega_h_equals_omega": crown.equal_closures(),
    })
    .to_string())
}

/// theta_{i nu}(exp t) of SL(2,R) on n points of [t_min, t_max].
pub fn theta_curve_json(nu: f64, t_min: f64, t_max: f64, n: usize) -> Result<String, String> {
    check_samples(n)?;
    if !(t_min > 0.0 && t_max > t_min && t_max.is_finite()) {
        return Err("need 0 < t_min < t_max".into());
    }
    let mut t = Vec::with_capacity(n);
    let mut re = Vec::with_capacity(n);
    let mut im = Vec::with_capacity(n);
    for k in 0..n {
        let x = t_min + (t_max - t_min) * k as f64 / (n - 1) as f64;
        let v = sl2_theta(nu, Complex64::new(x, 0.0), KernelPath::Unfolded2F1).map_err(err)?;
        t.push(x);
        re.push(v.re);
        im.push(v.im);
    }
    Ok(json!({ "nu": nu, "t": t, "re": re, "im": im }).to_string())
}

/// Plancherel density along the chamber ray nu = r ((1 - u) omega_1 + u omega_2), 0 < u < 1.
pub fn density_ray_json(case: &str, u: f64, r_max: f64, n: usize) -> Result<String, String> {
    check_samples(n)?;
    let (rs, ctx, crown) = context(case)?;
    if !(u > 0.0 && u < 1.0) && rs.rank == 2 {
        return Err("the ray parameter u must lie in (0, 1)".into());
    }
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err("r_max must be positive".into());
    }
    let edges = rs.chamber_edges().map_err(err)?;
    let weights = if rs.rank == 1 {
        vec![1.0]
    } else {
        vec![1.0 - u, u]
    };
    let dir: Vec<f64> = (0..rs.rank)
        .map(|k| weights.iter().zip(&edges).map(|(w, e)| w * e[k]).sum())
        .collect();
    let mut r = Vec::with_capacity(n);
    let mut density = Vec::with_capacity(n);
    for k in 1..=n {
        let x = r_max * k as f64 / n as f64;
        let nu: Vec<f64> = dir.iter().map(|d| x * d).collect();
        r.push(x);
        density.push(plancherel_density(&ctx, &crown.base_point, &nu).map_err(err)?);
    }
    Ok(
        json!({ "case": crown.case_tag.to_string(), "direction": dir, "r": r, "density": density })
            .to_string(),
    )
}

#[wasm_bindgen]
pub fn crown(case: &str) -> Result<String, JsValue> {
    crown_json(case).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn theta_curve(nu: f64, t_min: f64, t_max: f64, n: usize) -> Result<String, JsValue> {
    theta_curve_json(nu, t_min, t_max, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn density_ray(case: &str, u: f64, r_max: f64, n: usize) -> Result<String, JsValue> {
    density_ray_json(case, u, r_max, n).map_err(|e| JsValue::from_str(&e))
}
