//! WebAssembly bindings for the browser demo.
//!
//! Every export returns a flat `Float64Array`. Point records are interleaved;
//! separate polylines are split by a NaN record.

use deltashell::boundstates::{sample_curve, v0_of_w};
use deltashell::numerics::linspace;
use deltashell::scattering::{scan_zero_locus, sweep, ZeroScan};
use deltashell::{BoundEnergy, EquationVariant, ShellPotential};
use wasm_bindgen::prelude::*;

fn variant(j: u8) -> Result<EquationVariant, String> {
    EquationVariant::from_index(j).map_err(|e| e.to_string())
}

/// Records `(chi, sigma0, phase)`; `v2 = 0` selects a single shell.
#[allow(clippy::too_many_arguments)]
pub fn scatter_records(
    j: u8,
    m: f64,
    v1: f64,
    a1: f64,
    v2: f64,
    a2: f64,
    chi_lo: f64,
    chi_hi: f64,
    n: usize,
) -> Result<Vec<f64>, String> {
    let pot = if v2 == 0.0 { ShellPotential::single(v1, a1) } else { ShellPotential::double(v1, a1, v2, a2) }
        .map_err(|e| e.to_string())?;
    if n < 2 || !(chi_hi > chi_lo) {
        return Err("need at least two rapidities with chi_lo < chi_hi".into());
    }
    let points = sweep(variant(j)?, m, &pot, &linspace(chi_lo, chi_hi, n)).map_err(|e| e.to_string())?;
    Ok(points.iter().flat_map(|p| [p.chi, p.sigma0, p.phase]).collect())
}

/// Records `(w, V0)` of the single-shell quantization curve; poles give NaN.
pub fn bound_records(j: u8, m: f64, a: f64, n: usize) -> Result<Vec<f64>, String> {
    let j = variant(j)?;
    let be = |w: f64| BoundEnergy::new(m, w).map_err(|e| e.to_string());
    v0_of_w(j, &be(1.0)?, a).map_err(|e| e.to_string())?;
    if n < 2 {
        return Err("need at least two points".into());
    }
    let pts = sample_curve(|w| be(w).ok().and_then(|b| v0_of_w(j, &b, a).ok()).unwrap_or(f64::NAN), n);
    Ok(pts.iter().flat_map(|p| [p.w, if p.finite { p.value } else { f64::NAN }]).collect())
}

/// Records `(a2, chi)` along each zero curve of the two-shell amplitude.
#[allow(clippy::too_many_arguments)]
pub fn zero_records(
    j: u8,
    m: f64,
    a1: f64,
    v1: f64,
    v2: f64,
    a2_lo: f64,
    a2_hi: f64,
    chi_lo: f64,
    chi_hi: f64,
    grid: usize,
) -> Result<Vec<f64>, String> {
    let scan = ZeroScan {
        variant: variant(j)?,
        mass: m,
        a1,
        v1,
        v2,
        a2_range: (a2_lo, a2_hi),
        chi_range: (chi_lo, chi_hi),
        nx: grid,
        ny: grid,
    };
    let locus = scan_zero_locus(&scan).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for curve in &locus.curves {
        out.extend(curve.iter().flat_map(|v| [v.x, v.y]));
        out.extend([f64::NAN, f64::NAN]);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn scatter_curve(
    j: u8,
    m: f64,
    v1: f64,
    a1: f64,
    v2: f64,
    a2: f64,
    chi_lo: f64,
    chi_hi: f64,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    scatter_records(j, m, v1, a1, v2, a2, chi_lo, chi_hi, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bound_curve(j: u8, m: f64, a: f64, n: usize) -> Result<Vec<f64>, JsError> {
    bound_records(j, m, a, n).map_err(|e| JsError::new(&e))
}

#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn zero_locus(
    j: u8,
    m: f64,
    a1: f64,
    v1: f64,
    v2: f64,
    a2_lo: f64,
    a2_hi: f64,
    chi_lo: f64,
    chi_hi: f64,
    grid: usize,
) -> Result<Vec<f64>, JsError> {
    zero_records(j, m, a1, v1, v2, a2_lo, a2_hi, chi_lo, chi_hi, grid).map_err(|e| JsError::new(&e))
}
