//! Bound states on the branch `χ = i·w`: quantization conditions, level
//! solvers, parameter curves and normalized wave functions.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::greens::green_partial_bound;
use crate::kinematics::{BoundEnergy, EquationVariant, W_MAX, W_MIN};
use crate::numerics::{find_roots_scan, integrate_partitioned, integrate_semi_infinite, linspace, ordered_map};
use crate::scattering::{Shell, ShellPotential};

/// Largest accepted quantization residual for a returned level.
pub const LEVEL_RESIDUAL: f64 = 1e-10;
/// Residual a caller-supplied `w` must meet before a wave function is built.
pub const ROOT_PRECONDITION: f64 = 1e-8;
/// Number of points on a parameter-curve grid.
pub const CURVE_POINTS: usize = 2000;

const NORM_TOL: f64 = 1e-11;
const ROOT_TOL_X: f64 = 1e-15;
const SINGULAR_DENOMINATOR: f64 = 1e-300;

/// One bound level with its normalized wave function data.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundLevel {
    pub w: f64,
    /// `2E = 2m·cos w`.
    pub two_energy: f64,
    /// `|condition(w)|`.
    pub residual: f64,
    /// Normalized `ψ` at each shell radius, innermost first.
    pub psi_at_shells: Vec<f64>,
    /// Scale turning the unnormalized solution into a unit-norm one.
    pub norm_constant: f64,
}

/// One sample of a parameter curve; `value` is NaN where `finite` is false.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantCurvePoint {
    pub w: f64,
    pub value: f64,
    pub finite: bool,
}

/// Solutions of the quadratic quantization condition for `V₁` with `V₂ = α·V₁`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QuadraticRoots {
    Real { plus: f64, minus: f64 },
    /// Leading coefficient vanishes; only one finite root remains.
    Degenerate(f64),
    /// Negative discriminant.
    None,
}

fn flag(value: f64) -> f64 {
    if value.is_finite() {
        value
    } else {
        f64::NAN
    }
}

fn check_radius(a: f64) -> Result<()> {
    if a.is_finite() && a > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("shell radius must be positive, got {a}")))
    }
}

/// `V₀(w) = 1/G(iw, a, a)`; NaN where the Green function vanishes.
pub fn v0_of_w(j: EquationVariant, be: &BoundEnergy, a: f64) -> Result<f64> {
    check_radius(a)?;
    let g = green_partial_bound(j, be, a, a);
    if g.abs() < SINGULAR_DENOMINATOR {
        return Ok(f64::NAN);
    }
    Ok(flag(1.0 / g))
}

/// `V₀(w)` from the explicit per-variant expressions.
pub fn v0_of_w_explicit(j: EquationVariant, be: &BoundEnergy, a: f64) -> Result<f64> {
    check_radius(a)?;
    let (m, w) = (be.mass(), be.w());
    let s = |x: f64| (w * m * x).sinh();
    let t = |x: f64| (PI * m * x).tanh();
    let value = match j {
        EquationVariant::LogunovTavkhelidze => {
            PI * m * (2.0 * w).sin() / (2.0 * w + PI * (2.0 * s(a).powi(2) - s(2.0 * a) / t(a)))
        }
        EquationVariant::Kadyshevsky => {
            let th = t(0.5 * a).powi(2);
            PI * m * (2.0 * w).sin()
                / (w + PI * (th * w.sin() / (th + 1.0) + 2.0 * s(a).powi(2) - s(2.0 * a) / t(2.0 * a)))
        }
        EquationVariant::ModifiedLogunovTavkhelidze => {
            2.0 * m * w.sin() / (2.0 * s(a).powi(2) - t(a) * s(2.0 * a))
        }
        EquationVariant::ModifiedKadyshevsky => {
            2.0 * PI * m * w.sin() / (w + PI * (2.0 * s(a).powi(2) - s(2.0 * a) / t(2.0 * a)))
        }
    };
    Ok(flag(value))
}

/// Single-shell condition `1 - V₀·G(iw, a, a)`, free of poles in `w`.
pub fn single_condition(j: EquationVariant, be: &BoundEnergy, shell: Shell) -> f64 {
    1.0 - shell.strength * green_partial_bound(j, be, shell.radius, shell.radius)
}

/// Two-shell determinant for an arbitrary pair of shells.
pub fn det_bound_pair(j: EquationVariant, be: &BoundEnergy, s1: Shell, s2: Shell) -> f64 {
    let g = |a: f64, b: f64| green_partial_bound(j, be, a, b);
    let (g11, g22, g12) = (g(s1.radius, s1.radius), g(s2.radius, s2.radius), g(s1.radius, s2.radius));
    (1.0 - s1.strength * g11) * (1.0 - s2.strength * g22) - s1.strength * s2.strength * g12 * g12
}

/// `Π(1 - V_k G_kk) - V₁V₂·G₁₂²` at `χ = i·w`.
pub fn det_bound(j: EquationVariant, be: &BoundEnergy, pot: &ShellPotential) -> Result<f64> {
    let (s1, s2) = pot
        .pair()
        .ok_or_else(|| Error::Precondition("det_bound needs a two-shell potential".into()))?;
    Ok(det_bound_pair(j, be, s1, s2))
}

/// Quantization condition of any shell potential: the single-shell form or
/// the two-shell determinant.
pub fn quantization_condition(j: EquationVariant, be: &BoundEnergy, pot: &ShellPotential) -> f64 {
    match pot.pair() {
        None => single_condition(j, be, pot.shells()[0]),
        Some((s1, s2)) => det_bound_pair(j, be, s1, s2),
    }
}

fn check_distinct(a1: f64, a2: f64) -> Result<()> {
    check_radius(a1)?;
    check_radius(a2)?;
    if a1 == a2 {
        return Err(Error::Precondition("parameter curves need two distinct radii".into()));
    }
    Ok(())
}

/// `V₂` that puts a level at `w` for fixed `V₁`; NaN at a singular point.
pub fn v2_of_w(j: EquationVariant, be: &BoundEnergy, a1: f64, a2: f64, v1: f64) -> Result<f64> {
    check_distinct(a1, a2)?;
    let g = |a: f64, b: f64| green_partial_bound(j, be, a, b);
    let (g11, g22, g12) = (g(a1, a1), g(a2, a2), g(a1, a2));
    let f = g12 * g12 - g11 * g22;
    let den = g22 + v1 * f;
    if den.abs() < SINGULAR_DENOMINATOR {
        return Ok(f64::NAN);
    }
    Ok(flag((1.0 - v1 * g11) / den))
}

/// Both `V₁` values putting a level at `w` when `V₂ = α·V₁`.
pub fn v1_pm_of_w(j: EquationVariant, be: &BoundEnergy, a1: f64, a2: f64, alpha: f64) -> Result<QuadraticRoots> {
    check_distinct(a1, a2)?;
    if !(alpha.is_finite() && alpha != 0.0) {
        return Err(Error::domain(format!("alpha must be finite and non-zero, got {alpha}")));
    }
    let g = |a: f64, b: f64| green_partial_bound(j, be, a, b);
    let (g11, g22, g12) = (g(a1, a1), g(a2, a2), g(a1, a2));
    // α(G₁₁G₂₂ - G₁₂²)·V² - (G₁₁ + αG₂₂)·V + 1 = 0
    let qa = alpha * (g11 * g22 - g12 * g12);
    let minus_b = g11 + alpha * g22;
    let d = (g11 - alpha * g22).powi(2) + 4.0 * alpha * g12 * g12;
    let scale = alpha.abs() * ((g11 * g22).abs() + g12 * g12);
    if qa.abs() <= 4.0 * f64::EPSILON * scale {
        return Ok(QuadraticRoots::Degenerate(flag(1.0 / minus_b)));
    }
    if d < 0.0 {
        return Ok(QuadraticRoots::None);
    }
    let sq = d.sqrt();
    let (plus, minus) = if minus_b >= 0.0 {
        let big = minus_b + sq;
        (big / (2.0 * qa), 2.0 / big)
    } else {
        let big = minus_b - sq;
        (2.0 / big, big / (2.0 * qa))
    };
    Ok(QuadraticRoots::Real { plus: flag(plus), minus: flag(minus) })
}

/// Samples `value(w)` on the uniform grid of `n` points spanning the bound
/// window. A sign change through a pole between two samples inserts an
/// extra non-finite point at the located pole.
pub fn sample_curve<F>(value: F, n: usize) -> Vec<QuantCurvePoint>
where
    F: Fn(f64) -> f64 + Sync,
{
    let ws = linspace(W_MIN, W_MAX, n);
    let values = ordered_map(&ws, |&w| flag(value(w)));
    let mut out = Vec::with_capacity(n + 8);
    for i in 0..ws.len() {
        out.push(QuantCurvePoint { w: ws[i], value: values[i], finite: values[i].is_finite() });
        if i + 1 < ws.len() {
            if let Some(pole) = pole_between(&value, ws[i], ws[i + 1], values[i], values[i + 1]) {
                out.push(QuantCurvePoint { w: pole, value: f64::NAN, finite: false });
            }
        }
    }
    out
}

fn pole_between<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, mut flo: f64, mut fhi: f64) -> Option<f64> {
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() || flo == 0.0 || fhi == 0.0 {
        return None;
    }
    let start = flo.abs().max(fhi.abs());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if !fm.is_finite() {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    (flo.abs().min(fhi.abs()) > 10.0 * start).then_some(0.5 * (lo + hi))
}

/// Normalized bound wave function `ψ(r) = Σ V_k G(iw, r, a_k)·c_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundWavefunction {
    variant: EquationVariant,
    energy: BoundEnergy,
    shells: Vec<Shell>,
    coefficients: Vec<f64>,
}

impl BoundWavefunction {
    pub fn energy(&self) -> BoundEnergy {
        self.energy
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.shells
            .iter()
            .zip(&self.coefficients)
            .map(|(s, c)| s.strength * green_partial_bound(self.variant, &self.energy, r, s.radius) * c)
            .sum()
    }

    /// `∫₀^∞ ψ² dr`, split at the shell radii.
    pub fn norm_integral(&self, tol: f64) -> Result<f64> {
        let f = |r: f64| self.eval(r).powi(2);
        let mut breaks = vec![0.0];
        breaks.extend(self.shells.iter().map(|s| s.radius));
        let inner = integrate_partitioned(f, &breaks, tol)?;
        let decay = 2.0 * self.energy.w() * self.energy.mass();
        let outer = integrate_semi_infinite(f, *breaks.last().unwrap(), decay, tol)?;
        Ok(inner.value + outer.value)
    }
}

/// Builds the normalized wave function of a verified level.
pub fn bound_wavefunction(
    j: EquationVariant,
    m: f64,
    w: f64,
    pot: &ShellPotential,
) -> Result<(BoundWavefunction, BoundLevel)> {
    let be = BoundEnergy::new(m, w)?;
    let residual = quantization_condition(j, &be, pot).abs();
    if !(residual < ROOT_PRECONDITION) {
        return Err(Error::Precondition(format!(
            "w = {w} is not a quantization root (residual {residual:e})"
        )));
    }
    let shells = pot.shells().to_vec();
    let raw = match pot.pair() {
        None => vec![1.0],
        Some((s1, s2)) => {
            let g = |a: f64, b: f64| green_partial_bound(j, &be, a, b);
            let m11 = 1.0 - s1.strength * g(s1.radius, s1.radius);
            let m12 = -s2.strength * g(s1.radius, s2.radius);
            let m21 = -s1.strength * g(s2.radius, s1.radius);
            let m22 = 1.0 - s2.strength * g(s2.radius, s2.radius);
            let (u, v) = ([m22, -m21], [-m12, m11]);
            let norm = |x: [f64; 2]| x[0].hypot(x[1]);
            let pick = if norm(u) >= norm(v) { u } else { v };
            if norm(pick) == 0.0 {
                // M vanishes: both shells decouple and are individually resonant
                vec![1.0, 0.0]
            } else {
                pick.to_vec()
            }
        }
    };
    let mut psi = BoundWavefunction { variant: j, energy: be, shells, coefficients: raw };
    let n = psi.norm_integral(NORM_TOL)?;
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::Evaluation { x: w });
    }
    let mut norm_constant = n.sqrt().recip();
    if psi.eval(psi.shells[0].radius) < 0.0 {
        norm_constant = -norm_constant;
    }
    for c in &mut psi.coefficients {
        *c *= norm_constant;
    }
    let psi_at_shells = psi.shells.iter().map(|s| psi.eval(s.radius)).collect();
    let level = BoundLevel {
        w,
        two_energy: be.two_particle_energy(),
        residual,
        psi_at_shells,
        norm_constant: norm_constant.abs(),
    };
    Ok((psi, level))
}

fn solve_levels<F: Fn(f64) -> f64>(
    j: EquationVariant,
    m: f64,
    pot: &ShellPotential,
    condition: F,
    n_scan: usize,
) -> Result<Vec<BoundLevel>> {
    let roots = find_roots_scan(condition, W_MIN, W_MAX, n_scan, ROOT_TOL_X)?;
    roots
        .into_iter()
        .filter(|r| r.residual < LEVEL_RESIDUAL)
        .map(|r| bound_wavefunction(j, m, r.x, pot).map(|(_, level)| level))
        .collect()
}

/// Levels of a single shell `(V₀, a)` found by scanning `n_scan` points.
pub fn solve_w_single(j: EquationVariant, m: f64, shell: Shell, n_scan: usize) -> Result<Vec<BoundLevel>> {
    if shell.strength >= 0.0 {
        return Ok(Vec::new());
    }
    BoundEnergy::new(m, 1.0)?;
    let pot = ShellPotential::single(shell.strength, shell.radius)?;
    let condition = |w: f64| single_condition(j, &BoundEnergy::new(m, w).unwrap(), shell);
    solve_levels(j, m, &pot, condition, n_scan)
}

/// Levels of a two-shell potential found by scanning `n_scan` points.
pub fn solve_w_double(j: EquationVariant, m: f64, pot: &ShellPotential, n_scan: usize) -> Result<Vec<BoundLevel>> {
    let (s1, s2) = pot
        .pair()
        .ok_or_else(|| Error::Precondition("solve_w_double needs a two-shell potential".into()))?;
    BoundEnergy::new(m, 1.0)?;
    let condition = |w: f64| det_bound_pair(j, &BoundEnergy::new(m, w).unwrap(), s1, s2);
    solve_levels(j, m, pot, condition, n_scan)
}

/// Levels of any shell potential.
pub fn solve_levels_for(j: EquationVariant, m: f64, pot: &ShellPotential, n_scan: usize) -> Result<Vec<BoundLevel>> {
    match pot.pair() {
        None => solve_w_single(j, m, pot.shells()[0], n_scan),
        Some(_) => solve_w_double(j, m, pot, n_scan),
    }
}
