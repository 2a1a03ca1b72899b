//! Scattering observables for one and two delta shells.
//!
//! The generic path builds everything from [`green_partial`]: the single-shell
//! denominator `A = 1 - V₀·G(a, a)`, or for two shells the determinant
//! `Δ = Π(1 - V_k G_kk) - V₁V₂·G₁₂²` with cofactors `Δ₁`, `Δ₂`. The amplitude
//! is `f = -2/(q·K·Δ)·Σ V_k Δ_k sin(χ m a_k)`. [`amplitude_explicit`] is an
//! independent transcription of the per-variant closed forms and exists only
//! to cross-check the generic path.

mod potential;
mod zeros;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use potential::{Shell, ShellPotential};
pub use zeros::{
    scan_zero_locus, single_shell_zero_rapidities, zero_condition, zero_condition_explicit_mlt,
    zero_condition_pair, ZeroLocus, ZeroScan, ZeroVertex, ZERO_RESIDUAL_TARGET,
};

use crate::error::{Error, Result};
use crate::greens::green_partial;
use crate::kinematics::{k_factor, EquationVariant, Kinematics};
use crate::numerics::{ensure_finite, ordered_map, ComplexValue};

/// Relative size below which `A` or `Δ` counts as a real-axis pole.
const POLE_THRESHOLD: f64 = 1e-14;

/// Observables at one rapidity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScatterPoint {
    pub chi: f64,
    pub q: f64,
    pub f: ComplexValue,
    pub s_matrix: ComplexValue,
    pub sigma0: f64,
    /// `½·arg S`; principal value from [`scatter_point`], unwrapped by [`sweep`].
    pub phase: f64,
    /// `|Im f - q|f|²|`.
    pub unitarity_defect: f64,
    /// `|(1 + 2iqf) - den*/den|` with `den = A` or `Δ`.
    pub representation_defect: f64,
}

/// Determinant and cofactors of the two-shell linear system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaSystem {
    pub delta: ComplexValue,
    pub delta1: ComplexValue,
    pub delta2: ComplexValue,
    /// Magnitude of the largest term that went into `delta`.
    pub scale: f64,
}

fn sin_arg(kin: &Kinematics, a: f64) -> f64 {
    (kin.rapidity() * kin.mass() * a).sin()
}

/// `Δ`, `Δ₁`, `Δ₂` for an arbitrary pair of shells (no ordering or merging).
pub fn delta_system_pair(j: EquationVariant, kin: &Kinematics, s1: Shell, s2: Shell) -> Result<DeltaSystem> {
    let (v1, a1, v2, a2) = (s1.strength, s1.radius, s2.strength, s2.radius);
    let g11 = green_partial(j, kin, a1, a1)?;
    let g22 = green_partial(j, kin, a2, a2)?;
    let g12 = green_partial(j, kin, a1, a2)?;
    let (sa1, sa2) = (sin_arg(kin, a1), sin_arg(kin, a2));
    let one = Complex64::new(1.0, 0.0);
    let delta = (one - v1 * g11) * (one - v2 * g22) - v1 * v2 * g12 * g12;
    let delta1 = sa1 * (one - v2 * g22) + v2 * sa2 * g12;
    let delta2 = sa2 * (one - v1 * g11) + v1 * sa1 * g12;
    let scale = 1.0
        + (v1 * g11).norm()
        + (v2 * g22).norm()
        + (v1 * v2).abs() * ((g11 * g22).norm() + g12.norm_sqr());
    Ok(DeltaSystem { delta, delta1, delta2, scale })
}

/// `Δ` system of a two-shell potential.
pub fn delta_system(j: EquationVariant, kin: &Kinematics, pot: &ShellPotential) -> Result<DeltaSystem> {
    let (s1, s2) = pot
        .pair()
        .ok_or_else(|| Error::domain("delta system needs a two-shell potential"))?;
    delta_system_pair(j, kin, s1, s2)
}

fn single_denominator(j: EquationVariant, kin: &Kinematics, shell: Shell) -> Result<ComplexValue> {
    let g = green_partial(j, kin, shell.radius, shell.radius)?;
    let vg = shell.strength * g;
    let a = 1.0 - vg;
    if a.norm() < POLE_THRESHOLD * (1.0 + vg.norm()) {
        return Err(Error::Pole { chi: kin.rapidity(), what: "A" });
    }
    Ok(a)
}

fn checked_delta(j: EquationVariant, kin: &Kinematics, s1: Shell, s2: Shell) -> Result<DeltaSystem> {
    let ds = delta_system_pair(j, kin, s1, s2)?;
    if ds.delta.norm() < POLE_THRESHOLD * ds.scale {
        return Err(Error::Pole { chi: kin.rapidity(), what: "Delta" });
    }
    Ok(ds)
}

/// The denominator whose conjugate ratio is the S-matrix: `A` for one shell,
/// `Δ` for two.
pub fn scattering_denominator(j: EquationVariant, kin: &Kinematics, pot: &ShellPotential) -> Result<ComplexValue> {
    match pot.pair() {
        None => single_denominator(j, kin, pot.shells()[0]),
        Some((s1, s2)) => Ok(checked_delta(j, kin, s1, s2)?.delta),
    }
}

/// Two-shell amplitude for an arbitrary pair of shells.
pub fn amplitude_pair(j: EquationVariant, kin: &Kinematics, s1: Shell, s2: Shell) -> Result<ComplexValue> {
    let k = k_factor(j, kin)?;
    let q = kin.momentum();
    let ds = checked_delta(j, kin, s1, s2)?;
    let sum = s1.strength * ds.delta1 * sin_arg(kin, s1.radius) + s2.strength * ds.delta2 * sin_arg(kin, s2.radius);
    ensure_finite(-2.0 * sum / (q * k * ds.delta), "amplitude")
}

/// Scattering amplitude `f_(j)(χ)` via the Green-function path.
pub fn amplitude(j: EquationVariant, kin: &Kinematics, pot: &ShellPotential) -> Result<ComplexValue> {
    match pot.pair() {
        None => {
            let shell = pot.shells()[0];
            let k = k_factor(j, kin)?;
            let den = single_denominator(j, kin, shell)?;
            let s = sin_arg(kin, shell.radius);
            let f = -2.0 * shell.strength * s * s / (kin.momentum() * k * den);
            ensure_finite(f, "amplitude")
        }
        Some((s1, s2)) => amplitude_pair(j, kin, s1, s2),
    }
}

/// Amplitude from the explicit per-variant formulas: every `j` for one shell,
/// `j = 3` only for two shells.
pub fn amplitude_explicit(j: EquationVariant, kin: &Kinematics, pot: &ShellPotential) -> Result<ComplexValue> {
    let k = k_factor(j, kin)?;
    let (m, chi, q) = (kin.mass(), kin.rapidity(), kin.momentum());
    let s = |a: f64| (chi * m * a).sin();
    let t = |a: f64| (PI * m * a).tanh();
    match pot.pair() {
        None => {
            let Shell { strength: v0, radius: a } = pot.shells()[0];
            let s2 = Complex64::new(0.0, 2.0 * s(a) * s(a));
            let bracket = match j {
                EquationVariant::LogunovTavkhelidze => s(2.0 * a) / t(a) - 2.0 * chi / PI + s2,
                EquationVariant::Kadyshevsky => {
                    let th = t(0.5 * a).powi(2);
                    s(2.0 * a) / t(2.0 * a) - chi / PI + s2 - th / (1.0 + th) * chi.sinh()
                }
                EquationVariant::ModifiedLogunovTavkhelidze => t(a) * s(2.0 * a) + s2,
                EquationVariant::ModifiedKadyshevsky => s(2.0 * a) / t(2.0 * a) - chi / PI + s2,
            };
            let f = -2.0 * v0 * s(a) * s(a) / q / (k + v0 * bracket);
            ensure_finite(f, "explicit amplitude")
        }
        Some((sh1, sh2)) => {
            if j != EquationVariant::ModifiedLogunovTavkhelidze {
                return Err(Error::Unsupported("explicit two-shell amplitude exists only for j = 3"));
            }
            let (v1, a1, v2, a2) = (sh1.strength, sh1.radius, sh2.strength, sh2.radius);
            let (s1, s2) = (s(a1), s(a2));
            let p1 = 1.0 + v1 / k * t(a1) * s(2.0 * a1);
            let p2 = 1.0 + v2 / k * t(a2) * s(2.0 * a2);
            let cross = t(0.5 * (a2 - a1)) * s(a2 - a1) - t(0.5 * (a2 + a1)) * s(a2 + a1);
            let f1 = v1 * s1 * s1 * p2 + v2 * s2 * s2 * p1;
            let f2 = 2.0 * v1 * v2 / k * s1 * s2 * cross;
            let f3 = p1 * p2 - v1 * v2 / (k * k) * cross * cross;
            let f4 = 2.0 * v1 / k * s1 * s1 * p2 + 2.0 * v2 / k * s2 * s2 * p1 + 4.0 * v1 * v2 / (k * k) * s1 * s2 * cross;
            // the overall factor -2 matches the generic two-shell amplitude
            let f = -2.0 * (f1 + f2) / (q * k * Complex64::new(f3, f4));
            ensure_finite(f, "explicit amplitude")
        }
    }
}

/// Scattering wave function `ψ_(j)(χ, r)`.
pub fn wavefunction(j: EquationVariant, kin: &Kinematics, pot: &ShellPotential, r: f64) -> Result<ComplexValue> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::domain(format!("r must be finite and non-negative, got {r}")));
    }
    let free = Complex64::new(sin_arg(kin, r), 0.0);
    match pot.pair() {
        None => {
            let shell = pot.shells()[0];
            let den = single_denominator(j, kin, shell)?;
            let g = green_partial(j, kin, r, shell.radius)?;
            Ok(free + shell.strength / den * sin_arg(kin, shell.radius) * g)
        }
        Some((s1, s2)) => {
            let ds = checked_delta(j, kin, s1, s2)?;
            let g1 = green_partial(j, kin, r, s1.radius)?;
            let g2 = green_partial(j, kin, r, s2.radius)?;
            Ok(free + (s1.strength * g1 * ds.delta1 + s2.strength * g2 * ds.delta2) / ds.delta)
        }
    }
}

/// Amplitude, S-matrix, cross section and principal phase at one rapidity.
pub fn scatter_point(j: EquationVariant, kin: &Kinematics, pot: &ShellPotential) -> Result<ScatterPoint> {
    let f = amplitude(j, kin, pot)?;
    let q = kin.momentum();
    let s_matrix = 1.0 + Complex64::i() * 2.0 * q * f;
    let den = scattering_denominator(j, kin, pot)?;
    let representation_defect = (s_matrix - den.conj() / den).norm();
    Ok(ScatterPoint {
        chi: kin.rapidity(),
        q,
        f,
        s_matrix,
        sigma0: 4.0 * PI * f.norm_sqr(),
        phase: 0.5 * s_matrix.arg(),
        unitarity_defect: (f.im - q * f.norm_sqr()).abs(),
        representation_defect,
    })
}

/// Right-hand side of the closed-form `tan(2φ)` expression, built from
/// `Re G` only.
pub fn phase_tangent_closed_form(j: EquationVariant, kin: &Kinematics, pot: &ShellPotential) -> Result<f64> {
    let k = k_factor(j, kin)?;
    let re_g = |a: f64, b: f64| green_partial(j, kin, a, b).map(|g| g.re);
    match pot.pair() {
        None => {
            let Shell { strength: v0, radius: a } = pot.shells()[0];
            let s2 = sin_arg(kin, a).powi(2);
            let rest = 1.0 - v0 * re_g(a, a)?;
            Ok(-4.0 * v0 * k * rest * s2 / ((k * rest).powi(2) - (2.0 * v0 * s2).powi(2)))
        }
        Some((sh1, sh2)) => {
            let (v1, a1, v2, a2) = (sh1.strength, sh1.radius, sh2.strength, sh2.radius);
            let (g11, g22, g12) = (re_g(a1, a1)?, re_g(a2, a2)?, re_g(a1, a2)?);
            let (s1, s2) = (sin_arg(kin, a1), sin_arg(kin, a2));
            let re = (1.0 - v1 * g11) * (1.0 - v2 * g22) - v1 * v2 * g12 * g12;
            let im = 2.0 * v1 * s1 * s1 / k * (1.0 - v2 * g22)
                + 2.0 * v2 * s2 * s2 / k * (1.0 - v1 * g11)
                + 4.0 * v1 * v2 * s2 * s1 / k * g12;
            Ok(-2.0 * re * im / (re * re - im * im))
        }
    }
}

/// Adds multiples of π so successive phases differ by less than π/2.
pub fn unwrap_phases(phases: &mut [f64]) {
    for i in 1..phases.len() {
        let prev = phases[i - 1];
        phases[i] += PI * ((prev - phases[i]) / PI).round();
    }
}

/// Scatter points over a strictly increasing rapidity grid, with the phase
/// unwrapped into a continuous curve.
pub fn sweep(j: EquationVariant, m: f64, pot: &ShellPotential, chi_grid: &[f64]) -> Result<Vec<ScatterPoint>> {
    if let Some(bad) = chi_grid.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
        return Err(Error::domain(format!("sweep rapidities must be positive, got {bad}")));
    }
    if chi_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("sweep grid must be strictly increasing"));
    }
    let mut points = ordered_map(chi_grid, |&chi| scatter_point(j, &Kinematics::new(m, chi)?, pot))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut phases: Vec<f64> = points.iter().map(|p| p.phase).collect();
    unwrap_phases(&mut phases);
    for (p, phase) in points.iter_mut().zip(phases) {
        p.phase = phase;
    }
    Ok(points)
}
