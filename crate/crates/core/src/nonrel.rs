//! Schrödinger closed forms for one and two delta shells, and checks that
//! every relativistic observable approaches them as `m → ∞`.

use num_complex::Complex64;

use crate::boundstates::v0_of_w;
use crate::error::{Error, Result};
use crate::greens::green_partial;
use crate::kinematics::{rapidity_from_momentum, BoundEnergy, EquationVariant, Kinematics};
use crate::numerics::{ensure_finite, find_roots_scan, ComplexValue};
use crate::scattering::{amplitude, ShellPotential};

/// Regulator in the relative deviation `|rel - nr| / (|nr| + ε)`.
pub const DEVIATION_EPSILON: f64 = 1e-300;

const POLE_THRESHOLD: f64 = 1e-14;

/// Non-relativistic kinematics: momentum `q` or bound decay constant `κ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NrKinematics {
    Scattering { q: f64 },
    Bound { kappa: f64 },
}

impl NrKinematics {
    pub fn scattering(q: f64) -> Result<Self> {
        if !q.is_finite() || q < 0.0 {
            return Err(Error::domain(format!("momentum must be finite and non-negative, got {q}")));
        }
        Ok(NrKinematics::Scattering { q })
    }

    pub fn bound(kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::domain(format!("kappa must be positive, got {kappa}")));
        }
        Ok(NrKinematics::Bound { kappa })
    }
}

fn check_radial(r: f64) -> Result<()> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("radial coordinate must be finite and non-negative, got {r}")))
    }
}

fn momentum(q: f64) -> Result<f64> {
    if q == 0.0 {
        return Err(Error::Threshold);
    }
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::domain(format!("momentum must be positive, got {q}")));
    }
    Ok(q)
}

/// `G₀ = -(1/q)·sin(q r<)·e^{iq r>}`, or `-(1/κ)·sinh(κ r<)·e^{-κ r>}` on the
/// bound branch.
pub fn nr_green(kin: NrKinematics, r: f64, rp: f64) -> Result<ComplexValue> {
    check_radial(r)?;
    check_radial(rp)?;
    let (lo, hi) = if r < rp { (r, rp) } else { (rp, r) };
    match kin {
        NrKinematics::Scattering { q } => {
            let q = momentum(q)?;
            Ok(-(q * lo).sin() / q * Complex64::new(0.0, q * hi).exp())
        }
        NrKinematics::Bound { kappa } => {
            // sinh(κ r<)·e^{-κ r>} = (e^{-κ(r> - r<)} - e^{-κ(r> + r<)}) / 2
            let v = 0.5 * ((-kappa * (hi - lo)).exp() - (-kappa * (hi + lo)).exp());
            Ok(Complex64::new(-v / kappa, 0.0))
        }
    }
}

fn scatter_delta(pot: &ShellPotential, q: f64) -> Result<ComplexValue> {
    let e = |a: f64| Complex64::new(0.0, q * a).exp();
    let s = |a: f64| (q * a).sin();
    let delta = match pot.pair() {
        None => {
            let sh = pot.shells()[0];
            1.0 + sh.strength / q * e(sh.radius) * s(sh.radius)
        }
        Some((s1, s2)) => {
            let (v1, a1, v2, a2) = (s1.strength, s1.radius, s2.strength, s2.radius);
            1.0 + (v1 * e(a1) * s(a1) + v2 * e(a2) * s(a2)) / q
                + v1 * v2 / (q * q) * e(a2) * s(a1) * s(a2 - a1)
        }
    };
    if delta.norm() < POLE_THRESHOLD {
        return Err(Error::Pole { chi: q, what: "Delta0" });
    }
    Ok(delta)
}

/// Schrödinger s-wave amplitude.
pub fn nr_amplitude(pot: &ShellPotential, q: f64) -> Result<ComplexValue> {
    let q = momentum(q)?;
    let s = |a: f64| (q * a).sin();
    let delta = scatter_delta(pot, q)?;
    let numerator = match pot.pair() {
        None => {
            let sh = pot.shells()[0];
            sh.strength * s(sh.radius).powi(2)
        }
        Some((s1, s2)) => {
            let (v1, a1, v2, a2) = (s1.strength, s1.radius, s2.strength, s2.radius);
            v1 * s(a1).powi(2) + v2 * s(a2).powi(2) + v1 * v2 / q * s(a1) * s(a2) * s(a2 - a1)
        }
    };
    ensure_finite(-numerator / (q * q * delta), "non-relativistic amplitude")
}

/// Schrödinger s-wave scattering wave function.
pub fn nr_wavefunction(pot: &ShellPotential, q: f64, r: f64) -> Result<ComplexValue> {
    let q = momentum(q)?;
    check_radial(r)?;
    let kin = NrKinematics::Scattering { q };
    let s = |a: f64| (q * a).sin();
    let delta = scatter_delta(pot, q)?;
    let scattered = match pot.pair() {
        None => {
            let sh = pot.shells()[0];
            sh.strength * s(sh.radius) * nr_green(kin, r, sh.radius)?
        }
        Some((s1, s2)) => {
            let (v1, a1, v2, a2) = (s1.strength, s1.radius, s2.strength, s2.radius);
            let outer = s(a2) + v1 / q * s(a1) * s(a2 - a1);
            v1 * s(a1) * nr_green(kin, r, a1)? + v2 * outer * nr_green(kin, r, a2)?
        }
    };
    Ok((q * r).sin() + scattered / delta)
}

/// `V₀(κ) = -2κ / (1 - e^{-2κa})`, the strength binding a level at `κ`.
pub fn nr_v0_of_kappa(kappa: f64, a: f64) -> Result<f64> {
    if !(kappa.is_finite() && kappa > 0.0 && a.is_finite() && a > 0.0) {
        return Err(Error::domain(format!("kappa and a must be positive, got {kappa}, {a}")));
    }
    Ok(2.0 * kappa / (-2.0 * kappa * a).exp_m1())
}

/// `Δ₀(iκ)` for one or two shells; levels are its zeros.
pub fn nr_quantization(kappa: f64, pot: &ShellPotential) -> Result<f64> {
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::domain(format!("kappa must be positive, got {kappa}")));
    }
    let single = |v: f64, a: f64| -v / (2.0 * kappa) * (-2.0 * kappa * a).exp_m1();
    Ok(match pot.pair() {
        None => {
            let sh = pot.shells()[0];
            1.0 + single(sh.strength, sh.radius)
        }
        Some((s1, s2)) => {
            let (v1, a1, v2, a2) = (s1.strength, s1.radius, s2.strength, s2.radius);
            1.0 + single(v1, a1)
                + single(v2, a2)
                + v1 * v2 / (kappa * kappa) * (-kappa * a2).exp() * (kappa * a1).sinh() * (kappa * (a2 - a1)).sinh()
        }
    })
}

/// Two-shell `Δ₀(iκ)`.
pub fn nr_quantization_double(kappa: f64, pot: &ShellPotential) -> Result<f64> {
    if pot.is_single() {
        return Err(Error::Precondition("nr_quantization_double needs two shells".into()));
    }
    nr_quantization(kappa, pot)
}

/// Bound decay constants in `(0, kappa_max]` by scanning `n_scan` points.
pub fn nr_bound_kappas(pot: &ShellPotential, kappa_max: f64, n_scan: usize) -> Result<Vec<f64>> {
    if !(kappa_max.is_finite() && kappa_max > 0.0) {
        return Err(Error::domain(format!("kappa_max must be positive, got {kappa_max}")));
    }
    let lo = kappa_max * 1e-9;
    let roots = find_roots_scan(|k| nr_quantization(k, pot).unwrap_or(f64::NAN), lo, kappa_max, n_scan, 1e-14)?;
    Ok(roots.into_iter().map(|r| r.x).collect())
}

/// Quantity followed towards the non-relativistic limit.
#[derive(Clone, Debug, PartialEq)]
pub enum LimitObservable {
    /// Amplitude at fixed momentum `q`.
    Amplitude { pot: ShellPotential, q: f64 },
    /// Partial Green function at fixed momentum `q`.
    Green { r: f64, rp: f64, q: f64 },
    /// Single-shell binding strength at fixed `κ`, with `w = κ/m`.
    Quantization { a: f64, kappa: f64 },
}

impl LimitObservable {
    pub fn name(&self) -> &'static str {
        match self {
            LimitObservable::Amplitude { .. } => "amplitude",
            LimitObservable::Green { .. } => "green",
            LimitObservable::Quantization { .. } => "quantization",
        }
    }

    /// Non-relativistic value.
    pub fn nonrelativistic(&self) -> Result<ComplexValue> {
        match self {
            LimitObservable::Amplitude { pot, q } => nr_amplitude(pot, *q),
            LimitObservable::Green { r, rp, q } => nr_green(NrKinematics::scattering(*q)?, *r, *rp),
            LimitObservable::Quantization { a, kappa } => nr_v0_of_kappa(*kappa, *a).map(Complex64::from),
        }
    }

    /// Relativistic value of variant `j` at mass `m`.
    pub fn relativistic(&self, j: EquationVariant, m: f64) -> Result<ComplexValue> {
        match self {
            LimitObservable::Amplitude { pot, q } => {
                let kin = Kinematics::new(m, rapidity_from_momentum(*q, m)?)?;
                amplitude(j, &kin, pot)
            }
            LimitObservable::Green { r, rp, q } => {
                let kin = Kinematics::new(m, rapidity_from_momentum(*q, m)?)?;
                green_partial(j, &kin, *r, *rp)
            }
            LimitObservable::Quantization { a, kappa } => {
                let be = BoundEnergy::new(m, kappa / m)?;
                v0_of_w(j, &be, *a).map(Complex64::from)
            }
        }
    }
}

/// Relative deviations of one variant from the non-relativistic value over
/// an increasing mass list.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub masses: Vec<f64>,
    pub deviations: Vec<f64>,
    /// True iff the deviations strictly decrease.
    pub monotone: bool,
}

impl ConvergenceReport {
    pub fn last_deviation(&self) -> f64 {
        *self.deviations.last().unwrap()
    }
}

pub fn relative_deviation(rel: ComplexValue, nr: ComplexValue) -> f64 {
    (rel - nr).norm() / (nr.norm() + DEVIATION_EPSILON)
}

pub fn limit_convergence(j: EquationVariant, obs: &LimitObservable, masses: &[f64]) -> Result<ConvergenceReport> {
    if masses.len() < 3 {
        return Err(Error::Precondition("limit convergence needs at least three masses".into()));
    }
    if masses.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Precondition("masses must be strictly increasing".into()));
    }
    let nr = obs.nonrelativistic()?;
    let deviations = masses
        .iter()
        .map(|&m| obs.relativistic(j, m).map(|rel| relative_deviation(rel, nr)))
        .collect::<Result<Vec<f64>>>()?;
    let monotone = deviations.windows(2).all(|w| w[1] < w[0]);
    Ok(ConvergenceReport { masses: masses.to_vec(), deviations, monotone })
}

/// Largest pairwise difference between the variants at mass `m`, relative
/// to the non-relativistic value.
pub fn cross_variant_spread(obs: &LimitObservable, m: f64) -> Result<f64> {
    let nr = obs.nonrelativistic()?;
    let values = EquationVariant::ALL
        .iter()
        .map(|&j| obs.relativistic(j, m))
        .collect::<Result<Vec<_>>>()?;
    let mut spread = 0.0f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            spread = spread.max((*a - *b).norm() / (nr.norm() + DEVIATION_EPSILON));
        }
    }
    Ok(spread)
}
