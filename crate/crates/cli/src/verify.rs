//! Oracle suites behind `deltashell verify`.

use std::fmt;

use deltashell::greens::{green_partial_bound, green_spectral_oracle, Branch};
use deltashell::nonrel::{cross_variant_spread, limit_convergence, LimitObservable};
use deltashell::scattering::{amplitude, amplitude_explicit, scatter_point};
use deltashell::{BoundEnergy, EquationVariant, Kinematics, ShellPotential};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::Group;
use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct GroupReport {
    pub group: Group,
    pub checks: usize,
    pub worst: f64,
    pub tolerance: f64,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.worst.is_finite() && self.worst <= self.tolerance
    }
}

impl fmt::Display for GroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.group {
            Group::TwoPath => "two-path",
            Group::Spectral => "spectral",
            Group::Unitarity => "unitarity",
            Group::Limits => "limits",
        };
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{name:<10} {status}  checks={:<5} worst={:.3e}  tol={:.1e}", self.checks, self.worst, self.tolerance)
    }
}

fn random_variant(rng: &mut ChaCha8Rng) -> EquationVariant {
    EquationVariant::from_index(rng.gen_range(1..=4)).unwrap()
}

fn random_potential(rng: &mut ChaCha8Rng, double: bool) -> Result<ShellPotential, CliError> {
    let (v1, a1) = (rng.gen_range(-5.0..5.0), rng.gen_range(0.5..6.0));
    Ok(if double {
        ShellPotential::double(v1, a1, rng.gen_range(-5.0..5.0), rng.gen_range(0.5..6.0))?
    } else {
        ShellPotential::single(v1, a1)?
    })
}

fn perturbed(pot: &ShellPotential, dv: f64) -> Result<ShellPotential, CliError> {
    let s = pot.shells();
    Ok(match pot.pair() {
        None => ShellPotential::single(s[0].strength + dv, s[0].radius)?,
        Some((a, b)) => ShellPotential::double(a.strength + dv, a.radius, b.strength, b.radius)?,
    })
}

/// Generic against explicit amplitudes: 50 single-shell points per variant
/// and 50 two-shell points for `j = 3`.
pub fn two_path(rng: &mut ChaCha8Rng, perturb_v0: f64) -> Result<GroupReport, CliError> {
    let mut worst = 0.0f64;
    let mut checks = 0;
    let mut cases = Vec::new();
    for j in EquationVariant::ALL {
        for _ in 0..50 {
            cases.push((j, random_potential(rng, false)?));
        }
    }
    for _ in 0..50 {
        cases.push((EquationVariant::ModifiedLogunovTavkhelidze, random_potential(rng, true)?));
    }
    for (j, pot) in cases {
        let kin = Kinematics::new(1.0, rng.gen_range(0.05..5.0))?;
        let g = amplitude(j, &kin, &pot)?;
        let e = amplitude_explicit(j, &kin, &perturbed(&pot, perturb_v0)?)?;
        worst = worst.max((g - e).norm() / g.norm().max(1e-300));
        checks += 1;
    }
    Ok(GroupReport { group: Group::TwoPath, checks, worst, tolerance: 1e-12 })
}

/// Closed-form bound-branch Green functions against the spectral integral.
pub fn spectral() -> Result<GroupReport, CliError> {
    let mut worst = 0.0f64;
    let mut checks = 0;
    for j in EquationVariant::ALL {
        for w in [0.3, 0.8, 1.3] {
            let be = BoundEnergy::new(1.0, w)?;
            for r in [0.5, 1.5, 3.0] {
                let closed = green_partial_bound(j, &be, r, 1.0);
                let oracle = green_spectral_oracle(j, &Branch::Bound(be), r, 1.0, 1e-9)?;
                worst = worst.max((closed - oracle).abs());
                checks += 1;
            }
        }
    }
    Ok(GroupReport { group: Group::Spectral, checks, worst, tolerance: 1e-6 })
}

/// `|Im f - q|f|²| / (1 + |f|²)` and the S-matrix representation defect over
/// 200 random points.
pub fn unitarity(rng: &mut ChaCha8Rng) -> Result<GroupReport, CliError> {
    let mut worst = 0.0f64;
    for i in 0..200 {
        let j = random_variant(rng);
        let pot = random_potential(rng, i % 2 == 1)?;
        let kin = Kinematics::new(1.0, rng.gen_range(0.05..5.0))?;
        let p = scatter_point(j, &kin, &pot)?;
        worst = worst
            .max(p.unitarity_defect / (1.0 + p.f.norm_sqr()))
            .max(p.representation_defect)
            .max((p.s_matrix.norm() - 1.0).abs());
    }
    Ok(GroupReport { group: Group::Unitarity, checks: 200, worst, tolerance: 1e-12 })
}

/// Deviation at the largest mass; a non-monotone sequence or an excessive
/// cross-variant spread counts as infinite deviation.
pub fn limits() -> Result<GroupReport, CliError> {
    let masses = [10.0, 100.0, 1000.0];
    let observables = [
        LimitObservable::Amplitude { pot: ShellPotential::single(2.0, 5.0)?, q: 0.6 },
        LimitObservable::Green { r: 1.2, rp: 0.4, q: 0.5 },
        LimitObservable::Quantization { a: 1.0, kappa: 0.5 },
    ];
    let mut worst = 0.0f64;
    let mut checks = 0;
    for obs in &observables {
        let mut worst_here = 0.0f64;
        for j in EquationVariant::ALL {
            let report = limit_convergence(j, obs, &masses)?;
            let d = if report.monotone { report.last_deviation() } else { f64::INFINITY };
            worst_here = worst_here.max(d);
            checks += 1;
        }
        if cross_variant_spread(obs, 1000.0)? >= 2.0 * worst_here {
            worst_here = f64::INFINITY;
        }
        worst = worst.max(worst_here);
    }
    Ok(GroupReport { group: Group::Limits, checks, worst, tolerance: 1e-2 })
}

pub fn run_groups(only: Option<Group>, perturb_v0: f64, seed: u64) -> Result<Vec<GroupReport>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wanted = |g: Group| only.is_none_or(|o| o == g);
    let mut out = Vec::new();
    if wanted(Group::TwoPath) {
        out.push(two_path(&mut rng, perturb_v0)?);
    }
    if wanted(Group::Spectral) {
        out.push(spectral()?);
    }
    if wanted(Group::Unitarity) {
        out.push(unitarity(&mut rng)?);
    }
    if wanted(Group::Limits) {
        out.push(limits()?);
    }
    Ok(out)
}
