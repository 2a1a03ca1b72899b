//! Green functions of the four equation variants in the relativistic
//! configurational representation.
//!
//! The one-dimensional ("line") Green function `G(χ, r)` is a ratio of
//! hyperbolic functions with complex argument `(B + iχ)·m·r`, where
//! `B = π/2` for `j ∈ {1, 3}` and `B = π` for `j ∈ {2, 4}`. The partial s-wave
//! Green function follows from the method of images,
//! `G(χ, r, r') = G(χ, r - r') - G(χ, r + r')`.
//!
//! On the bound branch `χ = i·w` every expression becomes real; those forms
//! are implemented separately in real arithmetic so the complex path can be
//! checked against them.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::{k_factor_bound, k_factor_complex, BoundEnergy, EquationVariant, Kinematics};
use crate::numerics::{integrate_semi_infinite_partitioned, ComplexValue};

/// Below this `|m·r|` the hyperbolic ratios are evaluated from their series.
const TAYLOR_RADIUS: f64 = 1e-4;
/// Above this `B·m·r` the ratios switch to the exponential form.
const ASYMPTOTIC_ARG: f64 = 30.0;

/// Which branch of the energy plane a Green function is evaluated on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Branch {
    Scattering(Kinematics),
    Bound(BoundEnergy),
}

impl Branch {
    pub fn mass(&self) -> f64 {
        match self {
            Branch::Scattering(k) => k.mass(),
            Branch::Bound(b) => b.mass(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Profile {
    Sinh,
    Cosh,
}

fn profile(j: EquationVariant) -> (Profile, f64) {
    match j {
        EquationVariant::LogunovTavkhelidze => (Profile::Sinh, FRAC_PI_2),
        EquationVariant::Kadyshevsky => (Profile::Sinh, PI),
        EquationVariant::ModifiedLogunovTavkhelidze => (Profile::Cosh, FRAC_PI_2),
        EquationVariant::ModifiedKadyshevsky => (Profile::Sinh, PI),
    }
}

/// `sinh(a·x)/sinh(b·x)` or `cosh(a·x)/cosh(b·x)` for `x ≥ 0`, real `b > 0`.
fn ratio_complex(p: Profile, a: Complex64, b: f64, x: f64) -> Complex64 {
    if x < TAYLOR_RADIUS {
        let za = a * a * (x * x);
        let zb = b * b * x * x;
        return match p {
            Profile::Sinh => {
                a / b * (1.0 + za / 6.0 + za * za / 120.0) / (1.0 + zb / 6.0 + zb * zb / 120.0)
            }
            Profile::Cosh => (1.0 + za / 2.0 + za * za / 24.0) / (1.0 + zb / 2.0 + zb * zb / 24.0),
        };
    }
    if b * x > ASYMPTOTIC_ARG {
        let lead = ((a - b) * x).exp();
        let ea = (-2.0 * a * x).exp();
        let eb = (-2.0 * b * x).exp();
        return match p {
            Profile::Sinh => lead * (1.0 - ea) / (1.0 - eb),
            Profile::Cosh => lead * (1.0 + ea) / (1.0 + eb),
        };
    }
    match p {
        Profile::Sinh => (a * x).sinh() / (b * x).sinh(),
        Profile::Cosh => (a * x).cosh() / (b * x).cosh(),
    }
}

fn ratio_real(p: Profile, a: f64, b: f64, x: f64) -> f64 {
    if x < TAYLOR_RADIUS {
        let za = a * a * x * x;
        let zb = b * b * x * x;
        return match p {
            Profile::Sinh => {
                a / b * (1.0 + za / 6.0 + za * za / 120.0) / (1.0 + zb / 6.0 + zb * zb / 120.0)
            }
            Profile::Cosh => (1.0 + za / 2.0 + za * za / 24.0) / (1.0 + zb / 2.0 + zb * zb / 24.0),
        };
    }
    if b * x > ASYMPTOTIC_ARG {
        let lead = ((a - b) * x).exp();
        let ea = (-2.0 * a * x).exp();
        let eb = (-2.0 * b * x).exp();
        return match p {
            Profile::Sinh => lead * (1.0 - ea) / (1.0 - eb),
            Profile::Cosh => lead * (1.0 + ea) / (1.0 + eb),
        };
    }
    match p {
        Profile::Sinh => (a * x).sinh() / (b * x).sinh(),
        Profile::Cosh => (a * x).cosh() / (b * x).cosh(),
    }
}

/// `1/cosh(π·x/2)` without overflow.
fn sech_half_pi(x: f64) -> f64 {
    let y = FRAC_PI_2 * x;
    if y > ASYMPTOTIC_ARG {
        let e = (-y).exp();
        2.0 * e / (1.0 + e * e)
    } else {
        1.0 / y.cosh()
    }
}

/// Real term of the `j = 2` line Green function without the `1/(4m·cosh χ)`
/// prefactor. Shared by both branches.
fn kadyshevsky_contact(x: f64) -> f64 {
    sech_half_pi(x)
}

fn check_coordinate(r: f64, name: &str) -> Result<()> {
    if r.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {r}")))
    }
}

fn check_radial(r: f64, name: &str) -> Result<()> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite and non-negative, got {r}")))
    }
}

/// Line Green function at arbitrary complex rapidity.
///
/// Valid for `|Im χ| < B`; used directly for real rapidity and as the
/// analytic-continuation reference for the bound-branch forms.
pub fn green_line_complex(j: EquationVariant, m: f64, chi: Complex64, r: f64) -> Complex64 {
    let (p, b) = profile(j);
    let x = m * r.abs();
    let k = k_factor_complex(j, m, chi);
    let a = Complex64::new(b, 0.0) + Complex64::i() * chi;
    let mut g = -Complex64::i() * ratio_complex(p, a, b, x) / k;
    if j == EquationVariant::Kadyshevsky {
        g += kadyshevsky_contact(x) / (4.0 * m * chi.cosh());
    }
    g
}

/// Partial Green function at arbitrary complex rapidity.
pub fn green_partial_complex(j: EquationVariant, m: f64, chi: Complex64, r: f64, rp: f64) -> Complex64 {
    green_line_complex(j, m, chi, r - rp) - green_line_complex(j, m, chi, r + rp)
}

/// Line Green function `G_(j)(χ, r)` at real rapidity `χ > 0`; even in `r`.
pub fn green_line(j: EquationVariant, kin: &Kinematics, r: f64) -> Result<ComplexValue> {
    kin.require_above_threshold()?;
    check_coordinate(r, "r")?;
    Ok(green_line_complex(j, kin.mass(), kin.rapidity().into(), r))
}

/// Partial s-wave Green function `G_(j)(χ, r, r')` at real rapidity.
pub fn green_partial(j: EquationVariant, kin: &Kinematics, r: f64, rp: f64) -> Result<ComplexValue> {
    kin.require_above_threshold()?;
    check_radial(r, "r")?;
    check_radial(rp, "r'")?;
    Ok(green_partial_complex(j, kin.mass(), kin.rapidity().into(), r, rp))
}

/// Line Green function on the bound branch `χ = i·w`, in real arithmetic.
///
/// For example `j = 3` gives `-cosh((π/2 - w)·m·r) / (2m·sin w · cosh(π·m·r/2))`.
pub fn green_line_bound(j: EquationVariant, be: &BoundEnergy, r: f64) -> f64 {
    let (p, b) = profile(j);
    let (m, w) = (be.mass(), be.w());
    let x = m * r.abs();
    let mut g = -ratio_real(p, b - w, b, x) / k_factor_bound(j, be);
    if j == EquationVariant::Kadyshevsky {
        g += kadyshevsky_contact(x) / (4.0 * m * w.cos());
    }
    g
}

/// Partial Green function on the bound branch.
pub fn green_partial_bound(j: EquationVariant, be: &BoundEnergy, r: f64, rp: f64) -> f64 {
    green_line_bound(j, be, r - rp) - green_line_bound(j, be, r + rp)
}

/// Partial Green function on either branch, as a complex number.
pub fn green_partial_on(j: EquationVariant, branch: &Branch, r: f64, rp: f64) -> Result<ComplexValue> {
    match branch {
        Branch::Scattering(kin) => green_partial(j, kin, r, rp),
        Branch::Bound(be) => {
            check_radial(r, "r")?;
            check_radial(rp, "r'")?;
            Ok(green_partial_bound(j, be, r, rp).into())
        }
    }
}

/// Momentum-space Green function times `E_k`, evaluated at `E_q = m·cos w`
/// and `E_k = m·cosh χ_k`. Differences of energies are written in
/// cancellation-free form.
fn momentum_kernel(j: EquationVariant, m: f64, w: f64, chi_k: f64) -> f64 {
    let e_k = m * chi_k.cosh();
    // E_k^2 - E_q^2 = m^2 (sinh^2 χ_k + sin^2 w)
    let sq_gap = m * m * (chi_k.sinh().powi(2) + w.sin().powi(2));
    // E_k - E_q = 2m (sinh^2(χ_k/2) + sin^2(w/2))
    let gap = 2.0 * m * ((0.5 * chi_k).sinh().powi(2) + (0.5 * w).sin().powi(2));
    match j {
        EquationVariant::LogunovTavkhelidze => -m / sq_gap,
        EquationVariant::Kadyshevsky => -m / (2.0 * gap * e_k),
        EquationVariant::ModifiedLogunovTavkhelidze => -e_k / sq_gap,
        EquationVariant::ModifiedKadyshevsky => -1.0 / (2.0 * gap),
    }
}

/// Partial Green function on the bound branch from its spectral
/// representation, `(2/π)∫₀^∞ sin(χ_k m r)·G̃(E_q, k)·E_k·sin(χ_k m r') dχ_k`,
/// by direct quadrature. Independent of the closed forms above.
pub fn green_spectral_oracle(j: EquationVariant, branch: &Branch, r: f64, rp: f64, tol: f64) -> Result<f64> {
    let be = match branch {
        Branch::Bound(be) => be,
        Branch::Scattering(_) => {
            return Err(Error::Unsupported(
                "spectral Green function at real rapidity needs the i0 prescription",
            ))
        }
    };
    check_radial(r, "r")?;
    check_radial(rp, "r'")?;
    if !(1e-10..1.0).contains(&tol) {
        return Err(Error::domain(format!("oracle tolerance must lie in [1e-10, 1), got {tol}")));
    }
    let (m, w) = (be.mass(), be.w());
    let integrand = |chi_k: f64| (chi_k * m * r).sin() * momentum_kernel(j, m, w, chi_k) * (chi_k * m * rp).sin();
    let half_period = PI / (m * r.max(rp).max(1.0));
    // every kernel decays at least like exp(-χ_k)
    let res = integrate_semi_infinite_partitioned(integrand, 0.0, 1.0, tol, Some(half_period))?;
    Ok(2.0 / PI * res.value)
}
