//! Equation variants, rapidity/momentum/energy conversions and K-factors.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Lower edge of the bound rapidity window used by every solver.
pub const W_MIN: f64 = 1e-9;
/// Upper edge of the bound rapidity window used by every solver.
pub const W_MAX: f64 = FRAC_PI_2 - 1e-9;

/// Which Green function is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum EquationVariant {
    /// Logunov-Tavkhelidze, `j = 1`.
    LogunovTavkhelidze = 1,
    /// Kadyshevsky, `j = 2`.
    Kadyshevsky = 2,
    /// Modified Logunov-Tavkhelidze, `j = 3`.
    ModifiedLogunovTavkhelidze = 3,
    /// Modified Kadyshevsky, `j = 4`.
    ModifiedKadyshevsky = 4,
}

impl EquationVariant {
    pub const ALL: [EquationVariant; 4] = [
        EquationVariant::LogunovTavkhelidze,
        EquationVariant::Kadyshevsky,
        EquationVariant::ModifiedLogunovTavkhelidze,
        EquationVariant::ModifiedKadyshevsky,
    ];

    /// The integer label `j` in `1..=4`.
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(j: u8) -> Result<Self> {
        match j {
            1 => Ok(EquationVariant::LogunovTavkhelidze),
            2 => Ok(EquationVariant::Kadyshevsky),
            3 => Ok(EquationVariant::ModifiedLogunovTavkhelidze),
            4 => Ok(EquationVariant::ModifiedKadyshevsky),
            _ => Err(Error::domain(format!("equation variant must be 1..=4, got {j}"))),
        }
    }

    /// True for `j ∈ {1, 2}`, whose K-factor is `m·sinh 2χ`.
    pub fn has_double_rapidity_k(self) -> bool {
        matches!(
            self,
            EquationVariant::LogunovTavkhelidze | EquationVariant::Kadyshevsky
        )
    }
}

impl fmt::Display for EquationVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl TryFrom<u8> for EquationVariant {
    type Error = Error;

    fn try_from(j: u8) -> Result<Self> {
        EquationVariant::from_index(j)
    }
}

impl FromStr for EquationVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let j: u8 = s
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("equation variant must be 1..=4, got {s:?}")))?;
        EquationVariant::from_index(j)
    }
}

fn check_mass(m: f64) -> Result<()> {
    if m.is_finite() && m > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("mass must be positive and finite, got {m}")))
    }
}

/// Scattering-branch kinematics: mass and real rapidity `chi ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kinematics {
    mass: f64,
    rapidity: f64,
}

impl Kinematics {
    pub fn new(mass: f64, rapidity: f64) -> Result<Self> {
        check_mass(mass)?;
        if !(rapidity.is_finite() && rapidity >= 0.0) {
            return Err(Error::domain(format!(
                "rapidity must be finite and non-negative, got {rapidity}"
            )));
        }
        Ok(Kinematics { mass, rapidity })
    }

    pub fn from_momentum(mass: f64, q: f64) -> Result<Self> {
        let chi = rapidity_from_momentum(q, mass)?;
        Kinematics::new(mass, chi)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    /// Relativistic momentum `q = m·sinh χ`.
    pub fn momentum(&self) -> f64 {
        self.mass * self.rapidity.sinh()
    }

    /// Single-particle energy `E = m·cosh χ`, evaluated as `hypot(q, m)` so
    /// that the mass shell closes to rounding.
    pub fn energy(&self) -> f64 {
        self.momentum().hypot(self.mass)
    }

    pub(crate) fn require_above_threshold(&self) -> Result<()> {
        if self.rapidity == 0.0 {
            Err(Error::Threshold)
        } else {
            Ok(())
        }
    }
}

/// Bound-branch kinematics: `χ = i·w` with `0 < w < π/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundEnergy {
    mass: f64,
    w: f64,
}

impl BoundEnergy {
    pub fn new(mass: f64, w: f64) -> Result<Self> {
        check_mass(mass)?;
        if !(w > 0.0 && w < FRAC_PI_2) {
            return Err(Error::domain(format!(
                "bound rapidity parameter w must lie in (0, pi/2), got {w}"
            )));
        }
        Ok(BoundEnergy { mass, w })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    /// Single-particle energy `E = m·cos w`.
    pub fn energy(&self) -> f64 {
        self.mass * self.w.cos()
    }

    /// Two-particle energy `2E = 2m·cos w`.
    pub fn two_particle_energy(&self) -> f64 {
        2.0 * self.energy()
    }
}

pub fn rapidity_from_momentum(q: f64, m: f64) -> Result<f64> {
    check_mass(m)?;
    if !(q.is_finite() && q >= 0.0) {
        return Err(Error::domain(format!(
            "momentum must be finite and non-negative, got {q}"
        )));
    }
    Ok((q / m).asinh())
}

pub fn momentum_from_rapidity(chi: f64, m: f64) -> Result<f64> {
    Ok(Kinematics::new(m, chi)?.momentum())
}

/// `K = m·sinh 2χ` for `j ∈ {1, 2}` and `2m·sinh χ` for `j ∈ {3, 4}`.
pub fn k_factor(j: EquationVariant, kin: &Kinematics) -> Result<f64> {
    kin.require_above_threshold()?;
    let (m, chi) = (kin.mass, kin.rapidity);
    Ok(if j.has_double_rapidity_k() {
        m * (2.0 * chi).sinh()
    } else {
        2.0 * m * chi.sinh()
    })
}

/// K-factor at complex rapidity; used for analytic-continuation checks.
pub fn k_factor_complex(j: EquationVariant, m: f64, chi: Complex64) -> Complex64 {
    if j.has_double_rapidity_k() {
        m * (2.0 * chi).sinh()
    } else {
        2.0 * m * chi.sinh()
    }
}

/// `K(iw)/i`: `m·sin 2w` for `j ∈ {1, 2}`, `2m·sin w` for `j ∈ {3, 4}`.
pub fn k_factor_bound(j: EquationVariant, be: &BoundEnergy) -> f64 {
    let (m, w) = (be.mass, be.w);
    if j.has_double_rapidity_k() {
        m * (2.0 * w).sin()
    } else {
        2.0 * m * w.sin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    fn ulps(x: f64) -> f64 {
        f64::EPSILON * x.abs()
    }

    #[test]
    fn rapidity_examples() {
        assert_eq!(rapidity_from_momentum(0.0, 1.0).unwrap(), 0.0);
        let chi = rapidity_from_momentum(0.5f64.sinh(), 1.0).unwrap();
        assert!((chi - 0.5).abs() <= 4.0 * ulps(0.5));
        let chi = rapidity_from_momentum(0.521095, 1.0).unwrap();
        assert!((chi.sinh() - 0.521095).abs() < 1e-6);
        assert!((chi - 0.5).abs() < 1e-5);
    }

    #[test]
    fn rejects_bad_mass() {
        assert!(matches!(rapidity_from_momentum(1.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(rapidity_from_momentum(1.0, -2.0), Err(Error::Domain(_))));
        assert!(Kinematics::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn k_factor_examples() {
        let kin = Kinematics::new(2.0, 1f64.asinh()).unwrap();
        let k3 = k_factor(EquationVariant::ModifiedLogunovTavkhelidze, &kin).unwrap();
        assert!((k3 - 4.0).abs() < 1e-14);
        for chi in [1e-8, 0.3, 1.7, 6.0] {
            let kin = Kinematics::new(1.3, chi).unwrap();
            let k = |j| k_factor(j, &kin).unwrap();
            assert_eq!(k(EquationVariant::LogunovTavkhelidze), k(EquationVariant::Kadyshevsky));
            assert_eq!(
                k(EquationVariant::ModifiedLogunovTavkhelidze),
                k(EquationVariant::ModifiedKadyshevsky)
            );
        }
        let tiny = Kinematics::new(1.0, 1e-12).unwrap();
        assert!(k_factor(EquationVariant::LogunovTavkhelidze, &tiny).unwrap() < 1e-11);
    }

    #[test]
    fn threshold_is_an_error() {
        let kin = Kinematics::new(1.0, 0.0).unwrap();
        assert_eq!(k_factor(EquationVariant::Kadyshevsky, &kin), Err(Error::Threshold));
    }

    #[test]
    fn bound_k_factor() {
        let be = BoundEnergy::new(1.0, FRAC_PI_4).unwrap();
        assert!((k_factor_bound(EquationVariant::LogunovTavkhelidze, &be) - 1.0).abs() < 1e-15);
        let be = BoundEnergy::new(1.0, FRAC_PI_6).unwrap();
        assert!((k_factor_bound(EquationVariant::ModifiedLogunovTavkhelidze, &be) - 1.0).abs() < 1e-15);
        assert!(BoundEnergy::new(1.0, 0.0).is_err());
        assert!(BoundEnergy::new(1.0, FRAC_PI_2).is_err());
    }

    #[test]
    fn bound_k_factor_is_continuation() {
        for j in EquationVariant::ALL {
            for w in [0.1, 0.7, 1.3] {
                let be = BoundEnergy::new(1.7, w).unwrap();
                let kc = k_factor_complex(j, 1.7, Complex64::new(0.0, w));
                let kb = k_factor_bound(j, &be);
                assert!((kc - Complex64::new(0.0, kb)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("3".parse::<EquationVariant>().unwrap().index(), 3);
        assert!("5".parse::<EquationVariant>().is_err());
        assert!(EquationVariant::try_from(0).is_err());
    }

    proptest::proptest! {
        #[test]
        fn mass_shell(m in 0.01f64..100.0, chi in 0.0f64..20.0) {
            let kin = Kinematics::new(m, chi).unwrap();
            let (e, q) = (kin.energy(), kin.momentum());
            proptest::prop_assert!(q >= 0.0 && e >= m);
            // exact squares via fma so only the kinematics rounding is measured
            let (e2, q2, m2) = (e * e, q * q, m * m);
            let (de, dq, dm) = (e.mul_add(e, -e2), q.mul_add(q, -q2), m.mul_add(m, -m2));
            let residual = ((e2 - q2 - m2) + (de - dq - dm)).abs();
            proptest::prop_assert!(residual <= 4.0 * ulps(e2), "residual {residual:e}");
            proptest::prop_assert!((e - m * chi.cosh()).abs() <= 4.0 * ulps(e));
        }

        #[test]
        fn rapidity_round_trip(chi in 1e-8f64..20.0) {
            let q = momentum_from_rapidity(chi, 1.0).unwrap();
            let back = rapidity_from_momentum(q, 1.0).unwrap();
            proptest::prop_assert!((back - chi).abs() <= 4.0 * ulps(chi), "{chi} -> {back}");
        }
    }
}
