use std::f64::consts::PI;

use deltashell::boundstates::{
    bound_wavefunction, det_bound, solve_w_double, solve_w_single, v0_of_w, v1_pm_of_w, QuadraticRoots,
};
use deltashell::greens::{green_partial, green_partial_bound, green_spectral_oracle, Branch};
use deltashell::kinematics::k_factor;
use deltashell::scattering::{amplitude, amplitude_explicit, scatter_point, zero_condition};
use deltashell::{BoundEnergy, EquationVariant, Kinematics, ShellPotential};
use proptest::prelude::*;

fn variant() -> impl Strategy<Value = EquationVariant> {
    (1u8..=4).prop_map(|j| EquationVariant::from_index(j).unwrap())
}

fn potential() -> impl Strategy<Value = ShellPotential> {
    prop_oneof![
        (-5.0f64..5.0, 0.5f64..6.0).prop_map(|(v, a)| ShellPotential::single(v, a).unwrap()),
        (-5.0f64..5.0, 0.5f64..6.0, -5.0f64..5.0, 0.5f64..6.0)
            .prop_map(|(v1, a1, v2, a2)| ShellPotential::double(v1, a1, v2, a2).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unitarity_and_s_matrix(j in variant(), chi in 0.05f64..5.0, pot in potential()) {
        let kin = Kinematics::new(1.0, chi).unwrap();
        let p = scatter_point(j, &kin, &pot).unwrap();
        prop_assert!(p.unitarity_defect < 1e-12 * (1.0 + p.f.norm_sqr()), "{p:?}");
        prop_assert!(p.representation_defect < 1e-12);
        prop_assert!((p.s_matrix.norm() - 1.0).abs() < 1e-12);
        prop_assert!(p.sigma0 >= 0.0);
    }

    #[test]
    fn green_imaginary_part(j in variant(), chi in 0.01f64..6.0, a in 0.0f64..8.0, b in 0.0f64..8.0) {
        let kin = Kinematics::new(1.0, chi).unwrap();
        let g = green_partial(j, &kin, a, b).unwrap();
        let k = k_factor(j, &kin).unwrap();
        let expected = -2.0 * (chi * a).sin() * (chi * b).sin() / k;
        prop_assert!((g.im - expected).abs() < 1e-12 * (1.0 + expected.abs()));
    }

    #[test]
    fn explicit_single_shell_agrees(j in variant(), chi in 0.05f64..5.0, v in -5.0f64..5.0, a in 0.5f64..6.0) {
        let kin = Kinematics::new(1.0, chi).unwrap();
        let pot = ShellPotential::single(v, a).unwrap();
        let g = amplitude(j, &kin, &pot).unwrap();
        let e = amplitude_explicit(j, &kin, &pot).unwrap();
        prop_assert!((g - e).norm() <= 1e-12 * g.norm() + 1e-300);
    }

    #[test]
    fn explicit_double_shell_agrees(chi in 0.05f64..5.0, pot in potential()) {
        prop_assume!(!pot.is_single());
        let j = EquationVariant::ModifiedLogunovTavkhelidze;
        let kin = Kinematics::new(1.0, chi).unwrap();
        let g = amplitude(j, &kin, &pot).unwrap();
        let e = amplitude_explicit(j, &kin, &pot).unwrap();
        prop_assert!((g - e).norm() <= 1e-12 * g.norm() + 1e-300);
    }

    #[test]
    fn zero_condition_matches_amplitude_sign(j in variant(), chi in 0.05f64..5.0, pot in potential()) {
        prop_assume!(!pot.is_single());
        // |f|² ∝ Z² / |Δ|², so Z = 0 exactly where f = 0
        let kin = Kinematics::new(1.0, chi).unwrap();
        let z = zero_condition(j, &kin, &pot).unwrap();
        let f = amplitude(j, &kin, &pot).unwrap();
        let q = kin.momentum();
        let k = k_factor(j, &kin).unwrap();
        let den = deltashell::scattering::scattering_denominator(j, &kin, &pot).unwrap();
        let predicted = 2.0 * z.abs() / (q * k * den.norm());
        prop_assert!((f.norm() - predicted).abs() < 1e-9 * (f.norm() + 1e-12));
    }

    #[test]
    fn quadratic_branch(j in variant(), w in 0.05f64..1.5, a2 in 1.2f64..5.0, alpha in -2.0f64..2.0) {
        prop_assume!(alpha.abs() > 1e-3);
        let be = BoundEnergy::new(1.0, w).unwrap();
        let g = |a: f64, b: f64| green_partial_bound(j, &be, a, b);
        let lead = alpha * (g(1.0, 1.0) * g(a2, a2) - g(1.0, a2).powi(2));
        match v1_pm_of_w(j, &be, 1.0, a2, alpha).unwrap() {
            QuadraticRoots::Real { plus, minus } => {
                prop_assert!(((plus * minus) * lead - 1.0).abs() < 1e-10);
                for v1 in [plus, minus] {
                    let pot = ShellPotential::double(v1, 1.0, alpha * v1, a2).unwrap();
                    let d = det_bound(j, &be, &pot).unwrap();
                    let scale = 1.0 + (v1 * g(1.0, 1.0)).abs() + (alpha * v1 * g(a2, a2)).abs();
                    prop_assert!(d.abs() < 1e-10 * scale * scale, "det {d:e}");
                }
            }
            QuadraticRoots::None => prop_assert!(alpha < 0.0),
            QuadraticRoots::Degenerate(_) => {}
        }
    }

    #[test]
    fn single_shell_binds_at_most_once(j in variant(), v0 in -20.0f64..-0.01) {
        let shell = deltashell::Shell::new(v0, 1.0).unwrap();
        let levels = solve_w_single(j, 1.0, shell, 2000).unwrap();
        prop_assert!(levels.len() <= 1);
    }
}

#[test]
fn amplitude_zeros_first_ten() {
    let pot = ShellPotential::single(2.0, 5.0).unwrap();
    for j in EquationVariant::ALL {
        for n in 1..=10 {
            let kin = Kinematics::new(1.0, PI * n as f64 / 5.0).unwrap();
            assert!(amplitude(j, &kin, &pot).unwrap().norm() < 1e-12);
        }
    }
}

#[test]
fn spectral_oracle_grid() {
    for j in EquationVariant::ALL {
        for w in [0.3, 0.8, 1.3] {
            let be = BoundEnergy::new(1.0, w).unwrap();
            for r in [0.5, 1.5, 3.0] {
                let closed = green_partial_bound(j, &be, r, 1.0);
                let spectral = green_spectral_oracle(j, &Branch::Bound(be), r, 1.0, 1e-9).unwrap();
                assert!((closed - spectral).abs() < 1e-6, "j={j} w={w} r={r}: {closed} vs {spectral}");
            }
        }
    }
}

#[test]
fn paired_shell_root_counts() {
    for (v1, v2) in [(7.0, -2.0), (-2.0, -1.0)] {
        let pot = ShellPotential::double(v1, 1.0, v2, 3.0).unwrap();
        for j in EquationVariant::ALL {
            let n = solve_w_double(j, 1.0, &pot, 2000).unwrap().len();
            assert!(matches!(n, 1 | 2), "V1={v1} V2={v2} j={j}: {n}");
        }
    }
}

#[test]
fn normalization_across_variants() {
    for (j, w) in [
        (EquationVariant::LogunovTavkhelidze, 0.4),
        (EquationVariant::ModifiedLogunovTavkhelidze, 0.6),
        (EquationVariant::ModifiedKadyshevsky, 1.1),
    ] {
        let v0 = v0_of_w(j, &BoundEnergy::new(1.0, w).unwrap(), 1.0).unwrap();
        let pot = ShellPotential::single(v0, 1.0).unwrap();
        let (psi, level) = bound_wavefunction(j, 1.0, w, &pot).unwrap();
        assert!((psi.norm_integral(1e-12).unwrap() - 1.0).abs() < 1e-8);
        assert!(level.residual < 1e-10);
    }
}
