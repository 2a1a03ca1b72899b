//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::Command;

use deltashell::boundstates::{
    bound_wavefunction, det_bound, solve_w_double, solve_w_single, v0_of_w, v1_pm_of_w, QuadraticRoots,
};
use deltashell::greens::{green_partial, green_partial_bound, green_spectral_oracle, Branch};
use deltashell::kinematics::{k_factor, W_MAX, W_MIN};
use deltashell::nonrel::{cross_variant_spread, limit_convergence, LimitObservable};
use deltashell::numerics::linspace;
use deltashell::scattering::{
    amplitude, amplitude_explicit, phase_tangent_closed_form, scan_zero_locus, scatter_point, sweep, ZeroScan,
};
use deltashell::{BoundEnergy, EquationVariant, Kinematics, Shell, ShellPotential};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn variant(rng: &mut ChaCha8Rng) -> EquationVariant {
    EquationVariant::from_index(rng.gen_range(1..=4)).unwrap()
}

fn random_potential(rng: &mut ChaCha8Rng, double: bool) -> ShellPotential {
    let (v1, a1) = (rng.gen_range(-5.0..5.0), rng.gen_range(0.5..6.0));
    if double {
        ShellPotential::double(v1, a1, rng.gen_range(-5.0..5.0), rng.gen_range(0.5..6.0)).unwrap()
    } else {
        ShellPotential::single(v1, a1).unwrap()
    }
}

fn repulsive_shell() -> ShellPotential {
    ShellPotential::single(2.0, 5.0).unwrap()
}

fn opposite_pair() -> ShellPotential {
    ShellPotential::double(1.0, 3.0, -1.0, 4.0).unwrap()
}

fn unitarity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut count = 0;
    for i in 0..200 {
        let pot = random_potential(&mut rng, i % 2 == 1);
        let kin = Kinematics::new(1.0, rng.gen_range(0.05..5.0)).unwrap();
        for j in EquationVariant::ALL {
            let p = scatter_point(j, &kin, &pot).map_err(|e| e.to_string())?;
            worst = worst.max(p.unitarity_defect / (1.0 + p.f.norm_sqr()));
            count += 1;
        }
    }
    let grid = linspace(0.05, 4.0, 800);
    for pot in [repulsive_shell(), opposite_pair()] {
        for j in EquationVariant::ALL {
            for p in sweep(j, 1.0, &pot, &grid).map_err(|e| e.to_string())? {
                worst = worst.max(p.unitarity_defect / (1.0 + p.f.norm_sqr()));
                count += 1;
            }
        }
    }
    check(worst < 1e-12, format!("{count} points, worst scaled defect {worst:.2e}"))
}

fn green_imaginary_part() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let j = variant(&mut rng);
        let kin = Kinematics::new(1.0, rng.gen_range(0.05..5.0)).unwrap();
        let (a, b) = (rng.gen_range(0.0..8.0), rng.gen_range(0.0..8.0));
        let g = green_partial(j, &kin, a, b).unwrap();
        let chi = kin.rapidity();
        let expected = -2.0 * (chi * a).sin() * (chi * b).sin() / k_factor(j, &kin).unwrap();
        worst = worst.max((g.im - expected).abs());
    }
    check(worst < 1e-12, format!("100 points, worst {worst:.2e}"))
}

fn two_path() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut cases: Vec<(EquationVariant, ShellPotential)> = Vec::new();
    for j in EquationVariant::ALL {
        cases.extend((0..50).map(|_| (j, random_potential(&mut rng, false))));
    }
    cases.extend((0..50).map(|_| (EquationVariant::ModifiedLogunovTavkhelidze, random_potential(&mut rng, true))));
    for (j, pot) in &cases {
        let kin = Kinematics::new(1.0, rng.gen_range(0.05..5.0)).unwrap();
        let g = amplitude(*j, &kin, pot).map_err(|e| e.to_string())?;
        let e = amplitude_explicit(*j, &kin, pot).map_err(|e| e.to_string())?;
        worst = worst.max((g - e).norm() / g.norm().max(1e-300));
    }
    check(worst < 1e-12, format!("{} points, worst relative {worst:.2e}", cases.len()))
}

fn ramsauer_townsend() -> Outcome {
    let mut worst = 0.0f64;
    for j in EquationVariant::ALL {
        for n in 1..=10 {
            let kin = Kinematics::new(1.0, PI * n as f64 / 5.0).unwrap();
            worst = worst.max(amplitude(j, &kin, &repulsive_shell()).unwrap().norm());
        }
    }
    check(worst < 1e-12, format!("n = 1..10, all j, worst |f| {worst:.2e}"))
}

fn spectral_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for j in EquationVariant::ALL {
        for w in [0.3, 0.8, 1.3] {
            let be = BoundEnergy::new(1.0, w).unwrap();
            for r in [0.5, 1.5, 3.0] {
                let closed = green_partial_bound(j, &be, r, 1.0);
                let oracle = green_spectral_oracle(j, &Branch::Bound(be), r, 1.0, 1e-9).map_err(|e| e.to_string())?;
                worst = worst.max((closed - oracle).abs());
            }
        }
    }
    check(worst < 1e-6, format!("3x3 grid per j, worst {worst:.2e}"))
}

fn s_matrix() -> Outcome {
    let grid = linspace(0.05, 4.0, 800);
    let (mut repr, mut modulus, mut tangent) = (0.0f64, 0.0f64, 0.0f64);
    let mut compared = 0;
    for pot in [repulsive_shell(), opposite_pair()] {
        for j in EquationVariant::ALL {
            for p in sweep(j, 1.0, &pot, &grid).map_err(|e| e.to_string())? {
                repr = repr.max(p.representation_defect);
                modulus = modulus.max((p.s_matrix.norm() - 1.0).abs());
                let two_phi = p.s_matrix.arg();
                if two_phi.cos().abs() > 0.1 {
                    let kin = Kinematics::new(1.0, p.chi).unwrap();
                    let rhs = phase_tangent_closed_form(j, &kin, &pot).unwrap();
                    tangent = tangent.max((two_phi.tan() - rhs).abs() / rhs.abs().max(1e-300));
                    compared += 1;
                }
            }
        }
    }
    check(
        repr < 1e-12 && modulus < 1e-12 && tangent < 1e-9,
        format!("representation {repr:.2e}, ||S|-1| {modulus:.2e}, tan 2phi {tangent:.2e} over {compared} points"),
    )
}

fn bound_structure() -> Outcome {
    let mut max_v0 = f64::NEG_INFINITY;
    for (m, a) in [(1.0, 1.0), (0.5, 2.0)] {
        for j in EquationVariant::ALL {
            for w in linspace(W_MIN, W_MAX, 500) {
                max_v0 = max_v0.max(v0_of_w(j, &BoundEnergy::new(m, w).unwrap(), a).unwrap());
            }
        }
    }
    let mut loop_err = 0.0f64;
    for j in EquationVariant::ALL {
        for w_star in [0.2, 0.7, 1.3] {
            let v0 = v0_of_w(j, &BoundEnergy::new(1.0, w_star).unwrap(), 1.0).unwrap();
            let levels = solve_w_single(j, 1.0, Shell::new(v0, 1.0).unwrap(), 2000).map_err(|e| e.to_string())?;
            loop_err = match levels.as_slice() {
                [level] => loop_err.max((level.w - w_star).abs()),
                _ => f64::INFINITY,
            };
        }
    }
    let mut counts = Vec::new();
    for (v1, v2) in [(7.0, -2.0), (-2.0, -1.0)] {
        let pot = ShellPotential::double(v1, 1.0, v2, 3.0).unwrap();
        for j in EquationVariant::ALL {
            counts.push(solve_w_double(j, 1.0, &pot, 2000).map_err(|e| e.to_string())?.len());
        }
    }
    let repulsive = ShellPotential::double(1.0, 1.0, 2.0, 2.0).unwrap();
    let mut repulsive_count = 0;
    for j in EquationVariant::ALL {
        repulsive_count += solve_w_double(j, 1.0, &repulsive, 4000).map_err(|e| e.to_string())?.len();
    }
    check(
        max_v0 < 0.0 && loop_err < 1e-9 && counts.iter().all(|c| matches!(c, 1 | 2)) && repulsive_count == 0,
        format!(
            "max V0 {max_v0:.3e}, closed-loop error {loop_err:.2e}, pair root counts {counts:?}, repulsive roots {repulsive_count}"
        ),
    )
}

fn quadratic_branch() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut back, mut vieta) = (0.0f64, 0.0f64);
    let mut real = 0;
    let mut d_ok = true;
    for _ in 0..50 {
        let j = variant(&mut rng);
        let w = rng.gen_range(0.05..1.5);
        let a2 = rng.gen_range(1.2..5.0);
        let mut alpha = 0.0;
        while alpha == 0.0 {
            alpha = rng.gen_range(-2.0..2.0);
        }
        let be = BoundEnergy::new(1.0, w).unwrap();
        let g = |a: f64, b: f64| green_partial_bound(j, &be, a, b);
        let lead = alpha * (g(1.0, 1.0) * g(a2, a2) - g(1.0, a2).powi(2));
        match v1_pm_of_w(j, &be, 1.0, a2, alpha).unwrap() {
            QuadraticRoots::Real { plus, minus } => {
                real += 1;
                vieta = vieta.max((plus * minus * lead - 1.0).abs());
                for v1 in [plus, minus] {
                    let pot = ShellPotential::double(v1, 1.0, alpha * v1, a2).unwrap();
                    back = back.max(det_bound(j, &be, &pot).unwrap().abs());
                }
            }
            QuadraticRoots::None => d_ok &= alpha < 0.0,
            QuadraticRoots::Degenerate(_) => {}
        }
    }
    check(
        back < 1e-10 && vieta < 1e-10 && d_ok,
        format!("{real} real pairs, back-substitution {back:.2e}, Vieta {vieta:.2e}, D >= 0 for alpha > 0: {d_ok}"),
    )
}

fn normalization() -> Outcome {
    let mut worst = 0.0f64;
    for (j, w) in [
        (EquationVariant::LogunovTavkhelidze, 0.4),
        (EquationVariant::ModifiedLogunovTavkhelidze, 0.6),
        (EquationVariant::ModifiedKadyshevsky, 1.1),
    ] {
        let v0 = v0_of_w(j, &BoundEnergy::new(1.0, w).unwrap(), 1.0).unwrap();
        let pot = ShellPotential::single(v0, 1.0).unwrap();
        let (psi, _) = bound_wavefunction(j, 1.0, w, &pot).map_err(|e| e.to_string())?;
        worst = worst.max((psi.norm_integral(1e-12).map_err(|e| e.to_string())? - 1.0).abs());
    }
    check(worst < 1e-8, format!("three levels, worst |norm - 1| {worst:.2e}"))
}

fn nonrelativistic_limits() -> Outcome {
    let masses = [10.0, 100.0, 1000.0];
    let observables = [
        LimitObservable::Amplitude { pot: repulsive_shell(), q: 0.6 },
        LimitObservable::Green { r: 1.2, rp: 0.4, q: 0.5 },
        LimitObservable::Quantization { a: 1.0, kappa: 0.5 },
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for obs in &observables {
        let mut worst = 0.0f64;
        for j in EquationVariant::ALL {
            let rep = limit_convergence(j, obs, &masses).map_err(|e| e.to_string())?;
            ok &= rep.monotone && rep.last_deviation() < 1e-2;
            worst = worst.max(rep.last_deviation());
        }
        let spread = cross_variant_spread(obs, 1000.0).map_err(|e| e.to_string())?;
        ok &= spread < 2.0 * worst;
        parts.push(format!("{} d(1000) {worst:.2e} spread {spread:.2e}", obs.name()));
    }
    check(ok, parts.join("; "))
}

fn zero_locus() -> Outcome {
    let base = ZeroScan {
        variant: EquationVariant::LogunovTavkhelidze,
        mass: 1.0,
        a1: 3.0,
        v1: 1.0,
        v2: -1.0,
        a2_range: (3.0, 8.0),
        chi_range: (0.1, 3.0),
        nx: 300,
        ny: 300,
    };
    let mut parts = Vec::new();
    let mut ok = true;
    for j in [EquationVariant::LogunovTavkhelidze, EquationVariant::ModifiedKadyshevsky] {
        let locus = scan_zero_locus(&ZeroScan { variant: j, ..base.clone() }).map_err(|e| e.to_string())?;
        ok &= !locus.curves.is_empty() && locus.max_residual() < 1e-8;
        parts.push(format!("j={j}: {} curves, max residual {:.2e}", locus.curves.len(), locus.max_residual()));
    }
    let degenerate = scan_zero_locus(&ZeroScan { v2: 0.0, ..base.clone() }).map_err(|e| e.to_string())?;
    let dy = (base.chi_range.1 - base.chi_range.0) / (base.ny - 1) as f64;
    let off = degenerate
        .vertices()
        .map(|v| {
            let n = (v.y * base.a1 / PI).round().max(1.0);
            (v.y - PI * n / base.a1).abs()
        })
        .fold(0.0, f64::max);
    ok &= !degenerate.curves.is_empty() && off <= dy;
    parts.push(format!("V2=0 lines offset {off:.2e} (grid step {dy:.2e})"));
    check(ok, parts.join("; "))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 3] = [
        &["scatter", "--j", "all", "--m", "1", "--a", "5", "--v0", "2", "--chi", "0.05:4:800"],
        &["zeros", "--j", "1", "--m", "1", "--a1", "3", "--v1", "1", "--v2", "-1", "--a2", "3:8:300", "--chi", "0.1:3:300"],
        &["bound", "--j", "all", "--m", "1", "--a", "1", "--curve", "v0"],
    ];
    let mut bytes = 0;
    for (i, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let path = dir.path().join(format!("run{i}_{rep}.csv"));
            let status = Command::new(env!("CARGO_BIN_EXE_deltashell"))
                .args(*args)
                .arg("--out")
                .arg(&path)
                .status()
                .map_err(|e| e.to_string())?;
            if !status.success() {
                return Err(format!("{} exited with {status}", args[0]));
            }
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{} output differs between runs", args[0]));
        }
        bytes += outputs[0].len();
    }
    Ok(format!("3 commands run twice, {bytes} bytes identical"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("unitarity", unitarity),
        ("green-imaginary-part", green_imaginary_part),
        ("two-path-equivalence", two_path),
        ("ramsauer-townsend-zeros", ramsauer_townsend),
        ("spectral-oracle", spectral_oracle),
        ("s-matrix-representations", s_matrix),
        ("bound-state-structure", bound_structure),
        ("quadratic-branch", quadratic_branch),
        ("normalization", normalization),
        ("nonrelativistic-limits", nonrelativistic_limits),
        ("zero-locus", zero_locus),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
