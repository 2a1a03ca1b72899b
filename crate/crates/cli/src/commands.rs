use deltashell::boundstates::{
    bound_wavefunction, det_bound_pair, sample_curve, solve_levels_for, v0_of_w, v1_pm_of_w, v2_of_w,
    QuadraticRoots, QuantCurvePoint,
};
use deltashell::greens::{green_partial_on, Branch};
use deltashell::nonrel::{cross_variant_spread, limit_convergence, LimitObservable};
use deltashell::scattering::{scan_zero_locus, sweep, ZeroScan};
use deltashell::{BoundEnergy, EquationVariant, Kinematics, Shell, ShellPotential};

use crate::args::{BoundArgs, BranchKind, CurveKind, GreensArgs, NrLimitArgs, ObservableKind, ScatterArgs, ZerosArgs};
use crate::table::{num, opt, CsvTable};
use crate::CliError;

fn param(msg: impl Into<String>) -> CliError {
    CliError::Param(msg.into())
}

fn potential_echo(pot: &ShellPotential) -> [String; 4] {
    let s = pot.shells();
    let second = s.get(1);
    [
        num(s[0].strength),
        num(s[0].radius),
        opt(second.map(|x| x.strength)),
        opt(second.map(|x| x.radius)),
    ]
}

pub fn greens(args: &GreensArgs) -> Result<CsvTable, CliError> {
    let mut table = CsvTable::new(&["j", "branch", "chi_or_w", "r", "rp", "re_G", "im_G", "m"]);
    let (label, grid) = match args.branch {
        BranchKind::Scattering => ("scattering", args.chi.ok_or_else(|| param("scattering branch needs --chi"))?),
        BranchKind::Bound => ("bound", args.w.ok_or_else(|| param("bound branch needs --w"))?),
    };
    let rs = args.r.points();
    for &j in &args.j.0 {
        for x in grid.points() {
            let branch = match args.branch {
                BranchKind::Scattering => Branch::Scattering(Kinematics::new(args.m, x)?),
                BranchKind::Bound => Branch::Bound(BoundEnergy::new(args.m, x)?),
            };
            for &r in &rs {
                let g = green_partial_on(j, &branch, r, args.rp)?;
                table.push(vec![
                    j.to_string(),
                    label.to_string(),
                    num(x),
                    num(r),
                    num(args.rp),
                    num(g.re),
                    num(g.im),
                    num(args.m),
                ]);
            }
        }
    }
    Ok(table)
}

pub fn scatter(args: &ScatterArgs) -> Result<CsvTable, CliError> {
    let pot = args.potential.potential().map_err(CliError::Param)?;
    let mut table = CsvTable::new(&[
        "j", "chi", "q", "re_f", "im_f", "sigma0", "re_S", "im_S", "phase_unwrapped", "unitarity_defect", "m", "v1", "a1",
        "v2", "a2",
    ]);
    let echo = potential_echo(&pot);
    let grid = args.chi.points();
    for &j in &args.j.0 {
        for p in sweep(j, args.m, &pot, &grid)? {
            let mut row = vec![
                j.to_string(),
                num(p.chi),
                num(p.q),
                num(p.f.re),
                num(p.f.im),
                num(p.sigma0),
                num(p.s_matrix.re),
                num(p.s_matrix.im),
                num(p.phase),
                num(p.unitarity_defect),
                num(args.m),
            ];
            row.extend(echo.iter().cloned());
            table.push(row);
        }
    }
    Ok(table)
}

fn need(x: Option<f64>, flag: &str) -> Result<f64, CliError> {
    x.ok_or_else(|| param(format!("missing {flag}")))
}

pub fn bound(args: &BoundArgs) -> Result<CsvTable, CliError> {
    match args.curve {
        Some(kind) => bound_curve(args, kind),
        None => bound_levels(args),
    }
}

fn curve_rows(table: &mut CsvTable, j: EquationVariant, id: &str, points: &[QuantCurvePoint], echo: &[String]) {
    for p in points {
        let mut row = vec![
            j.to_string(),
            num(p.w),
            id.to_string(),
            if p.finite { num(p.value) } else { String::new() },
            u8::from(p.finite).to_string(),
        ];
        row.extend(echo.iter().cloned());
        table.push(row);
    }
}

fn bound_curve(args: &BoundArgs, kind: CurveKind) -> Result<CsvTable, CliError> {
    let mut table = CsvTable::new(&["j", "w", "curve_id", "value", "finite_flag", "m", "a1", "v1", "a2", "v2", "alpha"]);
    let m = args.m;
    BoundEnergy::new(m, 1.0)?;
    if args.points < 2 {
        return Err(param("--points must be at least 2"));
    }
    let p = &args.potential;
    let be = |w: f64| BoundEnergy::new(m, w).expect("grid lies inside the bound window");
    for &j in &args.j.0 {
        match kind {
            CurveKind::V0 => {
                let a = need(p.a.or(p.a1), "--a")?;
                v0_of_w(j, &be(1.0), a)?;
                let pts = sample_curve(|w| v0_of_w(j, &be(w), a).unwrap_or(f64::NAN), args.points);
                let echo = [num(m), num(a), String::new(), String::new(), String::new(), String::new()];
                curve_rows(&mut table, j, "v0", &pts, &echo);
            }
            CurveKind::V2 => {
                let (a1, a2, v1) = (need(p.a1, "--a1")?, need(p.a2, "--a2")?, need(p.v1, "--v1")?);
                v2_of_w(j, &be(1.0), a1, a2, v1)?;
                let pts = sample_curve(|w| v2_of_w(j, &be(w), a1, a2, v1).unwrap_or(f64::NAN), args.points);
                let echo = [num(m), num(a1), num(v1), num(a2), String::new(), String::new()];
                curve_rows(&mut table, j, "v2", &pts, &echo);
            }
            CurveKind::V1pm => {
                let (a1, a2, alpha) = (need(p.a1, "--a1")?, need(p.a2, "--a2")?, need(args.alpha, "--alpha")?);
                v1_pm_of_w(j, &be(1.0), a1, a2, alpha)?;
                let root = |w: f64, plus: bool| match v1_pm_of_w(j, &be(w), a1, a2, alpha) {
                    Ok(QuadraticRoots::Real { plus: p, minus: q }) => if plus { p } else { q },
                    Ok(QuadraticRoots::Degenerate(v)) if plus => v,
                    _ => f64::NAN,
                };
                let echo = [num(m), num(a1), String::new(), num(a2), String::new(), num(alpha)];
                curve_rows(&mut table, j, "plus", &sample_curve(|w| root(w, true), args.points), &echo);
                curve_rows(&mut table, j, "minus", &sample_curve(|w| root(w, false), args.points), &echo);
            }
            CurveKind::Det => {
                let s1 = Shell::new(need(p.v1, "--v1")?, need(p.a1, "--a1")?)?;
                let s2 = Shell::new(need(p.v2, "--v2")?, need(p.a2, "--a2")?)?;
                let pts = sample_curve(|w| det_bound_pair(j, &be(w), s1, s2), args.points);
                let echo = [num(m), num(s1.radius), num(s1.strength), num(s2.radius), num(s2.strength), String::new()];
                curve_rows(&mut table, j, "det", &pts, &echo);
            }
        }
    }
    Ok(table)
}

fn bound_levels(args: &BoundArgs) -> Result<CsvTable, CliError> {
    let pot = args.potential.potential().map_err(CliError::Param)?;
    if args.scan < 2 {
        return Err(param("--scan must be at least 2"));
    }
    let mut table = CsvTable::new(&[
        "j", "w", "two_E", "residual", "norm_check", "norm_constant", "psi_a1", "psi_a2", "m", "v1", "a1", "v2", "a2",
    ]);
    let echo = potential_echo(&pot);
    for &j in &args.j.0 {
        for level in solve_levels_for(j, args.m, &pot, args.scan)? {
            let (psi, _) = bound_wavefunction(j, args.m, level.w, &pot)?;
            let norm_check = (psi.norm_integral(1e-12)? - 1.0).abs();
            let mut row = vec![
                j.to_string(),
                num(level.w),
                num(level.two_energy),
                num(level.residual),
                num(norm_check),
                num(level.norm_constant),
                num(level.psi_at_shells[0]),
                opt(level.psi_at_shells.get(1).copied()),
                num(args.m),
            ];
            row.extend(echo.iter().cloned());
            table.push(row);
        }
    }
    Ok(table)
}

pub fn zeros(args: &ZerosArgs) -> Result<CsvTable, CliError> {
    let mut table = CsvTable::new(&["curve_id", "vertex_id", "x", "y", "residual", "j", "m", "a1", "v1", "v2"]);
    for &j in &args.j.0 {
        let scan = ZeroScan {
            variant: j,
            mass: args.m,
            a1: args.a1,
            v1: args.v1,
            v2: args.v2,
            a2_range: (args.a2.lo, args.a2.hi),
            chi_range: (args.chi.lo, args.chi.hi),
            nx: args.a2.n,
            ny: args.chi.n,
        };
        let locus = scan_zero_locus(&scan)?;
        for (c, curve) in locus.curves.iter().enumerate() {
            for (v, vertex) in curve.iter().enumerate() {
                table.push(vec![
                    c.to_string(),
                    v.to_string(),
                    num(vertex.x),
                    num(vertex.y),
                    num(vertex.residual),
                    j.to_string(),
                    num(args.m),
                    num(args.a1),
                    num(args.v1),
                    num(args.v2),
                ]);
            }
        }
    }
    Ok(table)
}

fn observables(args: &NrLimitArgs) -> Result<Vec<LimitObservable>, CliError> {
    let amplitude = || -> Result<LimitObservable, CliError> {
        Ok(LimitObservable::Amplitude { pot: ShellPotential::single(args.v0, args.a.unwrap_or(5.0))?, q: args.q.unwrap_or(0.6) })
    };
    let green = || LimitObservable::Green { r: args.r, rp: args.rp, q: args.q.unwrap_or(0.5) };
    let quant = || LimitObservable::Quantization { a: args.a.unwrap_or(1.0), kappa: args.kappa };
    Ok(match args.observable {
        ObservableKind::Amplitude => vec![amplitude()?],
        ObservableKind::Green => vec![green()],
        ObservableKind::Quantization => vec![quant()],
        ObservableKind::All => vec![amplitude()?, green(), quant()],
    })
}

fn observable_echo(obs: &LimitObservable) -> [String; 6] {
    let e = String::new;
    match obs {
        LimitObservable::Amplitude { pot, q } => {
            let s = pot.shells()[0];
            [num(*q), e(), num(s.radius), num(s.strength), e(), e()]
        }
        LimitObservable::Green { r, rp, q } => [num(*q), e(), e(), e(), num(*r), num(*rp)],
        LimitObservable::Quantization { a, kappa } => [e(), num(*kappa), num(*a), e(), e(), e()],
    }
}

pub fn nrlimit(args: &NrLimitArgs) -> Result<CsvTable, CliError> {
    let mut table = CsvTable::new(&[
        "observable", "j", "mass", "deviation", "monotone", "spread", "q", "kappa", "a", "v0", "r", "rp",
    ]);
    for obs in observables(args)? {
        let echo = observable_echo(&obs);
        for &j in &args.j.0 {
            let report = limit_convergence(j, &obs, &args.masses.0)?;
            for (m, d) in report.masses.iter().zip(&report.deviations) {
                let spread = cross_variant_spread(&obs, *m)?;
                let mut row = vec![
                    obs.name().to_string(),
                    j.to_string(),
                    num(*m),
                    num(*d),
                    u8::from(report.monotone).to_string(),
                    num(spread),
                ];
                row.extend(echo.iter().cloned());
                table.push(row);
            }
        }
    }
    Ok(table)
}
