use crate::error::{Error, Result};

/// Default number of uniform scan points.
pub const DEFAULT_N_SCAN: usize = 2000;
/// Default final bracket width.
pub const DEFAULT_TOL_X: f64 = 1e-12;

/// Sign change accepted as a pole when the endpoint magnitudes grow by more
/// than this factor between the scan bracket and the refined bracket.
const POLE_GROWTH: f64 = 10.0;

/// A root refined inside a sign-change bracket.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BracketRoot {
    pub x: f64,
    /// `|f(x)|` at the returned abscissa.
    pub residual: f64,
    /// Final bracket `(lo, hi)`.
    pub bracket: (f64, f64),
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Evaluation { x })
    }
}

/// Scans `f` on `n_scan` uniform points of `[lo, hi]` and refines every sign
/// change by bisection to width `tol_x`.
///
/// Sign changes across a pole are dropped: a bracket whose endpoint values
/// grow under refinement is not a root. Tangential roots, where `f` touches
/// zero without changing sign, are not detected unless they land exactly on a
/// grid point.
pub fn find_roots_scan<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    n_scan: usize,
    tol_x: f64,
) -> Result<Vec<BracketRoot>> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!("root scan needs lo < hi, got [{lo}, {hi}]")));
    }
    if n_scan < 2 {
        return Err(Error::domain("root scan needs at least two grid points"));
    }
    if !(tol_x > 0.0) {
        return Err(Error::domain(format!("root tolerance must be positive, got {tol_x}")));
    }

    let xs = super::linspace(lo, hi, n_scan);
    let fs = xs.iter().map(|&x| eval(&f, x)).collect::<Result<Vec<_>>>()?;

    let mut roots = Vec::new();
    for i in 0..n_scan - 1 {
        let (a, b, fa, fb) = (xs[i], xs[i + 1], fs[i], fs[i + 1]);
        if fa == 0.0 {
            roots.push(BracketRoot { x: a, residual: 0.0, bracket: (a, a) });
            continue;
        }
        if fa.signum() != fb.signum() && fb != 0.0 {
            if let Some(root) = bisect(&f, a, b, fa, fb, tol_x)? {
                roots.push(root);
            }
        }
    }
    if fs[n_scan - 1] == 0.0 {
        let x = xs[n_scan - 1];
        roots.push(BracketRoot { x, residual: 0.0, bracket: (x, x) });
    }
    Ok(roots)
}

fn bisect<F: Fn(f64) -> f64>(
    f: &F,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
    tol_x: f64,
) -> Result<Option<BracketRoot>> {
    let scale0 = fa.abs().max(fb.abs());
    for _ in 0..200 {
        if b - a <= tol_x {
            break;
        }
        let mid = a + 0.5 * (b - a);
        if mid <= a || mid >= b {
            break;
        }
        let fm = eval(f, mid)?;
        if fm == 0.0 {
            return Ok(Some(BracketRoot { x: mid, residual: 0.0, bracket: (mid, mid) }));
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    if fa.abs().min(fb.abs()) > POLE_GROWTH * scale0 {
        return Ok(None);
    }
    let (x, residual) = if fa.abs() <= fb.abs() { (a, fa.abs()) } else { (b, fb.abs()) };
    Ok(Some(BracketRoot { x, residual, bracket: (a, b) }))
}
