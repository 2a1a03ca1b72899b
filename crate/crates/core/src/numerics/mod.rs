//! Numerical building blocks shared by the physics modules: the complex
//! value type, bracketed root scanning and adaptive Gauss-Kronrod quadrature.

mod quad;
mod roots;

pub use quad::{
    integrate_adaptive, integrate_partitioned, integrate_semi_infinite,
    integrate_semi_infinite_partitioned, QuadResult, MAX_DEPTH,
};
pub use roots::{find_roots_scan, BracketRoot, DEFAULT_N_SCAN, DEFAULT_TOL_X};

use crate::error::{Error, Result};

/// All complex-valued quantities (amplitudes, S-matrix, Green functions).
pub type ComplexValue = num_complex::Complex64;

/// Rejects NaN/Inf components at a module boundary.
pub fn ensure_finite(z: ComplexValue, what: &str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::domain(format!("{what} is not finite: {z}")))
    }
}

/// Order-preserving map, parallel when the `parallel` feature is enabled.
pub(crate) fn ordered_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// `n` uniformly spaced points on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}
