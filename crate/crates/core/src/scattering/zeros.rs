//! Real-valued vanishing condition of the two-shell amplitude and its zero
//! locus in the `(a₂, χ)` plane.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::greens::green_partial;
use crate::kinematics::{k_factor, EquationVariant, Kinematics};
use crate::numerics::{linspace, ordered_map};

use super::{Shell, ShellPotential};

/// Residual every refined locus vertex is driven below.
pub const ZERO_RESIDUAL_TARGET: f64 = 1e-8;

const MIN_GRID: usize = 16;
const EDGE_BISECTIONS: usize = 200;

/// Vanishing condition for an arbitrary pair of shells (no ordering or merging).
pub fn zero_condition_pair(j: EquationVariant, kin: &Kinematics, s1: Shell, s2: Shell) -> Result<f64> {
    let (v1, a1, v2, a2) = (s1.strength, s1.radius, s2.strength, s2.radius);
    let re_g = |a: f64, b: f64| green_partial(j, kin, a, b).map(|g| g.re);
    let (g11, g22, g12) = (re_g(a1, a1)?, re_g(a2, a2)?, re_g(a1, a2)?);
    let s = |a: f64| (kin.rapidity() * kin.mass() * a).sin();
    let (sa1, sa2) = (s(a1), s(a2));
    Ok(v2 * sa2 * sa2 + v1 * sa1 * sa1 + v1 * v2 * (2.0 * sa2 * sa1 * g12 - sa1 * sa1 * g22 - sa2 * sa2 * g11))
}

/// Real function whose zeros are exactly the zeros of the two-shell amplitude.
pub fn zero_condition(j: EquationVariant, kin: &Kinematics, pot: &ShellPotential) -> Result<f64> {
    let (s1, s2) = pot.pair().ok_or_else(|| {
        Error::Precondition("single shell: zeros are at chi = pi n / (m a), see single_shell_zero_rapidities".into())
    })?;
    zero_condition_pair(j, kin, s1, s2)
}

/// Closed form of [`zero_condition`] for the modified Logunov-Tavkhelidze variant.
pub fn zero_condition_explicit_mlt(kin: &Kinematics, pot: &ShellPotential) -> Result<f64> {
    let (sh1, sh2) = pot
        .pair()
        .ok_or_else(|| Error::Precondition("explicit zero condition needs two shells".into()))?;
    let k = k_factor(EquationVariant::ModifiedLogunovTavkhelidze, kin)?;
    let (m, chi) = (kin.mass(), kin.rapidity());
    let s = |a: f64| (chi * m * a).sin();
    let c = |a: f64| (chi * m * a).cos();
    let t = |a: f64| (PI * m * a).tanh();
    let (v1, a1, v2, a2) = (sh1.strength, sh1.radius, sh2.strength, sh2.radius);
    let bracket = t(0.5 * (a2 - a1)) * s(a2 - a1) - t(0.5 * (a2 + a1)) * s(a2 + a1)
        + t(a1) * s(a2) * c(a1)
        + t(a2) * s(a1) * c(a2);
    Ok(v2 * s(a2).powi(2) + v1 * s(a1).powi(2) + 2.0 * v1 * v2 / k * s(a2) * s(a1) * bracket)
}

/// The first `count` rapidities `πn/(m·a)` where a single-shell amplitude vanishes.
pub fn single_shell_zero_rapidities(m: f64, a: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|n| PI * n as f64 / (m * a)).collect()
}

/// Parameters of a zero-locus scan: `x = a₂`, `y = χ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroScan {
    pub variant: EquationVariant,
    pub mass: f64,
    pub a1: f64,
    pub v1: f64,
    pub v2: f64,
    pub a2_range: (f64, f64),
    pub chi_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroVertex {
    pub x: f64,
    pub y: f64,
    pub residual: f64,
}

/// Polylines of the zero set; closed curves repeat their first vertex at the end.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZeroLocus {
    pub curves: Vec<Vec<ZeroVertex>>,
}

impl ZeroLocus {
    pub fn vertex_count(&self) -> usize {
        self.curves.iter().map(Vec::len).sum()
    }

    pub fn max_residual(&self) -> f64 {
        self.curves
            .iter()
            .flatten()
            .map(|v| v.residual)
            .fold(0.0, f64::max)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &ZeroVertex> {
        self.curves.iter().flatten()
    }
}

impl ZeroScan {
    fn validate(&self) -> Result<()> {
        let range_ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo;
        if !range_ok(self.a2_range) || !range_ok(self.chi_range) {
            return Err(Error::domain("scan ranges must be positive and increasing"));
        }
        if self.nx < MIN_GRID || self.ny < MIN_GRID {
            return Err(Error::domain(format!("scan grid must be at least {MIN_GRID} x {MIN_GRID}")));
        }
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(Error::domain(format!("mass must be positive and finite, got {}", self.mass)));
        }
        if !(self.a1.is_finite() && self.a1 > 0.0) {
            return Err(Error::domain(format!("a1 must be positive, got {}", self.a1)));
        }
        if !(self.v1.is_finite() && self.v2.is_finite()) || (self.v1 == 0.0 && self.v2 == 0.0) {
            return Err(Error::domain("scan needs finite strengths, not both zero"));
        }
        Ok(())
    }

    /// Function whose sign changes are traced. With one strength zero the
    /// condition is a square, so the signed factor `V·sin(χ m a)` is used.
    pub fn condition(&self, a2: f64, chi: f64) -> Result<f64> {
        let kin = Kinematics::new(self.mass, chi)?;
        if self.v2 == 0.0 {
            return Ok(self.v1 * (chi * self.mass * self.a1).sin());
        }
        if self.v1 == 0.0 {
            return Ok(self.v2 * (chi * self.mass * a2).sin());
        }
        zero_condition_pair(self.variant, &kin, Shell::new(self.v1, self.a1)?, Shell::new(self.v2, a2)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

struct Grid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    values: Vec<f64>,
}

impl Grid {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.xs.len() + i]
    }

    fn row_stride(&self) -> usize {
        2 * self.xs.len() - 1
    }

    /// Row-major edge id: in row `j`, horizontal edges `i = 0..nx-1` come
    /// first, then the vertical edges up to row `j + 1`.
    fn edge_id(&self, i: usize, j: usize, side: Side) -> usize {
        let nx = self.xs.len();
        match side {
            Side::Bottom => j * self.row_stride() + i,
            Side::Top => (j + 1) * self.row_stride() + i,
            Side::Left => j * self.row_stride() + nx - 1 + i,
            Side::Right => j * self.row_stride() + nx + i,
        }
    }

    /// Endpoints `((x, y), (x, y))` of an edge id.
    fn edge_ends(&self, id: usize) -> ((usize, usize), (usize, usize)) {
        let nx = self.xs.len();
        let (j, rem) = (id / self.row_stride(), id % self.row_stride());
        if rem < nx - 1 {
            ((rem, j), (rem + 1, j))
        } else {
            let i = rem - (nx - 1);
            ((i, j), (i, j + 1))
        }
    }
}

fn positive(v: f64) -> bool {
    v >= 0.0
}

fn refine_edge(scan: &ZeroScan, grid: &Grid, id: usize) -> Result<ZeroVertex> {
    let ((i0, j0), (i1, j1)) = grid.edge_ends(id);
    let horizontal = j0 == j1;
    let point = |t: f64| {
        if horizontal {
            (t, grid.ys[j0])
        } else {
            (grid.xs[i0], t)
        }
    };
    let eval = |t: f64| {
        let (x, y) = point(t);
        scan.condition(x, y)
    };
    let (mut lo, mut hi) = if horizontal { (grid.xs[i0], grid.xs[i1]) } else { (grid.ys[j0], grid.ys[j1]) };
    let (mut flo, mut fhi) = (grid.at(i0, j0), grid.at(i1, j1));
    for _ in 0..EDGE_BISECTIONS {
        if flo.abs().min(fhi.abs()) < 1e-3 * ZERO_RESIDUAL_TARGET {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = eval(mid)?;
        if !fm.is_finite() {
            return Err(Error::Evaluation { x: mid });
        }
        if positive(fm) == positive(flo) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    let (t, residual) = if flo.abs() <= fhi.abs() { (lo, flo.abs()) } else { (hi, fhi.abs()) };
    let (x, y) = point(t);
    Ok(ZeroVertex { x, y, residual })
}

/// Traces the zero set of the vanishing condition over a rectangular grid.
pub fn scan_zero_locus(scan: &ZeroScan) -> Result<ZeroLocus> {
    scan.validate()?;
    let xs = linspace(scan.a2_range.0, scan.a2_range.1, scan.nx);
    let ys = linspace(scan.chi_range.0, scan.chi_range.1, scan.ny);
    let rows = ordered_map(&ys, |&y| xs.iter().map(|&x| scan.condition(x, y)).collect::<Result<Vec<f64>>>());
    let mut values = Vec::with_capacity(xs.len() * ys.len());
    for row in rows {
        values.extend(row?);
    }
    if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation { x: xs[pos % xs.len()] });
    }
    let grid = Grid { xs, ys, values };
    let (nx, ny) = (grid.xs.len(), grid.ys.len());

    let mut links: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut link = |a: usize, b: usize| {
        links.entry(a).or_default().push(b);
        links.entry(b).or_default().push(a);
    };
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let (bl, br, tr, tl) = (grid.at(i, j), grid.at(i + 1, j), grid.at(i + 1, j + 1), grid.at(i, j + 1));
            let crosses = |a: f64, b: f64| positive(a) != positive(b);
            let mut sides = Vec::with_capacity(4);
            if crosses(bl, br) {
                sides.push(Side::Bottom);
            }
            if crosses(br, tr) {
                sides.push(Side::Right);
            }
            if crosses(tl, tr) {
                sides.push(Side::Top);
            }
            if crosses(bl, tl) {
                sides.push(Side::Left);
            }
            let id = |side| grid.edge_id(i, j, side);
            match sides.len() {
                2 => link(id(sides[0]), id(sides[1])),
                4 => {
                    let center = scan.condition(0.5 * (grid.xs[i] + grid.xs[i + 1]), 0.5 * (grid.ys[j] + grid.ys[j + 1]))?;
                    if positive(center) == positive(bl) {
                        link(id(Side::Bottom), id(Side::Right));
                        link(id(Side::Top), id(Side::Left));
                    } else {
                        link(id(Side::Left), id(Side::Bottom));
                        link(id(Side::Right), id(Side::Top));
                    }
                }
                _ => {}
            }
        }
    }

    let ids: Vec<usize> = links.keys().copied().collect();
    let refined = ordered_map(&ids, |&id| refine_edge(scan, &grid, id))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let vertex: BTreeMap<usize, ZeroVertex> = ids.iter().copied().zip(refined).collect();

    for nbrs in links.values_mut() {
        nbrs.sort_unstable();
    }
    let mut visited = std::collections::BTreeSet::new();
    let mut chains = Vec::new();
    let walk = |start: usize, visited: &mut std::collections::BTreeSet<usize>| {
        let mut chain = vec![start];
        visited.insert(start);
        let mut current = start;
        while let Some(&next) = links[&current].iter().find(|n| !visited.contains(*n)) {
            visited.insert(next);
            chain.push(next);
            current = next;
        }
        if chain.len() > 2 && links[&current].contains(&start) {
            chain.push(start);
        }
        chain
    };
    for &id in &ids {
        if links[&id].len() == 1 && !visited.contains(&id) {
            chains.push(walk(id, &mut visited));
        }
    }
    for &id in &ids {
        if !visited.contains(&id) {
            chains.push(walk(id, &mut visited));
        }
    }
    let curves = chains
        .into_iter()
        .map(|chain| chain.into_iter().map(|id| vertex[&id]).collect())
        .collect();
    Ok(ZeroLocus { curves })
}
