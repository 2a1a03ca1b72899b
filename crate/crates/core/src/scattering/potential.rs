use crate::error::{Error, Result};

/// One delta shell `V·δ(r - a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Shell {
    pub strength: f64,
    pub radius: f64,
}

impl Shell {
    pub fn new(strength: f64, radius: f64) -> Result<Self> {
        if !strength.is_finite() {
            return Err(Error::domain(format!("shell strength must be finite, got {strength}")));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::domain(format!("shell radius must be positive, got {radius}")));
        }
        Ok(Shell { strength, radius })
    }
}

/// `V(r) = Σ V_k δ(r - a_k)` with one or two shells, radii strictly
/// increasing. Two shells at the same radius are merged into one.
#[derive(Clone, Debug, PartialEq)]
pub struct ShellPotential {
    shells: Vec<Shell>,
}

impl ShellPotential {
    pub fn single(strength: f64, radius: f64) -> Result<Self> {
        Ok(ShellPotential { shells: vec![Shell::new(strength, radius)?] })
    }

    pub fn double(v1: f64, a1: f64, v2: f64, a2: f64) -> Result<Self> {
        let mut first = Shell::new(v1, a1)?;
        let mut second = Shell::new(v2, a2)?;
        if second.radius < first.radius {
            std::mem::swap(&mut first, &mut second);
        }
        if first.radius == second.radius {
            return ShellPotential::single(first.strength + second.strength, first.radius);
        }
        Ok(ShellPotential { shells: vec![first, second] })
    }

    pub fn shells(&self) -> &[Shell] {
        &self.shells
    }

    pub fn is_single(&self) -> bool {
        self.shells.len() == 1
    }

    /// The pair `(inner, outer)` of a two-shell potential.
    pub fn pair(&self) -> Option<(Shell, Shell)> {
        match self.shells.as_slice() {
            [a, b] => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn outer_radius(&self) -> f64 {
        self.shells.last().map_or(0.0, |s| s.radius)
    }
}
