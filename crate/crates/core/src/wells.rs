//! Well shapes `f(x)` and the potentials `v(x) = -v0 f(x)` built on them.

use serde::Serialize;

use crate::error::{Error, Result};

/// Even, non-negative profile with `f(0) = 1` and `f -> 0` at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WellShape {
    /// `f(x) = exp(-x^2)`.
    Gaussian,
    /// `f(x) = 1` for `|x| <= half_width`, zero outside.
    Square { half_width: f64 },
}

impl WellShape {
    /// The finite square box used throughout: half-width 1.
    pub const UNIT_SQUARE: WellShape = WellShape::Square { half_width: 1.0 };

    pub fn value(&self, x: f64) -> f64 {
        match *self {
            WellShape::Gaussian => (-x * x).exp(),
            WellShape::Square { half_width } => {
                if x.abs() <= half_width {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Average of `f` over `[x - h/2, x + h/2]`. Equal to `value` for smooth
    /// shapes at the resolution the finite-difference grids use; for the square
    /// box it resolves the jump so a wall on a grid node sees half the depth.
    pub fn cell_average(&self, x: f64, h: f64) -> f64 {
        match *self {
            WellShape::Gaussian => self.value(x),
            WellShape::Square { half_width } => {
                let lo = (x - 0.5 * h).max(-half_width);
                let hi = (x + 0.5 * h).min(half_width);
                ((hi - lo) / h).clamp(0.0, 1.0)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WellShape::Gaussian => "gaussian",
            WellShape::Square { .. } => "square",
        }
    }
}

pub fn shape_value(shape: WellShape, x: f64) -> f64 {
    shape.value(x)
}

/// `v(x) = -strength * f(x)` with `strength > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Potential {
    shape: WellShape,
    strength: f64,
}

impl Potential {
    pub fn new(shape: WellShape, strength: f64) -> Result<Self> {
        if !(strength > 0.0 && strength.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "well strength must be positive and finite, got {strength}"
            )));
        }
        if let WellShape::Square { half_width } = shape {
            if !(half_width > 0.0 && half_width.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "square half-width must be positive, got {half_width}"
                )));
            }
        }
        Ok(Potential { shape, strength })
    }

    pub fn gaussian(strength: f64) -> Result<Self> {
        Self::new(WellShape::Gaussian, strength)
    }

    pub fn shape(&self) -> WellShape {
        self.shape
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn value(&self, x: f64) -> f64 {
        -self.strength * self.shape.value(x)
    }
}

pub fn potential_value(pot: &Potential, x: f64) -> f64 {
    pot.value(x)
}
