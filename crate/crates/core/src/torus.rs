//! Points on the flat torus and phase-space states.

use crate::error::{CoreError, Result};

/// Reduce a coordinate to the fundamental domain `[0, 1)`.
pub fn wrap_unit(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    // rem_euclid can return exactly 1.0 for tiny negative inputs
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Distance on the circle between two coordinates in `[0, 1)`.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// A point of the torus with coordinates reduced modulo one.
///
/// Only dimensions one and two are supported; everything downstream
/// (grids, solvers, flows) shares that restriction.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    coords: Vec<f64>,
}

impl TorusPoint {
    pub fn new(coords: &[f64]) -> Result<Self> {
        if coords.is_empty() || coords.len() > 2 {
            return Err(CoreError::Domain(format!(
                "torus dimension must be 1 or 2, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(CoreError::Domain("non-finite torus coordinate".into()));
        }
        Ok(Self {
            coords: coords.iter().map(|&c| wrap_unit(c)).collect(),
        })
    }

    /// One-dimensional convenience constructor.
    pub fn scalar(x: f64) -> Self {
        Self::new(&[x]).expect("finite scalar coordinate")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Euclidean torus distance (per-axis shortest circle arc).
    pub fn dist(&self, other: &TorusPoint) -> f64 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(&a, &b)| {
                let d = circle_dist(a, b);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// Tag telling whether the fibre variable of a [`PhaseState`] is a momentum
/// `p` or a velocity `xi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FibreKind {
    Momentum,
    Velocity,
}

/// A phase-space state `(x, p)` or `(x, xi)` over the torus.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState {
    pub x: TorusPoint,
    pub fibre: Vec<f64>,
    pub kind: FibreKind,
}

impl PhaseState {
    pub fn new(x: TorusPoint, fibre: &[f64], kind: FibreKind) -> Result<Self> {
        if fibre.len() != x.dim() {
            return Err(CoreError::Domain(
                "fibre dimension does not match the base point".into(),
            ));
        }
        if fibre.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::Domain("non-finite phase-space component".into()));
        }
        Ok(Self {
            x,
            fibre: fibre.to_vec(),
            kind,
        })
    }

    pub fn momentum(x: TorusPoint, p: &[f64]) -> Result<Self> {
        Self::new(x, p, FibreKind::Momentum)
    }

    pub fn velocity(x: TorusPoint, xi: &[f64]) -> Result<Self> {
        Self::new(x, xi, FibreKind::Velocity)
    }

    /// Phase-space distance: torus distance on the base, Euclidean on the fibre.
    pub fn dist(&self, other: &PhaseState) -> f64 {
        let base = self.x.dist(&other.x);
        let fibre: f64 = self
            .fibre
            .iter()
            .zip(other.fibre.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        (base * base + fibre).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraps_into_unit_interval() {
        let p = TorusPoint::new(&[1.25, -0.25]).unwrap();
        assert_eq!(p.coords(), &[0.25, 0.75]);
    }

    #[test]
    fn rejects_bad_dimension_and_nan() {
        assert!(TorusPoint::new(&[]).is_err());
        assert!(TorusPoint::new(&[0.0, 0.0, 0.0]).is_err());
        assert!(TorusPoint::new(&[f64::NAN]).is_err());
    }

    #[test]
    fn circle_distance_takes_shortest_arc() {
        assert!((circle_dist(0.1, 0.9) - 0.2).abs() < 1e-15);
        let a = TorusPoint::scalar(0.95);
        let b = TorusPoint::scalar(0.05);
        assert!((a.dist(&b) - 0.1).abs() < 1e-15);
    }
}
