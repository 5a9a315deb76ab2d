//! Smooth compactly supported profiles on the absolute.

use crate::error::{Error, Result};
use crate::geometry::AbsoluteCovector;

/// `f̂(ξ) = A·exp(−p / (1 − (θ/δ)²))` for `θ < δ` and zero outside, where `θ`
/// is the angle between the direction of `ξ` and the center `u₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsoluteProfile {
    center: Vec<f64>,
    delta: f64,
    shape: f64,
    amplitude: f64,
}

impl AbsoluteProfile {
    pub fn new(center: Vec<f64>, delta: f64, shape: f64) -> Result<Self> {
        let norm = center.iter().map(|v| v * v).sum::<f64>().sqrt();
        if center.len() < 2 || !(norm > 0.0) {
            return Err(Error::InvalidArgument("profile center must be a nonzero vector with n ≥ 2".into()));
        }
        if !(delta > 0.0 && delta < std::f64::consts::PI) {
            return Err(Error::InvalidArgument(format!("cap radius δ = {delta} must lie in (0, π)")));
        }
        if !(shape > 0.0 && shape.is_finite()) {
            return Err(Error::InvalidArgument(format!("shape exponent {shape} must be positive")));
        }
        let center = center.iter().map(|v| v / norm).collect();
        Ok(Self { center, delta, shape, amplitude: 1.0 })
    }

    /// The same profile multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self { amplitude: self.amplitude * c, ..self.clone() }
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn n(&self) -> usize {
        self.center.len()
    }

    /// Value at a unit direction.
    pub fn at_direction(&self, u: &[f64]) -> f64 {
        let cos: f64 = u.iter().zip(&self.center).map(|(a, b)| a * b).sum();
        let theta = cos.clamp(-1.0, 1.0).acos();
        let r = theta / self.delta;
        if r >= 1.0 || self.amplitude == 0.0 {
            return 0.0;
        }
        self.amplitude * (-self.shape / (1.0 - r * r)).exp()
    }

    /// Value at a covector of the absolute, through its direction.
    pub fn eval(&self, xi: &AbsoluteCovector) -> f64 {
        self.at_direction(&xi.direction())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::absolute_covector;

    #[test]
    fn support_and_peak() {
        let p = AbsoluteProfile::new(vec![0.0, 0.0, 2.0], 0.3, 1.0).unwrap();
        assert_eq!(p.center(), &[0.0, 0.0, 1.0]);
        assert!((p.at_direction(&[0.0, 0.0, 1.0]) - (-1.0f64).exp()).abs() < 1e-15);
        let inside = [0.29f64.sin(), 0.0, 0.29f64.cos()];
        let outside = [0.31f64.sin(), 0.0, 0.31f64.cos()];
        assert!(p.at_direction(&inside) > 0.0);
        assert_eq!(p.at_direction(&outside), 0.0);
        let xi = absolute_covector(&outside).unwrap().scaled(3.0).unwrap();
        assert_eq!(p.eval(&xi), 0.0);
        assert_eq!(p.scaled(0.0).at_direction(&[0.0, 0.0, 1.0]), 0.0);
    }

    #[test]
    fn smooth_at_the_rim() {
        // Every derivative vanishes at θ = δ; the value is already below 1e−20 at 0.99δ.
        let p = AbsoluteProfile::new(vec![1.0, 0.0], 0.5, 1.0).unwrap();
        let t = 0.495f64;
        assert!(p.at_direction(&[t.cos(), t.sin()]) < 1e-20);
        assert!(AbsoluteProfile::new(vec![1.0, 0.0], 0.0, 1.0).is_err());
        assert!(AbsoluteProfile::new(vec![0.0, 0.0], 0.5, 1.0).is_err());
    }
}
