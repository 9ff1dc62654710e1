//! Unit complex gains stored as canonical angles.
//!
//! A gain is a point on the complex unit circle. Only the angle is stored,
//! canonicalized into `(-pi, pi]`, so the modulus is exactly 1 by
//! construction and composing gains never drifts off the circle.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// Default tolerance for angle comparisons, measured on the circle.
pub const ANGLE_TOL: f64 = 1e-9;

/// Map an arbitrary angle into the canonical interval `(-pi, pi]`.
pub fn canonical_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t > PI {
        t - TAU
    } else {
        t
    }
}

/// Distance between two angles measured along the circle.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// A unit complex number `e^{i theta}` with `theta` in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gain {
    angle: f64,
}

impl Gain {
    /// The neutral gain 1.
    pub const ONE: Gain = Gain { angle: 0.0 };

    pub fn from_angle(theta: f64) -> Gain {
        Gain {
            angle: canonical_angle(theta),
        }
    }

    /// Canonical angle in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        self.angle
    }

    /// The same point expressed as a complex number.
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.angle.cos(), self.angle.sin())
    }

    /// Group inverse, i.e. complex conjugate on the circle.
    pub fn inverse(self) -> Gain {
        Gain::from_angle(-self.angle)
    }

    /// Group composition (complex multiplication).
    pub fn compose(self, other: Gain) -> Gain {
        Gain::from_angle(self.angle + other.angle)
    }

    /// Multiply by -1, i.e. shift the angle by pi.
    pub fn negated(self) -> Gain {
        Gain::from_angle(self.angle + PI)
    }

    pub fn real_part(self) -> f64 {
        self.angle.cos()
    }

    /// Angle equality on the circle within `tol`.
    pub fn approx_eq(self, other: Gain, tol: f64) -> bool {
        circle_distance(self.angle, other.angle) <= tol
    }

    /// True when the real part is nonnegative, i.e. the angle lies in
    /// `[-pi/2, pi/2]`.
    pub fn has_nonneg_real_part(self) -> bool {
        self.angle.abs() <= PI / 2.0 + f64::EPSILON
    }
}

impl Default for Gain {
    fn default() -> Self {
        Gain::ONE
    }
}
