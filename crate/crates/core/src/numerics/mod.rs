//! Shared numerical primitives: seeded sampling, adaptive quadrature,
//! derivative-free maximization of log-concave functions and the special
//! functions the rest of the crate leans on.

mod quadrature;
mod sampling;
mod search;
pub mod special;

use serde::{Deserialize, Serialize};

pub use quadrature::{integrate_1d, Endpoint, Limit, QuadratureConfig, Tail, TailBound};
pub use sampling::{
    monte_carlo_box, monte_carlo_mean, sphere_lattice_2d, sphere_sample, stream_rng, unit_sphere_area,
    SHARD_SIZE,
};
pub use search::{maximize_logconcave, Maximum};

/// A scalar estimate with its standard error and the number of samples or
/// quadrature nodes that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { value, std_error: 0.0, samples: 0 }
    }

    pub fn new(value: f64, std_error: f64, samples: usize) -> Self {
        debug_assert!(std_error.is_finite() && std_error >= 0.0);
        Self { value, std_error, samples }
    }

    /// Multiply by a deterministic constant.
    pub fn scale(self, c: f64) -> Self {
        Self { value: self.value * c, std_error: self.std_error * c.abs(), samples: self.samples }
    }

    /// Sum of independent estimates; errors add in quadrature.
    pub fn add(self, other: Estimate) -> Self {
        Self {
            value: self.value + other.value,
            std_error: self.std_error.hypot(other.std_error),
            samples: self.samples + other.samples,
        }
    }

    /// `value^k` with first-order error propagation.
    pub fn powf(self, k: f64) -> Self {
        let v = self.value.powf(k);
        let d = if self.value != 0.0 { (k * v / self.value).abs() } else { 0.0 };
        Self { value: v, std_error: d * self.std_error, samples: self.samples }
    }

    /// Whether `other` lies within `k` combined standard errors plus `slack`.
    pub fn agrees_with(&self, other: &Estimate, k: f64, slack: f64) -> bool {
        (self.value - other.value).abs() <= k * self.std_error.hypot(other.std_error) + slack
    }
}
