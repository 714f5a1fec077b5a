//! Gamma-family functions. Thin wrappers over `statrs` plus the generalized
//! binomial coefficient.

pub use statrs::function::gamma::{digamma, gamma, ln_gamma};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `B(a, b) = Γ(a)Γ(b)/Γ(a+b)` for positive arguments.
pub fn beta(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// `Γ(a+1) / (Γ(b+1) Γ(a-b+1))` for `a ≥ b ≥ 0`.
pub fn binomial(a: f64, b: f64) -> f64 {
    (ln_gamma(a + 1.0) - ln_gamma(b + 1.0) - ln_gamma(a - b + 1.0)).exp()
}

/// `n!` as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert!((gamma(0.5) - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert!((gamma(-0.5) + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert!((binomial(4.0, 2.0) - 6.0).abs() < 1e-12);
        assert!((binomial(6.0, 2.0) - 15.0).abs() < 1e-11);
        assert!((beta(1.0, 2.0) - 0.5).abs() < 1e-14);
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-12);
        assert_eq!(factorial(4), 24.0);
    }
}
