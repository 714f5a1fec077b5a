//! Numerical toolkit for higher-order covariograms of convex bodies and
//! log-concave functions, their radial mean and polar projection bodies, and
//! the Rogers–Shephard and Zhang type inequalities that relate them.

pub mod convex;
pub mod covariogram;
pub mod error;
pub mod harness;
pub mod inequalities;
pub mod lcfun;
pub mod mellin;
pub mod mvector;
pub mod numerics;
pub mod projection;
pub mod starbody;

pub use error::{Error, Result};
