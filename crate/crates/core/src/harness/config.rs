use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::convex::BodySpec;
use crate::error::{Error, Result};
use crate::lcfun::FunctionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    ClassicalFormula,
    CovariogramMass,
    RogersShephardBodies,
    ZhangFunctional,
    Matheron,
    Chain,
    MellinSuite,
    ScalingLaws,
    RogersShephardFunctional,
    SupportIdentity,
    ZhangPettyBodies,
    TangentBound,
}

impl ExperimentKind {
    pub fn describe(self) -> &'static str {
        match self {
            Self::ClassicalFormula => "(1/n!)·∫e^{-‖x‖_K} = vol(K), closed form and importance-sampled Monte Carlo",
            Self::CovariogramMass => "∫g_{K,m} = vol(K)^{m+1} by Monte Carlo over (DK)^m",
            Self::RogersShephardBodies => "vol(D^m K) ≤ binom(n(m+1), n)·vol(K)^m",
            Self::ZhangFunctional => "(1/(nm)!)∫g_{f,m} ≤ ‖f‖_1^{nm+1}·vol(Π^{∘,m}⟨f⟩)",
            Self::Matheron => "radial derivative of g_{f,m} at 0 equals minus the projection gauge",
            Self::Chain => "normalized radial mean bodies decrease in p and stay inside the projection endpoint",
            Self::MellinSuite => "Mellin transform monotonicity, Berwald equality, limits at p → ∞ and p → 0",
            Self::ScalingLaws => "R_p^m f against R_p^m K for exponential, Gaussian and f_{p,K} profiles",
            Self::RogersShephardFunctional => "functional Rogers–Shephard for sup- and integral convolutions",
            Self::SupportIdentity => "R_p^m χ_L approaches D^m L as p grows",
            Self::ZhangPettyBodies => "Zhang and Petty bounds for vol(Π^{∘,m}K)·vol(K)^{m(n-1)}",
            Self::TangentBound => "g_{f,m}(x̄) ≤ ‖f‖_1·exp(-‖x̄‖_{Π^{∘,m}⟨f⟩}/‖f‖_1)",
        }
    }
}

/// A function with an order `m`, or with a point or direction `theta` in
/// `R^{nm}` from which `m = theta.len() / n` is read.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub function: FunctionSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theta: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl CaseSpec {
    pub fn order(&self, n: usize) -> usize {
        self.m.unwrap_or(if self.theta.is_empty() { 1 } else { self.theta.len() / n })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub experiment: ExperimentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bodies: Vec<BodySpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<FunctionSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<CaseSpec>,
    #[serde(default = "default_orders")]
    pub orders: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p_grid: Vec<f64>,
    #[serde(default = "default_directions")]
    pub directions: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Randomized triples for the multi-function Rogers–Shephard check.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub random_families: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

fn default_orders() -> Vec<usize> {
    vec![1]
}

fn default_directions() -> usize {
    64
}

fn default_samples() -> usize {
    200_000
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl ExperimentConfig {
    pub fn new(name: &str, experiment: ExperimentKind) -> Self {
        Self {
            name: name.into(),
            experiment,
            description: None,
            bodies: Vec::new(),
            functions: Vec::new(),
            cases: Vec::new(),
            orders: default_orders(),
            p_grid: Vec::new(),
            directions: default_directions(),
            seed: 0,
            samples: default_samples(),
            random_families: 0,
            out: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => bad(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Dimensions of every input, building each body and function once.
    fn input_dims(&self) -> Result<Vec<usize>> {
        let mut dims = Vec::new();
        for b in &self.bodies {
            dims.push(b.build().map_err(|e| bad(format!("body: {e}")))?.dim());
        }
        for f in &self.functions {
            dims.push(f.build().map_err(|e| bad(format!("function: {e}")))?.dim());
        }
        Ok(dims)
    }

    /// Schema-level checks, run before any computation.
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(bad("name must not be empty"));
        }
        if self.orders.is_empty() || self.orders.contains(&0) {
            return Err(bad("orders must be a non-empty list of positive integers"));
        }
        if self.directions < 2 {
            return Err(bad("directions must be at least 2"));
        }
        if self.samples < 100 {
            return Err(bad("samples must be at least 100"));
        }
        if self.p_grid.iter().any(|p| !p.is_finite() || *p <= -1.0) {
            return Err(bad("p_grid entries must be finite and greater than -1"));
        }
        let dims = self.input_dims()?;
        if dims.iter().any(|&n| n > 3) {
            return Err(bad("inputs must have dimension at most 3"));
        }
        let max_m = *self.orders.iter().max().unwrap();
        if dims.iter().any(|&n| n * max_m > 6) {
            return Err(bad("n·m must not exceed 6"));
        }
        for c in &self.cases {
            let n = c.function.build().map_err(|e| bad(format!("case function: {e}")))?.dim();
            let m = c.order(n);
            if m == 0 || n * m > 6 {
                return Err(bad(format!("case order {m} does not fit dimension {n}")));
            }
            let needs_theta = matches!(self.experiment, ExperimentKind::Matheron | ExperimentKind::TangentBound);
            if needs_theta && c.theta.len() != n * m {
                return Err(bad(format!("case needs theta of length n·m = {}", n * m)));
            }
            if self.experiment == ExperimentKind::Matheron && c.theta.iter().all(|v| *v == 0.0) {
                return Err(bad("matheron directions must be non-zero"));
            }
        }
        use ExperimentKind::*;
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(bad(format!("{what} required for this experiment"))) };
        match self.experiment {
            ClassicalFormula | CovariogramMass | RogersShephardBodies | ZhangPettyBodies => {
                need(!self.bodies.is_empty(), "bodies")
            }
            ZhangFunctional | SupportIdentity => need(!self.functions.is_empty(), "functions"),
            Matheron | TangentBound => need(!self.cases.is_empty(), "cases"),
            Chain => {
                need(!self.bodies.is_empty() || !self.functions.is_empty(), "bodies or functions")?;
                need(!self.p_grid.is_empty(), "p_grid")
            }
            ScalingLaws => {
                need(!self.bodies.is_empty(), "bodies")?;
                need(!self.p_grid.is_empty(), "p_grid")
            }
            RogersShephardFunctional => need(!self.cases.is_empty() || self.random_families > 0, "cases or random_families"),
            MellinSuite => Ok(()),
        }
    }

    /// Output directory: the config's own, else `results/<name>`.
    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("results").join(&self.name))
    }
}
