use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;
pub const MAX_FAMILY_SIZE: usize = 16;
pub const DEFAULT_SPECTRUM: (f64, f64) = (0.1, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `A_i >= I`
    Expansive,
    /// `A_i <= I`
    Contractive,
    Unconstrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    /// All matrices of an instance share one eigenbasis.
    Commuting,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub spectrum_min: f64,
    pub spectrum_max: f64,
    pub shape: Shape,
    pub structure: Structure,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        Self {
            spectrum_min: DEFAULT_SPECTRUM.0,
            spectrum_max: DEFAULT_SPECTRUM.1,
            shape: Shape::Unconstrained,
            structure: Structure::General,
        }
    }
}

/// One batch of randomized trials.
///
/// `dim` and `family_size` are upper bounds: each trial draws its own
/// dimension from `1..=dim` and family size from `1..=family_size` unless
/// `exact_dims` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub dim: usize,
    pub family_size: usize,
    pub tolerance: f64,
    pub generator: GeneratorSpec,
    #[serde(default)]
    pub exact_dims: bool,
}

impl TrialConfig {
    pub fn new(suite: impl Into<String>, trials: u64, seed: u64) -> Self {
        Self {
            suite: suite.into(),
            trials,
            seed,
            dim: 4,
            family_size: 2,
            tolerance: 1e-9,
            generator: GeneratorSpec::default(),
            exact_dims: false,
        }
    }

    pub fn dim(mut self, dim: usize) -> Self {
        self.dim = dim;
        self
    }

    pub fn family_size(mut self, m: usize) -> Self {
        self.family_size = m;
        self
    }

    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn generator(mut self, generator: GeneratorSpec) -> Self {
        self.generator = generator;
        self
    }

    pub fn exact_dims(mut self, exact: bool) -> Self {
        self.exact_dims = exact;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if !(1..=MAX_DIM).contains(&self.dim) {
            return Err(Error::Config(format!("dim must lie in 1..={MAX_DIM}, got {}", self.dim)));
        }
        if !(1..=MAX_FAMILY_SIZE).contains(&self.family_size) {
            return Err(Error::Config(format!(
                "family size must lie in 1..={MAX_FAMILY_SIZE}, got {}",
                self.family_size
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Config(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        let g = &self.generator;
        if !(g.spectrum_min.is_finite() && g.spectrum_max.is_finite() && 0.0 < g.spectrum_min && g.spectrum_min < g.spectrum_max) {
            return Err(Error::Config(format!(
                "spectrum range must satisfy 0 < min < max, got [{}, {}]",
                g.spectrum_min, g.spectrum_max
            )));
        }
        if g.shape == Shape::Contractive && g.spectrum_min >= 1.0 {
            return Err(Error::Config("contractive generator needs spectrum_min < 1".into()));
        }
        Ok(())
    }
}
