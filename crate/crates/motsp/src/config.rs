//! Run configuration shared by the engine, the runner, and the CLI.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::TwoOptMode;
use crate::tsplib::Rounding;

/// Which scalarizations the per-offspring local search may draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum LsVariant {
    /// No local search.
    Off,
    /// Always a single objective, chosen uniformly per application.
    MethodA,
    /// Always the summed matrix.
    MethodB,
    /// Summed with probability 1/2, otherwise a uniform single objective.
    Modified,
}

impl std::fmt::Display for LsVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LsVariant::Off => "off",
            LsVariant::MethodA => "method-a",
            LsVariant::MethodB => "method-b",
            LsVariant::Modified => "modified",
        };
        f.write_str(s)
    }
}

/// All hyperparameters, operator probabilities, seed, and output location of
/// one run.
///
/// Defaults are the headline setting of the reproduced experiment: population
/// 400, 5000 generations, crossover 0.9, jumping gene 0.5, local search on
/// every offspring with the modified scalarization, one sweep per
/// application, nint rounding, hypervolume reference (200000, 200000).
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    /// One TSPLIB file per objective; order defines objective order.
    pub instance_paths: Vec<PathBuf>,
    pub rounding: Rounding,
    /// Population size N; kept even in practice because offspring are
    /// produced in pairs.
    pub pop: usize,
    pub generations: usize,
    pub p_crossover: f64,
    /// Jumping-gene probability per child.
    pub p_jg: f64,
    /// Local-search probability per child.
    pub p_local_search: f64,
    pub ls_variant: LsVariant,
    pub ls_mode: TwoOptMode,
    pub seed: u64,
    /// Reference point for the hypervolume indicator; length must equal the
    /// objective count.
    pub hv_reference: Vec<f64>,
    /// When set, `run` writes front.csv, run.json, and front.svg here.
    pub output_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            instance_paths: Vec::new(),
            rounding: Rounding::Nint,
            pop: 400,
            generations: 5000,
            p_crossover: 0.9,
            p_jg: 0.5,
            p_local_search: 1.0,
            ls_variant: LsVariant::Modified,
            ls_mode: TwoOptMode::OnePass,
            seed: 1,
            hv_reference: vec![200_000.0, 200_000.0],
            output_dir: None,
        }
    }
}

impl RunConfig {
    /// Checks field ranges. Returns human-readable warnings for legal but
    /// questionable settings (currently: an odd population size, which makes
    /// the last offspring pair contribute a single child).
    pub fn validate(&self) -> Result<Vec<String>> {
        for (name, p) in [
            ("p-crossover", self.p_crossover),
            ("p-jg", self.p_jg),
            ("p-local-search", self.p_local_search),
        ] {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(Error::InvalidConfig(format!(
                    "{name} must lie in [0, 1], got {p}"
                )));
            }
        }
        if self.pop < 2 {
            return Err(Error::InvalidConfig(format!(
                "population size must be at least 2, got {}",
                self.pop
            )));
        }
        let mut warnings = Vec::new();
        if self.pop % 2 == 1 {
            warnings.push(format!(
                "population size {} is odd; the last crossover of each generation contributes one child",
                self.pop
            ));
        }
        Ok(warnings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(RunConfig::default().validate().unwrap().is_empty());
    }

    #[test]
    fn out_of_range_probability_is_rejected() {
        let cfg = RunConfig {
            p_jg: 1.5,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn odd_population_warns() {
        let cfg = RunConfig {
            pop: 401,
            ..RunConfig::default()
        };
        assert_eq!(cfg.validate().unwrap().len(), 1);
    }
}
