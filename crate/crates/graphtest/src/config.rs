//! Experiment configuration.
//!
//! [`RawConfig`] is the flat JSON/CLI view where every field is optional;
//! [`RawConfig::merge`] layers command-line values over a file and
//! [`RawConfig::resolve`] checks the result and builds an
//! [`ExperimentConfig`].

use std::fs;
use std::path::{Path, PathBuf};

use graphtest_core::generate::{GenSpec, Model};
use graphtest_core::testers::{TesterConfig, DEFAULT_CONSTANT};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RawConfig {
    pub model: Option<String>,
    pub n: Option<usize>,
    pub p: Option<f64>,
    pub rho: Option<f64>,
    pub k: Option<usize>,
    pub parts: Option<Vec<usize>>,
    pub input: Option<PathBuf>,
    pub property: Option<String>,
    pub eps: Option<f64>,
    pub c: Option<f64>,
    pub tau: Option<f64>,
    pub seed: Option<u64>,
    pub instance_seed: Option<u64>,
    pub fresh_instances: Option<bool>,
    pub trials: Option<u64>,
    pub sample_cap: Option<usize>,
    pub s_values: Option<Vec<usize>>,
    pub c_values: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field; } )*
    };
}

impl RawConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Fields set in `top` replace those in `self`.
    pub fn merge(mut self, top: RawConfig) -> Self {
        overlay!(self, top; model, n, p, rho, k, parts, input, property, eps, c, tau, seed,
            instance_seed, fresh_instances, trials, sample_cap, s_values, c_values, out);
        self
    }

    fn need<T: Copy>(value: Option<T>, name: &str, context: &str) -> Result<T> {
        value.ok_or_else(|| HarnessError::Config(format!("{context} needs --{name}")))
    }

    pub fn instance(&self) -> Result<InstanceSource> {
        if let Some(path) = &self.input {
            if self.model.is_some() {
                return Err(HarnessError::Config(
                    "give either an input file or a model, not both".into(),
                ));
            }
            return Ok(InstanceSource::File(path.clone()));
        }
        let name = self
            .model
            .as_deref()
            .ok_or_else(|| HarnessError::Config("no instance: pass --model or --input".into()))?;
        let ctx = format!("model {name}");
        let model = match name {
            "gnp" => Model::Gnp {
                n: Self::need(self.n, "n", &ctx)?,
                p: Self::need(self.p, "p", &ctx)?,
            },
            "planted_is" => Model::PlantedIndependentSet {
                n: Self::need(self.n, "n", &ctx)?,
                rho: Self::need(self.rho, "rho", &ctx)?,
                p: Self::need(self.p, "p", &ctx)?,
            },
            "planted_clique" => Model::PlantedClique {
                n: Self::need(self.n, "n", &ctx)?,
                rho: Self::need(self.rho, "rho", &ctx)?,
                p: Self::need(self.p, "p", &ctx)?,
            },
            "planted_coloring" => Model::PlantedColoring {
                n: Self::need(self.n, "n", &ctx)?,
                k: Self::need(self.k, "k", &ctx)?,
                p: Self::need(self.p, "p", &ctx)?,
            },
            "complete_multipartite" => Model::CompleteMultipartite {
                parts: self
                    .parts
                    .clone()
                    .ok_or_else(|| HarnessError::Config(format!("{ctx} needs --parts")))?,
            },
            "complete" => Model::Complete {
                n: Self::need(self.n, "n", &ctx)?,
            },
            "empty" => Model::Empty {
                n: Self::need(self.n, "n", &ctx)?,
            },
            other => return Err(HarnessError::Config(format!("unknown model {other:?}"))),
        };
        let seed = self.instance_seed.or(self.seed).unwrap_or(0);
        let spec = GenSpec::new(model, seed);
        spec.validate()?;
        Ok(InstanceSource::Generated(spec))
    }

    pub fn tester(&self) -> Result<TesterConfig> {
        let name = self.property.as_deref().unwrap_or("indep_set");
        let ctx = format!("property {name}");
        let eps = Self::need(self.eps, "eps", &ctx)?;
        let mut cfg = match name {
            "indep_set" => TesterConfig::indep_set(Self::need(self.rho, "rho", &ctx)?, eps),
            "clique" => TesterConfig::clique(Self::need(self.rho, "rho", &ctx)?, eps),
            "k_colorable" => TesterConfig::k_colorable(Self::need(self.k, "k", &ctx)?, eps),
            other => return Err(HarnessError::Config(format!("unknown property {other:?}"))),
        };
        cfg = cfg
            .with_constant(self.c.unwrap_or(DEFAULT_CONSTANT))
            .with_gap(self.tau.unwrap_or(0.0))
            .with_seed(self.seed.unwrap_or(0));
        cfg.sample_cap = self.sample_cap;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn sweep(&self) -> Result<Option<Sweep>> {
        match (&self.s_values, &self.c_values) {
            (Some(_), Some(_)) => Err(HarnessError::Config("sweep either s or c, not both".into())),
            (Some(s), None) => {
                if s.contains(&0) {
                    return Err(HarnessError::Config("sample sizes must be positive".into()));
                }
                Ok(Some(Sweep::SampleSizes(s.clone())))
            }
            (None, Some(c)) => {
                if c.iter().any(|&c| !(c > 0.0 && c.is_finite())) {
                    return Err(HarnessError::Config("constants must be positive".into()));
                }
                Ok(Some(Sweep::Constants(c.clone())))
            }
            (None, None) => Ok(None),
        }
    }

    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let trials = self.trials.unwrap_or(1);
        if trials == 0 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        let instance = self.instance()?;
        let fresh_instances = self.fresh_instances.unwrap_or(false);
        if fresh_instances && matches!(instance, InstanceSource::File(_)) {
            return Err(HarnessError::Config(
                "fresh instances need a generated model".into(),
            ));
        }
        Ok(ExperimentConfig {
            instance,
            fresh_instances,
            tester: self.tester()?,
            trials,
            sweep: self.sweep()?,
            output_path: self.out.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSource {
    Generated(GenSpec),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Sweep {
    SampleSizes(Vec<usize>),
    Constants(Vec<f64>),
}

impl Sweep {
    pub fn len(&self) -> usize {
        match self {
            Sweep::SampleSizes(v) => v.len(),
            Sweep::Constants(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub instance: InstanceSource,
    /// Draw a new instance for every trial (seed derived from the instance
    /// seed and the trial index) instead of reusing one graph.
    pub fresh_instances: bool,
    /// Tester settings; `tester.seed` is the master seed for the trials.
    pub tester: TesterConfig,
    pub trials: u64,
    pub sweep: Option<Sweep>,
    pub output_path: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(instance: InstanceSource, tester: TesterConfig, trials: u64) -> Self {
        ExperimentConfig {
            instance,
            fresh_instances: false,
            tester,
            trials,
            sweep: None,
            output_path: None,
        }
    }

    pub fn with_fresh_instances(mut self) -> Self {
        self.fresh_instances = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        if let InstanceSource::Generated(spec) = &self.instance {
            spec.validate()?;
        } else if self.fresh_instances {
            return Err(HarnessError::Config(
                "fresh instances need a generated model".into(),
            ));
        }
        self.tester.validate()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphtest_core::testers::TestedProperty;

    fn base() -> RawConfig {
        RawConfig::from_json(
            r#"{"model":"gnp","n":30,"p":0.5,"rho":0.3,"eps":0.1,"trials":5,"seed":9}"#,
        )
        .unwrap()
    }

    #[test]
    fn flags_override_file() {
        let top = RawConfig {
            n: Some(40),
            trials: Some(7),
            ..RawConfig::default()
        };
        let cfg = base().merge(top).resolve().unwrap();
        assert_eq!(cfg.trials, 7);
        assert_eq!(
            cfg.instance,
            InstanceSource::Generated(GenSpec::new(Model::Gnp { n: 40, p: 0.5 }, 9))
        );
        assert_eq!(cfg.tester.property, TestedProperty::IndepSet { rho: 0.3 });
        assert_eq!(cfg.tester.seed, 9);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(RawConfig::from_json(r#"{"bogus":1}"#).is_err());
        let zero = RawConfig {
            trials: Some(0),
            ..RawConfig::default()
        };
        assert!(base().merge(zero).resolve().is_err());
        let both = RawConfig {
            s_values: Some(vec![1]),
            c_values: Some(vec![1.0]),
            ..RawConfig::default()
        };
        assert!(base().merge(both).resolve().is_err());
        let no_k = RawConfig {
            property: Some("k_colorable".into()),
            ..RawConfig::default()
        };
        assert!(base().merge(no_k).resolve().is_err());
        let bad_eps = RawConfig {
            eps: Some(1.5),
            ..RawConfig::default()
        };
        let err = base().merge(bad_eps).resolve().unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
