//! Seeded trial batches and acceptance curves.
//!
//! Trial `i` runs the tester with seed `derive_seed(master, i)`; with fresh
//! instances its graph comes from `derive_seed(instance_seed, i)`. Records
//! are kept in trial order, so results do not depend on scheduling.

use std::borrow::Cow;

use graphtest_core::generate::{self, GenSpec};
use graphtest_core::testers::{self, TestedProperty, TesterConfig};
use graphtest_core::{derive_seed, Graph};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, InstanceSource, Sweep};
use crate::error::Result;
use crate::format::load_graph;
use crate::stats::TrialStats;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub epsilon: f64,
    pub c: f64,
    pub tau: f64,
    pub n: usize,
}

/// One tester invocation, serialized as a JSON line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub property: &'static str,
    pub params: TrialParams,
    pub seed: u64,
    pub s_requested: usize,
    pub s_used: usize,
    pub accepted: bool,
    pub witness_size: Option<usize>,
}

impl TrialRecord {
    fn new(config: &TesterConfig, n: usize, outcome: &testers::TestOutcome) -> Self {
        let (rho, k) = match config.property {
            TestedProperty::IndepSet { rho } | TestedProperty::Clique { rho } => (Some(rho), None),
            TestedProperty::KColorable { k } => (None, Some(k)),
        };
        TrialRecord {
            property: config.property.name(),
            params: TrialParams {
                rho,
                k,
                epsilon: config.epsilon,
                c: config.constant_c,
                tau: config.gap_tau,
                n,
            },
            seed: config.seed,
            s_requested: outcome.sample_size_requested,
            s_used: outcome.sample_size_used,
            accepted: outcome.accepted,
            witness_size: outcome.witness.as_ref().map(|w| w.size()),
        }
    }
}

/// Summary line of the CSV report; field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub property: &'static str,
    pub n: usize,
    pub rho_or_k: f64,
    pub epsilon: f64,
    pub c: f64,
    pub tau: f64,
    pub s: usize,
    pub trials: u64,
    pub accepts: u64,
    pub rate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

pub const CSV_HEADER: &str =
    "property,n,rho_or_k,epsilon,c,tau,s,trials,accepts,rate,wilson_low,wilson_high";

#[derive(Clone, Debug, PartialEq)]
pub struct TrialBatch {
    pub tester: TesterConfig,
    pub n: usize,
    pub records: Vec<TrialRecord>,
    pub stats: TrialStats,
}

impl TrialBatch {
    /// Sample size of the batch; the largest used if it varied.
    pub fn sample_size(&self) -> usize {
        self.records.iter().map(|r| r.s_used).max().unwrap_or(0)
    }

    pub fn summary(&self) -> SummaryRow {
        SummaryRow {
            property: self.tester.property.name(),
            n: self.n,
            rho_or_k: self.tester.property.parameter(),
            epsilon: self.tester.epsilon,
            c: self.tester.constant_c,
            tau: self.tester.gap_tau,
            s: self.sample_size(),
            trials: self.stats.trials,
            accepts: self.stats.accepts,
            rate: self.stats.acceptance_rate,
            wilson_low: self.stats.wilson_low,
            wilson_high: self.stats.wilson_high,
        }
    }
}

enum Instances {
    Fixed(Graph),
    Fresh(GenSpec),
}

impl Instances {
    fn load(config: &ExperimentConfig) -> Result<Self> {
        config.validate()?;
        Ok(match &config.instance {
            InstanceSource::File(path) => Instances::Fixed(load_graph(path)?),
            InstanceSource::Generated(spec) if config.fresh_instances => {
                Instances::Fresh(spec.clone())
            }
            InstanceSource::Generated(spec) => Instances::Fixed(generate::generate(spec)?),
        })
    }

    fn graph(&self, trial: u64) -> Result<Cow<'_, Graph>> {
        Ok(match self {
            Instances::Fixed(g) => Cow::Borrowed(g),
            Instances::Fresh(spec) => {
                let spec = GenSpec::new(spec.model.clone(), derive_seed(spec.seed, trial));
                Cow::Owned(generate::generate(&spec)?)
            }
        })
    }

    fn n(&self) -> usize {
        match self {
            Instances::Fixed(g) => g.n(),
            Instances::Fresh(spec) => spec.vertex_count(),
        }
    }
}

fn batch(instances: &Instances, tester: &TesterConfig, trials: u64) -> Result<TrialBatch> {
    tester.validate()?;
    let records = (0..trials)
        .into_par_iter()
        .map(|i| {
            let g = instances.graph(i)?;
            let cfg = tester.clone().with_seed(derive_seed(tester.seed, i));
            let outcome = testers::run_tester(&g, &cfg)?;
            Ok(TrialRecord::new(&cfg, g.n(), &outcome))
        })
        .collect::<Result<Vec<_>>>()?;
    let accepts = records.iter().filter(|r| r.accepted).count() as u64;
    Ok(TrialBatch {
        tester: tester.clone(),
        n: instances.n(),
        stats: TrialStats::new(accepts, trials),
        records,
    })
}

/// Runs `config.trials` independent tester invocations.
pub fn run_trial_batch(config: &ExperimentConfig) -> Result<TrialBatch> {
    let instances = Instances::load(config)?;
    batch(&instances, &config.tester, config.trials)
}

pub fn run_trials(config: &ExperimentConfig) -> Result<TrialStats> {
    Ok(run_trial_batch(config)?.stats)
}

/// One batch per sweep value, each overriding the formula's sample size
/// (or the constant `c`). Rows report the sample size actually used, so a
/// value above `n` shows up as `n`.
pub fn acceptance_curve(config: &ExperimentConfig, sweep: &Sweep) -> Result<Vec<TrialBatch>> {
    if sweep.is_empty() {
        return Ok(Vec::new());
    }
    let instances = Instances::load(config)?;
    let testers: Vec<TesterConfig> = match sweep {
        Sweep::SampleSizes(values) => values
            .iter()
            .map(|&s| config.tester.clone().with_sample_size(s))
            .collect(),
        Sweep::Constants(values) => values
            .iter()
            .map(|&c| config.tester.clone().with_constant(c))
            .collect(),
    };
    testers
        .iter()
        .map(|t| batch(&instances, t, config.trials))
        .collect()
}

pub fn write_csv<W: std::io::Write>(out: W, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// One JSON object per line.
pub fn write_json_lines<W: std::io::Write, T: Serialize>(mut out: W, records: &[T]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphtest_core::generate::Model;

    fn coloring_config(trials: u64) -> ExperimentConfig {
        let spec = GenSpec::new(
            Model::PlantedColoring {
                n: 60,
                k: 3,
                p: 0.5,
            },
            3,
        );
        let tester = TesterConfig::k_colorable(3, 0.2).with_seed(11);
        ExperimentConfig::new(InstanceSource::Generated(spec), tester, trials)
    }

    #[test]
    fn colorable_instance_always_accepted() {
        let stats = run_trials(&coloring_config(40)).unwrap();
        assert_eq!(stats.accepts, 40);
        assert_eq!(stats.acceptance_rate, 1.0);
    }

    #[test]
    fn deterministic_and_single_trial_binary() {
        let a = run_trial_batch(&coloring_config(8).with_fresh_instances()).unwrap();
        let b = run_trial_batch(&coloring_config(8).with_fresh_instances()).unwrap();
        assert_eq!(a, b);
        let one = run_trials(&coloring_config(1)).unwrap();
        assert!(one.acceptance_rate == 0.0 || one.acceptance_rate == 1.0);
    }

    #[test]
    fn curve_rows_and_cap() {
        let cfg = coloring_config(3);
        assert!(acceptance_curve(&cfg, &Sweep::SampleSizes(vec![]))
            .unwrap()
            .is_empty());
        let rows = acceptance_curve(&cfg, &Sweep::SampleSizes(vec![5, 500])).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].summary().s, 5);
        assert_eq!(rows[1].summary().s, 60);
        assert_eq!(rows[1].records.len(), 3);
    }

    #[test]
    fn csv_header_is_exact() {
        let batch = run_trial_batch(&coloring_config(2)).unwrap();
        let mut out = Vec::new();
        write_csv(&mut out, &[batch.summary()]).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert!(lines
            .next()
            .unwrap()
            .starts_with("k_colorable,60,3.0,0.2,4.0,0.0,"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn json_record_fields() {
        let batch = run_trial_batch(&coloring_config(1)).unwrap();
        let value = serde_json::to_value(&batch.records[0]).unwrap();
        let mut keys: Vec<&str> = value
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            [
                "accepted",
                "params",
                "property",
                "s_requested",
                "s_used",
                "seed",
                "witness_size"
            ]
        );
    }
}
