//! Canonical ε-testers: sample `s` vertices without replacement, look only
//! at the induced subgraph, and decide.
//!
//! * ρ-independent set: accept iff `G[S]` has an independent set of
//!   `⌈(ρ − τ)s⌉` vertices, `s = ⌈c·(ρ³/ε²)·ln³(1/ε)⌉`.
//! * ρ-clique: the same test on the complement.
//! * k-colorable: accept iff `G[S]` is k-colorable, `s = ⌈c·(k/ε)·ln²(1/ε)⌉`.
//!
//! Sample sizes are capped at `n` (and at `sample_cap` when set).

use alloc::vec::Vec;

use log::warn;

use crate::ceil_count;
use crate::error::{check_fraction, Error, Result};
use crate::generate::sample_vertices;
use crate::graph::Graph;
use crate::search::{independent_set_of_size, k_coloring};
use crate::VertexSet;

/// Default for the unspecified "large enough" constant in the sample sizes.
pub const DEFAULT_CONSTANT: f64 = 4.0;

fn check_constant(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "c",
            value: c,
            expected: "a positive finite constant",
        })
    }
}

fn to_count(x: f64) -> usize {
    // Saturating float-to-int cast.
    libm::ceil(x) as usize
}

/// `c·(ρ³/ε²)·ln³(1/ε)` before rounding.
pub fn indepset_sample_bound(rho: f64, epsilon: f64, c: f64) -> Result<f64> {
    check_fraction("rho", rho, true)?;
    check_fraction("epsilon", epsilon, false)?;
    check_constant(c)?;
    if epsilon >= rho * rho {
        warn!(
            "epsilon {epsilon} >= rho^2 = {}: every graph is close to the property",
            rho * rho
        );
    }
    let log = libm::log(1.0 / epsilon);
    Ok(c * rho * rho * rho / (epsilon * epsilon) * log * log * log)
}

/// `⌈c·(ρ³/ε²)·ln³(1/ε)⌉`.
pub fn sample_size_indepset(rho: f64, epsilon: f64, c: f64) -> Result<usize> {
    indepset_sample_bound(rho, epsilon, c).map(to_count)
}

/// `c·(k/ε)·ln²(1/ε)` before rounding.
pub fn kcol_sample_bound(k: usize, epsilon: f64, c: f64) -> Result<f64> {
    check_k(k)?;
    check_fraction("epsilon", epsilon, false)?;
    check_constant(c)?;
    if epsilon * k as f64 >= 1.0 {
        warn!("epsilon {epsilon} >= 1/k: every graph is close to {k}-colorable");
    }
    let log = libm::log(1.0 / epsilon);
    Ok(c * k as f64 / epsilon * log * log)
}

/// `⌈c·(k/ε)·ln²(1/ε)⌉`.
pub fn sample_size_kcol(k: usize, epsilon: f64, c: f64) -> Result<usize> {
    kcol_sample_bound(k, epsilon, c).map(to_count)
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidParameter {
            name: "k",
            value: 0.0,
            expected: "k >= 1",
        })
    } else {
        Ok(())
    }
}

/// Sample size `⌈c·x·ln³x⌉`, `x = n/(δ²k)`, for distinguishing graphs with a
/// k-clique from graphs whose k-subgraphs all have at most `(1 − δ)k²`
/// edges. The log factor is clamped below at 1 (i.e. for `x < e`).
pub fn dks_params(n: usize, k: usize, delta: f64, c: f64) -> Result<usize> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter {
            name: "k",
            value: k as f64,
            expected: "1 <= k < n",
        });
    }
    check_fraction("delta", delta, true)?;
    check_constant(c)?;
    let x = n as f64 / (delta * delta * k as f64);
    let mut log = libm::log(x);
    if log < 1.0 {
        warn!("ln(n/(delta^2 k)) = {log} < 1; clamping the log factor to 1");
        log = 1.0;
    }
    Ok(to_count(c * x * log * log * log))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TestedProperty {
    IndepSet { rho: f64 },
    Clique { rho: f64 },
    KColorable { k: usize },
}

impl TestedProperty {
    pub fn name(&self) -> &'static str {
        match self {
            TestedProperty::IndepSet { .. } => "indep_set",
            TestedProperty::Clique { .. } => "clique",
            TestedProperty::KColorable { .. } => "k_colorable",
        }
    }

    /// `ρ` or `k` as a number.
    pub fn parameter(&self) -> f64 {
        match *self {
            TestedProperty::IndepSet { rho } | TestedProperty::Clique { rho } => rho,
            TestedProperty::KColorable { k } => k as f64,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TesterConfig {
    pub property: TestedProperty,
    pub epsilon: f64,
    pub constant_c: f64,
    /// Gap τ: the independent-set tester looks for `⌈(ρ − τ)s⌉` vertices.
    pub gap_tau: f64,
    pub seed: u64,
    pub sample_cap: Option<usize>,
    /// Fixed sample size replacing the formula (used by acceptance sweeps).
    pub sample_override: Option<usize>,
}

impl TesterConfig {
    pub fn new(property: TestedProperty, epsilon: f64) -> Self {
        TesterConfig {
            property,
            epsilon,
            constant_c: DEFAULT_CONSTANT,
            gap_tau: 0.0,
            seed: 0,
            sample_cap: None,
            sample_override: None,
        }
    }

    pub fn indep_set(rho: f64, epsilon: f64) -> Self {
        Self::new(TestedProperty::IndepSet { rho }, epsilon)
    }

    pub fn clique(rho: f64, epsilon: f64) -> Self {
        Self::new(TestedProperty::Clique { rho }, epsilon)
    }

    pub fn k_colorable(k: usize, epsilon: f64) -> Self {
        Self::new(TestedProperty::KColorable { k }, epsilon)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_constant(mut self, c: f64) -> Self {
        self.constant_c = c;
        self
    }

    pub fn with_gap(mut self, tau: f64) -> Self {
        self.gap_tau = tau;
        self
    }

    pub fn with_sample_size(mut self, s: usize) -> Self {
        self.sample_override = Some(s);
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_fraction("epsilon", self.epsilon, false)?;
        check_constant(self.constant_c)?;
        match self.property {
            TestedProperty::IndepSet { rho } | TestedProperty::Clique { rho } => {
                check_fraction("rho", rho, true)?;
                if !(self.gap_tau >= 0.0 && self.gap_tau < rho) {
                    return Err(Error::InvalidParameter {
                        name: "tau",
                        value: self.gap_tau,
                        expected: "0 <= tau < rho",
                    });
                }
                Ok(())
            }
            TestedProperty::KColorable { k } => check_k(k),
        }
    }

    /// Sample size before capping at `n`.
    pub fn requested_sample_size(&self) -> Result<usize> {
        self.validate()?;
        if let Some(s) = self.sample_override {
            return Ok(s);
        }
        match self.property {
            TestedProperty::IndepSet { rho } | TestedProperty::Clique { rho } => {
                sample_size_indepset(rho, self.epsilon, self.constant_c)
            }
            TestedProperty::KColorable { k } => sample_size_kcol(k, self.epsilon, self.constant_c),
        }
    }

    pub fn used_sample_size(&self, n: usize) -> Result<usize> {
        let cap = self.sample_cap.unwrap_or(n).min(n);
        Ok(self.requested_sample_size()?.min(cap))
    }
}

/// Witness found in the sample, in the input graph's labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TestWitness {
    IndependentSet(VertexSet),
    Clique(VertexSet),
    /// `(vertex, color)` for every sampled vertex.
    Coloring(Vec<(usize, usize)>),
}

impl TestWitness {
    /// Set size, or number of colors used.
    pub fn size(&self) -> usize {
        match self {
            TestWitness::IndependentSet(s) | TestWitness::Clique(s) => s.len(),
            TestWitness::Coloring(c) => c.iter().map(|&(_, col)| col + 1).max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestOutcome {
    pub accepted: bool,
    pub sample: VertexSet,
    pub sample_size_requested: usize,
    pub sample_size_used: usize,
    pub witness: Option<TestWitness>,
}

fn wrong_property(expected: &'static str) -> Error {
    Error::InvalidParameter {
        name: "property",
        value: f64::NAN,
        expected,
    }
}

/// Runs whichever tester `config.property` names.
pub fn run_tester(g: &Graph, config: &TesterConfig) -> Result<TestOutcome> {
    match config.property {
        TestedProperty::IndepSet { .. } => test_indep_set(g, config),
        TestedProperty::Clique { .. } => test_clique(g, config),
        TestedProperty::KColorable { .. } => test_k_colorable(g, config),
    }
}

pub fn test_indep_set(g: &Graph, config: &TesterConfig) -> Result<TestOutcome> {
    match config.property {
        TestedProperty::IndepSet { rho } => large_set_test(g, config, rho, false),
        _ => Err(wrong_property("an indep_set configuration")),
    }
}

/// The independent-set tester applied to the complement; since only the
/// seed and `n` determine the sample, this matches running
/// [`test_indep_set`] on `g.complement()` with the same seed.
pub fn test_clique(g: &Graph, config: &TesterConfig) -> Result<TestOutcome> {
    match config.property {
        TestedProperty::Clique { rho } => large_set_test(g, config, rho, true),
        _ => Err(wrong_property("a clique configuration")),
    }
}

fn large_set_test(
    g: &Graph,
    config: &TesterConfig,
    rho: f64,
    complement: bool,
) -> Result<TestOutcome> {
    let n = g.n();
    let requested = config.requested_sample_size()?;
    let used = config.used_sample_size(n)?;
    let sample = sample_vertices(n, used, config.seed)?;
    let induced = g.induced_subgraph(&sample);
    let view = if complement {
        induced.graph.complement()
    } else {
        induced.graph.clone()
    };
    let target = ceil_count(rho - config.gap_tau, used);
    let found = independent_set_of_size(&view, target);
    let witness = found.map(|set| {
        debug_assert!(view.is_independent(&set));
        let lifted = induced.lift(&set, n);
        if complement {
            TestWitness::Clique(lifted)
        } else {
            TestWitness::IndependentSet(lifted)
        }
    });
    Ok(TestOutcome {
        accepted: witness.is_some(),
        sample,
        sample_size_requested: requested,
        sample_size_used: used,
        witness,
    })
}

pub fn test_k_colorable(g: &Graph, config: &TesterConfig) -> Result<TestOutcome> {
    let TestedProperty::KColorable { k } = config.property else {
        return Err(wrong_property("a k_colorable configuration"));
    };
    let n = g.n();
    let requested = config.requested_sample_size()?;
    let used = config.used_sample_size(n)?;
    let sample = sample_vertices(n, used, config.seed)?;
    let induced = g.induced_subgraph(&sample);
    let witness = k_coloring(&induced.graph, k).map(|colors| {
        debug_assert_eq!(induced.graph.monochromatic_edges(&colors), 0);
        TestWitness::Coloring(induced.labels.iter().copied().zip(colors).collect())
    });
    Ok(TestOutcome {
        accepted: witness.is_some(),
        sample,
        sample_size_requested: requested,
        sample_size_used: used,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indepset_sample_size_by_hand() {
        // 12.5 * ln^3(10) = 152.60...
        assert_eq!(sample_size_indepset(0.5, 0.1, 1.0).unwrap(), 153);
        let one = indepset_sample_bound(0.4, 0.05, 1.0).unwrap();
        let two = indepset_sample_bound(0.4, 0.05, 2.0).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-9 * two);
        let half = indepset_sample_bound(0.4, 0.025, 1.0).unwrap();
        let ratio = 4.0 * (libm::log(40.0) / libm::log(20.0)).powi(3);
        assert!((half / one - ratio).abs() < 1e-9);
    }

    #[test]
    fn kcol_sample_size_by_hand() {
        // 30 * ln^2(10) = 159.06...
        assert_eq!(sample_size_kcol(3, 0.1, 1.0).unwrap(), 160);
        let base = kcol_sample_bound(3, 0.05, 1.0).unwrap();
        assert!((kcol_sample_bound(3, 0.05, 2.0).unwrap() - 2.0 * base).abs() < 1e-9);
        assert!((kcol_sample_bound(6, 0.05, 1.0).unwrap() - 2.0 * base).abs() < 1e-9);
    }

    #[test]
    fn trivial_regime_still_computes() {
        assert!(sample_size_indepset(0.2, 0.5, 1.0).is_ok());
        assert!(sample_size_kcol(4, 0.5, 1.0).is_ok());
        assert!(sample_size_kcol(0, 0.1, 1.0).is_err());
        assert!(sample_size_indepset(0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn dks_examples() {
        // 400 * ln^3(400) = 86031.79
        assert_eq!(dks_params(10_000, 100, 0.5, 1.0).unwrap(), 86_032);
        let a = dks_params(10_000, 100, 0.25, 1.0).unwrap() as f64;
        let b = dks_params(10_000, 100, 0.5, 1.0).unwrap() as f64;
        assert!(a / b > 4.0);
        // x = 100/99 and x = 10/9: log factor clamped, constant-size sample.
        assert_eq!(dks_params(100, 99, 1.0, 1.0).unwrap(), 2);
        assert_eq!(dks_params(10, 9, 1.0, 1.0).unwrap(), 2);
        assert!(dks_params(10, 10, 0.5, 1.0).is_err());
    }

    #[test]
    fn full_sample_is_exact() {
        let g = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        // rho = 0.4 needs 2 vertices out of 5: C_5 has them.
        let cfg = TesterConfig::indep_set(0.4, 0.1).with_sample_size(50);
        let out = test_indep_set(&g, &cfg).unwrap();
        assert!(out.accepted);
        assert_eq!((out.sample_size_requested, out.sample_size_used), (50, 5));
        let cfg = TesterConfig::indep_set(0.6, 0.1).with_sample_size(50);
        assert!(!test_indep_set(&g, &cfg).unwrap().accepted);
    }

    #[test]
    fn clique_on_edgeless_graph_rejects() {
        let g = Graph::empty(10);
        let cfg = TesterConfig::clique(0.3, 0.05).with_seed(3);
        let out = test_clique(&g, &cfg).unwrap();
        assert_eq!(out.sample_size_used, 10);
        assert!(!out.accepted);
    }

    #[test]
    fn colorability_examples() {
        let k4 = Graph::complete(4);
        let cfg = TesterConfig::k_colorable(3, 0.1);
        assert!(!test_k_colorable(&k4, &cfg).unwrap().accepted);
        let out = test_k_colorable(&Graph::complete(3), &cfg).unwrap();
        assert!(out.accepted);
        assert_eq!(out.witness.unwrap().size(), 3);
    }

    #[test]
    fn mismatched_property_is_rejected() {
        let g = Graph::empty(3);
        assert!(test_indep_set(&g, &TesterConfig::k_colorable(2, 0.1)).is_err());
        assert!(test_k_colorable(&g, &TesterConfig::clique(0.5, 0.1)).is_err());
        assert!(test_clique(&g, &TesterConfig::clique(0.5, 0.1).with_gap(0.6)).is_err());
    }
}
