//! Container-lemma validation over corpora of certified far instances.
//!
//! Every entry claims that its graph is ε-far from a property and carries a
//! certificate: the edit distance computed by the exact oracle, or by the
//! closed form for complete graphs. Entries without a certificate covering
//! their claim are skipped. A failing entry is flagged rather than treated
//! as an error, since a wrong certificate is the only way it can fail.

use graphtest_core::container::{self, LemmaReport};
use graphtest_core::generate::{self, GenSpec, Model};
use graphtest_core::oracles;
use graphtest_core::search;
use graphtest_core::{ceil_count, derive_seed, Graph, VertexSet};
use log::warn;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LemmaClaim {
    /// ε-far from having an independent set of `⌈ρn⌉` vertices.
    IndepSet { rho: f64, epsilon: f64 },
    /// ε-far from k-colorable.
    KColorable { k: usize, epsilon: f64 },
}

impl LemmaClaim {
    pub fn epsilon(&self) -> f64 {
        match *self {
            LemmaClaim::IndepSet { epsilon, .. } | LemmaClaim::KColorable { epsilon, .. } => {
                epsilon
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateSource {
    Oracle,
    Analytic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub source: CertificateSource,
    pub edit_count: u64,
}

impl Certificate {
    /// `edit_count ≥ εn²`, up to floating-point noise in `ε`.
    pub fn covers(&self, epsilon: f64, n: usize) -> bool {
        let need = epsilon * (n * n) as f64;
        self.edit_count as f64 >= need * (1.0 - 1e-9)
    }
}

fn is_complete(g: &Graph) -> bool {
    g.edge_count() == g.n() * g.n().saturating_sub(1) / 2
}

/// Exact edit distance of `g` from the claimed property.
pub fn certify(g: &Graph, claim: &LemmaClaim) -> Result<Certificate> {
    let report = match *claim {
        LemmaClaim::IndepSet { rho, .. } => {
            oracles::distance_to_indep_set(g, ceil_count(rho, g.n()))?
        }
        LemmaClaim::KColorable { k, .. } => oracles::distance_to_k_colorable(g, k)?,
    };
    let source = if is_complete(g) {
        CertificateSource::Analytic
    } else {
        CertificateSource::Oracle
    };
    Ok(Certificate {
        source,
        edit_count: report.edit_count,
    })
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
    pub claim: LemmaClaim,
    pub certificate: Option<Certificate>,
}

impl CorpusEntry {
    /// Entry whose certificate is computed here.
    pub fn certified(name: impl Into<String>, graph: Graph, claim: LemmaClaim) -> Result<Self> {
        let certificate = Some(certify(&graph, &claim)?);
        Ok(CorpusEntry {
            name: name.into(),
            graph,
            claim,
            certificate,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidationSettings {
    /// Graphs up to this size have all their maximal independent sets tested.
    pub enumerate_up_to: usize,
    /// Safety cap on the enumeration.
    pub max_enumerated: usize,
    /// Random maximal independent sets tested on larger graphs.
    pub sampled_sets: usize,
    /// Random k-tuples tested per colorability entry.
    pub tuples: usize,
    pub seed: u64,
}

impl Default for ValidationSettings {
    fn default() -> Self {
        ValidationSettings {
            enumerate_up_to: 24,
            max_enumerated: 200_000,
            sampled_sets: 100,
            tuples: 100,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub lemma: &'static str,
    pub n: usize,
    pub parameter: f64,
    pub epsilon: f64,
    pub certificate: Option<CertificateSource>,
    pub edit_count: Option<u64>,
    pub sets_tested: usize,
    pub failures: usize,
    pub max_witness_t: usize,
    pub t_limit: usize,
    /// Failed tuples whose container partition was checked.
    pub partition_checks: usize,
    /// Of those, partitions with at least `εn²` monochromatic edges.
    pub partition_violations: usize,
    pub status: EntryStatus,
}

/// Result of the union search on one k-tuple, plus the partition check when
/// the search fails.
#[derive(Clone, Debug, PartialEq)]
pub struct TupleCheck {
    pub report: LemmaReport,
    pub monochromatic_edges: Option<usize>,
}

impl TupleCheck {
    /// A failed search must leave a partition with fewer than `εn²`
    /// monochromatic edges.
    pub fn partition_ok(&self, epsilon: f64, n: usize) -> Option<bool> {
        self.monochromatic_edges
            .map(|m| (m as f64) < epsilon * (n * n) as f64)
    }
}

pub fn check_tuple(g: &Graph, sets: &[VertexSet], epsilon: f64) -> Result<TupleCheck> {
    let report = container::find_small_union(g, sets, epsilon)?;
    let monochromatic_edges = if report.satisfied {
        None
    } else {
        Some(container::container_partition(g, sets, report.t_limit)?.monochromatic_edges)
    };
    Ok(TupleCheck {
        report,
        monochromatic_edges,
    })
}

/// All maximal independent sets for small graphs, otherwise `count` random
/// ones.
pub fn independent_set_pool(
    g: &Graph,
    settings: &ValidationSettings,
    count: usize,
) -> Vec<VertexSet> {
    if g.n() <= settings.enumerate_up_to {
        search::maximal_independent_sets(g, settings.max_enumerated)
    } else {
        (0..count as u64)
            .map(|j| search::random_maximal_independent_set(g, derive_seed(settings.seed, j)))
            .collect()
    }
}

/// `count` k-tuples drawn uniformly (with repetition) from `pool`.
pub fn random_tuples(pool: &[VertexSet], k: usize, count: usize, seed: u64) -> Vec<Vec<VertexSet>> {
    let len = pool.len() as u64;
    (0..count as u64)
        .map(|j| {
            (0..k as u64)
                .map(|i| pool[(derive_seed(seed, j * k as u64 + i) % len) as usize].clone())
                .collect()
        })
        .collect()
}

fn validate_entry(entry: &CorpusEntry, settings: &ValidationSettings) -> Result<EntryReport> {
    let g = &entry.graph;
    let n = g.n();
    let (lemma, parameter, epsilon) = match entry.claim {
        LemmaClaim::IndepSet { rho, epsilon } => ("single_container", rho, epsilon),
        LemmaClaim::KColorable { k, epsilon } => ("union", k as f64, epsilon),
    };
    let mut out = EntryReport {
        name: entry.name.clone(),
        lemma,
        n,
        parameter,
        epsilon,
        certificate: entry.certificate.map(|c| c.source),
        edit_count: entry.certificate.map(|c| c.edit_count),
        sets_tested: 0,
        failures: 0,
        max_witness_t: 0,
        t_limit: 0,
        partition_checks: 0,
        partition_violations: 0,
        status: EntryStatus::Skipped,
    };
    match entry.certificate {
        None => {
            warn!("{}: no farness certificate, skipped", entry.name);
            return Ok(out);
        }
        Some(c) if !c.covers(epsilon, n) => {
            warn!(
                "{}: certificate ({} edits) does not cover epsilon = {epsilon}, skipped",
                entry.name, c.edit_count
            );
            return Ok(out);
        }
        Some(_) => {}
    }
    let mut record = |report: &LemmaReport| {
        out.sets_tested += 1;
        out.t_limit = report.t_limit;
        if report.satisfied {
            out.max_witness_t = out.max_witness_t.max(report.witness_t);
        } else {
            out.failures += 1;
        }
    };
    match entry.claim {
        LemmaClaim::IndepSet { rho, epsilon } => {
            for set in independent_set_pool(g, settings, settings.sampled_sets) {
                record(&container::find_small_container(g, &set, rho, epsilon)?);
            }
        }
        LemmaClaim::KColorable { k, epsilon } => {
            let pool = independent_set_pool(g, settings, settings.tuples * k);
            let mut partition = (0, 0);
            for tuple in random_tuples(&pool, k, settings.tuples, settings.seed) {
                let check = check_tuple(g, &tuple, epsilon)?;
                record(&check.report);
                if let Some(ok) = check.partition_ok(epsilon, n) {
                    partition.0 += 1;
                    partition.1 += usize::from(!ok);
                }
            }
            out.partition_checks = partition.0;
            out.partition_violations = partition.1;
        }
    }
    out.status = if out.failures == 0 {
        EntryStatus::Passed
    } else {
        warn!(
            "{}: {} of {} sets failed",
            entry.name, out.failures, out.sets_tested
        );
        EntryStatus::Failed
    };
    Ok(out)
}

/// Runs the container-lemma searches on every certified entry, one report
/// per entry in corpus order.
pub fn validate_lemmas(
    corpus: &[CorpusEntry],
    settings: &ValidationSettings,
) -> Result<Vec<EntryReport>> {
    corpus
        .par_iter()
        .map(|e| validate_entry(e, settings))
        .collect()
}

fn complete_indep_epsilon(n: usize, rho: f64) -> f64 {
    oracles::complete_graph_indep_distance(ceil_count(rho, n)) as f64 / (n * n) as f64
}

/// Complete graphs `K_n`, claims at their exact distance from
/// `⌈ρn⌉`-independent sets.
pub fn complete_indep_entries(ns: &[usize], rhos: &[f64]) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for &n in ns {
        for &rho in rhos {
            let epsilon = complete_indep_epsilon(n, rho);
            let claim = LemmaClaim::IndepSet { rho, epsilon };
            out.push(CorpusEntry::certified(
                format!("K{n}/rho={rho}"),
                Graph::complete(n),
                claim,
            )?);
        }
    }
    Ok(out)
}

/// Complete graphs with claims `ε = min(cap, distance / n²)`.
pub fn complete_coloring_entries(ns: &[usize], k: usize, cap: f64) -> Result<Vec<CorpusEntry>> {
    ns.iter()
        .map(|&n| {
            let exact = oracles::complete_graph_coloring_distance(n, k) as f64 / (n * n) as f64;
            let claim = LemmaClaim::KColorable {
                k,
                epsilon: exact.min(cap),
            };
            CorpusEntry::certified(format!("K{n}/k={k}"), Graph::complete(n), claim)
        })
        .collect()
}

/// Oracle-certified `G(n, p)` samples claimed at their exact distance
/// (capped at `cap`). Graphs that already have the property are dropped.
pub fn random_entries(
    shapes: &[(usize, f64)],
    property: RandomClaim,
    cap: f64,
    seed: u64,
) -> Result<Vec<CorpusEntry>> {
    let entries: Vec<Option<CorpusEntry>> = shapes
        .par_iter()
        .enumerate()
        .map(|(i, &(n, p))| {
            let spec = GenSpec::new(Model::Gnp { n, p }, derive_seed(seed, i as u64));
            let g = generate::generate(&spec)?;
            let probe = match property {
                RandomClaim::IndepSet { rho } => LemmaClaim::IndepSet { rho, epsilon: 0.0 },
                RandomClaim::KColorable { k } => LemmaClaim::KColorable { k, epsilon: 0.0 },
            };
            let cert = certify(&g, &probe)?;
            if cert.edit_count == 0 {
                return Ok(None);
            }
            let epsilon = (cert.edit_count as f64 / (n * n) as f64).min(cap);
            let claim = match property {
                RandomClaim::IndepSet { rho } => LemmaClaim::IndepSet { rho, epsilon },
                RandomClaim::KColorable { k } => LemmaClaim::KColorable { k, epsilon },
            };
            Ok(Some(CorpusEntry {
                name: format!("gnp({n},{p})#{i}"),
                graph: g,
                claim,
                certificate: Some(cert),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(entries.into_iter().flatten().collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RandomClaim {
    IndepSet { rho: f64 },
    KColorable { k: usize },
}

/// Colorability claims must stay below `e^{-2}`.
pub const COLORING_EPSILON_CAP: f64 = 0.13;

/// Certified instances for the single-container lemma: `K_n` for
/// `n = 20, 40, …, 200` and `ρ ∈ {1/4, 3/10, 1/2}`, plus random graphs on
/// 12 to 20 vertices.
pub fn default_indep_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let ns: Vec<usize> = (1..=10).map(|i| 20 * i).collect();
    let mut out = complete_indep_entries(&ns, &[0.25, 0.3, 0.5])?;
    let mut shapes = Vec::new();
    for n in [12, 14, 16, 18, 20] {
        for p in [0.2, 0.35, 0.5, 0.65, 0.8] {
            shapes.push((n, p));
        }
    }
    out.extend(random_entries(
        &shapes,
        RandomClaim::IndepSet { rho: 0.5 },
        1.0,
        seed,
    )?);
    let quarter: Vec<(usize, f64)> = [12, 16, 20]
        .iter()
        .flat_map(|&n| [(n, 0.3), (n, 0.6)])
        .collect();
    out.extend(random_entries(
        &quarter,
        RandomClaim::IndepSet { rho: 0.25 },
        1.0,
        derive_seed(seed, 1),
    )?);
    Ok(out)
}

/// Certified instances for the union lemma with `k = 3`: `K_n` for
/// `n = 10, 15, …, 100` and random graphs on 14 vertices.
pub fn default_coloring_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let ns: Vec<usize> = (2..=20).map(|i| 5 * i).collect();
    let mut out = complete_coloring_entries(&ns, 3, COLORING_EPSILON_CAP)?;
    let shapes: Vec<(usize, f64)> = [0.5, 0.6, 0.7, 0.8, 0.9]
        .iter()
        .flat_map(|&p| [(14, p); 3])
        .collect();
    out.extend(random_entries(
        &shapes,
        RandomClaim::KColorable { k: 3 },
        COLORING_EPSILON_CAP,
        derive_seed(seed, 2),
    )?);
    Ok(out)
}

pub fn default_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut out = default_indep_corpus(seed)?;
    out.extend(default_coloring_corpus(seed)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_empty_report() {
        assert!(validate_lemmas(&[], &ValidationSettings::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn uncertified_entries_are_skipped() {
        let entry = CorpusEntry {
            name: "bare".into(),
            graph: Graph::complete(10),
            claim: LemmaClaim::IndepSet {
                rho: 0.5,
                epsilon: 0.1,
            },
            certificate: None,
        };
        let under = CorpusEntry {
            certificate: Some(Certificate {
                source: CertificateSource::Oracle,
                edit_count: 1,
            }),
            ..entry.clone()
        };
        let reports = validate_lemmas(&[entry, under], &ValidationSettings::default()).unwrap();
        assert!(reports
            .iter()
            .all(|r| r.status == EntryStatus::Skipped && r.sets_tested == 0));
    }

    #[test]
    fn complete_graph_entries_pass() {
        let mut corpus = complete_indep_entries(&[20, 40], &[0.5]).unwrap();
        corpus.extend(complete_coloring_entries(&[10, 20], 3, COLORING_EPSILON_CAP).unwrap());
        assert_eq!(
            corpus[0].certificate.unwrap().source,
            CertificateSource::Analytic
        );
        let reports = validate_lemmas(&corpus, &ValidationSettings::default()).unwrap();
        for r in &reports {
            assert_eq!(r.status, EntryStatus::Passed, "{r:?}");
            assert!(r.max_witness_t <= r.t_limit);
        }
        assert_eq!(reports[0].sets_tested, 20);
        assert_eq!(reports[1].sets_tested, 100);
    }

    #[test]
    fn tuples_are_deterministic() {
        let g = Graph::complete(6);
        let pool = independent_set_pool(&g, &ValidationSettings::default(), 0);
        assert_eq!(pool.len(), 6);
        let a = random_tuples(&pool, 3, 10, 5);
        assert_eq!(a, random_tuples(&pool, 3, 10, 5));
        assert!(a.iter().all(|t| t.len() == 3));
    }
}
