//! Fingerprints and containers of independent sets.
//!
//! For an independent set `I`, the generator starts from `F_0 = ∅`,
//! `C_0 = V` and for `t = 1, …, |I|`
//!
//! 1. picks `v_t`, the vertex of `I \ F_{t-1}` with the largest degree in
//!    `G[C_{t-1}]` (ties go to the smallest identifier),
//! 2. sets `F_t = F_{t-1} ∪ {v_t}`,
//! 3. removes from `C_{t-1}` every neighbor of `v_t` and every vertex whose
//!    degree in `G[C_{t-1}]` exceeds that of `v_t`.
//!
//! Beyond the last step the sequences are extended with `F_t = C_t = I`.
//! The validators in this module check the size bounds on single containers
//! and on unions of containers for graphs that are far from having a large
//! independent set or from being k-colorable.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::error::{check_fraction, Error, Result};
use crate::graph::Graph;

/// Relative slack applied when comparing exact counts against real-valued
/// bounds.
pub const BOUND_SLACK: f64 = 1e-9;

#[inline]
pub(crate) fn within(value: f64, bound: f64) -> bool {
    value <= bound + BOUND_SLACK * libm::fabs(bound).max(1.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainerTrace {
    source: VertexSet,
    chosen: Vec<usize>,
    // Index 0 holds F_0 = ∅ and C_0 = V.
    fingerprints: Vec<VertexSet>,
    containers: Vec<VertexSet>,
}

impl ContainerTrace {
    /// Runs the generator on `set`, which must be independent in `g`.
    pub fn generate(g: &Graph, set: &VertexSet) -> Result<Self> {
        Self::generate_steps(g, set, usize::MAX)
    }

    /// Like [`ContainerTrace::generate`] but stops after `steps` rounds.
    /// Accessors past the last generated round then fall back to the source
    /// set, which is only meaningful for complete traces.
    pub fn generate_steps(g: &Graph, set: &VertexSet, steps: usize) -> Result<Self> {
        g.require_independent(set)?;
        let n = g.n();
        let rounds = set.len().min(steps);
        let mut trace = ContainerTrace {
            source: set.clone(),
            chosen: Vec::with_capacity(rounds),
            fingerprints: vec![VertexSet::empty(n)],
            containers: vec![VertexSet::full(n)],
        };
        let mut degree = vec![0usize; n];
        for _ in 0..rounds {
            let prev_c = trace.containers.last().expect("C_0 present");
            let prev_f = trace.fingerprints.last().expect("F_0 present");
            for w in prev_c.iter() {
                degree[w] = g.degree_within(w, prev_c);
            }
            let v = set
                .iter()
                .filter(|&u| !prev_f.contains(u))
                .fold(None, |best: Option<usize>, u| match best {
                    Some(b) if degree[b] >= degree[u] => Some(b),
                    _ => Some(u),
                })
                .expect("fingerprint is a proper subset of the set");
            let mut next_c = prev_c.clone();
            for w in prev_c.iter() {
                if g.has_edge(v, w) || degree[w] > degree[v] {
                    next_c.remove(w);
                }
            }
            let mut next_f = prev_f.clone();
            next_f.insert(v);
            trace.chosen.push(v);
            trace.fingerprints.push(next_f);
            trace.containers.push(next_c);
        }
        Ok(trace)
    }

    pub fn source(&self) -> &VertexSet {
        &self.source
    }

    /// Number of generated rounds (`|I|` for a full trace).
    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    /// `v_1, …, v_|I|`.
    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    /// `F_t`; `t = 0` gives the empty set and `t > |I|` gives `I`.
    pub fn fingerprint(&self, t: usize) -> &VertexSet {
        if t <= self.len() {
            &self.fingerprints[t]
        } else {
            &self.source
        }
    }

    /// `C_t`; `t = 0` gives `V` and `t > |I|` gives `I`.
    pub fn container(&self, t: usize) -> &VertexSet {
        if t <= self.len() {
            &self.containers[t]
        } else {
            &self.source
        }
    }

    /// `F_1, …, F_|I|`.
    pub fn fingerprints(&self) -> &[VertexSet] {
        &self.fingerprints[1..]
    }

    /// `C_1, …, C_|I|`.
    pub fn containers(&self) -> &[VertexSet] {
        &self.containers[1..]
    }

    /// Checks `F_1 ⊆ … ⊆ F_|I| = I ⊆ C_|I| ⊆ … ⊆ C_1`.
    pub fn chain_holds(&self) -> bool {
        let k = self.len();
        let f_ok = self.fingerprints.windows(2).all(|w| w[0].is_subset(&w[1]));
        let c_ok = self.containers.windows(2).all(|w| w[1].is_subset(&w[0]));
        let ends =
            self.fingerprints[k] == self.source && self.source.is_subset(&self.containers[k]);
        f_ok && c_ok && ends
    }
}

/// `C_t` of the set `fingerprint`, i.e. the container obtained by running
/// the generator on the fingerprint itself.
pub fn container_of_fingerprint(g: &Graph, fingerprint: &VertexSet, t: usize) -> Result<VertexSet> {
    let trace = ContainerTrace::generate_steps(g, fingerprint, t)?;
    Ok(trace.container(t).clone())
}

/// `t · Δ(G[C_t]) ≤ n` for every generated round `t ≥ 1`.
pub fn check_degree_bound(g: &Graph, trace: &ContainerTrace) -> bool {
    trace
        .containers()
        .iter()
        .enumerate()
        .all(|(i, c)| (i + 1) * g.max_degree_within(c) <= g.n())
}

/// Outcome of a container-lemma search.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    /// First index meeting the bound, or the last index examined when none does.
    pub witness_t: usize,
    /// `|C_t|` (single container) or `|∪ C_t(I_i)|` (union).
    pub witness_size: usize,
    pub bound_value: f64,
    /// Edges of `G[C_t]`; only for the single-container lemma.
    pub edges_in_container: Option<usize>,
    pub edge_bound: Option<f64>,
    /// Largest index the lemma allows.
    pub t_limit: usize,
    pub satisfied: bool,
}

/// Index limit `⌈(8ρ²/ε) ln(2ρ/ε)⌉` of the single-container search.
pub fn small_container_t_limit(rho: f64, epsilon: f64) -> usize {
    let log = libm::log(2.0 * rho / epsilon);
    libm::ceil(8.0 * rho * rho / epsilon * log) as usize
}

/// Searches `t = 1, …, ⌈(8ρ²/ε) ln(2ρ/ε)⌉` for the first container with
/// `|C_t| ≤ (ρ − t·ε/(8ρ ln(2ρ/ε)))·n` and at most `εn²` internal edges.
///
/// The conclusion is only guaranteed when `g` is ε-far from having an
/// independent set of `⌈ρn⌉` vertices; that precondition is the caller's
/// to certify.
pub fn find_small_container(
    g: &Graph,
    set: &VertexSet,
    rho: f64,
    epsilon: f64,
) -> Result<LemmaReport> {
    check_fraction("rho", rho, true)?;
    if !(epsilon > 0.0 && epsilon < 2.0 * rho) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            expected: "0 < epsilon < 2 rho",
        });
    }
    let trace = ContainerTrace::generate(g, set)?;
    let n = g.n() as f64;
    let log = libm::log(2.0 * rho / epsilon);
    let decrement = epsilon / (8.0 * rho * log);
    let t_limit = small_container_t_limit(rho, epsilon);
    let edge_bound = epsilon * n * n;
    // From |I| + 1 on the container is I itself while the bound keeps shrinking.
    let last = t_limit.min(trace.len() + 1);
    let mut report = None;
    for t in 1..=last {
        let c = trace.container(t);
        let size = c.len();
        let bound = (rho - t as f64 * decrement) * n;
        let edges = g.edges_within(c);
        let ok = within(size as f64, bound) && within(edges as f64, edge_bound);
        report = Some(LemmaReport {
            witness_t: t,
            witness_size: size,
            bound_value: bound,
            edges_in_container: Some(edges),
            edge_bound: Some(edge_bound),
            t_limit,
            satisfied: ok,
        });
        if ok {
            break;
        }
    }
    Ok(report.expect("t_limit is at least one"))
}

/// First container `C_t`, `t ≥ 1`, with at most `εn²/4` internal edges.
pub fn first_sparse_container(
    g: &Graph,
    trace: &ContainerTrace,
    epsilon: f64,
) -> (usize, VertexSet) {
    let n = g.n() as f64;
    let limit = epsilon * n * n / 4.0;
    (1..=trace.len() + 1)
        .map(|t| (t, trace.container(t)))
        .find(|(_, c)| within(g.edges_within(c) as f64, limit))
        .map(|(t, c)| (t, c.clone()))
        .expect("the extended container I has no edges")
}

/// Per-step check of the shrinking ratio
/// `|C_{t+1} \ C| ≤ (1 − ε/(4ρα))·|C_t \ C|` with `|C| = (ρ − α)n`.
///
/// Entry `t` covers the step from `C_t` to `C_{t+1}`, `t < |I|`. It is
/// `None` when the step lies outside the hypothesis (`|C_t| < ρn` or
/// `C ⊄ C_{t+1}`).
pub fn verify_shrinking(
    g: &Graph,
    trace: &ContainerTrace,
    sparse: &VertexSet,
    rho: f64,
    epsilon: f64,
) -> Result<Vec<Option<bool>>> {
    check_fraction("rho", rho, true)?;
    check_fraction("epsilon", epsilon, false)?;
    g.check_set(sparse)?;
    let n = g.n() as f64;
    let alpha = rho - sparse.len() as f64 / n;
    if alpha <= 0.0 {
        return Err(Error::ShrinkingHypothesis {
            detail: "|C| must be below rho n",
            observed: sparse.len() as f64,
            limit: rho * n,
        });
    }
    let edges = g.edges_within(sparse) as f64;
    if !within(edges, epsilon * n * n / 4.0) {
        return Err(Error::ShrinkingHypothesis {
            detail: "G[C] must have at most epsilon n^2 / 4 edges",
            observed: edges,
            limit: epsilon * n * n / 4.0,
        });
    }
    let factor = 1.0 - epsilon / (4.0 * rho * alpha);
    let large = rho * n;
    let steps = (0..trace.len())
        .map(|t| {
            let current = trace.container(t);
            let next = trace.container(t + 1);
            if !within(large, current.len() as f64) || !sparse.is_subset(next) {
                return None;
            }
            let after = next.difference(sparse).len() as f64;
            let before = current.difference(sparse).len() as f64;
            Some(within(after, factor * before))
        })
        .collect();
    Ok(steps)
}

/// Largest `ε` accepted by [`find_small_union`] (exclusive): `e^{-2}`.
pub const UNION_EPSILON_LIMIT: f64 = 0.135_335_283_236_612_7;

fn traces_for(g: &Graph, sets: &[VertexSet]) -> Result<Vec<ContainerTrace>> {
    if sets.is_empty() {
        return Err(Error::InvalidParameter {
            name: "k",
            value: 0.0,
            expected: "at least one independent set",
        });
    }
    sets.iter()
        .map(|s| ContainerTrace::generate(g, s))
        .collect()
}

fn union_at(n: usize, traces: &[ContainerTrace], t: usize) -> VertexSet {
    let mut u = VertexSet::empty(n);
    for tr in traces {
        u.union_with(tr.container(t));
    }
    u
}

/// Searches `t = 1, …, ⌈4/ε⌉` for the first index with
/// `|∪_i C_t(I_i)| ≤ (1 − t·ε/(4 ln(1/ε)))·n`.
///
/// Only `0 < ε < e^{-2}` is accepted; the conclusion is guaranteed when `g`
/// is ε-far from k-colorable, `k = sets.len()`.
pub fn find_small_union(g: &Graph, sets: &[VertexSet], epsilon: f64) -> Result<LemmaReport> {
    if !(epsilon > 0.0 && epsilon < UNION_EPSILON_LIMIT) {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    let traces = traces_for(g, sets)?;
    let n = g.n();
    let log = libm::log(1.0 / epsilon);
    let t_limit = libm::ceil(4.0 / epsilon) as usize;
    let longest = traces.iter().map(ContainerTrace::len).max().unwrap_or(0);
    let last = t_limit.min(longest + 1);
    let mut report = None;
    for t in 1..=last {
        let size = union_at(n, &traces, t).len();
        let bound = (1.0 - t as f64 * epsilon / (4.0 * log)) * n as f64;
        let ok = within(size as f64, bound);
        report = Some(LemmaReport {
            witness_t: t,
            witness_size: size,
            bound_value: bound,
            edges_in_container: None,
            edge_bound: None,
            t_limit,
            satisfied: ok,
        });
        if ok {
            break;
        }
    }
    Ok(report.expect("t_limit is at least one"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainerPartition {
    /// `assignment[v]` is the part index of `v`.
    pub assignment: Vec<usize>,
    pub parts: Vec<VertexSet>,
    pub monochromatic_edges: usize,
}

/// Builds a k-partition from the containers of `sets`.
///
/// Parts start as `C_{t_max}(I_i)` with overlaps resolved towards the lowest
/// index. The leftover layers `A_t = ∪_i C_{t-1}(I_i) \ ∪_i C_t(I_i)` are
/// then placed for `t = t_max` down to `1`, each vertex joining the lowest
/// `i` with `v ∈ C_{t-1}(I_i)`.
pub fn container_partition(
    g: &Graph,
    sets: &[VertexSet],
    t_max: usize,
) -> Result<ContainerPartition> {
    let traces = traces_for(g, sets)?;
    let n = g.n();
    let k = sets.len();
    let mut assignment = vec![usize::MAX; n];
    for (i, tr) in traces.iter().enumerate() {
        for v in tr.container(t_max).iter() {
            if assignment[v] == usize::MAX {
                assignment[v] = i;
            }
        }
    }
    let mut inner = union_at(n, &traces, t_max);
    for t in (1..=t_max).rev() {
        let outer = union_at(n, &traces, t - 1);
        for v in outer.difference(&inner).iter() {
            let i = traces
                .iter()
                .position(|tr| tr.container(t - 1).contains(v))
                .expect("v lies in the outer union");
            debug_assert_eq!(assignment[v], usize::MAX);
            assignment[v] = i;
        }
        inner = outer;
    }
    assert!(
        assignment.iter().all(|&i| i < k),
        "every vertex lies in C_0 = V, so the partition covers V"
    );
    let mut parts = vec![VertexSet::empty(n); k];
    for (v, &i) in assignment.iter().enumerate() {
        parts[i].insert(v);
    }
    let monochromatic_edges = g.monochromatic_edges(&assignment);
    Ok(ContainerPartition {
        assignment,
        parts,
        monochromatic_edges,
    })
}
