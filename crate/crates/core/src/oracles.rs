//! Exact ground truth: edit distances to the tested properties and
//! hypergeometric tail probabilities.
//!
//! For each property only one edit direction matters. Reaching an
//! independent set of `m` vertices or a k-coloring only ever needs edge
//! removals, and reaching an `m`-clique only needs additions, so the
//! distances below count edits in that single direction.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search;

/// Work limits for the exhaustive oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest `binomial(n, m)` the subset oracles will enumerate.
    pub max_subsets: u64,
    /// Largest `k^(n-1)` the partition oracle will enumerate.
    pub max_colorings: u64,
    /// Largest graph the subset oracles accept.
    pub max_vertices: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_subsets: 10_000_000,
            max_colorings: 10_000_000,
            max_vertices: 24,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceProperty {
    IndepSet { m: usize },
    Clique { m: usize },
    KColorable { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceWitness {
    Subset(VertexSet),
    /// `assignment[v]` is the color of `v`.
    Partition(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceReport {
    pub property: DistanceProperty,
    pub n: usize,
    /// Minimum number of edge edits that give the property.
    pub edit_count: u64,
    /// `edit_count / n²`; the graph is ε-far exactly for `ε ≤` this value.
    pub epsilon_equivalent: f64,
    pub witness: DistanceWitness,
}

impl DistanceReport {
    fn new(
        property: DistanceProperty,
        n: usize,
        edit_count: u64,
        witness: DistanceWitness,
    ) -> Self {
        let epsilon_equivalent = if n == 0 {
            0.0
        } else {
            edit_count as f64 / (n as f64 * n as f64)
        };
        DistanceReport {
            property,
            n,
            edit_count,
            epsilon_equivalent,
            witness,
        }
    }

    /// `edit_count ≥ εn²`.
    pub fn is_far(&self, epsilon: f64) -> bool {
        self.edit_count as f64 >= epsilon * (self.n as f64) * (self.n as f64)
    }
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn pairs(m: usize) -> u64 {
    (m as u64) * (m as u64).saturating_sub(1) / 2
}

fn is_complete(g: &Graph) -> bool {
    g.edge_count() as u64 == pairs(g.n())
}

/// Internal edges of any `m`-subset of `K_n`.
pub fn complete_graph_indep_distance(m: usize) -> u64 {
    pairs(m)
}

/// Fewest monochromatic edges of a k-coloring of `K_n`, attained by the
/// balanced partition: `r` parts of size `⌈n/k⌉` and `k − r` of size `⌊n/k⌋`,
/// `r = n mod k`.
pub fn complete_graph_coloring_distance(n: usize, k: usize) -> u64 {
    assert!(k > 0, "k must be positive");
    let (q, r) = (n / k, n % k);
    r as u64 * pairs(q + 1) + (k - r) as u64 * pairs(q)
}

fn balanced_assignment(n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|v| v % k).collect()
}

pub fn distance_to_indep_set(g: &Graph, m: usize) -> Result<DistanceReport> {
    distance_to_indep_set_with(g, m, &OracleLimits::default())
}

/// `min` over all `m`-subsets `U` of the number of edges of `G[U]`.
///
/// Beyond the exhaustive limits only zero distances are reported, found by
/// the exact decider; anything else is [`Error::ExhaustiveCapExceeded`].
pub fn distance_to_indep_set_with(
    g: &Graph,
    m: usize,
    limits: &OracleLimits,
) -> Result<DistanceReport> {
    let n = g.n();
    if m > n {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m as f64,
            expected: "a set size no larger than n",
        });
    }
    if is_complete(g) {
        let witness = VertexSet::from_members(n, 0..m).expect("in range");
        let property = DistanceProperty::IndepSet { m };
        return Ok(DistanceReport::new(
            property,
            n,
            pairs(m),
            DistanceWitness::Subset(witness),
        ));
    }
    let result = exhaustive_indep_distance(g, m, limits);
    // Past the cap the distance is still known when it is zero.
    if matches!(result, Err(Error::ExhaustiveCapExceeded { .. })) {
        if let Some(set) = search::independent_set_of_size(g, m) {
            let witness = VertexSet::from_members(n, set.iter().take(m)).expect("in range");
            let property = DistanceProperty::IndepSet { m };
            return Ok(DistanceReport::new(
                property,
                n,
                0,
                DistanceWitness::Subset(witness),
            ));
        }
    }
    result
}

/// Branch-and-bound enumeration of all `m`-subsets, without the
/// complete-graph shortcut.
pub fn exhaustive_indep_distance(
    g: &Graph,
    m: usize,
    limits: &OracleLimits,
) -> Result<DistanceReport> {
    let n = g.n();
    let property = DistanceProperty::IndepSet { m };
    if m > n {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m as f64,
            expected: "a set size no larger than n",
        });
    }
    let work = binomial_f64(n, m);
    if n > limits.max_vertices || work > limits.max_subsets as f64 {
        return Err(Error::ExhaustiveCapExceeded {
            work,
            cap: limits.max_subsets,
        });
    }
    let mut search = SubsetSearch {
        g,
        m,
        current: Vec::with_capacity(m),
        best: u64::MAX,
        best_set: Vec::new(),
    };
    search.run(0, 0);
    let witness = VertexSet::from_members(n, search.best_set.iter().copied()).expect("in range");
    assert_eq!(
        g.edges_within(&witness) as u64,
        search.best,
        "witness must attain the distance"
    );
    Ok(DistanceReport::new(
        property,
        n,
        search.best,
        DistanceWitness::Subset(witness),
    ))
}

struct SubsetSearch<'a> {
    g: &'a Graph,
    m: usize,
    current: Vec<usize>,
    best: u64,
    best_set: Vec<usize>,
}

impl SubsetSearch<'_> {
    fn run(&mut self, next: usize, edges: u64) {
        if edges >= self.best {
            return;
        }
        if self.current.len() == self.m {
            self.best = edges;
            self.best_set = self.current.clone();
            return;
        }
        let n = self.g.n();
        let need = self.m - self.current.len();
        for v in next..=n - need {
            let added = self
                .current
                .iter()
                .filter(|&&u| self.g.has_edge(u, v))
                .count() as u64;
            self.current.push(v);
            self.run(v + 1, edges + added);
            self.current.pop();
            if self.best == 0 {
                return;
            }
        }
    }
}

pub fn distance_to_clique(g: &Graph, m: usize) -> Result<DistanceReport> {
    distance_to_clique_with(g, m, &OracleLimits::default())
}

/// `min` over all `m`-subsets of the number of missing internal pairs.
pub fn distance_to_clique_with(
    g: &Graph,
    m: usize,
    limits: &OracleLimits,
) -> Result<DistanceReport> {
    let mut report = distance_to_indep_set_with(&g.complement(), m, limits)?;
    report.property = DistanceProperty::Clique { m };
    Ok(report)
}

pub fn distance_to_k_colorable(g: &Graph, k: usize) -> Result<DistanceReport> {
    distance_to_k_colorable_with(g, k, &OracleLimits::default())
}

/// `min` over all k-partitions of the number of monochromatic edges.
///
/// Complete graphs use the balanced-partition formula. Other graphs are
/// searched exhaustively with vertex 0 fixed to color 0 and colors opened in
/// order, pruning partial colorings that already reach the best count.
pub fn distance_to_k_colorable_with(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<DistanceReport> {
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            value: 0.0,
            expected: "at least one color",
        });
    }
    let n = g.n();
    let property = DistanceProperty::KColorable { k };
    if k >= n {
        return Ok(DistanceReport::new(
            property,
            n,
            0,
            DistanceWitness::Partition((0..n).collect()),
        ));
    }
    if is_complete(g) {
        let assignment = balanced_assignment(n, k);
        let edits = complete_graph_coloring_distance(n, k);
        debug_assert_eq!(g.monochromatic_edges(&assignment) as u64, edits);
        return Ok(DistanceReport::new(
            property,
            n,
            edits,
            DistanceWitness::Partition(assignment),
        ));
    }
    let result = exhaustive_coloring_distance(g, k, limits);
    if matches!(result, Err(Error::ExhaustiveCapExceeded { .. })) {
        if let Some(colors) = search::k_coloring(g, k) {
            return Ok(DistanceReport::new(
                property,
                n,
                0,
                DistanceWitness::Partition(colors),
            ));
        }
    }
    result
}

/// Enumeration of all k-partitions, without the complete-graph shortcut.
pub fn exhaustive_coloring_distance(
    g: &Graph,
    k: usize,
    limits: &OracleLimits,
) -> Result<DistanceReport> {
    let n = g.n();
    let property = DistanceProperty::KColorable { k };
    if k == 0 || n == 0 {
        return distance_to_k_colorable_with(g, k, limits);
    }
    let work = libm::pow(k as f64, (n - 1) as f64);
    if work > limits.max_colorings as f64 {
        return Err(Error::ExhaustiveCapExceeded {
            work,
            cap: limits.max_colorings,
        });
    }
    let mut search = PartitionSearch {
        g,
        k,
        colors: vec![0; n],
        best: u64::MAX,
        best_colors: Vec::new(),
    };
    search.run(1, 1, 0);
    assert_eq!(
        g.monochromatic_edges(&search.best_colors) as u64,
        search.best
    );
    Ok(DistanceReport::new(
        property,
        n,
        search.best,
        DistanceWitness::Partition(search.best_colors),
    ))
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<usize>,
    best: u64,
    best_colors: Vec<usize>,
}

impl PartitionSearch<'_> {
    fn run(&mut self, v: usize, used: usize, mono: u64) {
        if mono >= self.best {
            return;
        }
        if v == self.colors.len() {
            self.best = mono;
            self.best_colors = self.colors.clone();
            return;
        }
        for c in 0..self.k.min(used + 1) {
            let added = (0..v)
                .filter(|&u| self.colors[u] == c && self.g.has_edge(u, v))
                .count() as u64;
            self.colors[v] = c;
            self.run(v + 1, used.max(c + 1), mono + added);
            if self.best == 0 {
                return;
            }
        }
    }
}

/// Parameters of `H(N, K, n)` together with a tail threshold `ϑ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypergeomParams {
    pub population: u64,
    pub marked: u64,
    pub draws: u64,
    pub threshold: f64,
}

impl HypergeomParams {
    pub fn new(population: u64, marked: u64, draws: u64, threshold: f64) -> Result<Self> {
        if marked > population {
            return Err(Error::InvalidParameter {
                name: "K",
                value: marked as f64,
                expected: "0 <= K <= N",
            });
        }
        if draws > population {
            return Err(Error::InvalidParameter {
                name: "draws",
                value: draws as f64,
                expected: "0 <= n <= N",
            });
        }
        if threshold.is_nan() || threshold < 0.0 {
            return Err(Error::InvalidParameter {
                name: "threshold",
                value: threshold,
                expected: "a non-negative threshold",
            });
        }
        Ok(HypergeomParams {
            population,
            marked,
            draws,
            threshold,
        })
    }

    pub fn mean(&self) -> f64 {
        if self.population == 0 {
            0.0
        } else {
            self.draws as f64 * self.marked as f64 / self.population as f64
        }
    }

    fn support(&self) -> (u64, u64) {
        let lo = self.draws.saturating_sub(self.population - self.marked);
        (lo, self.draws.min(self.marked))
    }
}

fn ln_factorials(n: u64) -> Vec<f64> {
    let mut table = Vec::with_capacity(n as usize + 1);
    let mut acc = 0.0;
    table.push(0.0);
    for i in 1..=n {
        acc += libm::log(i as f64);
        table.push(acc);
    }
    table
}

/// `Pr[X ≥ ϑ]` for `X ~ H(N, K, n)`, by exact summation of the mass
/// function in log space.
pub fn hypergeometric_tail(p: &HypergeomParams) -> f64 {
    if p.threshold <= 0.0 {
        return 1.0;
    }
    let start = libm::ceil(p.threshold);
    let (lo, hi) = p.support();
    if start > hi as f64 {
        return 0.0;
    }
    let start = (start as u64).max(lo);
    if start == lo {
        return 1.0;
    }
    let lf = ln_factorials(p.population);
    let (big_n, k, n) = (p.population as usize, p.marked as usize, p.draws as usize);
    let ln_choose = |a: usize, b: usize| lf[a] - lf[b] - lf[a - b];
    let ln_total = ln_choose(big_n, n);
    let terms: Vec<f64> = (start as usize..=hi as usize)
        .map(|x| ln_choose(k, x) + ln_choose(big_n - k, n - x) - ln_total)
        .collect();
    let peak = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| libm::exp(t - peak)).sum();
    (libm::exp(peak) * sum).min(1.0)
}

/// `exp(−(ϑ − E[X])² / (ϑ + E[X]))`, valid for `ϑ ≥ E[X]`.
pub fn chernoff_bound(p: &HypergeomParams) -> Result<f64> {
    let mean = p.mean();
    if p.threshold < mean {
        return Err(Error::InvalidParameter {
            name: "threshold",
            value: p.threshold,
            expected: "a threshold at least the mean",
        });
    }
    let denom = p.threshold + mean;
    if denom == 0.0 {
        return Ok(1.0);
    }
    let gap = p.threshold - mean;
    Ok(libm::exp(-gap * gap / denom))
}

/// Whether `Pr[X ≥ ⌈nK/N⌉] ≥ 1/2` for `X ~ H(N, K, n)`, decided in exact
/// integer arithmetic.
///
/// This holds whenever the mean `nK/N` is an integer, but can fail
/// otherwise: for `N = 3, K = 1, n = 1` the probability is `1/3`.
pub fn hypergeometric_median_check(population: u64, marked: u64, draws: u64) -> bool {
    assert!(
        marked <= population && draws <= population,
        "invalid hypergeometric parameters"
    );
    if population == 0 {
        return true;
    }
    let threshold = (draws * marked).div_ceil(population);
    let (lo, hi) = HypergeomParams {
        population,
        marked,
        draws,
        threshold: 0.0,
    }
    .support();
    // Compare Σ_{x ≥ threshold} C(K,x)C(N−K,n−x) against the lower sum.
    let mut upper = Nat::zero();
    let mut lower = Nat::zero();
    let mut marked_choose = Nat::binomial(marked, lo);
    let mut rest_choose = Nat::binomial(population - marked, draws - lo);
    for x in lo..=hi {
        let term = marked_choose.mul(&rest_choose);
        if x >= threshold {
            upper.add_assign(&term);
        } else {
            lower.add_assign(&term);
        }
        if x < hi {
            // C(K, x+1) = C(K, x)(K − x)/(x + 1); C(M, j−1) = C(M, j) j/(M − j + 1).
            marked_choose.mul_small(marked - x);
            marked_choose.div_small_exact(x + 1);
            let j = draws - x;
            let m = population - marked;
            rest_choose.mul_small(j);
            rest_choose.div_small_exact(m - j + 1);
        }
    }
    upper.cmp(&lower) != Ordering::Less
}

/// Minimal unsigned big integer (base 2³², little endian) for exact
/// binomial sums.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Nat(Vec<u32>);

impl Nat {
    fn zero() -> Self {
        Nat(Vec::new())
    }

    fn one() -> Self {
        Nat(vec![1])
    }

    fn binomial(n: u64, k: u64) -> Self {
        let mut out = Nat::one();
        if k > n {
            return Nat::zero();
        }
        let k = k.min(n - k);
        for i in 0..k {
            out.mul_small(n - i);
            out.div_small_exact(i + 1);
        }
        out
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    fn mul_small(&mut self, factor: u64) {
        assert!(factor <= u32::MAX as u64);
        let mut carry = 0u64;
        for limb in &mut self.0 {
            let v = *limb as u64 * factor + carry;
            *limb = v as u32;
            carry = v >> 32;
        }
        if carry > 0 {
            self.0.push(carry as u32);
        }
        self.trim();
    }

    fn div_small_exact(&mut self, divisor: u64) {
        assert!(divisor > 0 && divisor <= u32::MAX as u64);
        let mut rem = 0u64;
        for limb in self.0.iter_mut().rev() {
            let v = (rem << 32) | *limb as u64;
            *limb = (v / divisor) as u32;
            rem = v % divisor;
        }
        debug_assert_eq!(rem, 0, "division must be exact");
        self.trim();
    }

    fn add_assign(&mut self, other: &Nat) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        let mut carry = 0u64;
        for (i, limb) in self.0.iter_mut().enumerate() {
            let v = *limb as u64 + other.0.get(i).copied().unwrap_or(0) as u64 + carry;
            *limb = v as u32;
            carry = v >> 32;
        }
        if carry > 0 {
            self.0.push(carry as u32);
        }
    }

    fn mul(&self, other: &Nat) -> Nat {
        if self.0.is_empty() || other.0.is_empty() {
            return Nat::zero();
        }
        let mut out = vec![0u32; self.0.len() + other.0.len()];
        for (i, &a) in self.0.iter().enumerate() {
            let mut carry = 0u64;
            for (j, &b) in other.0.iter().enumerate() {
                let v = out[i + j] as u64 + a as u64 * b as u64 + carry;
                out[i + j] = v as u32;
                carry = v >> 32;
            }
            out[i + other.0.len()] = carry as u32;
        }
        let mut n = Nat(out);
        n.trim();
        n
    }
}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn indep_distance_examples() {
        let r = distance_to_indep_set(&cycle(5), 3).unwrap();
        assert_eq!(r.edit_count, 1);
        assert_eq!(
            distance_to_indep_set(&Graph::complete(5), 3)
                .unwrap()
                .edit_count,
            3
        );
        assert_eq!(
            distance_to_indep_set(&Graph::empty(7), 4)
                .unwrap()
                .edit_count,
            0
        );
        assert!(distance_to_indep_set(&Graph::empty(3), 4).is_err());
    }

    #[test]
    fn clique_distance_examples() {
        assert_eq!(
            distance_to_clique(&Graph::complete(5), 3)
                .unwrap()
                .edit_count,
            0
        );
        assert_eq!(
            distance_to_clique(&Graph::empty(5), 3).unwrap().edit_count,
            3
        );
        assert_eq!(distance_to_clique(&cycle(5), 3).unwrap().edit_count, 1);
    }

    #[test]
    fn coloring_distance_examples() {
        assert_eq!(distance_to_k_colorable(&cycle(5), 2).unwrap().edit_count, 1);
        assert_eq!(distance_to_k_colorable(&cycle(6), 2).unwrap().edit_count, 0);
        assert_eq!(
            distance_to_k_colorable(&Graph::complete(4), 2)
                .unwrap()
                .edit_count,
            2
        );
        assert_eq!(complete_graph_coloring_distance(14, 3), 26);
        assert_eq!(complete_graph_coloring_distance(200, 3), 6567);
    }

    #[test]
    fn caps_are_enforced() {
        // Past the cap only a zero distance is still decidable.
        let even = cycle(30);
        assert_eq!(distance_to_indep_set(&even, 15).unwrap().edit_count, 0);
        assert_eq!(distance_to_k_colorable(&even, 3).unwrap().edit_count, 0);
        let odd = cycle(31);
        assert!(matches!(
            distance_to_indep_set(&odd, 16),
            Err(Error::ExhaustiveCapExceeded { .. })
        ));
        assert!(matches!(
            distance_to_k_colorable(&odd, 2),
            Err(Error::ExhaustiveCapExceeded { .. })
        ));
    }

    #[test]
    fn tail_examples() {
        let p = |t| HypergeomParams::new(5, 3, 2, t).unwrap();
        assert_eq!(hypergeometric_tail(&p(0.0)), 1.0);
        assert_eq!(hypergeometric_tail(&p(3.0)), 0.0);
        // C(3,2)/C(5,2)
        assert!((hypergeometric_tail(&p(2.0)) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn chernoff_examples() {
        let at_mean = HypergeomParams::new(100, 50, 10, 5.0).unwrap();
        assert_eq!(chernoff_bound(&at_mean).unwrap(), 1.0);
        let p = HypergeomParams::new(100, 50, 10, 8.0).unwrap();
        let b = chernoff_bound(&p).unwrap();
        assert!((b - libm::exp(-9.0 / 13.0)).abs() < 1e-15);
        assert!((b - 0.5004).abs() < 1e-3);
        let below = HypergeomParams::new(100, 50, 10, 4.0).unwrap();
        assert!(chernoff_bound(&below).is_err());
    }

    #[test]
    fn median_examples() {
        assert!(hypergeometric_median_check(100, 50, 10));
        assert!(hypergeometric_median_check(37, 37, 11));
        assert!(hypergeometric_median_check(2, 1, 1));
        // Non-integer mean 1/3: Pr[X >= 1] = 1/3.
        assert!(!hypergeometric_median_check(3, 1, 1));
    }

    #[test]
    fn big_binomials_are_exact() {
        // C(100, 50) = 100891344545564193334812497256
        let c = Nat::binomial(100, 50);
        let decimal = {
            let mut digits = Vec::new();
            let mut x = c.clone();
            while !x.0.is_empty() {
                let mut rem = 0u64;
                for limb in x.0.iter_mut().rev() {
                    let v = (rem << 32) | *limb as u64;
                    *limb = (v / 10) as u32;
                    rem = v % 10;
                }
                x.trim();
                digits.push(b'0' + rem as u8);
            }
            digits.reverse();
            std::string::String::from_utf8(digits).unwrap()
        };
        assert_eq!(decimal, "100891344545564193334812497256");
    }
}
