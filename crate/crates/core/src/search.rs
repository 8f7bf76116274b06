//! Exact decision procedures: large independent sets and k-colorability,
//! plus enumeration and random sampling of maximal independent sets.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::bitset::{count_and, Ones, VertexSet};
use crate::generate::rng_from_seed;
use crate::graph::Graph;

/// Returns an independent set of size at least `m` if one exists.
///
/// Branch and bound over a candidate bitset: vertices of degree at most one
/// in the candidate graph are taken greedily, the remaining search branches
/// on the highest-degree candidate (exclude first, then include), and a
/// greedy clique cover of the candidates bounds how many more vertices can
/// still be added.
pub fn independent_set_of_size(g: &Graph, m: usize) -> Option<VertexSet> {
    let n = g.n();
    if m == 0 {
        return Some(VertexSet::empty(n));
    }
    if m > n {
        return None;
    }
    let greedy = greedy_min_degree_is(g);
    if greedy.len() >= m {
        return Some(greedy);
    }
    let mut search = IsSearch {
        g,
        target: m,
        chosen: Vec::with_capacity(m),
    };
    if search.run(VertexSet::full(n)) {
        let witness = VertexSet::from_members(n, search.chosen.iter().copied())
            .expect("chosen vertices are in range");
        debug_assert!(g.is_independent(&witness));
        Some(witness)
    } else {
        None
    }
}

/// Returns a clique of size at least `m` if one exists.
pub fn clique_of_size(g: &Graph, m: usize) -> Option<VertexSet> {
    independent_set_of_size(&g.complement(), m)
}

fn greedy_min_degree_is(g: &Graph) -> VertexSet {
    let mut cand = VertexSet::full(g.n());
    let mut out = VertexSet::empty(g.n());
    while let Some(v) = cand.iter().min_by_key(|&v| g.degree_within(v, &cand)) {
        out.insert(v);
        cand.remove(v);
        for (c, r) in cand.words_mut().iter_mut().zip(g.row(v)) {
            *c &= !r;
        }
    }
    out
}

struct IsSearch<'a> {
    g: &'a Graph,
    target: usize,
    chosen: Vec<usize>,
}

impl IsSearch<'_> {
    fn take(&mut self, cand: &mut VertexSet, v: usize) {
        self.chosen.push(v);
        cand.remove(v);
        for (c, r) in cand.words_mut().iter_mut().zip(self.g.row(v)) {
            *c &= !r;
        }
    }

    fn run(&mut self, mut cand: VertexSet) -> bool {
        let entry = self.chosen.len();
        let found = self.run_inner(&mut cand);
        if !found {
            self.chosen.truncate(entry);
        }
        found
    }

    fn run_inner(&mut self, cand: &mut VertexSet) -> bool {
        loop {
            if self.chosen.len() >= self.target {
                return true;
            }
            if self.chosen.len() + cand.len() < self.target {
                return false;
            }
            let low = cand.iter().find(|&v| self.g.degree_within(v, cand) <= 1);
            match low {
                Some(v) => self.take(cand, v),
                None => break,
            }
        }
        let need = self.target - self.chosen.len();
        if !self.clique_cover_at_least(cand, need) {
            return false;
        }
        let pivot = cand
            .iter()
            .map(|v| (self.g.degree_within(v, cand), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, v)| v)
            .expect("candidate set is non-empty");

        let mut without = cand.clone();
        without.remove(pivot);
        if self.run(without) {
            return true;
        }
        let mut with = cand.clone();
        let entry = self.chosen.len();
        self.take(&mut with, pivot);
        if self.run(with) {
            return true;
        }
        self.chosen.truncate(entry);
        false
    }

    /// Greedily covers `cand` by cliques, stopping as soon as `need`
    /// cliques are open. An independent set meets each clique at most once,
    /// so fewer than `need` cliques proves the branch hopeless.
    fn clique_cover_at_least(&self, cand: &VertexSet, need: usize) -> bool {
        let mut commons: Vec<Vec<u64>> = Vec::new();
        for v in cand.iter() {
            let slot = commons
                .iter_mut()
                .find(|common| common[v / 64] >> (v % 64) & 1 == 1);
            match slot {
                Some(common) => {
                    for (c, r) in common.iter_mut().zip(self.g.row(v)) {
                        *c &= r;
                    }
                }
                None => {
                    if commons.len() + 1 >= need {
                        return true;
                    }
                    let common = self
                        .g
                        .row(v)
                        .iter()
                        .zip(cand.words())
                        .map(|(r, c)| r & c)
                        .collect();
                    commons.push(common);
                }
            }
        }
        commons.len() >= need
    }
}

/// Returns a proper coloring with colors `0..k` if one exists.
///
/// DSATUR-ordered backtracking with forward checking: a branch dies as soon
/// as some uncolored vertex sees all `k` colors among its neighbors. New
/// colors are opened one at a time to skip permuted duplicates.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    if k >= n {
        return Some((0..n).collect());
    }
    if greedy_clique(g, k + 1).len() > k {
        return None;
    }
    let mut search = ColorSearch {
        g,
        k,
        color: vec![usize::MAX; n],
        counts: vec![0; n * k],
        saturation: vec![0; n],
        degree: (0..n).map(|v| g.degree(v)).collect(),
    };
    if search.solve(0, 0) {
        debug_assert_eq!(g.monochromatic_edges(&search.color), 0);
        Some(search.color)
    } else {
        None
    }
}

pub fn is_k_colorable(g: &Graph, k: usize) -> bool {
    k_coloring(g, k).is_some()
}

/// Largest clique found by greedy growth from each vertex; stops early once
/// one reaches `enough` vertices.
fn greedy_clique(g: &Graph, enough: usize) -> Vec<usize> {
    let mut best = Vec::new();
    for start in 0..g.n() {
        let mut clique = vec![start];
        let mut cand = g.neighbor_set(start);
        while let Some(v) = cand
            .iter()
            .max_by_key(|&v| (g.degree_within(v, &cand), usize::MAX - v))
        {
            clique.push(v);
            cand.remove(v);
            for (c, r) in cand.words_mut().iter_mut().zip(g.row(v)) {
                *c &= r;
            }
        }
        if clique.len() > best.len() {
            best = clique;
            if best.len() >= enough {
                break;
            }
        }
    }
    best
}

struct ColorSearch<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    counts: Vec<u32>,
    saturation: Vec<usize>,
    degree: Vec<usize>,
}

impl ColorSearch<'_> {
    fn select(&self) -> usize {
        let mut best = usize::MAX;
        for v in 0..self.color.len() {
            if self.color[v] != usize::MAX {
                continue;
            }
            if best == usize::MAX
                || (self.saturation[v], self.degree[v]) > (self.saturation[best], self.degree[best])
            {
                best = v;
            }
        }
        best
    }

    /// Colors `v` with `c`; returns false if some uncolored neighbor becomes
    /// saturated with all `k` colors.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = c;
        let mut alive = true;
        for u in Ones::new(self.g.row(v)) {
            let slot = &mut self.counts[u * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.saturation[u] += 1;
                if self.saturation[u] == self.k && self.color[u] == usize::MAX {
                    alive = false;
                }
            }
        }
        alive
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = usize::MAX;
        for u in Ones::new(self.g.row(v)) {
            let slot = &mut self.counts[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn solve(&mut self, colored: usize, used: usize) -> bool {
        if colored == self.color.len() {
            return true;
        }
        let v = self.select();
        let limit = self.k.min(used + 1);
        for c in 0..limit {
            if self.counts[v * self.k + c] != 0 {
                continue;
            }
            let alive = self.assign(v, c);
            if alive && self.solve(colored + 1, used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

/// Calls `visit` on every maximal independent set (Bron–Kerbosch with
/// pivoting, run on the complement relation). Enumeration stops early when
/// `visit` returns `false`.
pub fn for_each_maximal_independent_set<F>(g: &Graph, mut visit: F)
where
    F: FnMut(&VertexSet) -> bool,
{
    let n = g.n();
    let mut current = VertexSet::empty(n);
    bron_kerbosch(
        g,
        &mut current,
        VertexSet::full(n),
        VertexSet::empty(n),
        &mut visit,
    );
}

/// Collects up to `limit` maximal independent sets.
pub fn maximal_independent_sets(g: &Graph, limit: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    for_each_maximal_independent_set(g, |s| {
        out.push(s.clone());
        out.len() < limit
    });
    out
}

fn bron_kerbosch<F>(
    g: &Graph,
    current: &mut VertexSet,
    mut cand: VertexSet,
    mut excluded: VertexSet,
    visit: &mut F,
) -> bool
where
    F: FnMut(&VertexSet) -> bool,
{
    if cand.is_empty() {
        return if excluded.is_empty() {
            visit(current)
        } else {
            true
        };
    }
    // Pivot keeps the most candidates non-adjacent to it, so branching is
    // restricted to candidates in its closed neighborhood.
    let pivot = cand
        .iter()
        .chain(excluded.iter())
        .max_by_key(|&u| {
            cand.len() - count_and(g.row(u), cand.words()) - usize::from(cand.contains(u))
        })
        .expect("non-empty");
    let mut branch = VertexSet::from_words(g.n(), g.row(pivot).to_vec());
    branch.insert(pivot);
    branch.intersect_with(&cand);
    for v in branch.to_vec() {
        let mut next_cand = cand.clone();
        let mut next_excl = excluded.clone();
        for ((c, x), r) in next_cand
            .words_mut()
            .iter_mut()
            .zip(next_excl.words_mut())
            .zip(g.row(v))
        {
            *c &= !r;
            *x &= !r;
        }
        next_cand.remove(v);
        next_excl.remove(v);
        current.insert(v);
        let go_on = bron_kerbosch(g, current, next_cand, next_excl, visit);
        current.remove(v);
        if !go_on {
            return false;
        }
        cand.remove(v);
        excluded.insert(v);
    }
    true
}

/// Random maximal independent set: greedy insertion along a seeded random
/// vertex order.
pub fn random_maximal_independent_set(g: &Graph, seed: u64) -> VertexSet {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(&mut rng_from_seed(seed));
    let mut out = VertexSet::empty(g.n());
    for v in order {
        if g.degree_within(v, &out) == 0 {
            out.insert(v);
        }
    }
    out
}
