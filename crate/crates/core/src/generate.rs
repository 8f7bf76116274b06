//! Seeded instance generators and uniform vertex sampling.
//!
//! All randomness comes from a ChaCha8 stream seeded with the caller's
//! 64-bit seed. Random-edge models walk the pairs `(u, v)`, `u < v`, in
//! lexicographic order and consume exactly one uniform `f64` per pair, so a
//! fixed `(model, parameters, seed)` gives the same graph on every platform.

use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::ceil_count;
use crate::error::{check_fraction, Error, Result};
use crate::graph::Graph;

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Gnp {
        n: usize,
        p: f64,
    },
    /// `G(n, p)` with every edge inside a uniformly chosen `⌈ρn⌉`-subset removed.
    PlantedIndependentSet {
        n: usize,
        rho: f64,
        p: f64,
    },
    /// Complement construction of the planted independent set model: edge
    /// probability `p` outside a `⌈ρn⌉`-clique.
    PlantedClique {
        n: usize,
        rho: f64,
        p: f64,
    },
    /// Random `k`-colorable graph: each vertex draws a color uniformly, then
    /// each bichromatic pair is an edge with probability `p`.
    PlantedColoring {
        n: usize,
        k: usize,
        p: f64,
    },
    CompleteMultipartite {
        parts: Vec<usize>,
    },
    Complete {
        n: usize,
    },
    Empty {
        n: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub model: Model,
    pub seed: u64,
}

/// A generated graph together with the structure planted in it, if any.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub planted_set: Option<VertexSet>,
    pub coloring: Option<Vec<usize>>,
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "p",
            value: p,
            expected: "a probability in [0, 1]",
        })
    }
}

impl GenSpec {
    pub fn new(model: Model, seed: u64) -> Self {
        GenSpec { model, seed }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.model {
            Model::Gnp { p, .. } => check_probability(*p),
            Model::PlantedIndependentSet { rho, p, .. } | Model::PlantedClique { rho, p, .. } => {
                check_probability(*p)?;
                check_fraction("rho", *rho, true)
            }
            Model::PlantedColoring { k, p, .. } => {
                check_probability(*p)?;
                if *k == 0 {
                    return Err(Error::InvalidParameter {
                        name: "k",
                        value: 0.0,
                        expected: "at least one color",
                    });
                }
                Ok(())
            }
            Model::CompleteMultipartite { parts } => match parts.iter().find(|&&s| s == 0) {
                Some(_) => Err(Error::InvalidParameter {
                    name: "part size",
                    value: 0.0,
                    expected: "positive part sizes",
                }),
                None => Ok(()),
            },
            Model::Complete { .. } | Model::Empty { .. } => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match &self.model {
            Model::Gnp { n, .. }
            | Model::PlantedIndependentSet { n, .. }
            | Model::PlantedClique { n, .. }
            | Model::PlantedColoring { n, .. }
            | Model::Complete { n }
            | Model::Empty { n } => *n,
            Model::CompleteMultipartite { parts } => parts.iter().sum(),
        }
    }
}

fn gnp_with(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let draw: f64 = rng.gen();
            if draw < p {
                g.set_edge(u, v);
            }
        }
    }
    g.recount();
    g
}

fn planted_is_with(rng: &mut ChaCha8Rng, n: usize, rho: f64, p: f64) -> (Graph, VertexSet) {
    let mut g = gnp_with(rng, n, p);
    let planted = sample_with(rng, n, ceil_count(rho, n));
    let members = planted.to_vec();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            g.clear_edge(u, v);
        }
    }
    g.recount();
    (g, planted)
}

pub(crate) fn sample_with(rng: &mut ChaCha8Rng, n: usize, s: usize) -> VertexSet {
    let mut set = VertexSet::empty(n);
    for v in index::sample(rng, n, s).iter() {
        set.insert(v);
    }
    set
}

/// Generates the graph together with its planted structure.
pub fn generate_detailed(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);
    let mut out = Generated {
        graph: Graph::empty(0),
        planted_set: None,
        coloring: None,
    };
    match &spec.model {
        Model::Gnp { n, p } => out.graph = gnp_with(&mut rng, *n, *p),
        Model::PlantedIndependentSet { n, rho, p } => {
            let (g, planted) = planted_is_with(&mut rng, *n, *rho, *p);
            out.graph = g;
            out.planted_set = Some(planted);
        }
        Model::PlantedClique { n, rho, p } => {
            let (g, planted) = planted_is_with(&mut rng, *n, *rho, 1.0 - *p);
            out.graph = g.complement();
            out.planted_set = Some(planted);
        }
        Model::PlantedColoring { n, k, p } => {
            let colors: Vec<usize> = (0..*n).map(|_| rng.gen_range(0..*k)).collect();
            let mut g = Graph::empty(*n);
            for u in 0..*n {
                for v in u + 1..*n {
                    let draw: f64 = rng.gen();
                    if colors[u] != colors[v] && draw < *p {
                        g.set_edge(u, v);
                    }
                }
            }
            g.recount();
            out.graph = g;
            out.coloring = Some(colors);
        }
        Model::CompleteMultipartite { parts } => {
            let colors: Vec<usize> = parts
                .iter()
                .enumerate()
                .flat_map(|(i, &size)| core::iter::repeat_n(i, size))
                .collect();
            let n = colors.len();
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if colors[u] != colors[v] {
                        g.set_edge(u, v);
                    }
                }
            }
            g.recount();
            out.graph = g;
            out.coloring = Some(colors);
        }
        Model::Complete { n } => out.graph = Graph::complete(*n),
        Model::Empty { n } => out.graph = Graph::empty(*n),
    }
    Ok(out)
}

pub fn generate(spec: &GenSpec) -> Result<Graph> {
    generate_detailed(spec).map(|g| g.graph)
}

/// Uniform `s`-subset of `0..n`, deterministic in `seed`.
pub fn sample_vertices(n: usize, s: usize, seed: u64) -> Result<VertexSet> {
    if s > n {
        return Err(Error::SampleTooLarge {
            requested: s,
            population: n,
        });
    }
    Ok(sample_with(&mut rng_from_seed(seed), n, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multipartite_and_extremes() {
        let k22 = generate(&GenSpec::new(
            Model::CompleteMultipartite {
                parts: alloc::vec![2, 2],
            },
            0,
        ))
        .unwrap();
        assert_eq!(k22.edge_count(), 4);
        let kn = generate(&GenSpec::new(Model::Gnp { n: 9, p: 1.0 }, 3)).unwrap();
        assert_eq!(kn, Graph::complete(9));
        let e = generate(&GenSpec::new(Model::Gnp { n: 9, p: 0.0 }, 3)).unwrap();
        assert_eq!(e.edge_count(), 0);
    }

    #[test]
    fn planted_set_is_independent() {
        for seed in 0..20 {
            let spec = GenSpec::new(
                Model::PlantedIndependentSet {
                    n: 50,
                    rho: 0.3,
                    p: 0.6,
                },
                seed,
            );
            let g = generate_detailed(&spec).unwrap();
            let planted = g.planted_set.unwrap();
            assert_eq!(planted.len(), 15);
            assert!(g.graph.is_independent(&planted));
        }
    }

    #[test]
    fn planted_clique_is_clique() {
        let spec = GenSpec::new(
            Model::PlantedClique {
                n: 40,
                rho: 0.25,
                p: 0.3,
            },
            9,
        );
        let g = generate_detailed(&spec).unwrap();
        assert!(g.graph.is_clique(&g.planted_set.unwrap()));
    }

    #[test]
    fn planted_coloring_is_proper() {
        let spec = GenSpec::new(
            Model::PlantedColoring {
                n: 60,
                k: 3,
                p: 0.5,
            },
            1,
        );
        let g = generate_detailed(&spec).unwrap();
        assert_eq!(g.graph.monochromatic_edges(&g.coloring.unwrap()), 0);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(generate(&GenSpec::new(Model::Gnp { n: 3, p: 1.5 }, 0)).is_err());
        assert!(generate(&GenSpec::new(
            Model::PlantedIndependentSet {
                n: 3,
                rho: 0.0,
                p: 0.5
            },
            0
        ))
        .is_err());
        assert!(generate(&GenSpec::new(
            Model::CompleteMultipartite {
                parts: alloc::vec![2, 0]
            },
            0
        ))
        .is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = GenSpec::new(Model::Gnp { n: 70, p: 0.4 }, 1234);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GenSpec::new(Model::Gnp { n: 70, p: 0.4 }, 1235);
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn sampling_edge_cases() {
        assert_eq!(sample_vertices(10, 10, 5).unwrap(), VertexSet::full(10));
        assert!(sample_vertices(10, 0, 5).unwrap().is_empty());
        assert_eq!(
            sample_vertices(100, 17, 42).unwrap(),
            sample_vertices(100, 17, 42).unwrap()
        );
        assert_eq!(sample_vertices(100, 17, 42).unwrap().len(), 17);
        assert!(matches!(
            sample_vertices(3, 4, 0),
            Err(Error::SampleTooLarge { .. })
        ));
    }
}
