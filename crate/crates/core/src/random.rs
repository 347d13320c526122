//! Seeded random graph generators for test harnesses and the CLI.
//!
//! Node labels are `x1..xn`. All generators draw from the supplied RNG only,
//! so a fixed seed reproduces the same graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::DistanceGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightDist {
    /// Uniform integer in `lo..=hi`.
    Integer { lo: u32, hi: u32 },
    /// A random permutation of `1..=m` over the `m` edges.
    Distinct,
    /// Uniform real in `[lo, hi)`.
    Real { lo: f64, hi: f64 },
    /// Multiple of 1/8 in `(0, 8]`; sums of these are exact.
    Dyadic,
}

/// Independent stream `index` of the generator family identified by `seed`.
pub fn candidate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn draw(rng: &mut impl Rng, dist: WeightDist) -> f64 {
    match dist {
        WeightDist::Integer { lo, hi } => f64::from(rng.gen_range(lo..=hi)),
        WeightDist::Real { lo, hi } => rng.gen_range(lo..hi),
        WeightDist::Dyadic => f64::from(rng.gen_range(1..=64u32)) / 8.0,
        WeightDist::Distinct => {
            unreachable!("distinct weights are assigned after the edges are chosen")
        }
    }
}

fn build(
    n: usize,
    directed: bool,
    pairs: Vec<(usize, usize)>,
    dist: WeightDist,
    rng: &mut impl Rng,
) -> DistanceGraph {
    let names = labels(n);
    let mut g = DistanceGraph::with_nodes(directed, names.iter().cloned()).expect("valid labels");
    let weights: Vec<f64> = match dist {
        WeightDist::Distinct => {
            let mut w: Vec<f64> = (1..=pairs.len()).map(|x| x as f64).collect();
            w.shuffle(rng);
            w
        }
        _ => pairs.iter().map(|_| draw(rng, dist)).collect(),
    };
    for ((u, v), w) in pairs.into_iter().zip(weights) {
        g.add_edge(&names[u], &names[v], w).expect("fresh edge");
    }
    g
}

fn all_pairs(n: usize, directed: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && (directed || u < v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Each possible edge present independently with probability `density`.
pub fn random_graph(
    rng: &mut impl Rng,
    n: usize,
    directed: bool,
    density: f64,
    dist: WeightDist,
) -> DistanceGraph {
    let pairs = all_pairs(n, directed)
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect();
    build(n, directed, pairs, dist, rng)
}

fn spanning_tree_pairs(rng: &mut impl Rng, nodes: &[usize]) -> Vec<(usize, usize)> {
    let mut order = nodes.to_vec();
    order.shuffle(rng);
    (1..order.len())
        .map(|i| {
            let j = rng.gen_range(0..i);
            let (a, b) = (order[i], order[j]);
            (a.min(b), a.max(b))
        })
        .collect()
}

fn connected_pairs(rng: &mut impl Rng, nodes: &[usize], density: f64) -> Vec<(usize, usize)> {
    let mut pairs = spanning_tree_pairs(rng, nodes);
    for (i, &u) in nodes.iter().enumerate() {
        for &v in &nodes[i + 1..] {
            let p = (u.min(v), u.max(v));
            if !pairs.contains(&p) && rng.gen_bool(density) {
                pairs.push(p);
            }
        }
    }
    pairs
}

/// Connected undirected graph: a random spanning tree plus each remaining
/// pair with probability `density`.
pub fn random_connected_graph(
    rng: &mut impl Rng,
    n: usize,
    density: f64,
    dist: WeightDist,
) -> DistanceGraph {
    let nodes: Vec<usize> = (0..n).collect();
    let pairs = connected_pairs(rng, &nodes, density);
    build(n, false, pairs, dist, rng)
}

/// Undirected graph with exactly `parts` connected components, each built
/// like [`random_connected_graph`]. Requires `n >= parts`.
pub fn random_multi_component_graph(
    rng: &mut impl Rng,
    n: usize,
    parts: usize,
    density: f64,
    dist: WeightDist,
) -> DistanceGraph {
    assert!(
        parts >= 1 && n >= parts,
        "need at least one node per component"
    );
    let mut owner: Vec<usize> = (0..n)
        .map(|i| {
            if i < parts {
                i
            } else {
                rng.gen_range(0..parts)
            }
        })
        .collect();
    owner.shuffle(rng);
    let mut pairs = Vec::new();
    for c in 0..parts {
        let nodes: Vec<usize> = (0..n).filter(|&v| owner[v] == c).collect();
        pairs.extend(connected_pairs(rng, &nodes, density));
    }
    build(n, false, pairs, dist, rng)
}

/// Proximity graph with weights in `(0, 1]`, each a multiple of 2⁻⁵³ so that
/// `1 - p` is exact.
pub fn random_proximity_graph(
    rng: &mut impl Rng,
    n: usize,
    directed: bool,
    density: f64,
) -> DistanceGraph {
    let pairs: Vec<(usize, usize)> = all_pairs(n, directed)
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect();
    let names = labels(n);
    let mut g = DistanceGraph::with_nodes(directed, names.iter().cloned()).expect("valid labels");
    for (u, v) in pairs {
        let p = (rng.gen_range(1..=(1u64 << 53)) as f64) / (1u64 << 53) as f64;
        g.add_edge(&names[u], &names[v], p).expect("fresh edge");
    }
    g
}

/// Member `index` of the tie-heavy undirected ensemble for `seed`: `n` in
/// `n_min..=n_max`, integer weights 1..=4, and `parts` connected components
/// (capped at `n`).
pub fn tie_heavy_graph(
    seed: u64,
    index: u64,
    n_min: usize,
    n_max: usize,
    parts: usize,
) -> DistanceGraph {
    let mut rng = candidate_rng(seed, index);
    let n = rng.gen_range(n_min..=n_max);
    let density = rng.gen_range(0.2..0.9);
    let dist = WeightDist::Integer { lo: 1, hi: 4 };
    if parts <= 1 {
        random_connected_graph(&mut rng, n, density, dist)
    } else {
        random_multi_component_graph(&mut rng, n, parts.min(n), density, dist)
    }
}
