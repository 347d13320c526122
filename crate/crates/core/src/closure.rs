//! All-pairs distance closure under a [`DistanceStructure`], and the max-min
//! closure of proximity graphs.
//!
//! Only structures whose aggregation selects the minimum are supported. For
//! those, the closure entry `(i, j)` is the smallest `⊗`-length over all
//! paths from `i` to `j`, infinity when no path exists, and zero on the
//! diagonal.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{
    induce_distance_structure, AlgebraError, DistanceStructure, IsomorphismMap, Lattice,
    ProximityStructure,
};
use crate::graph::{DistanceGraph, GraphError, NodeId, Weight};

/// Absolute tolerance for comparing closures computed with a non-lattice `⊗`.
pub const SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosureError {
    #[error("aggregation `{0}` is not supported; only min is")]
    UnsupportedAggregator(String),
    #[error("proximity structure `{0}` is not supported; only the max-min pair is")]
    UnsupportedPair(String),
    #[error("proximity weight {0} is outside (0, 1]")]
    ProximityOutOfRange(f64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    /// Floyd–Warshall style relaxation over every intermediate node.
    TripleLoop,
    /// One Dijkstra-style search per source, run in parallel.
    #[default]
    PerSource,
}

/// Dense `n × n` matrix of closure values in graph node order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosureMatrix {
    nodes: Vec<NodeId>,
    entries: Vec<f64>,
    structure: String,
}

impl ClosureMatrix {
    fn from_rows(nodes: Vec<NodeId>, rows: Vec<Vec<f64>>, structure: &str) -> Self {
        ClosureMatrix {
            nodes,
            entries: rows.into_iter().flatten().collect(),
            structure: structure.to_string(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn structure(&self) -> &str {
        &self.structure
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.nodes.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.nodes.len();
        &self.entries[i * n..(i + 1) * n]
    }

    /// Largest elementwise difference; infinite when one side is infinite
    /// and the other is not.
    pub fn max_abs_diff(&self, other: &ClosureMatrix) -> f64 {
        assert_eq!(self.len(), other.len(), "closure matrices differ in size");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| if a == b { 0.0 } else { (a - b).abs() })
            .fold(0.0, f64::max)
    }

    /// JSON document with node order and rows; infinity is the string `"inf"`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<Value>> = (0..self.len())
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&x| {
                        if x.is_infinite() {
                            json!("inf")
                        } else {
                            json!(x)
                        }
                    })
                    .collect()
            })
            .collect();
        json!({
            "structure": self.structure,
            "nodes": self.nodes,
            "rows": rows,
        })
    }
}

fn require_min(s: &DistanceStructure) -> Result<(), ClosureError> {
    if s.aggregate().lattice() != Some(Lattice::Min) {
        return Err(ClosureError::UnsupportedAggregator(
            s.aggregate().name().to_string(),
        ));
    }
    Ok(())
}

pub fn distance_closure(
    g: &DistanceGraph,
    s: &DistanceStructure,
) -> Result<ClosureMatrix, ClosureError> {
    distance_closure_with(g, s, Algorithm::default())
}

pub fn distance_closure_with(
    g: &DistanceGraph,
    s: &DistanceStructure,
    algorithm: Algorithm,
) -> Result<ClosureMatrix, ClosureError> {
    require_min(s)?;
    let rows = match algorithm {
        Algorithm::TripleLoop => {
            let n = g.node_count();
            let mut d: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| g.distance(i, j)).collect())
                .collect();
            relax_all(&mut d, s);
            d
        }
        Algorithm::PerSource => {
            let adj = g.adjacency();
            (0..g.node_count())
                .into_par_iter()
                .map(|src| single_source(&adj, src, s))
                .collect()
        }
    };
    Ok(ClosureMatrix::from_rows(g.nodes().to_vec(), rows, s.name()))
}

fn relax_all(d: &mut [Vec<f64>], s: &DistanceStructure) {
    let n = d.len();
    let combine = s.combine();
    for k in 0..n {
        let via = d[k].clone();
        for row in d.iter_mut() {
            let dik = row[k];
            if dik == f64::INFINITY {
                continue;
            }
            for (dij, &dkj) in row.iter_mut().zip(&via) {
                let candidate = combine.apply(dik, dkj);
                if candidate < *dij {
                    *dij = candidate;
                }
            }
        }
    }
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, then node index
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Label-setting search; valid because x ⊗ w ≥ x for w ≥ 0 whenever ⊗ is
// non-decreasing with identity 0.
fn single_source(adj: &[Vec<(usize, f64)>], src: usize, s: &DistanceStructure) -> Vec<f64> {
    let combine = s.combine();
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut done = vec![false; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Entry(0.0, src));
    while let Some(Entry(du, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(v, w) in &adj[u] {
            let candidate = combine.apply(du, w);
            if candidate < dist[v] {
                dist[v] = candidate;
                heap.push(Entry(candidate, v));
            }
        }
    }
    dist
}

/// Compares two closures under the tolerance appropriate for `s`: exact
/// when `⊗` is a lattice operation, [`SUM_TOLERANCE`] otherwise.
pub fn closures_agree(a: &ClosureMatrix, b: &ClosureMatrix, s: &DistanceStructure) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let diff = a.max_abs_diff(b);
    if s.is_exact() {
        diff == 0.0
    } else {
        diff <= SUM_TOLERANCE
    }
}

/// Re-closes `c` as a complete graph and reports whether nothing changes.
pub fn closure_idempotent(c: &ClosureMatrix, s: &DistanceStructure) -> bool {
    let n = c.len();
    let mut d: Vec<Vec<f64>> = (0..n).map(|i| c.row(i).to_vec()).collect();
    relax_all(&mut d, s);
    let again = ClosureMatrix::from_rows(c.nodes.clone(), d, &c.structure);
    closures_agree(c, &again, s)
}

/// Raw weight matrix of `g` (zero diagonal, infinity for non-edges) in the
/// closure matrix layout.
pub fn weight_matrix(g: &DistanceGraph, structure: &str) -> ClosureMatrix {
    let n = g.node_count();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| g.distance(i, j)).collect())
        .collect();
    ClosureMatrix::from_rows(g.nodes().to_vec(), rows, structure)
}

/// A graph whose weights are proximities in `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProximityGraph(DistanceGraph);

impl ProximityGraph {
    pub fn new(g: DistanceGraph) -> Result<Self, ClosureError> {
        if let Some(e) = g.edges().find(|e| e.weight.value() > 1.0) {
            return Err(ClosureError::ProximityOutOfRange(e.weight.value()));
        }
        Ok(ProximityGraph(g))
    }

    pub fn graph(&self) -> &DistanceGraph {
        &self.0
    }

    /// Applies `φ` to every edge weight. Fails if an edge maps to distance
    /// zero, which happens for proximity 1.
    pub fn to_distance_graph(&self, m: &IsomorphismMap) -> Result<DistanceGraph, ClosureError> {
        let g = &self.0;
        let mut out =
            DistanceGraph::with_nodes(g.is_directed(), g.nodes().iter().map(|n| n.as_str()))?;
        for e in g.edges() {
            out.insert_edge(
                e.src,
                e.dst,
                Weight::from_value(m.forward(e.weight.value()))?,
            )?;
        }
        Ok(out)
    }
}

/// Max-min closure: entry `(i, j)` is the largest, over paths, of the
/// smallest proximity along the path. The diagonal is 1 and unreachable
/// pairs are 0.
pub fn proximity_closure(
    g: &ProximityGraph,
    p: &ProximityStructure,
) -> Result<ClosureMatrix, ClosureError> {
    if p.tnorm().lattice() != Some(Lattice::Min) || p.tconorm().lattice() != Some(Lattice::Max) {
        return Err(ClosureError::UnsupportedPair(p.name().to_string()));
    }
    let g = g.graph();
    let n = g.node_count();
    let mut d: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        1.0
                    } else {
                        g.weight(i, j).map_or(0.0, Weight::value)
                    }
                })
                .collect()
        })
        .collect();
    let (edge_op, path_op) = (p.tnorm(), p.tconorm());
    for k in 0..n {
        let via = d[k].clone();
        for row in d.iter_mut() {
            let dik = row[k];
            if dik == 0.0 {
                continue;
            }
            for (dij, &dkj) in row.iter_mut().zip(&via) {
                *dij = path_op.apply(*dij, edge_op.apply(dik, dkj));
            }
        }
    }
    Ok(ClosureMatrix::from_rows(g.nodes().to_vec(), d, p.name()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutationReport {
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Compares `φ` applied to the proximity closure with the distance closure
/// of the `φ`-mapped graph under the induced structure.
pub fn verify_phi_commutation(
    g: &ProximityGraph,
    p: &ProximityStructure,
    m: &IsomorphismMap,
    tol: f64,
) -> Result<CommutationReport, ClosureError> {
    let induced = induce_distance_structure(p, m)?;
    let proximity = proximity_closure(g, p)?;
    let distance = distance_closure(&g.to_distance_graph(m)?, &induced)?;
    let n = proximity.len();
    let mut max_deviation: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (m.forward(proximity.get(i, j)), distance.get(i, j));
            let dev = if a == b { 0.0 } else { (a - b).abs() };
            max_deviation = max_deviation.max(if dev.is_nan() { f64::INFINITY } else { dev });
        }
    }
    Ok(CommutationReport {
        max_deviation,
        tolerance: tol,
        passed: max_deviation < tol,
    })
}
