//! Minimum spanning forests of undirected graphs, the union of all of them,
//! and checks relating that union to the ultrametric backbone.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::DistanceStructure;
use crate::backbone::extract_backbone;
use crate::closure::ClosureError;
use crate::graph::{components, sum_ascending, ComponentKind, DistanceGraph};
use crate::union_find::UnionFind;

/// Default bound on candidate edge subsets examined by exhaustive
/// enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpanningError {
    #[error("spanning forests are defined for undirected graphs only")]
    DirectedInput,
    #[error("enumeration would examine {candidates} candidates, above the limit of {limit}")]
    TooLarge { candidates: u128, limit: u128 },
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanningKind {
    Tree,
    Forest,
    Union,
}

/// A set of edges of some graph, keyed as in [`DistanceGraph::key`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningSet {
    pub edges: BTreeSet<(usize, usize)>,
    pub kind: SpanningKind,
    pub total_weight: f64,
    /// Weakly connected components of the graph the set was taken from.
    pub component_count: usize,
}

impl SpanningSet {
    fn new(
        g: &DistanceGraph,
        edges: BTreeSet<(usize, usize)>,
        kind: SpanningKind,
        component_count: usize,
    ) -> Self {
        let total_weight = sum_ascending(edges.iter().map(|&(i, j)| g.distance(i, j)));
        SpanningSet {
            edges,
            kind,
            total_weight,
            component_count,
        }
    }

    /// The edges as a subgraph of `g` (same node set).
    pub fn to_graph(&self, g: &DistanceGraph) -> DistanceGraph {
        g.subgraph(self.edges.iter().copied())
    }
}

fn require_undirected(g: &DistanceGraph) -> Result<(), SpanningError> {
    if g.is_directed() {
        Err(SpanningError::DirectedInput)
    } else {
        Ok(())
    }
}

fn forest_kind(component_count: usize) -> SpanningKind {
    if component_count <= 1 {
        SpanningKind::Tree
    } else {
        SpanningKind::Forest
    }
}

/// Edges sorted by weight, ties in canonical label order.
fn sorted_edges(g: &DistanceGraph) -> Vec<(usize, usize, f64)> {
    let mut edges: Vec<(usize, usize, f64)> = g
        .edges()
        .map(|e| (e.src, e.dst, e.weight.value()))
        .collect();
    edges.sort_by(|a, b| {
        a.2.total_cmp(&b.2)
            .then_with(|| g.canonical_cmp((a.0, a.1), (b.0, b.1)))
    });
    edges
}

/// Kruskal's algorithm. Deterministic: among equal weights the edge that
/// comes first in canonical order is tried first.
pub fn kruskal_msf(g: &DistanceGraph) -> Result<SpanningSet, SpanningError> {
    require_undirected(g)?;
    let mut uf = UnionFind::new(g.node_count());
    let chosen = sorted_edges(g)
        .into_iter()
        .filter(|&(i, j, _)| uf.union(i, j))
        .map(|(i, j, _)| (i, j))
        .collect();
    let c = uf.set_count();
    Ok(SpanningSet::new(g, chosen, forest_kind(c), c))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Every minimum spanning forest, by exhaustive search over acyclic edge
/// subsets of size `n − c`.
///
/// Forest weights are summed in ascending order, so forests with the same
/// weight multiset (as all minimum forests have) compare exactly equal.
/// Output order is lexicographic in the graph's storage edge order.
pub fn enumerate_all_msts(
    g: &DistanceGraph,
    limit: u128,
) -> Result<Vec<SpanningSet>, SpanningError> {
    require_undirected(g)?;
    let n = g.node_count();
    let c = components(g, ComponentKind::Weak).len();
    let size = n - c;
    let edges: Vec<(usize, usize, f64)> = g
        .edges()
        .map(|e| (e.src, e.dst, e.weight.value()))
        .collect();
    let candidates = binomial(edges.len(), size);
    if candidates > limit {
        return Err(SpanningError::TooLarge { candidates, limit });
    }

    struct Search<'a> {
        edges: &'a [(usize, usize, f64)],
        size: usize,
        chosen: Vec<usize>,
        best: f64,
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn run(&mut self, next: usize, uf: &UnionFind) {
            if self.chosen.len() == self.size {
                let w = sum_ascending(self.chosen.iter().map(|&k| self.edges[k].2));
                if w < self.best {
                    self.best = w;
                    self.found.clear();
                }
                if w == self.best {
                    self.found.push(self.chosen.clone());
                }
                return;
            }
            let needed = self.size - self.chosen.len();
            for k in next..self.edges.len() {
                if self.edges.len() - k < needed {
                    break;
                }
                let (i, j, _) = self.edges[k];
                let mut uf = uf.clone();
                if uf.union(i, j) {
                    self.chosen.push(k);
                    self.run(k + 1, &uf);
                    self.chosen.pop();
                }
            }
        }
    }

    let mut search = Search {
        edges: &edges,
        size,
        chosen: Vec::with_capacity(size),
        best: f64::INFINITY,
        found: Vec::new(),
    };
    search.run(0, &UnionFind::new(n));

    Ok(search
        .found
        .into_iter()
        .map(|ks| {
            let set = ks.into_iter().map(|k| (edges[k].0, edges[k].1)).collect();
            SpanningSet::new(g, set, forest_kind(c), c)
        })
        .collect())
}

/// Union of all minimum spanning forests without enumerating them: an edge
/// of weight `w` belongs to some minimum forest exactly when its endpoints
/// are still disconnected after merging every edge lighter than `w`.
pub fn mst_union(g: &DistanceGraph) -> Result<SpanningSet, SpanningError> {
    require_undirected(g)?;
    let edges = sorted_edges(g);
    let mut uf = UnionFind::new(g.node_count());
    let mut union = BTreeSet::new();
    for class in edges.chunk_by(|a, b| a.2 == b.2) {
        for &(i, j, _) in class {
            if !uf.same(i, j) {
                union.insert((i, j));
            }
        }
        for &(i, j, _) in class {
            uf.union(i, j);
        }
    }
    let c = uf.set_count();
    Ok(SpanningSet::new(g, union, SpanningKind::Union, c))
}

/// Outcome of comparing the ultrametric backbone with the cut-rule union and
/// the union of enumerated minimum spanning forests.
#[derive(Debug, Clone, PartialEq)]
pub struct UnionTheoremReport {
    pub backbone: BTreeSet<(usize, usize)>,
    pub cut_union: BTreeSet<(usize, usize)>,
    pub enumerated_union: BTreeSet<(usize, usize)>,
    pub forest_count: usize,
    /// Every enumerated forest lies inside the backbone.
    pub forests_within_backbone: bool,
    /// Every backbone edge appears in some enumerated forest.
    pub backbone_edges_covered: bool,
    pub witnesses: Vec<String>,
}

impl UnionTheoremReport {
    pub fn passed(&self) -> bool {
        self.backbone == self.cut_union
            && self.backbone == self.enumerated_union
            && self.forests_within_backbone
            && self.backbone_edges_covered
    }
}

pub fn verify_union_theorem(g: &DistanceGraph) -> Result<UnionTheoremReport, SpanningError> {
    verify_union_theorem_with(g, DEFAULT_ENUMERATION_LIMIT)
}

pub fn verify_union_theorem_with(
    g: &DistanceGraph,
    limit: u128,
) -> Result<UnionTheoremReport, SpanningError> {
    require_undirected(g)?;
    let backbone = extract_backbone(g, &DistanceStructure::ultrametric())?.kept();
    let cut_union = mst_union(g)?.edges;
    let forests = enumerate_all_msts(g, limit)?;
    let enumerated_union: BTreeSet<_> = forests
        .iter()
        .flat_map(|f| f.edges.iter().copied())
        .collect();

    let name = |(i, j): (usize, usize)| {
        let (a, b) = g.canonical_labels((i, j));
        format!("{a}-{b}")
    };
    let mut witnesses = Vec::new();
    let mut diff = |label: &str, a: &BTreeSet<(usize, usize)>, b: &BTreeSet<(usize, usize)>| {
        for &e in a.difference(b) {
            witnesses.push(format!("edge {} {label}", name(e)));
        }
    };
    diff(
        "in backbone, missing from cut-rule union",
        &backbone,
        &cut_union,
    );
    diff(
        "in cut-rule union, missing from backbone",
        &cut_union,
        &backbone,
    );
    diff(
        "in backbone, in no enumerated forest",
        &backbone,
        &enumerated_union,
    );
    diff(
        "in an enumerated forest, missing from backbone",
        &enumerated_union,
        &backbone,
    );

    let forests_within_backbone = forests.iter().all(|f| f.edges.is_subset(&backbone));
    let backbone_edges_covered = backbone.is_subset(&enumerated_union);
    Ok(UnionTheoremReport {
        backbone,
        cut_union,
        enumerated_union,
        forest_count: forests.len(),
        forests_within_backbone,
        backbone_edges_covered,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum CycleVerdict {
    /// The hypothesis of the cycle property does not apply.
    NoUniqueMaximum,
    /// The unique heaviest edge is absent from every minimum forest.
    MaximumExcluded((usize, usize)),
    /// Counterexample: the heaviest edge appears in the given forest.
    MaximumIncluded {
        edge: (usize, usize),
        forest: SpanningSet,
    },
}

impl CycleVerdict {
    pub fn holds(&self) -> bool {
        !matches!(self, CycleVerdict::MaximumIncluded { .. })
    }
}

/// Checks the cycle property on a cycle given as a list of edges by label.
pub fn cycle_property_check(
    g: &DistanceGraph,
    cycle: &[(&str, &str)],
) -> Result<CycleVerdict, SpanningError> {
    require_undirected(g)?;
    if cycle.len() < 3 {
        return Err(SpanningError::NotACycle(format!(
            "{} edges, need at least 3",
            cycle.len()
        )));
    }
    let mut keys = BTreeSet::new();
    let mut degree = std::collections::BTreeMap::<usize, usize>::new();
    let mut uf = UnionFind::new(g.node_count());
    for &(a, b) in cycle {
        let (i, j) = match (g.index_of(a), g.index_of(b)) {
            (Some(i), Some(j)) if g.has_edge(i, j) => (i, j),
            _ => return Err(SpanningError::NotACycle(format!("{a}-{b} is not an edge"))),
        };
        if !keys.insert(g.key(i, j)) {
            return Err(SpanningError::NotACycle(format!("{a}-{b} repeated")));
        }
        *degree.entry(i).or_default() += 1;
        *degree.entry(j).or_default() += 1;
        uf.union(i, j);
    }
    if degree.values().any(|&d| d != 2) {
        return Err(SpanningError::NotACycle(
            "every vertex must have degree 2".into(),
        ));
    }
    let first = *degree.keys().next().expect("non-empty");
    if degree.keys().any(|&v| !uf.same(v, first)) {
        return Err(SpanningError::NotACycle(
            "edges form more than one cycle".into(),
        ));
    }

    let mut by_weight: Vec<((usize, usize), f64)> =
        keys.iter().map(|&k| (k, g.distance(k.0, k.1))).collect();
    by_weight.sort_by(|a, b| b.1.total_cmp(&a.1));
    if by_weight[0].1 == by_weight[1].1 {
        return Ok(CycleVerdict::NoUniqueMaximum);
    }
    let heaviest = by_weight[0].0;
    for forest in enumerate_all_msts(g, DEFAULT_ENUMERATION_LIMIT)? {
        if forest.edges.contains(&heaviest) {
            return Ok(CycleVerdict::MaximumIncluded {
                edge: heaviest,
                forest,
            });
        }
    }
    Ok(CycleVerdict::MaximumExcluded(heaviest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn labels(g: &DistanceGraph, set: &BTreeSet<(usize, usize)>) -> Vec<String> {
        let mut v: Vec<String> = set
            .iter()
            .map(|&k| {
                let (a, b) = g.canonical_labels(k);
                format!("{a}{b}")
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn kruskal_examples() {
        let k3 = parse_graph("undirected\nb c 1\na c 1\na b 1").unwrap();
        let t = kruskal_msf(&k3).unwrap();
        assert_eq!(labels(&k3, &t.edges), ["ab", "ac"]);
        assert_eq!(t.total_weight, 2.0);
        assert_eq!(t.kind, SpanningKind::Tree);

        let g = parse_graph("undirected\na b 1\nb c 2\na c 4\nc d 3").unwrap();
        let t = kruskal_msf(&g).unwrap();
        assert_eq!(labels(&g, &t.edges), ["ab", "bc", "cd"]);
        assert_eq!(t.total_weight, 6.0);

        let two = parse_graph("undirected\na b 1\nb c 1\nd e 2").unwrap();
        let f = kruskal_msf(&two).unwrap();
        assert_eq!(f.kind, SpanningKind::Forest);
        assert_eq!(f.component_count, 2);
        assert_eq!(f.edges.len(), 3);

        assert_eq!(
            kruskal_msf(&parse_graph("directed\na b 1").unwrap()),
            Err(SpanningError::DirectedInput)
        );
    }

    #[test]
    fn enumeration_examples() {
        let k3 = parse_graph("undirected\na b 1\nb c 1\na c 1").unwrap();
        assert_eq!(
            enumerate_all_msts(&k3, DEFAULT_ENUMERATION_LIMIT)
                .unwrap()
                .len(),
            3
        );

        let c4 = parse_graph("undirected\na b 1\nb c 1\nc d 1\nd a 1").unwrap();
        let all = enumerate_all_msts(&c4, DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all
            .iter()
            .all(|t| t.total_weight == 3.0 && t.edges.len() == 3));

        let distinct = parse_graph("undirected\na b 1\nb c 2\na c 4\nc d 3\nb d 5").unwrap();
        assert_eq!(
            enumerate_all_msts(&distinct, DEFAULT_ENUMERATION_LIMIT)
                .unwrap()
                .len(),
            1
        );

        let err = enumerate_all_msts(&k3, 2).unwrap_err();
        assert_eq!(
            err,
            SpanningError::TooLarge {
                candidates: 3,
                limit: 2
            }
        );

        let empty = DistanceGraph::new(false);
        let all = enumerate_all_msts(&empty, 10).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].edges.is_empty());
    }

    #[test]
    fn union_examples() {
        let k3 = parse_graph("undirected\na b 1\nb c 1\na c 1").unwrap();
        assert_eq!(mst_union(&k3).unwrap().edges.len(), 3);

        let g = parse_graph("undirected\na b 1\nb c 2\na c 4\nc d 3").unwrap();
        assert_eq!(
            labels(&g, &mst_union(&g).unwrap().edges),
            ["ab", "bc", "cd"]
        );

        let c4 = parse_graph("undirected\na b 1\nb c 1\nc d 1\nd a 1").unwrap();
        let u = mst_union(&c4).unwrap();
        assert_eq!(u.edges.len(), 4);
        assert_eq!(u.kind, SpanningKind::Union);
    }

    #[test]
    fn union_theorem_small_cases() {
        for text in [
            "undirected\na b 1",
            "undirected\na b 1\nb c 1\na c 2",
            "undirected\na b 2\nb c 1\nc d 2\nd a 1\na c 2",
            "undirected\na b 1\nc d 1\nd e 1\nc e 1",
        ] {
            let g = parse_graph(text).unwrap();
            let r = verify_union_theorem(&g).unwrap();
            assert!(r.passed(), "{text}: {:?}", r.witnesses);
        }
        let single = verify_union_theorem(&parse_graph("undirected\na b 1").unwrap()).unwrap();
        assert_eq!(single.backbone.len(), 1);
        assert_eq!(single.forest_count, 1);
    }

    #[test]
    fn cycle_property_examples() {
        let tri = parse_graph("undirected\na b 1\nb c 2\nc a 4").unwrap();
        let v = cycle_property_check(&tri, &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        assert_eq!(v, CycleVerdict::MaximumExcluded(tri.key(0, 2)));

        let eq = parse_graph("undirected\na b 1\nb c 1\nc a 1").unwrap();
        let v = cycle_property_check(&eq, &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        assert_eq!(v, CycleVerdict::NoUniqueMaximum);
        assert!(v.holds());

        let c4 = parse_graph("undirected\na b 1\nb c 2\nc d 3\nd a 9").unwrap();
        let v =
            cycle_property_check(&c4, &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        assert!(matches!(v, CycleVerdict::MaximumExcluded(e) if c4.distance(e.0, e.1) == 9.0));
    }

    #[test]
    fn cycle_validation() {
        let g = parse_graph("undirected\na b 1\nb c 2\nc a 4\nc d 1").unwrap();
        for bad in [
            vec![("a", "b"), ("b", "c")],
            vec![("a", "b"), ("b", "c"), ("c", "d")],
            vec![("a", "b"), ("b", "c"), ("a", "d")],
            vec![("a", "b"), ("b", "a"), ("c", "a")],
        ] {
            assert!(
                matches!(
                    cycle_property_check(&g, &bad),
                    Err(SpanningError::NotACycle(_))
                ),
                "{bad:?}"
            );
        }
    }
}
