//! Distance backbones: the edges whose weight survives closure unchanged.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::algebra::DistanceStructure;
use crate::closure::{closures_agree, distance_closure, ClosureError, ClosureMatrix};
use crate::graph::DistanceGraph;

/// Relative tolerance for `d = d^D` when `⊗` is not a lattice operation.
pub const RELATIVE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    /// Weight equals the closure distance; the edge is kept.
    Triangular,
    /// A strictly shorter indirect path exists; the edge is removed.
    SemiTriangular,
}

#[derive(Debug, Clone)]
pub struct BackboneReport {
    pub original: DistanceGraph,
    pub backbone: DistanceGraph,
    pub classes: BTreeMap<(usize, usize), EdgeClass>,
    /// `d / d^D` for semi-triangular edges only.
    pub distortion: BTreeMap<(usize, usize), f64>,
    pub structure: String,
}

impl BackboneReport {
    pub fn kept(&self) -> BTreeSet<(usize, usize)> {
        self.backbone.edge_keys()
    }

    pub fn removed(&self) -> BTreeSet<(usize, usize)> {
        self.distortion.keys().copied().collect()
    }

    /// Kept and removed edges in canonical order, the latter with distortion.
    pub fn to_json(&self) -> Value {
        let g = &self.original;
        let kept: Vec<Value> = self
            .backbone
            .canonical_edges()
            .into_iter()
            .map(|e| json!({"src": g.label(e.src), "dst": g.label(e.dst), "w": e.weight.value()}))
            .collect();
        let removed: Vec<Value> = semi_triangular_ranking(self)
            .into_iter()
            .map(|r| {
                let (src, dst) = g.canonical_labels(r.edge);
                json!({"src": src, "dst": dst, "w": r.weight, "distortion": r.distortion})
            })
            .collect();
        json!({
            "structure": self.structure,
            "directed": g.is_directed(),
            "nodes": g.node_count(),
            "edges": g.edge_count(),
            "kept": kept,
            "removed": removed,
        })
    }
}

fn is_invariant(weight: f64, closed: f64, s: &DistanceStructure) -> bool {
    if s.is_exact() {
        weight == closed
    } else {
        (weight - closed).abs() <= RELATIVE_TOLERANCE * weight
    }
}

/// Classifies every edge against a precomputed closure of `g`.
pub fn classify(
    g: &DistanceGraph,
    closure: &ClosureMatrix,
    s: &DistanceStructure,
) -> BackboneReport {
    let mut classes = BTreeMap::new();
    let mut distortion = BTreeMap::new();
    let mut kept = Vec::new();
    for e in g.edges() {
        let key = (e.src, e.dst);
        let (w, c) = (e.weight.value(), closure.get(e.src, e.dst));
        if is_invariant(w, c, s) {
            classes.insert(key, EdgeClass::Triangular);
            kept.push(key);
        } else {
            classes.insert(key, EdgeClass::SemiTriangular);
            distortion.insert(key, w / c);
        }
    }
    BackboneReport {
        original: g.clone(),
        backbone: g.subgraph(kept),
        classes,
        distortion,
        structure: s.name().to_string(),
    }
}

pub fn extract_backbone(
    g: &DistanceGraph,
    s: &DistanceStructure,
) -> Result<BackboneReport, ClosureError> {
    let closure = distance_closure(g, s)?;
    Ok(classify(g, &closure, s))
}

/// Whether the backbone alone reproduces the closure of the full graph.
pub fn backbone_preserves_closure(
    g: &DistanceGraph,
    s: &DistanceStructure,
) -> Result<bool, ClosureError> {
    let full = distance_closure(g, s)?;
    let backbone = classify(g, &full, s).backbone;
    Ok(closures_agree(&full, &distance_closure(&backbone, s)?, s))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedEdge {
    pub edge: (usize, usize),
    pub weight: f64,
    pub distortion: f64,
}

/// Semi-triangular edges by decreasing distortion; ties in canonical edge
/// order.
pub fn semi_triangular_ranking(r: &BackboneReport) -> Vec<RankedEdge> {
    let g = &r.original;
    let mut out: Vec<RankedEdge> = r
        .distortion
        .iter()
        .map(|(&edge, &distortion)| RankedEdge {
            edge,
            weight: g.weight(edge.0, edge.1).map_or(f64::NAN, |w| w.value()),
            distortion,
        })
        .collect();
    out.sort_by(|a, b| {
        b.distortion
            .total_cmp(&a.distortion)
            .then_with(|| g.canonical_cmp(a.edge, b.edge))
    });
    out
}

/// Edges lying on at least one shortest-path tree (sum of weights), over
/// all sources. An edge `u → v` qualifies when `d(s,u) + w = d(s,v)` for
/// some source `s`.
pub fn shortest_path_tree_union(
    g: &DistanceGraph,
) -> Result<BTreeSet<(usize, usize)>, ClosureError> {
    let d = distance_closure(g, &DistanceStructure::metric())?;
    let tight = |s: usize, u: usize, v: usize, w: f64| {
        let (du, dv) = (d.get(s, u), d.get(s, v));
        du.is_finite() && (du + w - dv).abs() <= RELATIVE_TOLERANCE * dv.max(1.0)
    };
    let mut out = BTreeSet::new();
    for e in g.edges() {
        let w = e.weight.value();
        let on_tree = (0..g.node_count())
            .any(|s| tight(s, e.src, e.dst, w) || (!g.is_directed() && tight(s, e.dst, e.src, w)));
        if on_tree {
            out.insert((e.src, e.dst));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn k3_112() -> DistanceGraph {
        parse_graph("undirected\na b 1\nb c 1\na c 2").unwrap()
    }

    #[test]
    fn equal_triangle_keeps_everything() {
        let g = parse_graph("undirected\na b 1\nb c 1\na c 1").unwrap();
        for s in [
            DistanceStructure::metric(),
            DistanceStructure::ultrametric(),
        ] {
            let r = extract_backbone(&g, &s).unwrap();
            assert_eq!(r.backbone, g);
            assert!(r.distortion.is_empty());
        }
    }

    #[test]
    fn k3_112_classification() {
        let g = k3_112();
        let u = extract_backbone(&g, &DistanceStructure::ultrametric()).unwrap();
        assert_eq!(u.backbone.edge_count(), 2);
        let ac = g.key(g.index_of("a").unwrap(), g.index_of("c").unwrap());
        assert_eq!(u.classes[&ac], EdgeClass::SemiTriangular);
        assert_eq!(u.distortion[&ac], 2.0);
        assert_eq!(
            semi_triangular_ranking(&u),
            vec![RankedEdge {
                edge: ac,
                weight: 2.0,
                distortion: 2.0
            }]
        );

        let m = extract_backbone(&g, &DistanceStructure::metric()).unwrap();
        assert_eq!(m.backbone.edge_count(), 3);
        assert!(semi_triangular_ranking(&m).is_empty());
    }

    #[test]
    fn four_cycle_is_its_own_ultrametric_backbone() {
        let g = parse_graph("undirected\na b 1\nb c 1\nc d 1\nd a 1").unwrap();
        let r = extract_backbone(&g, &DistanceStructure::ultrametric()).unwrap();
        assert_eq!(r.backbone, g);
    }

    #[test]
    fn path_has_no_semi_triangular_edges() {
        let g = parse_graph("undirected\na b 3\nb c 1\nc d 2").unwrap();
        let r = extract_backbone(&g, &DistanceStructure::ultrametric()).unwrap();
        assert!(semi_triangular_ranking(&r).is_empty());
    }

    #[test]
    fn ranking_orders_by_distortion_then_label() {
        let g = parse_graph("undirected\na b 1\nb c 1\na c 3\nc d 1\nb d 3\na d 2").unwrap();
        let r = extract_backbone(&g, &DistanceStructure::ultrametric()).unwrap();
        let ranked: Vec<_> = semi_triangular_ranking(&r)
            .into_iter()
            .map(|x| (g.canonical_labels(x.edge), x.distortion))
            .collect();
        assert_eq!(
            ranked,
            vec![(("a", "c"), 3.0), (("b", "d"), 3.0), (("a", "d"), 2.0)]
        );
    }

    #[test]
    fn closure_preservation_and_its_failure() {
        let g = k3_112();
        for s in [
            DistanceStructure::metric(),
            DistanceStructure::ultrametric(),
        ] {
            assert!(backbone_preserves_closure(&g, &s).unwrap());
        }
        let s = DistanceStructure::ultrametric();
        let full = distance_closure(&g, &s).unwrap();
        // drop a retained edge as well as the removed one
        let (a, b) = (g.index_of("a").unwrap(), g.index_of("b").unwrap());
        let (bi, c) = (b, g.index_of("c").unwrap());
        let crippled = g.subgraph([(bi, c)]);
        assert!(g.has_edge(a, b));
        assert!(!closures_agree(
            &full,
            &distance_closure(&crippled, &s).unwrap(),
            &s
        ));
    }

    #[test]
    fn metric_backbone_matches_shortest_path_trees() {
        let g = parse_graph("directed\na b 1\nb c 2\na c 3\nc a 1\na d 7\nc d 1").unwrap();
        let mb = extract_backbone(&g, &DistanceStructure::metric()).unwrap();
        assert_eq!(shortest_path_tree_union(&g).unwrap(), mb.kept());
    }
}
