//! Weighted graph model shared by every algorithm in the crate.
//!
//! A [`DistanceGraph`] holds strictly positive, finite edge weights. A missing
//! entry stands for an infinite distance, so infinity is never stored. Node
//! indices follow insertion order; every deterministic tie-break in the crate
//! refers to that order or to the canonical label order used for output.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::union_find::UnionFind;

/// Errors raised while building or parsing a graph.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("weight `{0}` is not a positive finite number")]
    NonPositiveWeight(String),
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{src} {dst}`")]
    DuplicateEdge { src: String, dst: String },
    #[error(
        "edge `{src} {dst}` was already listed in the opposite orientation with a different weight"
    )]
    ConflictingReverseEdge { src: String, dst: String },
    #[error("malformed line: {0}")]
    MalformedLine(String),
    #[error("invalid node label `{0}`")]
    InvalidLabel(String),
    #[error("no such node `{0}`")]
    NoSuchNode(String),
}

/// A [`GraphError`] tied to the line of the edge-list document that caused it.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {error}")]
pub struct ParseError {
    pub line: usize,
    pub error: GraphError,
}

/// Node label: non-empty, free of whitespace, and not starting with `#`
/// (which would read back as a comment line).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(label: impl Into<String>) -> Result<Self, GraphError> {
        let label = label.into();
        if label.is_empty() || label.starts_with('#') || label.chars().any(char::is_whitespace) {
            return Err(GraphError::InvalidLabel(label));
        }
        Ok(NodeId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for NodeId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Edge weight as written in the source document together with its binary
/// value. Algorithms only ever look at [`Weight::value`]; the text is kept so
/// edge-list output reproduces the input byte for byte.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    value: f64,
    text: String,
}

impl Weight {
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let value: f64 = text
            .parse()
            .map_err(|_| GraphError::MalformedLine(format!("`{text}` is not a number")))?;
        if !(value.is_finite() && value > 0.0) {
            return Err(GraphError::NonPositiveWeight(text.to_string()));
        }
        Ok(Weight {
            value,
            text: text.to_string(),
        })
    }

    /// Builds a weight from a binary value; the text is the shortest decimal
    /// that parses back to the same value.
    pub fn from_value(value: f64) -> Result<Self, GraphError> {
        if !(value.is_finite() && value > 0.0) {
            return Err(GraphError::NonPositiveWeight(value.to_string()));
        }
        Ok(Weight {
            value,
            text: value.to_string(),
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

/// Output formats understood by [`serialize_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dot,
    Json,
}

/// Connectivity notion used by [`components`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Weak,
    Strong,
}

/// A block of the node partition produced by [`components`]. Members are
/// node indices sorted by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub members: Vec<usize>,
    pub kind: ComponentKind,
}

/// An edge as seen from outside the graph: endpoint indices plus weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeRef<'a> {
    pub src: usize,
    pub dst: usize,
    pub weight: &'a Weight,
}

#[derive(Debug, Clone)]
pub struct DistanceGraph {
    directed: bool,
    nodes: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    // undirected keys are stored with the smaller node index first
    edges: BTreeMap<(usize, usize), Weight>,
}

impl DistanceGraph {
    pub fn new(directed: bool) -> Self {
        DistanceGraph {
            directed,
            nodes: Vec::new(),
            index: HashMap::new(),
            edges: BTreeMap::new(),
        }
    }

    /// Creates a graph with the given nodes and no edges.
    pub fn with_nodes<I, S>(directed: bool, labels: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = DistanceGraph::new(directed);
        for label in labels {
            g.add_node(label)?;
        }
        Ok(g)
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn label(&self, i: usize) -> &str {
        self.nodes[i].as_str()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Adds a node if absent and returns its index.
    pub fn add_node(&mut self, label: impl Into<String>) -> Result<usize, GraphError> {
        let id = NodeId::new(label)?;
        if let Some(&i) = self.index.get(&id) {
            return Ok(i);
        }
        let i = self.nodes.len();
        self.index.insert(id.clone(), i);
        self.nodes.push(id);
        Ok(i)
    }

    /// Normalized storage key for the edge between `i` and `j`.
    pub fn key(&self, i: usize, j: usize) -> (usize, usize) {
        if self.directed || i <= j {
            (i, j)
        } else {
            (j, i)
        }
    }

    /// Inserts an edge between existing nodes. For undirected graphs an
    /// edge already present with an equal weight is accepted silently.
    pub fn insert_edge(&mut self, i: usize, j: usize, weight: Weight) -> Result<(), GraphError> {
        if i == j {
            return Err(GraphError::SelfLoop(self.label(i).to_string()));
        }
        let key = self.key(i, j);
        if let Some(existing) = self.edges.get(&key) {
            let (src, dst) = (self.label(i).to_string(), self.label(j).to_string());
            if self.directed {
                return Err(GraphError::DuplicateEdge { src, dst });
            }
            if existing.value() != weight.value() {
                return Err(GraphError::ConflictingReverseEdge { src, dst });
            }
            return Ok(());
        }
        self.edges.insert(key, weight);
        Ok(())
    }

    /// Adds an edge by label, creating missing endpoints.
    pub fn add_edge(&mut self, src: &str, dst: &str, weight: f64) -> Result<(), GraphError> {
        let weight = Weight::from_value(weight)?;
        let i = self.add_node(src)?;
        let j = self.add_node(dst)?;
        self.insert_edge(i, j, weight)
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<&Weight> {
        self.edges.get(&self.key(i, j))
    }

    /// Weight value of the edge, or infinity when absent.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        self.weight(i, j).map_or(f64::INFINITY, Weight::value)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains_key(&self.key(i, j))
    }

    /// Edges in storage order (by normalized index key).
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef<'_>> + '_ {
        self.edges
            .iter()
            .map(|(&(src, dst), weight)| EdgeRef { src, dst, weight })
    }

    /// Normalized keys of every edge.
    pub fn edge_keys(&self) -> BTreeSet<(usize, usize)> {
        self.edges.keys().copied().collect()
    }

    /// Edges in canonical output order: lexicographic by source label, then
    /// target label. Undirected edges are oriented so the smaller label is
    /// the source.
    pub fn canonical_edges(&self) -> Vec<EdgeRef<'_>> {
        let mut out: Vec<EdgeRef<'_>> = self
            .edges()
            .map(|e| {
                if !self.directed && self.label(e.src) > self.label(e.dst) {
                    EdgeRef {
                        src: e.dst,
                        dst: e.src,
                        weight: e.weight,
                    }
                } else {
                    e
                }
            })
            .collect();
        out.sort_by(|a, b| {
            (self.label(a.src), self.label(a.dst)).cmp(&(self.label(b.src), self.label(b.dst)))
        });
        out
    }

    /// Orders two normalized keys the way [`canonical_edges`] would.
    ///
    /// [`canonical_edges`]: DistanceGraph::canonical_edges
    pub fn canonical_cmp(&self, a: (usize, usize), b: (usize, usize)) -> std::cmp::Ordering {
        self.canonical_labels(a).cmp(&self.canonical_labels(b))
    }

    /// Endpoint labels of an edge key in canonical orientation.
    pub fn canonical_labels(&self, (i, j): (usize, usize)) -> (&str, &str) {
        let (a, b) = (self.label(i), self.label(j));
        if !self.directed && a > b {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// Out-neighbour lists; undirected edges appear in both directions.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in self.edges() {
            adj[e.src].push((e.dst, e.weight.value()));
            if !self.directed {
                adj[e.dst].push((e.src, e.weight.value()));
            }
        }
        adj
    }

    /// Same node set, restricted to the given edges. Unknown keys are ignored.
    pub fn subgraph<I>(&self, keys: I) -> DistanceGraph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut sub = DistanceGraph {
            directed: self.directed,
            nodes: self.nodes.clone(),
            index: self.index.clone(),
            edges: BTreeMap::new(),
        };
        for (i, j) in keys {
            let key = self.key(i, j);
            if let Some(w) = self.edges.get(&key) {
                sub.edges.insert(key, w.clone());
            }
        }
        sub
    }

    /// Sum of all edge weights.
    pub fn total_weight(&self) -> f64 {
        sum_ascending(self.edges.values().map(Weight::value))
    }

    fn canonical_form(&self) -> (bool, BTreeSet<&str>, BTreeMap<(&str, &str), &Weight>) {
        let labels = self.nodes.iter().map(NodeId::as_str).collect();
        let edges = self
            .canonical_edges()
            .into_iter()
            .map(|e| ((self.label(e.src), self.label(e.dst)), e.weight))
            .collect();
        (self.directed, labels, edges)
    }
}

/// Structural equality: same orientation flag, node labels, and labelled
/// edges with equal weights. Node insertion order is ignored.
impl PartialEq for DistanceGraph {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

/// Sums values in ascending order, so equal multisets give identical sums.
pub(crate) fn sum_ascending<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut v: Vec<f64> = values.into_iter().collect();
    v.sort_by(f64::total_cmp);
    v.into_iter().sum()
}

/// Parses an edge-list document.
///
/// The first line is `directed` or `undirected`. Every later line that is
/// neither blank nor a `#` comment holds `<src> <dst> <weight>` separated by
/// single spaces.
pub fn parse_graph(text: &str) -> Result<DistanceGraph, ParseError> {
    let mut lines = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));
    let directed = match lines.next() {
        Some("directed") => true,
        Some("undirected") => false,
        Some(other) => {
            return Err(ParseError {
                line: 1,
                error: GraphError::MalformedLine(format!(
                    "expected `directed` or `undirected`, found `{other}`"
                )),
            })
        }
        None => unreachable!("split yields at least one item"),
    };
    let mut g = DistanceGraph::new(directed);
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();

    for (offset, line) in lines.enumerate() {
        let lineno = offset + 2;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |error| ParseError {
            line: lineno,
            error,
        };
        let fields: Vec<&str> = line.split(' ').collect();
        let [src, dst, w] = fields[..] else {
            return Err(at(GraphError::MalformedLine(format!(
                "expected `<src> <dst> <weight>`, found `{line}`"
            ))));
        };
        for label in [src, dst] {
            if NodeId::new(label).is_err() {
                return Err(at(GraphError::MalformedLine(format!(
                    "invalid node label `{label}`"
                ))));
            }
        }
        if src == dst {
            return Err(at(GraphError::SelfLoop(src.to_string())));
        }
        let weight = Weight::parse(w).map_err(at)?;
        let i = g.add_node(src).map_err(at)?;
        let j = g.add_node(dst).map_err(at)?;
        if seen.insert((i, j), lineno).is_some() {
            return Err(at(GraphError::DuplicateEdge {
                src: src.to_string(),
                dst: dst.to_string(),
            }));
        }
        g.insert_edge(i, j, weight).map_err(at)?;
    }
    Ok(g)
}

#[derive(Serialize)]
struct JsonEdge<'a> {
    src: &'a str,
    dst: &'a str,
    w: f64,
}

#[derive(Serialize)]
struct JsonGraph<'a> {
    directed: bool,
    nodes: &'a [NodeId],
    edges: Vec<JsonEdge<'a>>,
}

fn dot_escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the graph. Edges are always emitted in canonical order.
///
/// Edge lists carry edges only, so isolated nodes are not represented; the
/// JSON and DOT forms list every node.
pub fn serialize_graph(g: &DistanceGraph, format: Format) -> String {
    let edges = g.canonical_edges();
    match format {
        Format::EdgeList => {
            let mut out = String::from(if g.directed {
                "directed\n"
            } else {
                "undirected\n"
            });
            for e in edges {
                out.push_str(g.label(e.src));
                out.push(' ');
                out.push_str(g.label(e.dst));
                out.push(' ');
                out.push_str(e.weight.text());
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let doc = JsonGraph {
                directed: g.directed,
                nodes: &g.nodes,
                edges: edges
                    .iter()
                    .map(|e| JsonEdge {
                        src: g.label(e.src),
                        dst: g.label(e.dst),
                        w: e.weight.value(),
                    })
                    .collect(),
            };
            let mut s =
                serde_json::to_string_pretty(&doc).expect("graph JSON is always serializable");
            s.push('\n');
            s
        }
        Format::Dot => {
            let (kw, arrow) = if g.directed {
                ("digraph", "->")
            } else {
                ("graph", "--")
            };
            let mut out = format!("{kw} G {{\n");
            for n in &g.nodes {
                out.push_str(&format!("  \"{}\";\n", dot_escape(n.as_str())));
            }
            for e in edges {
                out.push_str(&format!(
                    "  \"{}\" {arrow} \"{}\" [label=\"{}\"];\n",
                    dot_escape(g.label(e.src)),
                    dot_escape(g.label(e.dst)),
                    e.weight.text()
                ));
            }
            out.push_str("}\n");
            out
        }
    }
}

/// Partitions the nodes into weakly or strongly connected components,
/// ordered by smallest member label. On undirected graphs both kinds agree.
pub fn components(g: &DistanceGraph, kind: ComponentKind) -> Vec<Component> {
    let n = g.node_count();
    let root_of: Vec<usize> = if kind == ComponentKind::Weak || !g.is_directed() {
        let mut uf = UnionFind::new(n);
        for e in g.edges() {
            uf.union(e.src, e.dst);
        }
        (0..n).map(|i| uf.find(i)).collect()
    } else {
        strong_component_ids(g)
    };

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, r) in root_of.into_iter().enumerate() {
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Component> = groups
        .into_values()
        .map(|mut members| {
            members.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
            Component { members, kind }
        })
        .collect();
    out.sort_by(|a, b| g.label(a.members[0]).cmp(g.label(b.members[0])));
    out
}

/// Kosaraju's algorithm with explicit stacks; returns a component id per node.
fn strong_component_ids(g: &DistanceGraph) -> Vec<usize> {
    let n = g.node_count();
    let mut fwd = vec![Vec::new(); n];
    let mut rev = vec![Vec::new(); n];
    for e in g.edges() {
        fwd[e.src].push(e.dst);
        rev[e.dst].push(e.src);
    }

    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = fwd[v].get(*next) {
                *next += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }

    let mut comp = vec![usize::MAX; n];
    for &start in order.iter().rev() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = start;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &rev[v] {
                if comp[w] == usize::MAX {
                    comp[w] = start;
                    stack.push(w);
                }
            }
        }
    }
    comp
}

/// Boolean reachability over the given arcs, one row per
/// node. A node reaches itself only through a cycle.
pub fn reachability(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<bool>> {
    let mut out = vec![Vec::new(); n];
    for (i, j) in arcs {
        out[i].push(j);
    }
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = out[s].clone();
            while let Some(v) = stack.pop() {
                if !seen[v] {
                    seen[v] = true;
                    stack.extend(out[v].iter().copied());
                }
            }
            seen
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_cannot_look_like_comments() {
        assert!(matches!(NodeId::new("#a"), Err(GraphError::InvalidLabel(_))));
        assert!(NodeId::new("a#").is_ok());
        let mut g = DistanceGraph::new(false);
        assert!(g.add_edge("#x", "y", 1.0).is_err());
    }

    #[test]
    fn dot_escapes_quotes() {
        let mut g = DistanceGraph::new(true);
        g.add_edge("a\"b", "c", 1.0).unwrap();
        assert!(serialize_graph(&g, Format::Dot).contains("\"a\\\"b\" -> \"c\""));
    }

    fn k3(w: [f64; 3]) -> DistanceGraph {
        let mut g = DistanceGraph::new(false);
        g.add_edge("a", "b", w[0]).unwrap();
        g.add_edge("a", "c", w[1]).unwrap();
        g.add_edge("b", "c", w[2]).unwrap();
        g
    }

    #[test]
    fn parses_minimal_document() {
        let g = parse_graph("undirected\na b 1.0").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1).unwrap().value(), 1.0);
        assert_eq!(g.weight(1, 0).unwrap().text(), "1.0");
    }

    #[test]
    fn rejects_self_loop() {
        let err = parse_graph("undirected\na a 1.0").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.error, GraphError::SelfLoop("a".into()));
    }

    #[test]
    fn rejects_bad_weights() {
        for w in ["0", "-1", "inf", "NaN", "0.0"] {
            let err = parse_graph(&format!("directed\na b {w}")).unwrap_err();
            assert!(
                matches!(err.error, GraphError::NonPositiveWeight(_)),
                "{w}: {err}"
            );
        }
        let err = parse_graph("directed\na b x").unwrap_err();
        assert!(matches!(err.error, GraphError::MalformedLine(_)));
    }

    #[test]
    fn rejects_malformed_lines_with_line_numbers() {
        let err = parse_graph("directed\n# c\n\na b 1\na  b 1").unwrap_err();
        assert_eq!(err.line, 5);
        assert!(matches!(err.error, GraphError::MalformedLine(_)));
        let err = parse_graph("directed\na b").unwrap_err();
        assert!(matches!(err.error, GraphError::MalformedLine(_)));
        let err = parse_graph("both\na b 1").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_graph("directed\na\tx b 1").unwrap_err();
        assert!(matches!(err.error, GraphError::MalformedLine(_)));
    }

    #[test]
    fn duplicate_and_reverse_edges() {
        let err = parse_graph("directed\na b 1\na b 1").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(matches!(err.error, GraphError::DuplicateEdge { .. }));

        // directed: reverse orientation is a different edge
        let g = parse_graph("directed\na b 1\nb a 2").unwrap();
        assert_eq!(g.edge_count(), 2);

        let g = parse_graph("undirected\na b 1\nb a 1.00").unwrap();
        assert_eq!(g.edge_count(), 1);

        let err = parse_graph("undirected\na b 1\nb a 2").unwrap_err();
        assert!(matches!(
            err.error,
            GraphError::ConflictingReverseEdge { .. }
        ));

        let err = parse_graph("undirected\na b 1\na b 1").unwrap_err();
        assert!(matches!(err.error, GraphError::DuplicateEdge { .. }));
    }

    #[test]
    fn directed_path_round_trips() {
        let text = "directed\nx1 x2 1\nx2 x3 1\nx1 x3 5";
        let g = parse_graph(text).unwrap();
        assert!(g.is_directed());
        assert_eq!(g.node_count(), 3);
        let out = serialize_graph(&g, Format::EdgeList);
        assert_eq!(out, "directed\nx1 x2 1\nx1 x3 5\nx2 x3 1\n");
        assert_eq!(parse_graph(&out).unwrap(), g);
    }

    #[test]
    fn empty_graph_is_header_only() {
        let g = DistanceGraph::new(false);
        assert_eq!(serialize_graph(&g, Format::EdgeList), "undirected\n");
        assert_eq!(parse_graph("undirected\n").unwrap(), g);
    }

    #[test]
    fn k3_serializes_three_canonical_lines() {
        let mut g = DistanceGraph::new(false);
        g.add_edge("c", "b", 1.0).unwrap();
        g.add_edge("b", "a", 1.0).unwrap();
        g.add_edge("c", "a", 1.0).unwrap();
        assert_eq!(
            serialize_graph(&g, Format::EdgeList),
            "undirected\na b 1\na c 1\nb c 1\n"
        );
        // same structure, different insertion order
        assert_eq!(
            serialize_graph(&k3([1.0; 3]), Format::EdgeList),
            serialize_graph(&g, Format::EdgeList)
        );
        assert_eq!(g, k3([1.0; 3]));
    }

    #[test]
    fn json_and_dot_exports() {
        let g = parse_graph("directed\nb a 2.5\na b 1").unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&serialize_graph(&g, Format::Json)).unwrap();
        assert_eq!(json["directed"], true);
        assert_eq!(json["nodes"], serde_json::json!(["b", "a"]));
        assert_eq!(
            json["edges"][0],
            serde_json::json!({"src": "a", "dst": "b", "w": 1.0})
        );
        assert_eq!(json["edges"][1]["w"], 2.5);
        let dot = serialize_graph(&g, Format::Dot);
        assert!(dot.starts_with("digraph G {"));
        assert!(dot.contains("\"b\" -> \"a\" [label=\"2.5\"];"));
    }

    #[test]
    fn component_examples() {
        assert_eq!(components(&k3([1.0; 3]), ComponentKind::Weak).len(), 1);

        let g = parse_graph("undirected\nc d 1\na b 1").unwrap();
        let comps = components(&g, ComponentKind::Weak);
        assert_eq!(comps.len(), 2);
        assert_eq!(g.label(comps[0].members[0]), "a");
        assert_eq!(
            comps,
            components(&g, ComponentKind::Strong)
                .into_iter()
                .map(|c| Component {
                    kind: ComponentKind::Weak,
                    ..c
                })
                .collect::<Vec<_>>()
        );

        let p = parse_graph("directed\nx1 x2 1\nx2 x3 1").unwrap();
        assert_eq!(components(&p, ComponentKind::Strong).len(), 3);
        assert_eq!(components(&p, ComponentKind::Weak).len(), 1);

        let c = parse_graph("directed\na b 1\nb c 1\nc a 1\nc d 1").unwrap();
        let strong = components(&c, ComponentKind::Strong);
        assert_eq!(strong.len(), 2);
        assert_eq!(strong[0].members, vec![0, 1, 2]);
    }

    #[test]
    fn reachability_follows_arcs() {
        let r = reachability(3, [(0, 1), (1, 2)]);
        assert!(r[0][2] && r[0][1] && !r[0][0]);
        assert!(!r[2][0]);
    }
}
