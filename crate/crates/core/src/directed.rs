//! Directed analogs of minimum spanning trees and how they relate to the
//! ultrametric backbone.
//!
//! Minimum spanning arborescences are computed with Chu-Liu/Edmonds and, for
//! small graphs, enumerated exhaustively. Minimum equivalent graphs are
//! found by branch-and-bound over edge subsets. [`find_counterexample`]
//! searches random digraphs for cases where the union of either structure
//! both misses a backbone edge and contains a non-backbone edge.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::DistanceStructure;
use crate::backbone::extract_backbone;
use crate::closure::ClosureError;
use crate::graph::{components, sum_ascending, ComponentKind, DistanceGraph};
use crate::random::candidate_rng;
use crate::spanning::{SpanningKind, SpanningSet};

/// Default bound on candidate parent assignments per root.
pub const DEFAULT_ARBORESCENCE_LIMIT: u128 = 1_000_000;
/// Default bound on edge count for minimum equivalent graph search.
pub const DEFAULT_MEG_EDGE_LIMIT: usize = 20;

const SEARCH_BATCH: u64 = 256;
const WEIGHT_SLACK: f64 = 1e-9;

type Key = (usize, usize);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DirectedError {
    #[error("expected a directed graph")]
    UndirectedInput,
    #[error("no such node `{0}`")]
    NoSuchNode(String),
    #[error("search space of {size} exceeds the limit of {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("no witness among {} candidates ({} strongly connected, {} with a non-trivial backbone)", .0.candidates, .0.strongly_connected, .0.nontrivial_backbone)]
    BudgetExhausted(SearchStats),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

/// Rooted arborescence with its edges, spanning the nodes reachable from
/// the root.
#[derive(Debug, Clone, PartialEq)]
pub struct Arborescence {
    pub root: usize,
    pub edges: BTreeSet<Key>,
    pub total_weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalentGraph {
    pub edges: BTreeSet<Key>,
    pub total_weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnionKind {
    /// Minimum equivalent graphs.
    Meg,
    /// Minimum spanning arborescences at every root.
    Msa,
}

impl UnionKind {
    pub fn name(self) -> &'static str {
        match self {
            UnionKind::Meg => "meg",
            UnionKind::Msa => "msa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub candidates: u64,
    pub strongly_connected: u64,
    pub nontrivial_backbone: u64,
}

/// Set differences between the ultrametric backbone and a union of MST
/// analogs, with one witness on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleReport {
    pub graph: DistanceGraph,
    pub kind: UnionKind,
    pub backbone: BTreeSet<Key>,
    pub union: BTreeSet<Key>,
    /// Backbone edge in no member of the union.
    pub backbone_only: Option<Key>,
    /// Union edge that is not in the backbone.
    pub union_only: Option<Key>,
    /// Both witnesses re-derived without the closure or the enumeration
    /// used to build the sets.
    pub verified: bool,
    pub stats: SearchStats,
}

impl CounterexampleReport {
    pub fn exhibits_pattern(&self) -> bool {
        self.backbone_only.is_some() && self.union_only.is_some() && self.verified
    }
}

fn require_directed(g: &DistanceGraph) -> Result<(), DirectedError> {
    if g.is_directed() {
        Ok(())
    } else {
        Err(DirectedError::UndirectedInput)
    }
}

fn root_index(g: &DistanceGraph, root: &str) -> Result<usize, DirectedError> {
    g.index_of(root)
        .ok_or_else(|| DirectedError::NoSuchNode(root.to_string()))
}

fn reachable_from(adj: &[Vec<(usize, f64)>], root: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Arcs usable by an arborescence at `root`: both ends reachable, target not
/// the root. Returned in canonical edge order.
fn rooted_arcs(g: &DistanceGraph, root: usize) -> (Vec<bool>, Vec<(usize, usize, f64)>) {
    let reach = reachable_from(&g.adjacency(), root);
    let mut arcs: Vec<(usize, usize, f64)> = g
        .edges()
        .filter(|e| reach[e.src] && reach[e.dst] && e.dst != root)
        .map(|e| (e.src, e.dst, e.weight.value()))
        .collect();
    arcs.sort_by(|a, b| g.canonical_cmp((a.0, a.1), (b.0, b.1)));
    (reach, arcs)
}

#[derive(Clone, Copy)]
struct Arc {
    from: usize,
    to: usize,
    w: f64,
}

/// Chu-Liu/Edmonds on nodes `0..n` where every non-root node has an incoming
/// arc. Returns indices into `arcs`. Ties go to the earlier arc.
fn edmonds(n: usize, root: usize, arcs: &[Arc]) -> Vec<usize> {
    let mut best: Vec<Option<usize>> = vec![None; n];
    for (k, a) in arcs.iter().enumerate() {
        if a.to == root || a.from == a.to {
            continue;
        }
        match best[a.to] {
            Some(b) if arcs[b].w <= a.w => {}
            _ => best[a.to] = Some(k),
        }
    }
    let parent = |v: usize| arcs[best[v].expect("every non-root node has an incoming arc")].from;

    let mut comp = vec![usize::MAX; n];
    let mut in_cycle = vec![false; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut mark = vec![usize::MAX; n];
    for start in 0..n {
        let mut v = start;
        while v != root && mark[v] == usize::MAX {
            mark[v] = start;
            v = parent(v);
        }
        if v != root && mark[v] == start && !in_cycle[v] {
            let mut cycle = vec![v];
            let mut u = parent(v);
            while u != v {
                cycle.push(u);
                u = parent(u);
            }
            for &u in &cycle {
                in_cycle[u] = true;
                comp[u] = cycles.len();
            }
            cycles.push(cycle);
        }
    }
    if cycles.is_empty() {
        return (0..n)
            .filter(|&v| v != root)
            .map(|v| best[v].unwrap())
            .collect();
    }

    let mut count = cycles.len();
    for c in comp.iter_mut().filter(|c| **c == usize::MAX) {
        *c = count;
        count += 1;
    }
    let mut contracted = Vec::new();
    let mut origin = Vec::new();
    for (k, a) in arcs.iter().enumerate() {
        let (cu, cv) = (comp[a.from], comp[a.to]);
        if cu == cv || a.to == root {
            continue;
        }
        let w = if in_cycle[a.to] {
            a.w - arcs[best[a.to].unwrap()].w
        } else {
            a.w
        };
        contracted.push(Arc {
            from: cu,
            to: cv,
            w,
        });
        origin.push(k);
    }

    let chosen: Vec<usize> = edmonds(count, comp[root], &contracted)
        .into_iter()
        .map(|x| origin[x])
        .collect();
    let mut entered = vec![false; n];
    for &k in &chosen {
        entered[arcs[k].to] = true;
    }
    let mut out = chosen;
    for cycle in &cycles {
        for &v in cycle {
            if !entered[v] {
                out.push(best[v].unwrap());
            }
        }
    }
    out
}

fn min_arborescence_at(g: &DistanceGraph, root: usize) -> Arborescence {
    let (reach, arcs) = rooted_arcs(g, root);
    let local: Vec<usize> = {
        let mut next = 0;
        reach
            .iter()
            .map(|&r| {
                let id = next;
                next += usize::from(r);
                if r {
                    id
                } else {
                    usize::MAX
                }
            })
            .collect()
    };
    let n_local = reach.iter().filter(|&&r| r).count();
    let local_arcs: Vec<Arc> = arcs
        .iter()
        .map(|&(u, v, w)| Arc {
            from: local[u],
            to: local[v],
            w,
        })
        .collect();
    let edges: BTreeSet<Key> = edmonds(n_local, local[root], &local_arcs)
        .into_iter()
        .map(|k| (arcs[k].0, arcs[k].1))
        .collect();
    let total_weight = sum_ascending(edges.iter().map(|&(u, v)| g.distance(u, v)));
    Arborescence {
        root,
        edges,
        total_weight,
    }
}

/// Minimum-weight arborescence rooted at `root` over the nodes reachable
/// from it. Nodes the root cannot reach are left out.
pub fn min_arborescence(g: &DistanceGraph, root: &str) -> Result<Arborescence, DirectedError> {
    require_directed(g)?;
    Ok(min_arborescence_at(g, root_index(g, root)?))
}

fn enumerate_at(
    g: &DistanceGraph,
    root: usize,
    limit: u128,
) -> Result<Vec<Arborescence>, DirectedError> {
    let (reach, arcs) = rooted_arcs(g, root);
    let targets: Vec<usize> = (0..g.node_count())
        .filter(|&v| reach[v] && v != root)
        .collect();
    let options: Vec<Vec<(usize, usize, f64)>> = targets
        .iter()
        .map(|&v| arcs.iter().copied().filter(|a| a.1 == v).collect())
        .collect();
    let size = options
        .iter()
        .fold(1u128, |acc, o| acc.saturating_mul(o.len() as u128));
    if size > limit {
        return Err(DirectedError::TooLarge { size, limit });
    }

    let n = g.node_count();
    let mut pick = vec![0usize; targets.len()];
    let mut best = f64::INFINITY;
    let mut found: Vec<BTreeSet<Key>> = Vec::new();
    let mut parent = vec![usize::MAX; n];
    loop {
        for (t, &v) in targets.iter().enumerate() {
            parent[v] = options[t][pick[t]].0;
        }
        let acyclic = targets.iter().all(|&v| {
            let mut u = v;
            for _ in 0..=targets.len() {
                if u == root {
                    return true;
                }
                u = parent[u];
            }
            false
        });
        if acyclic {
            let w = sum_ascending((0..targets.len()).map(|t| options[t][pick[t]].2));
            if w < best {
                best = w;
                found.clear();
            }
            if w == best {
                found.push(
                    (0..targets.len())
                        .map(|t| (options[t][pick[t]].0, targets[t]))
                        .collect(),
                );
            }
        }
        // odometer
        let mut t = 0;
        while t < pick.len() {
            pick[t] += 1;
            if pick[t] < options[t].len() {
                break;
            }
            pick[t] = 0;
            t += 1;
        }
        if t == pick.len() {
            break;
        }
    }
    Ok(found
        .into_iter()
        .map(|edges| Arborescence {
            root,
            edges,
            total_weight: best,
        })
        .collect())
}

/// All minimum arborescences at `root`, by exhaustive search over parent
/// assignments (bounded by `limit`).
pub fn enumerate_min_arborescences(
    g: &DistanceGraph,
    root: &str,
    limit: u128,
) -> Result<Vec<Arborescence>, DirectedError> {
    require_directed(g)?;
    enumerate_at(g, root_index(g, root)?, limit)
}

/// Union over every root of every minimum arborescence at that root.
pub fn msa_union(g: &DistanceGraph, limit: u128) -> Result<SpanningSet, DirectedError> {
    require_directed(g)?;
    let mut edges = BTreeSet::new();
    for root in 0..g.node_count() {
        for t in enumerate_at(g, root, limit)? {
            edges.extend(t.edges);
        }
    }
    Ok(union_set(g, edges))
}

fn union_set(g: &DistanceGraph, edges: BTreeSet<Key>) -> SpanningSet {
    SpanningSet {
        total_weight: sum_ascending(edges.iter().map(|&(u, v)| g.distance(u, v))),
        edges,
        kind: SpanningKind::Union,
        component_count: components(g, ComponentKind::Weak).len(),
    }
}

/// Reachability bitsets: bit `j` of row `i` is set when a non-empty path
/// leads from `i` to `j`. Requires fewer than 64 nodes.
fn reach_bits(n: usize, arcs: impl Iterator<Item = Key>) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for (u, v) in arcs {
        out[u] |= 1 << v;
    }
    let mut reach = out.clone();
    loop {
        let mut changed = false;
        for i in 0..n {
            let mut acc = reach[i];
            let mut bits = reach[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                acc |= reach[j];
            }
            if acc != reach[i] {
                reach[i] = acc;
                changed = true;
            }
        }
        if !changed {
            return reach;
        }
    }
}

fn meg_guard(g: &DistanceGraph, limit: usize) -> Result<(), DirectedError> {
    require_directed(g)?;
    if g.edge_count() > limit || g.node_count() >= 64 {
        return Err(DirectedError::TooLarge {
            size: g.edge_count() as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// All minimum-weight edge subsets with the same reachability relation as
/// `g`. Branch-and-bound over edges, heaviest first, trying exclusion before
/// inclusion.
pub fn min_equivalent_graphs(
    g: &DistanceGraph,
    limit: usize,
) -> Result<Vec<EquivalentGraph>, DirectedError> {
    meg_guard(g, limit)?;
    let n = g.node_count();
    let mut edges: Vec<(usize, usize, f64)> = g
        .edges()
        .map(|e| (e.src, e.dst, e.weight.value()))
        .collect();
    edges.sort_by(|a, b| {
        b.2.total_cmp(&a.2)
            .then_with(|| g.canonical_cmp((a.0, a.1), (b.0, b.1)))
    });
    let target = reach_bits(n, edges.iter().map(|e| (e.0, e.1)));

    struct Search<'a> {
        n: usize,
        edges: &'a [(usize, usize, f64)],
        target: &'a [u64],
        include: Vec<bool>,
        best: f64,
        found: Vec<Vec<bool>>,
    }

    impl Search<'_> {
        fn feasible(&self, decided: usize) -> bool {
            let arcs = self
                .edges
                .iter()
                .enumerate()
                .filter(|&(k, _)| k >= decided || self.include[k])
                .map(|(_, e)| (e.0, e.1));
            reach_bits(self.n, arcs) == self.target
        }

        fn run(&mut self, k: usize, partial: f64) {
            if partial > self.best + WEIGHT_SLACK * self.best.max(1.0) {
                return;
            }
            if k == self.edges.len() {
                let w = sum_ascending(
                    self.edges
                        .iter()
                        .zip(&self.include)
                        .filter(|(_, &inc)| inc)
                        .map(|(e, _)| e.2),
                );
                if w < self.best {
                    self.best = w;
                    self.found.clear();
                }
                if w == self.best {
                    self.found.push(self.include.clone());
                }
                return;
            }
            self.include[k] = false;
            if self.feasible(k + 1) {
                self.run(k + 1, partial);
            }
            self.include[k] = true;
            self.run(k + 1, partial + self.edges[k].2);
            self.include[k] = false;
        }
    }

    let mut search = Search {
        n,
        edges: &edges,
        target: &target,
        include: vec![false; edges.len()],
        best: f64::INFINITY,
        found: Vec::new(),
    };
    search.run(0, 0.0);
    let best = search.best;
    Ok(search
        .found
        .into_iter()
        .map(|mask| EquivalentGraph {
            edges: edges
                .iter()
                .zip(&mask)
                .filter(|(_, &m)| m)
                .map(|(e, _)| (e.0, e.1))
                .collect(),
            total_weight: best,
        })
        .collect())
}

/// Union of all minimum equivalent graphs.
pub fn meg_union(g: &DistanceGraph, limit: usize) -> Result<SpanningSet, DirectedError> {
    let edges = min_equivalent_graphs(g, limit)?
        .into_iter()
        .flat_map(|m| m.edges)
        .collect();
    Ok(union_set(g, edges))
}

/// Ultrametric backbone by the removal rule: an edge `i → j` of weight `w`
/// is dropped iff `j` can be reached from `i` using only edges lighter than
/// `w`. Independent of the closure machinery.
pub fn backbone_by_removal_rule(g: &DistanceGraph) -> BTreeSet<Key> {
    let adj = g.adjacency();
    g.edges()
        .filter(|e| {
            let w = e.weight.value();
            let mut seen = vec![false; g.node_count()];
            let mut stack = vec![e.src];
            seen[e.src] = true;
            while let Some(u) = stack.pop() {
                for &(v, x) in &adj[u] {
                    if x < w && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            !seen[e.dst]
        })
        .map(|e| (e.src, e.dst))
        .collect()
}

fn ultrametric_backbone(g: &DistanceGraph) -> Result<BTreeSet<Key>, DirectedError> {
    Ok(extract_backbone(g, &DistanceStructure::ultrametric())?.kept())
}

fn same_weight(a: f64, b: f64) -> bool {
    (a - b).abs() <= WEIGHT_SLACK * a.abs().max(b.abs()).max(1.0)
}

/// Whether some minimum arborescence (over any root) uses `edge`, decided by
/// rerunning Chu-Liu/Edmonds with the edge forced in.
fn edge_in_some_msa(g: &DistanceGraph, (u, v): Key) -> bool {
    (0..g.node_count()).any(|root| {
        if v == root {
            return false;
        }
        let reach = reachable_from(&g.adjacency(), root);
        if !reach[u] || !reach[v] {
            return false;
        }
        let optimum = min_arborescence_at(g, root).total_weight;
        let forced = g.subgraph(
            g.edges()
                .filter(|e| e.dst != v || e.src == u)
                .map(|e| (e.src, e.dst)),
        );
        if reachable_from(&forced.adjacency(), root) != reach {
            return false;
        }
        same_weight(min_arborescence_at(&forced, root).total_weight, optimum)
    })
}

/// Smallest weight of a reachability-preserving subset that contains
/// `forced` (if given), by plain include/exclude recursion with only a
/// weight bound.
fn constrained_meg_weight(g: &DistanceGraph, forced: Option<Key>) -> f64 {
    let n = g.node_count();
    let edges: Vec<(usize, usize, f64)> = g
        .edges()
        .map(|e| (e.src, e.dst, e.weight.value()))
        .collect();
    let target = reach_bits(n, edges.iter().map(|e| (e.0, e.1)));

    fn go(
        k: usize,
        chosen: &mut Vec<usize>,
        edges: &[(usize, usize, f64)],
        forced: Option<Key>,
        target: &[u64],
        best: &mut f64,
    ) {
        let partial = sum_ascending(chosen.iter().map(|&i| edges[i].2));
        if partial > *best + WEIGHT_SLACK * best.max(1.0) {
            return;
        }
        if k == edges.len() {
            if reach_bits(
                target.len(),
                chosen.iter().map(|&i| (edges[i].0, edges[i].1)),
            ) == target
            {
                *best = best.min(partial);
            }
            return;
        }
        chosen.push(k);
        go(k + 1, chosen, edges, forced, target, best);
        chosen.pop();
        if forced != Some((edges[k].0, edges[k].1)) {
            go(k + 1, chosen, edges, forced, target, best);
        }
    }

    let mut best = f64::INFINITY;
    go(0, &mut Vec::new(), &edges, forced, &target, &mut best);
    best
}

fn edge_in_some_meg(g: &DistanceGraph, edge: Key, optimum: f64) -> bool {
    same_weight(constrained_meg_weight(g, Some(edge)), optimum)
}

fn verify_witnesses(
    g: &DistanceGraph,
    kind: UnionKind,
    backbone_only: Key,
    union_only: Key,
) -> bool {
    let rule = backbone_by_removal_rule(g);
    if !rule.contains(&backbone_only) || rule.contains(&union_only) {
        return false;
    }
    match kind {
        UnionKind::Msa => !edge_in_some_msa(g, backbone_only) && edge_in_some_msa(g, union_only),
        UnionKind::Meg => {
            let optimum = constrained_meg_weight(g, None);
            !edge_in_some_meg(g, backbone_only, optimum) && edge_in_some_meg(g, union_only, optimum)
        }
    }
}

fn union_of(g: &DistanceGraph, kind: UnionKind) -> Result<BTreeSet<Key>, DirectedError> {
    Ok(match kind {
        UnionKind::Meg => meg_union(g, DEFAULT_MEG_EDGE_LIMIT)?.edges,
        UnionKind::Msa => msa_union(g, DEFAULT_ARBORESCENCE_LIMIT)?.edges,
    })
}

fn first_canonical(g: &DistanceGraph, set: impl Iterator<Item = Key>) -> Option<Key> {
    set.min_by(|&a, &b| g.canonical_cmp(a, b))
}

/// Compares the ultrametric backbone of `g` with the union of its minimum
/// equivalent graphs or minimum arborescences.
pub fn verify_remark(
    g: &DistanceGraph,
    kind: UnionKind,
) -> Result<CounterexampleReport, DirectedError> {
    require_directed(g)?;
    let backbone = ultrametric_backbone(g)?;
    let union = union_of(g, kind)?;
    let backbone_only = first_canonical(g, backbone.difference(&union).copied());
    let union_only = first_canonical(g, union.difference(&backbone).copied());
    let verified = match (backbone_only, union_only) {
        (Some(a), Some(b)) => verify_witnesses(g, kind, a, b),
        _ => false,
    };
    Ok(CounterexampleReport {
        graph: g.clone(),
        kind,
        backbone,
        union,
        backbone_only,
        union_only,
        verified,
        stats: SearchStats::default(),
    })
}

/// Candidate `index` of the search stream for `seed`: 3 to 6 nodes, random
/// arcs with integer weights 1..=6.
pub fn search_candidate(seed: u64, index: u64) -> DistanceGraph {
    let mut rng = candidate_rng(seed, index);
    let n = rng.gen_range(3..=6usize);
    let density = rng.gen_range(0.3..0.8);
    let labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut g = DistanceGraph::with_nodes(true, labels.iter().cloned()).expect("valid labels");
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                let w = f64::from(rng.gen_range(1..=6u32));
                g.add_edge(&labels[u], &labels[v], w).expect("fresh edge");
            }
        }
    }
    g
}

enum Outcome {
    Skipped,
    Connected,
    Nontrivial,
    Witness(Box<CounterexampleReport>),
}

fn evaluate(g: DistanceGraph, kind: UnionKind) -> Outcome {
    if g.edge_count() > DEFAULT_MEG_EDGE_LIMIT || components(&g, ComponentKind::Strong).len() != 1 {
        return Outcome::Skipped;
    }
    let Ok(backbone) = ultrametric_backbone(&g) else {
        return Outcome::Skipped;
    };
    if backbone.len() == g.edge_count() {
        return Outcome::Connected;
    }
    match verify_remark(&g, kind) {
        Ok(report) if report.exhibits_pattern() => Outcome::Witness(Box::new(report)),
        _ => Outcome::Nontrivial,
    }
}

/// Searches seeded random strongly connected digraphs for one whose
/// ultrametric backbone and union of `kind` structures each contain an edge
/// the other lacks. The result depends only on `seed`, not on the number of
/// worker threads: candidates are evaluated in batches and the lowest index
/// witness wins.
pub fn find_counterexample(
    kind: UnionKind,
    budget: u64,
    seed: u64,
) -> Result<CounterexampleReport, DirectedError> {
    let mut stats = SearchStats::default();
    let mut start = 0;
    while start < budget {
        let end = (start + SEARCH_BATCH).min(budget);
        let outcomes: Vec<Outcome> = (start..end)
            .into_par_iter()
            .map(|i| evaluate(search_candidate(seed, i), kind))
            .collect();
        for outcome in outcomes {
            stats.candidates += 1;
            match outcome {
                Outcome::Skipped => {}
                Outcome::Connected => stats.strongly_connected += 1,
                Outcome::Nontrivial => {
                    stats.strongly_connected += 1;
                    stats.nontrivial_backbone += 1;
                }
                Outcome::Witness(mut report) => {
                    stats.strongly_connected += 1;
                    stats.nontrivial_backbone += 1;
                    report.stats = stats;
                    return Ok(*report);
                }
            }
        }
        start = end;
    }
    Err(DirectedError::BudgetExhausted(stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn names(g: &DistanceGraph, set: &BTreeSet<Key>) -> Vec<String> {
        let mut v: Vec<String> = set
            .iter()
            .map(|&(u, w)| format!("{}{}", g.label(u), g.label(w)))
            .collect();
        v.sort();
        v
    }

    fn triangle() -> DistanceGraph {
        parse_graph("directed\nx1 x2 1\nx2 x3 1\nx1 x3 5").unwrap()
    }

    #[test]
    fn arborescence_examples() {
        let g = triangle();
        let t = min_arborescence(&g, "x1").unwrap();
        assert_eq!(names(&g, &t.edges), ["x1x2", "x2x3"]);
        assert_eq!(t.total_weight, 2.0);

        let two = parse_graph("directed\na b 1\nb a 1").unwrap();
        let t = min_arborescence(&two, "a").unwrap();
        assert_eq!(names(&two, &t.edges), ["ab"]);

        let t = min_arborescence(&g, "x3").unwrap();
        assert!(t.edges.is_empty());
        assert_eq!(t.total_weight, 0.0);

        assert!(matches!(
            min_arborescence(&g, "nope"),
            Err(DirectedError::NoSuchNode(_))
        ));
        assert_eq!(
            min_arborescence(&parse_graph("undirected\na b 1").unwrap(), "a"),
            Err(DirectedError::UndirectedInput)
        );
    }

    #[test]
    fn contraction_handles_cycles() {
        // cheap cycle b<->c must be broken where the root enters it
        let g = parse_graph("directed\nr b 10\nr c 4\nb c 1\nc b 1\nb d 2\nc d 8").unwrap();
        let t = min_arborescence(&g, "r").unwrap();
        assert_eq!(names(&g, &t.edges), ["bd", "cb", "rc"]);
        assert_eq!(t.total_weight, 7.0);
        let all = enumerate_min_arborescences(&g, "r", DEFAULT_ARBORESCENCE_LIMIT).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].edges, t.edges);
    }

    #[test]
    fn enumeration_examples() {
        let dag = parse_graph("directed\na b 1\na c 2\nb c 3\nb d 4\nc d 5").unwrap();
        let all = enumerate_min_arborescences(&dag, "a", DEFAULT_ARBORESCENCE_LIMIT).unwrap();
        assert_eq!(all.len(), 1);

        let k2 = parse_graph("directed\na b 1\nb a 1").unwrap();
        for root in ["a", "b"] {
            assert_eq!(enumerate_min_arborescences(&k2, root, 10).unwrap().len(), 1);
        }

        let k3 = parse_graph("directed\na b 1\nb a 1\nb c 1\nc b 1\na c 1\nc a 1").unwrap();
        assert_eq!(enumerate_min_arborescences(&k3, "a", 10).unwrap().len(), 3);
        assert!(matches!(
            enumerate_min_arborescences(&k3, "a", 3),
            Err(DirectedError::TooLarge { size: 4, limit: 3 })
        ));
    }

    #[test]
    fn meg_examples() {
        let path = parse_graph("directed\nx1 x2 1\nx2 x3 1").unwrap();
        let megs = min_equivalent_graphs(&path, DEFAULT_MEG_EDGE_LIMIT).unwrap();
        assert_eq!(megs.len(), 1);
        assert_eq!(megs[0].edges, path.edge_keys());

        let g = triangle();
        let megs = min_equivalent_graphs(&g, DEFAULT_MEG_EDGE_LIMIT).unwrap();
        assert_eq!(megs.len(), 1);
        assert_eq!(names(&g, &megs[0].edges), ["x1x2", "x2x3"]);
        assert_eq!(megs[0].total_weight, 2.0);

        let two = parse_graph("directed\na b 1\nb a 1").unwrap();
        let megs = min_equivalent_graphs(&two, DEFAULT_MEG_EDGE_LIMIT).unwrap();
        assert_eq!(megs.len(), 1);
        assert_eq!(megs[0].edges.len(), 2);

        assert!(matches!(
            min_equivalent_graphs(&g, 2),
            Err(DirectedError::TooLarge { .. })
        ));
    }

    #[test]
    fn meg_search_matches_plain_recursion() {
        for seed in 0..30 {
            let g = search_candidate(99, seed);
            if g.edge_count() > 14 {
                continue;
            }
            let megs = min_equivalent_graphs(&g, DEFAULT_MEG_EDGE_LIMIT).unwrap();
            let best = constrained_meg_weight(&g, None);
            assert!(same_weight(megs[0].total_weight, best), "seed {seed}");
            let target = reach_bits(g.node_count(), g.edge_keys().into_iter());
            for m in &megs {
                assert_eq!(reach_bits(g.node_count(), m.edges.iter().copied()), target);
            }
        }
    }

    #[test]
    fn msa_union_examples() {
        let path = parse_graph("directed\na b 1\nb c 2").unwrap();
        assert_eq!(msa_union(&path, 100).unwrap().edges, path.edge_keys());

        let cyc = parse_graph("directed\na b 1\nb c 1\nc a 1").unwrap();
        assert_eq!(msa_union(&cyc, 100).unwrap().edges.len(), 3);
    }

    #[test]
    fn removal_rule_matches_closure_backbone() {
        for i in 0..50 {
            let g = search_candidate(5, i);
            assert_eq!(
                backbone_by_removal_rule(&g),
                ultrametric_backbone(&g).unwrap(),
                "candidate {i}"
            );
        }
    }

    #[test]
    fn path_exhibits_no_divergence() {
        let path = parse_graph("directed\nx1 x2 1\nx2 x3 1").unwrap();
        for kind in [UnionKind::Meg, UnionKind::Msa] {
            let r = verify_remark(&path, kind).unwrap();
            assert!(r.backbone_only.is_none() && r.union_only.is_none());
            assert!(!r.exhibits_pattern());
            assert_eq!(r.backbone, path.edge_keys());
        }
    }

    #[test]
    fn zero_budget_is_exhausted() {
        assert_eq!(
            find_counterexample(UnionKind::Msa, 0, 1),
            Err(DirectedError::BudgetExhausted(SearchStats::default()))
        );
    }
}
