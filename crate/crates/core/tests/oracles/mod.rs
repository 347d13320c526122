//! Brute-force reference implementations. Deliberately naive: they share no
//! code with the library beyond reading the graph.
#![allow(dead_code)]

use std::collections::BTreeSet;

use distbone::graph::DistanceGraph;

pub type Key = (usize, usize);

/// Directed arc list; undirected edges appear in both directions.
pub fn arcs(g: &DistanceGraph) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::new();
    for e in g.edges() {
        out.push((e.src, e.dst, e.weight.value()));
        if !g.is_directed() {
            out.push((e.dst, e.src, e.weight.value()));
        }
    }
    out
}

fn out_lists(g: &DistanceGraph) -> Vec<Vec<(usize, f64)>> {
    let mut out = vec![Vec::new(); g.node_count()];
    for (u, v, w) in arcs(g) {
        out[u].push((v, w));
    }
    out
}

/// Every simple path from every source, folded with `combine` starting at
/// `identity` and minimised. Diagonal is `identity`; unreachable is infinity.
pub fn path_closure(
    g: &DistanceGraph,
    identity: f64,
    combine: fn(f64, f64) -> f64,
) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let adj = out_lists(g);
    let mut d = vec![vec![f64::INFINITY; n]; n];
    fn walk(
        u: usize,
        acc: f64,
        adj: &[Vec<(usize, f64)>],
        on_path: &mut Vec<bool>,
        row: &mut [f64],
        combine: fn(f64, f64) -> f64,
    ) {
        for &(v, w) in &adj[u] {
            if on_path[v] {
                continue;
            }
            let len = combine(acc, w);
            if len < row[v] {
                row[v] = len;
            }
            on_path[v] = true;
            walk(v, len, adj, on_path, row, combine);
            on_path[v] = false;
        }
    }
    for (s, row) in d.iter_mut().enumerate() {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        walk(s, identity, &adj, &mut on_path, row, combine);
        row[s] = identity;
    }
    d
}

pub fn sum(a: f64, b: f64) -> f64 {
    a + b
}

pub fn max(a: f64, b: f64) -> f64 {
    a.max(b)
}

/// Max over simple paths of the min weight along the path (max-min
/// proximity closure). Diagonal 1, unreachable 0.
pub fn proximity_path_closure(g: &DistanceGraph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let adj = out_lists(g);
    fn walk(
        u: usize,
        acc: f64,
        adj: &[Vec<(usize, f64)>],
        on_path: &mut Vec<bool>,
        row: &mut [f64],
    ) {
        for &(v, p) in &adj[u] {
            if on_path[v] {
                continue;
            }
            let strength = acc.min(p);
            row[v] = row[v].max(strength);
            on_path[v] = true;
            walk(v, strength, adj, on_path, row);
            on_path[v] = false;
        }
    }
    let mut d = vec![vec![0.0; n]; n];
    for (s, row) in d.iter_mut().enumerate() {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        walk(s, 1.0, &adj, &mut on_path, row);
        row[s] = 1.0;
    }
    d
}

/// Edges not bypassed by any simple path whose every edge is strictly
/// lighter (the ultrametric removal rule), by explicit path search.
pub fn removal_rule_backbone(g: &DistanceGraph) -> BTreeSet<Key> {
    let adj = out_lists(g);
    let n = g.node_count();
    let bypassed = |src: usize, dst: usize, w: f64| {
        let mut seen = vec![false; n];
        let mut stack = vec![src];
        seen[src] = true;
        while let Some(u) = stack.pop() {
            if u == dst {
                return true;
            }
            for &(v, x) in &adj[u] {
                if x < w && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    };
    g.edges()
        .filter(|e| !bypassed(e.src, e.dst, e.weight.value()))
        .map(|e| (e.src, e.dst))
        .collect()
}

/// Edges kept by the metric rule: no other path is at most as long, checked
/// against `path_closure` with exact comparison.
pub fn metric_rule_backbone(g: &DistanceGraph) -> BTreeSet<Key> {
    let d = path_closure(g, 0.0, sum);
    g.edges()
        .filter(|e| e.weight.value() <= d[e.src][e.dst])
        .map(|e| (e.src, e.dst))
        .collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

fn component_count(n: usize, edges: &[(usize, usize, f64)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut count = n;
    for &(u, v, _) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

fn sorted_sum(mut w: Vec<f64>) -> f64 {
    w.sort_by(f64::total_cmp);
    w.into_iter().sum()
}

/// Calls `visit` with every `k`-subset of `0..m` as an ascending index list.
pub fn for_each_subset(m: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(
        start: usize,
        m: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, visit);
            cur.pop();
        }
    }
    rec(0, m, k, &mut Vec::new(), &mut visit);
}

/// All minimum spanning forests of an undirected graph: every acyclic
/// subset with `n − c` edges, keeping those of least weight.
pub fn brute_msfs(g: &DistanceGraph) -> Vec<BTreeSet<Key>> {
    let n = g.node_count();
    let edges: Vec<(usize, usize, f64)> = g
        .edges()
        .map(|e| (e.src, e.dst, e.weight.value()))
        .collect();
    let c = component_count(n, &edges);
    let mut best = f64::INFINITY;
    let mut found = Vec::new();
    for_each_subset(edges.len(), n - c, |idx| {
        let chosen: Vec<_> = idx.iter().map(|&i| edges[i]).collect();
        if component_count(n, &chosen) != c {
            return;
        }
        let w = sorted_sum(chosen.iter().map(|e| e.2).collect());
        if w < best {
            best = w;
            found.clear();
        }
        if w == best {
            found.push(chosen.iter().map(|e| (e.0, e.1)).collect());
        }
    });
    found
}

/// Boolean transitive closure (non-reflexive: `i` reaches `i` only through a
/// cycle), by Warshall's algorithm.
pub fn reach(n: usize, arcs: impl IntoIterator<Item = Key>) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (u, v) in arcs {
        r[u][v] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                let via = r[k].clone();
                for (x, y) in r[i].iter_mut().zip(via) {
                    *x |= y;
                }
            }
        }
    }
    r
}

/// Every minimum arborescence at `root` spanning the nodes reachable from
/// it, over every edge subset of the right size.
pub fn brute_min_arborescences(g: &DistanceGraph, root: usize) -> (f64, Vec<BTreeSet<Key>>) {
    let n = g.node_count();
    let edges: Vec<(usize, usize, f64)> = g
        .edges()
        .map(|e| (e.src, e.dst, e.weight.value()))
        .collect();
    let full = reach(n, edges.iter().map(|e| (e.0, e.1)));
    let spanned: Vec<usize> = (0..n).filter(|&v| v == root || full[root][v]).collect();
    let mut best = f64::INFINITY;
    let mut found = Vec::new();
    for_each_subset(edges.len(), spanned.len() - 1, |idx| {
        let chosen: Vec<_> = idx.iter().map(|&i| edges[i]).collect();
        let mut indeg = vec![0; n];
        for e in &chosen {
            indeg[e.1] += 1;
        }
        if indeg[root] != 0 || spanned.iter().any(|&v| v != root && indeg[v] != 1) {
            return;
        }
        let r = reach(n, chosen.iter().map(|e| (e.0, e.1)));
        if !spanned.iter().all(|&v| v == root || r[root][v]) {
            return;
        }
        let w = sorted_sum(chosen.iter().map(|e| e.2).collect());
        if w < best {
            best = w;
            found.clear();
        }
        if w == best {
            found.push(chosen.iter().map(|e| (e.0, e.1)).collect());
        }
    });
    (best, found)
}

pub fn brute_min_arborescence_weight(g: &DistanceGraph, root: usize) -> f64 {
    brute_min_arborescences(g, root).0
}

/// Every minimum-weight reachability-preserving edge subset.
pub fn brute_megs(g: &DistanceGraph) -> Vec<BTreeSet<Key>> {
    let n = g.node_count();
    let edges: Vec<(usize, usize, f64)> = g
        .edges()
        .map(|e| (e.src, e.dst, e.weight.value()))
        .collect();
    let target = reach(n, edges.iter().map(|e| (e.0, e.1)));
    let mut best = f64::INFINITY;
    let mut found = Vec::new();
    for mask in 0u32..(1 << edges.len()) {
        let chosen: Vec<_> = (0..edges.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| edges[i])
            .collect();
        if reach(n, chosen.iter().map(|e| (e.0, e.1))) != target {
            continue;
        }
        let w = sorted_sum(chosen.iter().map(|e| e.2).collect());
        if w < best {
            best = w;
            found.clear();
        }
        if w == best {
            found.push(chosen.iter().map(|e| (e.0, e.1)).collect());
        }
    }
    found
}
