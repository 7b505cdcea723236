//! Small graph utilities over dense adjacency lists.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Strongly connected components. Returns the component index of every node
/// and the member lists.
pub(crate) fn sccs(adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(adj.len(), 0);
    for _ in 0..adj.len() {
        g.add_node(());
    }
    for (v, succs) in adj.iter().enumerate() {
        for &w in succs {
            g.add_edge(NodeIndex::new(v), NodeIndex::new(w), ());
        }
    }
    let comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let mut id = vec![0; adj.len()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            id[v] = i;
        }
    }
    (id, comps)
}

/// Nodes reachable from `start` (inclusive).
pub(crate) fn reachable(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Nodes from which some node in `targets` is reachable (inclusive).
pub(crate) fn co_reachable(adj: &[Vec<usize>], targets: &[bool]) -> Vec<bool> {
    let mut rev = vec![Vec::new(); adj.len()];
    for (v, succs) in adj.iter().enumerate() {
        for &w in succs {
            rev[w].push(v);
        }
    }
    let mut seen = targets.to_vec();
    let mut stack: Vec<usize> = (0..adj.len()).filter(|&v| targets[v]).collect();
    while let Some(v) = stack.pop() {
        for &w in &rev[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Shortest path `from -> ... -> to` using only nodes accepted by `allowed`.
/// The path lists nodes including both endpoints; `from == to` gives `[from]`.
pub(crate) fn bfs_path(
    adj: &[Vec<usize>],
    from: usize,
    to: usize,
    allowed: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adj[v] {
            if prev[w] == usize::MAX && allowed(w) {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Whether the component has at least one internal edge.
pub(crate) fn is_nontrivial(adj: &[Vec<usize>], comp: &[usize]) -> bool {
    comp.len() > 1 || adj[comp[0]].contains(&comp[0])
}
