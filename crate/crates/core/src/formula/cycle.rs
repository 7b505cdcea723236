use std::fmt;

use serde::{Deserialize, Serialize};

use super::normal::NormalSentence;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CycleFreeReport {
    pub ok: bool,
    /// `(clause index, description)`, clause indices 0-based.
    pub violations: Vec<(usize, String)>,
}

impl fmt::Display for CycleFreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "cycle-free");
        }
        for (i, (clause, msg)) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "clause {clause}: {msg}")?;
        }
        Ok(())
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Path between `from` and `to` in an undirected forest given as an
/// adjacency list.
fn forest_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::from([from]);
    prev[from] = from;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &adj[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// Checks every clause's constraint graph: Eq and Neq atoms are undirected
/// edges between variables; a clause passes if no pair is linked twice and
/// the graph is a forest.
pub fn check_cycle_free(s: &NormalSentence) -> CycleFreeReport {
    let names = s.prefix.names();
    let n = names.len();
    let mut violations = Vec::new();
    for (j, clause) in s.matrix.iter().enumerate() {
        let mut parent: Vec<usize> = (0..n).collect();
        let mut adj = vec![Vec::new(); n];
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for atom in clause {
            let Some((a, b)) = atom.constraint_edge() else { continue };
            if seen.contains(&(a, b)) {
                let msg = format!("variables {} and {} linked by 2 constraints", names[a], names[b]);
                if !violations.contains(&(j, msg.clone())) {
                    violations.push((j, msg));
                }
                continue;
            }
            seen.push((a, b));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                let mut cycle: Vec<&str> =
                    forest_path(&adj, a, b).into_iter().map(|v| names[v].as_str()).collect();
                cycle.push(&names[a]);
                violations.push((j, format!("cycle {}", cycle.join(" -> "))));
            } else {
                parent[ra] = rb;
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    CycleFreeReport { ok: violations.is_empty(), violations }
}
