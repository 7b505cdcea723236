use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Hba, Label, TupleLetter};
use crate::error::{LprlError, Result};
use crate::graph;
use crate::oracle::LassoWord;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RunStep {
    pub from: usize,
    pub letter: TupleLetter,
    pub to: usize,
}

/// An accepting lasso-shaped run: `stem` leads from the initial state to the
/// first state of `cycle`, and `cycle` returns to it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LassoRun {
    pub stem: Vec<RunStep>,
    pub cycle: Vec<RunStep>,
}

/// Bit mask of the slots in which `label` admits a letter.
fn progress(label: &Label) -> u64 {
    label
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.letters.is_empty())
        .fold(0, |m, (j, _)| m | 1u64 << j)
}

fn full_mask(width: usize) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Components that contain an accepting state and, for every slot, an
/// internal edge that can read a letter in that slot.
fn good_components(b: &Hba, adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>, Vec<bool>) {
    let (id, comps) = graph::sccs(adj);
    let full = full_mask(b.width);
    let good = comps
        .iter()
        .enumerate()
        .map(|(c, members)| {
            if !graph::is_nontrivial(adj, members) || !members.iter().any(|&q| b.accepting[q]) {
                return false;
            }
            let mut mask = 0;
            for &q in members {
                for (l, d) in &b.edges[q] {
                    if id[*d] == c {
                        mask |= progress(l);
                    }
                }
            }
            mask == full
        })
        .collect();
    (id, comps, good)
}

pub(super) fn good_states(b: &Hba, adj: &[Vec<usize>]) -> Vec<bool> {
    let (id, _, good) = good_components(b, adj);
    (0..b.num_states()).map(|q| good[id[q]]).collect()
}

fn concrete(label: &Label) -> TupleLetter {
    label.iter().map(|c| c.letters.first()).collect()
}

fn steps_along(b: &Hba, path: &[usize]) -> Vec<RunStep> {
    path.windows(2)
        .map(|w| {
            let (l, _) = b.edges[w[0]].iter().find(|(_, d)| *d == w[1]).expect("edge on path");
            RunStep { from: w[0], letter: concrete(l), to: w[1] }
        })
        .collect()
}

/// Searches for an accepting lasso run. `None` means the language is empty.
pub fn hba_emptiness(b: &Hba) -> Option<LassoRun> {
    let adj = b.adjacency();
    let (id, _, good) = good_components(b, &adj);

    // Breadth-first order from the initial state fixes the choice of witness.
    let mut order = Vec::new();
    let mut seen = vec![false; b.num_states()];
    let mut queue = VecDeque::from([b.initial]);
    seen[b.initial] = true;
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for &d in &adj[q] {
            if !seen[d] {
                seen[d] = true;
                queue.push_back(d);
            }
        }
    }
    let f = *order.iter().find(|&&q| b.accepting[q] && good[id[q]])?;
    let comp = id[f];
    let inside = |q: usize| id[q] == comp;

    let stem = steps_along(b, &graph::bfs_path(&adj, b.initial, f, |_| true)?);
    let mut cycle: Vec<RunStep> = Vec::new();
    let mut covered = 0u64;
    let mut cur = f;
    for j in 0..b.width {
        if covered >> j & 1 == 1 {
            continue;
        }
        let (u, l, v) = order
            .iter()
            .filter(|&&u| inside(u))
            .flat_map(|&u| b.edges[u].iter().map(move |(l, v)| (u, l, *v)))
            .find(|&(_, l, v)| inside(v) && progress(l) >> j & 1 == 1)
            .expect("good component has progress in every slot");
        let path = steps_along(b, &graph::bfs_path(&adj, cur, u, inside).expect("strongly connected"));
        for s in path.iter() {
            covered |= s.letter.iter().enumerate().filter(|(_, e)| e.is_some()).fold(0, |m, (j, _)| m | 1 << j);
        }
        cycle.extend(path);
        let step = RunStep { from: u, letter: concrete(l), to: v };
        covered |= progress(l);
        cycle.push(step);
        cur = v;
    }
    cycle.extend(steps_along(b, &graph::bfs_path(&adj, cur, f, inside).expect("strongly connected")));
    Some(LassoRun { stem, cycle })
}

/// Traces read by a lasso run, slot by slot with pauses erased.
pub fn witness_traces(run: &LassoRun) -> Result<Vec<LassoWord>> {
    let width = run
        .cycle
        .first()
        .map(|s| s.letter.len())
        .ok_or_else(|| LprlError::Precondition("run has an empty cycle".into()))?;
    (0..width)
        .map(|j| {
            let erase = |steps: &[RunStep]| steps.iter().filter_map(|s| s.letter[j]).collect::<Vec<_>>();
            let cycle = erase(&run.cycle);
            if cycle.is_empty() {
                return Err(LprlError::Precondition(format!("slot {j} never advances in the cycle")));
            }
            LassoWord::new(erase(&run.stem), cycle)
        })
        .collect()
}

/// Membership of a tuple of lassos: explore the product of the automaton
/// with the lasso positions and look for a reachable cycle that visits an
/// accepting state and advances every slot.
pub fn hba_accepts_tuple(b: &Hba, tuple: &[LassoWord]) -> Result<bool> {
    if tuple.len() != b.width {
        return Err(LprlError::Arity { expected: b.width, got: tuple.len() });
    }
    for w in tuple {
        w.check_alphabet(&b.alphabet)?;
    }
    let n = b.width;
    let full = full_mask(n);
    type Node = (usize, Vec<usize>);
    let start: Node = (b.initial, vec![0; n]);
    let mut index: HashMap<Node, usize> = HashMap::from([(start.clone(), 0)]);
    let mut nodes = vec![start];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    let mut masks: Vec<Vec<u64>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let (q, pos) = nodes[v].clone();
        for (label, d) in &b.edges[q] {
            // Per slot: the possible (next position, advanced?) choices.
            let options: Vec<Vec<(usize, bool)>> = (0..n)
                .map(|j| {
                    let mut o = Vec::with_capacity(2);
                    if label[j].pause {
                        o.push((pos[j], false));
                    }
                    if label[j].letters.contains(tuple[j].at(pos[j])) {
                        o.push((tuple[j].succ(pos[j]), true));
                    }
                    o
                })
                .collect();
            if options.iter().any(Vec::is_empty) {
                continue;
            }
            let mut choice = vec![0usize; n];
            loop {
                let mut mask = 0u64;
                let mut next = Vec::with_capacity(n);
                for j in 0..n {
                    let (p, adv) = options[j][choice[j]];
                    next.push(p);
                    if adv {
                        mask |= 1 << j;
                    }
                }
                if mask != 0 {
                    let key = (*d, next);
                    let w = *index.entry(key.clone()).or_insert_with(|| {
                        nodes.push(key);
                        adj.push(Vec::new());
                        masks.push(Vec::new());
                        queue.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    });
                    adj[v].push(w);
                    masks[v].push(mask);
                }
                let mut j = 0;
                while j < n {
                    choice[j] += 1;
                    if choice[j] < options[j].len() {
                        break;
                    }
                    choice[j] = 0;
                    j += 1;
                }
                if j == n {
                    break;
                }
            }
        }
    }
    let (id, comps) = graph::sccs(&adj);
    let mut comp_mask = vec![0u64; comps.len()];
    for (v, succs) in adj.iter().enumerate() {
        for (w, m) in succs.iter().zip(&masks[v]) {
            if id[*w] == id[v] {
                comp_mask[id[v]] |= m;
            }
        }
    }
    Ok(comps.iter().enumerate().any(|(c, members)| {
        comp_mask[c] == full && members.iter().any(|&v| b.accepting[nodes[v].0])
    }))
}
