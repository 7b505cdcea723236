//! Büchi game on micro states.
//!
//! One round from a micro state walks the slots in prefix order. At an
//! existential slot the chooser picks a pause or a successor; at a universal
//! slot it picks pause or move, and the opponent then picks the successor.
//! After the last slot the chooser picks an hBA transition. The chooser wins
//! a play that visits accepting micro states infinitely often.

use std::collections::{HashMap, VecDeque};

use super::micro::McInstance;
use crate::error::{LprlError, Result};
use crate::formula::Quantifier;
use crate::hba::TupleLetter;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum NodeKey {
    Micro(u32),
    /// About to decide slot `slot` of a round from `micro`.
    Slot { micro: u32, slot: usize, targets: Vec<usize>, letter: TupleLetter },
    /// Universal slot `slot` moves; the opponent picks the successor.
    Branch { micro: u32, slot: usize, targets: Vec<usize>, letter: TupleLetter },
}

pub(crate) struct Arena {
    pub keys: Vec<NodeKey>,
    pub opponent: Vec<bool>,
    pub succ: Vec<Vec<u32>>,
    pub accepting: Vec<bool>,
    index: HashMap<NodeKey, u32>,
}

impl Arena {
    pub fn node(&self, key: &NodeKey) -> Option<u32> {
        self.index.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }
}

fn add(arena: &mut Arena, queue: &mut VecDeque<u32>, key: NodeKey, opponent: bool, accepting: bool) -> u32 {
    if let Some(&id) = arena.index.get(&key) {
        return id;
    }
    let id = arena.keys.len() as u32;
    arena.index.insert(key.clone(), id);
    arena.keys.push(key);
    arena.opponent.push(opponent);
    arena.succ.push(Vec::new());
    arena.accepting.push(accepting);
    queue.push_back(id);
    id
}

/// Builds the arena reachable from `start`.
pub(crate) fn build_arena(inst: &mut McInstance, start: u32, cap: usize) -> Result<Arena> {
    let n = inst.width();
    let mut arena = Arena { keys: Vec::new(), opponent: Vec::new(), succ: Vec::new(), accepting: Vec::new(), index: HashMap::new() };
    let mut queue = VecDeque::new();
    add(&mut arena, &mut queue, NodeKey::Micro(start), false, inst.is_accepting(start));
    while let Some(v) = queue.pop_front() {
        if arena.len() > cap {
            return Err(LprlError::CapExceeded(cap));
        }
        let key = arena.keys[v as usize].clone();
        let mut out = Vec::new();
        match key {
            NodeKey::Micro(m) => {
                let k = NodeKey::Slot { micro: m, slot: 0, targets: Vec::new(), letter: Vec::new() };
                out.push(add(&mut arena, &mut queue, k, false, false));
            }
            NodeKey::Slot { micro, slot, targets, letter } if slot == n => {
                if letter.iter().any(Option::is_some) {
                    for to in inst.close_step(micro, &targets, &letter) {
                        let acc = inst.is_accepting(to);
                        out.push(add(&mut arena, &mut queue, NodeKey::Micro(to), false, acc));
                    }
                }
            }
            NodeKey::Slot { micro, slot, targets, letter } => {
                let s = inst.micro(micro).kstates[slot];
                let extend = |e: Option<u8>, t: usize| {
                    let mut ts = targets.clone();
                    ts.push(t);
                    let mut l = letter.clone();
                    l.push(e);
                    (ts, l)
                };
                let (ts, l) = extend(None, s);
                out.push(add(&mut arena, &mut queue, NodeKey::Slot { micro, slot: slot + 1, targets: ts, letter: l }, false, false));
                if inst.quantifiers[slot] == Quantifier::Forall {
                    let k = NodeKey::Branch { micro, slot, targets: targets.clone(), letter: letter.clone() };
                    out.push(add(&mut arena, &mut queue, k, true, false));
                } else {
                    for (e, t) in inst.slot_options(slot, s).into_iter().skip(1) {
                        let (ts, l) = extend(e, t);
                        let k = NodeKey::Slot { micro, slot: slot + 1, targets: ts, letter: l };
                        out.push(add(&mut arena, &mut queue, k, false, false));
                    }
                }
            }
            NodeKey::Branch { micro, slot, targets, letter } => {
                let s = inst.micro(micro).kstates[slot];
                for (e, t) in inst.slot_options(slot, s).into_iter().skip(1) {
                    let mut ts = targets.clone();
                    ts.push(t);
                    let mut l = letter.clone();
                    l.push(e);
                    let k = NodeKey::Slot { micro, slot: slot + 1, targets: ts, letter: l };
                    out.push(add(&mut arena, &mut queue, k, false, false));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        arena.succ[v as usize] = out;
    }
    Ok(arena)
}

/// Winning region of the chooser and, inside it, the attractor rank
/// towards accepting nodes. Rank 0 is an accepting node.
pub(crate) struct Solution {
    pub winning: Vec<bool>,
    pub rank: Vec<usize>,
}

fn predecessors(arena: &Arena) -> Vec<Vec<u32>> {
    let mut pred = vec![Vec::new(); arena.len()];
    for (v, ss) in arena.succ.iter().enumerate() {
        for &w in ss {
            pred[w as usize].push(v as u32);
        }
    }
    pred
}

/// Attractor for `player_opponent` (false: chooser) to `target` inside
/// `within`. Nodes of the other player with no successor inside `within`
/// are attracted immediately, since they are stuck.
fn attractor(
    arena: &Arena,
    pred: &[Vec<u32>],
    within: &[bool],
    target: &[bool],
    player_opponent: bool,
) -> (Vec<bool>, Vec<usize>) {
    let n = arena.len();
    let mut attr = vec![false; n];
    let mut rank = vec![usize::MAX; n];
    let mut count: Vec<usize> =
        (0..n).map(|v| arena.succ[v].iter().filter(|&&w| within[w as usize]).count()).collect();
    let mut queue = VecDeque::new();
    for v in 0..n {
        if !within[v] {
            continue;
        }
        let stuck_other = arena.opponent[v] != player_opponent && count[v] == 0;
        if target[v] || stuck_other {
            attr[v] = true;
            rank[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(w) = queue.pop_front() {
        for &p in &pred[w] {
            let p = p as usize;
            if !within[p] || attr[p] {
                continue;
            }
            let take = if arena.opponent[p] == player_opponent {
                true
            } else {
                count[p] -= 1;
                count[p] == 0
            };
            if take {
                attr[p] = true;
                rank[p] = rank[w] + 1;
                queue.push_back(p);
            }
        }
    }
    (attr, rank)
}

pub(crate) fn solve_buchi(arena: &Arena) -> Solution {
    let n = arena.len();
    let pred = predecessors(arena);
    let mut within = vec![true; n];
    loop {
        let target: Vec<bool> = (0..n).map(|v| within[v] && arena.accepting[v]).collect();
        let (reach, rank) = attractor(arena, &pred, &within, &target, false);
        let trap: Vec<bool> = (0..n).map(|v| within[v] && !reach[v]).collect();
        let (lost, _) = attractor(arena, &pred, &within, &trap, true);
        if !lost.iter().any(|&b| b) {
            return Solution { winning: within, rank };
        }
        for v in 0..n {
            if lost[v] {
                within[v] = false;
            }
        }
    }
}

impl Solution {
    /// Strategy of the chooser at `v`: a winning successor of least rank.
    pub fn choice(&self, arena: &Arena, v: u32) -> Option<u32> {
        arena.succ[v as usize]
            .iter()
            .copied()
            .filter(|&w| self.winning[w as usize])
            .min_by_key(|&w| (self.rank[w as usize], w))
    }
}
