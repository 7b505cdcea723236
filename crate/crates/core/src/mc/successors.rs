//! Successor generation for macro states and the side-condition checker.
//!
//! The side conditions on a relation `u --next--> u2`: every triple is a
//! joint Kripke and automaton step (step), every source moves (totality),
//! `u2` is the image (image), each moving universal slot covers all Kripke
//! successors among same-prefix siblings (coverage) and all triples agree on
//! the existential prefix (prefix).

use std::collections::BTreeSet;

use super::game::{Arena, NodeKey, Solution};
use super::micro::{McInstance, Triple};
use crate::error::{LprlError, Result};
use crate::formula::Quantifier;
use crate::hba::label_admits;

/// Image of a relation: the sorted, deduplicated targets.
pub fn image(next: &[Triple]) -> Vec<u32> {
    let set: BTreeSet<u32> = next.iter().map(|t| t.to).collect();
    set.into_iter().collect()
}

/// Every relation from `u` that satisfies the side conditions, by exhaustive subset
/// enumeration. Fails with a precondition error when the number of
/// candidate combinations exceeds `limit`.
pub fn baseline_successors(inst: &mut McInstance, u: &[u32], limit: usize) -> Result<Vec<Vec<Triple>>> {
    let cands: Vec<Vec<Triple>> = u
        .iter()
        .map(|&v| inst.micro_step(v).into_iter().map(|(letter, to)| Triple { from: v, letter, to }).collect())
        .collect();
    let mut combos: usize = 1;
    for c in &cands {
        if c.len() >= usize::BITS as usize - 1 {
            return Err(LprlError::Precondition("baseline enumeration too large".into()));
        }
        combos = combos.saturating_mul((1usize << c.len()) - 1);
    }
    if combos > limit {
        return Err(LprlError::Precondition(format!("baseline enumeration needs {combos} combinations, limit {limit}")));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    enumerate(inst, &cands, 0, &mut current, &mut out);
    Ok(out)
}

fn enumerate(inst: &McInstance, cands: &[Vec<Triple>], i: usize, current: &mut Vec<Triple>, out: &mut Vec<Vec<Triple>>) {
    if i == cands.len() {
        if coverage_rule(inst, current).is_ok() {
            let mut rel = current.clone();
            rel.sort();
            out.push(rel);
        }
        return;
    }
    let c = &cands[i];
    // Totality forces a non-empty subset per source.
    for mask in 1u64..(1u64 << c.len()) {
        let before = current.len();
        current.extend((0..c.len()).filter(|b| mask >> b & 1 == 1).map(|b| c[b].clone()));
        if prefix_rule(inst, current).is_ok() {
            enumerate(inst, cands, i + 1, current, out);
        }
        current.truncate(before);
    }
}

/// Relations produced by following the solved game. Without an existential
/// prefix there is one relation; otherwise there is one per joint move of
/// the prefix slots that keeps every micro state winning.
pub(crate) fn reduced_successors(inst: &McInstance, arena: &Arena, sol: &Solution, u: &[u32]) -> Vec<Vec<Triple>> {
    let p = inst.exists_prefix;
    if p == 0 {
        return u.iter().map(|&v| follow(inst, arena, sol, v, &[])).collect::<Option<Vec<_>>>().map(concat).into_iter().collect();
    }
    let shared = &inst.micro(u[0]).kstates;
    let options: Vec<Vec<(Option<u8>, usize)>> = (0..p).map(|i| inst.slot_options(i, shared[i])).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; p];
    loop {
        let mv: Vec<(Option<u8>, usize)> = (0..p).map(|i| options[i][choice[i]]).collect();
        if let Some(rels) = u.iter().map(|&v| follow(inst, arena, sol, v, &mv)).collect::<Option<Vec<_>>>() {
            out.push(concat(rels));
        }
        let mut i = 0;
        while i < p {
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == p {
            break;
        }
    }
    out
}

fn concat(rels: Vec<Vec<Triple>>) -> Vec<Triple> {
    let mut all: Vec<Triple> = rels.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    all
}

/// Triples from micro state `v` under the strategy, with the first slots
/// forced to `forced`. `None` if that leaves the winning region.
fn follow(inst: &McInstance, arena: &Arena, sol: &Solution, v: u32, forced: &[(Option<u8>, usize)]) -> Option<Vec<Triple>> {
    let n = inst.width();
    let start = arena.node(&NodeKey::Micro(v))?;
    if !sol.winning[start as usize] {
        return None;
    }
    let mut out = Vec::new();
    let mut stack = vec![arena.succ[start as usize][0]];
    while let Some(x) = stack.pop() {
        if !sol.winning[x as usize] {
            return None;
        }
        match &arena.keys[x as usize] {
            NodeKey::Micro(_) => unreachable!("micro nodes are leaves of a round"),
            NodeKey::Branch { .. } => stack.extend(arena.succ[x as usize].iter().copied()),
            NodeKey::Slot { micro, slot, letter, .. } if *slot == n => {
                let w = sol.choice(arena, x)?;
                let NodeKey::Micro(to) = arena.keys[w as usize] else { unreachable!() };
                out.push(Triple { from: *micro, letter: letter.clone(), to });
            }
            NodeKey::Slot { micro, slot, targets, letter } if *slot < forced.len() => {
                let (e, t) = forced[*slot];
                let mut ts = targets.clone();
                ts.push(t);
                let mut l = letter.clone();
                l.push(e);
                stack.push(arena.node(&NodeKey::Slot { micro: *micro, slot: slot + 1, targets: ts, letter: l })?);
            }
            NodeKey::Slot { .. } => stack.push(sol.choice(arena, x)?),
        }
    }
    Some(out)
}

/// A violated side condition, named by its rule.
pub type TrViolation = String;

fn step_rule(inst: &McInstance, next: &[Triple]) -> std::result::Result<(), TrViolation> {
    for t in next {
        let (a, b) = (inst.micro(t.from), inst.micro(t.to));
        if t.letter.iter().all(Option::is_none) {
            return Err(format!("step: all-pause letter on {t:?}"));
        }
        for (i, e) in t.letter.iter().enumerate() {
            let k = &inst.family.members[i];
            let ok = match e {
                None => a.kstates[i] == b.kstates[i],
                Some(l) => *l == k.label[a.kstates[i]] && k.succ[a.kstates[i]].contains(&b.kstates[i]),
            };
            if !ok {
                return Err(format!("step: slot {i} of {t:?} is not a Kripke step"));
            }
        }
        let hba_ok = inst.hba.edges[a.hstate].iter().any(|(l, d)| *d == b.hstate && label_admits(l, &t.letter));
        if !hba_ok || inst.next_phase(a.phase, &t.letter, b.hstate) != b.phase {
            return Err(format!("step: {t:?} is not an automaton step"));
        }
    }
    Ok(())
}

fn coverage_rule(inst: &McInstance, next: &[Triple]) -> std::result::Result<(), TrViolation> {
    for t in next {
        let (s, s2) = (&inst.micro(t.from).kstates, &inst.micro(t.to).kstates);
        for i in 0..inst.width() {
            if inst.quantifiers[i] != Quantifier::Forall {
                continue;
            }
            let agree = |o: &Triple| {
                let (o1, o2) = (&inst.micro(o.from).kstates, &inst.micro(o.to).kstates);
                o1[..=i] == s[..=i] && o2[..i] == s2[..i]
            };
            if t.letter[i].is_none() {
                // A pausing slot needs an ε-agreeing sibling; `t` itself is one.
                continue;
            }
            for &succ in &inst.family.members[i].succ[s[i]] {
                if !next.iter().any(|o| agree(o) && inst.micro(o.to).kstates[i] == succ) {
                    return Err(format!("coverage: slot {i} of {t:?} misses successor {succ}"));
                }
            }
        }
    }
    Ok(())
}

fn prefix_rule(inst: &McInstance, next: &[Triple]) -> std::result::Result<(), TrViolation> {
    let p = inst.exists_prefix;
    let Some(first) = next.first() else { return Ok(()) };
    let (f1, f2) = (&inst.micro(first.from).kstates[..p], &inst.micro(first.to).kstates[..p]);
    for t in next {
        if inst.micro(t.from).kstates[..p] != *f1 || inst.micro(t.to).kstates[..p] != *f2 {
            return Err(format!("prefix: {t:?} disagrees on the existential prefix"));
        }
    }
    Ok(())
}

/// Checks `u --next--> u2` against each rule in turn.
pub fn check_transition(inst: &McInstance, u: &[u32], next: &[Triple], u2: &[u32]) -> std::result::Result<(), TrViolation> {
    step_rule(inst, next)?;
    if let Some(v) = u.iter().find(|&&v| !next.iter().any(|t| t.from == v)) {
        return Err(format!("totality: micro state {v} has no move"));
    }
    if let Some(t) = next.iter().find(|t| !u.contains(&t.from)) {
        return Err(format!("step: source of {t:?} is outside the macro state"));
    }
    if image(next) != u2 {
        return Err("image: target is not the image of the relation".into());
    }
    coverage_rule(inst, next)?;
    prefix_rule(inst, next)
}
