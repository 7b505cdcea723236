use std::collections::{HashMap, VecDeque};

use super::{label_intersect, label_satisfiable, Hba, Label};
use crate::error::{LprlError, Result};

fn check_compatible(a: &Hba, b: &Hba) -> Result<()> {
    if a.width != b.width {
        return Err(LprlError::Mismatch(format!("width {} vs {}", a.width, b.width)));
    }
    if a.alphabet != b.alphabet {
        return Err(LprlError::Mismatch("alphabets".into()));
    }
    Ok(())
}

/// Disjoint union behind a fresh initial state that copies the outgoing
/// transitions of both initial states. The fresh state is never re-entered,
/// so it is not accepting.
pub fn hba_union(b1: &Hba, b2: &Hba) -> Result<Hba> {
    check_compatible(b1, b2)?;
    let off1 = 1;
    let off2 = 1 + b1.num_states();
    let shift = |es: &[(Label, usize)], off: usize| -> Vec<(Label, usize)> {
        es.iter().map(|(l, d)| (l.clone(), d + off)).collect()
    };
    let mut init_edges = shift(&b1.edges[b1.initial], off1);
    init_edges.extend(shift(&b2.edges[b2.initial], off2));
    let mut edges = vec![init_edges];
    edges.extend(b1.edges.iter().map(|es| shift(es, off1)));
    edges.extend(b2.edges.iter().map(|es| shift(es, off2)));
    let mut accepting = vec![false];
    accepting.extend(&b1.accepting);
    accepting.extend(&b2.accepting);
    let mut names = vec!["init".to_string()];
    names.extend(b1.names.iter().map(|n| format!("L.{n}")));
    names.extend(b2.names.iter().map(|n| format!("R.{n}")));
    Ok(Hba { alphabet: b1.alphabet.clone(), width: b1.width, initial: 0, accepting, edges, names })
}

/// Synchronous product with a flag set: the set holds the components that
/// have not visited an accepting state since the last reset. A product
/// state is accepting when the set is empty; from there it resets to all
/// components.
pub fn hba_intersection(bs: &[Hba]) -> Result<Hba> {
    let first = bs.first().ok_or_else(|| LprlError::Precondition("intersection of no automata".into()))?;
    for b in &bs[1..] {
        check_compatible(first, b)?;
    }
    if bs.len() == 1 {
        return Ok(first.clone());
    }
    let k = bs.len();
    assert!(k < 64, "too many automata in one intersection");
    let full: u64 = (1u64 << k) - 1;

    type Key = (Vec<usize>, u64);
    let start: Key = (bs.iter().map(|b| b.initial).collect(), full);
    let mut index: HashMap<Key, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut edges: Vec<Vec<(Label, usize)>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let (qs, flags) = states[id].clone();
        // Partial products: (label so far, target components so far).
        let mut partial: Vec<(Label, Vec<usize>)> =
            first.edges[qs[0]].iter().map(|(l, d)| (l.clone(), vec![*d])).collect();
        for (c, b) in bs.iter().enumerate().skip(1) {
            let mut next = Vec::new();
            for (l, ds) in &partial {
                for (l2, d2) in &b.edges[qs[c]] {
                    let l3 = label_intersect(l, l2);
                    if label_satisfiable(&l3) {
                        let mut ds2 = ds.clone();
                        ds2.push(*d2);
                        next.push((l3, ds2));
                    }
                }
            }
            partial = next;
        }
        for (label, targets) in partial {
            let f2 = if flags == 0 {
                full
            } else {
                targets
                    .iter()
                    .enumerate()
                    .filter(|&(c, &q)| bs[c].accepting[q])
                    .fold(flags, |f, (c, _)| f & !(1u64 << c))
            };
            let key = (targets, f2);
            let did = *index.entry(key.clone()).or_insert_with(|| {
                states.push(key);
                edges.push(Vec::new());
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            edges[id].push((label, did));
        }
    }
    let accepting = states.iter().map(|(_, f)| *f == 0).collect();
    let names = states
        .iter()
        .map(|(qs, f)| {
            let parts: Vec<&str> = qs.iter().enumerate().map(|(c, &q)| bs[c].names[q].as_str()).collect();
            let flags: Vec<String> = (0..k).filter(|c| f >> c & 1 == 1).map(|c| c.to_string()).collect();
            format!("({};{{{}}})", parts.join(","), flags.join(","))
        })
        .collect();
    Ok(Hba { alphabet: first.alphabet.clone(), width: first.width, initial: 0, accepting, edges, names })
}
