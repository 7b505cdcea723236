//! LTL to Büchi automata.
//!
//! The translation is a tableau construction: obligations are expanded into
//! covers (what holds now, what must hold next), which gives a generalized
//! Büchi automaton with one acceptance set per Until. A counter then
//! degeneralizes it.

mod tableau;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::formula::{Alphabet, LetterSet, LtlFormula};
use crate::graph;
use crate::oracle::LassoWord;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BuchiAutomaton {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub accepting: Vec<bool>,
    /// `edges[q]` lists `(letters, q')`; labels are never empty.
    pub edges: Vec<Vec<(LetterSet, usize)>>,
}

impl BuchiAutomaton {
    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Automaton with the empty language.
    pub fn empty(alphabet: &Alphabet) -> Self {
        BuchiAutomaton { alphabet: alphabet.clone(), initial: 0, accepting: vec![false], edges: vec![Vec::new()] }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|es| es.iter().map(|&(_, d)| d).collect()).collect()
    }

    /// Drops states that are unreachable or cannot reach an accepting cycle.
    pub fn trim(&self) -> Self {
        let adj = self.adjacency();
        let reach = graph::reachable(&adj, self.initial);
        let (_, comps) = graph::sccs(&adj);
        let mut good = vec![false; self.num_states()];
        for c in &comps {
            if graph::is_nontrivial(&adj, c) && c.iter().any(|&q| self.accepting[q]) {
                for &q in c {
                    good[q] = true;
                }
            }
        }
        let live = graph::co_reachable(&adj, &good);
        let keep: Vec<bool> = (0..self.num_states()).map(|q| reach[q] && live[q]).collect();
        if !keep[self.initial] {
            return BuchiAutomaton::empty(&self.alphabet);
        }
        let mut order = vec![self.initial];
        order.extend((0..self.num_states()).filter(|&q| keep[q] && q != self.initial));
        let mut new_id = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q] = i;
        }
        BuchiAutomaton {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting: order.iter().map(|&q| self.accepting[q]).collect(),
            edges: order
                .iter()
                .map(|&q| {
                    self.edges[q]
                        .iter()
                        .filter(|&&(_, d)| keep[d])
                        .map(|&(l, d)| (l, new_id[d]))
                        .collect()
                })
                .collect(),
        }
    }

    /// One transition per line, `src -- {letters} --> dst`, after a header
    /// naming the initial and accepting states.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let acc: Vec<String> =
            (0..self.num_states()).filter(|&q| self.accepting[q]).map(|q| q.to_string()).collect();
        let _ = writeln!(out, "# states: {}", self.num_states());
        let _ = writeln!(out, "# initial: {}", self.initial);
        let _ = writeln!(out, "# accepting: {}", acc.join(" "));
        for (q, es) in self.edges.iter().enumerate() {
            for &(l, d) in es {
                let _ = writeln!(out, "{q} -- {} --> {d}", self.alphabet.format_set(l));
            }
        }
        out
    }
}

/// Translates `phi` into a Büchi automaton over `alphabet`.
pub fn ltl_to_ba(phi: &LtlFormula, alphabet: &Alphabet) -> BuchiAutomaton {
    let t = tableau::build(phi, alphabet);
    let k = t.acceptance.len();
    let in_set = |j: usize, q: usize| k == 0 || t.acceptance[j][q];

    // Degeneralize with a counter over the acceptance sets.
    let mut index: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
    let mut states = vec![(0usize, 0usize)];
    let mut edges: Vec<Vec<(LetterSet, usize)>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let (q, j) = states[id];
        let j2 = if k > 0 && in_set(j, q) { (j + 1) % k } else { j };
        let mut merged: Vec<(LetterSet, usize)> = Vec::new();
        for &d in &t.edges[q] {
            let key = (d, j2);
            let did = *index.entry(key).or_insert_with(|| {
                states.push(key);
                edges.push(Vec::new());
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            let label = t.covers[d].label;
            match merged.iter_mut().find(|(_, x)| *x == did) {
                Some(e) => e.0 = e.0.union(label),
                None => merged.push((label, did)),
            }
        }
        edges[id] = merged;
    }
    let accepting = states.iter().map(|&(q, j)| q != 0 && j == 0 && in_set(0, q)).collect();
    BuchiAutomaton { alphabet: alphabet.clone(), initial: 0, accepting, edges }.trim()
}

/// Whether `a` accepts `stem · cycle^ω`: search the product of the automaton
/// with the lasso positions for a reachable cycle through an accepting state.
pub fn ba_accepts_lasso(a: &BuchiAutomaton, w: &LassoWord) -> bool {
    let n = w.positions();
    let id = |q: usize, p: usize| q * n + p;
    let mut adj = vec![Vec::new(); a.num_states() * n];
    for (q, es) in a.edges.iter().enumerate() {
        for p in 0..n {
            let letter = w.at(p);
            for &(l, d) in es {
                if l.contains(letter) {
                    adj[id(q, p)].push(id(d, w.succ(p)));
                }
            }
        }
    }
    let reach = graph::reachable(&adj, id(a.initial, 0));
    let (_, comps) = graph::sccs(&adj);
    comps.iter().any(|c| {
        reach[c[0]] && graph::is_nontrivial(&adj, c) && c.iter().any(|&v| a.accepting[v / n])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_ltl;
    use crate::oracle::eval_ltl_lasso;

    fn ap() -> Alphabet {
        Alphabet::new(&["p"]).unwrap()
    }

    #[test]
    fn top_accepts_everything() {
        let a = ap();
        let ba = ltl_to_ba(&LtlFormula::top(&a), &a);
        for text in ["{p}", "{};{p}", "{p}{}{};{}{p}"] {
            assert!(ba_accepts_lasso(&ba, &LassoWord::parse(text, &a).unwrap()));
        }
    }

    #[test]
    fn empty_accepting_set() {
        let a = ap();
        let ba = BuchiAutomaton {
            alphabet: a.clone(),
            initial: 0,
            accepting: vec![false],
            edges: vec![vec![(a.all(), 0)]],
        };
        assert!(!ba_accepts_lasso(&ba, &LassoWord::parse("{p}", &a).unwrap()));
    }

    #[test]
    fn eventually() {
        let a = ap();
        let ba = ltl_to_ba(&parse_ltl("F {p}", &a).unwrap(), &a);
        assert!(ba_accepts_lasso(&ba, &LassoWord::parse("{};{p}", &a).unwrap()));
        assert!(!ba_accepts_lasso(&ba, &LassoWord::parse("{}", &a).unwrap()));
    }

    #[test]
    fn next_reads_position_one() {
        let a = ap();
        let ba = ltl_to_ba(&parse_ltl("X {p}", &a).unwrap(), &a);
        assert!(!ba_accepts_lasso(&ba, &LassoWord::parse("{p};{}", &a).unwrap()));
        assert!(ba_accepts_lasso(&ba, &LassoWord::parse("{};{p}", &a).unwrap()));
    }

    #[test]
    fn contradiction_is_trimmed_away() {
        let a = ap();
        let ba = ltl_to_ba(&parse_ltl("G p & F !p", &a).unwrap(), &a);
        assert_eq!(ba.num_states(), 1);
        assert_eq!(ba.num_transitions(), 0);
    }

    #[test]
    fn recurrence_formulas() {
        let a = Alphabet::new(&["p", "q"]).unwrap();
        let words = ["{p};{q}{}", "{q};{p,q}", "{};{p}{q}", "{p}{p};{p}", "{};{}"];
        for f in ["G F p & G F q", "F G (p | q)", "p U (q U p)", "!(p U q) & X (q U p)"] {
            let phi = parse_ltl(f, &a).unwrap();
            let ba = ltl_to_ba(&phi, &a);
            for w in words {
                let w = LassoWord::parse(w, &a).unwrap();
                assert_eq!(ba_accepts_lasso(&ba, &w), eval_ltl_lasso(&phi, &w), "{f} on {w:?}");
            }
        }
    }

    #[test]
    fn dump_format() {
        let a = ap();
        let ba = ltl_to_ba(&parse_ltl("{p}", &a).unwrap(), &a);
        assert!(ba.dump().contains("0 -- {{p}} --> 1"), "{}", ba.dump());
    }
}
