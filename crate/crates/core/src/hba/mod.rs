//! Automata over ε-padded tuples of letters.
//!
//! An [`Hba`] of width `n` reads `n` traces asynchronously: every transition
//! carries one [`SlotConstraint`] per trace, and a slot may pause (`ε`) while
//! the others advance. A run is accepting if it visits an accepting state
//! infinitely often and every slot reads infinitely many letters.

mod algebra;
mod analysis;
mod construct;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::formula::{Alphabet, Letter, LetterSet};

pub use algebra::{hba_intersection, hba_union};
pub use analysis::{hba_accepts_tuple, hba_emptiness, witness_traces, LassoRun, RunStep};
pub use construct::{eq_hba, equiv_hba, lift_ba, neq_hba, nequiv_hba};

/// One entry per slot: `None` is the pause mark ε.
pub type TupleLetter = Vec<Option<Letter>>;

/// Allowed entries of one slot: a set of letters, optionally ε.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SlotConstraint {
    pub letters: LetterSet,
    pub pause: bool,
}

impl SlotConstraint {
    pub fn any(alphabet: &Alphabet) -> Self {
        SlotConstraint { letters: alphabet.all(), pause: true }
    }

    pub fn pause_only() -> Self {
        SlotConstraint { letters: LetterSet::EMPTY, pause: true }
    }

    pub fn letters(set: LetterSet) -> Self {
        SlotConstraint { letters: set, pause: false }
    }

    pub fn letters_or_pause(set: LetterSet) -> Self {
        SlotConstraint { letters: set, pause: true }
    }

    pub fn is_empty(self) -> bool {
        self.letters.is_empty() && !self.pause
    }

    pub fn intersect(self, other: Self) -> Self {
        SlotConstraint { letters: self.letters.intersect(other.letters), pause: self.pause && other.pause }
    }

    pub fn admits(self, entry: Option<Letter>) -> bool {
        match entry {
            None => self.pause,
            Some(l) => self.letters.contains(l),
        }
    }

    fn display(self, alphabet: &Alphabet) -> String {
        if self == SlotConstraint::any(alphabet) {
            "*".into()
        } else if self.letters.is_empty() {
            "ε".into()
        } else if self.pause {
            format!("{}+ε", alphabet.format_set(self.letters))
        } else {
            alphabet.format_set(self.letters)
        }
    }
}

/// Conjunction of per-slot constraints.
pub type Label = Vec<SlotConstraint>;

/// A label is usable if every slot admits something and some slot admits a
/// letter, so the label contains a tuple other than all-ε.
pub fn label_satisfiable(label: &[SlotConstraint]) -> bool {
    label.iter().all(|c| !c.is_empty()) && label.iter().any(|c| !c.letters.is_empty())
}

pub fn label_intersect(a: &[SlotConstraint], b: &[SlotConstraint]) -> Label {
    a.iter().zip(b).map(|(x, y)| x.intersect(*y)).collect()
}

pub fn label_admits(label: &[SlotConstraint], t: &[Option<Letter>]) -> bool {
    label.len() == t.len() && t.iter().any(Option::is_some) && label.iter().zip(t).all(|(c, e)| c.admits(*e))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Hba {
    pub alphabet: Alphabet,
    pub width: usize,
    pub initial: usize,
    pub accepting: Vec<bool>,
    /// `edges[q]` lists `(label, q')`. Every label is satisfiable.
    pub edges: Vec<Vec<(Label, usize)>>,
    /// Human-readable state names, used by [`Hba::dump`].
    pub names: Vec<String>,
}

impl Hba {
    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Accepts every tuple.
    pub fn all(alphabet: &Alphabet, width: usize) -> Self {
        Hba {
            alphabet: alphabet.clone(),
            width,
            initial: 0,
            accepting: vec![true],
            edges: vec![vec![(vec![SlotConstraint::any(alphabet); width], 0)]],
            names: vec!["top".into()],
        }
    }

    /// Accepts nothing.
    pub fn empty(alphabet: &Alphabet, width: usize) -> Self {
        Hba {
            alphabet: alphabet.clone(),
            width,
            initial: 0,
            accepting: vec![false],
            edges: vec![Vec::new()],
            names: vec!["bottom".into()],
        }
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|es| es.iter().map(|(_, d)| *d).collect()).collect()
    }

    /// Removes states that are unreachable or cannot reach a cycle
    /// satisfying the acceptance condition.
    pub fn trim(&self) -> Self {
        let adj = self.adjacency();
        let good = analysis::good_states(self, &adj);
        let reach = crate::graph::reachable(&adj, self.initial);
        let live = crate::graph::co_reachable(&adj, &good);
        let keep: Vec<bool> = (0..self.num_states()).map(|q| reach[q] && live[q]).collect();
        if !keep[self.initial] {
            return Hba::empty(&self.alphabet, self.width);
        }
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[bool]) -> Self {
        let mut order = vec![self.initial];
        order.extend((0..self.num_states()).filter(|&q| keep[q] && q != self.initial));
        let mut new_id = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q] = i;
        }
        Hba {
            alphabet: self.alphabet.clone(),
            width: self.width,
            initial: 0,
            accepting: order.iter().map(|&q| self.accepting[q]).collect(),
            edges: order
                .iter()
                .map(|&q| {
                    self.edges[q]
                        .iter()
                        .filter(|(_, d)| keep[*d])
                        .map(|(l, d)| (l.clone(), new_id[*d]))
                        .collect()
                })
                .collect(),
            names: order.iter().map(|&q| self.names[q].clone()).collect(),
        }
    }

    /// Same format as the Büchi dump, labels printed as slot lists such as
    /// `({p}|ε|*)`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let acc: Vec<String> =
            (0..self.num_states()).filter(|&q| self.accepting[q]).map(|q| q.to_string()).collect();
        let _ = writeln!(out, "# width: {}", self.width);
        let _ = writeln!(out, "# states: {}", self.num_states());
        let _ = writeln!(out, "# initial: {}", self.initial);
        let _ = writeln!(out, "# accepting: {}", acc.join(" "));
        for (q, name) in self.names.iter().enumerate() {
            let _ = writeln!(out, "# state {q} = {name}");
        }
        for (q, es) in self.edges.iter().enumerate() {
            for (l, d) in es {
                let slots: Vec<String> = l.iter().map(|c| c.display(&self.alphabet)).collect();
                let _ = writeln!(out, "{q} -- ({}) --> {d}", slots.join("|"));
            }
        }
        out
    }
}
