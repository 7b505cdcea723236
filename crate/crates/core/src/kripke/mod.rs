//! Kripke structures and networks of communicating transition systems.
//!
//! JSON format of a Kripke structure:
//!
//! ```json
//! {"props": ["p", "q"],
//!  "states": [{"id": "s0", "label": ["p"]}, {"id": "s1", "label": []}],
//!  "initial": "s0",
//!  "edges": [["s0", "s1"], ["s1", "s1"]]}
//! ```
//!
//! Labels are resolved against the alphabet of the sentence being checked.

mod network;

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{LprlError, Result};
use crate::formula::{Alphabet, Letter, LetterSet};
use crate::ltl2ba::BuchiAutomaton;
use crate::oracle::LassoWord;

pub use network::{Network, TransitionSystem};

#[derive(Deserialize)]
struct StateDef {
    id: String,
    #[serde(default)]
    label: Vec<String>,
}

#[derive(Deserialize)]
struct KripkeFile {
    #[serde(default)]
    props: Option<Vec<String>>,
    states: Vec<StateDef>,
    initial: String,
    edges: Vec<(String, String)>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Kripke {
    pub alphabet: Alphabet,
    pub names: Vec<String>,
    pub initial: usize,
    pub succ: Vec<Vec<usize>>,
    pub label: Vec<Letter>,
}

impl Kripke {
    /// Builds and validates a structure. Successor lists are sorted and
    /// deduplicated.
    pub fn new(
        alphabet: &Alphabet,
        names: Vec<String>,
        initial: usize,
        mut succ: Vec<Vec<usize>>,
        label: Vec<Letter>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(LprlError::Kripke("no states".into()));
        }
        if succ.len() != n || label.len() != n {
            return Err(LprlError::Kripke("state, edge and label counts differ".into()));
        }
        if initial >= n {
            return Err(LprlError::Kripke(format!("initial state {initial} does not exist")));
        }
        for (s, ss) in succ.iter_mut().enumerate() {
            ss.sort_unstable();
            ss.dedup();
            if ss.is_empty() {
                return Err(LprlError::Kripke(format!("state `{}` has no successor", names[s])));
            }
            if let Some(&bad) = ss.iter().find(|&&d| d >= n) {
                return Err(LprlError::Kripke(format!("edge to unknown state {bad}")));
            }
        }
        if let Some(&l) = label.iter().find(|&&l| l as usize >= alphabet.num_letters()) {
            return Err(LprlError::Kripke(format!("label {l} outside the alphabet")));
        }
        Ok(Kripke { alphabet: alphabet.clone(), names, initial, succ, label })
    }

    pub fn from_json(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let file: KripkeFile = serde_json::from_str(text)?;
        let mut ids: HashMap<&str, usize> = HashMap::new();
        for (i, s) in file.states.iter().enumerate() {
            if ids.insert(s.id.as_str(), i).is_some() {
                return Err(LprlError::Kripke(format!("state `{}` declared twice", s.id)));
            }
        }
        let lookup = |id: &str| {
            ids.get(id).copied().ok_or_else(|| LprlError::Kripke(format!("unknown state `{id}`")))
        };
        let mut label = Vec::with_capacity(file.states.len());
        for s in &file.states {
            if let Some(props) = &file.props {
                if let Some(p) = s.label.iter().find(|p| !props.contains(p)) {
                    return Err(LprlError::Kripke(format!("state `{}` uses undeclared proposition `{p}`", s.id)));
                }
            }
            label.push(alphabet.letter(&s.label)?);
        }
        let mut succ = vec![Vec::new(); file.states.len()];
        for (a, b) in &file.edges {
            succ[lookup(a)?].push(lookup(b)?);
        }
        let initial = lookup(&file.initial)?;
        let names = file.states.iter().map(|s| s.id.clone()).collect();
        Kripke::new(alphabet, names, initial, succ, label)
    }

    pub fn load(path: impl AsRef<Path>, alphabet: &Alphabet) -> Result<Self> {
        Kripke::from_json(&std::fs::read_to_string(path)?, alphabet)
    }

    /// Loads `path`, or the Kripke view of component `name` of the network
    /// in `path` when written `path#name`.
    pub fn load_spec(spec: &str, alphabet: &Alphabet) -> Result<Self> {
        let Some((path, name)) = spec.rsplit_once('#') else {
            return Kripke::load(spec, alphabet);
        };
        let net = Network::load(path)?;
        let comp = net
            .components
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| LprlError::Kripke(format!("{path}: no component named `{name}`")))?;
        comp.to_kripke(alphabet)
    }

    pub fn to_json(&self) -> String {
        let states: Vec<serde_json::Value> = self
            .names
            .iter()
            .zip(&self.label)
            .map(|(id, &l)| serde_json::json!({"id": id, "label": self.alphabet.letter_props(l)}))
            .collect();
        let edges: Vec<(&str, &str)> = self
            .succ
            .iter()
            .enumerate()
            .flat_map(|(s, ds)| ds.iter().map(move |&d| (self.names[s].as_str(), self.names[d].as_str())))
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "props": self.alphabet.props(),
            "states": states,
            "initial": self.names[self.initial],
            "edges": edges,
        }))
        .expect("serializable")
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    /// Moves from `s`: each successor, paired with the letter emitted on the
    /// way, which is the label of `s` itself.
    pub fn micro_moves(&self, s: usize) -> Result<Vec<(Letter, usize)>> {
        let ss = self.succ.get(s).ok_or_else(|| LprlError::Kripke(format!("unknown state {s}")))?;
        Ok(ss.iter().map(|&d| (self.label[s], d)).collect())
    }

    pub fn is_deterministic(&self) -> bool {
        self.succ.iter().all(|ss| ss.len() == 1)
    }

    /// Büchi automaton accepting exactly the traces of the structure.
    pub fn trace_automaton(&self) -> BuchiAutomaton {
        BuchiAutomaton {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            accepting: vec![true; self.num_states()],
            edges: self
                .succ
                .iter()
                .enumerate()
                .map(|(s, ds)| ds.iter().map(|&d| (LetterSet::singleton(self.label[s]), d)).collect())
                .collect(),
        }
    }

    /// The single trace of a structure where every state has exactly one
    /// successor.
    pub fn unique_lasso(&self) -> Result<LassoWord> {
        if !self.is_deterministic() {
            return Err(LprlError::Precondition("structure is not deterministic".into()));
        }
        let mut seen = vec![usize::MAX; self.num_states()];
        let mut path = Vec::new();
        let mut s = self.initial;
        while seen[s] == usize::MAX {
            seen[s] = path.len();
            path.push(s);
            s = self.succ[s][0];
        }
        let letters: Vec<Letter> = path.iter().map(|&s| self.label[s]).collect();
        let (stem, cycle) = letters.split_at(seen[s]);
        LassoWord::new(stem.to_vec(), cycle.to_vec())
    }

    /// Trace of the lasso path `stem · cycle^ω` given as state sequences, if
    /// it is a path of the structure from the initial state.
    pub fn replay(&self, stem: &[usize], cycle: &[usize]) -> Option<LassoWord> {
        let path: Vec<usize> = stem.iter().chain(cycle).copied().collect();
        if path.first() != Some(&self.initial) || cycle.is_empty() {
            return None;
        }
        let ok = path.windows(2).all(|w| self.succ[w[0]].contains(&w[1]))
            && self.succ[*cycle.last()?].contains(&cycle[0]);
        ok.then(|| {
            LassoWord::new(
                stem.iter().map(|&s| self.label[s]).collect(),
                cycle.iter().map(|&s| self.label[s]).collect(),
            )
            .expect("non-empty cycle")
        })
    }
}

/// One structure per quantified variable, in prefix order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KripkeFamily {
    pub members: Vec<Kripke>,
}

impl KripkeFamily {
    pub fn new(members: Vec<Kripke>) -> Self {
        KripkeFamily { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `N_K`, the largest state count.
    pub fn max_states(&self) -> usize {
        self.members.iter().map(Kripke::num_states).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap() -> Alphabet {
        Alphabet::new(&["p", "q"]).unwrap()
    }

    #[test]
    fn self_loop() {
        let k = Kripke::from_json(
            r#"{"props":["p"],"states":[{"id":"s","label":["p"]}],"initial":"s","edges":[["s","s"]]}"#,
            &ap(),
        )
        .unwrap();
        assert_eq!(k.micro_moves(0).unwrap(), vec![(1, 0)]);
        assert_eq!(k.unique_lasso().unwrap(), LassoWord::new(vec![], vec![1]).unwrap());
    }

    #[test]
    fn totality_violation_names_state() {
        let err = Kripke::from_json(
            r#"{"states":[{"id":"s0"},{"id":"stuck"}],"initial":"s0","edges":[["s0","stuck"]]}"#,
            &ap(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("stuck"), "{err}");
    }

    #[test]
    fn unknown_prop() {
        let r = Kripke::from_json(r#"{"states":[{"id":"s","label":["r"]}],"initial":"s","edges":[["s","s"]]}"#, &ap());
        assert!(matches!(r, Err(LprlError::UnknownProposition(_))));
    }

    #[test]
    fn two_cycle_and_branching() {
        let text = r#"{"states":[{"id":"a","label":["p"]},{"id":"b"}],"initial":"a","edges":[["a","b"],["b","a"],["b","b"]]}"#;
        let k = Kripke::from_json(text, &ap()).unwrap();
        assert_eq!(k.micro_moves(1).unwrap(), vec![(0, 0), (0, 1)]);
        assert!(k.unique_lasso().is_err());
        assert_eq!(k.replay(&[], &[0, 1]), Some(LassoWord::new(vec![], vec![1, 0]).unwrap()));
        assert_eq!(k.replay(&[0], &[0]), None);
        let again = Kripke::from_json(&k.to_json(), &ap()).unwrap();
        assert_eq!(again, k);
    }
}
