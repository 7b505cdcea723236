use std::collections::{HashMap, VecDeque};
use std::path::Path;

use serde::Deserialize;

use super::Kripke;
use crate::error::{LprlError, Result};
use crate::formula::Alphabet;

/// Action-labelled transition system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransitionSystem {
    pub name: String,
    pub actions: Vec<String>,
    pub states: Vec<String>,
    pub initial: usize,
    /// `(source, action index, target)`.
    pub transitions: Vec<(usize, usize, usize)>,
}

#[derive(Deserialize)]
struct SystemFile {
    name: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: String,
    transitions: Vec<(String, String, String)>,
}

#[derive(Deserialize)]
struct NetworkFile {
    components: Vec<SystemFile>,
}

impl TransitionSystem {
    fn from_file(f: SystemFile) -> Result<Self> {
        if f.states.is_empty() {
            return Err(LprlError::Kripke(format!("component `{}` has no states", f.name)));
        }
        let state = |id: &str| {
            f.states
                .iter()
                .position(|s| s == id)
                .ok_or_else(|| LprlError::Kripke(format!("component `{}`: unknown state `{id}`", f.name)))
        };
        let action = |a: &str| {
            f.alphabet
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| LprlError::Kripke(format!("component `{}`: action `{a}` not in its alphabet", f.name)))
        };
        let mut transitions = Vec::with_capacity(f.transitions.len());
        for (s, a, d) in &f.transitions {
            transitions.push((state(s)?, action(a)?, state(d)?));
        }
        Ok(TransitionSystem {
            initial: state(&f.initial)?,
            name: f.name,
            actions: f.alphabet,
            states: f.states,
            transitions,
        })
    }

    /// Adds a self-loop on the dummy action `bot_<name>` at every state
    /// without outgoing transitions.
    pub fn padded(&self) -> Self {
        let stuck: Vec<usize> =
            (0..self.states.len()).filter(|&s| !self.transitions.iter().any(|t| t.0 == s)).collect();
        let mut out = self.clone();
        if stuck.is_empty() {
            return out;
        }
        out.actions.push(format!("bot_{}", self.name));
        let bot = out.actions.len() - 1;
        out.transitions.extend(stuck.into_iter().map(|s| (s, bot, s)));
        out
    }

    /// Kripke view of the system. Its traces are `∅ · act(π)`: the initial
    /// Kripke state is labelled with the empty letter and every other state
    /// records the action that led to it. Propositions are action names.
    pub fn to_kripke(&self, alphabet: &Alphabet) -> Result<Kripke> {
        let ts = self.padded();
        let mut index: HashMap<(usize, Option<usize>), usize> = HashMap::from([((ts.initial, None), 0)]);
        let mut keys = vec![(ts.initial, None)];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let (s, _) = keys[v];
            for &(src, a, dst) in &ts.transitions {
                if src != s {
                    continue;
                }
                let key = (dst, Some(a));
                let w = *index.entry(key).or_insert_with(|| {
                    keys.push(key);
                    succ.push(Vec::new());
                    queue.push_back(keys.len() - 1);
                    keys.len() - 1
                });
                succ[v].push(w);
            }
        }
        let mut label = Vec::with_capacity(keys.len());
        for &(_, a) in &keys {
            label.push(match a {
                None => 0,
                Some(a) => alphabet.letter(&[&ts.actions[a]])?,
            });
        }
        let names = keys
            .iter()
            .map(|&(s, a)| match a {
                None => ts.states[s].clone(),
                Some(a) => format!("{}@{}", ts.states[s], ts.actions[a]),
            })
            .collect();
        Kripke::new(alphabet, names, 0, succ, label)
    }
}

/// Components of a distributed system; they synchronize on shared actions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Network {
    pub components: Vec<TransitionSystem>,
}

impl Network {
    /// `{"components": [{"name", "alphabet", "states", "initial", "transitions": [[s, a, t], ...]}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: NetworkFile = serde_json::from_str(text)?;
        if file.components.is_empty() {
            return Err(LprlError::Kripke("network without components".into()));
        }
        Ok(Network {
            components: file.components.into_iter().map(TransitionSystem::from_file).collect::<Result<_>>()?,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Network::from_json(&std::fs::read_to_string(path)?)
    }

    /// Global system: a move on action `a` is taken jointly by every
    /// component whose alphabet contains `a`; the others stay put. Only
    /// reachable global states are built. Components are padded first.
    pub fn synchronized_product(&self) -> TransitionSystem {
        let comps: Vec<TransitionSystem> = self.components.iter().map(TransitionSystem::padded).collect();
        let mut actions: Vec<String> = Vec::new();
        for c in &comps {
            for a in &c.actions {
                if !actions.contains(a) {
                    actions.push(a.clone());
                }
            }
        }
        // For every component: action name -> local index, if present.
        let local: Vec<HashMap<&str, usize>> = comps
            .iter()
            .map(|c| c.actions.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect())
            .collect();

        let start: Vec<usize> = comps.iter().map(|c| c.initial).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut states = vec![start];
        let mut transitions = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let cur = states[v].clone();
            for (ga, name) in actions.iter().enumerate() {
                let mut targets: Vec<Vec<usize>> = vec![cur.clone()];
                for (i, c) in comps.iter().enumerate() {
                    let Some(&la) = local[i].get(name.as_str()) else { continue };
                    let moves: Vec<usize> =
                        c.transitions.iter().filter(|t| t.0 == cur[i] && t.1 == la).map(|t| t.2).collect();
                    targets = targets
                        .into_iter()
                        .flat_map(|t| {
                            moves.iter().map(move |&d| {
                                let mut t = t.clone();
                                t[i] = d;
                                t
                            })
                        })
                        .collect();
                }
                for t in targets {
                    let w = *index.entry(t.clone()).or_insert_with(|| {
                        states.push(t);
                        queue.push_back(states.len() - 1);
                        states.len() - 1
                    });
                    transitions.push((v, ga, w));
                }
            }
        }
        let names = states
            .iter()
            .map(|s| {
                let parts: Vec<&str> = s.iter().enumerate().map(|(i, &x)| comps[i].states[x].as_str()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        TransitionSystem {
            name: "global".into(),
            actions,
            states: names,
            initial: 0,
            transitions,
        }
    }
}
