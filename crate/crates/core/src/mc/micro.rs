use std::collections::HashMap;

use serde::Serialize;

use crate::error::{LprlError, Result};
use crate::formula::{NormalSentence, Quantifier};
use crate::hba::{label_admits, Hba, TupleLetter};
use crate::kripke::KripkeFamily;
use crate::sat::build_sentence_hba;

/// `(s, q)` together with a progress phase. Phase `j < n` waits for slot
/// `j` to read a letter; phase `n` waits for an accepting hBA state; phase
/// `n + 1` marks a completed round and is the only accepting phase.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct MicroState {
    pub kstates: Vec<usize>,
    pub hstate: usize,
    pub phase: usize,
}

/// `(source, letter, target)` over interned micro states.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Triple {
    pub from: u32,
    pub letter: TupleLetter,
    pub to: u32,
}

/// The family, `B(ψ)` and the micro-state table shared by the generators.
pub struct McInstance {
    pub family: KripkeFamily,
    pub hba: Hba,
    pub quantifiers: Vec<Quantifier>,
    /// Length of the maximal existential prefix.
    pub exists_prefix: usize,
    ids: HashMap<MicroState, u32>,
    micros: Vec<MicroState>,
}

impl McInstance {
    pub fn new(family: &KripkeFamily, s: &NormalSentence) -> Result<Self> {
        if family.len() != s.width() {
            return Err(LprlError::Arity { expected: s.width(), got: family.len() });
        }
        if s.width() == 0 {
            return Err(LprlError::Precondition("sentence has no variables".into()));
        }
        if let Some(k) = family.members.iter().find(|k| k.alphabet != s.alphabet) {
            return Err(LprlError::Mismatch(format!(
                "propositions [{}] of a Kripke structure vs [{}] of the sentence",
                k.alphabet.props().join(", "),
                s.alphabet.props().join(", ")
            )));
        }
        let hba = build_sentence_hba(s)?;
        Ok(McInstance {
            family: family.clone(),
            hba,
            quantifiers: (0..s.width()).map(|i| s.prefix.quantifier(i)).collect(),
            exists_prefix: s.prefix.exists_prefix_len(),
            ids: HashMap::new(),
            micros: Vec::new(),
        })
    }

    pub fn width(&self) -> usize {
        self.quantifiers.len()
    }

    pub fn intern(&mut self, m: MicroState) -> u32 {
        if let Some(&id) = self.ids.get(&m) {
            return id;
        }
        let id = self.micros.len() as u32;
        self.ids.insert(m.clone(), id);
        self.micros.push(m);
        id
    }

    pub fn micro(&self, id: u32) -> &MicroState {
        &self.micros[id as usize]
    }

    pub fn num_micros(&self) -> usize {
        self.micros.len()
    }

    pub fn initial_micro(&mut self) -> u32 {
        let m = MicroState {
            kstates: self.family.members.iter().map(|k| k.initial).collect(),
            hstate: self.hba.initial,
            phase: 0,
        };
        self.intern(m)
    }

    pub fn is_accepting(&self, id: u32) -> bool {
        self.micro(id).phase == self.width() + 1
    }

    pub fn next_phase(&self, phase: usize, letter: &[Option<u8>], q2: usize) -> usize {
        let n = self.width();
        let mut j = if phase == n + 1 { 0 } else { phase };
        while j < n && letter[j].is_some() {
            j += 1;
        }
        if j == n && self.hba.accepting[q2] {
            j = n + 1;
        }
        j
    }

    /// Per-slot options from `kstates`: a pause, or a move to each successor
    /// emitting the label of the current state.
    pub(crate) fn slot_options(&self, slot: usize, s: usize) -> Vec<(Option<u8>, usize)> {
        let k = &self.family.members[slot];
        let mut o = vec![(None, s)];
        o.extend(k.succ[s].iter().map(|&t| (Some(k.label[s]), t)));
        o
    }

    /// hBA successors of `q` on `letter`, as full micro states.
    pub(crate) fn close_step(&mut self, from: u32, targets: &[usize], letter: &TupleLetter) -> Vec<u32> {
        let (q, phase) = {
            let m = self.micro(from);
            (m.hstate, m.phase)
        };
        let hits: Vec<usize> =
            self.hba.edges[q].iter().filter(|(l, _)| label_admits(l, letter)).map(|(_, d)| *d).collect();
        let mut out = Vec::with_capacity(hits.len());
        for q2 in hits {
            let phase2 = self.next_phase(phase, letter, q2);
            let id = self.intern(MicroState { kstates: targets.to_vec(), hstate: q2, phase: phase2 });
            if !out.contains(&id) {
                out.push(id);
            }
        }
        out
    }

    /// All moves of a micro state: per slot either a pause or a Kripke move,
    /// not all pauses, matched by a transition of `B(ψ)`.
    pub fn micro_step(&mut self, id: u32) -> Vec<(TupleLetter, u32)> {
        let n = self.width();
        let ks = self.micro(id).kstates.clone();
        let options: Vec<Vec<(Option<u8>, usize)>> = (0..n).map(|i| self.slot_options(i, ks[i])).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; n];
        loop {
            let letter: TupleLetter = (0..n).map(|i| options[i][choice[i]].0).collect();
            if letter.iter().any(Option::is_some) {
                let targets: Vec<usize> = (0..n).map(|i| options[i][choice[i]].1).collect();
                for to in self.close_step(id, &targets, &letter) {
                    out.push((letter.clone(), to));
                }
            }
            let mut i = 0;
            while i < n {
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        out
    }
}
