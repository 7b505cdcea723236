//! Satisfiability of cycle-free sentences.
//!
//! For a cycle-free sentence the quantifier prefix does not affect the
//! verdict: the sentence is satisfiable iff some tuple of traces satisfies
//! its matrix, and then the singleton models built from that tuple satisfy
//! the whole sentence. The procedure therefore builds the tuple automaton
//! `B(ψ)` of the matrix and checks it for emptiness.

use std::time::Instant;

use serde::Serialize;

use crate::error::{LprlError, Result};
use crate::formula::{check_cycle_free, Alphabet, AtomicFormula, Clause, NormalSentence};
use crate::hba::{
    eq_hba, equiv_hba, hba_emptiness, hba_intersection, hba_union, lift_ba, neq_hba, nequiv_hba,
    witness_traces, Hba, LassoRun,
};
use crate::ltl2ba::ltl_to_ba;
use crate::oracle::LassoWord;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SatVerdict {
    Sat,
    Unsat,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SatStats {
    /// Trimmed size of each clause automaton, in matrix order.
    pub clause_states: Vec<usize>,
    pub hba_states: usize,
    pub hba_transitions: usize,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SatResult {
    pub verdict: SatVerdict,
    /// One lasso per variable, in prefix order, when satisfiable.
    pub witness: Option<Vec<LassoWord>>,
    pub run: Option<LassoRun>,
    pub stats: SatStats,
}

/// Tuple automaton of a single atomic formula.
pub fn atom_hba(atom: &AtomicFormula, width: usize, alphabet: &Alphabet) -> Result<Hba> {
    let b = match atom {
        AtomicFormula::True => Hba::all(alphabet, width),
        AtomicFormula::False => Hba::empty(alphabet, width),
        AtomicFormula::Unary { phi, slot } => lift_ba(&ltl_to_ba(phi, alphabet), *slot, width)?,
        AtomicFormula::Equiv { left, i, right, k } => equiv_hba(left, *i, right, *k, width, alphabet)?,
        AtomicFormula::NotEquiv { left, i, right, k } => nequiv_hba(left, *i, right, *k, width, alphabet)?,
        AtomicFormula::Eq { i, k, set } => eq_hba(*i, *k, *set, width, alphabet)?,
        AtomicFormula::Neq { i, k, set } => neq_hba(*i, *k, *set, width, alphabet)?,
    };
    Ok(b.trim())
}

/// Intersection of the atom automata of a clause, trimmed.
pub fn clause_hba(clause: &Clause, width: usize, alphabet: &Alphabet) -> Result<Hba> {
    if clause.contains(&AtomicFormula::False) {
        return Ok(Hba::empty(alphabet, width));
    }
    let parts: Vec<Hba> = clause
        .iter()
        .filter(|a| **a != AtomicFormula::True)
        .map(|a| atom_hba(a, width, alphabet))
        .collect::<Result<_>>()?;
    if parts.iter().any(|b| b.accepting.iter().all(|&f| !f)) {
        return Ok(Hba::empty(alphabet, width));
    }
    if parts.is_empty() {
        return Ok(Hba::all(alphabet, width));
    }
    Ok(hba_intersection(&parts)?.trim())
}

fn union_all(clauses: Vec<Hba>, alphabet: &Alphabet, width: usize) -> Result<Hba> {
    let mut it = clauses.into_iter();
    let Some(mut acc) = it.next() else {
        return Ok(Hba::empty(alphabet, width));
    };
    for b in it {
        acc = hba_union(&acc, &b)?;
    }
    Ok(acc.trim())
}

/// `B(ψ)` for a cycle-free sentence, with per-clause sizes.
pub fn build_sentence_hba_with_sizes(s: &NormalSentence) -> Result<(Hba, Vec<usize>)> {
    let report = check_cycle_free(s);
    if !report.ok {
        return Err(LprlError::NotCycleFree(report));
    }
    let width = s.width();
    let clauses: Vec<Hba> = s.matrix.iter().map(|c| clause_hba(c, width, &s.alphabet)).collect::<Result<_>>()?;
    let sizes = clauses.iter().map(Hba::num_states).collect();
    Ok((union_all(clauses, &s.alphabet, width)?, sizes))
}

/// `B(ψ)`: accepts exactly the tuples satisfying the matrix.
pub fn build_sentence_hba(s: &NormalSentence) -> Result<Hba> {
    Ok(build_sentence_hba_with_sizes(s)?.0)
}

pub fn check_sat(s: &NormalSentence) -> Result<SatResult> {
    let start = Instant::now();
    let (b, clause_states) = build_sentence_hba_with_sizes(s)?;
    let run = if s.width() == 0 {
        // Closed propositional matrix: no tuple to witness.
        let sat = s.matrix.iter().any(|c| c.iter().all(|a| *a == AtomicFormula::True));
        return Ok(SatResult {
            verdict: if sat { SatVerdict::Sat } else { SatVerdict::Unsat },
            witness: sat.then(Vec::new),
            run: None,
            stats: SatStats { clause_states, elapsed_ms: start.elapsed().as_millis(), ..SatStats::default() },
        });
    } else {
        hba_emptiness(&b)
    };
    let witness = run.as_ref().map(witness_traces).transpose()?;
    Ok(SatResult {
        verdict: if run.is_some() { SatVerdict::Sat } else { SatVerdict::Unsat },
        witness,
        run,
        stats: SatStats {
            clause_states,
            hba_states: b.num_states(),
            hba_transitions: b.num_transitions(),
            elapsed_ms: start.elapsed().as_millis(),
        },
    })
}
