use super::algebra::{hba_intersection, hba_union};
use super::{label_satisfiable, Hba, Label, SlotConstraint};
use crate::error::{LprlError, Result};
use crate::formula::{Alphabet, LetterSet, LtlFormula};
use crate::ltl2ba::{ltl_to_ba, BuchiAutomaton};

fn check_slot(slot: usize, width: usize) -> Result<()> {
    if slot >= width {
        return Err(LprlError::SlotOutOfRange { slot, width });
    }
    Ok(())
}

fn check_pair(i: usize, k: usize, width: usize) -> Result<()> {
    check_slot(i, width)?;
    check_slot(k, width)?;
    if i == k {
        return Err(LprlError::SameSlot(i));
    }
    Ok(())
}

/// Runs `a` on slot `slot`; the other slots are unconstrained and slot
/// `slot` may pause at any state.
pub fn lift_ba(a: &BuchiAutomaton, slot: usize, width: usize) -> Result<Hba> {
    check_slot(slot, width)?;
    let any = SlotConstraint::any(&a.alphabet);
    let mut edges = Vec::with_capacity(a.num_states());
    for (q, es) in a.edges.iter().enumerate() {
        let mut out: Vec<(Label, usize)> = Vec::with_capacity(es.len() + 1);
        for &(l, d) in es {
            let mut label = vec![any; width];
            label[slot] = SlotConstraint::letters(l);
            out.push((label, d));
        }
        let mut pause = vec![any; width];
        pause[slot] = SlotConstraint::pause_only();
        if label_satisfiable(&pause) {
            out.push((pause, q));
        }
        edges.push(out);
    }
    Ok(Hba {
        alphabet: a.alphabet.clone(),
        width,
        initial: a.initial,
        accepting: a.accepting.clone(),
        edges,
        names: (0..a.num_states()).map(|q| format!("q{q}")).collect(),
    })
}

fn lift_formula(phi: &LtlFormula, slot: usize, width: usize, alphabet: &Alphabet) -> Result<Hba> {
    lift_ba(&ltl_to_ba(phi, alphabet), slot, width)
}

/// `[φi](x_i) <=> [φk](x_k)`.
pub fn equiv_hba(
    phi_i: &LtlFormula,
    i: usize,
    phi_k: &LtlFormula,
    k: usize,
    width: usize,
    alphabet: &Alphabet,
) -> Result<Hba> {
    check_pair(i, k, width)?;
    let both = hba_intersection(&[lift_formula(phi_i, i, width, alphabet)?, lift_formula(phi_k, k, width, alphabet)?])?;
    let neither = hba_intersection(&[
        lift_formula(&phi_i.clone().not(), i, width, alphabet)?,
        lift_formula(&phi_k.clone().not(), k, width, alphabet)?,
    ])?;
    hba_union(&both, &neither)
}

/// `[φi](x_i) <!=> [φk](x_k)`.
pub fn nequiv_hba(
    phi_i: &LtlFormula,
    i: usize,
    phi_k: &LtlFormula,
    k: usize,
    width: usize,
    alphabet: &Alphabet,
) -> Result<Hba> {
    check_pair(i, k, width)?;
    let left = hba_intersection(&[
        lift_formula(phi_i, i, width, alphabet)?,
        lift_formula(&phi_k.clone().not(), k, width, alphabet)?,
    ])?;
    let right = hba_intersection(&[
        lift_formula(&phi_i.clone().not(), i, width, alphabet)?,
        lift_formula(phi_k, k, width, alphabet)?,
    ])?;
    hba_union(&left, &right)
}

/// Incremental builder for the constraint automata: edges are given by the
/// constraints on slots `i` and `k`, all other slots are unconstrained.
struct PairBuilder {
    alphabet: Alphabet,
    width: usize,
    i: usize,
    k: usize,
    names: Vec<String>,
    accepting: Vec<bool>,
    edges: Vec<Vec<(Label, usize)>>,
}

impl PairBuilder {
    fn new(alphabet: &Alphabet, width: usize, i: usize, k: usize) -> Self {
        PairBuilder {
            alphabet: alphabet.clone(),
            width,
            i,
            k,
            names: Vec::new(),
            accepting: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn state(&mut self, name: String, accepting: bool) -> usize {
        self.names.push(name);
        self.accepting.push(accepting);
        self.edges.push(Vec::new());
        self.names.len() - 1
    }

    fn edge(&mut self, from: usize, ci: SlotConstraint, ck: SlotConstraint, to: usize) {
        let mut label = vec![SlotConstraint::any(&self.alphabet); self.width];
        label[self.i] = ci;
        label[self.k] = ck;
        if label_satisfiable(&label) {
            self.edges[from].push((label, to));
        }
    }

    fn finish(self, initial: usize) -> Hba {
        Hba {
            alphabet: self.alphabet,
            width: self.width,
            initial,
            accepting: self.accepting,
            edges: self.edges,
            names: self.names,
        }
    }
}

/// `x_i ={A} x_k`: the A-projections of the two traces coincide.
///
/// The automaton lets one side run ahead by at most one A-letter. States
/// `e1` (accepting) and `e2` mean neither side is ahead; `aL`/`aR` mean the
/// left/right side has read `a` that the other side has not matched yet.
pub fn eq_hba(i: usize, k: usize, set: LetterSet, width: usize, alphabet: &Alphabet) -> Result<Hba> {
    check_pair(i, k, width)?;
    if set.is_empty() {
        return Err(LprlError::EmptyLetterSet);
    }
    let abar = alphabet.complement(set);
    let letters = SlotConstraint::letters;
    let or_eps = SlotConstraint::letters_or_pause;
    let eps = SlotConstraint::pause_only();
    let fmt = |a| alphabet.format_letter(a);

    let mut b = PairBuilder::new(alphabet, width, i, k);
    let e1 = b.state("e1".into(), true);
    let e2 = b.state("e2".into(), false);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in set.iter() {
        left.push([b.state(format!("{}L,1", fmt(a)), false), b.state(format!("{}L,2", fmt(a)), false)]);
        right.push([b.state(format!("{}R,1", fmt(a)), false), b.state(format!("{}R,2", fmt(a)), false)]);
    }

    for e in [e1, e2] {
        b.edge(e, letters(abar), letters(abar), e1);
        b.edge(e, letters(abar), eps, e1);
        b.edge(e, eps, letters(abar), e1);
        b.edge(e, eps, eps, e2);
        for (n, a) in set.iter().enumerate() {
            let sa = LetterSet::singleton(a);
            b.edge(e, letters(sa), letters(sa), e1);
            b.edge(e, letters(sa), or_eps(abar), left[n][1]);
            b.edge(e, or_eps(abar), letters(sa), right[n][0]);
        }
    }
    for (n, a) in set.iter().enumerate() {
        let sa = LetterSet::singleton(a);
        for c in 0..2 {
            let (l, r) = (left[n][c], right[n][c]);
            // Left is ahead by `a`: the left side may only read non-A letters.
            b.edge(l, or_eps(abar), letters(sa), e1);
            b.edge(l, letters(abar), letters(abar), left[n][1 - c]);
            b.edge(l, letters(abar), eps, left[n][1]);
            b.edge(l, eps, letters(abar), left[n][0]);
            b.edge(l, eps, eps, l);
            b.edge(r, letters(sa), or_eps(abar), e1);
            b.edge(r, letters(abar), letters(abar), right[n][1 - c]);
            b.edge(r, eps, letters(abar), right[n][0]);
            b.edge(r, letters(abar), eps, right[n][1]);
            b.edge(r, eps, eps, r);
        }
    }
    Ok(b.finish(e1))
}

/// `x_i !={A} x_k`: the A-projections differ.
///
/// A difference is either a position where both projections have different
/// letters (detected in `e`/`aL`/`aR`, leading to the flag states `f*`) or
/// one projection being a proper prefix of the other. The latter is guessed
/// by moving to `hL`/`hR`, after which the shorter side never reads an
/// A-letter again.
pub fn neq_hba(i: usize, k: usize, set: LetterSet, width: usize, alphabet: &Alphabet) -> Result<Hba> {
    check_pair(i, k, width)?;
    if set.is_empty() {
        return Err(LprlError::EmptyLetterSet);
    }
    let all = alphabet.all();
    let abar = alphabet.complement(set);
    let letters = SlotConstraint::letters;
    let or_eps = SlotConstraint::letters_or_pause;
    let eps = SlotConstraint::pause_only();
    let any = SlotConstraint::any(alphabet);
    let fmt = |a| alphabet.format_letter(a);

    let mut b = PairBuilder::new(alphabet, width, i, k);
    let e = b.state("e".into(), false);
    let f11 = b.state("f1,1".into(), true);
    let f12 = b.state("f1,2".into(), false);
    let f21 = b.state("f2,1".into(), false);
    let hl = b.state("hL".into(), true);
    let hr = b.state("hR".into(), true);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in set.iter() {
        left.push(b.state(format!("{}L", fmt(a)), false));
        right.push(b.state(format!("{}R", fmt(a)), false));
    }

    b.edge(e, or_eps(abar), or_eps(abar), e);
    for (n, a) in set.iter().enumerate() {
        let sa = LetterSet::singleton(a);
        let others = set.minus(sa);
        b.edge(e, letters(sa), letters(sa), e);
        b.edge(e, letters(sa), or_eps(abar), left[n]);
        b.edge(e, or_eps(abar), letters(sa), right[n]);
        b.edge(e, letters(sa), letters(others), f11);

        b.edge(left[n], or_eps(abar), letters(sa), e);
        b.edge(left[n], or_eps(abar), letters(others), f11);
        b.edge(left[n], or_eps(abar), or_eps(abar), left[n]);
        b.edge(left[n], any, or_eps(abar), hl);

        b.edge(right[n], letters(sa), or_eps(abar), e);
        b.edge(right[n], letters(others), or_eps(abar), f11);
        b.edge(right[n], or_eps(abar), or_eps(abar), right[n]);
        b.edge(right[n], or_eps(abar), any, hr);
    }
    b.edge(hl, any, or_eps(abar), hl);
    b.edge(hr, or_eps(abar), any, hr);

    b.edge(f11, eps, any, f21);
    b.edge(f11, letters(all), any, f12);
    b.edge(f12, any, eps, f12);
    b.edge(f12, any, letters(all), f11);
    b.edge(f21, eps, any, f21);
    b.edge(f21, letters(all), any, f12);
    Ok(b.finish(e))
}
