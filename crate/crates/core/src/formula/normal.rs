use serde::{Deserialize, Serialize};

use super::alphabet::{Alphabet, LetterSet};
use super::ltl::LtlFormula;
use super::sentence::{Quantifier, RawFormula, RawSentence};
use crate::error::{LprlError, Result};

/// Atomic formulas of the normal form. Slots are 0-based positions in the
/// quantifier prefix.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum AtomicFormula {
    True,
    False,
    Unary { phi: LtlFormula, slot: usize },
    Equiv { left: LtlFormula, i: usize, right: LtlFormula, k: usize },
    NotEquiv { left: LtlFormula, i: usize, right: LtlFormula, k: usize },
    Eq { i: usize, k: usize, set: LetterSet },
    Neq { i: usize, k: usize, set: LetterSet },
}

impl AtomicFormula {
    /// The (unordered) variable pair of a projection constraint.
    pub fn constraint_edge(&self) -> Option<(usize, usize)> {
        match self {
            AtomicFormula::Eq { i, k, .. } | AtomicFormula::Neq { i, k, .. } => {
                Some((*i.min(k), *i.max(k)))
            }
            _ => None,
        }
    }

    pub fn slots(&self) -> Vec<usize> {
        match self {
            AtomicFormula::True | AtomicFormula::False => vec![],
            AtomicFormula::Unary { slot, .. } => vec![*slot],
            AtomicFormula::Equiv { i, k, .. }
            | AtomicFormula::NotEquiv { i, k, .. }
            | AtomicFormula::Eq { i, k, .. }
            | AtomicFormula::Neq { i, k, .. } => vec![*i, *k],
        }
    }

    fn negate(self, alphabet: &Alphabet) -> Self {
        let _ = alphabet;
        match self {
            AtomicFormula::True => AtomicFormula::False,
            AtomicFormula::False => AtomicFormula::True,
            AtomicFormula::Unary { phi, slot } => AtomicFormula::Unary { phi: phi.not(), slot },
            AtomicFormula::Equiv { left, i, right, k } => AtomicFormula::NotEquiv { left, i, right, k },
            AtomicFormula::NotEquiv { left, i, right, k } => AtomicFormula::Equiv { left, i, right, k },
            AtomicFormula::Eq { i, k, set } => AtomicFormula::Neq { i, k, set },
            AtomicFormula::Neq { i, k, set } => AtomicFormula::Eq { i, k, set },
        }
    }

    fn to_raw(&self, vars: &[String]) -> RawFormula {
        match self {
            AtomicFormula::True => RawFormula::True,
            AtomicFormula::False => RawFormula::False,
            AtomicFormula::Unary { phi, slot } => {
                RawFormula::Pred { phi: phi.clone(), var: vars[*slot].clone() }
            }
            AtomicFormula::Equiv { left, i, right, k } | AtomicFormula::NotEquiv { left, i, right, k } => {
                RawFormula::Equiv {
                    left: left.clone(),
                    lvar: vars[*i].clone(),
                    right: right.clone(),
                    rvar: vars[*k].clone(),
                    negated: matches!(self, AtomicFormula::NotEquiv { .. }),
                }
            }
            AtomicFormula::Eq { i, k, set } | AtomicFormula::Neq { i, k, set } => RawFormula::ProjEq {
                left: vars[*i].clone(),
                set: *set,
                right: vars[*k].clone(),
                negated: matches!(self, AtomicFormula::Neq { .. }),
            },
        }
    }
}

pub type Clause = Vec<AtomicFormula>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct QuantifierPrefix {
    pub vars: Vec<(String, Quantifier)>,
}

impl QuantifierPrefix {
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn quantifier(&self, slot: usize) -> Quantifier {
        self.vars[slot].1
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn slot_of(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|(v, _)| v == var)
    }

    /// Length of the maximal prefix of existential variables.
    pub fn exists_prefix_len(&self) -> usize {
        self.vars.iter().take_while(|(_, q)| *q == Quantifier::Exists).count()
    }
}

/// Prenex sentence with a DNF matrix: disjunction of clauses, each a
/// conjunction of atomic formulas.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NormalSentence {
    pub alphabet: Alphabet,
    pub prefix: QuantifierPrefix,
    pub matrix: Vec<Clause>,
}

impl NormalSentence {
    /// Number of variables (tuple width).
    pub fn width(&self) -> usize {
        self.prefix.len()
    }

    /// The same sentence rendered back as a raw AST.
    pub fn to_raw(&self) -> RawSentence {
        let vars = self.prefix.names();
        let clause_raw = |c: &Clause| {
            c.iter()
                .map(|a| a.to_raw(&vars))
                .reduce(|a, b| RawFormula::And(Box::new(a), Box::new(b)))
                .unwrap_or(RawFormula::True)
        };
        let mut body = self
            .matrix
            .iter()
            .map(clause_raw)
            .reduce(|a, b| RawFormula::Or(Box::new(a), Box::new(b)))
            .unwrap_or(RawFormula::False);
        // Simplification may drop every atom of a variable; a vacuous
        // conjunct keeps the rendered sentence closed.
        for (slot, var) in vars.iter().enumerate() {
            if !self.matrix.iter().flatten().any(|a| a.slots().contains(&slot)) {
                let pred = RawFormula::Pred { phi: LtlFormula::top(&self.alphabet), var: var.clone() };
                body = RawFormula::And(Box::new(body), Box::new(pred));
            }
        }
        for (var, q) in self.prefix.vars.iter().rev() {
            body = RawFormula::Quant { q: *q, var: var.clone(), body: Box::new(body) };
        }
        RawSentence { alphabet: self.alphabet.clone(), formula: body }
    }

    /// Concrete syntax, header included.
    pub fn display(&self) -> String {
        self.to_raw().display()
    }

    /// Copy with the quantifier of `slot` flipped.
    pub fn with_flipped_quantifier(&self, slot: usize) -> Self {
        let mut s = self.clone();
        s.prefix.vars[slot].1 = s.prefix.vars[slot].1.flip();
        s
    }
}

/// Negation normal form over sentence-level connectives, with quantifiers
/// still in place.
enum Nnf {
    Atom(AtomicFormula),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
    Quant(Quantifier, String, Box<Nnf>),
}

struct Normalizer<'a> {
    alphabet: &'a Alphabet,
    vars: Vec<String>,
}

impl Normalizer<'_> {
    fn slot(&self, var: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| LprlError::FreeVariable(var.to_string()))
    }

    fn atom(&self, f: &RawFormula) -> Result<AtomicFormula> {
        Ok(match f {
            RawFormula::True => AtomicFormula::True,
            RawFormula::False => AtomicFormula::False,
            RawFormula::Pred { phi, var } => AtomicFormula::Unary { phi: phi.clone(), slot: self.slot(var)? },
            RawFormula::Equiv { left, lvar, right, rvar, negated } => {
                let (i, k) = (self.slot(lvar)?, self.slot(rvar)?);
                if i == k {
                    // Both sides talk about the same trace: fold into one LTL formula.
                    let same = left.clone().and(right.clone()).or(left.clone().not().and(right.clone().not()));
                    let phi = if *negated { same.not() } else { same };
                    AtomicFormula::Unary { phi, slot: i }
                } else if *negated {
                    AtomicFormula::NotEquiv { left: left.clone(), i, right: right.clone(), k }
                } else {
                    AtomicFormula::Equiv { left: left.clone(), i, right: right.clone(), k }
                }
            }
            RawFormula::ProjEq { left, set, right, negated } => {
                if set.is_empty() {
                    return Err(LprlError::EmptyLetterSet);
                }
                let (i, k) = (self.slot(left)?, self.slot(right)?);
                match (i == k, negated) {
                    (true, false) => AtomicFormula::True,
                    (true, true) => AtomicFormula::False,
                    (false, false) => AtomicFormula::Eq { i, k, set: *set },
                    (false, true) => AtomicFormula::Neq { i, k, set: *set },
                }
            }
            _ => unreachable!("not an atom"),
        })
    }

    fn nnf(&self, f: &RawFormula, negate: bool) -> Result<Nnf> {
        Ok(match f {
            RawFormula::Not(a) => self.nnf(a, !negate)?,
            RawFormula::And(a, b) | RawFormula::Or(a, b) => {
                let parts = vec![self.nnf(a, negate)?, self.nnf(b, negate)?];
                if matches!(f, RawFormula::And(..)) != negate {
                    Nnf::And(parts)
                } else {
                    Nnf::Or(parts)
                }
            }
            RawFormula::Implies(a, b) => {
                let parts = vec![self.nnf(a, !negate)?, self.nnf(b, negate)?];
                if negate {
                    Nnf::And(parts)
                } else {
                    Nnf::Or(parts)
                }
            }
            RawFormula::Quant { q, var, body } => {
                let q = if negate { q.flip() } else { *q };
                Nnf::Quant(q, var.clone(), Box::new(self.nnf(body, negate)?))
            }
            atom => {
                let a = self.atom(atom)?;
                Nnf::Atom(if negate { a.negate(self.alphabet) } else { a })
            }
        })
    }
}

/// Hoists quantifiers in textual (pre-order) order. Variable names are
/// distinct, so no capture is possible.
fn strip_quantifiers(f: Nnf, prefix: &mut Vec<(String, Quantifier)>) -> Nnf {
    match f {
        Nnf::Quant(q, var, body) => {
            prefix.push((var, q));
            strip_quantifiers(*body, prefix)
        }
        Nnf::And(parts) => Nnf::And(parts.into_iter().map(|p| strip_quantifiers(p, prefix)).collect()),
        Nnf::Or(parts) => Nnf::Or(parts.into_iter().map(|p| strip_quantifiers(p, prefix)).collect()),
        atom => atom,
    }
}

fn dnf(f: Nnf) -> Vec<Clause> {
    match f {
        Nnf::Atom(a) => vec![vec![a]],
        Nnf::Or(parts) => parts.into_iter().flat_map(dnf).collect(),
        Nnf::And(parts) => {
            let mut acc: Vec<Clause> = vec![vec![]];
            for p in parts {
                let rhs = dnf(p);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for l in &acc {
                    for r in &rhs {
                        let mut c = l.clone();
                        c.extend(r.iter().cloned());
                        next.push(c);
                    }
                }
                acc = next;
            }
            acc
        }
        Nnf::Quant(..) => unreachable!("quantifiers are stripped before DNF"),
    }
}

fn dedup<T: PartialEq>(items: Vec<T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for x in items {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Prenex normal form with a DNF matrix. Implications are eliminated,
/// negations are pushed into the predicates, and quantifiers are hoisted in
/// textual order.
pub fn normalize(raw: &RawSentence) -> Result<NormalSentence> {
    let vars = raw.formula.check_closed()?;
    let norm = Normalizer { alphabet: &raw.alphabet, vars };
    let nnf = norm.nnf(&raw.formula, false)?;
    let mut prefix = Vec::new();
    let body = strip_quantifiers(nnf, &mut prefix);
    debug_assert_eq!(prefix.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>(), norm.vars);
    let matrix = dedup(dnf(body).into_iter().map(dedup).collect());
    Ok(NormalSentence {
        alphabet: raw.alphabet.clone(),
        prefix: QuantifierPrefix { vars: prefix },
        matrix,
    })
}
