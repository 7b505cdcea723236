//! Seeded generators for formulas, lassos, sentences and Kripke structures.
//!
//! The seed comes from `LPRL_SEED` when set, so randomized test corpora are
//! reproducible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{
    Alphabet, AtomicFormula, Clause, Letter, LetterSet, LtlFormula, Quantifier, RawFormula, RawSentence,
};
use crate::kripke::Kripke;
use crate::oracle::LassoWord;

pub type TestRng = ChaCha8Rng;

/// `LPRL_SEED` if set and numeric, otherwise `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("LPRL_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform subset of Σ, possibly empty.
pub fn random_letter_set(rng: &mut TestRng, alphabet: &Alphabet) -> LetterSet {
    LetterSet(rng.gen::<u64>() & alphabet.all().0)
}

pub fn random_nonempty_letter_set(rng: &mut TestRng, alphabet: &Alphabet) -> LetterSet {
    loop {
        let s = random_letter_set(rng, alphabet);
        if !s.is_empty() {
            return s;
        }
    }
}

/// Random formula with at most `max_size` AST nodes.
pub fn random_ltl(rng: &mut TestRng, alphabet: &Alphabet, max_size: usize) -> LtlFormula {
    let size = rng.gen_range(1..=max_size.max(1));
    ltl_of_size(rng, alphabet, size)
}

fn ltl_of_size(rng: &mut TestRng, alphabet: &Alphabet, size: usize) -> LtlFormula {
    if size <= 1 {
        let letters: Vec<Letter> = alphabet.letters().collect();
        return match rng.gen_range(0..4) {
            0 => LtlFormula::letter(*letters.choose(rng).expect("non-empty alphabet")),
            1 => {
                let p = alphabet.props().choose(rng).expect("non-empty alphabet");
                LtlFormula::Atom(alphabet.letters_with(p).expect("known prop"))
            }
            _ => LtlFormula::Atom(random_letter_set(rng, alphabet)),
        };
    }
    if size == 2 || rng.gen_bool(0.3) {
        let a = ltl_of_size(rng, alphabet, size - 1);
        return if rng.gen_bool(0.5) { a.not() } else { a.next() };
    }
    let left = rng.gen_range(1..size - 1);
    let a = ltl_of_size(rng, alphabet, left);
    let b = ltl_of_size(rng, alphabet, size - 1 - left);
    match rng.gen_range(0..3) {
        0 => a.or(b),
        1 => a.and(b),
        _ => a.until(b),
    }
}

fn random_letters(rng: &mut TestRng, pool: &[Letter], len: usize) -> Vec<Letter> {
    (0..len).map(|_| *pool.choose(rng).expect("non-empty pool")).collect()
}

/// Lasso over `alphabet` with `|stem| <= max_stem`, `1 <= |loop| <= max_loop`.
pub fn random_lasso(rng: &mut TestRng, alphabet: &Alphabet, max_stem: usize, max_loop: usize) -> LassoWord {
    let pool: Vec<Letter> = alphabet.letters().collect();
    random_lasso_over(rng, &pool, max_stem, max_loop)
}

/// Lasso whose letters are drawn from `pool`.
pub fn random_lasso_over(rng: &mut TestRng, pool: &[Letter], max_stem: usize, max_loop: usize) -> LassoWord {
    let s = rng.gen_range(0..=max_stem);
    let l = rng.gen_range(1..=max_loop.max(1));
    LassoWord::new(random_letters(rng, pool, s), random_letters(rng, pool, l)).expect("non-empty loop")
}

pub fn random_tuple(rng: &mut TestRng, alphabet: &Alphabet, width: usize, max_stem: usize, max_loop: usize) -> Vec<LassoWord> {
    (0..width).map(|_| random_lasso(rng, alphabet, max_stem, max_loop)).collect()
}

/// Pair of lassos that agree on their `set`-projection more often than
/// independent sampling would: the second word is the first with letters
/// outside `set` inserted, replaced or dropped at random.
pub fn random_related_pair(rng: &mut TestRng, alphabet: &Alphabet, set: LetterSet, max_stem: usize, max_loop: usize) -> (LassoWord, LassoWord) {
    let u = random_lasso(rng, alphabet, max_stem, max_loop);
    let outside: Vec<Letter> = alphabet.letters().filter(|&l| !set.contains(l)).collect();
    let perturb = |ls: &[Letter], rng: &mut TestRng| -> Vec<Letter> {
        let mut out = Vec::new();
        for &l in ls {
            if !outside.is_empty() && rng.gen_bool(0.3) {
                out.push(*outside.choose(rng).expect("non-empty"));
            }
            if set.contains(l) || outside.is_empty() || rng.gen_bool(0.5) {
                out.push(l);
            } else {
                out.push(*outside.choose(rng).expect("non-empty"));
            }
        }
        out
    };
    let stem = perturb(&u.stem, rng);
    let mut cycle = perturb(&u.cycle, rng);
    if cycle.is_empty() {
        cycle.push(u.cycle[0]);
    }
    let v = LassoWord::new(stem, cycle).expect("non-empty loop");
    if rng.gen_bool(0.5) {
        (u, v)
    } else {
        (v, u)
    }
}

fn random_atom_raw(rng: &mut TestRng, alphabet: &Alphabet, scope: &[String]) -> RawFormula {
    let var = |rng: &mut TestRng| scope.choose(rng).expect("non-empty scope").clone();
    match rng.gen_range(0..5) {
        0 | 1 => RawFormula::Pred { phi: random_ltl(rng, alphabet, 4), var: var(rng) },
        2 => RawFormula::Equiv {
            left: random_ltl(rng, alphabet, 3),
            lvar: var(rng),
            right: random_ltl(rng, alphabet, 3),
            rvar: var(rng),
            negated: rng.gen_bool(0.5),
        },
        3 => RawFormula::ProjEq {
            left: var(rng),
            set: random_nonempty_letter_set(rng, alphabet),
            right: var(rng),
            negated: rng.gen_bool(0.5),
        },
        _ => {
            if rng.gen_bool(0.5) {
                RawFormula::True
            } else {
                RawFormula::False
            }
        }
    }
}

fn random_raw_formula(
    rng: &mut TestRng,
    alphabet: &Alphabet,
    scope: &mut Vec<String>,
    unbound: &mut Vec<String>,
    depth: usize,
) -> RawFormula {
    if !unbound.is_empty() && (scope.is_empty() || rng.gen_bool(0.5)) {
        let v = unbound.remove(0);
        scope.push(v.clone());
        let q = if rng.gen_bool(0.5) { Quantifier::Exists } else { Quantifier::Forall };
        let body = random_raw_formula(rng, alphabet, scope, unbound, depth);
        scope.pop();
        return RawFormula::Quant { q, var: v, body: Box::new(body) };
    }
    if depth == 0 || rng.gen_bool(0.25) {
        return random_atom_raw(rng, alphabet, scope);
    }
    match rng.gen_range(0..4) {
        0 => RawFormula::Not(Box::new(random_raw_formula(rng, alphabet, scope, unbound, depth - 1))),
        k => {
            let a = random_raw_formula(rng, alphabet, scope, unbound, depth - 1);
            let b = random_raw_formula(rng, alphabet, scope, unbound, depth - 1);
            match k {
                1 => RawFormula::And(Box::new(a), Box::new(b)),
                2 => RawFormula::Or(Box::new(a), Box::new(b)),
                _ => RawFormula::Implies(Box::new(a), Box::new(b)),
            }
        }
    }
}

/// Closed sentence with `vars` distinct bound variables, quantifiers
/// possibly nested under connectives.
pub fn random_raw_sentence(rng: &mut TestRng, alphabet: &Alphabet, vars: usize) -> RawSentence {
    loop {
        let mut unbound: Vec<String> = (0..vars).map(|i| format!("x{i}")).collect();
        let f = random_raw_formula(rng, alphabet, &mut Vec::new(), &mut unbound, 3);
        if unbound.is_empty() && f.check_closed().is_ok() {
            return RawSentence { alphabet: alphabet.clone(), formula: f };
        }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

/// Random cycle-free clause over `width` slots.
pub fn random_clause(rng: &mut TestRng, alphabet: &Alphabet, width: usize, max_atoms: usize, ltl_size: usize) -> Clause {
    let mut parent: Vec<usize> = (0..width).collect();
    let atoms = rng.gen_range(1..=max_atoms.max(1));
    let mut clause = Vec::with_capacity(atoms);
    for _ in 0..atoms {
        let slot = rng.gen_range(0..width);
        let other = if width > 1 {
            let o = rng.gen_range(0..width - 1);
            if o >= slot {
                o + 1
            } else {
                o
            }
        } else {
            slot
        };
        let kind = rng.gen_range(0..if width > 1 { 6 } else { 2 });
        let atom = match kind {
            0 | 1 => AtomicFormula::Unary { phi: random_ltl(rng, alphabet, ltl_size), slot },
            2 => AtomicFormula::Equiv {
                left: random_ltl(rng, alphabet, ltl_size),
                i: slot,
                right: random_ltl(rng, alphabet, ltl_size),
                k: other,
            },
            3 => AtomicFormula::NotEquiv {
                left: random_ltl(rng, alphabet, ltl_size),
                i: slot,
                right: random_ltl(rng, alphabet, ltl_size),
                k: other,
            },
            _ => {
                let (ra, rb) = (find(&mut parent, slot), find(&mut parent, other));
                if ra == rb {
                    AtomicFormula::Unary { phi: random_ltl(rng, alphabet, ltl_size), slot }
                } else {
                    parent[ra] = rb;
                    let set = random_nonempty_letter_set(rng, alphabet);
                    if kind == 4 {
                        AtomicFormula::Eq { i: slot, k: other, set }
                    } else {
                        AtomicFormula::Neq { i: slot, k: other, set }
                    }
                }
            }
        };
        clause.push(atom);
    }
    clause
}

pub fn random_matrix(
    rng: &mut TestRng,
    alphabet: &Alphabet,
    width: usize,
    max_clauses: usize,
    max_atoms: usize,
    ltl_size: usize,
) -> Vec<Clause> {
    let n = rng.gen_range(1..=max_clauses.max(1));
    (0..n).map(|_| random_clause(rng, alphabet, width, max_atoms, ltl_size)).collect()
}

/// Random structure in which every state has exactly one successor.
pub fn random_deterministic_kripke(rng: &mut TestRng, alphabet: &Alphabet, max_states: usize) -> Kripke {
    let n = rng.gen_range(1..=max_states.max(1));
    let succ = (0..n).map(|_| vec![rng.gen_range(0..n)]).collect();
    let label = (0..n).map(|_| rng.gen_range(0..alphabet.num_letters()) as Letter).collect();
    Kripke::new(alphabet, (0..n).map(|i| format!("s{i}")).collect(), 0, succ, label).expect("valid structure")
}

/// Random total structure with up to `max_out` successors per state.
pub fn random_kripke(rng: &mut TestRng, alphabet: &Alphabet, max_states: usize, max_out: usize) -> Kripke {
    let n = rng.gen_range(1..=max_states.max(1));
    let succ = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=max_out.max(1));
            (0..k).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();
    let label = (0..n).map(|_| rng.gen_range(0..alphabet.num_letters()) as Letter).collect();
    Kripke::new(alphabet, (0..n).map(|i| format!("s{i}")).collect(), 0, succ, label).expect("valid structure")
}
