use rand::Rng;

use lprl_core::formula::{Alphabet, AtomicFormula, LtlFormula, NormalSentence, Quantifier, QuantifierPrefix};
use lprl_core::hba::{hba_emptiness, hba_intersection, lift_ba};
use lprl_core::mc::{Generator, McOptions};
use lprl_core::random::*;
use lprl_core::{check_mc, deterministic_family_fastpath, ltl_to_ba, Kripke, KripkeFamily, LprlError, McVerdict};

/// Single-variable matrix as one LTL formula.
fn matrix_formula(s: &NormalSentence) -> LtlFormula {
    let top = LtlFormula::top(&s.alphabet);
    s.matrix
        .iter()
        .map(|c| {
            c.iter()
                .map(|a| match a {
                    AtomicFormula::Unary { phi, .. } => phi.clone(),
                    AtomicFormula::True => top.clone(),
                    AtomicFormula::False => LtlFormula::bottom(),
                    other => panic!("not a single-variable atom: {other:?}"),
                })
                .fold(top.clone(), LtlFormula::and)
        })
        .fold(LtlFormula::bottom(), LtlFormula::or)
}

/// Verdict of `Q x. φ(x)` on `k` from the emptiness of `K × B(φ)`.
fn single_variable_oracle(k: &Kripke, s: &NormalSentence) -> McVerdict {
    let phi = matrix_formula(s);
    let (phi, exists) = match s.prefix.quantifier(0) {
        Quantifier::Exists => (phi, true),
        Quantifier::Forall => (phi.not(), false),
    };
    let prod = hba_intersection(&[
        lift_ba(&k.trace_automaton(), 0, 1).unwrap(),
        lift_ba(&ltl_to_ba(&phi, &s.alphabet), 0, 1).unwrap(),
    ])
    .unwrap();
    let nonempty = hba_emptiness(&prod).is_some();
    if nonempty == exists {
        McVerdict::Holds
    } else {
        McVerdict::Fails
    }
}

fn random_sentence(r: &mut TestRng, a: &Alphabet, width: usize, max_atoms: usize) -> NormalSentence {
    let vars = (0..width)
        .map(|i| (format!("x{i}"), if r.gen_bool(0.5) { Quantifier::Exists } else { Quantifier::Forall }))
        .collect();
    NormalSentence {
        alphabet: a.clone(),
        prefix: QuantifierPrefix { vars },
        matrix: random_matrix(r, a, width, 2, max_atoms, 3),
    }
}

#[test]
fn deterministic_families_match_fastpath() {
    let a = Alphabet::new(&["p", "q"]).unwrap();
    let mut r = rng(seed_from_env(21));
    let opts = McOptions { verify: true, ..McOptions::default() };
    for case in 0..40 {
        let width = r.gen_range(1..=2);
        let fam = KripkeFamily::new((0..width).map(|_| random_deterministic_kripke(&mut r, &a, 3)).collect());
        let s = random_sentence(&mut r, &a, width, 2);
        let fast = deterministic_family_fastpath(&fam, &s).unwrap().verdict;
        let full = check_mc(&fam, &s, &opts).unwrap().verdict;
        assert_eq!(full, fast, "case {case}: {}", s.display());
    }
}

#[test]
fn single_variable_branching_matches_product_oracle() {
    let a = Alphabet::new(&["p", "q"]).unwrap();
    let mut r = rng(seed_from_env(23));
    let opts = McOptions { verify: true, ..McOptions::default() };
    for case in 0..200 {
        let k = random_kripke(&mut r, &a, 4, 3);
        let s = random_sentence(&mut r, &a, 1, 3);
        let got = check_mc(&KripkeFamily::new(vec![k.clone()]), &s, &opts).unwrap().verdict;
        assert_eq!(got, single_variable_oracle(&k, &s), "case {case}: {}", s.display());
    }
}

/// The literal coverage condition lets a sibling with a different automaton state
/// discharge a successor obligation, so the exhaustive generator can report
/// Holds where the product oracle says Fails. The reduced generator keeps
/// siblings on the same source. Every disagreement must be of that kind.
#[test]
fn reduced_generator_matches_baseline_on_tiny_instances() {
    let a = Alphabet::new(&["p"]).unwrap();
    let mut r = rng(seed_from_env(22));
    let base = McOptions { generator: Generator::Baseline { limit: 20_000 }, cap: 20_000, verify: true };
    let reduced = McOptions { verify: true, ..McOptions::default() };
    let mut compared = 0;
    for case in 0..2000 {
        let fam = KripkeFamily::new(vec![random_kripke(&mut r, &a, 2, 2)]);
        let s = random_sentence(&mut r, &a, 1, 1);
        let b = match check_mc(&fam, &s, &base) {
            Ok(res) => res.verdict,
            Err(LprlError::Precondition(_)) | Err(LprlError::CapExceeded(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        let red = check_mc(&fam, &s, &reduced).unwrap().verdict;
        if red != b {
            assert_eq!(b, McVerdict::Holds, "case {case}: {}", s.display());
            assert_eq!(red, single_variable_oracle(&fam.members[0], &s), "case {case}: {}", s.display());
        }
        compared += 1;
    }
    assert!(compared >= 50, "only {compared} instances small enough for the baseline");
}
