use lprl_core::formula::{Alphabet, AtomicFormula, LetterSet};
use lprl_core::hba::{eq_hba, hba_accepts_tuple, hba_intersection, hba_union, neq_hba};
use lprl_core::oracle::{eval_atom, eval_matrix};
use lprl_core::random::*;
use lprl_core::sat::{atom_hba, clause_hba};
use lprl_core::{ba_accepts_lasso, eval_ltl_lasso, ltl_to_ba, project_lasso, words_equal, LassoWord};

fn ap2() -> Alphabet {
    Alphabet::new(&["p", "q"]).unwrap()
}

#[test]
fn ltl_translation_matches_oracle() {
    let a = ap2();
    let mut r = rng(seed_from_env(1));
    for _ in 0..400 {
        let phi = random_ltl(&mut r, &a, 8);
        let ba = ltl_to_ba(&phi, &a);
        for _ in 0..5 {
            let w = random_lasso(&mut r, &a, 3, 3);
            assert_eq!(
                ba_accepts_lasso(&ba, &w),
                eval_ltl_lasso(&phi, &w),
                "{} on {}",
                phi.display(&a),
                w.display(&a)
            );
        }
    }
}

#[test]
fn equality_automata_match_projection() {
    let a = ap2();
    let mut r = rng(seed_from_env(2));
    for _ in 0..300 {
        let set = random_nonempty_letter_set(&mut r, &a);
        let (u, v) = if r_bool(&mut r) {
            random_related_pair(&mut r, &a, set, 3, 3)
        } else {
            (random_lasso(&mut r, &a, 3, 3), random_lasso(&mut r, &a, 3, 3))
        };
        let expect = words_equal(&project_lasso(&u, set).unwrap(), &project_lasso(&v, set).unwrap());
        let tuple = vec![u.clone(), v.clone()];
        let eq = hba_accepts_tuple(&eq_hba(0, 1, set, 2, &a).unwrap(), &tuple).unwrap();
        let neq = hba_accepts_tuple(&neq_hba(0, 1, set, 2, &a).unwrap(), &tuple).unwrap();
        let ctx = format!("{} {} A={}", u.display(&a), v.display(&a), a.format_set(set));
        assert_eq!(eq, expect, "eq {ctx}");
        assert_eq!(neq, !expect, "neq {ctx}");
    }
}

fn r_bool(r: &mut TestRng) -> bool {
    use rand::Rng;
    r.gen_bool(0.5)
}

#[test]
fn atom_and_clause_automata_match_oracle() {
    let a = ap2();
    let mut r = rng(seed_from_env(3));
    for _ in 0..150 {
        let width = 1 + (r_bool(&mut r) as usize) + (r_bool(&mut r) as usize);
        // Intersection is only exact when the combined clause is cycle-free,
        // so both halves come from one generated clause.
        let mut c1 = random_clause(&mut r, &a, width, 4, 4);
        let c2 = if c1.len() > 1 { c1.split_off(c1.len() / 2) } else { vec![AtomicFormula::True] };
        let b1 = clause_hba(&c1, width, &a).unwrap();
        let b2 = clause_hba(&c2, width, &a).unwrap();
        let u = hba_union(&b1, &b2).unwrap();
        let i = hba_intersection(&[b1.clone(), b2.clone()]).unwrap();
        for _ in 0..4 {
            let t = random_tuple(&mut r, &a, width, 2, 2);
            let e1 = eval_matrix(std::slice::from_ref(&c1), &t).unwrap();
            let e2 = eval_matrix(std::slice::from_ref(&c2), &t).unwrap();
            let shown: Vec<String> = t.iter().map(|w| w.display(&a)).collect();
            for atom in &c1 {
                let b = atom_hba(atom, width, &a).unwrap();
                assert_eq!(hba_accepts_tuple(&b, &t).unwrap(), eval_atom(atom, &t).unwrap(), "{atom:?} {shown:?}");
            }
            assert_eq!(hba_accepts_tuple(&b1, &t).unwrap(), e1, "{c1:?} {shown:?}");
            assert_eq!(hba_accepts_tuple(&u, &t).unwrap(), e1 || e2);
            assert_eq!(hba_accepts_tuple(&i, &t).unwrap(), e1 && e2);
        }
    }
}

#[test]
fn worked_equality_example() {
    // Σ over {a, b, a'}, letters named by their single proposition.
    let s = Alphabet::new(&["a", "b", "c"]).unwrap();
    let l = |p: &str| s.letter(&[p]).unwrap();
    let keep = LetterSet::singleton(l("a"));
    let u = LassoWord::new(vec![l("a"), l("a"), l("b"), l("b")], vec![l("c")]).unwrap();
    let v = LassoWord::new(vec![l("b"), l("b"), l("a"), l("a")], vec![l("b")]).unwrap();
    let eq = eq_hba(0, 1, keep, 2, &s).unwrap();
    assert!(hba_accepts_tuple(&eq, &[u.clone(), v.clone()]).unwrap());
    let atom = AtomicFormula::Eq { i: 0, k: 1, set: keep };
    assert!(eval_atom(&atom, &[u, v]).unwrap());
}
