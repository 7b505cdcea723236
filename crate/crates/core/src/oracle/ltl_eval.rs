use std::collections::HashMap;

use super::lasso::LassoWord;
use crate::formula::LtlFormula;

/// Truth value of `φ` at every canonical position of `w`.
fn label(phi: &LtlFormula, w: &LassoWord) -> Vec<bool> {
    let n = w.positions();
    match phi {
        LtlFormula::Atom(set) => (0..n).map(|p| set.contains(w.at(p))).collect(),
        LtlFormula::Not(a) => label(a, w).into_iter().map(|b| !b).collect(),
        LtlFormula::Or(a, b) => {
            let (a, b) = (label(a, w), label(b, w));
            a.iter().zip(&b).map(|(x, y)| *x || *y).collect()
        }
        LtlFormula::And(a, b) => {
            let (a, b) = (label(a, w), label(b, w));
            a.iter().zip(&b).map(|(x, y)| *x && *y).collect()
        }
        LtlFormula::Next(a) => {
            let a = label(a, w);
            (0..n).map(|p| a[w.succ(p)]).collect()
        }
        LtlFormula::Until(a, b) => {
            let (a, b) = (label(a, w), label(b, w));
            // Least fixpoint of v = b | (a & X v).
            let mut v = b.clone();
            loop {
                let mut changed = false;
                for p in (0..n).rev() {
                    if !v[p] && a[p] && v[w.succ(p)] {
                        v[p] = true;
                        changed = true;
                    }
                }
                if !changed {
                    return v;
                }
            }
        }
    }
}

/// `w ⊨ φ`, by labelling the positions of the lasso.
pub fn eval_ltl_lasso(phi: &LtlFormula, w: &LassoWord) -> bool {
    label(phi, w)[0]
}

/// Independent reference evaluator: memoized recursion over absolute
/// positions, each Until scanned for at most one period of distinct positions.
pub fn eval_ltl_lasso_unrolled(phi: &LtlFormula, w: &LassoWord) -> bool {
    let mut memo = HashMap::new();
    eval_at(phi, w, 0, &mut memo)
}

fn eval_at(
    phi: &LtlFormula,
    w: &LassoWord,
    k: usize,
    memo: &mut HashMap<(*const LtlFormula, usize), bool>,
) -> bool {
    let k = w.canonical(k);
    let key = (phi as *const LtlFormula, k);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let v = match phi {
        LtlFormula::Atom(set) => set.contains(w.at(k)),
        LtlFormula::Not(a) => !eval_at(a, w, k, memo),
        LtlFormula::Or(a, b) => eval_at(a, w, k, memo) || eval_at(b, w, k, memo),
        LtlFormula::And(a, b) => eval_at(a, w, k, memo) && eval_at(b, w, k, memo),
        LtlFormula::Next(a) => eval_at(a, w, k + 1, memo),
        LtlFormula::Until(a, b) => {
            let mut result = false;
            for j in k..k + w.positions() {
                if eval_at(b, w, j, memo) {
                    result = true;
                    break;
                }
                if !eval_at(a, w, j, memo) {
                    break;
                }
            }
            result
        }
    };
    memo.insert(key, v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_ltl, Alphabet};

    #[test]
    fn until_semantics() {
        let a = Alphabet::new(&["p"]).unwrap();
        let phi = parse_ltl("true U {p}", &a).unwrap();
        let yes = LassoWord::parse("{}{};{p}", &a).unwrap();
        let no = LassoWord::parse("{}{};{}", &a).unwrap();
        for f in [eval_ltl_lasso, eval_ltl_lasso_unrolled] {
            assert!(f(&phi, &yes));
            assert!(!f(&phi, &no));
        }
    }

    #[test]
    fn always_eventually() {
        let a = Alphabet::new(&["p"]).unwrap();
        let gf = parse_ltl("G F p", &a).unwrap();
        let fg = parse_ltl("F G p", &a).unwrap();
        let w = LassoWord::parse("{p}{p};{}{p}", &a).unwrap();
        assert!(eval_ltl_lasso(&gf, &w));
        assert!(!eval_ltl_lasso(&fg, &w));
        assert!(eval_ltl_lasso_unrolled(&gf, &w));
        assert!(!eval_ltl_lasso_unrolled(&fg, &w));
    }

    #[test]
    fn next_wraps_to_loop_start() {
        let a = Alphabet::new(&["p"]).unwrap();
        let phi = parse_ltl("X X {p}", &a).unwrap();
        let w = LassoWord::parse("{};{}{p}", &a).unwrap();
        assert!(eval_ltl_lasso(&phi, &w));
        let phi3 = parse_ltl("X X X {p}", &a).unwrap();
        assert!(!eval_ltl_lasso(&phi3, &w));
    }
}
