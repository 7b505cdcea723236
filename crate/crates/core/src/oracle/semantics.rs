use std::collections::HashMap;

use super::lasso::LassoWord;
use super::ltl_eval::eval_ltl_lasso;
use super::projection::{project_lasso, words_equal};
use crate::error::{LprlError, Result};
use crate::formula::{AtomicFormula, Clause, NormalSentence, Quantifier, RawFormula, RawSentence};

fn proj_eq(u: &LassoWord, v: &LassoWord, set: crate::formula::LetterSet) -> Result<bool> {
    Ok(words_equal(&project_lasso(u, set)?, &project_lasso(v, set)?))
}

/// Truth of one atomic formula on a trace tuple.
pub fn eval_atom(atom: &AtomicFormula, tuple: &[LassoWord]) -> Result<bool> {
    for &s in &atom.slots() {
        if s >= tuple.len() {
            return Err(LprlError::SlotOutOfRange { slot: s, width: tuple.len() });
        }
    }
    Ok(match atom {
        AtomicFormula::True => true,
        AtomicFormula::False => false,
        AtomicFormula::Unary { phi, slot } => eval_ltl_lasso(phi, &tuple[*slot]),
        AtomicFormula::Equiv { left, i, right, k } => {
            eval_ltl_lasso(left, &tuple[*i]) == eval_ltl_lasso(right, &tuple[*k])
        }
        AtomicFormula::NotEquiv { left, i, right, k } => {
            eval_ltl_lasso(left, &tuple[*i]) != eval_ltl_lasso(right, &tuple[*k])
        }
        AtomicFormula::Eq { i, k, set } => proj_eq(&tuple[*i], &tuple[*k], *set)?,
        AtomicFormula::Neq { i, k, set } => !proj_eq(&tuple[*i], &tuple[*k], *set)?,
    })
}

/// Disjunction over clauses of the conjunction of their atoms.
pub fn eval_matrix(matrix: &[Clause], tuple: &[LassoWord]) -> Result<bool> {
    for clause in matrix {
        let mut all = true;
        for atom in clause {
            if !eval_atom(atom, tuple)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check_models(n: usize, models: &[Vec<LassoWord>]) -> Result<()> {
    if models.len() != n {
        return Err(LprlError::Arity { expected: n, got: models.len() });
    }
    if let Some(i) = models.iter().position(|m| m.is_empty()) {
        return Err(LprlError::Precondition(format!("model set {i} is empty")));
    }
    Ok(())
}

/// Evaluates the sentence with variable `i` ranging over `models[i]`.
pub fn eval_sentence_finite(s: &NormalSentence, models: &[Vec<LassoWord>]) -> Result<bool> {
    check_models(s.width(), models)?;
    let mut tuple = Vec::with_capacity(s.width());
    eval_prefix(s, models, &mut tuple)
}

fn eval_prefix(s: &NormalSentence, models: &[Vec<LassoWord>], tuple: &mut Vec<LassoWord>) -> Result<bool> {
    let i = tuple.len();
    if i == s.width() {
        return eval_matrix(&s.matrix, tuple);
    }
    let want = s.prefix.quantifier(i) == Quantifier::Exists;
    for w in &models[i] {
        tuple.push(w.clone());
        let v = eval_prefix(s, models, tuple)?;
        tuple.pop();
        if v == want {
            return Ok(want);
        }
    }
    Ok(!want)
}

/// Evaluates a raw sentence directly, without normalizing it. Bound
/// variables are matched to `models` in textual order.
pub fn eval_raw_finite(raw: &RawSentence, models: &[Vec<LassoWord>]) -> Result<bool> {
    let vars = raw.formula.check_closed()?;
    check_models(vars.len(), models)?;
    let domain: HashMap<&str, &[LassoWord]> =
        vars.iter().map(String::as_str).zip(models.iter().map(Vec::as_slice)).collect();
    let mut env = HashMap::new();
    eval_raw(&raw.formula, &domain, &mut env)
}

fn eval_raw<'a>(
    f: &'a RawFormula,
    domain: &HashMap<&str, &'a [LassoWord]>,
    env: &mut HashMap<&'a str, &'a LassoWord>,
) -> Result<bool> {
    Ok(match f {
        RawFormula::True => true,
        RawFormula::False => false,
        RawFormula::Pred { phi, var } => eval_ltl_lasso(phi, env[var.as_str()]),
        RawFormula::Equiv { left, lvar, right, rvar, negated } => {
            let same = eval_ltl_lasso(left, env[lvar.as_str()]) == eval_ltl_lasso(right, env[rvar.as_str()]);
            same != *negated
        }
        RawFormula::ProjEq { left, set, right, negated } => {
            proj_eq(env[left.as_str()], env[right.as_str()], *set)? != *negated
        }
        RawFormula::Not(a) => !eval_raw(a, domain, env)?,
        RawFormula::And(a, b) => eval_raw(a, domain, env)? && eval_raw(b, domain, env)?,
        RawFormula::Or(a, b) => eval_raw(a, domain, env)? || eval_raw(b, domain, env)?,
        RawFormula::Implies(a, b) => !eval_raw(a, domain, env)? || eval_raw(b, domain, env)?,
        RawFormula::Quant { q, var, body } => {
            let want = *q == Quantifier::Exists;
            let mut result = !want;
            for w in domain[var.as_str()] {
                env.insert(var.as_str(), w);
                if eval_raw(body, domain, env)? == want {
                    result = want;
                    break;
                }
            }
            env.remove(var.as_str());
            result
        }
    })
}
