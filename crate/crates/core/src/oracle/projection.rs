use serde::{Deserialize, Serialize};

use super::lasso::LassoWord;
use crate::error::{LprlError, Result};
use crate::formula::{Letter, LetterSet};

/// Result of erasing letters from a lasso: finite if the loop is erased
/// entirely.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ProjectedWord {
    Finite(Vec<Letter>),
    Infinite(LassoWord),
}

/// Erases every letter outside `keep`.
pub fn project_lasso(w: &LassoWord, keep: LetterSet) -> Result<ProjectedWord> {
    if keep.is_empty() {
        return Err(LprlError::EmptyLetterSet);
    }
    let filter = |ls: &[Letter]| ls.iter().copied().filter(|&l| keep.contains(l)).collect::<Vec<_>>();
    let stem = filter(&w.stem);
    let cycle = filter(&w.cycle);
    Ok(if cycle.is_empty() {
        ProjectedWord::Finite(stem)
    } else {
        ProjectedWord::Infinite(LassoWord { stem, cycle })
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Equality of projected words. Two lassos are compared on a prefix long
/// enough to cover both stems and a common period.
pub fn words_equal(u: &ProjectedWord, v: &ProjectedWord) -> bool {
    match (u, v) {
        (ProjectedWord::Finite(a), ProjectedWord::Finite(b)) => a == b,
        (ProjectedWord::Infinite(a), ProjectedWord::Infinite(b)) => {
            let (la, lb) = (a.cycle.len(), b.cycle.len());
            let bound = a.stem.len().max(b.stem.len()) + la / gcd(la, lb) * lb + la.max(lb);
            (0..bound).all(|k| a.at(k) == b.at(k))
        }
        _ => false,
    }
}
