use serde::{Deserialize, Serialize};

use crate::error::{LprlError, Result};
use crate::formula::{parse_letter, Alphabet, Cursor, Letter, Tok};

/// Ultimately periodic word `stem · cycle^ω`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LassoWord {
    pub stem: Vec<Letter>,
    pub cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(LprlError::Lasso("the loop must be non-empty".into()));
        }
        Ok(LassoWord { stem, cycle })
    }

    /// Number of distinct positions, `|stem| + |cycle|`.
    pub fn positions(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    /// Canonical position of absolute index `k`.
    pub fn canonical(&self, k: usize) -> usize {
        if k < self.stem.len() {
            k
        } else {
            self.stem.len() + (k - self.stem.len()) % self.cycle.len()
        }
    }

    /// Successor of a canonical position.
    pub fn succ(&self, pos: usize) -> usize {
        if pos + 1 < self.positions() {
            pos + 1
        } else {
            self.stem.len()
        }
    }

    /// `σ(k)`.
    pub fn at(&self, k: usize) -> Letter {
        let p = self.canonical(k);
        if p < self.stem.len() {
            self.stem[p]
        } else {
            self.cycle[p - self.stem.len()]
        }
    }

    /// Checks that every letter belongs to the alphabet.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        let n = alphabet.num_letters();
        if self.stem.iter().chain(&self.cycle).any(|&l| l as usize >= n) {
            return Err(LprlError::Lasso(format!(
                "letter outside an alphabet of {} propositions",
                alphabet.props().len()
            )));
        }
        Ok(())
    }

    /// Parses `stem;loop`, letters written as brace sets: `{p}{};{p,q}`.
    /// Without `;` the whole text is the loop.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut cur = Cursor::new(text)?;
        let mut first = Vec::new();
        while cur.peek() == Some(&Tok::LBrace) {
            first.push(parse_letter(&mut cur, alphabet)?);
        }
        let (stem, cycle) = if cur.eat(&Tok::Semi) {
            let mut cycle = Vec::new();
            while cur.peek() == Some(&Tok::LBrace) {
                cycle.push(parse_letter(&mut cur, alphabet)?);
            }
            (first, cycle)
        } else {
            (Vec::new(), first)
        };
        if !cur.at_end() {
            return Err(cur.error("expected a letter".into()));
        }
        LassoWord::new(stem, cycle)
    }

    /// Inverse of [`LassoWord::parse`].
    pub fn display(&self, alphabet: &Alphabet) -> String {
        let f = |ls: &[Letter]| ls.iter().map(|&l| alphabet.format_letter(l)).collect::<String>();
        format!("{};{}", f(&self.stem), f(&self.cycle))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_round_trip() {
        let a = Alphabet::new(&["p", "q"]).unwrap();
        let w = LassoWord::parse("{p}{};{p,q}", &a).unwrap();
        assert_eq!(w, LassoWord::new(vec![1, 0], vec![3]).unwrap());
        assert_eq!(LassoWord::parse(&w.display(&a), &a).unwrap(), w);
        assert_eq!(LassoWord::parse("{q}", &a).unwrap(), LassoWord::new(vec![], vec![2]).unwrap());
        assert!(LassoWord::parse("{p};", &a).is_err());
        assert!(LassoWord::parse("{r};{p}", &a).is_err());
    }

    #[test]
    fn positions() {
        let w = LassoWord::new(vec![5, 6], vec![1, 2, 3]).unwrap();
        assert_eq!(w.at(0), 5);
        assert_eq!(w.at(2), 1);
        assert_eq!(w.at(5), 1);
        assert_eq!(w.at(9), 2);
        assert_eq!(w.succ(4), 2);
    }
}
