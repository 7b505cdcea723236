use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LprlError, Result};

/// A letter is a subset of the atomic propositions, encoded as a bitmask
/// over the alphabet's proposition order.
pub type Letter = u8;

/// Largest supported number of atomic propositions. Letter sets are stored
/// as 64-bit masks, so `2^MAX_PROPS` letters must fit.
pub const MAX_PROPS: usize = 6;

const RESERVED: &[&str] = &[
    "X", "F", "G", "U", "true", "false", "sigma", "forall", "exists", "props", "let",
];

/// A set of letters, one bit per letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct LetterSet(pub u64);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    pub fn singleton(letter: Letter) -> Self {
        LetterSet(1u64 << letter)
    }

    pub fn contains(self, letter: Letter) -> bool {
        self.0 >> letter & 1 == 1
    }

    pub fn insert(&mut self, letter: Letter) {
        self.0 |= 1u64 << letter;
    }

    pub fn union(self, other: Self) -> Self {
        LetterSet(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        LetterSet(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        LetterSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest letter of the set.
    pub fn first(self) -> Option<Letter> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Letter)
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let l = bits.trailing_zeros();
            bits &= bits - 1;
            Some(l as Letter)
        })
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut s = LetterSet::EMPTY;
        for l in iter {
            s.insert(l);
        }
        s
    }
}

/// The alphabet Σ = 2^AP over an ordered list of proposition names.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Alphabet {
    props: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(props: &[S]) -> Result<Self> {
        if props.is_empty() {
            return Err(LprlError::Alphabet("at least one proposition is required".into()));
        }
        if props.len() > MAX_PROPS {
            return Err(LprlError::Alphabet(format!(
                "{} propositions given, at most {MAX_PROPS} are supported",
                props.len()
            )));
        }
        let mut names: Vec<String> = Vec::with_capacity(props.len());
        for p in props {
            let p = p.as_ref();
            let valid = p.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
            if !valid {
                return Err(LprlError::Alphabet(format!("`{p}` is not a valid proposition name")));
            }
            if RESERVED.contains(&p) {
                return Err(LprlError::Alphabet(format!("`{p}` is a reserved word")));
            }
            if names.iter().any(|n| n == p) {
                return Err(LprlError::Alphabet(format!("proposition `{p}` listed twice")));
            }
            names.push(p.to_string());
        }
        Ok(Alphabet { props: names })
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    /// |Σ| = 2^|AP|.
    pub fn num_letters(&self) -> usize {
        1 << self.props.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.num_letters()).map(|l| l as Letter)
    }

    /// Σ as a letter set.
    pub fn all(&self) -> LetterSet {
        if self.num_letters() == 64 {
            LetterSet(u64::MAX)
        } else {
            LetterSet((1u64 << self.num_letters()) - 1)
        }
    }

    pub fn complement(&self, set: LetterSet) -> LetterSet {
        self.all().minus(set)
    }

    pub fn prop_index(&self, name: &str) -> Result<usize> {
        self.props
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| LprlError::UnknownProposition(name.to_string()))
    }

    /// All letters in which the proposition holds.
    pub fn letters_with(&self, prop: &str) -> Result<LetterSet> {
        let bit = self.prop_index(prop)?;
        Ok(self.letters().filter(|l| l >> bit & 1 == 1).collect())
    }

    /// The letter made of exactly the given propositions.
    pub fn letter<S: AsRef<str>>(&self, props: &[S]) -> Result<Letter> {
        let mut letter: Letter = 0;
        for p in props {
            letter |= 1 << self.prop_index(p.as_ref())?;
        }
        Ok(letter)
    }

    pub fn letter_props(&self, letter: Letter) -> Vec<&str> {
        self.props
            .iter()
            .enumerate()
            .filter(|(i, _)| letter >> i & 1 == 1)
            .map(|(_, p)| p.as_str())
            .collect()
    }

    /// `{p,q}` notation; the empty letter prints as `{}`.
    pub fn format_letter(&self, letter: Letter) -> String {
        format!("{{{}}}", self.letter_props(letter).join(","))
    }

    /// `sigma` for Σ, otherwise a brace list of letters such as `{{p},{}}`.
    pub fn format_set(&self, set: LetterSet) -> String {
        if set == self.all() {
            return "sigma".to_string();
        }
        let inner: Vec<String> = set.iter().map(|l| self.format_letter(l)).collect();
        format!("{{{}}}", inner.join(","))
    }
}
