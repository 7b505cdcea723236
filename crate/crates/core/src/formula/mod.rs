//! Alphabets, LTL formulas and LPrL sentences.
//!
//! Concrete syntax of a sentence file:
//!
//! ```text
//! props: p, q;
//! let Low = {{}, {q}};
//! forall x. forall y. [p](x) <=> [p](y) -> x ={Low} y
//! ```

mod alphabet;
mod cycle;
mod lexer;
mod ltl;
mod normal;
mod sentence;

pub use alphabet::{Alphabet, Letter, LetterSet, MAX_PROPS};
pub use cycle::{check_cycle_free, CycleFreeReport};
pub use ltl::{parse_ltl, LtlFormula};
pub use normal::{normalize, AtomicFormula, Clause, NormalSentence, QuantifierPrefix};
pub use sentence::{parse_sentence, parse_sentence_file, Quantifier, RawFormula, RawSentence};

pub(crate) use lexer::{Cursor, Tok};
pub(crate) use ltl::parse_letter;
