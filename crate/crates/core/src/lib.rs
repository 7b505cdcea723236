//! Decision procedures for LPrL, a hyper linear-time logic over asynchronous
//! trace tuples.
//!
//! The crate is organised bottom-up:
//!
//! * [`formula`]: alphabets, LTL formulas, LPrL sentences and their prenex/DNF
//!   normal form, plus the cycle-free gate.
//! * [`oracle`]: brute-force semantics on lasso words. Every automaton
//!   construction is tested against it.
//! * [`ltl2ba`]: LTL to Büchi translation (tableau construction).
//! * [`hba`]: automata over ε-padded tuples of letters and their algebra.
//! * [`sat`]: satisfiability with lasso witnesses.
//! * [`kripke`]: Kripke structures, JSON ingestion and networks of
//!   transition systems.
//! * [`mc`]: model checking of Kripke families via macro-state exploration.

pub mod error;
pub mod formula;
pub mod hba;
pub mod kripke;
pub mod ltl2ba;
pub mod mc;
pub mod oracle;
pub mod random;
pub mod sat;

mod graph;

pub use error::{LprlError, Result};
pub use formula::{
    check_cycle_free, normalize, parse_ltl, parse_sentence, parse_sentence_file, Alphabet,
    AtomicFormula, Clause, CycleFreeReport, Letter, LetterSet, LtlFormula, NormalSentence,
    Quantifier, QuantifierPrefix, RawFormula, RawSentence,
};

pub use oracle::{
    eval_ltl_lasso, eval_matrix, eval_sentence_finite, project_lasso, words_equal, LassoWord,
    ProjectedWord,
};
pub use ltl2ba::{ba_accepts_lasso, ltl_to_ba, BuchiAutomaton};
pub use hba::{Hba, Label, LassoRun, SlotConstraint, TupleLetter};
pub use kripke::{Kripke, KripkeFamily};
pub use mc::{check_mc, deterministic_family_fastpath, McOptions, McResult, McVerdict};
pub use sat::{check_sat, SatResult, SatVerdict};
