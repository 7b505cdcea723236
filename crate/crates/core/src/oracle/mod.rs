//! Reference semantics on ultimately periodic words. Every automaton
//! construction in the crate is checked against these functions.

mod lasso;
mod ltl_eval;
mod projection;
mod semantics;

pub use lasso::LassoWord;
pub use ltl_eval::{eval_ltl_lasso, eval_ltl_lasso_unrolled};
pub use projection::{project_lasso, words_equal, ProjectedWord};
pub use semantics::{eval_atom, eval_matrix, eval_raw_finite, eval_sentence_finite};
