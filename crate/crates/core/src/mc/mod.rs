//! Model checking a family of Kripke structures against a cycle-free
//! sentence.
//!
//! Macro states are sets of micro states `(s, q, phase)`; a run of macro
//! states is accepting when every micro run threaded through it is. The
//! explorer works on flagged macro states: a flag per micro state records
//! whether its thread has met an accepting micro state since the last
//! moment all flags were set, and the run is accepting iff it passes
//! through macro states with all flags set infinitely often.
//!
//! Successors come from one of two generators. [`Generator::Baseline`]
//! enumerates every relation allowed by the side conditions and is only usable on
//! tiny inputs. [`Generator::Reduced`] first solves a Büchi game on micro
//! states and then follows its winning strategy, branching only on the
//! joint move of the existential prefix.

mod game;
mod micro;
mod successors;

use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use serde::Serialize;

use crate::error::{LprlError, Result};
use crate::formula::NormalSentence;
use crate::graph;
use crate::kripke::KripkeFamily;
use crate::oracle::{eval_matrix, LassoWord};

pub use micro::{McInstance, MicroState, Triple};
pub use successors::{baseline_successors, check_transition, image, TrViolation};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum McVerdict {
    Holds,
    Fails,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    Reduced,
    /// Exhaustive enumeration; `limit` bounds the candidate combinations per
    /// macro state.
    Baseline { limit: usize },
}

#[derive(Clone, Debug)]
pub struct McOptions {
    /// Maximum number of flagged macro states (and of game nodes).
    pub cap: usize,
    pub generator: Generator,
    /// Check every explored transition against the side conditions.
    pub verify: bool,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions { cap: DEFAULT_CAP, generator: Generator::Reduced, verify: false }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct McStats {
    pub hba_states: usize,
    pub micro_states: usize,
    pub game_nodes: usize,
    pub macro_states: usize,
    pub macro_transitions: usize,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct McResult {
    pub verdict: McVerdict,
    pub stats: McStats,
}

type Flagged = Vec<(u32, u8)>;

/// Flags of the successor macro state. All flags drop to 1 after a macro
/// state with every flag at 2; otherwise a thread reaches 2 by meeting an
/// accepting micro state and keeps it. A target reached from several
/// sources keeps the lowest flag.
fn successor_flags(inst: &McInstance, src: &Flagged, next: &[Triple]) -> Flagged {
    let reset = src.iter().all(|&(_, m)| m == 2);
    let flag_of: HashMap<u32, u8> = src.iter().copied().collect();
    let mut out: HashMap<u32, u8> = HashMap::new();
    for t in next {
        let m = if reset {
            1
        } else if flag_of[&t.from] == 2 || inst.is_accepting(t.to) {
            2
        } else {
            1
        };
        out.entry(t.to).and_modify(|x| *x = (*x).min(m)).or_insert(m);
    }
    let mut v: Flagged = out.into_iter().collect();
    v.sort_unstable();
    v
}

pub fn check_mc(family: &KripkeFamily, s: &NormalSentence, options: &McOptions) -> Result<McResult> {
    let start = Instant::now();
    let mut inst = McInstance::new(family, s)?;
    let init = inst.initial_micro();
    let solved = match options.generator {
        Generator::Reduced => {
            let arena = game::build_arena(&mut inst, init, options.cap)?;
            let sol = game::solve_buchi(&arena);
            Some((arena, sol))
        }
        Generator::Baseline { .. } => None,
    };

    let first: Flagged = vec![(init, if inst.is_accepting(init) { 2 } else { 1 })];
    let mut index: HashMap<Flagged, usize> = HashMap::from([(first.clone(), 0)]);
    let mut macros = vec![first];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let u: Vec<u32> = macros[x].iter().map(|&(m, _)| m).collect();
        let relations = match (&solved, options.generator) {
            (Some((arena, sol)), _) => successors::reduced_successors(&inst, arena, sol, &u),
            (None, Generator::Baseline { limit }) => baseline_successors(&mut inst, &u, limit)?,
            (None, Generator::Reduced) => unreachable!(),
        };
        for next in relations {
            if options.verify {
                check_transition(&inst, &u, &next, &image(&next))
                    .map_err(|v| LprlError::Precondition(format!("generated transition violates {v}")))?;
            }
            let target = successor_flags(&inst, &macros[x], &next);
            let y = match index.get(&target) {
                Some(&y) => y,
                None => {
                    if macros.len() >= options.cap {
                        return Err(LprlError::CapExceeded(options.cap));
                    }
                    index.insert(target.clone(), macros.len());
                    macros.push(target);
                    adj.push(Vec::new());
                    queue.push_back(macros.len() - 1);
                    macros.len() - 1
                }
            };
            if !adj[x].contains(&y) {
                adj[x].push(y);
            }
        }
    }

    let (_, comps) = graph::sccs(&adj);
    let full = |x: usize| macros[x].iter().all(|&(_, m)| m == 2);
    let holds = comps.iter().any(|c| graph::is_nontrivial(&adj, c) && c.iter().any(|&x| full(x)));
    Ok(McResult {
        verdict: if holds { McVerdict::Holds } else { McVerdict::Fails },
        stats: McStats {
            hba_states: inst.hba.num_states(),
            micro_states: inst.num_micros(),
            game_nodes: solved.as_ref().map_or(0, |(a, _)| a.len()),
            macro_states: macros.len(),
            macro_transitions: adj.iter().map(Vec::len).sum(),
            elapsed_ms: start.elapsed().as_millis(),
        },
    })
}

/// Reference verdict for families of single-trace structures: the
/// quantifiers are then irrelevant and the matrix is evaluated on the
/// unique tuple.
pub fn deterministic_family_fastpath(family: &KripkeFamily, s: &NormalSentence) -> Result<McResult> {
    let start = Instant::now();
    if family.len() != s.width() {
        return Err(LprlError::Arity { expected: s.width(), got: family.len() });
    }
    let tuple: Vec<LassoWord> = family.members.iter().map(|k| k.unique_lasso()).collect::<Result<_>>()?;
    let holds = eval_matrix(&s.matrix, &tuple)?;
    Ok(McResult {
        verdict: if holds { McVerdict::Holds } else { McVerdict::Fails },
        stats: McStats { elapsed_ms: start.elapsed().as_millis(), ..McStats::default() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{normalize, parse_sentence, Alphabet};
    use crate::kripke::Kripke;

    fn sentence(text: &str) -> NormalSentence {
        normalize(&parse_sentence(text).unwrap()).unwrap()
    }

    fn verify() -> McOptions {
        McOptions { verify: true, ..McOptions::default() }
    }

    fn self_loop(a: &Alphabet, props: &[&str]) -> Kripke {
        Kripke::new(a, vec!["s".into()], 0, vec![vec![0]], vec![a.letter(props).unwrap()]).unwrap()
    }

    #[test]
    fn self_loop_verdicts() {
        let a = Alphabet::new(&["p"]).unwrap();
        let fam = KripkeFamily::new(vec![self_loop(&a, &["p"])]);
        let holds = sentence("props: p;\nforall x. [G p](x)");
        let fails = sentence("props: p;\nexists x. [F {}](x)");
        for s in [&holds, &fails] {
            assert_eq!(
                check_mc(&fam, s, &verify()).unwrap().verdict,
                deterministic_family_fastpath(&fam, s).unwrap().verdict
            );
        }
        assert_eq!(check_mc(&fam, &holds, &verify()).unwrap().verdict, McVerdict::Holds);
        assert_eq!(check_mc(&fam, &fails, &verify()).unwrap().verdict, McVerdict::Fails);
    }

    #[test]
    fn universal_branching() {
        // s0 -> s1 (p), s0 -> s2 (not p); both absorbing.
        let a = Alphabet::new(&["p"]).unwrap();
        let k = Kripke::new(
            &a,
            vec!["s0".into(), "s1".into(), "s2".into()],
            0,
            vec![vec![1, 2], vec![1], vec![2]],
            vec![0, 1, 0],
        )
        .unwrap();
        let fam = KripkeFamily::new(vec![k]);
        let some = sentence("props: p;\nexists x. [F p](x)");
        let all = sentence("props: p;\nforall x. [F p](x)");
        let never = sentence("props: p;\nforall x. [G !p](x)");
        assert_eq!(check_mc(&fam, &some, &verify()).unwrap().verdict, McVerdict::Holds);
        assert_eq!(check_mc(&fam, &all, &verify()).unwrap().verdict, McVerdict::Fails);
        assert_eq!(check_mc(&fam, &never, &verify()).unwrap().verdict, McVerdict::Fails);
    }

    #[test]
    fn baseline_agrees_on_tiny_case() {
        let a = Alphabet::new(&["p"]).unwrap();
        let k = Kripke::new(&a, vec!["a".into(), "b".into()], 0, vec![vec![0, 1], vec![1]], vec![1, 0]).unwrap();
        let fam = KripkeFamily::new(vec![k]);
        let base = McOptions { generator: Generator::Baseline { limit: 100_000 }, verify: true, ..McOptions::default() };
        for text in ["forall x. [F !p](x)", "exists x. [G p](x)", "forall x. [G p](x)", "exists x. [X !p](x)"] {
            let s = sentence(&format!("props: p;\n{text}"));
            assert_eq!(
                check_mc(&fam, &s, &verify()).unwrap().verdict,
                check_mc(&fam, &s, &base).unwrap().verdict,
                "{text}"
            );
        }
    }

    #[test]
    fn arity_mismatch() {
        let a = Alphabet::new(&["p"]).unwrap();
        let fam = KripkeFamily::new(vec![self_loop(&a, &["p"])]);
        let s = sentence("props: p;\nforall x. forall y. x ={{p}} y");
        assert!(matches!(check_mc(&fam, &s, &McOptions::default()), Err(LprlError::Arity { .. })));
    }
}
