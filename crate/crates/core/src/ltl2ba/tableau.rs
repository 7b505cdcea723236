use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::formula::{Alphabet, LetterSet, LtlFormula};

/// Negation normal form with Release as the dual of Until.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Node {
    Atom(LetterSet),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
}

#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    ids: HashMap<Node, usize>,
}

impl Arena {
    fn intern(&mut self, n: Node) -> usize {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        self.nodes.push(n);
        self.ids.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn nnf(&mut self, phi: &LtlFormula, neg: bool, alphabet: &Alphabet) -> usize {
        let node = match phi {
            LtlFormula::Atom(s) => Node::Atom(if neg { alphabet.complement(*s) } else { *s }),
            LtlFormula::Not(a) => return self.nnf(a, !neg, alphabet),
            LtlFormula::Or(a, b) | LtlFormula::And(a, b) => {
                let (a, b) = (self.nnf(a, neg, alphabet), self.nnf(b, neg, alphabet));
                if matches!(phi, LtlFormula::And(..)) != neg {
                    Node::And(a, b)
                } else {
                    Node::Or(a, b)
                }
            }
            LtlFormula::Next(a) => Node::Next(self.nnf(a, neg, alphabet)),
            LtlFormula::Until(a, b) => {
                let (a, b) = (self.nnf(a, neg, alphabet), self.nnf(b, neg, alphabet));
                if neg {
                    Node::Release(a, b)
                } else {
                    Node::Until(a, b)
                }
            }
        };
        self.intern(node)
    }
}

/// One way of satisfying a set of obligations at the current position:
/// the formulas that hold now and those that must hold at the next one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(super) struct Cover {
    pub old: BTreeSet<usize>,
    pub next: BTreeSet<usize>,
    pub label: LetterSet,
}

struct Expander<'a> {
    arena: &'a Arena,
    all: LetterSet,
    out: BTreeSet<Cover>,
}

impl Expander<'_> {
    fn expand(&mut self, mut todo: Vec<usize>, mut old: BTreeSet<usize>, mut next: BTreeSet<usize>, mut label: LetterSet) {
        while let Some(f) = todo.pop() {
            if !old.insert(f) {
                continue;
            }
            match self.arena.nodes[f] {
                Node::Atom(s) => {
                    label = label.intersect(s);
                    if label.is_empty() {
                        return;
                    }
                }
                Node::And(a, b) => {
                    todo.push(a);
                    todo.push(b);
                }
                Node::Next(a) => {
                    next.insert(a);
                }
                Node::Or(a, b) => {
                    let mut left = todo.clone();
                    left.push(a);
                    self.expand(left, old.clone(), next.clone(), label);
                    todo.push(b);
                }
                Node::Until(a, b) => {
                    let mut now = todo.clone();
                    now.push(b);
                    self.expand(now, old.clone(), next.clone(), label);
                    todo.push(a);
                    next.insert(f);
                }
                Node::Release(a, b) => {
                    let mut both = todo.clone();
                    both.push(a);
                    both.push(b);
                    self.expand(both, old.clone(), next.clone(), label);
                    todo.push(b);
                    next.insert(f);
                }
            }
        }
        self.out.insert(Cover { old, next, label });
    }
}

/// Generalized Büchi automaton produced by the tableau. State 0 is the
/// initial state; the others are covers. Edges are labelled by the target's
/// letter set.
pub(super) struct Tableau {
    pub covers: Vec<Cover>,
    pub edges: Vec<Vec<usize>>,
    /// One acceptance set per Until subformula.
    pub acceptance: Vec<Vec<bool>>,
}

pub(super) fn build(phi: &LtlFormula, alphabet: &Alphabet) -> Tableau {
    let mut arena = Arena::default();
    let root = arena.nnf(phi, false, alphabet);
    let all = alphabet.all();

    let mut expansions: HashMap<BTreeSet<usize>, Vec<Cover>> = HashMap::new();
    let mut expand = |obligations: &BTreeSet<usize>| -> Vec<Cover> {
        expansions
            .entry(obligations.clone())
            .or_insert_with(|| {
                let mut ex = Expander { arena: &arena, all, out: BTreeSet::new() };
                let todo = obligations.iter().rev().copied().collect();
                ex.expand(todo, BTreeSet::new(), BTreeSet::new(), ex.all);
                ex.out.into_iter().collect()
            })
            .clone()
    };

    let init = Cover { old: BTreeSet::new(), next: BTreeSet::from([root]), label: all };
    let mut covers = vec![init.clone()];
    let mut index: HashMap<Cover, usize> = HashMap::from([(init, 0)]);
    let mut edges: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let succs = expand(&covers[v].next);
        for c in succs {
            let id = *index.entry(c.clone()).or_insert_with(|| {
                covers.push(c);
                edges.push(Vec::new());
                queue.push_back(covers.len() - 1);
                covers.len() - 1
            });
            edges[v].push(id);
        }
    }

    let untils: Vec<(usize, usize)> = arena
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(i, n)| match n {
            Node::Until(_, b) => Some((i, *b)),
            _ => None,
        })
        .collect();
    let acceptance = untils
        .iter()
        .map(|&(u, b)| {
            covers
                .iter()
                .enumerate()
                .map(|(i, c)| i != 0 && (!c.old.contains(&u) || c.old.contains(&b)))
                .collect()
        })
        .collect();
    Tableau { covers, edges, acceptance }
}
