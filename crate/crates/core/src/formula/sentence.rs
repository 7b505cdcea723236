use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::alphabet::{Alphabet, LetterSet};
use super::lexer::{Cursor, Tok};
use super::ltl::{parse_letter, parse_ltl_expr, LtlFormula};
use crate::error::{LprlError, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn flip(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        }
    }
}

/// Sentence AST as written: arbitrary quantifier nesting and connectives.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum RawFormula {
    True,
    False,
    /// `[φ](x)`
    Pred { phi: LtlFormula, var: String },
    /// `[φ](x) <=> [ψ](y)`, or `<!=>` when `negated`.
    Equiv { left: LtlFormula, lvar: String, right: LtlFormula, rvar: String, negated: bool },
    /// `x ={A} y`, or `!={A}` when `negated`.
    ProjEq { left: String, set: LetterSet, right: String, negated: bool },
    Not(Box<RawFormula>),
    And(Box<RawFormula>, Box<RawFormula>),
    Or(Box<RawFormula>, Box<RawFormula>),
    Implies(Box<RawFormula>, Box<RawFormula>),
    Quant { q: Quantifier, var: String, body: Box<RawFormula> },
}

impl RawFormula {
    fn collect_vars(
        &self,
        scope: &mut Vec<String>,
        all: &mut Vec<String>,
        used: &mut BTreeSet<String>,
    ) -> Result<()> {
        fn check(v: &str, bound: &[String], used: &mut BTreeSet<String>) -> Result<()> {
            if !bound.iter().any(|b| b == v) {
                return Err(LprlError::FreeVariable(v.to_string()));
            }
            used.insert(v.to_string());
            Ok(())
        }
        match self {
            RawFormula::True | RawFormula::False => Ok(()),
            RawFormula::Pred { var, .. } => check(var, scope, used),
            RawFormula::Equiv { lvar, rvar, .. } => {
                check(lvar, scope, used)?;
                check(rvar, scope, used)
            }
            RawFormula::ProjEq { left, right, .. } => {
                check(left, scope, used)?;
                check(right, scope, used)
            }
            RawFormula::Not(a) => a.collect_vars(scope, all, used),
            RawFormula::And(a, b) | RawFormula::Or(a, b) | RawFormula::Implies(a, b) => {
                a.collect_vars(scope, all, used)?;
                b.collect_vars(scope, all, used)
            }
            RawFormula::Quant { var, body, .. } => {
                if all.contains(var) {
                    return Err(LprlError::DuplicateVariable(var.clone()));
                }
                all.push(var.clone());
                scope.push(var.clone());
                body.collect_vars(scope, all, used)?;
                scope.pop();
                Ok(())
            }
        }
    }

    /// Checks closedness and distinct binders; returns bound variables in
    /// textual order.
    pub fn check_closed(&self) -> Result<Vec<String>> {
        let mut bound = Vec::new();
        let mut used = BTreeSet::new();
        self.collect_vars(&mut Vec::new(), &mut bound, &mut used)?;
        if let Some(unused) = bound.iter().find(|v| !used.contains(*v)) {
            return Err(LprlError::UnusedVariable(unused.clone()));
        }
        Ok(bound)
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        match self {
            RawFormula::True => "true".into(),
            RawFormula::False => "false".into(),
            RawFormula::Pred { phi, var } => format!("[{}]({var})", phi.display(alphabet)),
            RawFormula::Equiv { left, lvar, right, rvar, negated } => format!(
                "[{}]({lvar}) {} [{}]({rvar})",
                left.display(alphabet),
                if *negated { "<!=>" } else { "<=>" },
                right.display(alphabet)
            ),
            RawFormula::ProjEq { left, set, right, negated } => {
                let set = alphabet.format_set(*set);
                let inner = if set == "sigma" { set } else { set[1..set.len() - 1].to_string() };
                format!("{left} {}{{{inner}}} {right}", if *negated { "!=" } else { "=" })
            }
            RawFormula::Not(a) => format!("!{}", a.display_operand(alphabet)),
            RawFormula::And(a, b) => {
                format!("{} & {}", a.display_operand(alphabet), b.display_operand(alphabet))
            }
            RawFormula::Or(a, b) => {
                format!("{} | {}", a.display_operand(alphabet), b.display_operand(alphabet))
            }
            RawFormula::Implies(a, b) => {
                format!("{} -> {}", a.display_operand(alphabet), b.display_operand(alphabet))
            }
            RawFormula::Quant { q, var, body } => {
                format!("{} {var}. {}", q.keyword(), body.display(alphabet))
            }
        }
    }

    fn display_operand(&self, alphabet: &Alphabet) -> String {
        match self {
            RawFormula::True | RawFormula::False | RawFormula::Pred { .. } | RawFormula::Not(_) => {
                self.display(alphabet)
            }
            _ => format!("({})", self.display(alphabet)),
        }
    }
}

/// A parsed sentence together with the alphabet declared in its header.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RawSentence {
    pub alphabet: Alphabet,
    pub formula: RawFormula,
}

impl RawSentence {
    /// Concrete syntax, header included.
    pub fn display(&self) -> String {
        format!("props: {};\n{}\n", self.alphabet.props().join(", "), self.formula.display(&self.alphabet))
    }
}

/// Parses a sentence file: a `props: p, q;` header, optional
/// `let NAME = {...};` letter-set definitions, then the sentence.
pub fn parse_sentence(text: &str) -> Result<RawSentence> {
    let mut cur = Cursor::new(text)?;
    if !cur.eat_keyword("props") {
        return Err(cur.error("expected `props:` header".into()));
    }
    cur.expect(&Tok::Colon)?;
    let mut props = Vec::new();
    loop {
        props.push(cur.expect_ident()?);
        if cur.eat(&Tok::Semi) {
            break;
        }
        cur.expect(&Tok::Comma)?;
    }
    let alphabet = Alphabet::new(&props)?;
    let mut sets = BTreeMap::new();
    while cur.eat_keyword("let") {
        let name = cur.expect_ident()?;
        cur.expect(&Tok::Eq)?;
        let set = if cur.eat_keyword("sigma") {
            alphabet.all()
        } else {
            cur.expect(&Tok::LBrace)?;
            parse_set_body(&mut cur, &alphabet, &sets)?
        };
        cur.expect(&Tok::Semi)?;
        sets.insert(name, set);
    }
    let mut parser = SentenceParser { cur, alphabet, sets };
    let formula = parser.formula()?;
    parser.cur.eat(&Tok::Semi);
    if !parser.cur.at_end() {
        return Err(parser.cur.error("unexpected trailing input".into()));
    }
    formula.check_closed()?;
    Ok(RawSentence { alphabet: parser.alphabet, formula })
}

pub fn parse_sentence_file(path: impl AsRef<Path>) -> Result<RawSentence> {
    parse_sentence(&std::fs::read_to_string(path)?)
}

/// Body of `={...}` after the opening brace: `sigma`, a defined name, or a
/// comma-separated list of letters. Consumes the closing brace.
fn parse_set_body(
    cur: &mut Cursor,
    alphabet: &Alphabet,
    sets: &BTreeMap<String, LetterSet>,
) -> Result<LetterSet> {
    let set = match cur.peek() {
        Some(Tok::Ident(w)) if w == "sigma" => {
            cur.bump();
            alphabet.all()
        }
        Some(Tok::Ident(w)) => {
            let set = *sets
                .get(w)
                .ok_or_else(|| cur.error(format!("undefined letter set `{w}`")))?;
            cur.bump();
            set
        }
        Some(Tok::RBrace) => return Err(LprlError::EmptyLetterSet),
        _ => {
            let mut set = LetterSet::EMPTY;
            loop {
                set.insert(parse_letter(cur, alphabet)?);
                if cur.peek() == Some(&Tok::RBrace) {
                    break;
                }
                cur.expect(&Tok::Comma)?;
            }
            set
        }
    };
    cur.expect(&Tok::RBrace)?;
    if set.is_empty() {
        return Err(LprlError::EmptyLetterSet);
    }
    Ok(set)
}

struct SentenceParser {
    cur: Cursor,
    alphabet: Alphabet,
    sets: BTreeMap<String, LetterSet>,
}

impl SentenceParser {
    fn formula(&mut self) -> Result<RawFormula> {
        if let Some(q) = self.quantifier() {
            let var = self.cur.expect_ident()?;
            self.cur.expect(&Tok::Dot)?;
            let body = self.formula()?;
            return Ok(RawFormula::Quant { q, var, body: Box::new(body) });
        }
        let lhs = self.or()?;
        if self.cur.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            return Ok(RawFormula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn quantifier(&mut self) -> Option<Quantifier> {
        if self.cur.eat_keyword("forall") {
            Some(Quantifier::Forall)
        } else if self.cur.eat_keyword("exists") {
            Some(Quantifier::Exists)
        } else {
            None
        }
    }

    fn or(&mut self) -> Result<RawFormula> {
        let mut lhs = self.and()?;
        while self.cur.eat(&Tok::Pipe) {
            let rhs = self.and()?;
            lhs = RawFormula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<RawFormula> {
        let mut lhs = self.unary()?;
        while self.cur.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = RawFormula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<RawFormula> {
        if self.cur.eat(&Tok::Bang) {
            return Ok(RawFormula::Not(Box::new(self.unary()?)));
        }
        match self.cur.peek() {
            Some(Tok::LParen) => {
                self.cur.bump();
                let f = self.formula()?;
                self.cur.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::LBracket) => self.predicate(),
            Some(Tok::Ident(w)) if w == "true" => {
                self.cur.bump();
                Ok(RawFormula::True)
            }
            Some(Tok::Ident(w)) if w == "false" => {
                self.cur.bump();
                Ok(RawFormula::False)
            }
            Some(Tok::Ident(w)) if w == "forall" || w == "exists" => self.formula(),
            Some(Tok::Ident(_)) => self.projection(),
            _ => Err(self.cur.error("expected a formula".into())),
        }
    }

    fn bracketed(&mut self) -> Result<(LtlFormula, String)> {
        self.cur.expect(&Tok::LBracket)?;
        let phi = parse_ltl_expr(&mut self.cur, &self.alphabet)?;
        self.cur.expect(&Tok::RBracket)?;
        self.cur.expect(&Tok::LParen)?;
        let var = self.cur.expect_ident()?;
        self.cur.expect(&Tok::RParen)?;
        Ok((phi, var))
    }

    fn predicate(&mut self) -> Result<RawFormula> {
        let (left, lvar) = self.bracketed()?;
        let negated = if self.cur.eat(&Tok::Iff) {
            false
        } else if self.cur.eat(&Tok::NotIff) {
            true
        } else {
            return Ok(RawFormula::Pred { phi: left, var: lvar });
        };
        let (right, rvar) = self.bracketed()?;
        Ok(RawFormula::Equiv { left, lvar, right, rvar, negated })
    }

    fn projection(&mut self) -> Result<RawFormula> {
        let left = self.cur.expect_ident()?;
        let negated = if self.cur.eat(&Tok::Eq) {
            false
        } else if self.cur.eat(&Tok::NotEq) {
            true
        } else {
            return Err(self.cur.error("expected `={` or `!={`".into()));
        };
        self.cur.expect(&Tok::LBrace)?;
        let set = parse_set_body(&mut self.cur, &self.alphabet, &self.sets)?;
        let right = self.cur.expect_ident()?;
        Ok(RawFormula::ProjEq { left, set, right, negated })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_forall() {
        let s = parse_sentence("props: p;\nforall x. [G {p}](x)").unwrap();
        match s.formula {
            RawFormula::Quant { q: Quantifier::Forall, var, body } => {
                assert_eq!(var, "x");
                assert!(matches!(*body, RawFormula::Pred { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn generalized_noninterference() {
        let text = "props: h, l;\nlet Hin = {{h}};\nlet L = {{l}};\n\
                    forall x. forall y. exists z. (z ={Hin} y) & (z ={L} x)";
        let s = parse_sentence(text).unwrap();
        assert_eq!(s.formula.check_closed().unwrap(), vec!["x", "y", "z"]);
    }

    #[test]
    fn letter_set_forms() {
        let s = parse_sentence("props: p, q;\nforall x. forall y. x ={{p},{}} y | x !={sigma} y").unwrap();
        match s.formula {
            RawFormula::Quant { body, .. } => match *body {
                RawFormula::Quant { body, .. } => match *body {
                    RawFormula::Or(a, b) => {
                        assert!(matches!(*a, RawFormula::ProjEq { set, negated: false, .. } if set.len() == 2));
                        assert!(matches!(*b, RawFormula::ProjEq { set, negated: true, .. } if set.len() == 4));
                    }
                    other => panic!("unexpected {other:?}"),
                },
                other => panic!("unexpected {other:?}"),
            },
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_free_and_duplicate() {
        assert!(matches!(
            parse_sentence("props: p;\nexists x. x ={sigma} y"),
            Err(LprlError::FreeVariable(v)) if v == "y"
        ));
        assert!(matches!(
            parse_sentence("props: p;\nexists x. exists x. [p](x)"),
            Err(LprlError::DuplicateVariable(_))
        ));
        assert!(matches!(
            parse_sentence("props: p;\nexists x. exists y. [p](x)"),
            Err(LprlError::UnusedVariable(v)) if v == "y"
        ));
        assert!(matches!(parse_sentence("props: p;\nexists x. x ={} x"), Err(LprlError::EmptyLetterSet)));
    }

    #[test]
    fn display_round_trip() {
        let text = "props: p, q;\nforall x. exists y. ([p U q](x) <!=> [X p](y)) -> !(x ={{p},{}} y) | true";
        let s = parse_sentence(text).unwrap();
        let again = parse_sentence(&s.display()).unwrap();
        assert_eq!(s, again);
    }
}
