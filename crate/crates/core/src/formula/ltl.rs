use serde::{Deserialize, Serialize};

use super::alphabet::{Alphabet, Letter, LetterSet};
use super::lexer::{Cursor, Tok};
use crate::error::Result;

/// LTL over letter-set atoms. `Atom(A)` holds at a position iff the letter
/// there belongs to `A`. `F`, `G` and `->` are expanded by the parser.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum LtlFormula {
    Atom(LetterSet),
    Not(Box<LtlFormula>),
    Or(Box<LtlFormula>, Box<LtlFormula>),
    And(Box<LtlFormula>, Box<LtlFormula>),
    Next(Box<LtlFormula>),
    Until(Box<LtlFormula>, Box<LtlFormula>),
}

impl LtlFormula {
    pub fn top(alphabet: &Alphabet) -> Self {
        LtlFormula::Atom(alphabet.all())
    }

    pub fn bottom() -> Self {
        LtlFormula::Atom(LetterSet::EMPTY)
    }

    pub fn letter(letter: Letter) -> Self {
        LtlFormula::Atom(LetterSet::singleton(letter))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        LtlFormula::Not(Box::new(self))
    }

    pub fn or(self, other: Self) -> Self {
        LtlFormula::Or(Box::new(self), Box::new(other))
    }

    pub fn and(self, other: Self) -> Self {
        LtlFormula::And(Box::new(self), Box::new(other))
    }

    pub fn next(self) -> Self {
        LtlFormula::Next(Box::new(self))
    }

    pub fn until(self, other: Self) -> Self {
        LtlFormula::Until(Box::new(self), Box::new(other))
    }

    /// `F φ = T U φ`.
    pub fn eventually(self, alphabet: &Alphabet) -> Self {
        LtlFormula::top(alphabet).until(self)
    }

    /// `G φ = ¬F¬φ`.
    pub fn always(self, alphabet: &Alphabet) -> Self {
        self.not().eventually(alphabet).not()
    }

    pub fn implies(self, other: Self) -> Self {
        self.not().or(other)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            LtlFormula::Atom(_) => 1,
            LtlFormula::Not(a) | LtlFormula::Next(a) => 1 + a.size(),
            LtlFormula::Or(a, b) | LtlFormula::And(a, b) | LtlFormula::Until(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Concrete syntax accepted by [`parse_ltl`].
    pub fn display(&self, alphabet: &Alphabet) -> String {
        match self {
            LtlFormula::Atom(s) if *s == alphabet.all() => "true".into(),
            LtlFormula::Atom(s) if s.is_empty() => "false".into(),
            LtlFormula::Atom(s) if s.len() == 1 => alphabet.format_letter(s.first().unwrap()),
            LtlFormula::Atom(s) => alphabet.format_set(*s),
            LtlFormula::Not(a) => format!("!{}", a.display_operand(alphabet)),
            LtlFormula::Next(a) => format!("X {}", a.display_operand(alphabet)),
            LtlFormula::Or(a, b) => {
                format!("{} | {}", a.display_operand(alphabet), b.display_operand(alphabet))
            }
            LtlFormula::And(a, b) => {
                format!("{} & {}", a.display_operand(alphabet), b.display_operand(alphabet))
            }
            LtlFormula::Until(a, b) => {
                format!("{} U {}", a.display_operand(alphabet), b.display_operand(alphabet))
            }
        }
    }

    fn display_operand(&self, alphabet: &Alphabet) -> String {
        match self {
            LtlFormula::Atom(_) | LtlFormula::Not(_) | LtlFormula::Next(_) => self.display(alphabet),
            _ => format!("({})", self.display(alphabet)),
        }
    }
}

/// Parses a standalone LTL formula over `alphabet`.
pub fn parse_ltl(text: &str, alphabet: &Alphabet) -> Result<LtlFormula> {
    let mut cur = Cursor::new(text)?;
    let phi = parse_ltl_expr(&mut cur, alphabet)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input".into()));
    }
    Ok(phi)
}

pub(crate) fn parse_ltl_expr(cur: &mut Cursor, alphabet: &Alphabet) -> Result<LtlFormula> {
    let lhs = parse_or(cur, alphabet)?;
    if cur.eat(&Tok::Arrow) {
        let rhs = parse_ltl_expr(cur, alphabet)?;
        return Ok(lhs.implies(rhs));
    }
    Ok(lhs)
}

fn parse_or(cur: &mut Cursor, alphabet: &Alphabet) -> Result<LtlFormula> {
    let mut lhs = parse_and(cur, alphabet)?;
    while cur.eat(&Tok::Pipe) {
        lhs = lhs.or(parse_and(cur, alphabet)?);
    }
    Ok(lhs)
}

fn parse_and(cur: &mut Cursor, alphabet: &Alphabet) -> Result<LtlFormula> {
    let mut lhs = parse_until(cur, alphabet)?;
    while cur.eat(&Tok::Amp) {
        lhs = lhs.and(parse_until(cur, alphabet)?);
    }
    Ok(lhs)
}

fn parse_until(cur: &mut Cursor, alphabet: &Alphabet) -> Result<LtlFormula> {
    let lhs = parse_unary(cur, alphabet)?;
    if cur.eat_keyword("U") {
        let rhs = parse_until(cur, alphabet)?;
        return Ok(lhs.until(rhs));
    }
    Ok(lhs)
}

fn parse_unary(cur: &mut Cursor, alphabet: &Alphabet) -> Result<LtlFormula> {
    if cur.eat(&Tok::Bang) {
        return Ok(parse_unary(cur, alphabet)?.not());
    }
    if cur.eat_keyword("X") {
        return Ok(parse_unary(cur, alphabet)?.next());
    }
    if cur.eat_keyword("F") {
        return Ok(parse_unary(cur, alphabet)?.eventually(alphabet));
    }
    if cur.eat_keyword("G") {
        return Ok(parse_unary(cur, alphabet)?.always(alphabet));
    }
    parse_primary(cur, alphabet)
}

fn parse_primary(cur: &mut Cursor, alphabet: &Alphabet) -> Result<LtlFormula> {
    match cur.peek() {
        Some(Tok::LParen) => {
            cur.bump();
            let phi = parse_ltl_expr(cur, alphabet)?;
            cur.expect(&Tok::RParen)?;
            Ok(phi)
        }
        Some(Tok::LBrace) => {
            if cur.peek_at(1) == Some(&Tok::LBrace) {
                Ok(LtlFormula::Atom(parse_letter_list(cur, alphabet)?))
            } else {
                Ok(LtlFormula::letter(parse_letter(cur, alphabet)?))
            }
        }
        Some(Tok::Ident(w)) => {
            let w = w.clone();
            match w.as_str() {
                "true" | "sigma" => {
                    cur.bump();
                    Ok(LtlFormula::top(alphabet))
                }
                "false" => {
                    cur.bump();
                    Ok(LtlFormula::bottom())
                }
                "U" | "X" | "F" | "G" => Err(cur.error("expected an operand".into())),
                _ => {
                    let set = alphabet.letters_with(&w)?;
                    cur.bump();
                    Ok(LtlFormula::Atom(set))
                }
            }
        }
        _ => Err(cur.error("expected an LTL operand".into())),
    }
}

/// `{p,q}`: a single letter.
pub(crate) fn parse_letter(cur: &mut Cursor, alphabet: &Alphabet) -> Result<Letter> {
    cur.expect(&Tok::LBrace)?;
    let mut props = Vec::new();
    if !cur.eat(&Tok::RBrace) {
        loop {
            props.push(cur.expect_ident()?);
            if cur.eat(&Tok::RBrace) {
                break;
            }
            cur.expect(&Tok::Comma)?;
        }
    }
    alphabet.letter(&props)
}

/// `{{p},{p,q}}`: an explicit set of letters.
pub(crate) fn parse_letter_list(cur: &mut Cursor, alphabet: &Alphabet) -> Result<LetterSet> {
    cur.expect(&Tok::LBrace)?;
    let mut set = LetterSet::EMPTY;
    loop {
        set.insert(parse_letter(cur, alphabet)?);
        if cur.eat(&Tok::RBrace) {
            break;
        }
        cur.expect(&Tok::Comma)?;
    }
    Ok(set)
}
