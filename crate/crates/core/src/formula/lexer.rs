use crate::error::{LprlError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Dot,
    Semi,
    Colon,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Iff,
    NotIff,
    Eq,
    NotEq,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Iff => "`<=>`".into(),
            Tok::NotIff => "`<!=>`".into(),
            Tok::Eq => "`=`".into(),
            Tok::NotEq => "`!=`".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned { tok, line: tl, col: tc });
            *i += len;
            *col += len;
        };
        let la = [chars.get(i + 1).copied(), chars.get(i + 2).copied(), chars.get(i + 3).copied()];
        let rest = |k: usize| la[k - 1];
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if rest(1) == Some('/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            '[' => push(Tok::LBracket, 1, &mut i, &mut col),
            ']' => push(Tok::RBracket, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '&' => push(Tok::Amp, 1, &mut i, &mut col),
            '|' => push(Tok::Pipe, 1, &mut i, &mut col),
            '=' => push(Tok::Eq, 1, &mut i, &mut col),
            '-' if rest(1) == Some('>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '!' if rest(1) == Some('=') => push(Tok::NotEq, 2, &mut i, &mut col),
            '!' => push(Tok::Bang, 1, &mut i, &mut col),
            '<' if rest(1) == Some('=') && rest(2) == Some('>') => {
                push(Tok::Iff, 3, &mut i, &mut col)
            }
            '<' if rest(1) == Some('!') && rest(2) == Some('=') && rest(3) == Some('>') => {
                push(Tok::NotIff, 4, &mut i, &mut col)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let len = j - start;
                push(Tok::Ident(word), len, &mut i, &mut col);
            }
            other => {
                return Err(LprlError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

/// Cursor over a token stream shared by the LTL and sentence parsers.
pub(crate) struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        let lines = text.split('\n').count();
        let last_col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Ok(Cursor { toks, pos: 0, end: (lines, last_col) })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_keyword(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(w)) if w == word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {}", tok.describe())))
        }
    }

    pub(crate) fn expect_ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.error("expected an identifier".into())),
        }
    }

    pub(crate) fn error(&self, msg: String) -> LprlError {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.col));
        let found = self
            .toks
            .get(self.pos)
            .map_or("end of input".to_string(), |s| s.tok.describe());
        LprlError::Syntax { line, col, msg: format!("{msg}, found {found}") }
    }
}
