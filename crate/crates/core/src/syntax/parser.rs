//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Precedence from loosest to tightest: `->` (right associative), `+`, `&`,
//! `*`, `/\`, `\/`, then the prefix forms `!` and `dN(...)`. All binary
//! operators other than `->` associate to the left.

use super::{Formula, LogicProfile};
use crate::error::{ParseError, ParseErrorKind};
use crate::rational::Rational01;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Arrow,
    Plus,
    Amp,
    Star,
    Wedge,
    Vee,
    Bang,
    LParen,
    RParen,
    Zero,
    One,
    K,
    Div(u32),
    Const(String),
    Ident(String),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn next_token(&mut self) -> Result<Option<(usize, Tok)>, ParseError> {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
        let start = self.pos;
        let rest = self.rest();
        let Some(c) = rest.chars().next() else {
            return Ok(None);
        };
        let fixed = [
            ("->", Tok::Arrow),
            ("/\\", Tok::Wedge),
            ("\\/", Tok::Vee),
            ("+", Tok::Plus),
            ("&", Tok::Amp),
            ("*", Tok::Star),
            ("!", Tok::Bang),
            ("(", Tok::LParen),
            (")", Tok::RParen),
        ];
        for (lit, tok) in fixed {
            if rest.starts_with(lit) {
                self.pos += lit.len();
                return Ok(Some((start, tok)));
            }
        }
        if c == '[' {
            let Some(end) = rest.find(']') else {
                return Err(ParseError::syntax(start, "unterminated truth constant"));
            };
            self.pos += end + 1;
            return Ok(Some((start, Tok::Const(rest[1..end].to_string()))));
        }
        if c.is_ascii_digit() {
            let len = rest.bytes().take_while(u8::is_ascii_digit).count();
            self.pos += len;
            return match &rest[..len] {
                "0" => Ok(Some((start, Tok::Zero))),
                "1" => Ok(Some((start, Tok::One))),
                other => Err(ParseError::syntax(
                    start,
                    format!("numeric literal `{other}`; write truth constants as [p/q]"),
                )),
            };
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .bytes()
                .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                .count();
            self.pos += len;
            let word = &rest[..len];
            if word == "K" {
                return Ok(Some((start, Tok::K)));
            }
            if let Some(index) = division_index(word) {
                let n: u32 = index.parse().map_err(|_| {
                    ParseError::syntax(start, format!("division index `{index}` too large"))
                })?;
                if n == 0 {
                    return Err(ParseError::syntax(start, "division index must be at least 1"));
                }
                return Ok(Some((start, Tok::Div(n))));
            }
            return Ok(Some((start, Tok::Ident(word.to_string()))));
        }
        Err(ParseError::syntax(start, format!("unexpected character `{c}`")))
    }
}

fn division_index(word: &str) -> Option<&str> {
    let digits = word.strip_prefix('d')?;
    (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())).then_some(digits)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    profile: LogicProfile,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.idx).cloned();
        self.idx += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.position();
        match self.bump() {
            Some((_, t)) if t == want => Ok(()),
            _ => Err(ParseError::syntax(pos, format!("expected {what}"))),
        }
    }

    fn gate(&self, pos: usize, enabled: bool, name: &'static str) -> Result<(), ParseError> {
        if enabled {
            Ok(())
        } else {
            Err(ParseError {
                position: pos,
                kind: ParseErrorKind::NotInProfile(name),
            })
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.binary(0)?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    /// Left-associative levels: `+`, `&`, `*`, `/\`, `\/`.
    fn binary(&mut self, level: usize) -> Result<Formula, ParseError> {
        const LEVELS: [Tok; 5] = [Tok::Plus, Tok::Amp, Tok::Star, Tok::Wedge, Tok::Vee];
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        while self.peek() == Some(&LEVELS[level]) {
            let pos = self.position();
            self.bump();
            if LEVELS[level] == Tok::Star {
                self.gate(pos, self.profile.product, "*")?;
            }
            let rhs = self.binary(level + 1)?;
            lhs = match level {
                0 => Formula::oplus(lhs, rhs),
                1 => Formula::odot(lhs, rhs),
                2 => Formula::bullet(lhs, rhs),
                3 => Formula::meet(lhs, rhs),
                _ => Formula::join(lhs, rhs),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.position();
        match self.peek().cloned() {
            Some(Tok::Bang) => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::Div(n)) => {
                self.bump();
                self.gate(pos, self.profile.division, "dN")?;
                self.expect(Tok::LParen, "`(` after division connective")?;
                let arg = self.implication()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::div(n, arg))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let pos = self.position();
        match self.bump() {
            Some((_, Tok::LParen)) => {
                let f = self.implication()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some((_, Tok::Zero)) => Ok(Formula::Zero),
            Some((_, Tok::One)) => Ok(Formula::One),
            Some((_, Tok::K)) => {
                self.gate(pos, self.profile.fixpoint, "K")?;
                Ok(Formula::FixK)
            }
            Some((_, Tok::Const(text))) => {
                self.gate(pos, self.profile.constants, "[r]")?;
                let r: Rational01 = text.parse().map_err(|e| ParseError {
                    position: pos,
                    kind: ParseErrorKind::ConstantOutOfRange(e),
                })?;
                Ok(Formula::Const(r))
            }
            Some((_, Tok::Ident(name))) => Ok(Formula::Var(name)),
            Some(_) => Err(ParseError::syntax(pos, "expected a formula")),
            None => Err(ParseError::syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses `text` under `profile`, rejecting connectives the profile lacks.
pub fn parse(text: &str, profile: &LogicProfile) -> Result<Formula, ParseError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
        profile: *profile,
    };
    let f = p.implication()?;
    if p.idx < p.toks.len() {
        return Err(ParseError::syntax(p.position(), "trailing input"));
    }
    Ok(f)
}
