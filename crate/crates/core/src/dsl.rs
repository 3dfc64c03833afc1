//! Text format for schemas.
//!
//! ```text
//! # comment
//! granules g1 g2 g3;
//! constraints {
//!   Sub(g1,g2);
//!   !Disj(g2,bot);
//! }
//! ```
//!
//! Declarations and constraint blocks may appear in any order and any number
//! of times. `bot` and `top` need no declaration and cannot be declared.

use std::collections::BTreeSet;
use std::fmt::Write;

use thiserror::Error;

use crate::syntax::{Atom, Constraint, Granule, Literal, Pred, Schema, Sign, BOTTOM_NAME, TOP_NAME};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("unknown granule `{0}`")]
    UnknownGranule(String),
    #[error("`{0}` is reserved and cannot be declared")]
    ReservedName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bang,
    LParen,
    RParen,
    Comma,
    Semi,
    LBrace,
    RBrace,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Bang => "`!`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        let single = match c {
            '!' => Some(Tok::Bang),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            column += 1;
            out.push((tok, pos));
        } else if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if !(c.is_alphanumeric() || c == '_') {
                    break;
                }
                word.push(c);
                chars.next();
                column += 1;
            }
            out.push((Tok::Ident(word), pos));
        } else {
            return Err(ParseError { line, column, kind: ParseErrorKind::UnexpectedChar(c) });
        }
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct RawConstraint {
    sign: Sign,
    pred: Pred,
    terms: [(String, Pos); 2],
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn error(&self, expected: &str) -> ParseError {
        let pos = self.pos();
        ParseError {
            line: pos.line,
            column: pos.column,
            kind: ParseErrorKind::Unexpected { expected: expected.into(), found: self.peek().describe() },
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error(&tok.describe()))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(String, Pos), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let pos = self.pos();
                self.at += 1;
                Ok((s, pos))
            }
            _ => Err(self.error(expected)),
        }
    }

    fn constraint(&mut self) -> Result<RawConstraint, ParseError> {
        let sign = if *self.peek() == Tok::Bang {
            self.at += 1;
            Sign::Neg
        } else {
            Sign::Pos
        };
        let pred = match self.peek() {
            Tok::Ident(s) if s == "Sub" => Pred::Sub,
            Tok::Ident(s) if s == "Disj" => Pred::Disj,
            _ => return Err(self.error("`Sub` or `Disj`")),
        };
        self.at += 1;
        self.expect(Tok::LParen)?;
        let left = self.ident("a granule")?;
        self.expect(Tok::Comma)?;
        let right = self.ident("a granule")?;
        self.expect(Tok::RParen)?;
        Ok(RawConstraint { sign, pred, terms: [left, right] })
    }
}

fn resolve(name: &str, pos: Pos, declared: &BTreeSet<String>) -> Result<Granule, ParseError> {
    match name {
        BOTTOM_NAME => Ok(Granule::Bottom),
        TOP_NAME => Ok(Granule::Top),
        n if declared.contains(n) => Ok(Granule::named(n).expect("declared names are valid")),
        n => Err(ParseError {
            line: pos.line,
            column: pos.column,
            kind: ParseErrorKind::UnknownGranule(n.to_string()),
        }),
    }
}

fn build(raw: &RawConstraint, declared: &BTreeSet<String>) -> Result<Constraint, ParseError> {
    let [(l, lp), (r, rp)] = &raw.terms;
    let left = resolve(l, *lp, declared)?;
    let right = resolve(r, *rp, declared)?;
    Ok(Literal::new(raw.sign, Atom::new(raw.pred, left, right)))
}

pub fn parse_schema(text: &str) -> Result<Schema, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let mut declared = BTreeSet::new();
    let mut raw = Vec::new();
    let mut items = 0;
    loop {
        match p.peek() {
            Tok::Ident(s) if s == "granules" => {
                p.at += 1;
                let mut any = false;
                while let Tok::Ident(_) = p.peek() {
                    let (name, pos) = p.ident("a granule name")?;
                    if name == BOTTOM_NAME || name == TOP_NAME {
                        return Err(ParseError {
                            line: pos.line,
                            column: pos.column,
                            kind: ParseErrorKind::ReservedName(name),
                        });
                    }
                    declared.insert(name);
                    any = true;
                }
                if !any {
                    return Err(p.error("a granule name"));
                }
                p.expect(Tok::Semi)?;
            }
            Tok::Ident(s) if s == "constraints" => {
                p.at += 1;
                p.expect(Tok::LBrace)?;
                while *p.peek() != Tok::RBrace {
                    raw.push(p.constraint()?);
                    p.expect(Tok::Semi)?;
                }
                p.expect(Tok::RBrace)?;
            }
            Tok::Eof if items > 0 => break,
            _ => return Err(p.error("`granules` or `constraints`")),
        }
        items += 1;
    }
    let constraints = raw.iter().map(|r| build(r, &declared)).collect::<Result<Vec<_>, _>>()?;
    let granules = declared.iter().map(|n| Granule::named(n).expect("identifier"));
    Ok(Schema::new(granules, constraints).expect("constraints only mention declared granules"))
}

/// A single constraint such as `!Sub(g1,g2)`, resolved against `schema`.
pub fn parse_constraint(text: &str, schema: &Schema) -> Result<Constraint, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let raw = p.constraint()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("end of input"));
    }
    let declared = schema.named().map(|g| g.name().to_string()).collect();
    build(&raw, &declared)
}

/// Text form that [`parse_schema`] reads back to the same schema.
pub fn print_schema(s: &Schema) -> String {
    let mut out = String::new();
    let names: Vec<&str> = s.named().map(|g| g.name()).collect();
    if !names.is_empty() {
        let _ = writeln!(out, "granules {};", names.join(" "));
    }
    out.push_str("constraints {\n");
    for c in s.constraints() {
        let _ = writeln!(out, "  {c};");
    }
    out.push_str("}\n");
    out
}
