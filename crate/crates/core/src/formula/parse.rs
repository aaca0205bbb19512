//! Recursive-descent parser for both formula languages.
//!
//! Grammar, loosest first:
//!
//! ```text
//! imp   := or (("->" | "-<") imp)?
//! or    := and ("|" or)?
//! and   := unary ("&" and)?
//! unary := "~" unary | "[]" unary | "<>" unary | "[b]" unary | "<b>" unary
//!        | atom | "top" | "bot" | "(" imp ")"
//! ```
//!
//! Tense input may use `~`, `->` and the four modalities; bi-intuitionistic
//! input may use `->` and `-<` only.

use thiserror::Error;

use super::{BiFormula, SurfaceTense};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Excl,
    Box,
    Dia,
    BBox,
    BDia,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::Top => "`top`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Excl => "`-<`".into(),
            Tok::Box => "`[]`".into(),
            Tok::Dia => "`<>`".into(),
            Tok::BBox => "`[b]`".into(),
            Tok::BDia => "`<b>`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    const FIXED: &[(&str, Tok)] = &[
        ("->", Tok::Arrow),
        ("-<", Tok::Excl),
        ("[]", Tok::Box),
        ("<>", Tok::Dia),
        ("[b]", Tok::BBox),
        ("<b>", Tok::BDia),
        ("~", Tok::Tilde),
        ("&", Tok::Amp),
        ("|", Tok::Bar),
        ("(", Tok::LParen),
        (")", Tok::RParen),
    ];
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_lowercase() {
            let start = i;
            while i < bytes.len()
                && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
            {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "top" => Tok::Top,
                "bot" => Tok::Bot,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((start, tok));
            continue;
        }
        for (lit, tok) in FIXED {
            if text[i..].starts_with(lit) {
                out.push((i, tok.clone()));
                i += lit.len();
                continue 'outer;
            }
        }
        let found = text[i..].chars().next().unwrap_or(' ');
        return Err(ParseError {
            offset: i,
            expected: vec!["a token".into()],
            found: format!("`{found}`"),
        });
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dialect {
    Tense,
    Bi,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    dialect: Dialect,
}

/// Syntax tree shared by both dialects before conversion.
enum Node {
    Atom(String),
    Top,
    Bot,
    Neg(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Imp(Box<Node>, Box<Node>),
    Excl(Box<Node>, Box<Node>),
    Box(Box<Node>),
    Dia(Box<Node>),
    BBox(Box<Node>),
    BDia(Box<Node>),
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn binary_ops(&self) -> &'static [&'static str] {
        match self.dialect {
            Dialect::Tense => &["`&`", "`|`", "`->`"],
            Dialect::Bi => &["`&`", "`|`", "`->`", "`-<`"],
        }
    }

    fn operand_start(&self) -> &'static [&'static str] {
        match self.dialect {
            Dialect::Tense => &[
                "atom", "`top`", "`bot`", "`(`", "`~`", "`[]`", "`<>`", "`[b]`", "`<b>`",
            ],
            Dialect::Bi => &["atom", "`top`", "`bot`", "`(`"],
        }
    }

    fn imp(&mut self) -> Result<Node, ParseError> {
        let lhs = self.or()?;
        match self.peek() {
            Tok::Arrow => {
                self.bump();
                Ok(Node::Imp(Box::new(lhs), Box::new(self.imp()?)))
            }
            Tok::Excl if self.dialect == Dialect::Bi => {
                self.bump();
                Ok(Node::Excl(Box::new(lhs), Box::new(self.imp()?)))
            }
            _ => Ok(lhs),
        }
    }

    fn or(&mut self) -> Result<Node, ParseError> {
        let lhs = self.and()?;
        if *self.peek() == Tok::Bar {
            self.bump();
            return Ok(Node::Or(Box::new(lhs), Box::new(self.or()?)));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Node, ParseError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Amp {
            self.bump();
            return Ok(Node::And(Box::new(lhs), Box::new(self.and()?)));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        let tense = self.dialect == Dialect::Tense;
        let wrap: Option<fn(Box<Node>) -> Node> = match self.peek() {
            Tok::Tilde if tense => Some(Node::Neg),
            Tok::Box if tense => Some(Node::Box),
            Tok::Dia if tense => Some(Node::Dia),
            Tok::BBox if tense => Some(Node::BBox),
            Tok::BDia if tense => Some(Node::BDia),
            _ => None,
        };
        if let Some(wrap) = wrap {
            self.bump();
            return Ok(wrap(Box::new(self.unary()?)));
        }
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Node::Atom(name))
            }
            Tok::Top => {
                self.bump();
                Ok(Node::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Node::Bot)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.imp()?;
                if *self.peek() != Tok::RParen {
                    let mut expected = self.binary_ops().to_vec();
                    expected.push("`)`");
                    return Err(self.error(&expected));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(self.operand_start())),
        }
    }

    fn finish(mut self) -> Result<Node, ParseError> {
        let node = self.imp()?;
        if *self.peek() != Tok::End {
            let mut expected = self.binary_ops().to_vec();
            expected.push("end of input");
            return Err(self.error(&expected));
        }
        Ok(node)
    }
}

fn run(text: &str, dialect: Dialect) -> Result<Node, ParseError> {
    let toks = lex(text)?;
    Parser {
        toks,
        pos: 0,
        dialect,
    }
    .finish()
}

/// Parses tense input syntax.
pub fn parse_tense(text: &str) -> Result<SurfaceTense, ParseError> {
    fn conv(n: Node) -> SurfaceTense {
        let b = |n: Box<Node>| Box::new(conv(*n));
        match n {
            Node::Atom(p) => SurfaceTense::Atom(p),
            Node::Top => SurfaceTense::Top,
            Node::Bot => SurfaceTense::Bot,
            Node::Neg(g) => SurfaceTense::Neg(b(g)),
            Node::And(l, r) => SurfaceTense::And(b(l), b(r)),
            Node::Or(l, r) => SurfaceTense::Or(b(l), b(r)),
            Node::Imp(l, r) => SurfaceTense::Imp(b(l), b(r)),
            Node::Box(g) => SurfaceTense::Box(b(g)),
            Node::Dia(g) => SurfaceTense::Dia(b(g)),
            Node::BBox(g) => SurfaceTense::BBox(b(g)),
            Node::BDia(g) => SurfaceTense::BDia(b(g)),
            Node::Excl(..) => unreachable!("tense dialect never produces exclusion"),
        }
    }
    run(text, Dialect::Tense).map(conv)
}

/// Parses bi-intuitionistic syntax.
pub fn parse_bi(text: &str) -> Result<BiFormula, ParseError> {
    fn conv(n: Node) -> BiFormula {
        match n {
            Node::Atom(p) => BiFormula::Atom(p),
            Node::Top => BiFormula::Top,
            Node::Bot => BiFormula::Bot,
            Node::And(l, r) => BiFormula::and(conv(*l), conv(*r)),
            Node::Or(l, r) => BiFormula::or(conv(*l), conv(*r)),
            Node::Imp(l, r) => BiFormula::imp(conv(*l), conv(*r)),
            Node::Excl(l, r) => BiFormula::excl(conv(*l), conv(*r)),
            _ => unreachable!("bi dialect never produces modal or negation nodes"),
        }
    }
    run(text, Dialect::Bi).map(conv)
}
