//! Canonical codes: parenthesized integer token sequences.
//!
//! Tokens are stored as `u64` so that comparing two codes is a plain slice
//! comparison: `(` < `)` < `,` < 0 < 1 < ...

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub const LPAREN: u64 = 0;
pub const RPAREN: u64 = 1;
pub const COMMA: u64 = 2;
const INT_BASE: u64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    LParen,
    RParen,
    Comma,
    Int(u64),
}

impl Token {
    pub fn encode(self) -> u64 {
        match self {
            Token::LParen => LPAREN,
            Token::RParen => RPAREN,
            Token::Comma => COMMA,
            Token::Int(n) => n + INT_BASE,
        }
    }

    pub fn decode(raw: u64) -> Token {
        match raw {
            LPAREN => Token::LParen,
            RPAREN => Token::RParen,
            COMMA => Token::Comma,
            n => Token::Int(n - INT_BASE),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Code(Vec<u64>);

impl Code {
    pub fn empty() -> Code {
        Code(Vec::new())
    }

    pub fn from_tokens(tokens: impl IntoIterator<Item = Token>) -> Code {
        Code(tokens.into_iter().map(Token::encode).collect())
    }

    pub fn raw(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = Token> + '_ {
        self.0.iter().map(|&t| Token::decode(t))
    }

    /// Balanced parentheses and no two adjacent integers.
    pub fn is_well_formed(&self) -> bool {
        let mut depth = 0i64;
        let mut prev_int = false;
        for t in self.tokens() {
            match t {
                Token::LParen => depth += 1,
                Token::RParen => depth -= 1,
                Token::Comma => {}
                Token::Int(_) if prev_int => return false,
                Token::Int(_) => {}
            }
            if depth < 0 {
                return false;
            }
            prev_int = matches!(t, Token::Int(_));
        }
        depth == 0
    }

    /// Whether `other` occurs as a contiguous token run inside `self`.
    pub fn contains(&self, other: &Code) -> bool {
        other.is_empty() || self.0.windows(other.len()).any(|w| w == other.0.as_slice())
    }

    pub fn parse(text: &str) -> Option<Code> {
        let mut out = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => out.push(LPAREN),
                b')' => out.push(RPAREN),
                b',' => out.push(COMMA),
                b'0'..=b'9' => {
                    let start = i;
                    while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                        i += 1;
                    }
                    let n: u64 = text[start..=i].parse().ok()?;
                    out.push(n.checked_add(INT_BASE)?);
                }
                _ => return None,
            }
            i += 1;
        }
        let code = Code(out);
        code.is_well_formed().then_some(code)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.tokens() {
            match t {
                Token::LParen => f.write_str("(")?,
                Token::RParen => f.write_str(")")?,
                Token::Comma => f.write_str(",")?,
                Token::Int(n) => write!(f, "{n}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code({self})")
    }
}

/// Appends items with commas between siblings of the same group.
#[derive(Default)]
pub struct CodeBuilder {
    out: Vec<u64>,
    need_comma: bool,
}

impl CodeBuilder {
    pub fn new() -> CodeBuilder {
        CodeBuilder::default()
    }

    fn separate(&mut self) {
        if self.need_comma {
            self.out.push(COMMA);
        }
    }

    pub fn open(&mut self) -> &mut Self {
        self.separate();
        self.out.push(LPAREN);
        self.need_comma = false;
        self
    }

    pub fn close(&mut self) -> &mut Self {
        self.out.push(RPAREN);
        self.need_comma = true;
        self
    }

    pub fn int(&mut self, n: u64) -> &mut Self {
        self.separate();
        self.out.push(n + INT_BASE);
        self.need_comma = true;
        self
    }

    pub fn ints(&mut self, ns: impl IntoIterator<Item = u64>) -> &mut Self {
        for n in ns {
            self.int(n);
        }
        self
    }

    pub fn code(&mut self, c: &Code) -> &mut Self {
        self.raw(c.raw())
    }

    /// Appends one already-framed item given as raw tokens.
    pub fn raw(&mut self, tokens: &[u64]) -> &mut Self {
        self.separate();
        self.out.extend_from_slice(tokens);
        self.need_comma = true;
        self
    }

    pub fn peek(&self) -> &[u64] {
        &self.out
    }

    pub fn finish(&mut self) -> Code {
        self.need_comma = false;
        Code(std::mem::take(&mut self.out))
    }
}

/// Label code of every node of interest.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelMap(HashMap<usize, Code>);

impl LabelMap {
    pub fn new() -> LabelMap {
        LabelMap::default()
    }

    /// Every node in `nodes` labeled `(color)`.
    pub fn uniform(nodes: &[usize], color: u64) -> LabelMap {
        LabelMap(nodes.iter().map(|&x| (x, leaf_code(color))).collect())
    }

    /// Node `u` of `g` labeled `(color of u)`.
    pub fn from_colors(colors: &[u64]) -> LabelMap {
        LabelMap(
            colors
                .iter()
                .enumerate()
                .map(|(u, &c)| (u, leaf_code(c)))
                .collect(),
        )
    }

    pub fn get(&self, node: usize) -> Result<&Code> {
        self.0
            .get(&node)
            .ok_or_else(|| Error::Validation(format!("no label for node {node}")))
    }

    /// Shadows any previous label of `node`.
    pub fn insert(&mut self, node: usize, code: Code) {
        self.0.insert(node, code);
    }
}

/// `(color)`.
pub fn leaf_code(color: u64) -> Code {
    let mut b = CodeBuilder::new();
    b.open().int(color).close();
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse_round_trip() {
        let mut b = CodeBuilder::new();
        b.open().int(3).open().int(10).int(0).close().close();
        let c = b.finish();
        assert_eq!(c.to_string(), "(3,(10,0))");
        assert_eq!(Code::parse("(3,(10,0))"), Some(c));
        assert_eq!(Code::parse("(3"), None);
        assert_eq!(Code::parse("(x)"), None);
    }

    #[test]
    fn token_order() {
        let order = [
            Token::LParen,
            Token::RParen,
            Token::Comma,
            Token::Int(0),
            Token::Int(1),
        ];
        for w in order.windows(2) {
            assert!(w[0] < w[1]);
            assert!(w[0].encode() < w[1].encode());
        }
        let a = Code::parse("(0)").unwrap();
        let b = Code::parse("(0,1)").unwrap();
        let c = Code::parse("(1)").unwrap();
        assert!(a < b && b < c);
    }

    #[test]
    fn containment() {
        let outer = Code::parse("((0),(1,2),(0))").unwrap();
        assert!(outer.contains(&Code::parse("(1,2)").unwrap()));
        assert!(!outer.contains(&Code::parse("(2,1)").unwrap()));
    }
}
