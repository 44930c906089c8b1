//! Regular expression syntax.
//!
//! Grammar (whitespace is not allowed):
//!
//! ```text
//! alt  := cat ('|' cat)*
//! cat  := rep+
//! rep  := atom ('*' | '+' | '?')*
//! atom := letter | '&' | '(' alt ')'
//! ```
//!
//! Letters are single characters from `[a-z0-9]`; `&` denotes the empty word.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RegexAst {
    Letter(char),
    Epsilon,
    Alt(Box<RegexAst>, Box<RegexAst>),
    Cat(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
    Plus(Box<RegexAst>),
    Opt(Box<RegexAst>),
}

impl RegexAst {
    pub fn letter(c: char) -> Self {
        RegexAst::Letter(c)
    }

    pub fn alt(l: RegexAst, r: RegexAst) -> Self {
        RegexAst::Alt(Box::new(l), Box::new(r))
    }

    pub fn cat(l: RegexAst, r: RegexAst) -> Self {
        RegexAst::Cat(Box::new(l), Box::new(r))
    }

    pub fn star(c: RegexAst) -> Self {
        RegexAst::Star(Box::new(c))
    }

    pub fn plus(c: RegexAst) -> Self {
        RegexAst::Plus(Box::new(c))
    }

    pub fn opt(c: RegexAst) -> Self {
        RegexAst::Opt(Box::new(c))
    }

    /// Letters occurring in the expression, sorted.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            RegexAst::Letter(c) => {
                out.insert(*c);
            }
            RegexAst::Epsilon => {}
            RegexAst::Alt(l, r) | RegexAst::Cat(l, r) => {
                l.collect_letters(out);
                r.collect_letters(out);
            }
            RegexAst::Star(c) | RegexAst::Plus(c) | RegexAst::Opt(c) => c.collect_letters(out),
        }
    }
}

impl fmt::Display for RegexAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegexAst::Letter(c) => write!(f, "{c}"),
            RegexAst::Epsilon => write!(f, "&"),
            RegexAst::Alt(l, r) => write!(f, "({l}|{r})"),
            RegexAst::Cat(l, r) => write!(f, "({l}{r})"),
            RegexAst::Star(c) => write!(f, "({c})*"),
            RegexAst::Plus(c) => write!(f, "({c})+"),
            RegexAst::Opt(c) => write!(f, "({c})?"),
        }
    }
}

pub fn is_letter(c: char) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit()
}

pub fn parse_regex(text: &str) -> Result<RegexAst> {
    if text.is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty expression".into(),
        });
    }
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let ast = parser.alt()?;
    match parser.peek() {
        None => Ok(ast),
        Some(b')') => Err(parser.error("unbalanced ')'")),
        Some(_) => Err(parser.error("unexpected character")),
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn alt(&mut self) -> Result<RegexAst> {
        let mut left = self.cat()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let right = self.cat()?;
            left = RegexAst::alt(left, right);
        }
        Ok(left)
    }

    fn cat(&mut self) -> Result<RegexAst> {
        let mut left = self.rep()?;
        while matches!(self.peek(), Some(c) if c == b'(' || c == b'&' || is_letter(c as char)) {
            let right = self.rep()?;
            left = RegexAst::cat(left, right);
        }
        Ok(left)
    }

    fn rep(&mut self) -> Result<RegexAst> {
        let mut node = self.atom()?;
        loop {
            node = match self.peek() {
                Some(b'*') => RegexAst::star(node),
                Some(b'+') => RegexAst::plus(node),
                Some(b'?') => RegexAst::opt(node),
                _ => return Ok(node),
            };
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<RegexAst> {
        match self.peek() {
            None => Err(self.error("expected a letter, '&' or '('")),
            Some(b'&') => {
                self.pos += 1;
                Ok(RegexAst::Epsilon)
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = match self.alt() {
                    Err(Error::Syntax { offset, .. }) if offset == self.bytes.len() => {
                        return Err(Error::Syntax {
                            offset: open,
                            message: "unbalanced '('".into(),
                        })
                    }
                    other => other?,
                };
                if self.peek() != Some(b')') {
                    if self.peek().is_none() {
                        return Err(Error::Syntax {
                            offset: open,
                            message: "unbalanced '('".into(),
                        });
                    }
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if is_letter(c as char) => {
                self.pos += 1;
                Ok(RegexAst::Letter(c as char))
            }
            Some(b'*' | b'+' | b'?' | b'|') => Err(self.error("dangling operator")),
            Some(b')') => Err(self.error("unbalanced ')'")),
            Some(_) => Err(self.error("illegal character")),
        }
    }
}
