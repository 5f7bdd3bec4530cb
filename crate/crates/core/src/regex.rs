//! Regular expressions: `+` union, juxtaposition, postfix `*`, parentheses,
//! `@` for ε and `#` for the empty language (whole expression only).
//! Whitespace is ignored.

use std::fmt;

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::symbol::{Symbol, SymbolSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegexAst {
    Empty,
    Epsilon,
    Symbol(Symbol),
    Union(Box<RegexAst>, Box<RegexAst>),
    Concat(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
}

impl RegexAst {
    pub fn union(l: RegexAst, r: RegexAst) -> RegexAst {
        RegexAst::Union(Box::new(l), Box::new(r))
    }

    pub fn concat(l: RegexAst, r: RegexAst) -> RegexAst {
        RegexAst::Concat(Box::new(l), Box::new(r))
    }

    pub fn star(c: RegexAst) -> RegexAst {
        RegexAst::Star(Box::new(c))
    }

    pub fn symbol(glyph: char) -> RegexAst {
        RegexAst::Symbol(Symbol::from_glyph(glyph).expect("valid glyph"))
    }

    /// Number of nodes in the parse tree.
    pub fn size(&self) -> usize {
        match self {
            RegexAst::Empty | RegexAst::Epsilon | RegexAst::Symbol(_) => 1,
            RegexAst::Union(l, r) | RegexAst::Concat(l, r) => 1 + l.size() + r.size(),
            RegexAst::Star(c) => 1 + c.size(),
        }
    }

    pub fn alphabet(&self) -> SymbolSet {
        match self {
            RegexAst::Empty | RegexAst::Epsilon => SymbolSet::EMPTY,
            RegexAst::Symbol(s) => SymbolSet::singleton(*s),
            RegexAst::Union(l, r) | RegexAst::Concat(l, r) => l.alphabet().union(r.alphabet()),
            RegexAst::Star(c) => c.alphabet(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            RegexAst::Union(..) => 0,
            RegexAst::Concat(..) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for RegexAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, child: &RegexAst, min: u8| {
            if child.precedence() < min {
                write!(f, "({child})")
            } else {
                write!(f, "{child}")
            }
        };
        match self {
            RegexAst::Empty => f.write_str("#"),
            RegexAst::Epsilon => f.write_str("@"),
            RegexAst::Symbol(s) => write!(f, "{s}"),
            RegexAst::Union(l, r) => {
                wrap(f, l, 0)?;
                f.write_str("+")?;
                wrap(f, r, 1)
            }
            RegexAst::Concat(l, r) => {
                wrap(f, l, 1)?;
                wrap(f, r, 2)
            }
            RegexAst::Star(c) => {
                wrap(f, c, 2)?;
                f.write_str("*")
            }
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    empty_at: Option<usize>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<RegexAst> {
        let mut left = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let right = self.term()?;
            left = RegexAst::union(left, right);
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<RegexAst> {
        let mut left = self.factor()?;
        while matches!(self.peek(), Some(c) if c == b'(' || c == b'@' || c == b'#' || c.is_ascii_lowercase() || c.is_ascii_digit())
        {
            let right = self.factor()?;
            left = RegexAst::concat(left, right);
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<RegexAst> {
        let mut node = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            node = RegexAst::star(node);
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<RegexAst> {
        match self.peek() {
            None => self.error("unexpected end of expression"),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'@') => {
                self.pos += 1;
                Ok(RegexAst::Epsilon)
            }
            Some(b'#') => {
                self.empty_at.get_or_insert(self.pos);
                self.pos += 1;
                Ok(RegexAst::Empty)
            }
            Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() => {
                self.pos += 1;
                Ok(RegexAst::Symbol(Symbol::from_glyph(c as char).unwrap()))
            }
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
        }
    }
}

pub fn parse_regex(text: &str) -> Result<RegexAst> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        empty_at: None,
    };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    if let Some(offset) = p.empty_at {
        if ast != RegexAst::Empty {
            return Err(Error::NestedEmpty { offset });
        }
    }
    Ok(ast)
}

/// Position-automaton data for one subtree.
struct Positions {
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
}

fn linearize(
    ast: &RegexAst,
    labels: &mut Vec<Symbol>,
    follow: &mut Vec<Vec<usize>>,
) -> Positions {
    match ast {
        RegexAst::Empty => Positions {
            nullable: false,
            first: vec![],
            last: vec![],
        },
        RegexAst::Epsilon => Positions {
            nullable: true,
            first: vec![],
            last: vec![],
        },
        RegexAst::Symbol(s) => {
            labels.push(*s);
            follow.push(Vec::new());
            let p = labels.len();
            Positions {
                nullable: false,
                first: vec![p],
                last: vec![p],
            }
        }
        RegexAst::Union(l, r) => {
            let a = linearize(l, labels, follow);
            let b = linearize(r, labels, follow);
            Positions {
                nullable: a.nullable || b.nullable,
                first: [a.first, b.first].concat(),
                last: [a.last, b.last].concat(),
            }
        }
        RegexAst::Concat(l, r) => {
            let a = linearize(l, labels, follow);
            let b = linearize(r, labels, follow);
            for &p in &a.last {
                follow[p - 1].extend_from_slice(&b.first);
            }
            let first = if a.nullable {
                [a.first, b.first.clone()].concat()
            } else {
                a.first
            };
            let last = if b.nullable {
                [a.last, b.last].concat()
            } else {
                b.last
            };
            Positions {
                nullable: a.nullable && b.nullable,
                first,
                last,
            }
        }
        RegexAst::Star(c) => {
            let a = linearize(c, labels, follow);
            for &p in &a.last {
                follow[p - 1].extend_from_slice(&a.first);
            }
            Positions {
                nullable: true,
                first: a.first,
                last: a.last,
            }
        }
    }
}

/// Position (Glushkov) automaton: state 0 is initial, state `i ≥ 1` means
/// "just read position `i`". ε-free by construction.
pub fn regex_to_nfa(ast: &RegexAst) -> Nfa {
    let mut labels = Vec::new();
    let mut follow = Vec::new();
    let pos = linearize(ast, &mut labels, &mut follow);
    let mut transitions = Vec::new();
    for &p in &pos.first {
        transitions.push((0, labels[p - 1], p));
    }
    for (i, targets) in follow.iter().enumerate() {
        for &p in targets {
            transitions.push((i + 1, labels[p - 1], p));
        }
    }
    let mut accepting = pos.last.clone();
    if pos.nullable {
        accepting.push(0);
    }
    Nfa::new(labels.len() + 1, ast.alphabet(), transitions, [0], accepting)
        .expect("position automaton is well formed")
}

/// Parses and compiles in one step.
pub fn compile(text: &str) -> Result<Nfa> {
    parse_regex(text).map(|ast| regex_to_nfa(&ast))
}
