//! Element grammar:
//!
//! ```text
//! element  := ['+'|'-'] term (('+'|'-') term)*
//! term     := rational '*' monomial | monomial | rational
//! monomial := factor ('.' factor)*
//! factor   := NAME | NAME "*'"
//! rational := digits ['/' digits]
//! ```
//!
//! `NAME*'` is the ghost of edge `NAME`. A bare rational stands for that
//! multiple of the unit `Σ v`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Element, Monomial, Scalar};
use crate::error::{ElementError, GraphError};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Ghost(String),
    Number(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Dot,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ElementError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Token::Plus)),
            b'-' => out.push((start, Token::Minus)),
            b'*' => out.push((start, Token::Star)),
            b'/' => out.push((start, Token::Slash)),
            b'.' => out.push((start, Token::Dot)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<BigInt>().expect("digits");
                out.push((start, Token::Number(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = text[start..i].to_string();
                if text[i..].starts_with("*'") {
                    i += 2;
                    out.push((start, Token::Ghost(name)));
                } else {
                    out.push((start, Token::Name(name)));
                }
                continue;
            }
            _ => {
                return Err(ElementError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{}`", text[start..].chars().next().unwrap()),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    graph: &'a Arc<Graph>,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

/// One factor of a monomial literal, with its source and range.
struct Factor {
    monomial: Monomial,
    source: VertexId,
    range: VertexId,
    text: String,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn error(&self, message: impl Into<String>) -> ElementError {
        ElementError::Syntax {
            pos: self.offset(),
            message: message.into(),
        }
    }

    fn element(&mut self) -> Result<Element, ElementError> {
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        let mut sign = Scalar::one();
        match self.peek() {
            Some(Token::Minus) => {
                sign = -sign;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            self.term(sign, &mut terms)?;
            match self.peek() {
                None => break,
                Some(Token::Plus) => sign = Scalar::one(),
                Some(Token::Minus) => sign = -Scalar::one(),
                Some(_) => return Err(self.error("expected `+` or `-` between terms")),
            }
            self.pos += 1;
        }
        Ok(Element::from_terms(self.graph, terms))
    }

    fn term(&mut self, sign: Scalar, out: &mut Vec<(Monomial, Scalar)>) -> Result<(), ElementError> {
        let coefficient = if let Some(Token::Number(_)) = self.peek() {
            let c = self.rational()?;
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                // bare rational: a multiple of the unit
                for v in self.graph.vertices() {
                    out.push((Monomial::vertex(v), &sign * &c));
                }
                return Ok(());
            }
            c
        } else {
            Scalar::one()
        };
        let coefficient = sign * coefficient;
        for (m, c) in self.monomial()? {
            out.push((m, &coefficient * c));
        }
        Ok(())
    }

    fn rational(&mut self) -> Result<Scalar, ElementError> {
        let numer = match self.peek() {
            Some(Token::Number(n)) => n.clone(),
            _ => return Err(self.error("expected a number")),
        };
        self.pos += 1;
        if self.peek() != Some(&Token::Slash) {
            return Ok(Scalar::from_integer(numer));
        }
        self.pos += 1;
        let denom = match self.peek() {
            Some(Token::Number(d)) if !d.is_zero() => d.clone(),
            Some(Token::Number(_)) => return Err(self.error("zero denominator")),
            _ => return Err(self.error("expected a denominator")),
        };
        self.pos += 1;
        Ok(Scalar::new(numer, denom))
    }

    fn factor(&mut self) -> Result<Factor, ElementError> {
        let g = self.graph;
        let factor = match self.peek() {
            Some(Token::Name(name)) => match g.lookup(name) {
                Some(Ok(v)) => Factor {
                    monomial: Monomial::vertex(v),
                    source: v,
                    range: v,
                    text: name.clone(),
                },
                Some(Err(e)) => Factor {
                    monomial: Monomial::real(g.edge_path(&[e])?),
                    source: g.src(e),
                    range: g.rng(e),
                    text: name.clone(),
                },
                None => return Err(GraphError::UnknownEdge(name.clone()).into()),
            },
            Some(Token::Ghost(name)) => {
                let e = g.edge(name)?;
                Factor {
                    monomial: Monomial::ghost(g.edge_path(&[e])?),
                    source: g.rng(e),
                    range: g.src(e),
                    text: format!("{name}*'"),
                }
            }
            _ => return Err(self.error("expected a vertex, edge or ghost edge")),
        };
        self.pos += 1;
        Ok(factor)
    }

    /// A product of factors that must compose end to end. Its value may
    /// still be a sum (via CK2) or zero (via CK1).
    fn monomial(&mut self) -> Result<Vec<(Monomial, Scalar)>, ElementError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Token::Dot) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        for pair in factors.windows(2) {
            if pair[0].range != pair[1].source {
                return Err(GraphError::NotComposable(format!(
                    "{} ends at {} but {} starts at {}",
                    pair[0].text,
                    self.graph.vertex_name(pair[0].range),
                    pair[1].text,
                    self.graph.vertex_name(pair[1].source)
                ))
                .into());
            }
        }
        let mut acc = vec![(factors[0].monomial.clone(), Scalar::one())];
        for f in &factors[1..] {
            let mut next = Vec::new();
            for (m, c) in &acc {
                if let Some(p) = m.raw_product(&f.monomial) {
                    next.push((p, c.clone()));
                }
            }
            // keep intermediate products in normal form
            let x = Element::from_terms(self.graph, next);
            acc = x.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        }
        Ok(acc)
    }
}

pub(crate) fn parse_element(graph: &Arc<Graph>, text: &str) -> Result<Element, ElementError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ElementError::Syntax {
            pos: 0,
            message: "empty element".into(),
        });
    }
    let mut parser = Parser {
        graph,
        tokens,
        pos: 0,
        len: text.len(),
    };
    parser.element()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Scalar::new(n, d)
        }
        None => Scalar::from_integer(body.parse().ok()?),
    };
    Some(if neg { -value } else { value })
}
