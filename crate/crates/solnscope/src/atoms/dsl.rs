//! Parser for the function DSL:
//!
//!   expr   := term ("+" term)*
//!   term   := [rational "*"] atom
//!   atom   := lin(c1, ..., ck) | abs(xI) | norm1() | exp(affine)
//!           | neglog(affine) | hinge(affine) | hinge_abs(xI, rational)
//!           | hinge_expdiff(xJ, xI) | quadshift(xI, rational)
//!   affine := [rational *] xI | rational, joined by + or -
//!
//! Whitespace-insensitive; rationals are "p/q" or integer literals.

use super::{AtomKind, CatalogError, FuncExpr, Term};
use crate::scalar::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
#[error("parse error at line {line}, column {col}: {message}")]
pub struct DslError {
    pub message: String,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in src.char_indices() {
        if i >= pos {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, DslError> {
    let mut toks = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '/' => {
                i += 1;
                Tok::Slash
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                    j += 1;
                }
                let t = Tok::Int(src[i..j].to_string());
                i = j;
                t
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let t = Tok::Ident(src[i..j].to_string());
                i = j;
                t
            }
            other => {
                let (line, col) = line_col(src, start);
                return Err(DslError {
                    message: format!("unexpected character '{other}'"),
                    line,
                    col,
                });
            }
        };
        toks.push((tok, start));
    }
    Ok(toks)
}

struct Parser<'a> {
    lx: Lexer<'a>,
    pos: usize,
    dim: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, DslError> {
        let bpos = self
            .lx
            .toks
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.lx.src.len());
        let (line, col) = line_col(self.lx.src, bpos);
        Err(DslError {
            message: message.into(),
            line,
            col,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.lx.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), DslError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn parse_unsigned_rational(&mut self) -> Result<Rat, DslError> {
        let num = match self.next() {
            Some(Tok::Int(s)) => s,
            _ => return self.err("expected a number"),
        };
        let n: num_bigint::BigInt = num.parse().expect("digits");
        if matches!(self.peek(), Some(Tok::Slash)) {
            self.pos += 1;
            let den = match self.next() {
                Some(Tok::Int(s)) => s,
                _ => return self.err("expected a denominator"),
            };
            let d: num_bigint::BigInt = den.parse().expect("digits");
            if d.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rat::new(n, d))
        } else {
            Ok(Rat::from_integer(n))
        }
    }

    fn parse_rational(&mut self) -> Result<Rat, DslError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            return Ok(-self.parse_unsigned_rational()?);
        }
        if matches!(self.peek(), Some(Tok::Plus)) {
            self.pos += 1;
        }
        self.parse_unsigned_rational()
    }

    fn parse_var(&mut self) -> Result<usize, DslError> {
        match self.next() {
            Some(Tok::Ident(name)) if name.starts_with('x') => {
                let idx: usize = match name[1..].parse() {
                    Ok(i) => i,
                    Err(_) => return self.err("expected a variable like x1"),
                };
                if idx == 0 || idx > self.dim {
                    return self.err(format!(
                        "variable x{idx} out of range for dimension {}",
                        self.dim
                    ));
                }
                Ok(idx - 1)
            }
            _ => self.err("expected a variable like x1"),
        }
    }

    /// affine form: returns dense coefficient vector and constant.
    fn parse_affine(&mut self) -> Result<(Vec<Rat>, Rat), DslError> {
        let mut w = vec![Rat::zero(); self.dim];
        let mut c = Rat::zero();
        let mut sign = Rat::one();
        let mut first = true;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = Rat::one();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -Rat::one();
                }
                _ if first => {}
                _ => break,
            }
            first = false;
            // [rational *] var  |  rational
            match self.peek() {
                Some(Tok::Int(_)) => {
                    let r = self.parse_unsigned_rational()?;
                    if matches!(self.peek(), Some(Tok::Star)) {
                        self.pos += 1;
                        let v = self.parse_var()?;
                        w[v] += &sign * &r;
                    } else {
                        c += &sign * &r;
                    }
                }
                Some(Tok::Ident(_)) => {
                    let v = self.parse_var()?;
                    w[v] += sign.clone();
                }
                _ => return self.err("expected a variable or number in affine form"),
            }
            match self.peek() {
                Some(Tok::Plus) | Some(Tok::Minus) => continue,
                _ => break,
            }
        }
        Ok((w, c))
    }

    fn sparse_block(&self, w: Vec<Rat>) -> (Vec<usize>, Vec<Rat>) {
        let coords: Vec<usize> = (0..self.dim).filter(|&i| !w[i].is_zero()).collect();
        let local: Vec<Rat> = coords.iter().map(|&i| w[i].clone()).collect();
        (coords, local)
    }

    fn parse_atom(&mut self, weight: Rat) -> Result<Vec<Term>, DslError> {
        let name = match self.next() {
            Some(Tok::Ident(n)) => n,
            _ => return self.err("expected an atom name"),
        };
        self.expect(Tok::LParen, "'('")?;
        let terms = match name.as_str() {
            "lin" => {
                let mut coefs = vec![self.parse_rational()?];
                while matches!(self.peek(), Some(Tok::Comma)) {
                    self.pos += 1;
                    coefs.push(self.parse_rational()?);
                }
                if coefs.len() > self.dim {
                    return self.err(format!(
                        "lin has {} coefficients for dimension {}",
                        coefs.len(),
                        self.dim
                    ));
                }
                let mut w = vec![Rat::zero(); self.dim];
                for (i, c) in coefs.into_iter().enumerate() {
                    w[i] = c;
                }
                let (coords, local) = self.sparse_block(w);
                if coords.is_empty() {
                    vec![]
                } else {
                    vec![Term {
                        weight,
                        coords,
                        kind: AtomKind::Linear { coef: local },
                    }]
                }
            }
            "abs" => {
                let v = self.parse_var()?;
                vec![Term {
                    weight,
                    coords: vec![v],
                    kind: AtomKind::Abs,
                }]
            }
            "norm1" => (0..self.dim)
                .map(|i| Term {
                    weight: weight.clone(),
                    coords: vec![i],
                    kind: AtomKind::Abs,
                })
                .collect(),
            "exp" | "neglog" | "hinge" => {
                let (w, c) = self.parse_affine()?;
                let (coords, local) = self.sparse_block(w);
                if coords.is_empty() {
                    return self.err(format!("{name} needs a non-constant affine argument"));
                }
                let kind = match name.as_str() {
                    "exp" => AtomKind::Exp { w: local, c },
                    "neglog" => AtomKind::NegLog { w: local, c },
                    _ => AtomKind::Hinge { w: local, c },
                };
                vec![Term {
                    weight,
                    coords,
                    kind,
                }]
            }
            "hinge_abs" => {
                let v = self.parse_var()?;
                self.expect(Tok::Comma, "','")?;
                let shift = self.parse_rational()?;
                if shift.is_negative() {
                    return self.err("hinge_abs shift must be nonnegative");
                }
                vec![Term {
                    weight,
                    coords: vec![v],
                    kind: AtomKind::HingeAbs { shift },
                }]
            }
            "hinge_expdiff" => {
                let vj = self.parse_var()?;
                self.expect(Tok::Comma, "','")?;
                let vi = self.parse_var()?;
                if vj == vi {
                    return self.err("hinge_expdiff needs two distinct variables");
                }
                vec![Term {
                    weight,
                    coords: vec![vj, vi],
                    kind: AtomKind::HingeExpDiff,
                }]
            }
            "quadshift" => {
                let v = self.parse_var()?;
                self.expect(Tok::Comma, "','")?;
                let center = self.parse_rational()?;
                vec![Term {
                    weight,
                    coords: vec![v],
                    kind: AtomKind::QuadShift { center },
                }]
            }
            other => return self.err(format!("unknown atom '{other}'")),
        };
        self.expect(Tok::RParen, "')'")?;
        Ok(terms)
    }

    fn parse_term(&mut self) -> Result<Vec<Term>, DslError> {
        // optional leading rational weight
        if matches!(self.peek(), Some(Tok::Int(_))) {
            let w = self.parse_unsigned_rational()?;
            self.expect(Tok::Star, "'*' after a weight")?;
            if !w.is_positive() {
                return self.err("atom weights must be positive");
            }
            return self.parse_atom(w);
        }
        self.parse_atom(Rat::one())
    }

    fn parse_expr(&mut self) -> Result<Vec<Term>, DslError> {
        let mut terms = self.parse_term()?;
        while matches!(self.peek(), Some(Tok::Plus)) {
            self.pos += 1;
            terms.extend(self.parse_term()?);
        }
        if self.pos != self.lx.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(terms)
    }
}

pub fn parse_func(src: &str, dim: usize) -> Result<FuncExpr, DslError> {
    let toks = lex(src)?;
    let mut p = Parser {
        lx: Lexer { src, toks },
        pos: 0,
        dim,
    };
    let terms = p.parse_expr()?;
    FuncExpr::new(dim, terms).map_err(|e: CatalogError| {
        let (line, col) = line_col(src, 0);
        DslError {
            message: e.to_string(),
            line,
            col,
        }
    })
}
