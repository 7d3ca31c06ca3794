//! Recursive-descent parsers for the resource and algebraic grammars.
//!
//! Algebraic grammar: application is left-associative and binds tightest,
//! `lit * M` binds one term (looser than application, tighter than `+`),
//! sums are left-associative, and a lambda body extends maximally to the
//! right. Resource applications are written `s[t1, ..., tn]`. `#` starts a
//! line comment.

use super::alg::AlgTerm;
use super::res::{ResExpr, ResMonomial, ResTerm};
use super::sum::FinSum;
use super::VarRef;
use crate::scalars::{parse_scalar, Scalar, Semiring};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Lit(String),
    Lambda,
    Dot,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Plus,
    Star,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn lex(src: &str) -> Result<Lexer, SyntaxError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            '\\' => {
                toks.push((i, Tok::Lambda));
                i += 1;
            }
            '.' => {
                toks.push((i, Tok::Dot));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '[' => {
                toks.push((i, Tok::LBrack));
                i += 1;
            }
            ']' => {
                toks.push((i, Tok::RBrack));
                i += 1;
            }
            ',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ if c.is_ascii_digit() || c == '-' => {
                let start = i;
                if c == '-' {
                    i += 1;
                    if i >= bytes.len() || !(bytes[i] as char).is_ascii_digit() {
                        return Err(SyntaxError { pos: start, msg: "dangling '-'".into() });
                    }
                }
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                    if i == dstart {
                        return Err(SyntaxError { pos: start, msg: "missing denominator".into() });
                    }
                }
                toks.push((start, Tok::Lit(src[start..i].to_string())));
            }
            _ => {
                // accept the unicode lambda as an alias
                if src[i..].starts_with('λ') {
                    toks.push((i, Tok::Lambda));
                    i += 'λ'.len_utf8();
                } else {
                    return Err(SyntaxError { pos: i, msg: format!("unexpected character {c:?}") });
                }
            }
        }
    }
    Ok(Lexer { toks, pos: 0, end: src.len() })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), SyntaxError> {
        let pos = self.here();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(SyntaxError { pos, msg: format!("expected {what}") }),
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError { pos: self.here(), msg: msg.to_string() })
    }
}

fn lookup(binders: &[String], name: &str) -> VarRef {
    for (i, b) in binders.iter().rev().enumerate() {
        if b == name {
            return VarRef::Bound(i as u32);
        }
    }
    VarRef::Free(name.to_string())
}

// ---------------------------------------------------------------- algebraic

/// Parse an algebraic λ-term (raw; no canonicalization applied).
pub fn parse_algebraic(src: &str, ring: Semiring) -> Result<AlgTerm, SyntaxError> {
    let mut lx = lex(src)?;
    let mut binders = Vec::new();
    let t = alg_sum(&mut lx, ring, &mut binders)?;
    if lx.peek().is_some() {
        return lx.err("trailing input");
    }
    Ok(t)
}

fn alg_sum(lx: &mut Lexer, ring: Semiring, binders: &mut Vec<String>) -> Result<AlgTerm, SyntaxError> {
    let mut acc = alg_scaled(lx, ring, binders)?;
    while lx.peek() == Some(&Tok::Plus) {
        lx.next();
        let rhs = alg_scaled(lx, ring, binders)?;
        acc = AlgTerm::sum(acc, rhs);
    }
    Ok(acc)
}

fn alg_scaled(lx: &mut Lexer, ring: Semiring, binders: &mut Vec<String>) -> Result<AlgTerm, SyntaxError> {
    if let Some(Tok::Lit(l)) = lx.peek() {
        if lx.peek2() == Some(&Tok::Star) {
            let lit = l.clone();
            let pos = lx.here();
            lx.next();
            lx.next();
            let a = parse_scalar(ring, &lit)
                .map_err(|e| SyntaxError { pos, msg: e.to_string() })?;
            let body = alg_scaled(lx, ring, binders)?;
            return Ok(AlgTerm::scale(a, body));
        }
    }
    alg_app(lx, ring, binders)
}

fn alg_app(lx: &mut Lexer, ring: Semiring, binders: &mut Vec<String>) -> Result<AlgTerm, SyntaxError> {
    let mut acc = alg_atom(lx, ring, binders)?;
    loop {
        match lx.peek() {
            Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::Lambda) => {
                let arg = alg_atom(lx, ring, binders)?;
                acc = AlgTerm::app(acc, arg);
            }
            Some(Tok::Lit(l)) if l == "0" && lx.peek2() != Some(&Tok::Star) => {
                lx.next();
                acc = AlgTerm::app(acc, AlgTerm::Zero);
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn alg_atom(lx: &mut Lexer, ring: Semiring, binders: &mut Vec<String>) -> Result<AlgTerm, SyntaxError> {
    match lx.peek().cloned() {
        Some(Tok::Ident(name)) => {
            lx.next();
            Ok(AlgTerm::Var(lookup(binders, &name)))
        }
        Some(Tok::Lit(l)) if l == "0" => {
            lx.next();
            Ok(AlgTerm::Zero)
        }
        Some(Tok::LParen) => {
            lx.next();
            let t = alg_sum(lx, ring, binders)?;
            lx.expect(Tok::RParen, "')'")?;
            Ok(t)
        }
        Some(Tok::Lambda) => {
            lx.next();
            let name = match lx.next() {
                Some(Tok::Ident(n)) => n,
                _ => return lx.err("expected binder name"),
            };
            lx.expect(Tok::Dot, "'.'")?;
            binders.push(name);
            let body = alg_sum(lx, ring, binders);
            binders.pop();
            Ok(AlgTerm::abs(body?))
        }
        _ => lx.err("expected a term"),
    }
}

// ----------------------------------------------------------------- resource

/// A parsed resource input: a bare expression, or a formal sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResInput {
    Expr(ResExpr),
    TermSum(FinSum<ResTerm>),
    MonoSum(FinSum<ResMonomial>),
}

/// Parse a resource expression or a formal sum of them.
pub fn parse_resource(src: &str, ring: Semiring) -> Result<ResInput, SyntaxError> {
    let mut lx = lex(src)?;
    let mut binders = Vec::new();
    // decide the kind from the first token: '[' opens a monomial
    let mono_kind = lx.peek() == Some(&Tok::LBrack);
    let mut terms: Vec<(Scalar, ResExpr)> = Vec::new();
    loop {
        let coeff = if let Some(Tok::Lit(l)) = lx.peek() {
            if lx.peek2() == Some(&Tok::Star) {
                let lit = l.clone();
                let pos = lx.here();
                lx.next();
                lx.next();
                Some(
                    parse_scalar(ring, &lit)
                        .map_err(|e| SyntaxError { pos, msg: e.to_string() })?,
                )
            } else {
                None
            }
        } else {
            None
        };
        let e = if mono_kind {
            ResExpr::Mono(res_mono(&mut lx, &mut binders)?)
        } else {
            ResExpr::Term(res_term(&mut lx, &mut binders)?)
        };
        terms.push((coeff.unwrap_or_else(|| ring.one()), e));
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
            }
            None => break,
            _ => return lx.err("trailing input"),
        }
    }
    if terms.len() == 1 && terms[0].0 == ring.one() {
        return Ok(ResInput::Expr(terms.pop().unwrap().1));
    }
    if mono_kind {
        let mut sum = FinSum::zero(ring);
        for (c, e) in terms {
            match e {
                ResExpr::Mono(m) => sum.add_entry(m, c),
                _ => unreachable!(),
            }
        }
        Ok(ResInput::MonoSum(sum))
    } else {
        let mut sum = FinSum::zero(ring);
        for (c, e) in terms {
            match e {
                ResExpr::Term(t) => sum.add_entry(t, c),
                _ => unreachable!(),
            }
        }
        Ok(ResInput::TermSum(sum))
    }
}

/// Parse a single resource term.
pub fn parse_resource_term(src: &str, ring: Semiring) -> Result<ResTerm, SyntaxError> {
    match parse_resource(src, ring)? {
        ResInput::Expr(ResExpr::Term(t)) => Ok(t),
        _ => Err(SyntaxError { pos: 0, msg: "expected a single resource term".into() }),
    }
}

fn res_term(lx: &mut Lexer, binders: &mut Vec<String>) -> Result<ResTerm, SyntaxError> {
    let mut acc = match lx.peek().cloned() {
        Some(Tok::Ident(name)) => {
            lx.next();
            ResTerm::Var(lookup(binders, &name))
        }
        Some(Tok::LParen) => {
            lx.next();
            let t = res_term(lx, binders)?;
            lx.expect(Tok::RParen, "')'")?;
            t
        }
        Some(Tok::Lambda) => {
            lx.next();
            let name = match lx.next() {
                Some(Tok::Ident(n)) => n,
                _ => return lx.err("expected binder name"),
            };
            lx.expect(Tok::Dot, "'.'")?;
            binders.push(name);
            let body = res_term(lx, binders);
            binders.pop();
            return Ok(ResTerm::abs(body?));
        }
        _ => return lx.err("expected a resource term"),
    };
    while lx.peek() == Some(&Tok::LBrack) {
        let bag = res_mono(lx, binders)?;
        acc = ResTerm::app(acc, bag);
    }
    Ok(acc)
}

fn res_mono(lx: &mut Lexer, binders: &mut Vec<String>) -> Result<ResMonomial, SyntaxError> {
    lx.expect(Tok::LBrack, "'['")?;
    let mut elems = Vec::new();
    if lx.peek() == Some(&Tok::RBrack) {
        lx.next();
        return Ok(ResMonomial::empty());
    }
    loop {
        elems.push(res_term(lx, binders)?);
        match lx.next() {
            Some(Tok::Comma) => {}
            Some(Tok::RBrack) => break,
            _ => return lx.err("expected ',' or ']'"),
        }
    }
    Ok(ResMonomial::new(elems))
}
