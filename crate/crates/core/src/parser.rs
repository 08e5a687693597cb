//! Expression parser and canonical printer.
//!
//! Grammar: integer literals, declared variable names, `+ - * / ^`,
//! parentheses and unary minus.  `*` and `/` bind tighter than `+ -`;
//! `^` binds tightest, associates to the right and requires a constant
//! non-negative integer exponent.  Errors carry the byte offset of the
//! offending token.
//!
//! Parsing builds a position-tagged AST; evaluation into any
//! [`CoeffField`] is separate so the same expression can be read into plain
//! rational functions or into a radical extension (the CLI maps `t` to the
//! extension generator).

use std::fmt;

use num::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::forms::CoeffField;
use crate::poly::Var;
use crate::rat::Rat;
use crate::ratfunc::RatFn;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'e' || bytes[i] == b'E') {
                    return err(i, "floating point literals are not accepted; use p/q rationals");
                }
                let n: BigInt = text[start..i].parse().expect("digit run");
                out.push((start, Tok::Int(n)));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character `{c}`")),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct Ast {
    pub pos: usize,
    pub kind: AstKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AstKind {
    Int(BigInt),
    /// Index into the declared variable list.
    Var(usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    /// Pratt loop.  Left binding powers: `+ -` 10, `* /` 20, `^` 30 with
    /// right binding power 29 (right-associative).
    fn expr(&mut self, min_bp: u8) -> Result<Ast, ParseError> {
        let mut lhs = self.prefix()?;
        loop {
            let (op_pos, op) = match self.peek() {
                None => break,
                Some((p, t)) => (*p, t.clone()),
            };
            let (l_bp, r_bp) = match op {
                Tok::Plus | Tok::Minus => (10, 11),
                Tok::Star | Tok::Slash => (20, 21),
                Tok::Caret => (30, 29),
                Tok::RParen => break,
                _ => {
                    return err(op_pos, format!("expected an operator, found `{}`", tok_name(&op)))
                }
            };
            if l_bp < min_bp {
                break;
            }
            self.next();
            if op == Tok::Caret {
                let rhs = self.expr(r_bp)?;
                let e = const_exponent(&rhs).ok_or(ParseError {
                    position: rhs.pos,
                    message: "exponent must be a constant non-negative integer".into(),
                })?;
                lhs = Ast {
                    pos: op_pos,
                    kind: AstKind::Pow(Box::new(lhs), e),
                };
                continue;
            }
            let rhs = self.expr(r_bp)?;
            let kind = match op {
                Tok::Plus => AstKind::Add(Box::new(lhs), Box::new(rhs)),
                Tok::Minus => AstKind::Sub(Box::new(lhs), Box::new(rhs)),
                Tok::Star => AstKind::Mul(Box::new(lhs), Box::new(rhs)),
                Tok::Slash => AstKind::Div(Box::new(lhs), Box::new(rhs)),
                _ => unreachable!(),
            };
            lhs = Ast { pos: op_pos, kind };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Ast, ParseError> {
        let (pos, tok) = match self.next() {
            None => return err(self.end, "unexpected end of expression"),
            Some(t) => t,
        };
        match tok {
            Tok::Int(n) => Ok(Ast {
                pos,
                kind: AstKind::Int(n),
            }),
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Ast {
                    pos,
                    kind: AstKind::Var(i),
                }),
                None => err(pos, format!("unknown variable `{name}`")),
            },
            Tok::Minus => {
                // Unary minus: binds tighter than + - but looser than * /.
                let inner = self.expr(15)?;
                Ok(Ast {
                    pos,
                    kind: AstKind::Neg(Box::new(inner)),
                })
            }
            Tok::LParen => {
                let inner = self.expr(0)?;
                match self.next() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((p, t)) => err(p, format!("expected `)`, found `{}`", tok_name(&t))),
                    None => err(self.end, "missing closing `)`"),
                }
            }
            other => err(pos, format!("unexpected token `{}`", tok_name(&other))),
        }
    }
}

fn tok_name(t: &Tok) -> String {
    match t {
        Tok::Int(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Slash => "/".into(),
        Tok::Caret => "^".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
    }
}

/// Constant-folds an exponent expression (integers, signs, + - * ^).
fn const_exponent(ast: &Ast) -> Option<u32> {
    fn fold(ast: &Ast) -> Option<BigInt> {
        match &ast.kind {
            AstKind::Int(n) => Some(n.clone()),
            AstKind::Neg(a) => fold(a).map(|v| -v),
            AstKind::Add(a, b) => Some(fold(a)? + fold(b)?),
            AstKind::Sub(a, b) => Some(fold(a)? - fold(b)?),
            AstKind::Mul(a, b) => Some(fold(a)? * fold(b)?),
            AstKind::Pow(a, e) => Some(fold(a)?.pow(*e)),
            _ => None,
        }
    }
    let v = fold(ast)?;
    if v.is_negative() {
        return None;
    }
    v.to_u32()
}

pub fn parse_ast(text: &str, variables: &[&str]) -> Result<Ast, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return err(0, "empty expression");
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars: variables,
    };
    let ast = p.expr(0)?;
    if let Some((pos, t)) = p.peek() {
        return err(*pos, format!("unexpected trailing token `{}`", tok_name(t)));
    }
    Ok(ast)
}

/// Evaluates an AST in any coefficient field.  `values[i]` is the value of
/// the i-th declared variable; `one` donates the context for integer
/// literals.  Division by zero is reported with the position of the `/`.
pub fn eval_ast<F: CoeffField>(ast: &Ast, values: &[F], one: &F) -> Result<F, ParseError> {
    match &ast.kind {
        AstKind::Int(n) => Ok(one.embed_rat(&Rat::from_integer(n.clone()))),
        AstKind::Var(i) => Ok(values[*i].clone()),
        AstKind::Neg(a) => Ok(eval_ast(a, values, one)?.neg()),
        AstKind::Add(a, b) => Ok(eval_ast(a, values, one)?.add(&eval_ast(b, values, one)?)),
        AstKind::Sub(a, b) => Ok(eval_ast(a, values, one)?.sub(&eval_ast(b, values, one)?)),
        AstKind::Mul(a, b) => Ok(eval_ast(a, values, one)?.mul(&eval_ast(b, values, one)?)),
        AstKind::Div(a, b) => {
            let num = eval_ast(a, values, one)?;
            let den = eval_ast(b, values, one)?;
            num.try_div(&den).ok_or(ParseError {
                position: ast.pos,
                message: "division by zero in expression".into(),
            })
        }
        AstKind::Pow(a, e) => {
            let base = eval_ast(a, values, one)?;
            if *e == 0 {
                return Ok(one.embed_rat(&Rat::from_integer(1.into())));
            }
            let mut r = base.clone();
            for _ in 1..*e {
                r = r.mul(&base);
            }
            Ok(r)
        }
    }
}

/// Parses an expression over the named coordinates into a reduced rational
/// function.  Variable names must be among x, y, z.
pub fn parse_expression(text: &str, variables: &[&str]) -> Result<RatFn, ParseError> {
    let mut values = Vec::new();
    for name in variables {
        let v = match *name {
            "x" => Var::X,
            "y" => Var::Y,
            "z" => Var::Z,
            other => {
                return err(0, format!("variable `{other}` has no coordinate meaning here"))
            }
        };
        values.push(RatFn::var(v));
    }
    let ast = parse_ast(text, variables)?;
    eval_ast(&ast, &values, &RatFn::one())
}

/// Canonical printer; output reparses to the identical stored value.
pub fn print_ratfn(f: &RatFn) -> String {
    format!("{f}")
}
