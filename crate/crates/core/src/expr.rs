//! Text form of polynomials.
//!
//! Grammar (whitespace-insensitive, products need an explicit `*`):
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | primary ('^' uint)?
//! primary  := var | '(' expr ')'
//! rational := int ('/' uint)?
//! var      := x0 .. x9 | x | y | z | t | u
//! ```
//!
//! The aliases `x, y, z, t, u` stand for `x0 .. x4` and cannot be mixed with
//! indexed names inside one expression.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{ExponentVector, HomPoly};
use crate::scalar::Scalar;
use crate::{Poly, Rat};

/// Highest number of variables the text form can address.
pub const MAX_VARS: usize = 10;
/// Alias names for `x0 .. x4`.
pub const ALIASES: [&str; 5] = ["x", "y", "z", "t", "u"];

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("variable '{name}' at position {position} mixes alias and indexed naming")]
    MixedNaming { name: String, position: usize },
    #[error("variable '{name}' at position {position} needs more than {nvars} variables")]
    VariableOutOfRange {
        name: String,
        position: usize,
        nvars: usize,
    },
    #[error("expression is not homogeneous: term degrees {degrees:?}")]
    NotHomogeneous { degrees: Vec<u32> },
}

/// How variables are written when printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarStyle {
    /// `x0, x1, ...`
    #[default]
    Indexed,
    /// `x, y, z, t, u`; falls back to indexed names beyond five variables.
    Alias,
}

/// Parses a homogeneous polynomial; the ring has as many variables as the
/// highest index used (at least two). A polynomial whose terms all cancel is
/// returned as zero of degree zero.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    parse(text, None)
}

/// Parses into a ring with exactly `nvars` variables.
pub fn parse_poly_in(text: &str, nvars: usize) -> Result<Poly, ParseError> {
    parse(text, Some(nvars))
}

/// Canonical indexed form, e.g. `-3/2*x0^2*x1 + x2^3`.
pub fn print_poly<F: Scalar>(f: &HomPoly<F>) -> String {
    print_poly_with(f, VarStyle::Indexed)
}

pub fn print_poly_with<F: Scalar>(f: &HomPoly<F>, style: VarStyle) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let alias = style == VarStyle::Alias && f.nvars() <= ALIASES.len();
    let mut out = String::new();
    for (k, (exps, c)) in f.terms().enumerate() {
        let negative = *c < F::zero();
        let abs = if negative { -c.clone() } else { c.clone() };
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors = Vec::new();
        let constant = exps.degree() == 0;
        if constant || !abs.is_one() {
            factors.push(abs.to_string());
        }
        for (i, &e) in exps.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if alias {
                ALIASES[i].to_string()
            } else {
                format!("x{i}")
            };
            factors.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Name of variable `i` under a style, for messages and documents.
pub fn var_name(i: usize, nvars: usize, style: VarStyle) -> String {
    if style == VarStyle::Alias && nvars <= ALIASES.len() {
        ALIASES[i].to_string()
    } else {
        format!("x{i}")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
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

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(v) => write!(f, "number {v}"),
            Token::Ident(s) => write!(f, "name '{s}'"),
            Token::Plus => write!(f, "'+'"),
            Token::Minus => write!(f, "'-'"),
            Token::Star => write!(f, "'*'"),
            Token::Slash => write!(f, "'/'"),
            Token::Caret => write!(f, "'^'"),
            Token::LParen => write!(f, "'('"),
            Token::RParen => write!(f, "')'"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
            let value = digits.parse::<BigInt>().expect("ascii digits");
            tokens.push((pos, Token::Int(value)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|(_, c)| c).collect();
            tokens.push((pos, Token::Ident(name)));
            continue;
        }
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => {
                return Err(ParseError::Syntax {
                    position: pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        tokens.push((pos, tok));
        i += 1;
    }
    Ok(tokens)
}

/// Intermediate, not necessarily homogeneous, polynomial.
type Sparse = BTreeMap<[u32; MAX_VARS], Rat>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Naming {
    Alias,
    Indexed,
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
    naming: Option<Naming>,
    max_var: Option<usize>,
    nvars: Option<usize>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.position(),
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Token) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected {tok}, found {t}"))),
            None => Err(self.error(format!("expected {tok}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Sparse, ParseError> {
        let negate = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = scale(&acc, &-Rat::one());
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add(&acc, &t);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add(&acc, &scale(&t, &-Rat::one()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Sparse, ParseError> {
        match self.peek() {
            Some(Token::Int(num)) => {
                self.pos += 1;
                let mut value = Rat::from_integer(num.clone());
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek() {
                        Some(Token::Int(den)) if !den.is_zero() => {
                            self.pos += 1;
                            value = Rat::new(num.clone(), den.clone());
                        }
                        Some(Token::Int(_)) => return Err(self.error("zero denominator")),
                        _ => return Err(self.error("expected a denominator after '/'")),
                    }
                }
                Ok(constant(value))
            }
            Some(Token::Ident(_)) | Some(Token::LParen) => {
                let base = self.primary()?;
                if let Some(Token::Caret) = self.peek() {
                    self.pos += 1;
                    let k = match self.peek() {
                        Some(Token::Int(k)) => {
                            u32::try_from(k.clone()).ok().filter(|&k| k <= MAX_EXPONENT)
                        }
                        _ => return Err(self.error("expected an exponent after '^'")),
                    };
                    let Some(k) = k else {
                        return Err(self.error(format!("exponent larger than {MAX_EXPONENT}")));
                    };
                    self.pos += 1;
                    let mut acc = constant(Rat::one());
                    for _ in 0..k {
                        acc = mul(&acc, &base);
                    }
                    return Ok(acc);
                }
                Ok(base)
            }
            Some(t) => Err(self.error(format!("unexpected {t}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn primary(&mut self) -> Result<Sparse, ParseError> {
        let position = self.position();
        match self.peek() {
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let index = self.variable(name, position)?;
                let mut exps = [0u32; MAX_VARS];
                exps[index] = 1;
                Ok(BTreeMap::from([(exps, Rat::one())]))
            }
            _ => Err(self.error("expected a variable or '('")),
        }
    }

    fn variable(&mut self, name: &str, position: usize) -> Result<usize, ParseError> {
        let (naming, index) = if let Some(i) = ALIASES.iter().position(|a| *a == name) {
            (Naming::Alias, i)
        } else if let Some(i) = name
            .strip_prefix('x')
            .filter(|rest| rest.len() == 1)
            .and_then(|rest| rest.parse::<usize>().ok())
        {
            (Naming::Indexed, i)
        } else {
            return Err(ParseError::UnknownVariable {
                name: name.to_string(),
                position,
            });
        };
        match self.naming {
            Some(n) if n != naming => {
                return Err(ParseError::MixedNaming {
                    name: name.to_string(),
                    position,
                })
            }
            _ => self.naming = Some(naming),
        }
        if let Some(nvars) = self.nvars {
            if index >= nvars {
                return Err(ParseError::VariableOutOfRange {
                    name: name.to_string(),
                    position,
                    nvars,
                });
            }
        }
        self.max_var = Some(self.max_var.map_or(index, |m| m.max(index)));
        Ok(index)
    }
}

fn constant(c: Rat) -> Sparse {
    if c.is_zero() {
        BTreeMap::new()
    } else {
        BTreeMap::from([([0u32; MAX_VARS], c)])
    }
}

fn add(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = a.clone();
    for (e, c) in b {
        let sum = out.get(e).cloned().unwrap_or_else(Rat::zero) + c;
        if sum.is_zero() {
            out.remove(e);
        } else {
            out.insert(*e, sum);
        }
    }
    out
}

fn scale(a: &Sparse, c: &Rat) -> Sparse {
    a.iter().map(|(e, v)| (*e, v * c)).collect()
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out: Sparse = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut e = [0u32; MAX_VARS];
            for i in 0..MAX_VARS {
                e[i] = ea[i] + eb[i];
            }
            let sum = out.get(&e).cloned().unwrap_or_else(Rat::zero) + ca * cb;
            if sum.is_zero() {
                out.remove(&e);
            } else {
                out.insert(e, sum);
            }
        }
    }
    out
}

fn parse(text: &str, nvars: Option<usize>) -> Result<Poly, ParseError> {
    if let Some(n) = nvars {
        assert!((1..=MAX_VARS).contains(&n), "variable count out of range");
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        end: text.len(),
        naming: None,
        max_var: None,
        nvars,
    };
    let sparse = parser.expr()?;
    if let Some(t) = parser.peek() {
        let message = match t {
            Token::Ident(_) | Token::Int(_) | Token::LParen => {
                format!("unexpected {t} (products need an explicit '*')")
            }
            _ => format!("unexpected {t}"),
        };
        return Err(parser.error(message));
    }
    let nvars = nvars.unwrap_or_else(|| parser.max_var.map_or(2, |m| (m + 1).max(2)));
    let mut degrees: Vec<u32> = sparse.keys().map(|e| e.iter().sum()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    if degrees.len() > 1 {
        return Err(ParseError::NotHomogeneous { degrees });
    }
    let degree = degrees.first().copied().unwrap_or(0);
    let terms = sparse
        .into_iter()
        .map(|(e, c)| (ExponentVector::new(e[..nvars].to_vec()), c));
    Ok(HomPoly::from_terms(nvars, degree, terms).expect("homogeneity checked above"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn parses_intro_witness() {
        let g = parse_poly("x^2*z + x*y^2").unwrap();
        assert_eq!(g.nvars(), 3);
        assert_eq!(g.degree(), 3);
        assert_eq!(g.num_terms(), 2);
        assert_eq!(print_poly_with(&g, VarStyle::Alias), "x^2*z + x*y^2");
        assert_eq!(print_poly(&g), "x0^2*x2 + x0*x1^2");
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        assert_eq!(
            parse_poly("x^2 + y^3"),
            Err(ParseError::NotHomogeneous {
                degrees: vec![2, 3]
            })
        );
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_poly("1/2*x^2*z").unwrap();
        let (_, c) = p.leading_term().unwrap();
        assert_eq!(*c, rat(1, 2));
        let q = parse_poly_in("-3/2*x0^2*x1", 2).unwrap();
        assert_eq!(print_poly(&q), "-3/2*x0^2*x1");
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(print_poly(&Poly::zero(3, 3)), "0");
    }

    #[test]
    fn implicit_multiplication_is_an_error() {
        assert!(matches!(
            parse_poly("2 x"),
            Err(ParseError::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("xy"),
            Err(ParseError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn mixed_naming_is_rejected() {
        assert!(matches!(
            parse_poly("x*x1"),
            Err(ParseError::MixedNaming { position: 2, .. })
        ));
    }

    #[test]
    fn parenthesized_powers_expand() {
        let p = parse_poly("(x + y)^2 - x^2 - y^2").unwrap();
        assert_eq!(p, parse_poly("2*x*y").unwrap());
    }

    #[test]
    fn explicit_ring_size() {
        let p = parse_poly_in("x^3 + y^3", 3).unwrap();
        assert_eq!(p.nvars(), 3);
        assert!(matches!(
            parse_poly_in("x3", 3),
            Err(ParseError::VariableOutOfRange { .. })
        ));
    }

    #[test]
    fn syntax_errors_report_positions() {
        assert!(matches!(
            parse_poly("x + * y"),
            Err(ParseError::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            parse_poly("(x + y"),
            Err(ParseError::Syntax { position: 6, .. })
        ));
        assert!(parse_poly("x/2").is_err());
    }
}
