//! Parameter expressions in templates: sums of products of rationals and
//! parameter names, e.g. `-1-a`, `s12+s21`, `2/3*b`.

use crate::error::{Error, Result};
use crate::linalg::{rational, MultiPoly};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                out.push(Token::Num(chars[start..i].iter().collect()));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected {other:?} at offset {i} in expression {src:?}"
                )))
            }
        }
    }
    Ok(out)
}

/// Parses an expression into a polynomial in its parameter names.
pub fn parse_expr(src: &str) -> Result<MultiPoly> {
    let tokens = tokenize(src)?;
    let bad = |what: &str| Error::Parse(format!("{what} in expression {src:?}"));
    if tokens.is_empty() {
        return Err(bad("empty"));
    }
    let mut out = MultiPoly::zero();
    let mut it = tokens.into_iter().peekable();
    let mut first = true;
    while it.peek().is_some() {
        let mut negative = false;
        match it.peek() {
            Some(Token::Plus) => {
                it.next();
            }
            Some(Token::Minus) => {
                negative = true;
                it.next();
            }
            _ if !first => return Err(bad("missing operator")),
            _ => {}
        }
        first = false;
        let mut term = MultiPoly::constant(rational::one());
        loop {
            let factor = match it.next() {
                Some(Token::Num(s)) => MultiPoly::constant(rational::parse(&s)?),
                Some(Token::Ident(s)) => MultiPoly::var(&s),
                _ => return Err(bad("expected a number or a name")),
            };
            term = term * factor;
            if it.peek() == Some(&Token::Star) {
                it.next();
            } else {
                break;
            }
        }
        out = if negative { out - term } else { out + term };
    }
    Ok(out)
}
