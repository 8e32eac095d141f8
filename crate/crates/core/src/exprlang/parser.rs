//! Recursive-descent parser for radius/center profile expressions.
//!
//! Grammar (whitespace-insensitive, byte offsets in diagnostics):
//!
//! ```text
//! expr   := term  (("+" | "-") term)*          left-assoc
//! term   := unary (("*" | "/") unary)*         left-assoc
//! unary  := "-" unary | power
//! power  := atom ("^" unary)?                  right-assoc
//! atom   := number | "s" | func "(" expr ")" | "(" expr ")"
//! func   := "sin" | "cos" | "sinh" | "cosh" | "exp" | "ln" | "sqrt"
//! number := digits ["." digits] [("e"|"E") ["+"|"-"] digits]
//! ```
//!
//! There is no implicit multiplication: `2s` is a syntax error.

use super::{BinOp, Expr, Func, ParseError};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Token, usize)>, ParseError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            let start = lx.pos;
            if lx.pos >= lx.src.len() {
                out.push((Token::Eof, start));
                return Ok(out);
            }
            let c = lx.src[lx.pos];
            let tok = match c {
                b'+' => {
                    lx.pos += 1;
                    Token::Plus
                }
                b'-' => {
                    lx.pos += 1;
                    Token::Minus
                }
                b'*' => {
                    lx.pos += 1;
                    Token::Star
                }
                b'/' => {
                    lx.pos += 1;
                    Token::Slash
                }
                b'^' => {
                    lx.pos += 1;
                    Token::Caret
                }
                b'(' => {
                    lx.pos += 1;
                    Token::LParen
                }
                b')' => {
                    lx.pos += 1;
                    Token::RParen
                }
                b'0'..=b'9' | b'.' => lx.number(start)?,
                c if c.is_ascii_alphabetic() || c == b'_' => lx.ident(start),
                other => {
                    return Err(ParseError::new(
                        start,
                        format!("unexpected character `{}`", other as char),
                    ))
                }
            };
            out.push((tok, start));
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self, start: usize) -> Result<Token, ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if self.pos < self.src.len() && (self.src[self.pos] | 32) == b'e' {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && (self.src[self.pos] == b'+' || self.src[self.pos] == b'-')
            {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                // Not an exponent after all (e.g. `2e` would be malformed);
                // backtrack and let the identifier rule complain.
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        text.parse::<f64>()
            .map(Token::Number)
            .map_err(|_| ParseError::new(start, format!("malformed number `{text}`")))
    }

    fn ident(&mut self, start: usize) -> Token {
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Token::Ident(
            std::str::from_utf8(&self.src[start..self.pos])
                .expect("ascii slice")
                .to_owned(),
        )
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Token::Plus => BinOp::Add,
                Token::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Token::Star => BinOp::Mul,
                Token::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Token::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Token::Caret) {
            self.bump();
            let expo = self.unary()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(expo)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let off = self.offset();
        match self.bump().0 {
            Token::Number(x) => Ok(Expr::Number(x)),
            Token::Ident(name) => match name.as_str() {
                "s" => Ok(Expr::Var),
                "sin" | "cos" | "sinh" | "cosh" | "exp" | "ln" | "sqrt" => {
                    let func = match name.as_str() {
                        "sin" => Func::Sin,
                        "cos" => Func::Cos,
                        "sinh" => Func::Sinh,
                        "cosh" => Func::Cosh,
                        "exp" => Func::Exp,
                        "ln" => Func::Ln,
                        _ => Func::Sqrt,
                    };
                    if !matches!(self.peek(), Token::LParen) {
                        return Err(ParseError::new(
                            self.offset(),
                            format!("expected `(` after function `{name}`"),
                        ));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    if !matches!(self.peek(), Token::RParen) {
                        return Err(ParseError::new(self.offset(), "expected `)`".into()));
                    }
                    self.bump();
                    Ok(Expr::Call(func, Box::new(arg)))
                }
                other => Err(ParseError::new(
                    off,
                    format!("unknown identifier `{other}`"),
                )),
            },
            Token::LParen => {
                let e = self.expr()?;
                if !matches!(self.peek(), Token::RParen) {
                    return Err(ParseError::new(self.offset(), "expected `)`".into()));
                }
                self.bump();
                Ok(e)
            }
            Token::Eof => Err(ParseError::new(off, "expected expression".into())),
            _ => Err(ParseError::new(off, "expected expression".into())),
        }
    }
}

/// Parses a profile expression; every failure carries a byte offset.
pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let tokens = Lexer::tokens(source)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if !matches!(p.peek(), Token::Eof) {
        return Err(ParseError::new(p.offset(), "unexpected trailing input".into()));
    }
    Ok(e)
}
