use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Expr, ExprKind, Span, FUNCTIONS};
use crate::error::{Error, Result};
use crate::ring::Scalar;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Number { value: Scalar, integer: bool },
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("identifier `{name}`"),
            Token::Number { value, .. } => format!("number `{value}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn syntax(span: Span, message: impl Into<String>, expected: &[&str]) -> Error {
    Error::Syntax {
        line: span.line,
        column: span.column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(text: &str) -> Result<Vec<(Token, Span)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&(start, c)) = chars.peek() {
        let span_at = |end: usize| Span {
            start,
            end,
            line,
            column,
        };
        if c.is_whitespace() {
            chars.next();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            continue;
        }
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            ',' => Some(Token::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push((tok, span_at(start + 1)));
            column += 1;
            continue;
        }
        let take_while = |chars: &mut std::iter::Peekable<std::str::CharIndices>,
                          pred: fn(char) -> bool| {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !pred(c) {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            end
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let end = take_while(&mut chars, |c| c.is_ascii_alphanumeric() || c == '_');
            out.push((Token::Ident(text[start..end].to_string()), span_at(end)));
            column += end - start;
        } else if c.is_ascii_digit() {
            let mut end = take_while(&mut chars, |c| c.is_ascii_digit());
            let numer: BigInt = text[start..end].parse().expect("digits");
            let mut value = Scalar::from_integer(numer.clone());
            let mut integer = true;
            if let Some(&(slash, '/')) = chars.peek() {
                chars.next();
                let den_start = slash + 1;
                let den_end = take_while(&mut chars, |c| c.is_ascii_digit());
                if den_end <= den_start {
                    let span = Span {
                        start: slash,
                        end: slash + 1,
                        line,
                        column: column + (slash - start),
                    };
                    return Err(syntax(span, "incomplete rational literal", &["digits"]));
                }
                let denom: BigInt = text[den_start..den_end].parse().expect("digits");
                if denom.is_zero() {
                    return Err(syntax(span_at(den_end), "zero denominator", &["nonzero digits"]));
                }
                value = Scalar::new(numer, denom);
                integer = false;
                end = den_end;
            }
            out.push((Token::Number { value, integer }, span_at(end)));
            column += end - start;
        } else {
            return Err(syntax(
                span_at(start + c.len_utf8()),
                format!("unexpected character `{c}`"),
                &["identifier", "number", "operator", "`(`"],
            ));
        }
    }
    let end = text.len();
    out.push((
        Token::End,
        Span {
            start: end,
            end,
            line,
            column,
        },
    ));
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].1
    }

    fn advance(&mut self) -> (Token, Span) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        syntax(
            self.span(),
            format!("unexpected {}", self.peek().describe()),
            expected,
        )
    }

    fn joined(start: Span, end: Span) -> Span {
        Span {
            end: end.end,
            ..start
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let start = self.span();
        let mut lhs = if *self.peek() == Token::Minus {
            // `-x` reads as `0 - x`
            let zero = Expr {
                kind: ExprKind::Rational(Scalar::zero()),
                span: Span {
                    end: start.start,
                    ..start
                },
            };
            self.advance();
            let rhs = self.term()?;
            let span = Self::joined(start, rhs.span);
            Expr {
                kind: ExprKind::Sub(Box::new(zero), Box::new(rhs)),
                span,
            }
        } else {
            self.term()?
        };
        loop {
            let add = match self.peek() {
                Token::Plus => true,
                Token::Minus => false,
                _ => return Ok(lhs),
            };
            self.advance();
            let rhs = self.term()?;
            let span = Self::joined(lhs.span, rhs.span);
            let kind = if add {
                ExprKind::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { kind, span };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while *self.peek() == Token::Star {
            self.advance();
            let rhs = self.factor()?;
            let span = Self::joined(lhs.span, rhs.span);
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.advance();
        let (tok, span) = self.advance();
        let exponent = match &tok {
            Token::Number {
                value,
                integer: true,
            } => value.to_integer().to_u32(),
            _ => None,
        };
        match exponent {
            Some(e) => Ok(Expr {
                span: Self::joined(base.span, span),
                kind: ExprKind::Pow(Box::new(base), e),
            }),
            None => Err(syntax(
                span,
                format!("unexpected {} after `^`", tok.describe()),
                &["natural number"],
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        const ATOM: [&str; 3] = ["identifier", "number", "`(`"];
        let start = self.span();
        match self.peek().clone() {
            Token::Number { value, .. } => {
                self.advance();
                Ok(Expr {
                    kind: ExprKind::Rational(value),
                    span: start,
                })
            }
            Token::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect_close(&["`)`", "`+`", "`-`", "`*`", "`^`"])?;
                Ok(inner)
            }
            Token::Ident(name) => {
                self.advance();
                if *self.peek() != Token::LParen {
                    return Ok(Expr {
                        kind: ExprKind::Ident(name),
                        span: start,
                    });
                }
                if !FUNCTIONS.contains(&name.as_str()) {
                    return Err(syntax(
                        start,
                        format!("unknown function `{name}`"),
                        &FUNCTIONS,
                    ));
                }
                self.advance();
                let mut args = vec![self.expr()?];
                while *self.peek() == Token::Comma {
                    self.advance();
                    args.push(self.expr()?);
                }
                let end = self.expect_close(&["`,`", "`)`", "`+`", "`-`", "`*`", "`^`"])?;
                Ok(Expr {
                    kind: ExprKind::Call(name, args),
                    span: Self::joined(start, end),
                })
            }
            _ => Err(self.unexpected(&ATOM)),
        }
    }

    fn expect_close(&mut self, expected: &[&str]) -> Result<Span> {
        if *self.peek() == Token::RParen {
            Ok(self.advance().1)
        } else {
            Err(self.unexpected(expected))
        }
    }
}

/// Parses one expression; trailing input is an error.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let expr = p.expr()?;
    if *p.peek() != Token::End {
        return Err(p.unexpected(&["`+`", "`-`", "`*`", "`^`", "end of input"]));
    }
    Ok(expr)
}
