use super::Formula;

/// Syntax error with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Sim,
    Neg,
    Delta,
    Box,
    Diamond,
    And,
    Or,
    Imp,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::End => "end of input".into(),
        other => format!("{other:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Sim,
            b'!' => Tok::Neg,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0' => Tok::Zero,
            b'1' => Tok::One,
            b'[' if bytes.get(i + 1) == Some(&b']') => {
                i += 1;
                Tok::Box
            }
            b'<' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Diamond
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Imp
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                let word = &text[start..=i];
                if word == "D" {
                    Tok::Delta
                } else {
                    Tok::Ident(word.to_string())
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    position: start,
                    message: format!("unknown token `{ch}`"),
                });
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, message: String) -> ParseError {
        ParseError {
            position: self.pos(),
            message,
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Sim => Ok(Formula::sim(self.unary()?)),
            Tok::Neg => Ok(Formula::neg(self.unary()?)),
            Tok::Delta => Ok(Formula::delta(self.unary()?)),
            Tok::Box => Ok(Formula::nec(self.unary()?)),
            Tok::Diamond => Ok(Formula::pos(self.unary()?)),
            Tok::Zero => Ok(Formula::Bot),
            Tok::One => Ok(Formula::Top),
            Tok::Ident(v) => Ok(Formula::Var(v)),
            Tok::LParen => {
                let inner = self.imp()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(format!("expected `)`, found {}", describe(self.peek()))));
                }
                self.bump();
                Ok(inner)
            }
            other => Err(ParseError {
                position: pos,
                message: format!("expected a formula, found {}", describe(&other)),
            }),
        }
    }
}

/// Parses the ASCII syntax: atoms `0`, `1` and identifiers, prefix `~ ! D
/// [] <>`, then `&`, `|` and right-associative `->` in decreasing binding
/// strength. A bare `D` is the Δ connective, not a variable.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let f = p.imp()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {}", describe(p.peek()))));
    }
    Ok(f)
}
