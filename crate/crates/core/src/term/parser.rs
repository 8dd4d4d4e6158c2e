//! LL(1) recursive-descent parser for the term grammar:
//!
//! ```text
//! term   := join
//! join   := meet ("\/" meet)*
//! meet   := sum ("/\" sum)*
//! sum    := prod ("(+)" prod | "(.)" prod)*
//! prod   := scalar ("." scalar)*
//! scalar := [rational "*"] atom
//! atom   := "neg" "(" term ")" | "gen" "(" int "," int ")" | rational | ident | "(" term ")"
//! ```

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::Term;
use crate::error::{Error, Result};
use crate::rational::{Rat01, Q};

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Join,
    Meet,
    Oplus,
    Odot,
    Dot,
    Star,
    LParen,
    RParen,
    Comma,
    Number(i128, i128),
    Ident(String),
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: String| Error::Syntax { pos, msg };
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let rest = &text[i..];
        let tok = if rest.starts_with("\\/") {
            i += 2;
            Tok::Join
        } else if rest.starts_with("/\\") {
            i += 2;
            Tok::Meet
        } else if rest.starts_with("(+)") {
            i += 3;
            Tok::Oplus
        } else if rest.starts_with("(.)") {
            i += 3;
            Tok::Odot
        } else if c == b'.' {
            i += 1;
            Tok::Dot
        } else if c == b'*' {
            i += 1;
            Tok::Star
        } else if c == b'(' {
            i += 1;
            Tok::LParen
        } else if c == b')' {
            i += 1;
            Tok::RParen
        } else if c == b',' {
            i += 1;
            Tok::Comma
        } else if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let num: i128 = text[start..i]
                .parse()
                .map_err(|_| err(start, "integer too large".into()))?;
            let mut den = 1;
            if i + 1 < b.len() && b[i] == b'/' && b[i + 1].is_ascii_digit() {
                let ds = i + 1;
                i += 1;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                den = text[ds..i]
                    .parse()
                    .map_err(|_| err(ds, "integer too large".into()))?;
                if den == 0 {
                    return Err(err(ds, "zero denominator".into()));
                }
            }
            Tok::Number(num, den)
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            Tok::Ident(text[start..i].into())
        } else {
            return Err(err(
                start,
                format!("unexpected character `{}`", rest.chars().next().unwrap()),
            ));
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: format!("{msg}, found {:?}", self.peek()),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("expected {what}"))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.meet()?;
        while *self.peek() == Tok::Join {
            self.bump();
            t = Term::Join(Box::new(t), Box::new(self.meet()?));
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut t = self.sum()?;
        while *self.peek() == Tok::Meet {
            self.bump();
            t = Term::Meet(Box::new(t), Box::new(self.sum()?));
        }
        Ok(t)
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.prod()?;
        loop {
            match self.peek() {
                Tok::Oplus => {
                    self.bump();
                    t = Term::Oplus(Box::new(t), Box::new(self.prod()?));
                }
                Tok::Odot => {
                    self.bump();
                    t = Term::Odot(Box::new(t), Box::new(self.prod()?));
                }
                _ => return Ok(t),
            }
        }
    }

    fn prod(&mut self) -> Result<Term> {
        let mut t = self.scalar()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            t = Term::Prod(Box::new(t), Box::new(self.scalar()?));
        }
        Ok(t)
    }

    fn rational(&self, n: i128, d: i128, pos: usize) -> Result<Rat01> {
        Rat01::from_q(Q::new(n, d)).map_err(|_| Error::Syntax {
            pos,
            msg: format!("{n}/{d} is outside [0,1]"),
        })
    }

    fn scalar(&mut self) -> Result<Term> {
        if let Tok::Number(n, d) = *self.peek() {
            let pos = self.pos();
            self.bump();
            let q = self.rational(n, d, pos)?;
            if *self.peek() == Tok::Star {
                self.bump();
                return Ok(Term::Scalar(q, Box::new(self.atom()?)));
            }
            return Ok(Term::Const(q));
        }
        self.atom()
    }

    fn index(&mut self) -> Result<usize> {
        match *self.peek() {
            Tok::Number(n, 1) if n >= 0 => {
                self.bump();
                usize::try_from(n).or_else(|_| self.fail("index too large"))
            }
            _ => self.fail("expected a generator index"),
        }
    }

    fn atom(&mut self) -> Result<Term> {
        let pos = self.pos();
        match self.bump() {
            Tok::Number(n, d) => Ok(Term::Const(self.rational(n, d, pos)?)),
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(name) if name == "neg" => {
                self.expect(Tok::LParen, "`(` after neg")?;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Term::Neg(Box::new(t)))
            }
            Tok::Ident(name) if name == "gen" && *self.peek() == Tok::LParen => {
                self.bump();
                let i = self.index()?;
                self.expect(Tok::Comma, "`,`")?;
                let j = self.index()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Term::Gen(i, j))
            }
            Tok::Ident(name) => Ok(Term::Var(name)),
            tok => Err(Error::Syntax {
                pos,
                msg: format!("expected a term, found {tok:?}"),
            }),
        }
    }
}

pub fn parse(text: &str) -> Result<Term> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return p.fail("expected end of input");
    }
    Ok(t)
}
