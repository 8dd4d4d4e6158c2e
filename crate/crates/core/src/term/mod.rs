//! Terms over the MV, PMV, Riesz and f-MV signatures: syntax tree, parser,
//! canonical printer, evaluation and random generation.

mod eval;
mod generate;
mod parser;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

use crate::rational::Rat01;

pub use eval::{eval, EvalContext, FnContext, RatContext, TableContext};
pub use generate::{random_term, TermShape};
pub use parser::parse;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(String),
    Const(Rat01),
    Neg(Box<Term>),
    Oplus(Box<Term>, Box<Term>),
    Odot(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    /// Scalar multiple `q * t`.
    Scalar(Rat01, Box<Term>),
    /// Internal product `s . t`.
    Prod(Box<Term>, Box<Term>),
    /// The tensor generator `γ(a_i, b_j)` over two element pools.
    Gen(usize, usize),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.into())
    }

    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn oplus(s: Term, t: Term) -> Term {
        Term::Oplus(Box::new(s), Box::new(t))
    }

    pub fn odot(s: Term, t: Term) -> Term {
        Term::Odot(Box::new(s), Box::new(t))
    }

    pub fn meet(s: Term, t: Term) -> Term {
        Term::Meet(Box::new(s), Box::new(t))
    }

    pub fn join(s: Term, t: Term) -> Term {
        Term::Join(Box::new(s), Box::new(t))
    }

    pub fn scalar(q: Rat01, t: Term) -> Term {
        Term::Scalar(q, Box::new(t))
    }

    pub fn prod(s: Term, t: Term) -> Term {
        Term::Prod(Box::new(s), Box::new(t))
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) | Term::Gen(..) => 0,
            Term::Neg(t) | Term::Scalar(_, t) => 1 + t.depth(),
            Term::Oplus(s, t)
            | Term::Odot(s, t)
            | Term::Meet(s, t)
            | Term::Join(s, t)
            | Term::Prod(s, t) => 1 + s.depth().max(t.depth()),
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) | Term::Gen(..) => {}
            Term::Neg(t) | Term::Scalar(_, t) => t.collect_vars(out),
            Term::Oplus(s, t)
            | Term::Odot(s, t)
            | Term::Meet(s, t)
            | Term::Join(s, t)
            | Term::Prod(s, t) => {
                s.collect_vars(out);
                t.collect_vars(out);
            }
        }
    }

    pub fn has_scalars(&self) -> bool {
        match self {
            Term::Scalar(..) => true,
            Term::Var(_) | Term::Const(_) | Term::Gen(..) => false,
            Term::Neg(t) => t.has_scalars(),
            Term::Oplus(s, t)
            | Term::Odot(s, t)
            | Term::Meet(s, t)
            | Term::Join(s, t)
            | Term::Prod(s, t) => s.has_scalars() || t.has_scalars(),
        }
    }

    /// Binding strength: lattice operations loosest, atoms tightest.
    fn level(&self) -> u8 {
        match self {
            Term::Join(..) => 0,
            Term::Meet(..) => 1,
            Term::Oplus(..) | Term::Odot(..) => 2,
            Term::Prod(..) => 3,
            Term::Scalar(..) => 4,
            Term::Var(_) | Term::Const(_) | Term::Neg(_) | Term::Gen(..) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        let lvl = self.level();
        let mut bin = |s: &Term, op: &str, t: &Term| -> fmt::Result {
            s.write_at(f, lvl)?;
            write!(f, " {op} ")?;
            t.write_at(f, lvl + 1)
        };
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(q) => write!(f, "{q}"),
            Term::Gen(i, j) => write!(f, "gen({i},{j})"),
            Term::Neg(t) => {
                write!(f, "neg(")?;
                t.write_at(f, 0)?;
                write!(f, ")")
            }
            Term::Scalar(q, t) => {
                write!(f, "{q} * ")?;
                t.write_at(f, 5)
            }
            Term::Oplus(s, t) => bin(s, "(+)", t),
            Term::Odot(s, t) => bin(s, "(.)", t),
            Term::Meet(s, t) => bin(s, "/\\", t),
            Term::Join(s, t) => bin(s, "\\/", t),
            Term::Prod(s, t) => bin(s, ".", t),
        }
    }
}

/// Canonical form: minimal parentheses, binary operators left associative.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
