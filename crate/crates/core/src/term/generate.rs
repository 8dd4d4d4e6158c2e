//! Random terms for property tests and sampled checks.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use super::Term;
use crate::rational::Rat01;

/// What a generated term may contain.
#[derive(Clone, Debug, Default)]
pub struct TermShape {
    pub vars: Vec<String>,
    /// Leaves `gen(i,j)` with `i < generators.0`, `j < generators.1`.
    pub generators: Option<(usize, usize)>,
    /// Allow constant leaves `0`, `1` (and rationals when `scalars`).
    pub constants: bool,
    pub lattice: bool,
    pub scalars: Option<Vec<Rat01>>,
    pub products: bool,
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, shape: &TermShape) -> Term {
    let mut kinds = Vec::new();
    if !shape.vars.is_empty() {
        kinds.push(0);
    }
    if shape.generators.is_some() {
        kinds.push(1);
    }
    if shape.constants || kinds.is_empty() {
        kinds.push(2);
    }
    match kinds[rng.random_range(0..kinds.len())] {
        0 => Term::Var(shape.vars[rng.random_range(0..shape.vars.len())].clone()),
        1 => {
            let (n, m) = shape.generators.unwrap();
            Term::Gen(rng.random_range(0..n), rng.random_range(0..m))
        }
        _ => {
            if rng.random_bool(0.5) {
                Term::Const(Rat01::ZERO)
            } else {
                Term::Const(Rat01::ONE)
            }
        }
    }
}

/// A random term of depth at most `depth`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, depth: usize, shape: &TermShape) -> Term {
    if depth == 0 || rng.random_range(0..4) == 0 {
        return leaf(rng, shape);
    }
    let mut ops: Vec<u8> = Vec::from([0, 1, 2]);
    if shape.lattice {
        ops.extend([3, 4]);
    }
    if shape.scalars.as_ref().is_some_and(|s| !s.is_empty()) {
        ops.push(5);
    }
    if shape.products {
        ops.push(6);
    }
    let sub = |rng: &mut R| Box::new(random_term(rng, depth - 1, shape));
    match ops[rng.random_range(0..ops.len())] {
        0 => Term::Neg(sub(rng)),
        1 => Term::Oplus(sub(rng), sub(rng)),
        2 => Term::Odot(sub(rng), sub(rng)),
        3 => Term::Meet(sub(rng), sub(rng)),
        4 => Term::Join(sub(rng), sub(rng)),
        5 => {
            let s = shape.scalars.as_ref().unwrap();
            Term::Scalar(s[rng.random_range(0..s.len())], sub(rng))
        }
        _ => Term::Prod(sub(rng), sub(rng)),
    }
}
