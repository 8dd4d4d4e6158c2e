//! Evaluation of generator terms `gen(i,j)` inside an interval `[0, top]` of a
//! function algebra.

use crate::error::Result;
use crate::mv::FnElement;
use crate::rational::Rat01;
use crate::term::EvalContext;

/// Interprets `gen(i,j)` through `gen` and the MV connectives by the interval
/// operations `x ⊕ y ∧ top` and `¬x ⊙ top`. With `top = 1` these are the
/// ordinary pointwise operations.
pub struct GenContext<'a> {
    pub top: FnElement,
    pub gen: &'a dyn Fn(usize, usize) -> Result<FnElement>,
    pub scalars: bool,
    pub products: bool,
}

impl GenContext<'_> {
    fn rel_neg(&self, x: &FnElement) -> FnElement {
        x.neg().odot(&self.top)
    }
}

impl EvalContext for GenContext<'_> {
    type Value = FnElement;

    fn name(&self) -> &'static str {
        match (self.products, self.scalars) {
            (false, false) => "MV",
            (true, false) => "PMV",
            (false, true) => "Riesz MV",
            (true, true) => "f-MV",
        }
    }

    fn constant(&self, q: Rat01) -> Result<FnElement> {
        if q.is_zero() {
            Ok(FnElement::zero(self.top.len()))
        } else if q.is_one() {
            Ok(self.top.clone())
        } else if self.scalars {
            Ok(self.top.scale(q))
        } else {
            Err(self.unsupported("rational constant"))
        }
    }

    fn neg(&self, x: &FnElement) -> FnElement {
        self.rel_neg(x)
    }

    fn oplus(&self, x: &FnElement, y: &FnElement) -> FnElement {
        x.oplus(y).meet(&self.top)
    }

    fn odot(&self, x: &FnElement, y: &FnElement) -> FnElement {
        self.rel_neg(&self.oplus(&self.rel_neg(x), &self.rel_neg(y)))
    }

    fn meet(&self, x: &FnElement, y: &FnElement) -> FnElement {
        x.meet(y)
    }

    fn join(&self, x: &FnElement, y: &FnElement) -> FnElement {
        x.join(y)
    }

    fn scalar(&self, q: Rat01, x: &FnElement) -> Result<FnElement> {
        if !self.scalars {
            return Err(self.unsupported("*"));
        }
        Ok(x.scale(q))
    }

    fn prod(&self, x: &FnElement, y: &FnElement) -> Result<FnElement> {
        if !self.products {
            return Err(self.unsupported("."));
        }
        Ok(x.mul(y))
    }

    fn generator(&self, i: usize, j: usize) -> Result<FnElement> {
        (self.gen)(i, j)
    }
}
