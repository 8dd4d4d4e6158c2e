//! Structural evaluation of terms in an algebra context.

use alloc::collections::BTreeMap;
use alloc::string::String;

use super::Term;
use crate::error::{Error, Result};
use crate::mv::function::FnElement;
use crate::mv::table::TableAlgebra;
use crate::rational::Rat01;

/// The operations a context supplies. Product, scalar multiples and
/// generators are optional and unsupported by default.
pub trait EvalContext {
    type Value: Clone;

    fn name(&self) -> &'static str;

    fn constant(&self, q: Rat01) -> Result<Self::Value>;
    fn neg(&self, x: &Self::Value) -> Self::Value;
    fn oplus(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn odot(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn meet(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn join(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;

    fn scalar(&self, _q: Rat01, _x: &Self::Value) -> Result<Self::Value> {
        Err(self.unsupported("*"))
    }

    fn prod(&self, _x: &Self::Value, _y: &Self::Value) -> Result<Self::Value> {
        Err(self.unsupported("."))
    }

    fn generator(&self, _i: usize, _j: usize) -> Result<Self::Value> {
        Err(self.unsupported("gen"))
    }

    fn unsupported(&self, connective: &'static str) -> Error {
        Error::UnsupportedConnective {
            context: self.name(),
            connective,
        }
    }
}

pub fn eval<C: EvalContext>(
    t: &Term,
    env: &BTreeMap<String, C::Value>,
    ctx: &C,
) -> Result<C::Value> {
    let ev = |s: &Term| eval(s, env, ctx);
    Ok(match t {
        Term::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        Term::Const(q) => ctx.constant(*q)?,
        Term::Neg(s) => ctx.neg(&ev(s)?),
        Term::Oplus(s, u) => ctx.oplus(&ev(s)?, &ev(u)?),
        Term::Odot(s, u) => ctx.odot(&ev(s)?, &ev(u)?),
        Term::Meet(s, u) => ctx.meet(&ev(s)?, &ev(u)?),
        Term::Join(s, u) => ctx.join(&ev(s)?, &ev(u)?),
        Term::Scalar(q, s) => ctx.scalar(*q, &ev(s)?)?,
        Term::Prod(s, u) => ctx.prod(&ev(s)?, &ev(u)?)?,
        Term::Gen(i, j) => ctx.generator(*i, *j)?,
    })
}

/// The standard algebra `[0,1] ∩ ℚ`, optionally with product and scalars.
#[derive(Clone, Copy, Debug)]
pub struct RatContext {
    pub products: bool,
    pub scalars: bool,
}

impl RatContext {
    pub const MV: RatContext = RatContext {
        products: false,
        scalars: false,
    };
    pub const PMV: RatContext = RatContext {
        products: true,
        scalars: false,
    };
    pub const RIESZ: RatContext = RatContext {
        products: false,
        scalars: true,
    };
    pub const FMV: RatContext = RatContext {
        products: true,
        scalars: true,
    };
}

fn signature_name(products: bool, scalars: bool) -> &'static str {
    match (products, scalars) {
        (false, false) => "MV",
        (true, false) => "PMV",
        (false, true) => "Riesz",
        (true, true) => "f-MV",
    }
}

impl EvalContext for RatContext {
    type Value = Rat01;

    fn name(&self) -> &'static str {
        signature_name(self.products, self.scalars)
    }

    fn constant(&self, q: Rat01) -> Result<Rat01> {
        Ok(q)
    }

    fn neg(&self, x: &Rat01) -> Rat01 {
        x.neg()
    }

    fn oplus(&self, x: &Rat01, y: &Rat01) -> Rat01 {
        x.oplus(*y)
    }

    fn odot(&self, x: &Rat01, y: &Rat01) -> Rat01 {
        x.odot(*y)
    }

    fn meet(&self, x: &Rat01, y: &Rat01) -> Rat01 {
        x.meet(*y)
    }

    fn join(&self, x: &Rat01, y: &Rat01) -> Rat01 {
        x.join(*y)
    }

    fn scalar(&self, q: Rat01, x: &Rat01) -> Result<Rat01> {
        if !self.scalars {
            return Err(self.unsupported("*"));
        }
        Ok(q.mul(*x))
    }

    fn prod(&self, x: &Rat01, y: &Rat01) -> Result<Rat01> {
        if !self.products {
            return Err(self.unsupported("."));
        }
        Ok(x.mul(*y))
    }
}

/// A finite algebra on table indices. Only the constants 0 and 1 exist.
#[derive(Clone, Copy, Debug)]
pub struct TableContext<'a>(pub &'a TableAlgebra);

impl EvalContext for TableContext<'_> {
    type Value = usize;

    fn name(&self) -> &'static str {
        "finite MV"
    }

    fn constant(&self, q: Rat01) -> Result<usize> {
        if q.is_zero() {
            Ok(self.0.zero())
        } else if q.is_one() {
            Ok(self.0.one())
        } else {
            Err(self.unsupported("rational constant"))
        }
    }

    fn neg(&self, x: &usize) -> usize {
        self.0.neg(*x)
    }

    fn oplus(&self, x: &usize, y: &usize) -> usize {
        self.0.oplus(*x, *y)
    }

    fn odot(&self, x: &usize, y: &usize) -> usize {
        self.0.odot(*x, *y)
    }

    fn meet(&self, x: &usize, y: &usize) -> usize {
        self.0.meet(*x, *y)
    }

    fn join(&self, x: &usize, y: &usize) -> usize {
        self.0.join(*x, *y)
    }
}

/// Pointwise operations on functions over a carrier with `points` points.
#[derive(Clone, Copy, Debug)]
pub struct FnContext {
    pub points: usize,
    pub products: bool,
    pub scalars: bool,
}

impl EvalContext for FnContext {
    type Value = FnElement;

    fn name(&self) -> &'static str {
        signature_name(self.products, self.scalars)
    }

    fn constant(&self, q: Rat01) -> Result<FnElement> {
        if q.is_zero() || q.is_one() || self.scalars {
            Ok(FnElement::constant(self.points, q))
        } else {
            Err(self.unsupported("rational constant"))
        }
    }

    fn neg(&self, x: &FnElement) -> FnElement {
        x.neg()
    }

    fn oplus(&self, x: &FnElement, y: &FnElement) -> FnElement {
        x.oplus(y)
    }

    fn odot(&self, x: &FnElement, y: &FnElement) -> FnElement {
        x.odot(y)
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
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    fn r(n: i128, d: i128) -> Rat01 {
        Rat01::new(n, d).unwrap()
    }

    #[test]
    fn rational_evaluation() {
        let env: BTreeMap<String, Rat01> = [("x".into(), r(1, 2)), ("y".into(), r(2, 3))].into();
        assert_eq!(
            eval(&parse("x (+) y").unwrap(), &env, &RatContext::MV).unwrap(),
            Rat01::ONE
        );
        assert_eq!(
            eval(&parse("neg(x) (.) y").unwrap(), &env, &RatContext::MV).unwrap(),
            r(1, 6)
        );
    }

    #[test]
    fn signature_enforcement() {
        let env: BTreeMap<String, Rat01> = [("x".into(), r(1, 2))].into();
        let t = parse("1/2 * x").unwrap();
        assert_eq!(
            eval(&t, &env, &RatContext::MV).unwrap_err(),
            Error::UnsupportedConnective {
                context: "MV",
                connective: "*"
            }
        );
        assert_eq!(eval(&t, &env, &RatContext::RIESZ).unwrap(), r(1, 4));
        let p = parse("x . x").unwrap();
        assert!(eval(&p, &env, &RatContext::RIESZ).is_err());
        assert_eq!(eval(&p, &env, &RatContext::PMV).unwrap(), r(1, 4));
        assert_eq!(
            eval(&parse("z").unwrap(), &env, &RatContext::MV).unwrap_err(),
            Error::UnboundVariable("z".into())
        );
    }

    #[test]
    fn table_evaluation() {
        let a = TableAlgebra::chain(4);
        let env: BTreeMap<String, usize> = [("x".into(), 1)].into();
        assert_eq!(
            eval(&parse("x (+) x (+) 0").unwrap(), &env, &TableContext(&a)).unwrap(),
            2
        );
        assert!(eval(&parse("1/2").unwrap(), &env, &TableContext(&a)).is_err());
    }
}
