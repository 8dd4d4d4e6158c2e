//! One-variable piecewise-linear functions on `[0,1]` with rational
//! breakpoints: the free MV-algebra (McNaughton functions) and the free
//! Riesz MV-algebra on one generator.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{Rat01, Q};
use crate::term::{eval, EvalContext, Term};

/// Continuous, linear between consecutive breakpoints. Canonical: no
/// breakpoint is interior to a straight segment.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PwlFn {
    breakpoints: Vec<Rat01>,
    values: Vec<Rat01>,
}

/// Slope and intercept of one segment, `f(x) = slope·x + intercept`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Segment {
    pub from: Rat01,
    pub to: Rat01,
    pub slope: Q,
    pub intercept: Q,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoefficientProfile {
    pub segments: Vec<Segment>,
}

impl CoefficientProfile {
    pub fn is_integral(&self) -> bool {
        self.segments
            .iter()
            .all(|s| s.slope.is_integer() && s.intercept.is_integer())
    }
}

impl PwlFn {
    /// Builds and canonicalizes. Breakpoints must start at 0, end at 1 and be
    /// strictly increasing.
    pub fn new(breakpoints: Vec<Rat01>, values: Vec<Rat01>) -> Result<Self> {
        let ok = breakpoints.len() >= 2
            && breakpoints.len() == values.len()
            && breakpoints[0].is_zero()
            && breakpoints.last().unwrap().is_one()
            && breakpoints.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::InvalidTable(
                "breakpoints must increase strictly from 0 to 1, one value each".into(),
            ));
        }
        Ok(Self::canonical(breakpoints, values))
    }

    fn canonical(xs: Vec<Rat01>, vs: Vec<Rat01>) -> Self {
        let mut bx: Vec<Rat01> = Vec::with_capacity(xs.len());
        let mut bv: Vec<Rat01> = Vec::with_capacity(xs.len());
        for (x, v) in xs.into_iter().zip(vs) {
            if bx.last() == Some(&x) {
                continue;
            }
            while bx.len() >= 2 {
                let (x0, v0) = (bx[bx.len() - 2].value(), bv[bv.len() - 2].value());
                let (x1, v1) = (bx[bx.len() - 1].value(), bv[bv.len() - 1].value());
                if (v1 - v0) * (x.value() - x1) == (v.value() - v1) * (x1 - x0) {
                    bx.pop();
                    bv.pop();
                } else {
                    break;
                }
            }
            bx.push(x);
            bv.push(v);
        }
        PwlFn {
            breakpoints: bx,
            values: bv,
        }
    }

    pub fn identity() -> Self {
        Self::canonical(
            Vec::from([Rat01::ZERO, Rat01::ONE]),
            Vec::from([Rat01::ZERO, Rat01::ONE]),
        )
    }

    pub fn constant(c: Rat01) -> Self {
        Self::canonical(Vec::from([Rat01::ZERO, Rat01::ONE]), Vec::from([c, c]))
    }

    pub fn breakpoints(&self) -> &[Rat01] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rat01] {
        &self.values
    }

    pub fn eval(&self, x: Rat01) -> Rat01 {
        let k = match self.breakpoints.binary_search(&x) {
            Ok(k) => return self.values[k],
            Err(k) => k,
        };
        let (x0, x1) = (self.breakpoints[k - 1].value(), self.breakpoints[k].value());
        let (v0, v1) = (self.values[k - 1].value(), self.values[k].value());
        Rat01::from_q(v0 + (v1 - v0) * (x.value() - x0) / (x1 - x0)).expect("convex combination")
    }

    fn map(&self, f: impl Fn(Rat01) -> Rat01) -> Self {
        Self::canonical(
            self.breakpoints.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    /// Applies a pointwise binary operation. `kink` is a linear expression in
    /// the two values whose sign changes mark where the operation switches
    /// branches; its zeros are inserted as breakpoints.
    fn combine(
        &self,
        other: &Self,
        kink: impl Fn(Q, Q) -> Q,
        op: impl Fn(Rat01, Rat01) -> Rat01,
    ) -> Self {
        let mut xs: Vec<Rat01> = self
            .breakpoints
            .iter()
            .chain(&other.breakpoints)
            .copied()
            .collect();
        xs.sort();
        xs.dedup();
        let mut all = Vec::with_capacity(xs.len() * 2);
        for w in xs.windows(2) {
            all.push(w[0]);
            let h0 = kink(self.eval(w[0]).value(), other.eval(w[0]).value());
            let h1 = kink(self.eval(w[1]).value(), other.eval(w[1]).value());
            if (h0 < Q::zero() && h1 > Q::zero()) || (h0 > Q::zero() && h1 < Q::zero()) {
                let (x0, x1) = (w[0].value(), w[1].value());
                all.push(Rat01::from_q(x0 + (x1 - x0) * h0 / (h0 - h1)).expect("inside segment"));
            }
        }
        all.push(*xs.last().unwrap());
        let vs = all
            .iter()
            .map(|&x| op(self.eval(x), other.eval(x)))
            .collect();
        Self::canonical(all, vs)
    }

    pub fn oplus(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b - Q::one(), Rat01::oplus)
    }

    pub fn odot(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b - Q::one(), Rat01::odot)
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b, Rat01::meet)
    }

    pub fn join(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b, Rat01::join)
    }

    pub fn neg(&self) -> Self {
        self.map(Rat01::neg)
    }

    pub fn profile(&self) -> CoefficientProfile {
        let segments = self
            .breakpoints
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, v)| {
                let slope = (v[1].value() - v[0].value()) / (x[1].value() - x[0].value());
                Segment {
                    from: x[0],
                    to: x[1],
                    slope,
                    intercept: v[0].value() - slope * x[0].value(),
                }
            })
            .collect();
        CoefficientProfile { segments }
    }
}

/// `q · f`.
pub fn pwl_scalar(q: Rat01, f: &PwlFn) -> PwlFn {
    f.map(|v| q.mul(v))
}

/// Every segment has integer slope and integer intercept.
pub fn mcnaughton_flag(f: &PwlFn) -> bool {
    f.profile().is_integral()
}

/// Evaluation of one-variable terms as functions of `x`.
#[derive(Clone, Copy, Debug)]
pub struct PwlContext {
    pub scalars: bool,
}

impl EvalContext for PwlContext {
    type Value = PwlFn;

    fn name(&self) -> &'static str {
        if self.scalars {
            "free Riesz"
        } else {
            "free MV"
        }
    }

    fn constant(&self, q: Rat01) -> Result<PwlFn> {
        if q.is_zero() || q.is_one() || self.scalars {
            Ok(PwlFn::constant(q))
        } else {
            Err(self.unsupported("rational constant"))
        }
    }

    fn neg(&self, x: &PwlFn) -> PwlFn {
        x.neg()
    }

    fn oplus(&self, x: &PwlFn, y: &PwlFn) -> PwlFn {
        x.oplus(y)
    }

    fn odot(&self, x: &PwlFn, y: &PwlFn) -> PwlFn {
        x.odot(y)
    }

    fn meet(&self, x: &PwlFn, y: &PwlFn) -> PwlFn {
        x.meet(y)
    }

    fn join(&self, x: &PwlFn, y: &PwlFn) -> PwlFn {
        x.join(y)
    }

    fn scalar(&self, q: Rat01, x: &PwlFn) -> Result<PwlFn> {
        if !self.scalars {
            return Err(self.unsupported("*"));
        }
        Ok(pwl_scalar(q, x))
    }
}

/// The function of a one-variable term; the variable may have any name.
pub fn pwl_of(t: &Term, scalars: bool) -> Result<PwlFn> {
    let env: BTreeMap<String, PwlFn> = t
        .variables()
        .into_iter()
        .map(|v| (v, PwlFn::identity()))
        .collect();
    if env.len() > 1 {
        return Err(Error::UnsupportedConnective {
            context: "one-variable",
            connective: "second variable",
        });
    }
    eval(t, &env, &PwlContext { scalars })
}

/// An MV-combination of generators `q ⊗ m` with `m` scalar free.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decomposition {
    Generator(Rat01, Term),
    Neg(Box<Decomposition>),
    Oplus(Box<Decomposition>, Box<Decomposition>),
    Odot(Box<Decomposition>, Box<Decomposition>),
    Meet(Box<Decomposition>, Box<Decomposition>),
    Join(Box<Decomposition>, Box<Decomposition>),
}

impl Decomposition {
    fn b(self) -> Box<Self> {
        Box::new(self)
    }

    pub fn generators(&self) -> Vec<(Rat01, &Term)> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<(Rat01, &'a Term)>) {
        match self {
            Decomposition::Generator(q, m) => out.push((*q, m)),
            Decomposition::Neg(d) => d.collect(out),
            Decomposition::Oplus(a, b)
            | Decomposition::Odot(a, b)
            | Decomposition::Meet(a, b)
            | Decomposition::Join(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// Evaluates the combination with plain MV operations on functions.
    pub fn value(&self) -> Result<PwlFn> {
        Ok(match self {
            Decomposition::Generator(q, m) => pwl_scalar(*q, &pwl_of(m, false)?),
            Decomposition::Neg(d) => d.value()?.neg(),
            Decomposition::Oplus(a, b) => a.value()?.oplus(&b.value()?),
            Decomposition::Odot(a, b) => a.value()?.odot(&b.value()?),
            Decomposition::Meet(a, b) => a.value()?.meet(&b.value()?),
            Decomposition::Join(a, b) => a.value()?.join(&b.value()?),
        })
    }
}

impl core::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Decomposition::Generator(q, m) => write!(f, "[{q} ⊗ {m}]"),
            Decomposition::Neg(d) => write!(f, "neg({d})"),
            Decomposition::Oplus(a, b) => write!(f, "({a} (+) {b})"),
            Decomposition::Odot(a, b) => write!(f, "({a} (.) {b})"),
            Decomposition::Meet(a, b) => write!(f, "({a} /\\ {b})"),
            Decomposition::Join(a, b) => write!(f, "({a} \\/ {b})"),
        }
    }
}

/// Rewrites `q · t` so that scalars only sit on scalar-free subterms, using
/// `q(a ⊕ b) = (qa ⊕ qb) ∧ q1`, `q(a ⊙ b) = qa ⊙ (¬(q1) ⊕ qb)`,
/// `q¬a = q1 ⊙ ¬(qa)`, and that positive scalars commute with ∧, ∨ and
/// compose multiplicatively.
pub fn decompose(t: &Term) -> Result<Decomposition> {
    scaled(Rat01::ONE, t)
}

fn scaled(q: Rat01, t: &Term) -> Result<Decomposition> {
    use Decomposition as D;
    if pure_mv(t) {
        return Ok(D::Generator(q, t.clone()));
    }
    let q1 = || D::Generator(q, Term::Const(Rat01::ONE));
    Ok(match t {
        Term::Const(c) => D::Generator(q.mul(*c), Term::Const(Rat01::ONE)),
        Term::Scalar(p, s) => scaled(q.mul(*p), s)?,
        Term::Neg(s) => D::Odot(q1().b(), D::Neg(scaled(q, s)?.b()).b()),
        Term::Oplus(a, b) => D::Meet(D::Oplus(scaled(q, a)?.b(), scaled(q, b)?.b()).b(), q1().b()),
        Term::Odot(a, b) => D::Odot(
            scaled(q, a)?.b(),
            D::Oplus(D::Neg(q1().b()).b(), scaled(q, b)?.b()).b(),
        ),
        Term::Meet(a, b) => D::Meet(scaled(q, a)?.b(), scaled(q, b)?.b()),
        Term::Join(a, b) => D::Join(scaled(q, a)?.b(), scaled(q, b)?.b()),
        Term::Var(_) | Term::Gen(..) | Term::Prod(..) => {
            return Err(Error::DecompositionNotFound(format!(
                "cannot decompose `{t}`"
            )))
        }
    })
}

/// Only MV connectives, variables and the constants 0 and 1.
fn pure_mv(t: &Term) -> bool {
    match t {
        Term::Prod(..) | Term::Gen(..) | Term::Scalar(..) => false,
        Term::Var(_) => true,
        Term::Const(c) => c.is_zero() || c.is_one(),
        Term::Neg(s) => pure_mv(s),
        Term::Oplus(a, b) | Term::Odot(a, b) | Term::Meet(a, b) | Term::Join(a, b) => {
            pure_mv(a) && pure_mv(b)
        }
    }
}

/// Outcome for one term.
#[derive(Clone, Debug)]
pub struct FreeWitness {
    pub term: String,
    pub function: PwlFn,
    pub decomposition: String,
    /// `(scalar, scalar-free term, its McNaughton flag)` per generator.
    pub generators: Vec<(Rat01, String, bool)>,
    pub equal: bool,
    /// Set for scalar-free terms: the function itself is McNaughton.
    pub scalar_free_flag: Option<bool>,
}

impl FreeWitness {
    pub fn passed(&self) -> bool {
        self.equal && self.generators.iter().all(|g| g.2) && self.scalar_free_flag != Some(false)
    }
}

/// For each Riesz term: its function, a decomposition into an
/// MV-combination of `q ⊗ m` with McNaughton `m`, and the pointwise
/// comparison of both.
pub fn free_iso_witness(terms: &[Term]) -> Result<Vec<FreeWitness>> {
    terms
        .iter()
        .map(|t| {
            let function = pwl_of(t, true)?;
            let d = decompose(t)?;
            let value = d.value()?;
            let generators = d
                .generators()
                .into_iter()
                .map(|(q, m)| Ok((q, m.to_string(), mcnaughton_flag(&pwl_of(m, false)?))))
                .collect::<Result<Vec<_>>>()?;
            Ok(FreeWitness {
                term: t.to_string(),
                equal: value == function,
                decomposition: d.to_string(),
                generators,
                scalar_free_flag: (!t.has_scalars()).then(|| mcnaughton_flag(&function)),
                function,
            })
        })
        .collect()
}
