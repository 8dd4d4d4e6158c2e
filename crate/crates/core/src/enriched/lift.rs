//! Lifting homomorphisms along the scalar extension `B ↦ [0,1] ⊗ B`.
//!
//! Elements of the extension are named by terms over generators
//! `gen(i,j) = α_i ⊗ b_j` drawn from a scalar pool and an element pool. A
//! homomorphism `f: B → V` between function algebras is composition with a
//! point map `σ: Z_V → Z_B`, and its lift is computed two ways: by
//! interpreting the term in `V` with `gen(i,j) ↦ α_i·f(b_j)`, and by
//! evaluating the term in the extension of `B` and then composing with `σ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::enriched::hull::ScalarSet;
use crate::enriched::interp::GenContext;
use crate::enriched::pmv::pmv_check;
use crate::error::{Error, Result};
use crate::mv::{FnAlgebra, FnElement, FnKind, Membership};
use crate::rational::Rat01;
use crate::sampling::{self, sample_element};
use crate::tensor::{finite_membership, tensor_ss};
use crate::term::{eval, random_term, Term, TermShape};

/// `f(b) = b ∘ σ`, with `sigma[z]` the source point read at target point `z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointMap {
    pub sigma: Vec<usize>,
}

impl PointMap {
    pub fn apply(&self, b: &FnElement) -> FnElement {
        FnElement(self.sigma.iter().map(|&p| b.0[p]).collect())
    }

    /// `g ∘ self`, for `self: B₁ → B₂` and `g: B₂ → B₃`.
    pub fn then(&self, g: &PointMap) -> PointMap {
        PointMap {
            sigma: g.sigma.iter().map(|&z| self.sigma[z]).collect(),
        }
    }

    /// Whether `b ↦ b ∘ σ` maps `source` into `target`.
    pub fn is_valid(&self, source: &FnAlgebra, target: &FnAlgebra) -> Result<bool> {
        if self.sigma.len() != target.points() || self.sigma.iter().any(|&p| p >= source.points()) {
            return Ok(false);
        }
        if source.is_extensional() {
            return Ok(source
                .elements()?
                .iter()
                .all(|b| target.contains(&self.apply(b))));
        }
        let (FnKind::Intensional(s), Some(t)) = (source.kind(), membership(target)?) else {
            return Ok(false);
        };
        let class_of = |p: usize| {
            s.membership
                .classes
                .iter()
                .position(|c| c.contains(&p))
                .expect("classes partition the carrier")
        };
        Ok(t.classes.iter().zip(&t.values).all(|(k, vt)| {
            let l = class_of(self.sigma[k[0]]);
            k.iter().all(|&z| class_of(self.sigma[z]) == l) && s.membership.values[l].is_subset(vt)
        }))
    }
}

fn membership(a: &FnAlgebra) -> Result<Option<Membership>> {
    Ok(match a.kind() {
        FnKind::Intensional(i) => Some(i.membership.clone()),
        FnKind::Extensional(_) => Some(finite_membership(a)?),
    })
}

/// Every homomorphism from `B` into `V` given by a point map. When `B` is
/// finite these are all of them: a homomorphism into a function algebra is a
/// family of evaluations, and the evaluations of a finite semisimple `B` are
/// its inseparability classes, so `σ` ranges over maps into class
/// representatives. For intensional `B` the membership classes are used.
pub fn enumerate_point_homs(b: &FnAlgebra, v: &FnAlgebra, budget: usize) -> Result<Vec<PointMap>> {
    let classes = match b.kind() {
        FnKind::Extensional(_) => b.inseparability_classes()?,
        FnKind::Intensional(i) => i.membership.classes.clone(),
    };
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let n = v.points();
    let total = (reps.len() as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded(budget));
    }
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let sigma = (0..n)
            .map(|_| {
                let r = reps[(c % reps.len() as u128) as usize];
                c /= reps.len() as u128;
                r
            })
            .collect();
        let f = PointMap { sigma };
        if f.is_valid(b, v)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Generator pools: `gen(i,j)` stands for `scalars[i] ⊗ elements[j]`.
#[derive(Clone, Debug)]
pub struct Pools {
    /// `scalars[0] = 1`.
    pub scalars: Vec<Rat01>,
    pub elements: Vec<FnElement>,
}

impl Pools {
    /// The scalar pool of `scalars`, and every element of a finite source or
    /// `0`, `1` and four samples of an intensional one.
    pub fn for_source<R: Rng + ?Sized>(
        source: &FnAlgebra,
        scalars: ScalarSet,
        rng: &mut R,
    ) -> Self {
        let elements = match source.elements() {
            Ok(e) => e.to_vec(),
            Err(_) => {
                let mut e = Vec::from([source.zero_element(), source.one_element()]);
                e.extend((0..4).map(|_| sample_element(rng, source)));
                e
            }
        };
        Pools {
            scalars: scalars.pool(),
            elements,
        }
    }

    fn shape(&self, products: bool) -> TermShape {
        TermShape {
            generators: Some((self.scalars.len(), self.elements.len())),
            constants: true,
            lattice: true,
            scalars: Some(self.scalars.clone()),
            products,
            ..TermShape::default()
        }
    }
}

/// A homomorphism to lift and the signature it must respect.
#[derive(Clone, Copy, Debug)]
pub struct LiftSetting<'a> {
    pub source: &'a FnAlgebra,
    pub target: &'a FnAlgebra,
    pub map: &'a PointMap,
    pub scalars: ScalarSet,
    /// Lift as f-MV rather than Riesz MV homomorphism.
    pub products: bool,
}

impl LiftSetting<'_> {
    /// `f̃(t)` with `gen(i,j) ↦ α_i·f(b_j)`.
    pub fn lift(&self, pools: &Pools, t: &Term) -> Result<FnElement> {
        let gen =
            |i: usize, j: usize| Ok(self.map.apply(&pools.elements[j]).scale(pools.scalars[i]));
        self.interpret(self.target.one_element(), &gen, t)
    }

    /// The element of the extension of the source named by `t`.
    pub fn value(&self, pools: &Pools, t: &Term) -> Result<FnElement> {
        let gen = |i: usize, j: usize| Ok(pools.elements[j].scale(pools.scalars[i]));
        self.interpret(self.source.one_element(), &gen, t)
    }

    fn interpret(
        &self,
        top: FnElement,
        gen: &dyn Fn(usize, usize) -> Result<FnElement>,
        t: &Term,
    ) -> Result<FnElement> {
        let ctx = GenContext {
            top,
            gen,
            scalars: true,
            products: self.products,
        };
        eval(t, &BTreeMap::new(), &ctx)
    }

    /// The scalar extension of the source as a function algebra.
    pub fn extension(&self) -> Result<FnAlgebra> {
        let scalars = FnAlgebra::intensional(
            Vec::from(["s".into()]),
            Membership::pointwise(1, self.scalars.value_set()),
            Vec::new(),
        )?;
        Ok(tensor_ss(&scalars, self.source, usize::MAX)?.algebra)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    /// Pairs checked for `f̃ ∘ ι = f`.
    pub triangle: usize,
    /// Sampled terms on which both routes agreed.
    pub terms: usize,
    /// Distinct elements of the extension among the sampled terms.
    pub distinct_values: usize,
}

const DEPTH: usize = 3;

fn inconsistent(msg: alloc::string::String) -> Error {
    Error::LiftInconsistent(msg)
}

/// Checks the lift of `setting.map`: it is defined on the extension (equal
/// values have equal images), agrees with `f` on `1 ⊗ b`, lands in the
/// target, preserves `⊕`, `¬`, scalars (and products when asked), and the two
/// routes agree on every sampled term.
pub fn check_lift(setting: &LiftSetting<'_>, samples: usize, seed: u64) -> Result<LiftReport> {
    if !setting.map.is_valid(setting.source, setting.target)? {
        return Err(inconsistent(
            "the point map is not a homomorphism into the target".into(),
        ));
    }
    let mut rng = sampling::rng(seed);
    let pools = Pools::for_source(setting.source, setting.scalars, &mut rng);
    let extension = setting.extension()?;
    for (j, b) in pools.elements.iter().enumerate() {
        let got = setting.lift(&pools, &Term::Gen(0, j))?;
        if got != setting.map.apply(b) {
            return Err(inconsistent(format!(
                "f̃(1⊗{b}) = {got}, f({b}) = {}",
                setting.map.apply(b)
            )));
        }
    }
    let shape = pools.shape(setting.products);
    let mut images: BTreeMap<FnElement, FnElement> = BTreeMap::new();
    let mut previous = Term::Gen(0, 0);
    for _ in 0..samples {
        let t = random_term(&mut rng, DEPTH, &shape);
        let image = setting.lift(&pools, &t)?;
        let value = setting.value(&pools, &t)?;
        if !extension.contains(&value) {
            return Err(inconsistent(format!(
                "{t} names {value}, outside the extension"
            )));
        }
        if !setting.target.contains(&image) {
            return Err(inconsistent(format!(
                "f̃({t}) = {image} is outside the target"
            )));
        }
        let routed = setting.map.apply(&value);
        if routed != image {
            return Err(inconsistent(format!(
                "f̃({t}) = {image} but f applied to {value} is {routed}"
            )));
        }
        if let Some(prev) = images.insert(value.clone(), image.clone()) {
            if prev != image {
                return Err(inconsistent(format!(
                    "{value} has images {prev} and {image}"
                )));
            }
        }
        let s_image = setting.map.apply(&setting.value(&pools, &previous)?);
        let q = pools.scalars[rng.random_range(0..pools.scalars.len())];
        let mut laws = Vec::from([
            (
                Term::oplus(t.clone(), previous.clone()),
                image.oplus(&s_image),
            ),
            (Term::neg(t.clone()), image.neg()),
            (
                Term::Scalar(q, alloc::boxed::Box::new(t.clone())),
                image.scale(q),
            ),
        ]);
        if setting.products {
            laws.push((
                Term::Prod(
                    alloc::boxed::Box::new(t.clone()),
                    alloc::boxed::Box::new(previous.clone()),
                ),
                image.mul(&s_image),
            ));
        }
        for (composite, expected) in laws {
            let got = setting.lift(&pools, &composite)?;
            if got != expected {
                return Err(inconsistent(format!(
                    "f̃({composite}) = {got}, expected {expected}"
                )));
            }
        }
        previous = t;
    }
    Ok(LiftReport {
        triangle: pools.elements.len(),
        terms: samples,
        distinct_values: images.len(),
    })
}

/// The lift of `f: B → V` to a Riesz MV homomorphism on `[0,1] ⊗ B`.
pub fn adjunction_lift_riesz(
    b: &FnAlgebra,
    v: &FnAlgebra,
    f: &PointMap,
    scalars: ScalarSet,
    samples: usize,
    seed: u64,
) -> Result<LiftReport> {
    if !b.is_extensional() {
        return Err(Error::IntensionalNotMaterializable);
    }
    check_lift(
        &LiftSetting {
            source: b,
            target: v,
            map: f,
            scalars,
            products: false,
        },
        samples,
        seed,
    )
}

/// The lift of a PMV homomorphism `f: P → M` to an f-MV homomorphism on
/// `[0,1] ⊗ P`.
pub fn adjunction_lift_fmv(
    p: &FnAlgebra,
    m: &FnAlgebra,
    f: &PointMap,
    scalars: ScalarSet,
    samples: usize,
    seed: u64,
) -> Result<LiftReport> {
    pmv_check(p, samples, seed)?;
    check_lift(
        &LiftSetting {
            source: p,
            target: m,
            map: f,
            scalars,
            products: true,
        },
        samples,
        seed,
    )
}

/// An element `b_j` of the finite `B` on which the lifts of `f` and `g`
/// differ, i.e. `f̃(1⊗b_j) ≠ g̃(1⊗b_j)`.
pub fn distinguishing_generator(
    b: &FnAlgebra,
    v: &FnAlgebra,
    f: &PointMap,
    g: &PointMap,
    scalars: ScalarSet,
) -> Result<Option<usize>> {
    let pools = Pools {
        scalars: scalars.pool(),
        elements: b.elements()?.to_vec(),
    };
    let setting = |map| LiftSetting {
        source: b,
        target: v,
        map,
        scalars,
        products: false,
    };
    for j in 0..pools.elements.len() {
        let t = Term::Gen(0, j);
        if setting(f).lift(&pools, &t)? != setting(g).lift(&pools, &t)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// `(g∘h)^♯ = g^♯ ∘ h^♯` on sampled terms, for `h: P₁ → P₂`, `g: P₂ → P₃`.
/// `h^♯` acts on terms by `α ⊗ b ↦ α ⊗ h(b)`; the right side is evaluated
/// both as `g^♯` of that term and as `g` applied to the value of `h^♯(t)`.
#[allow(clippy::too_many_arguments)]
pub fn functor_law(
    chain: [&FnAlgebra; 3],
    h: &PointMap,
    g: &PointMap,
    scalars: ScalarSet,
    products: bool,
    samples: usize,
    seed: u64,
) -> Result<usize> {
    let [p1, p2, p3] = chain;
    for (map, s, t) in [(h, p1, p2), (g, p2, p3)] {
        if !map.is_valid(s, t)? {
            return Err(inconsistent(
                "a map in the chain is not a homomorphism".into(),
            ));
        }
    }
    let gh = h.then(g);
    let mut rng = sampling::rng(seed);
    let pools1 = Pools::for_source(p1, scalars, &mut rng);
    let pools2 = Pools {
        scalars: pools1.scalars.clone(),
        elements: pools1.elements.iter().map(|b| h.apply(b)).collect(),
    };
    let setting = |source, target, map| LiftSetting {
        source,
        target,
        map,
        scalars,
        products,
    };
    let composite = setting(p1, p3, &gh);
    let first = setting(p1, p2, h);
    let second = setting(p2, p3, g);
    let shape = pools1.shape(products);
    for _ in 0..samples {
        let t = random_term(&mut rng, DEPTH, &shape);
        let lhs = composite.lift(&pools1, &t)?;
        let via_terms = second.lift(&pools2, &t)?;
        let via_values = g.apply(&first.lift(&pools1, &t)?);
        if lhs != via_terms || lhs != via_values {
            return Err(inconsistent(format!(
                "(g∘h)^♯({t}) = {lhs}, g^♯(h^♯({t})) = {via_terms} / {via_values}"
            )));
        }
    }
    Ok(samples)
}
