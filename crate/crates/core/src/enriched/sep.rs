//! The scalar action of a PMV-algebra `A` on `A ⊗ B`:
//! `Ω_α(t)(x,y) = α(x)·t(x,y)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::enriched::foperator::f_operator_check;
use crate::enriched::interp::GenContext;
use crate::enriched::pmv::pmv_check;
use crate::error::{Error, Result};
use crate::mv::{FnElement, Homomorphism};
use crate::sampling::{self, sample_element};
use crate::tensor::{universal_factorization, Bimorphism, TensorAlgebra};
use crate::term::{eval, random_term, TermShape};

/// Outcome of a passing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepReport {
    pub exhaustive: bool,
    /// Scalars `α` for which `Ω_α` was examined.
    pub scalars: usize,
    /// Tensor elements examined per scalar (all of them when exhaustive).
    pub elements: usize,
    /// Individual identities verified.
    pub checks: usize,
}

/// `Ω_α(t)`, checked to stay inside the tensor.
pub fn sep_omega(t: &TensorAlgebra, alpha: &FnElement, e: &FnElement) -> Result<FnElement> {
    let m = FnElement::outer(alpha, &t.right.one_element());
    let out = e.mul(&m);
    if !t.algebra.contains(&out) {
        return Err(Error::SepClosureFailed(format!("Ω_{alpha}({e}) = {out}")));
    }
    Ok(out)
}

/// Verifies that `Ω` is a well-defined action of `A` on `A ⊗ B` by
/// f-operators: each `Ω_α` maps the tensor into itself, agrees with the
/// homomorphism obtained from the bimorphism `(a,b) ↦ γ(α·a, b)` by the
/// universal property, is an f-operator, and the family satisfies
/// `Ω_{αβ} = Ω_α Ω_β`, `Ω_1 = id` and additivity in both arguments.
///
/// Extensional tensors are checked exhaustively; intensional ones on
/// `samples` seeded terms over random generator pools.
pub fn sep_action(
    t: &TensorAlgebra,
    samples: usize,
    seed: u64,
    budget: usize,
) -> Result<SepReport> {
    pmv_check(&t.left, samples, seed)?;
    if t.algebra.is_extensional() {
        exhaustive(t, budget)
    } else {
        sampled(t, samples, seed)
    }
}

fn exhaustive(t: &TensorAlgebra, budget: usize) -> Result<SepReport> {
    let a = &t.left;
    let (ta, tb, tt) = (a.table()?, t.right.table()?, t.table()?);
    let ea = a.elements()?;
    let et = t.algebra.elements()?;
    let nb = tb.size();
    let mut omega: Vec<Vec<usize>> = Vec::with_capacity(ea.len());
    let mut checks = 0;
    for alpha in ea {
        let m = FnElement::outer(alpha, &t.right.one_element());
        let pointwise = et
            .iter()
            .map(|e| {
                t.algebra.index_of(&e.mul(&m)).ok_or_else(|| {
                    Error::SepClosureFailed(format!("Ω_{alpha}({e}) leaves the tensor"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let table = (0..ea.len() * nb)
            .map(|k| {
                let scaled = a
                    .index_of(&alpha.mul(&ea[k / nb]))
                    .expect("A is product-closed");
                t.gamma_index(scaled, k % nb)
            })
            .collect();
        let beta = Bimorphism {
            left: ta,
            right: tb,
            target: tt,
            table,
        };
        let f = universal_factorization(t, &beta, false, budget)?;
        if f.omega_in_target != pointwise {
            return Err(Error::FactorizationInconsistent(format!(
                "Ω_{alpha} differs from the map induced by (a,b) ↦ γ({alpha}·a, b)"
            )));
        }
        let r = f_operator_check(et, &|e| e.mul(&m));
        if !r.ok {
            return Err(Error::FactorizationInconsistent(format!(
                "Ω_{alpha} is not an f-operator: {}",
                r.witness.unwrap_or_default()
            )));
        }
        checks += et.len() + r.pairs;
        omega.push(pointwise);
    }
    let one = ta.one();
    let id = Homomorphism::identity(tt.size());
    if omega[one] != id.map {
        return Err(Error::FactorizationInconsistent(
            "Ω_1 is not the identity".into(),
        ));
    }
    for (i, alpha) in ea.iter().enumerate() {
        for (j, beta) in ea.iter().enumerate() {
            let ab = a.index_of(&alpha.mul(beta)).expect("A is product-closed");
            let sum = ta.leq(i, ta.neg(j)).then(|| ta.oplus(i, j));
            for x in 0..tt.size() {
                checks += 1;
                if omega[ab][x] != omega[i][omega[j][x]] {
                    return Err(Error::FactorizationInconsistent(format!(
                        "Ω_({alpha}·{beta}) ≠ Ω_{alpha} Ω_{beta} at {}",
                        et[x]
                    )));
                }
                if let Some(s) = sum {
                    if omega[s][x] != tt.oplus(omega[i][x], omega[j][x]) {
                        return Err(Error::FactorizationInconsistent(format!(
                            "Ω_({alpha}+{beta}) ≠ Ω_{alpha} + Ω_{beta} at {}",
                            et[x]
                        )));
                    }
                }
            }
        }
    }
    Ok(SepReport {
        exhaustive: true,
        scalars: ea.len(),
        elements: et.len(),
        checks,
    })
}

const POOL: usize = 3;
const DEPTH: usize = 3;
const F_OPERATOR_SET: usize = 24;

fn sampled(t: &TensorAlgebra, samples: usize, seed: u64) -> Result<SepReport> {
    let a = &t.left;
    let one_b = t.right.one_element();
    let mut rng = sampling::rng(seed);
    let shape = TermShape {
        generators: Some((POOL, POOL)),
        constants: true,
        lattice: true,
        ..TermShape::default()
    };
    let mut kept: Vec<FnElement> = Vec::new();
    let mut checks = 0;
    for _ in 0..samples {
        let alpha = sample_element(&mut rng, a);
        let beta = sample_element(&mut rng, a);
        let left: Vec<FnElement> = (0..POOL).map(|_| sample_element(&mut rng, a)).collect();
        let right: Vec<FnElement> = (0..POOL)
            .map(|_| sample_element(&mut rng, &t.right))
            .collect();
        let term = random_term(&mut rng, DEPTH, &shape);

        let plain = |i: usize, j: usize| Ok(FnElement::outer(&left[i], &right[j]));
        let ctx = GenContext {
            top: t.algebra.one_element(),
            gen: &plain,
            scalars: false,
            products: false,
        };
        let value = eval(&term, &BTreeMap::new(), &ctx)?;
        if !t.algebra.contains(&value) {
            return Err(Error::SepClosureFailed(format!(
                "{term} evaluates outside the tensor"
            )));
        }
        let pointwise = sep_omega(t, &alpha, &value)?;

        let scaled = |i: usize, j: usize| Ok(FnElement::outer(&alpha.mul(&left[i]), &right[j]));
        let routed_ctx = GenContext {
            top: FnElement::outer(&alpha, &one_b),
            gen: &scaled,
            scalars: false,
            products: false,
        };
        let routed = eval(&term, &BTreeMap::new(), &routed_ctx)?;
        if routed != pointwise {
            return Err(Error::FactorizationInconsistent(format!(
                "Ω_{alpha}({term}) = {pointwise} but the induced map gives {routed}"
            )));
        }
        let composed = sep_omega(t, &alpha, &sep_omega(t, &beta, &value)?)?;
        if sep_omega(t, &alpha.mul(&beta), &value)? != composed {
            return Err(Error::FactorizationInconsistent(format!(
                "Ω_({alpha}·{beta}) ≠ Ω_{alpha} Ω_{beta} at {value}"
            )));
        }
        if sep_omega(t, &a.one_element(), &value)? != value {
            return Err(Error::FactorizationInconsistent(
                "Ω_1 is not the identity".into(),
            ));
        }
        checks += 4;
        if kept.len() < F_OPERATOR_SET {
            kept.push(value);
        }
    }
    for _ in 0..4 {
        let alpha = sample_element(&mut rng, a);
        let m = FnElement::outer(&alpha, &one_b);
        let r = f_operator_check(&kept, &|e| e.mul(&m));
        if !r.ok {
            return Err(Error::FactorizationInconsistent(format!(
                "Ω_{alpha} is not an f-operator: {}",
                r.witness.unwrap_or_default()
            )));
        }
        checks += r.pairs;
    }
    Ok(SepReport {
        exhaustive: false,
        scalars: samples,
        elements: samples,
        checks,
    })
}
