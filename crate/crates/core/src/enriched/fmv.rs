//! f-MV-algebras: PMV-algebras with a compatible scalar action.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::enriched::hull::ScalarSet;
use crate::mv::{FnAlgebra, FnElement, FnKind};
use crate::rational::Rat01;
use crate::sampling::{self, sample_element};

/// `(α, x) ↦ α⋆x`; the pointwise product when not given.
pub type ScalarAction<'a> = &'a dyn Fn(Rat01, &FnElement) -> FnElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FmvReport {
    pub ok: bool,
    pub witness: Option<String>,
    pub exhaustive: bool,
    /// Tuples `(α, β, x, y, z)` examined.
    pub tuples: usize,
}

fn violation(
    a: &FnAlgebra,
    act: ScalarAction<'_>,
    (al, be): (Rat01, Rat01),
    x: &FnElement,
    y: &FnElement,
    z: &FnElement,
) -> Option<String> {
    let xy = x.mul(y);
    let ax = act(al, x);
    if !a.contains(&xy) {
        return Some(format!("{x}·{y} = {xy} is not in the algebra"));
    }
    if !a.contains(&ax) {
        return Some(format!("{al}⋆{x} = {ax} is not in the algebra"));
    }
    let lhs = act(al, &xy);
    if lhs != ax.mul(y) || lhs != x.mul(&act(al, y)) {
        return Some(format!(
            "{al}⋆({x}·{y}) = {lhs}, ({al}⋆{x})·{y} = {}",
            ax.mul(y)
        ));
    }
    if act(al.mul(be), x) != act(al, &act(be, x)) {
        return Some(format!("({al}·{be})⋆{x} ≠ {al}⋆({be}⋆{x})"));
    }
    if act(Rat01::ONE, x) != *x {
        return Some(format!("1⋆{x} ≠ {x}"));
    }
    if x.mul(&a.one_element()) != *x || xy != y.mul(x) || xy.mul(z) != x.mul(&y.mul(z)) {
        return Some(format!("product axioms fail on {x}, {y}, {z}"));
    }
    if let Ok(s) = al.partial_add(be) {
        let bx = act(be, x);
        if !ax.leq(&bx.neg()) || act(s, x) != ax.oplus(&bx) {
            return Some(format!("({al}+{be})⋆{x} ≠ {al}⋆{x} + {be}⋆{x}"));
        }
    }
    if x.leq(&y.neg()) {
        let s = x.oplus(y);
        if act(al, &s) != ax.oplus(&act(al, y)) {
            return Some(format!("{al}⋆({x}+{y}) ≠ {al}⋆{x} + {al}⋆{y}"));
        }
        if s.mul(z) != x.mul(z).oplus(&y.mul(z)) {
            return Some(format!("({x}+{y})·{z} ≠ {x}·{z} + {y}·{z}"));
        }
    }
    None
}

/// Checks the PMV axioms, the Riesz axioms for `scalars` and the
/// compatibility `α⋆(x·y) = (α⋆x)·y = x·(α⋆y)`. Extensional algebras are
/// checked on all element triples against the fixed scalar pool; intensional
/// ones on `samples` seeded tuples.
pub fn fmv_check(
    a: &FnAlgebra,
    scalars: ScalarSet,
    action: Option<ScalarAction<'_>>,
    samples: usize,
    seed: u64,
) -> FmvReport {
    let pointwise = |q: Rat01, x: &FnElement| x.scale(q);
    let act: ScalarAction<'_> = action.unwrap_or(&pointwise);
    let report = |witness: Option<String>, exhaustive, tuples| FmvReport {
        ok: witness.is_none(),
        witness,
        exhaustive,
        tuples,
    };
    match a.kind() {
        FnKind::Extensional(_) => {
            let elems = a.elements().expect("extensional");
            let pool = scalars.pool();
            let mut tuples = 0;
            for x in elems {
                for y in elems {
                    for z in elems {
                        for &al in &pool {
                            for &be in &pool {
                                tuples += 1;
                                if let Some(w) = violation(a, act, (al, be), x, y, z) {
                                    return report(Some(w), true, tuples);
                                }
                            }
                        }
                    }
                }
            }
            report(None, true, tuples)
        }
        FnKind::Intensional(_) => {
            let mut rng = sampling::rng(seed);
            for k in 0..samples {
                let (al, be) = (scalars.sample(&mut rng), scalars.sample(&mut rng));
                let xs: Vec<FnElement> = (0..3).map(|_| sample_element(&mut rng, a)).collect();
                if let Some(w) = violation(a, act, (al, be), &xs[0], &xs[1], &xs[2]) {
                    return report(Some(w), false, k + 1);
                }
            }
            report(None, false, samples)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::tensor_ss;

    #[test]
    fn dyadic_function_algebra_is_f_mv() {
        let r = fmv_check(&FnAlgebra::dyadic(2), ScalarSet::DYADIC, None, 500, 0);
        assert!(r.ok, "{:?}", r.witness);
        assert_eq!(r.tuples, 500);
    }

    #[test]
    fn tensor_of_dyadic_algebras_is_f_mv() {
        let t = tensor_ss(&FnAlgebra::dyadic(1), &FnAlgebra::dyadic(2), 1000).unwrap();
        let r = fmv_check(&t.algebra, ScalarSet::DYADIC, None, 500, 1);
        assert!(r.ok, "{:?}", r.witness);
    }

    #[test]
    fn twisted_action_is_caught() {
        let twisted = |q: Rat01, x: &FnElement| x.mul(x).scale(q);
        let r = fmv_check(
            &FnAlgebra::dyadic(1),
            ScalarSet::DYADIC,
            Some(&twisted),
            500,
            2,
        );
        assert!(!r.ok);
        assert!(r.witness.is_some());
    }

    #[test]
    fn boolean_algebra_has_no_proper_scalars() {
        let r = fmv_check(&FnAlgebra::boolean(1), ScalarSet::DYADIC, None, 0, 0);
        assert!(!r.ok);
        assert!(r.witness.unwrap().contains("not in the algebra"));
    }
}
