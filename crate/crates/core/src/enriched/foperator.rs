//! f-operators: linear maps `θ` with `θ(f) ≤ f` that preserve disjointness and
//! are homomorphisms onto `[0, θ(1)]`.

use alloc::format;
use alloc::string::String;

use crate::mv::FnElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FOperatorReport {
    pub ok: bool,
    /// The first failed condition, with the elements involved.
    pub witness: Option<String>,
    pub pairs: usize,
}

/// Checks the f-operator conditions for `theta` on `elements` (and on the
/// sums and negations formed from them).
pub fn f_operator_check(
    elements: &[FnElement],
    theta: &dyn Fn(&FnElement) -> FnElement,
) -> FOperatorReport {
    let fail = |w: String, pairs: usize| FOperatorReport {
        ok: false,
        witness: Some(w),
        pairs,
    };
    let Some(first) = elements.first() else {
        return FOperatorReport {
            ok: true,
            witness: None,
            pairs: 0,
        };
    };
    let top = theta(&FnElement::one(first.len()));
    for x in elements {
        let tx = theta(x);
        if !tx.leq(x) {
            return fail(format!("θ{x} = {tx} is not below {x}"), 0);
        }
        let lhs = theta(&x.neg());
        let rhs = tx.neg().odot(&top);
        if lhs != rhs {
            return fail(format!("θ(¬{x}) = {lhs}, expected {rhs}"), 0);
        }
    }
    let mut pairs = 0;
    for x in elements {
        let tx = theta(x);
        for y in elements {
            pairs += 1;
            let ty = theta(y);
            if x.meet(y).is_zero() && !tx.meet(y).is_zero() {
                return fail(
                    format!("{x} and {y} are disjoint but θ{x} ∧ {y} ≠ 0"),
                    pairs,
                );
            }
            if x.leq(&y.neg()) {
                if !tx.leq(&ty.neg()) {
                    return fail(format!("θ{x} + θ{y} is undefined"), pairs);
                }
                let s = theta(&x.oplus(y));
                if s != tx.oplus(&ty) {
                    return fail(format!("θ({x} + {y}) = {s}, not θ{x} + θ{y}"), pairs);
                }
            }
            let s = theta(&x.oplus(y));
            let rhs = tx.oplus(&ty).meet(&top);
            if s != rhs {
                return fail(format!("θ({x} ⊕ {y}) = {s}, expected {rhs}"), pairs);
            }
        }
    }
    FOperatorReport {
        ok: true,
        witness: None,
        pairs,
    }
}
