//! Closure of a function algebra under the pointwise product.

use alloc::format;

use rand::Rng;

use crate::error::{Error, Result};
use crate::mv::{FnAlgebra, FnElement, FnKind};
use crate::sampling::{self, sample_element};

/// Outcome of a passing product-closure check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmvReport {
    pub exhaustive: bool,
    /// Pairs whose product was tested.
    pub pairs: usize,
}

/// Checks that `A` is closed under the pointwise product, hence a PMV-algebra
/// with `x·y` as its product. Extensional algebras are checked on every pair
/// in canonical order and the first failing pair is reported; intensional ones
/// by value-set analysis followed by `samples` seeded pairs. Associativity,
/// commutativity and the unit are checked on the same pairs.
pub fn pmv_check(a: &FnAlgebra, samples: usize, seed: u64) -> Result<PmvReport> {
    let one = a.one_element();
    let check = |x: &FnElement, y: &FnElement| -> Result<()> {
        let p = x.mul(y);
        if !a.contains(&p) {
            return Err(Error::NotProductClosed(format!("{x}"), format!("{y}")));
        }
        if p != y.mul(x) || x.mul(&one) != *x {
            return Err(Error::NotProductClosed(format!("{x}"), format!("{y}")));
        }
        Ok(())
    };
    match a.kind() {
        FnKind::Extensional(_) => {
            let elems = a.elements()?;
            for x in elems {
                for y in elems {
                    check(x, y)?;
                }
            }
            for x in elems {
                for y in elems {
                    for z in elems {
                        if x.mul(y).mul(z) != x.mul(&y.mul(z)) {
                            return Err(Error::NotProductClosed(format!("{x}"), format!("{y}")));
                        }
                    }
                }
            }
            Ok(PmvReport {
                exhaustive: true,
                pairs: elems.len() * elems.len(),
            })
        }
        FnKind::Intensional(i) => {
            let m = &i.membership;
            for (class, vs) in m.classes.iter().zip(&m.values) {
                if !vs.is_product_closed() {
                    let v = vs
                        .least_positive()
                        .expect("non-closed sets have a least member");
                    let mut w = FnElement::zero(a.points());
                    for &p in class {
                        w.0[p] = v;
                    }
                    return Err(Error::NotProductClosed(format!("{w}"), format!("{w}")));
                }
            }
            let mut rng = sampling::rng(seed);
            for _ in 0..samples {
                let x = sample_element(&mut rng, a);
                let y = sample_element(&mut rng, a);
                check(&x, &y)?;
                if rng.random_bool(0.5) {
                    let z = sample_element(&mut rng, a);
                    if x.mul(&y).mul(&z) != x.mul(&y.mul(&z)) {
                        return Err(Error::NotProductClosed(format!("{x}"), format!("{y}")));
                    }
                }
            }
            Ok(PmvReport {
                exhaustive: false,
                pairs: samples,
            })
        }
    }
}
