//! The Riesz hull of a finite function algebra: its closure under `⊕`, `¬`
//! and multiplication by scalars.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::mv::{FnAlgebra, FnElement, Membership, ValueSet};
use crate::rational::{lcm, Rat01};
use crate::sampling::{self, sample_element, sample_value};
use crate::tensor::finite_membership;

/// Scalars available to the Riesz structure.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScalarSet {
    /// Every rational in `[0,1]`.
    Rational,
    /// `{ m / N^k }`; `Adic(2)` are the dyadics.
    Adic(i128),
}

impl ScalarSet {
    pub const DYADIC: ScalarSet = ScalarSet::Adic(2);

    pub fn value_set(&self) -> ValueSet {
        self.extend(1)
    }

    /// Values obtained by scaling multiples of `1/d`.
    pub fn extend(&self, d: i128) -> ValueSet {
        match *self {
            ScalarSet::Rational => ValueSet::Rational,
            ScalarSet::Adic(n) => ValueSet::adic(n, d),
        }
    }

    pub fn contains(&self, q: Rat01) -> bool {
        self.value_set().contains(q)
    }

    /// Scalars that generate the rest together with `⊕`.
    pub fn generators(&self) -> Vec<Rat01> {
        let r = |n, d| Rat01::new(n, d).expect("in range");
        match *self {
            ScalarSet::Rational => Vec::from([r(1, 2), r(1, 3), r(1, 5)]),
            ScalarSet::Adic(n) => Vec::from([r(1, n)]),
        }
    }

    /// A small fixed pool, `1` first.
    pub fn pool(&self) -> Vec<Rat01> {
        let r = |n, d| Rat01::new(n, d).expect("in range");
        match *self {
            ScalarSet::Rational => {
                Vec::from([Rat01::ONE, Rat01::ZERO, r(1, 2), r(1, 3), r(2, 5), r(3, 4)])
            }
            ScalarSet::Adic(n) => {
                Vec::from([Rat01::ONE, Rat01::ZERO, r(1, n), r(n - 1, n), r(1, n * n)])
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Rat01 {
        sample_value(rng, self.value_set())
    }
}

impl core::fmt::Display for ScalarSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ScalarSet::Rational => write!(f, "rational"),
            ScalarSet::Adic(2) => write!(f, "dyadic"),
            ScalarSet::Adic(n) => write!(f, "adic:{n}"),
        }
    }
}

impl core::str::FromStr for ScalarSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(ScalarSet::Rational),
            "dyadic" => Ok(ScalarSet::DYADIC),
            _ => s
                .strip_prefix("adic:")
                .and_then(|n| n.parse::<i128>().ok())
                .filter(|&n| n >= 2)
                .map(ScalarSet::Adic)
                .ok_or(Error::Syntax {
                    pos: 0,
                    msg: format!("unknown scalar set `{s}`"),
                }),
        }
    }
}

/// The hull together with the evidence gathered while verifying it.
#[derive(Clone, Debug)]
pub struct Hull {
    pub algebra: FnAlgebra,
    pub scalars: ScalarSet,
    /// Elements produced by explicit generation, all accepted.
    pub generated: usize,
    /// Generation stopped at the cap rather than at a fixpoint.
    pub truncated: bool,
    /// Sampled members rebuilt from `B` by explicit operations.
    pub certificates: usize,
}

/// Elements explored by explicit generation at most.
const GENERATION_CAP: usize = 600;

/// The closure of `B` under the MV operations and scalar multiplication.
/// Membership: constant on each inseparability class of `B`, with value in
/// the scalar extension of that class's denominator.
///
/// Verified in both directions: elements generated from `B` (up to a cap)
/// must be accepted, and `samples` sampled members must be rebuilt as sums of
/// scaled atoms of `B`.
pub fn riesz_hull(
    b: &FnAlgebra,
    scalars: ScalarSet,
    samples: usize,
    seed: u64,
    budget: usize,
) -> Result<Hull> {
    let elems = b
        .elements()
        .map_err(|_| Error::IntensionalNotMaterializable)?;
    let fm = finite_membership(b)?;
    let membership = Membership {
        values: fm
            .values
            .iter()
            .map(|v| match *v {
                ValueSet::Finite { den } => scalars.extend(den),
                other => other,
            })
            .collect(),
        classes: fm.classes.clone(),
    };
    let algebra = FnAlgebra::intensional(b.carrier().to_vec(), membership, elems.to_vec())?;

    let cap = budget.min(GENERATION_CAP);
    let mut seen: BTreeSet<FnElement> = elems.iter().cloned().collect();
    let mut order: Vec<FnElement> = elems.to_vec();
    let gens = scalars.generators();
    let mut i = 0;
    let mut truncated = false;
    'outer: while i < order.len() {
        let x = order[i].clone();
        let mut fresh = Vec::from([x.neg()]);
        fresh.extend(gens.iter().map(|&q| x.scale(q)));
        fresh.extend(order[..=i].iter().map(|y| x.oplus(y)));
        for e in fresh {
            if seen.contains(&e) {
                continue;
            }
            if !algebra.contains(&e) {
                return Err(Error::NotClosed(format!(
                    "generated element {e} rejected by the hull"
                )));
            }
            if order.len() >= cap {
                truncated = true;
                break 'outer;
            }
            seen.insert(e.clone());
            order.push(e);
        }
        i += 1;
    }

    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let e = sample_element(&mut rng, &algebra);
        let rebuilt = certificate(elems, &fm, scalars, &e)?;
        if rebuilt != e {
            return Err(Error::NotClosed(format!(
                "member {e} rebuilt from B as {rebuilt}"
            )));
        }
    }
    Ok(Hull {
        algebra,
        scalars,
        generated: order.len(),
        truncated,
        certificates: samples,
    })
}

/// Rebuilds `e` as `⊕_K m_K · (scalar · atom_K)`, where `atom_K ∈ B` is `1/d_K`
/// on class `K` and `0` elsewhere.
fn certificate(
    elems: &[FnElement],
    fm: &Membership,
    scalars: ScalarSet,
    e: &FnElement,
) -> Result<FnElement> {
    let mut out = FnElement::zero(e.len());
    for (class, vs) in fm.classes.iter().zip(&fm.values) {
        let v = e.0[class[0]];
        if v.is_zero() {
            continue;
        }
        let ValueSet::Finite { den: d } = *vs else {
            unreachable!("finite membership");
        };
        let atom_value = Rat01::new(1, d)?;
        let atom = elems
            .iter()
            .find(|x| {
                (0..x.len()).all(|p| {
                    x.0[p]
                        == if class.contains(&p) {
                            atom_value
                        } else {
                            Rat01::ZERO
                        }
                })
            })
            .ok_or_else(|| Error::NotClosed(format!("B has no atom on class {class:?}")))?;
        let mut piece = atom.clone();
        let mut den = d;
        match scalars {
            ScalarSet::Rational => {
                let target = lcm(d, v.denom());
                piece = piece.scale(Rat01::new(1, target / d)?);
                den = target;
            }
            ScalarSet::Adic(n) => {
                while den % v.denom() != 0 {
                    piece = piece.scale(Rat01::new(1, n)?);
                    den *= n;
                }
            }
        }
        let copies = v.numer() * (den / v.denom());
        for _ in 0..copies {
            out = out.oplus(&piece);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn r(n: i128, d: i128) -> Rat01 {
        Rat01::new(n, d).unwrap()
    }

    #[test]
    fn hull_of_two_element_algebra_is_all_rationals() {
        for b in [FnAlgebra::boolean(1), FnAlgebra::chain(2)] {
            let h = riesz_hull(&b, ScalarSet::Rational, 200, 1, 10_000).unwrap();
            for v in [r(1, 3), r(5, 7), r(11, 12)] {
                assert!(h.algebra.contains(&FnElement(vec![v])));
            }
            assert!(h.truncated);
        }
    }

    #[test]
    fn non_separating_hull_is_constant_on_classes() {
        let b = FnAlgebra::from_elements(
            vec!["p".to_string(), "q".to_string()],
            vec![
                FnElement(vec![Rat01::ZERO; 2]),
                FnElement(vec![Rat01::ONE; 2]),
            ],
        )
        .unwrap();
        let h = riesz_hull(&b, ScalarSet::Rational, 200, 2, 10_000).unwrap();
        assert!(h.algebra.contains(&FnElement(vec![r(2, 9), r(2, 9)])));
        assert!(!h.algebra.contains(&FnElement(vec![r(2, 9), r(1, 9)])));
    }

    #[test]
    fn dyadic_hull_of_three_element_chain() {
        let h = riesz_hull(&FnAlgebra::chain(3), ScalarSet::DYADIC, 300, 3, 10_000).unwrap();
        assert!(h.algebra.contains(&FnElement(vec![r(5, 12)])));
        assert!(!h.algebra.contains(&FnElement(vec![r(1, 5)])));
    }

    #[test]
    fn scalar_set_round_trip() {
        for s in [ScalarSet::Rational, ScalarSet::DYADIC, ScalarSet::Adic(3)] {
            assert_eq!(s.to_string().parse::<ScalarSet>().unwrap(), s);
        }
        assert!("adic:1".parse::<ScalarSet>().is_err());
    }
}
