//! Deterministic pseudorandom sampling for checks on intensional algebras.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::mv::function::{FnAlgebra, FnElement, FnKind, ValueSet};
use crate::rational::Rat01;

/// Samples drawn by intensional checks unless a caller asks otherwise.
pub const DEFAULT_SAMPLES: usize = 500;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A value from the set; denominators stay small so products stay exact and
/// cheap.
pub fn sample_value<R: Rng + ?Sized>(rng: &mut R, vs: ValueSet) -> Rat01 {
    let den: i128 = match vs {
        ValueSet::Rational => rng.random_range(1..=12),
        ValueSet::Adic { base, scale } => scale * base.pow(rng.random_range(0..=3)),
        ValueSet::Finite { den } => den,
    };
    Rat01::new(rng.random_range(0..=den), den).expect("numerator within denominator")
}

/// A member of the algebra: uniform over the elements when extensional,
/// classwise random values when intensional.
pub fn sample_element<R: Rng + ?Sized>(rng: &mut R, a: &FnAlgebra) -> FnElement {
    match a.kind() {
        FnKind::Extensional(_) => {
            let elems = a.elements().expect("extensional");
            elems[rng.random_range(0..elems.len())].clone()
        }
        FnKind::Intensional(i) => {
            let mut values = Vec::from_iter(core::iter::repeat_n(Rat01::ZERO, a.points()));
            for (class, &vs) in i.membership.classes.iter().zip(&i.membership.values) {
                let v = sample_value(rng, vs);
                for &p in class {
                    values[p] = v;
                }
            }
            FnElement(values)
        }
    }
}

/// A rational scalar in `[0,1]` with a small denominator.
pub fn sample_scalar<R: Rng + ?Sized>(rng: &mut R) -> Rat01 {
    sample_value(rng, ValueSet::Rational)
}
