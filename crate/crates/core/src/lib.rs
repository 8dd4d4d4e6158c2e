//! MV-algebras, unital abelian ℓ-groups and the semisimple tensor product.
//!
//! Every value is an exact rational in `[0,1]`; there is no floating point
//! anywhere. The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod enriched;
pub mod error;
pub mod lu;
pub mod mv;
pub mod pwl;
pub mod rational;
pub mod sampling;
pub mod tensor;
pub mod term;

pub use error::{Error, Result};
pub use rational::{Rat01, Q};
