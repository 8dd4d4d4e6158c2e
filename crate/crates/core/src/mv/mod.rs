//! Finite and function-algebra MV-algebras.

pub mod function;
pub mod hom;
pub mod ideal;
pub mod table;

pub use function::{
    canonical_cmp, generate_subalgebra, Derivation, FnAlgebra, FnElement, FnKind, Membership,
    ValueSet, DEFAULT_BUDGET,
};
pub use hom::{
    hom_enumerate, hom_enumerate_filtered, is_linear, iso_check, iso_check_fn, Certificate,
    Homomorphism, IsoResult,
};
pub use ideal::{
    ideal_closure, ideals, is_ideal, is_semisimple, maximal_ideals, quotient, radical,
    representation_values, semisimple_representation, Ideal, Quotient, SemisimpleRep,
};
pub use table::{
    interval_algebra, is_mv, validate_mv, Axiom, AxiomViolation, IntervalAlgebra, TableAlgebra,
};
