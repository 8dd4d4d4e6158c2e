//! Enriched structure on function algebras: products (PMV), scalar actions
//! (Riesz MV), both together (f-MV), the scalar extension of a finite algebra
//! and the lifts along it.

mod fmv;
mod foperator;
mod hull;
mod interp;
mod lift;
mod pmv;
mod sep;

pub use fmv::{fmv_check, FmvReport, ScalarAction};
pub use foperator::{f_operator_check, FOperatorReport};
pub use hull::{riesz_hull, Hull, ScalarSet};
pub use interp::GenContext;
pub use lift::{
    adjunction_lift_fmv, adjunction_lift_riesz, check_lift, distinguishing_generator,
    enumerate_point_homs, functor_law, LiftReport, LiftSetting, PointMap, Pools,
};
pub use pmv::{pmv_check, PmvReport};
pub use sep::{sep_action, sep_omega, SepReport};
