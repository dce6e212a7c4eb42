//! H-eigenpairs and the inheritance checks built on them.
//!
//! `lambda` is an H-eigenvalue of `H` with eigenvector `x != 0` when
//! `H x^{m-1} = lambda x^{[m-1]}` (componentwise power on the right). For
//! even `m` the extreme H-eigenvalues are the extremes of
//! `H x^m / |x|_m^m`, which is what the bound checks compare.

mod heig;
mod inherit;
mod lift;

pub use heig::{
    auto_shift, eigen_residual, heig_all_small, heig_power, heig_search, Direction, HEigenPair,
    PowerOptions, SearchSummary, EIG_RESIDUAL_TOL,
};
pub use inherit::{
    check_first_inheritance, check_first_inheritance_with, check_second_inheritance, extreme_heigs,
    BoundCheck, CheckOptions, FirstInheritanceReport, FirstSpectra, IdentityCheck, NegativeSearch,
    QuantifiedBound, SecondInheritanceReport, BOUND_SLACK, MATRIX_SIGN_TOL,
};
pub use lift::{lift_constants, lift_ratio, LiftBoundConstants};
