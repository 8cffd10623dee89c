//! Univariate and bivariate polynomials over the cyclotomic scalars.

mod bi;
mod funeq;
mod groebner;
mod uni;

pub use bi::{bidegree_cmp, BiPoly};
pub use funeq::{functional_equation_kernel, AffineTwist};
pub use groebner::{
    groebner_basis, ideal_contains, reduce, sort_generators, standard_monomials, vanishing_ideal, PointSet2D,
};
pub use uni::UniPoly;
