//! Modules over the algebra: weight orbits, universal weight modules on
//! index windows, the finite-dimensional simple modules and the two
//! non-weight families.

pub mod exotic;
pub mod finite;
pub mod matrix;
pub mod orbit;
pub mod window;

pub use exotic::{exotic_module_conformal, exotic_module_conformal_mirror, exotic_module_r1, exotic_module_r1_mirror};
pub use finite::{build_fc, build_fc_bar, build_fhw, FiniteModulePresentation, ModuleKind, MAX_DIM};
pub use matrix::Matrix;
pub use orbit::{
    orbit, phi_power, phi_step, phi_step_back, simplicity_certificate, SimplicityCertificate, Weight, WeightOrbit,
};
pub use window::{basis_vector, format_vec, universal_weight_window, Gen, RelationFailure, SparseVec, WindowModule};
