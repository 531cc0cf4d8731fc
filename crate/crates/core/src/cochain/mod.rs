//! Finite models of the cochain-level objects: the exterior algebra,
//! normalized bar cochains on `T_0 = T / pT`, the cross product `η`, the
//! wreath action and inflation.

pub mod checks;
pub mod exterior;
pub mod tensor;

pub use checks::{
    check_delta, check_eta_equivariance, check_eta_exhaustive, check_inflation_equivariance,
    inflate_eval, project_to_t0, Counterexample, EquivarianceReport,
};
pub use exterior::{exterior_dims, ExteriorAlgebra};
pub use tensor::{act_on_cochain, cross_product_eval, Cochain, ElementaryTensor, Values};
