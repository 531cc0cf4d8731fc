//! The uniserial space group `T ⋊ C_{p^x}`, its filtration, finite
//! quotients and the wreath point group.

pub mod filtration;
pub mod group;
pub mod params;
pub mod quotient;
pub mod theta;
pub mod wreath;

pub use filtration::{
    filtration, filtration_chain, filtration_level, theta_identities, verify_filtration, Check,
    FiltrationLattice, FiltrationReport, LatticeHook,
};
pub use group::{wreath_group, AbelianGroup, FiniteGroup, GroupDescriptor};
pub use params::SpaceGroupParams;
pub use quotient::{b3r, quotient_group, QuotientFamily, QuotientGroup};
pub use theta::{
    companion, companion_cyclotomic, cyclotomic_coefficients, delta, maximal_class_matrix,
    ThetaAction,
};
pub use wreath::{WreathElement, WreathGroup};
