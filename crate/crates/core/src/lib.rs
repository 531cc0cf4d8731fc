pub mod cochain;
pub mod error;
pub mod group_model;
pub mod linalg;
pub mod resolution;
pub mod space_group;

pub use error::{Error, Result};
