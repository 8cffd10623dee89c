pub mod algebra;
pub mod classify;
pub mod cli;
pub mod conformal;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod poly;
pub mod scalar;

pub use error::{DownUpError, Result};
