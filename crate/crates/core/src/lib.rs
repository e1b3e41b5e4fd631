pub mod error;
pub mod exact;
pub mod jacobian;
pub mod kunneth;
pub mod sym;
pub mod tensor;
pub mod theta;

pub use error::{Error, Result};
