pub mod arith;
pub mod basis;
pub mod error;
pub mod export;
pub mod hw;
pub mod mub;
pub mod pauli_group;
pub mod phase;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use phase::{Phase, PhaseBinomial, Sign};
