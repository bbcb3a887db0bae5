pub mod ansatz;
pub mod engine;
pub mod error;
pub mod fermion;
pub mod harness;
pub mod models;
pub mod pauli;
pub mod state;
pub mod vqe;

pub use error::{Error, Result};
