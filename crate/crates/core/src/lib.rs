pub mod analysis;
pub mod cli;
pub mod closed_form;
pub mod depletion;
pub mod error;
pub mod models;
pub mod quadratic;
pub mod verify;

pub use error::{Error, Result};
