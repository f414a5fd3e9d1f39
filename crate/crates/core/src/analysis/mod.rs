//! Figures of merit extracted from scattering results.

mod gain;
mod noise;

pub use gain::*;
pub use noise::*;
