pub mod error;
pub mod exact;
pub mod kernel;
pub mod quad;
pub mod rmt;
pub mod shift;
pub mod testfn;
pub mod zeta;

pub use error::{Error, Result};
pub mod verify;
pub mod cli;
pub mod plot;
