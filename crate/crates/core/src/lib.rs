pub mod error;
pub mod hyp;
pub mod quad;
pub mod hexagon;
pub mod deform;
pub mod surface;

pub use error::{Error, Result};
