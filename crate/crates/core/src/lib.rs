pub mod agm;
pub mod ball;
pub mod cli;
pub mod error;
pub mod hypergeom;
pub mod identities;
pub mod periods;
pub mod scalarcore;
pub mod theta;

pub use error::{Error, Result};
