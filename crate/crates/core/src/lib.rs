pub mod error;
pub mod quad;
pub mod roots;
pub mod series;
pub mod special;
pub mod wells;

pub use error::{Error, Result};
pub mod cli;
pub mod expansions;
pub mod oracle;
pub mod trial;
pub mod tridiag;
