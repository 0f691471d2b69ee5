pub mod error;
pub mod infnear;
pub mod linalg;
pub mod models;
pub mod monomial;
pub mod notation;
pub mod oracle;
pub mod problem;
pub mod rees;
pub mod regressions;
pub mod report;
pub mod starsimple;
pub mod toric;

pub use error::{Error, Result};
