pub mod analysis;
pub mod cli;
pub mod classify;
pub mod ergodic;
pub mod error;
pub mod oracle;
pub mod parallel;
pub mod poly;
pub mod weights;

pub use error::{Result, WroError};
