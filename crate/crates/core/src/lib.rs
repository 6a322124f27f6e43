pub mod casesplit;
pub mod error;
pub mod fixtures;
pub mod multmat;
pub mod presentation;
pub mod render;
pub mod smith;
pub mod symring;
pub mod verify;

pub use error::{Error, Result};
