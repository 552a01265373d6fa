//! Fixtures, random and exhaustive generation, the text format and the
//! property suite.

pub mod duality;
pub mod enumerate;
pub mod fixtures;
pub mod format;
pub mod random;
pub mod suite;
