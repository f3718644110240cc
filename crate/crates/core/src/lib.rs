//! Absolutely graded `HF⁺` of rational Dehn surgeries on knots in `S³`,
//! computed from knot-side data, together with a brute-force mapping-cone
//! oracle and a set of surgery obstructions.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod gradedalg;
pub mod io;
pub mod knotmodel;
pub mod lensd;
pub mod obstruct;
pub mod oracle;
pub mod surgery;

pub use error::{Error, Result};
