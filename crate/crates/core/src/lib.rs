//! Word-length rank-spectrum modelling.
//!
//! Texts are reduced to a rank spectrum (word types by descending frequency,
//! each with a syllable length and a coverage position), from which two
//! parameters are estimated: the mean word length `lambda0` and the expected
//! length at the head of the rank list `lambda1`. These map onto a language
//! invariant `I` and a genre invariant `alpha`, and texts can be placed and
//! classified in the I-alpha plane.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod estimate;
pub mod model;
pub mod plot;
pub mod spectrum;
pub mod synth;
pub mod textproc;

pub use error::{Error, Result};
