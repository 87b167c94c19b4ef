//! JSON formats, the command-line front end and the invariant suite for
//! `higgs-atlas-core`.

pub mod cli;
pub mod json;
pub mod verify;
