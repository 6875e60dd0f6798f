//! Exact analysis of line arrangements in the projective plane: singular
//! loci, multiplicity spectra, linear H-constants and the inequality
//! certificates that bound them.

pub mod arrangement;
pub mod catalog;
pub mod cli;
pub mod fields;
pub mod negativity;
pub mod projective;
