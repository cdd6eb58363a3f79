//! Exact derivation and numerical certification of spectral gaps for
//! one-dimensional Schrödinger operators with polynomial potentials.

pub mod cli;
pub mod diffpoly;
pub mod gapcert;
pub mod ladder;
pub mod multidim;
pub mod oracle;
