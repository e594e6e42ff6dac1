//! Exact and numerical certificates for the arithmetic behind a K-contact,
//! non-Sasakian Smale-Barden manifold built over a blow-up of the plane.

pub mod cli;
pub mod config;
pub mod divisor;
pub mod lattice;
pub mod report;
pub mod seifert;
