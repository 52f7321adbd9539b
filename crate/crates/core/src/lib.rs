//! Equations over finitely generated subgroups of PSL(2,Z).
//!
//! Given matrices `h_1, ..., h_s` and `g`, [`pipeline::analyze`] decides whether
//! `g` satisfies a nontrivial equation with coefficients in `H = <h_1, ..., h_s>`
//! and, when it does, returns finitely many equations whose normal closure in
//! `H * <x>` is the ideal of all equations satisfied by `g`.
//!
//! The computation goes through the free product structure `PSL(2,Z) = C2 * C3`
//! ([`ab_word`]), the free normal subgroup `F = <p, q>` of index six
//! ([`free_group`]), coset graphs of finite index subgroups built from a
//! membership oracle ([`schreier`]) and Stallings foldings with relator capture
//! ([`stallings`]). [`brute_force`] provides an independent exhaustive search
//! for short equations.

pub mod ab_word;
pub mod brute_force;
pub mod error;
pub mod free_group;
pub mod hstar;
pub mod matrix;
pub mod pipeline;
pub mod schreier;
pub mod stallings;

pub use ab_word::{AbWord, C2xC3, Syllable};
pub use error::{Error, Result};
pub use free_group::{FreeWord, Letter};
pub use hstar::{EqLetter, EqWord, HContext, HEquation};
pub use matrix::{Order, ProjMat2};
pub use pipeline::{analyze, verify, AnalysisReport, Verdict};
