//! Intersection homology of stratified simplicial pseudomanifolds and
//! Kazhdan–Lusztig polynomials of type A Weyl groups.
//!
//! The topology half ([`perversity`], [`complex`], [`ih`]) works with finite
//! simplicial models of possibly non-compact stratified spaces and computes
//! dimensions over the rationals with exact arithmetic. The algebra half
//! ([`coxeter`], [`laurent`], [`hecke`], [`kl`], [`flagfq`]) computes in the
//! Iwahori–Hecke algebra of the symmetric group, extracts Kazhdan–Lusztig
//! polynomials by two independent algorithms, and checks the Hecke relations
//! against brute-force convolution on flag varieties over prime fields.

pub mod complex;
pub mod coxeter;
mod error;
pub mod flagfq;
pub mod hecke;
pub mod ih;
pub mod kl;
pub mod laurent;
pub mod linalg;
pub mod perversity;

pub use error::{Error, Result};
