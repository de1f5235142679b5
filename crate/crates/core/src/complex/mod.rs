//! Simplicial complexes with stratification data, rational chains and their
//! boundaries, subdivision, cones, prisms, validation and ordinary homology.
//!
//! A non-compact space is encoded as a pair `(K, L)` with `X = |K| \ |L|`
//! and `L` a full subcomplex. Borel–Moore chains are relative chains modulo
//! `L`; compactly supported chains live on the subcomplex of simplices
//! disjoint from `L`.

mod chain;
pub mod examples;
pub(crate) mod homology;
mod io;
mod simplicial;
mod stratified;

pub use chain::{boundary, Chain};
pub use homology::{euler_characteristic, homology_dims, ChainModel, DimTable, Supports};
pub use io::{ComplexFile, FiltrationFile};
pub use simplicial::{Simplex, SimplicialComplex, Subcomplex, VertexId};
pub use stratified::{Check, CheckKind, StratifiedComplex, ValidationReport};
