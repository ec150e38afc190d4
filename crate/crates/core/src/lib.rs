//! Hodge/Eckmann Laplacian spectra and Cheeger constants of finite
//! simplicial complexes.
//!
//! The crate builds downward-closed complexes from facet lists, assembles
//! boundary/coboundary incidence matrices and the up/down/full Laplacians,
//! and computes two families of Cheeger-type constants on the d-simplices:
//! the gap-from-(d+2) constants h_k(Σ_d) obtained through an associated
//! signed graph, and the gap-from-0 constant h(Σ_d) in four equivalent
//! formulations (multiset brute force, ℤ-expansion, an ℓ¹-orthogonality
//! eigenvalue certificate, and the inverse filling profile). A verification
//! harness checks the spectral identities and Cheeger inequalities relating
//! all of these at desk scale, with exact rational arithmetic wherever the
//! relations are exact.

pub mod cheeger;
pub mod complex;
pub mod error;
pub mod exact;
pub mod generators;
pub mod laplacians;
pub mod numlin;
pub mod plap;
pub mod ratlp;
pub mod signed;
pub mod verify;

pub use error::{Error, Result};
