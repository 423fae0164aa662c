//! Exact arithmetic for the finite layer of spherical principal series of the
//! rank-one groups `SO(n,1)`, `SU(n,1)`, `Sp(n,1)` and `F4`.
//!
//! The crate is organised by subject:
//!
//! * [`groups`]: structural constants and exceptional spectral parameters.
//! * [`ktypes`]: M-spherical K-type lattices, highest weights, Weyl dimensions,
//!   socle membership, minimal K-types and Langlands data.
//! * [`tensor`]: decomposition of `Y ⊗ p*` by Racah–Speiser, with a Freudenthal
//!   character oracle.
//! * [`hypergeom`]: terminating Gauss hypergeometric polynomials and their
//!   contiguous relations.
//! * [`spherical`]: zonal spherical functions, the `ω(H)` recurrences and the
//!   scalars `λ(V,Y)`.
//! * [`scalars`]: Poisson-transform scalars `ν` and `T`, their vanishing loci,
//!   and growth products.
//! * [`so_model`]: a concrete Lorentz-matrix model of `SO(n,1)` with numerical
//!   checks of the intertwining identities.
//! * [`cli`]: the command-line front end producing deterministic reports.
//!
//! All scalars are exact [`Q`] rationals except in [`so_model`], which works in
//! `f64` where the group model requires it.

pub mod cli;
pub mod error;
pub mod groups;
pub mod hypergeom;
pub mod ktypes;
pub mod poly;
pub mod rational;
pub mod scalars;
pub mod so_model;
pub mod spherical;
pub mod tensor;
pub mod weyl;

pub use error::{Error, Result};
pub use groups::{GroupFamily, SpectralParam, StructuralData};
pub use ktypes::{KTypeLabel, Weight};
pub use rational::Q;
