//! Harmonic analysis on finite groups relative to an abelian subgroup.
//!
//! Everything here works with a finite group `G` carrying a distinguished
//! abelian subgroup `H` and a transversal `Ω` of the left cosets `G/H`.
//! On top of that triple the crate provides:
//!
//! * [`zak`] — the Zak transform `L²(G) → L²(Ĥ; L²(Ω))`, its inverse, a
//!   left-sided variant and the convolution/product identity;
//! * [`repn`] — induced representations of `G` as monomial matrices on
//!   `L²(Ω)`, regular actions and functions of positive type;
//! * [`sispace`] — right-`H`-shift-invariant subspaces via range functions
//!   and fiber-wise frame bounds;
//! * [`frames`] — frame diagnostics, projective orbit reductions and the
//!   equiangular tight frame criterion;
//! * [`constructions`] — two concrete families: Paley harmonic ETFs on
//!   affine groups over finite fields, and SIC-POVM verification/search on
//!   finite Heisenberg groups;
//! * [`groups`], [`gf`], [`linalg`] — supporting machinery (group tables,
//!   characters, semidirect products; finite fields; a self-contained
//!   complex Hermitian eigensolver).
//!
//! The [`selftest`] module bundles the acceptance checks used by both the
//! `acceptance` integration test and the CLI `selftest` subcommand.

pub mod constructions;
pub mod error;
pub mod frames;
pub mod gf;
pub mod groups;
pub mod io;
pub mod linalg;
pub mod repn;
pub mod selftest;
pub mod sispace;
pub mod zak;

pub use constructions::{
    AffineContext, HeisenbergContext, PaleyEtf, SearchConfig, SearchOutcome, SicVerdict,
};
pub use error::{Error, Result};
pub use frames::{EquiangularityVerdict, EtfReport, FrameReport, ProjectiveOrbit, Stabilizer};
pub use gf::{FieldElement, FieldSpec};
pub use groups::{
    AbelianGroup, Character, FiniteGroup, GroupContext, SemidirectContext, SemidirectSpec,
    SubgroupEmbedding, Transversal,
};
pub use repn::{MonomialMatrix, PositiveTypeFunction, Side};
pub use sispace::{FiberBounds, RangeFunction};
pub use zak::{GroupFunction, ZakArray};
