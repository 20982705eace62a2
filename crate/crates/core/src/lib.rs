//! Exact linear algebra and matroid depth algorithms over prime fields.
//!
//! The crate provides, bottom up:
//!
//! * [`field`]: dense matrices over GF(p) with deterministic reduced row
//!   echelon form, solving, ranks and nullspaces;
//! * [`subspace`]: canonically represented subspaces of GF(p)^n (sums,
//!   intersections, quotient dimensions, basis extension);
//! * [`matroid`]: represented matroids, minors (contraction/deletion
//!   schedules), components and basis-set encodings;
//! * [`connectivity`]: the connectivity function lambda and its partition
//!   extension lambda*;
//! * [`decomposition`]: radius/depth-bounded decomposition trees, their
//!   validators, rooting, and exhaustive searches;
//! * [`depth`]: exact contraction-deletion-depth (and the contraction-only
//!   and deletion-only variants) with verifiable elimination certificates;
//! * [`shared_subspace`]: the iterative construction of a small subspace A
//!   with dim A <= 3 lambda* that simultaneously flattens a family of
//!   subspaces;
//! * [`embedding`]: the recursive rewiring of a represented matroid with a
//!   depth-d, width-r decomposition into a host matroid N with certified
//!   small contraction-deletion-depth, plus a minor schedule recovering the
//!   input;
//! * [`generators`]: deterministic instance generators (graphic matroids,
//!   fat cycles, uniform matroids, seeded random matrices);
//! * [`selftest`]: the end-to-end acceptance battery used by the CLI and the
//!   integration tests.

pub mod connectivity;
pub mod decomposition;
pub mod depth;
pub mod embedding;
pub mod error;
pub mod field;
pub mod generators;
pub mod matroid;
pub mod pfm;
pub mod selftest;
pub mod shared_subspace;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{FieldSpec, PrimeFieldMatrix};
pub use matroid::{BasisSetEncoding, MinorSchedule, RepresentedMatroid, ScheduleStep, StepKind};
pub use subspace::Subspace;
