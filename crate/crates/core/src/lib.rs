//! Exact lattice and period-domain computations with verifiable certificates.
//!
//! The crate computes, in exact arithmetic, the discrete data attached to a
//! positive class `kappa` on the even signature-(3,3) lattice
//! `E = Lambda^2(Z^4)^*`:
//!
//! * non-resonance certification of `kappa` (rational rank computation, or an
//!   explicit integral witness of resonance);
//! * the infinite family of indivisible isotropic classes `delta` with
//!   `0 < <kappa, delta> <= lambda`, produced by continued-fraction pumping
//!   and enumerated completely inside certified ellipsoids;
//! * Pluecker period points of 2x4 period matrices, polarized point
//!   construction, and exact hyperplane membership tests;
//! * pencil discs through the polarized quadric with exact mod-2
//!   hyperplane-crossing parities, generator loops, and the resulting
//!   identity "Kronecker matrix" certificates.
//!
//! All irrational data live in one fixed multiquadratic field, so every
//! comparison in the pipeline is an exact sign determination.

pub mod complex;
pub mod cone;
pub mod enumerate;
pub mod error;
pub mod interval;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod monodromy;
pub mod period;
pub mod scalar;
pub mod skew;

pub use complex::ComplexFieldElement;
pub use cone::{KappaProfile, Nonresonance};
pub use enumerate::{DeltaClass, MajorantForm};
pub use period::{MembershipCertificate, PeriodMatrix, PeriodPoint, Verdict};
pub use error::{Error, Result};
pub use interval::RatInterval;
pub use lattice::{BlowupClass, LatticeVector, RealClass};
pub use scalar::{FieldContext, FieldElement};
pub use skew::{AlternatingForm, FrobeniusData};
