//! Exact computations for graded Hecke algebras `A_{t,c}` attached to a finite
//! matrix group `G ⊂ GL(V)`.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`cyclo`]: the scalar field `ℚ(ζ_m)` with arbitrary precision rationals.
//! * [`linalg`]: dense exact linear algebra (echelon forms, kernels, determinants).
//! * [`poly`]: commutative polynomials in `S(V)` and the action of `G` on them.
//! * [`group`]: closure of a generating set, conjugacy classes, fixed/moved spaces.
//! * [`refl`]: bireflections, the subset of them admissible as deformation
//!   support, their skew forms, and the `G`-invariant 2-forms.
//! * [`kappa`]: deformation maps `κ`, built from parameters and solved for directly
//!   from the PBW conditions, with a cross-check between the two.
//! * [`pbw`]: a rewriting engine for normal forms in `A_{t,c}` and the overlap check.
//! * [`probe`]: spherical subalgebra commutator probes, Poisson brackets on
//!   invariants, the trace identity and parameter scans.

#![no_std]

extern crate alloc;

pub mod cyclo;
mod error;
pub mod group;
pub mod kappa;
pub mod linalg;
pub mod pbw;
pub mod poly;
pub mod probe;
pub mod refl;

pub use cyclo::{cyclotomic_polynomial, CycField, CycNum, Rational};
pub use error::Error;
pub use group::Group;
pub use kappa::{KappaMap, ParamPoint};
pub use linalg::Mat;
pub use pbw::{AlgebraElement, Letter, PbwAlgebra};
pub use refl::{ReflectionData, SkewForm};

pub type Result<T, E = Error> = core::result::Result<T, E>;
