//! Computation kernel for linear generalized complex geometry on `V ⊕ V*`.
//!
//! A generalized complex structure is an endomorphism `𝓘` of `V ⊕ V*` with
//! `𝓘² = −Id` that is orthogonal for the split pairing
//! `⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))`. This crate represents such structures as
//! dense `2m × 2m` matrices (block order: `V` rows, then `V*` rows) over
//! either exact rationals or tolerance-checked floats, and provides
//!
//! * construction from complex and symplectic data, B-field and β-transforms,
//!   and type computation from the Poisson block ([`gcs`]);
//! * the exterior-algebra route to the same invariants: Clifford action,
//!   pure-spinor annihilators, the Mukai pairing, and canonical lines
//!   ([`spinor`]);
//! * anticommuting pairs and the sphere family `a𝓘 + b𝓙 + c𝓚`, hypersymplectic
//!   condition systems, and maximal-type detection ([`hyper`]);
//! * Lie algebras with their cotangent doubles, the algebraic Courant bracket,
//!   and Nijenhuis integrability ([`lie`]);
//! * the λ-parametrization of the family, degree-3 integrability certificates,
//!   and twistor type reports ([`twistor`]);
//! * ready-made torus and nilmanifold example bundles ([`examples`]).
//!
//! All operations are pure functions over immutable values; nothing here
//! holds interior mutability, so every type can be shared across threads.

pub mod scalar;
pub mod mat;
pub mod gcs;
pub mod spinor;
pub mod lie;
pub mod hyper;
pub mod twistor;
pub mod examples;
pub mod json;
pub mod report;

pub use gcs::{Bivector, GenStructure, PairingMatrix, TwoForm};
pub use mat::Mat;
pub use scalar::{Coeff, Rat, Scalar};
