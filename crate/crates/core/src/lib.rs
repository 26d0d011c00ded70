//! Fourier sampling laboratory for hidden subgroups of the symmetric group.
//!
//! The crate computes, exactly where possible and in binary64 elsewhere, the
//! measurement statistics of weak and strong Fourier sampling of coset states
//! `|cH⟩` for `H = {1, m}` in `S_n`, along with the representation-theoretic
//! inputs (characters, Young's orthogonal form, isotypic projectors) and the
//! structured-involution case over `S_n ≀ Z_2`.
//!
//! Composition convention: `(p ∘ q)(i) = p(q(i))`, see [`perm::Permutation::compose`].

pub mod error;
pub mod perm;
pub mod partition;
pub mod character;
pub mod rep;
pub mod cache;
pub mod numeric;
pub mod sampling;
pub mod moments;
pub mod experiments;
pub mod wreath;
pub mod acceptance;

pub use error::{Error, Result};
