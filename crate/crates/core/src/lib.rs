//! Derivations and differential operators on affine domains `A = K[x_1..x_n]/I`.
//!
//! The crate builds the natural derivations `∂_{i,j}` of a coordinate ring
//! from minors of its Jacobi matrix, decides membership in the module of
//! derivations and in its natural submodule, and emits the finite
//! presentation of the ring of differential operators of a smooth variety
//! together with machinery to check every relation as an operator on `A`.
//!
//! All arithmetic is exact over `ℚ`. The crate is `no_std` and needs only
//! `alloc`.

#![no_std]

extern crate alloc;

pub mod dermod;
pub mod error;
pub mod groebner;
pub mod jacobi;
pub mod polyring;
pub mod quotient;
pub mod relgen;

pub use dermod::{Derivation, DerivationModule, HigherDerivation};
pub use error::{Error, Result};
pub use groebner::{buchberger, module_buchberger, GroebnerBasis, ModuleBasis};
pub use jacobi::{IndexTuple, JacobiData, JacobianIdeal, PointReport};
pub use polyring::{determinant, Monomial, MonomialOrder, Polynomial, Rational};
pub use quotient::{CoordinateRing, LocalizedElement, Residue};
pub use relgen::{Atom, OperatorExpr, PresentationDoc, Relation, RelationKind};
