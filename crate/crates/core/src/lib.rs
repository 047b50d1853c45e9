//! Exact computations with braid group actions on semiorthonormal bases of
//! Mukai lattices.
//!
//! A rank `n` lattice is given by a unit upper triangular integer form, so the
//! standard basis is semiorthonormal. The braid group `B_n` acts on ordered
//! semiorthonormal bases by mutations ([`lattice`]) and on tuples of group
//! elements by the Hurwitz action ([`hurwitz`]). Sending each basis vector `E`
//! to its reflection `psi_E` ([`reflect`]) intertwines the two actions, so
//! orbit questions can be asked on either side ([`orbit`]). For free Coxeter
//! groups the Hurwitz orbit of the generators is decided constructively
//! ([`coxeter`]). The lattices `K_0(P^n)` are in [`pn`].
//!
//! All arithmetic is over arbitrary-precision integers.

pub mod coxeter;
pub mod error;
pub mod hurwitz;
pub mod lattice;
pub mod matrix;
pub mod orbit;
pub mod pn;
pub mod reflect;
pub mod text;
pub mod verify;

pub use coxeter::{CoxeterGroup, CoxeterTuple, CoxeterWord, HurwitzSolution};
pub use error::{Error, Result};
pub use hurwitz::{Group, GroupTuple, InvolutionMatrices, MatrixGroup};
pub use lattice::{BraidLetter, BraidWord, Check, GramForm, LatticeVector, SOBasis, SignClass};
pub use matrix::IntMatrix;
pub use orbit::{
    orbit_bfs, relation_search, same_orbit, verify_transitivity_certificate, BasisPoint,
    OrbitAnswer, OrbitBudget, OrbitResult, RelationReport,
};
pub use pn::{gram_pn, reflections_pn};
pub use reflect::{
    bases_equivalent_mod_sign, conjugate_tuple_by_isometry, equivariance_check, psi_map,
    reflection_of, ReflectTuple, ReflectionMatrix,
};
