//! Exact algebra for Soergel-bimodule 2-idempotents and deformed Grassmannian
//! cohomology.

pub mod bimod;
pub mod coxeter;
pub mod demazure;
pub mod error;
pub mod exactpoly;
pub mod frobext;
pub mod grasscohom;
pub mod kar2;
pub mod linalg;
pub mod symfunc;
pub mod webfoam;

pub use bimod::{BimodMap, Bimodule, PolyMatrix};
pub use coxeter::{longest, rainbow_search, rsk_shape, word_ops, ParabolicSet, Partition, Perm};
pub use demazure::{alpha_j, demazure_j, demazure_simple, demazure_word, is_invariant, InvariantRingId};
pub use error::{Error, Result};
pub use exactpoly::{graded_basis, parse_poly, Monomial, Poly, Rational};
pub use frobext::{dual_bases, frob, FrobData};
pub use grasscohom::{build as build_deformed, end_ring, idempotents, tensor_align_check, DeformAlg, TensorAlg};
pub use webfoam::{decomposition_counts, enumerate_admissible, refine_object, split_object, validate_web, Slice, Web, WebObject};
