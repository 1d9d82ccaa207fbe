//! Graded bimodules over type-A invariant rings, presented as free left modules
//! with right-action matrices, and the maps between them.

mod frobenius;
mod hom;
mod map;
mod matrix;
mod module;
mod split;

pub use frobenius::{
    b_parabolic, b_simple, bott_samelson, cap, cup, frobenius_maps, induction, restriction, scalar_map,
    singular_bott_samelson, FrobeniusMaps,
};
pub use hom::{graded_inverse, hom_basis, hom_dim, hom_dim_reduced, inverse, inverse_by_solve, is_iso};
pub use map::{id_tensor, tensor_id, tensor_maps, whisker, BimodMap};
pub use matrix::PolyMatrix;
pub use module::{tensor, tensor_all, Bimodule};
pub use split::{split_idempotent, Splitting};

#[cfg(test)]
mod tests;
