//! Canonical decompositions: the X-formability classifier and constructor,
//! the reordering that turns small blocks into X-form, and the Frobenius
//! normal form.

pub mod blockspec;
mod decompose;
mod frobenius;
mod split;

pub use blockspec::{Block, BlockSpec};
pub use decompose::{classify_xformable, xform_decompose, Decomposition, XFormCertificate};
pub use frobenius::{frobenius_form, FrobeniusForm};
pub use split::{
    jordan_chains_small, kernel_lemma_split, pairing_permutation, permutation_matrix,
    quad_cyclic_split, quadratic_is_irreducible, restrict, SmallBlock,
};
