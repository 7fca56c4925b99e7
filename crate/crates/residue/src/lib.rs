//! Iterated residues at infinity and the residue formula for integrals over
//! the nil-filtered punctual nested Hilbert scheme.
//!
//! A [`ResidueForm`] is a polynomial over a product of linear forms that each
//! involve some `z` variable. [`iterated_residue`] expands it in the regime
//! `z_1 ≪ … ≪ z_k` and takes `-coeff(z_m^{-1})` one variable at a time.

mod error;
mod flag;
mod form;
mod nilfil;

pub use error::ResidueError;
pub use flag::{at_coset, coset_sum_lhs, flag_fiber_q, flag_fiber_q_with, weighted_residue_rhs, weighted_residue_rhs_with};
pub use form::{iterated_residue, iterated_residue_with, ResidueForm, Extraction, ResidueOptions};
pub use nilfil::{
    integrate_residue_nilfil, integrate_residue_nilfil_with, integrate_residue_poly, integrate_residue_poly_with,
    nilfil_residue_form, nilfil_virtual_dimension, residue_term, residue_term_vanishes, residue_term_with,
    residue_terms, residue_terms_with,
};
