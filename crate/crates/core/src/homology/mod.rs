//! Free resolutions, Ext, grade, annihilators and the torsion theory of
//! finitely presented modules over a domain.

mod ext;
mod resolution;
mod torsion;

pub use ext::{annihilator, codimension, ext, ext_from_resolution, grade, GradeValue};
pub use resolution::{free_resolution, ResolutionComplex};
pub use torsion::{
    auslander_dual, fitting_ideal, free_embedding, hom_is_zero, torsion_cross_check, torsion_submodule,
    torsionfree_factor, Torsion, TorsionCrossCheck,
};

#[cfg(test)]
mod tests;
