use super::ext::{annihilator, ext};
use crate::error::{Error, Result};
use crate::fpmod::{cokernel, dual, evaluation_map, kernel, FPModule, Morphism, Submodule};
use crate::linalg;
use crate::ring::Ring;

/// `A(M) = coker(∂ᵀ: R^g → R^r)` for the stored presentation of `M`.
pub fn auslander_dual<R: Ring>(m: &FPModule<R>) -> Result<FPModule<R>> {
    let ring = m.ring();
    let d = m.relation_matrix();
    let a = FPModule::present(ring, &d.transpose(), d.ncols())?;
    Ok(a.simplify()?.0)
}

/// The torsion submodule of `M`.
#[derive(Debug, Clone)]
pub struct Torsion<R: Ring> {
    /// `tor(M) → M`.
    pub inclusion: Morphism<R>,
    /// Preimage of `tor(M)` in the free cover `R^g` (contains the relations).
    pub preimage: Submodule<R>,
}

/// `tor(M) = ker ε_M`.
pub fn torsion_submodule<R: Ring>(m: &FPModule<R>) -> Result<Torsion<R>> {
    let ring = m.ring();
    let inclusion = kernel(&evaluation_map(m)?)?;
    let mut gens = inclusion.matrix().columns().to_vec();
    gens.extend(m.relations().iter().cloned());
    let preimage = Submodule::new(ring, m.generators(), &gens)?;
    Ok(Torsion { inclusion, preimage })
}

/// `M → M/tor(M)`.
pub fn torsionfree_factor<R: Ring>(m: &FPModule<R>) -> Result<Morphism<R>> {
    cokernel(&torsion_submodule(m)?.inclusion)
}

/// The ideal `Fitt_k(M)` of `(g − k)`-minors of a presentation matrix.
pub fn fitting_ideal<R: Ring>(m: &FPModule<R>, k: usize) -> Result<Submodule<R>> {
    let ring = m.ring();
    let g = m.generators();
    if k >= g {
        return Ok(Submodule::full(ring, 1));
    }
    let minors = linalg::minors(ring, &m.relation_matrix(), g - k)?;
    let gens: Vec<Vec<R::Elem>> = minors.into_iter().map(|d| vec![d]).collect();
    Submodule::new(ring, 1, &gens)
}

/// Outcome of reconciling `ker ε_M` with `Ext¹(A(M), R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionCrossCheck {
    pub annihilators_agree: bool,
    pub fitting_ideals_agree: bool,
    pub factor_is_torsionless: bool,
    pub generators_are_torsion: bool,
}

impl TorsionCrossCheck {
    pub fn passed(&self) -> bool {
        self.annihilators_agree && self.fitting_ideals_agree && self.factor_is_torsionless && self.generators_are_torsion
    }
}

/// Compare the torsion computed as `ker ε_M` with `Ext¹(A(M), R)` through
/// module invariants, and certify each torsion generator individually.
pub fn torsion_cross_check<R: Ring>(m: &FPModule<R>) -> Result<TorsionCrossCheck> {
    let ring = m.ring();
    let tor = torsion_submodule(m)?;
    let t = tor.inclusion.source().simplify()?.0;
    let e1 = ext(1, &auslander_dual(m)?, &FPModule::free(ring, 1))?;
    let annihilators_agree = annihilator(&t)?.equals(&annihilator(&e1)?)?;
    let mut fitting_ideals_agree = true;
    for k in 0..=t.generators().max(e1.generators()) {
        if !fitting_ideal(&t, k)?.equals(&fitting_ideal(&e1, k)?)? {
            fitting_ideals_agree = false;
            break;
        }
    }
    let factor = cokernel(&tor.inclusion)?;
    let factor_is_torsionless = kernel(&evaluation_map(factor.target())?)?.source().is_zero();
    let ts = tor.inclusion.source();
    let generators_are_torsion = (0..ts.generators()).all(|i| {
        generator_annihilator(m, tor.inclusion.matrix().column(i))
            .map(|a| !a.is_zero())
            .unwrap_or(false)
    });
    Ok(TorsionCrossCheck {
        annihilators_agree,
        fitting_ideals_agree,
        factor_is_torsionless,
        generators_are_torsion,
    })
}

/// `Ann(v) = {r : r·v ∈ K}` for an element `v` of `M`.
fn generator_annihilator<R: Ring>(m: &FPModule<R>, v: &[R::Elem]) -> Result<Submodule<R>> {
    let ring = m.ring();
    let mut cols = vec![v.to_vec()];
    cols.extend(m.relations().iter().cloned());
    let colon: Vec<Vec<R::Elem>> = crate::groebner::syzygies(ring, &cols, m.generators())?
        .into_iter()
        .map(|s| vec![s[0].clone()])
        .collect();
    Submodule::new(ring, 1, &colon)
}

/// A monomorphism `M → R^s` for torsion-free `M`: the functionals generating
/// `M*` evaluated on the generators of `M`.
pub fn free_embedding<R: Ring>(m: &FPModule<R>) -> Result<Morphism<R>> {
    let ring = m.ring();
    let d = dual(m)?;
    let s = d.embedding.ncols();
    let emb = Morphism::new(m, &FPModule::free(ring, s), d.embedding.transpose())?;
    let k = kernel(&emb)?;
    if !k.source().is_zero() {
        let witness = (0..k.source().generators())
            .find(|&i| !m.is_zero_element(k.matrix().column(i)))
            .unwrap_or(0);
        return Err(Error::NotTorsionFree { witness });
    }
    Ok(emb)
}

/// Whether `Hom(T, M) = 0`.
pub fn hom_is_zero<R: Ring>(t: &FPModule<R>, m: &FPModule<R>) -> Result<bool> {
    Ok(ext(0, t, m)?.is_zero())
}
