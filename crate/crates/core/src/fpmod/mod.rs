//! Finitely presented modules and the morphisms between them.
//!
//! A module is a presentation `R^g / K`: `g` generators and a relation
//! submodule `K ≤ R^g` stored as a standard basis. A morphism `M → N` is a
//! matrix whose columns are the images of the generators of `M`, checked at
//! construction against the relations of both sides.

mod ops;
mod submodule;

pub use ops::{
    cokernel, direct_sum, dual, dual_morphism, evaluation_map, image, kernel, pullback, solve_lift,
    DirectSum, Dual, Pullback, ShortExactSequence,
};
pub(crate) use ops::subquotient;
pub use submodule::Submodule;

use crate::error::{Error, Result};
use crate::ring::{Matrix, Ring};

#[derive(Debug, Clone, PartialEq)]
pub struct FPModule<R: Ring> {
    ring: R,
    generators: usize,
    relations: Vec<Vec<R::Elem>>,
}

impl<R: Ring> FPModule<R> {
    /// `R^g` modulo the column span of `relations`.
    pub fn present(ring: &R, relations: &Matrix<R::Elem>, g: usize) -> Result<Self> {
        if relations.nrows() != g {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows for {g} generators",
                relations.nrows()
            )));
        }
        Self::from_relations(ring, g, relations.columns())
    }

    pub fn from_relations(ring: &R, g: usize, relations: &[Vec<R::Elem>]) -> Result<Self> {
        if let Some(r) = relations.iter().find(|r| r.len() != g) {
            return Err(Error::DimensionMismatch(format!(
                "relation of length {} for {g} generators",
                r.len()
            )));
        }
        Ok(FPModule {
            ring: ring.clone(),
            generators: g,
            relations: ring.standard_basis(relations, g)?,
        })
    }

    pub fn free(ring: &R, g: usize) -> Self {
        FPModule {
            ring: ring.clone(),
            generators: g,
            relations: Vec::new(),
        }
    }

    pub fn zero(ring: &R) -> Self {
        Self::free(ring, 0)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Standard basis of the relation submodule.
    pub fn relations(&self) -> &[Vec<R::Elem>] {
        &self.relations
    }

    /// Relations as the columns of a `g × r` matrix (the presentation map `∂`).
    pub fn relation_matrix(&self) -> Matrix<R::Elem> {
        Matrix::from_columns(self.generators, self.relations.clone()).expect("shape")
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relations.is_empty()
    }

    /// Normal form of a coordinate vector modulo the relations.
    pub fn normal_form(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        self.ring.reduce(v, &self.relations).remainder
    }

    pub fn is_zero_element(&self, v: &[R::Elem]) -> bool {
        self.ring.is_zero_vector(&self.normal_form(v))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.generators).all(|i| self.is_zero_element(&self.ring.unit_vector(self.generators, i)))
    }

    pub fn same_ring(&self, other: &FPModule<impl Ring>) -> bool {
        self.ring.descriptor() == other.ring.descriptor()
    }

    /// An isomorphic presentation with every generator that can be solved for
    /// from a relation with a unit coefficient eliminated, together with
    /// mutually inverse isomorphisms `self → simplified` and `simplified → self`.
    pub fn simplify(&self) -> Result<(FPModule<R>, Morphism<R>, Morphism<R>)> {
        let ring = &self.ring;
        let g = self.generators;
        let mut rels = self.relations.clone();
        // substitution[p] expresses an eliminated generator through the others
        let mut substitution: Vec<Option<Vec<R::Elem>>> = vec![None; g];
        loop {
            let pivot = rels.iter().enumerate().find_map(|(k, r)| {
                r.iter()
                    .position(|a| ring.is_unit(a))
                    .map(|p| (k, p))
            });
            let Some((k, p)) = pivot else { break };
            let r = rels.swap_remove(k);
            let inv = ring.unit_inverse(&r[p]).expect("unit");
            let mut s = ring.scale_vector(&ring.neg(&inv), &r);
            s[p] = ring.zero();
            for other in rels.iter_mut().chain(substitution.iter_mut().flatten()) {
                if ring.is_zero(&other[p]) {
                    continue;
                }
                let c = other[p].clone();
                for (o, si) in other.iter_mut().zip(&s) {
                    if !ring.is_zero(si) {
                        *o = ring.add(o, &ring.mul(&c, si));
                    }
                }
                other[p] = ring.zero();
            }
            substitution[p] = Some(s);
        }
        if substitution.iter().all(Option::is_none) {
            let id = Morphism::identity(self);
            return Ok((self.clone(), id.clone(), id));
        }
        let kept: Vec<usize> = (0..g).filter(|&i| substitution[i].is_none()).collect();
        let project = |v: &[R::Elem]| -> Vec<R::Elem> { kept.iter().map(|&i| v[i].clone()).collect() };
        let h = kept.len();
        let mut to_columns = Vec::with_capacity(g);
        let mut next = 0;
        for sub in &substitution {
            match sub {
                None => {
                    to_columns.push(ring.unit_vector(h, next));
                    next += 1;
                }
                Some(s) => to_columns.push(project(s)),
            }
        }
        let new_relations: Vec<Vec<R::Elem>> = rels.iter().map(|r| project(r)).collect();
        let simplified = FPModule::from_relations(ring, h, &new_relations)?;
        let from = Matrix::from_columns(g, kept.iter().map(|&i| ring.unit_vector(g, i)).collect())?;
        let to = Morphism::new(self, &simplified, Matrix::from_columns(h, to_columns)?)?;
        let from = Morphism::new(&simplified, self, from)?;
        Ok((simplified, to, from))
    }
}

/// A verified module homomorphism.
///
/// `matrix` has shape `g_target × g_source`; `witness` records, for every
/// source relation `r`, coefficients `w` with `matrix·r = Σ wᵢ·(target relation i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism<R: Ring> {
    source: FPModule<R>,
    target: FPModule<R>,
    matrix: Matrix<R::Elem>,
    witness: Matrix<R::Elem>,
}

impl<R: Ring> Morphism<R> {
    pub fn new(source: &FPModule<R>, target: &FPModule<R>, matrix: Matrix<R::Elem>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch);
        }
        if matrix.nrows() != target.generators || matrix.ncols() != source.generators {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.generators,
                source.generators
            )));
        }
        let ring = &source.ring;
        let mut witness = Vec::with_capacity(source.relations.len());
        for (k, r) in source.relations.iter().enumerate() {
            let image = matrix.apply(ring, r);
            let red = ring.reduce(&image, &target.relations);
            if !ring.is_zero_vector(&red.remainder) {
                return Err(Error::NotWellDefined(format!(
                    "source relation {k} does not map into the target relations"
                )));
            }
            witness.push(red.quotients);
        }
        Ok(Morphism {
            source: source.clone(),
            target: target.clone(),
            witness: Matrix::from_columns(target.relations.len(), witness)?,
            matrix,
        })
    }

    pub fn identity(m: &FPModule<R>) -> Self {
        Morphism::new(m, m, Matrix::identity(&m.ring, m.generators)).expect("identity is well defined")
    }

    pub fn zero(source: &FPModule<R>, target: &FPModule<R>) -> Result<Self> {
        Morphism::new(source, target, Matrix::zero(&source.ring, target.generators, source.generators))
    }

    pub fn source(&self) -> &FPModule<R> {
        &self.source
    }

    pub fn target(&self) -> &FPModule<R> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<R::Elem> {
        &self.matrix
    }

    pub fn witness(&self) -> &Matrix<R::Elem> {
        &self.witness
    }

    pub fn ring(&self) -> &R {
        &self.source.ring
    }

    /// Re-check the stored well-definedness witness by exact arithmetic.
    pub fn verify_witness(&self) -> bool {
        let ring = self.ring();
        let lhs = self.matrix.mul(ring, &self.source.relation_matrix());
        let rhs = self.target.relation_matrix().mul(ring, &self.witness);
        matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
    }

    pub fn apply(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        self.matrix.apply(self.ring(), v)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism<R>) -> Result<Morphism<R>> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("composition of non-composable morphisms".into()));
        }
        Morphism::new(&first.source, &self.target, self.matrix.mul(self.ring(), &first.matrix)?)
    }

    /// Equality as maps: the matrices agree modulo the target relations.
    pub fn equals(&self, other: &Morphism<R>) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .matrix
                .columns()
                .iter()
                .zip(other.matrix.columns())
                .all(|(a, b)| self.target.is_zero_element(&self.ring().sub_vectors(a, b)))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero_element(c))
    }

    pub fn is_epi(&self) -> Result<bool> {
        Ok(cokernel(self)?.target().is_zero())
    }

    pub fn is_mono(&self) -> Result<bool> {
        Ok(kernel(self)?.source().is_zero())
    }

    pub fn is_iso(&self) -> Result<bool> {
        Ok(self.is_mono()? && self.is_epi()?)
    }
}

#[cfg(test)]
mod tests;
