use super::{FPModule, Morphism};
use crate::error::{Error, Result};
use crate::groebner;
use crate::ring::{Matrix, Ring};

/// A submodule of `R^q`, stored as its standard basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Submodule<R: Ring> {
    ring: R,
    rank: usize,
    basis: Vec<Vec<R::Elem>>,
}

impl<R: Ring> Submodule<R> {
    pub fn new(ring: &R, rank: usize, gens: &[Vec<R::Elem>]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != rank) {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in R^{rank}",
                g.len()
            )));
        }
        Ok(Submodule {
            ring: ring.clone(),
            rank,
            basis: ring.standard_basis(gens, rank)?,
        })
    }

    pub fn zero(ring: &R, rank: usize) -> Self {
        Submodule {
            ring: ring.clone(),
            rank,
            basis: Vec::new(),
        }
    }

    /// The whole of `R^rank`.
    pub fn full(ring: &R, rank: usize) -> Self {
        Submodule {
            ring: ring.clone(),
            rank,
            basis: (0..rank).map(|i| ring.unit_vector(rank, i)).collect(),
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<R::Elem>] {
        &self.basis
    }

    pub fn generator_matrix(&self) -> Matrix<R::Elem> {
        Matrix::from_columns(self.rank, self.basis.clone()).expect("shape")
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[R::Elem]) -> bool {
        groebner::contains(&self.ring, &self.basis, v)
    }

    pub fn contains_submodule(&self, other: &Submodule<R>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn is_full(&self) -> bool {
        (0..self.rank).all(|i| self.contains(&self.ring.unit_vector(self.rank, i)))
    }

    fn check(&self, other: &Submodule<R>) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch(format!(
                "submodules of R^{} and R^{}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    pub fn equals(&self, other: &Submodule<R>) -> Result<bool> {
        self.check(other)?;
        Ok(self.contains_submodule(other) && other.contains_submodule(self))
    }

    pub fn intersect(&self, other: &Submodule<R>) -> Result<Submodule<R>> {
        self.check(other)?;
        let basis = groebner::intersect(&self.ring, &self.basis, &other.basis, self.rank)?;
        Ok(Submodule {
            ring: self.ring.clone(),
            rank: self.rank,
            basis,
        })
    }

    pub fn sum(&self, other: &Submodule<R>) -> Result<Submodule<R>> {
        self.check(other)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Submodule::new(&self.ring, self.rank, &gens)
    }

    /// Image under an `m × rank` matrix.
    pub fn map(&self, mat: &Matrix<R::Elem>) -> Result<Submodule<R>> {
        if mat.ncols() != self.rank {
            return Err(Error::DimensionMismatch("matrix does not act on this ambient".into()));
        }
        let gens: Vec<_> = self.basis.iter().map(|v| mat.apply(&self.ring, v)).collect();
        Submodule::new(&self.ring, mat.nrows(), &gens)
    }

    /// `R^rank / self`.
    pub fn quotient(&self) -> FPModule<R> {
        FPModule {
            ring: self.ring.clone(),
            generators: self.rank,
            relations: self.basis.clone(),
        }
    }

    /// The submodule as an abstract module: generated by the basis vectors,
    /// presented by their syzygies; plus the inclusion into `R^rank`.
    pub fn as_module(&self) -> Result<(FPModule<R>, Morphism<R>)> {
        let syz = groebner::syzygies(&self.ring, &self.basis, self.rank)?;
        let m = FPModule::from_relations(&self.ring, self.basis.len(), &syz)?;
        let inclusion = Morphism::new(&m, &FPModule::free(&self.ring, self.rank), self.generator_matrix())?;
        Ok((m, inclusion))
    }
}
