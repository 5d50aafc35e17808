//! Syzygies, lifts and intersections for any [`Ring`] backend.
//!
//! All routines reduce to one construction: the standard basis of the
//! augmented vectors `(gᵢ ; eᵢ) ∈ R^{q+m}`. Under position-over-term the
//! basis elements whose first `q` coordinates vanish form a standard basis of
//! `0 ⊕ Syz(g)`, and reducing `(t ; 0)` decides `t ∈ ⟨g⟩` while producing the
//! coefficients in the tail.

use crate::error::{Error, Result};
use crate::ring::{Matrix, Ring};

/// Standard basis of the augmented generator list, reusable for many lifts.
#[derive(Debug, Clone)]
pub struct TrackedBasis<R: Ring> {
    rank: usize,
    ngens: usize,
    basis: Vec<Vec<R::Elem>>,
}

impl<R: Ring> TrackedBasis<R> {
    pub fn new(ring: &R, gens: &[Vec<R::Elem>], rank: usize) -> Result<Self> {
        check_rank(gens, rank)?;
        let m = gens.len();
        let augmented: Vec<Vec<R::Elem>> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut v = g.clone();
                v.extend(ring.unit_vector(m, i));
                v
            })
            .collect();
        let basis = ring.standard_basis(&augmented, rank + m)?;
        Ok(TrackedBasis {
            rank,
            ngens: m,
            basis,
        })
    }

    /// Coefficients `c` with `Σ cᵢ·gᵢ = target`, or `None` if `target ∉ ⟨g⟩`.
    pub fn lift(&self, ring: &R, target: &[R::Elem]) -> Option<Vec<R::Elem>> {
        debug_assert_eq!(target.len(), self.rank);
        let mut v = target.to_vec();
        v.extend(ring.zero_vector(self.ngens));
        let red = ring.reduce(&v, &self.basis);
        if !ring.is_zero_vector(&red.remainder[..self.rank]) {
            return None;
        }
        Some(red.remainder[self.rank..].iter().map(|c| ring.neg(c)).collect())
    }

    /// Standard basis of the syzygy module of the generators.
    pub fn syzygies(&self, ring: &R) -> Vec<Vec<R::Elem>> {
        self.basis
            .iter()
            .filter(|b| ring.is_zero_vector(&b[..self.rank]))
            .map(|b| b[self.rank..].to_vec())
            .collect()
    }
}

fn check_rank<E>(gens: &[Vec<E>], rank: usize) -> Result<()> {
    match gens.iter().find(|g| g.len() != rank) {
        Some(g) => Err(Error::DimensionMismatch(format!(
            "vector of length {} in R^{rank}",
            g.len()
        ))),
        None => Ok(()),
    }
}

/// Generators (a standard basis) of the module of relations among `gens`.
pub fn syzygies<R: Ring>(ring: &R, gens: &[Vec<R::Elem>], rank: usize) -> Result<Vec<Vec<R::Elem>>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    Ok(TrackedBasis::new(ring, gens, rank)?.syzygies(ring))
}

/// Syzygies of the columns of `mat`, as the columns of an `ncols × s` matrix.
pub fn syzygy_matrix<R: Ring>(ring: &R, mat: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    let s = syzygies(ring, mat.columns(), mat.nrows())?;
    Matrix::from_columns(mat.ncols(), s)
}

pub fn lift<R: Ring>(
    ring: &R,
    target: &[R::Elem],
    gens: &[Vec<R::Elem>],
    rank: usize,
) -> Result<Option<Vec<R::Elem>>> {
    check_rank(std::slice::from_ref(&target.to_vec()), rank)?;
    if ring.is_zero_vector(target) {
        return Ok(Some(ring.zero_vector(gens.len())));
    }
    Ok(TrackedBasis::new(ring, gens, rank)?.lift(ring, target))
}

/// Lift several targets against the same generators.
pub fn lift_many<R: Ring>(
    ring: &R,
    targets: &[Vec<R::Elem>],
    gens: &[Vec<R::Elem>],
    rank: usize,
) -> Result<Vec<Option<Vec<R::Elem>>>> {
    check_rank(targets, rank)?;
    if targets.iter().all(|t| ring.is_zero_vector(t)) {
        return Ok(targets.iter().map(|_| Some(ring.zero_vector(gens.len()))).collect());
    }
    let tb = TrackedBasis::new(ring, gens, rank)?;
    Ok(targets.iter().map(|t| tb.lift(ring, t)).collect())
}

/// Membership test against a standard basis.
pub fn contains<R: Ring>(ring: &R, basis: &[Vec<R::Elem>], v: &[R::Elem]) -> bool {
    ring.is_zero_vector(&ring.reduce(v, basis).remainder)
}

/// Standard basis of `⟨u⟩ ∩ ⟨v⟩` in `R^rank`.
///
/// Uses the vectors `(uᵢ ; uᵢ)` and `(vⱼ ; 0)` in `R^{2q}`: an element with
/// vanishing top half has bottom half `Σaᵢuᵢ = −Σbⱼvⱼ`.
pub fn intersect<R: Ring>(
    ring: &R,
    u: &[Vec<R::Elem>],
    v: &[Vec<R::Elem>],
    rank: usize,
) -> Result<Vec<Vec<R::Elem>>> {
    check_rank(u, rank)?;
    check_rank(v, rank)?;
    if u.is_empty() || v.is_empty() {
        return Ok(Vec::new());
    }
    let mut gens: Vec<Vec<R::Elem>> = u
        .iter()
        .map(|x| x.iter().chain(x.iter()).cloned().collect())
        .collect();
    gens.extend(v.iter().map(|y| {
        let mut w = y.clone();
        w.extend(ring.zero_vector(rank));
        w
    }));
    let basis = ring.standard_basis(&gens, 2 * rank)?;
    Ok(basis
        .into_iter()
        .filter(|b| ring.is_zero_vector(&b[..rank]))
        .map(|b| b[rank..].to_vec())
        .collect())
}

/// Equality of submodules by mutual membership.
pub fn submodule_equal<R: Ring>(
    ring: &R,
    u: &[Vec<R::Elem>],
    v: &[Vec<R::Elem>],
    rank: usize,
) -> Result<bool> {
    check_rank(u, rank)?;
    check_rank(v, rank)?;
    let bu = ring.standard_basis(u, rank)?;
    let bv = ring.standard_basis(v, rank)?;
    Ok(v.iter().all(|x| contains(ring, &bu, x)) && u.iter().all(|x| contains(ring, &bv, x)))
}
