use crate::error::{Error, Result};
use crate::fpmod::FPModule;
use crate::groebner;
use crate::ring::{Matrix, Ring};

/// A free resolution `… → F₂ → F₁ → F₀ → M → 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionComplex<R: Ring> {
    ring: R,
    /// `g × r₀`: images of the basis of `F₀` in the generators of `M`.
    augmentation: Matrix<R::Elem>,
    /// `differentials[i]` is `∂_{i+1}: F_{i+1} → F_i`, an `r_i × r_{i+1}` matrix.
    differentials: Vec<Matrix<R::Elem>>,
    /// The last computed syzygy module was zero.
    complete: bool,
}

impl<R: Ring> ResolutionComplex<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn augmentation(&self) -> &Matrix<R::Elem> {
        &self.augmentation
    }

    pub fn differentials(&self) -> &[Matrix<R::Elem>] {
        &self.differentials
    }

    /// `∂_i: F_i → F_{i−1}` for `i ≥ 1`; the zero map beyond the computed
    /// range of a complete resolution.
    pub fn differential(&self, i: usize) -> Option<Matrix<R::Elem>> {
        assert!(i >= 1);
        if let Some(d) = self.differentials.get(i - 1) {
            return Some(d.clone());
        }
        if self.complete {
            Some(Matrix::zero(&self.ring, self.rank(i - 1)?, 0))
        } else {
            None
        }
    }

    /// `rank F_i`.
    pub fn rank(&self, i: usize) -> Option<usize> {
        if i == 0 {
            return Some(self.augmentation.ncols());
        }
        match self.differentials.get(i - 1) {
            Some(d) => Some(d.ncols()),
            None if self.complete => Some(0),
            None => None,
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![self.augmentation.ncols()];
        r.extend(self.differentials.iter().map(Matrix::ncols));
        r
    }

    /// Number of nonzero differentials.
    pub fn length(&self) -> usize {
        self.differentials.iter().filter(|d| d.ncols() > 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Checks `∂_i ∘ ∂_{i+1} = 0` and exactness at every interior spot, and
    /// that the augmentation presents `M`.
    pub fn verify(&self, m: &FPModule<R>) -> Result<bool> {
        let ring = &self.ring;
        let aug = &self.augmentation;
        // F₀ → M is onto and its kernel is im ∂₁
        let mut cover = aug.columns().to_vec();
        cover.extend(m.relations().iter().cloned());
        let all: Vec<Vec<R::Elem>> = (0..m.generators()).map(|i| ring.unit_vector(m.generators(), i)).collect();
        if !groebner::submodule_equal(ring, &cover, &all, m.generators())? {
            return Ok(false);
        }
        let mut cols = aug.columns().to_vec();
        cols.extend(m.relations().iter().cloned());
        let r0 = aug.ncols();
        let ker: Vec<Vec<R::Elem>> = groebner::syzygies(ring, &cols, m.generators())?
            .into_iter()
            .map(|s| s[..r0].to_vec())
            .collect();
        let d1 = self.differential(1).unwrap_or_else(|| Matrix::zero(ring, r0, 0));
        if !groebner::submodule_equal(ring, &ker, d1.columns(), r0)? {
            return Ok(false);
        }
        for (i, d) in self.differentials.iter().enumerate() {
            let next = match self.differentials.get(i + 1) {
                Some(n) => n.clone(),
                None if self.complete => Matrix::zero(ring, d.ncols(), 0),
                None => break,
            };
            if !d.mul(ring, &next)?.is_zero(ring) {
                return Ok(false);
            }
            let ker = groebner::syzygies(ring, d.columns(), d.nrows())?;
            if !groebner::submodule_equal(ring, &ker, next.columns(), d.ncols())? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Split off a trivial summand `0 → R → R → 0` at a unit entry `(i, j)` of
/// `maps[k]`. `maps[0]` is the augmentation, `maps[k]` for `k ≥ 1` is `∂_k`.
fn prune_at<R: Ring>(ring: &R, maps: &mut [Matrix<R::Elem>], k: usize, i: usize, j: usize) {
    let d = &maps[k];
    let u = ring.unit_inverse(d.entry(i, j)).expect("unit pivot");
    let pivot_col = d.column(j).to_vec();
    let keep_rows: Vec<usize> = (0..d.nrows()).filter(|&r| r != i).collect();
    let mut new_cols = Vec::with_capacity(d.ncols() - 1);
    for (c, col) in d.columns().iter().enumerate() {
        if c == j {
            continue;
        }
        let factor = ring.mul(&col[i], &u);
        let adjusted = if ring.is_zero(&factor) {
            col.clone()
        } else {
            ring.sub_vectors(col, &ring.scale_vector(&factor, &pivot_col))
        };
        new_cols.push(keep_rows.iter().map(|&r| adjusted[r].clone()).collect());
    }
    maps[k] = Matrix::from_columns(keep_rows.len(), new_cols).expect("shape");
    let prev = &maps[k - 1];
    let keep_cols: Vec<usize> = (0..prev.ncols()).filter(|&c| c != i).collect();
    maps[k - 1] = prev.select_columns(&keep_cols);
    if let Some(next) = maps.get(k + 1) {
        let keep: Vec<usize> = (0..next.nrows()).filter(|&r| r != j).collect();
        maps[k + 1] = next.select_rows(&keep);
    }
}

fn find_unit<R: Ring>(ring: &R, d: &Matrix<R::Elem>) -> Option<(usize, usize)> {
    d.columns()
        .iter()
        .enumerate()
        .find_map(|(j, col)| col.iter().position(|a| ring.is_unit(a)).map(|i| (i, j)))
}

/// A free resolution of `M` with `length` differentials (fewer if the
/// resolution terminates). Unit entries are split off after every syzygy
/// step, so the ranks do not carry trivial summands.
pub fn free_resolution<R: Ring>(m: &FPModule<R>, length: usize) -> Result<ResolutionComplex<R>> {
    if length == 0 {
        return Err(Error::Precondition("resolution length must be at least 1".into()));
    }
    let ring = m.ring();
    let g = m.generators();
    let mut maps = vec![Matrix::identity(ring, g), m.relation_matrix()];
    let mut complete = false;
    loop {
        // prune every unit entry of the newest differential
        let k = maps.len() - 1;
        while let Some((i, j)) = find_unit(ring, &maps[k]) {
            prune_at(ring, &mut maps, k, i, j);
        }
        if maps[k].ncols() == 0 {
            complete = true;
            break;
        }
        if k == length {
            break;
        }
        let syz = groebner::syzygy_matrix(ring, &maps[k])?;
        maps.push(syz);
    }
    let augmentation = maps.remove(0);
    let mut differentials = maps;
    while complete && differentials.last().is_some_and(|d| d.ncols() == 0) {
        differentials.pop();
    }
    Ok(ResolutionComplex {
        ring: ring.clone(),
        augmentation,
        differentials,
        complete,
    })
}
