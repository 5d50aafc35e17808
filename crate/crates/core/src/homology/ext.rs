use std::fmt;

use serde::{Deserialize, Serialize};

use super::resolution::{free_resolution, ResolutionComplex};
use crate::error::{Error, Result};
use crate::fpmod::{FPModule, Submodule};
use crate::groebner;
use crate::ring::{Matrix, Ring};

/// A grade or codimension: a nonnegative integer, or infinite for the zero module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GradeValue {
    Finite(usize),
    #[serde(with = "infinite")]
    Infinite,
}

mod infinite {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("infinite")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "infinite" {
            Ok(())
        } else {
            Err(serde::de::Error::custom("expected \"infinite\""))
        }
    }
}

impl GradeValue {
    pub fn at_least(self, c: usize) -> bool {
        match self {
            GradeValue::Finite(v) => v >= c,
            GradeValue::Infinite => true,
        }
    }
}

impl fmt::Display for GradeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradeValue::Finite(v) => write!(f, "{v}"),
            GradeValue::Infinite => f.write_str("infinite"),
        }
    }
}

/// The relations of `N^r`: each relation of `N` placed in each block.
fn block_relations<R: Ring>(ring: &R, n: &FPModule<R>, r: usize) -> Vec<Vec<R::Elem>> {
    let gn = n.generators();
    let mut out = Vec::with_capacity(r * n.relations().len());
    for b in 0..r {
        for rel in n.relations() {
            let mut v = ring.zero_vector(r * gn);
            v[b * gn..(b + 1) * gn].clone_from_slice(rel);
            out.push(v);
        }
    }
    out
}

/// `Hom(∂, N): N^{r_{i−1}} → N^{r_i}`, `φ ↦ φ ∘ ∂`, as the columns of
/// `∂ᵀ ⊗ I_n`.
fn hom_map<R: Ring>(ring: &R, d: &Matrix<R::Elem>, n: usize) -> Vec<Vec<R::Elem>> {
    let (rows, cols) = (d.nrows(), d.ncols());
    let mut out = Vec::with_capacity(rows * n);
    for l in 0..rows {
        for t in 0..n {
            let mut v = ring.zero_vector(cols * n);
            for j in 0..cols {
                v[j * n + t] = d.entry(l, j).clone();
            }
            out.push(v);
        }
    }
    out
}

/// `Ext^i(M, N)` from a resolution of `M` reaching at least `∂_{i+1}`.
pub fn ext_from_resolution<R: Ring>(res: &ResolutionComplex<R>, i: usize, n: &FPModule<R>) -> Result<FPModule<R>> {
    let ring = res.ring();
    let gn = n.generators();
    let ri = res
        .rank(i)
        .ok_or_else(|| Error::Precondition(format!("resolution too short for Ext^{i}")))?;
    let next = res
        .differential(i + 1)
        .ok_or_else(|| Error::Precondition(format!("resolution too short for Ext^{i}")))?;
    let dim = ri * gn;
    if dim == 0 {
        return Ok(FPModule::zero(ring));
    }
    let r_next = next.ncols();
    // cocycles: φ with φ∘∂_{i+1} ≡ 0 in N^{r_{i+1}}
    let own = block_relations(ring, n, ri);
    let cocycles: Vec<Vec<R::Elem>> = if r_next == 0 {
        (0..dim).map(|k| ring.unit_vector(dim, k)).collect()
    } else {
        let mut cols = hom_map(ring, &next, gn);
        cols.extend(block_relations(ring, n, r_next));
        groebner::syzygies(ring, &cols, r_next * gn)?
            .into_iter()
            .map(|s| s[..dim].to_vec())
            .filter(|s| !ring.is_zero_vector(s))
            .collect()
    };
    let mut boundaries = own.clone();
    if i >= 1 {
        let d = res.differential(i).expect("resolution covers ∂_i");
        boundaries.extend(hom_map(ring, &d, gn));
    }
    let mut numerator = cocycles;
    numerator.extend(boundaries.iter().cloned());
    let (module, _) = crate::fpmod::subquotient(ring, dim, &numerator, &boundaries)?;
    Ok(module.simplify()?.0)
}

/// `Ext^i(M, N)` as a finitely presented module.
pub fn ext<R: Ring>(i: usize, m: &FPModule<R>, n: &FPModule<R>) -> Result<FPModule<R>> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    let res = free_resolution(m, i + 1)?;
    ext_from_resolution(&res, i, n)
}

/// The least `i` with `Ext^i(T, R) ≠ 0`; infinite iff `T = 0`.
pub fn grade<R: Ring>(t: &FPModule<R>) -> Result<GradeValue> {
    if t.is_zero() {
        return Ok(GradeValue::Infinite);
    }
    let ring = t.ring();
    let cap = ring.global_dimension();
    let res = free_resolution(t, cap + 1)?;
    let r = FPModule::free(ring, 1);
    for i in 0..=cap {
        if !ext_from_resolution(&res, i, &r)?.is_zero() {
            return Ok(GradeValue::Finite(i));
        }
    }
    Err(Error::Inconsistent(format!(
        "all Ext^i(T, R) vanish for i ≤ {cap} on a nonzero module"
    )))
}

/// `Ann(T) = ⋂ᵢ (K : eᵢ)` as an ideal of `R`.
pub fn annihilator<R: Ring>(t: &FPModule<R>) -> Result<Submodule<R>> {
    let ring = t.ring();
    let g = t.generators();
    let mut ideal = Submodule::full(ring, 1);
    for i in 0..g {
        let mut cols = vec![ring.unit_vector(g, i)];
        cols.extend(t.relations().iter().cloned());
        let colon: Vec<Vec<R::Elem>> = groebner::syzygies(ring, &cols, g)?
            .into_iter()
            .map(|s| vec![s[0].clone()])
            .collect();
        ideal = ideal.intersect(&Submodule::new(ring, 1, &colon)?)?;
        if ideal.is_zero() {
            break;
        }
    }
    Ok(ideal)
}

/// `codim Ann(T) = dim R − dim R/Ann(T)`; infinite for `T = 0`.
pub fn codimension<R: Ring>(t: &FPModule<R>) -> Result<GradeValue> {
    let ring = t.ring();
    let ann = annihilator(t)?;
    let gens: Vec<R::Elem> = ann.generators().iter().map(|v| v[0].clone()).collect();
    match ring.quotient_dimension(&gens)? {
        None => Ok(GradeValue::Infinite),
        Some(d) => Ok(GradeValue::Finite(ring.global_dimension() - d)),
    }
}
