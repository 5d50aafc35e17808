//! Smith normal form over the integers, and closed-form homological
//! invariants of finitely generated abelian groups derived from it.
//!
//! This module works on plain integer arrays and never calls the standard
//! basis engine, so it can serve as an independent check of it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::fpmod::FPModule;
use crate::homology::GradeValue;
use crate::ring::IntegerRing;

type IntMatrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn multiply(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination.
fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * prev
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmithDecomposition {
    pub rows: usize,
    pub cols: usize,
    pub u: IntMatrix,
    /// `U⁻¹`, kept alongside `U`.
    pub u_inverse: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }

    /// Re-check every invariant of the decomposition by exact arithmetic.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let uav = multiply(&multiply(&self.u, a, self.rows, self.cols), &self.v, self.cols, self.cols);
        if uav != self.d {
            return false;
        }
        if multiply(&self.u, &self.u_inverse, self.rows, self.rows) != identity(self.rows) {
            return false;
        }
        if determinant(&self.u).abs() != BigInt::one() || determinant(&self.v).abs() != BigInt::one() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.d[i][j].is_zero() {
                    return false;
                }
            }
        }
        let diag: Vec<BigInt> = (0..self.rows.min(self.cols)).map(|i| self.d[i][i].clone()).collect();
        diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
            })
    }
}

struct Elimination {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Elimination {
    /// `row_i ← row_i − q·row_t`.
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[t].clone();
            for (x, s) in m[i].iter_mut().zip(&src) {
                *x -= q * s;
            }
        }
        for row in self.u_inv.iter_mut() {
            let add = q * &row[i];
            row[t] += add;
        }
    }

    fn row_swap(&mut self, i: usize, t: usize) {
        self.a.swap(i, t);
        self.u.swap(i, t);
        for row in self.u_inv.iter_mut() {
            row.swap(i, t);
        }
    }

    fn row_negate(&mut self, t: usize) {
        for x in self.a[t].iter_mut().chain(self.u[t].iter_mut()) {
            *x = -std::mem::take(x);
        }
        for row in self.u_inv.iter_mut() {
            row[t] = -std::mem::take(&mut row[t]);
        }
    }

    /// `col_j ← col_j − q·col_t`.
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let sub = q * &row[t];
                row[j] -= sub;
            }
        }
    }

    fn col_swap(&mut self, j: usize, t: usize) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row.swap(j, t);
            }
        }
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
pub fn smith_normal_form(a: &IntMatrix, cols: usize) -> SmithDecomposition {
    let rows = a.len();
    let mut e = Elimination {
        a: a.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
    };
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !e.a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| e.a[i][j].abs().cmp(&e.a[k][l].abs()));
            let Some((pi, pj)) = pivot else {
                break;
            };
            if pi != t {
                e.row_swap(pi, t);
            }
            if pj != t {
                e.col_swap(pj, t);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if !e.a[i][t].is_zero() {
                    let q = e.a[i][t].div_floor(&e.a[t][t]);
                    e.row_sub(i, t, &q);
                    clean &= e.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !e.a[t][j].is_zero() {
                    let q = e.a[t][j].div_floor(&e.a[t][t]);
                    e.col_sub(j, t, &q);
                    clean &= e.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold a non-multiple into row t and start over
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&e.a[i][j] % &e.a[t][t]).is_zero()));
            match bad {
                Some(i) => e.row_sub(t, i, &-BigInt::one()),
                None => break,
            }
        }
        if t < rows && t < cols && e.a[t][t].is_negative() {
            e.row_negate(t);
        }
    }
    SmithDecomposition {
        rows,
        cols,
        u: e.u,
        u_inverse: e.u_inv,
        v: e.v,
        d: e.a,
    }
}

/// `M ≅ ℤ^free_rank ⊕ ⊕ ℤ/dᵢ` for `M = ℤ^g / (column span of ∂)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    pub free_rank: usize,
    /// Invariant factors `dᵢ > 1`, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl GroupStructure {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &GroupStructure) -> GroupStructure {
        // re-normalize the combined factors through a diagonal matrix
        let mut diag = self.torsion.clone();
        diag.extend(other.torsion.iter().cloned());
        let n = diag.len();
        let m: IntMatrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { diag[i].clone() } else { BigInt::zero() }).collect())
            .collect();
        GroupStructure {
            free_rank: self.free_rank + other.free_rank,
            torsion: structure_of(&m, n, n).torsion,
        }
    }
}

fn structure_of(relations_rows: &IntMatrix, g: usize, r: usize) -> GroupStructure {
    let snf = smith_normal_form(relations_rows, r);
    let diag = snf.diagonal();
    GroupStructure {
        free_rank: g - diag.len(),
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Rows of the `g × r` presentation matrix of an integer module.
fn presentation(m: &FPModule<IntegerRing>) -> (IntMatrix, usize, usize) {
    let g = m.generators();
    let r = m.relations().len();
    let rows = (0..g).map(|i| m.relations().iter().map(|c| c[i].clone()).collect()).collect();
    (rows, g, r)
}

pub fn group_structure(m: &FPModule<IntegerRing>) -> GroupStructure {
    let (rows, g, r) = presentation(m);
    structure_of(&rows, g, r)
}

/// Closed forms for a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleHomology {
    pub structure: GroupStructure,
    /// `tor(M)` (the finite part).
    pub torsion: GroupStructure,
    /// `M* ≅ ℤ^f`.
    pub dual: GroupStructure,
    /// `Ext¹(M, ℤ) ≅ tor(M)`.
    pub ext1: GroupStructure,
    pub grade: GradeValue,
    /// Preimage of `tor(M)` in `ℤ^g`, as generating vectors.
    pub torsion_preimage: Vec<Vec<BigInt>>,
}

pub fn oracle_homology(m: &FPModule<IntegerRing>) -> OracleHomology {
    let (rows, g, r) = presentation(m);
    let snf = smith_normal_form(&rows, r);
    let rank = snf.rank();
    let structure = GroupStructure {
        free_rank: g - rank,
        torsion: snf.diagonal().into_iter().filter(|d| !d.is_one()).collect(),
    };
    let torsion = GroupStructure {
        free_rank: 0,
        torsion: structure.torsion.clone(),
    };
    let dual = GroupStructure {
        free_rank: structure.free_rank,
        torsion: Vec::new(),
    };
    let grade = if structure.free_rank > 0 {
        GradeValue::Finite(0)
    } else if structure.is_zero() {
        GradeValue::Infinite
    } else {
        GradeValue::Finite(1)
    };
    // in the coordinates y = U·x the relations are the diagonal, so the
    // torsion preimage is spanned by the first `rank` columns of U⁻¹
    let torsion_preimage = (0..rank)
        .map(|k| (0..g).map(|i| snf.u_inverse[i][k].clone()).collect())
        .collect();
    OracleHomology {
        ext1: torsion.clone(),
        structure,
        torsion,
        dual,
        grade,
        torsion_preimage,
    }
}

/// For a short exact sequence `0 → A → N → T → 0` of finitely generated
/// abelian groups: does `N ≅ A ⊕ T` (equivalently, does it split)?
pub fn oracle_splits(a: &FPModule<IntegerRing>, n: &FPModule<IntegerRing>, t: &FPModule<IntegerRing>) -> bool {
    group_structure(n) == group_structure(a).direct_sum(&group_structure(t))
}
