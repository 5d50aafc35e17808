//! Seeded generators for randomized checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng as _, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fpmod::FPModule;
use crate::ring::{IntegerRing, Monomial, PolyRing, Polynomial, Ring};

/// The generator every seeded entry point uses.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyShape {
    pub max_degree: u32,
    pub max_terms: usize,
    /// Coefficients are drawn from `[-coeff, coeff]`.
    pub coeff: i64,
    /// Probability in percent that an entry is zero.
    pub zero_percent: u32,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape {
            max_degree: 2,
            max_terms: 3,
            coeff: 3,
            zero_percent: 25,
        }
    }
}

fn random_exponents(n: usize, max_degree: u32, rng: &mut impl RngCore) -> Vec<u32> {
    let total = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; n];
    if n > 0 {
        for _ in 0..total {
            exps[rng.gen_range(0..n)] += 1;
        }
    }
    exps
}

/// A polynomial that may be zero (see [`PolyShape::zero_percent`]).
pub fn polynomial(ring: &PolyRing, shape: PolyShape, rng: &mut impl RngCore) -> Polynomial {
    if rng.gen_range(0..100) < shape.zero_percent {
        return Polynomial::zero();
    }
    let mut p = Polynomial::zero();
    for _ in 0..rng.gen_range(1..=shape.max_terms.max(1)) {
        let c = rng.gen_range(-shape.coeff..=shape.coeff);
        if c == 0 {
            continue;
        }
        let m = Monomial::new(&random_exponents(ring.nvars(), shape.max_degree, rng));
        p = ring.add(&p, &ring.term(m, BigRational::from_integer(c.into())));
    }
    p
}

pub fn vectors(ring: &PolyRing, rank: usize, count: usize, shape: PolyShape, rng: &mut impl RngCore) -> Vec<Vec<Polynomial>> {
    (0..count)
        .map(|_| (0..rank).map(|_| polynomial(ring, shape, rng)).collect())
        .collect()
}

/// `R^g` modulo `relations` random vectors.
pub fn module(ring: &PolyRing, g: usize, relations: usize, shape: PolyShape, rng: &mut impl RngCore) -> Result<FPModule<PolyRing>> {
    FPModule::from_relations(ring, g, &vectors(ring, g, relations, shape, rng))
}

/// Row-major integer matrix with entries in `[-bound, bound]`.
pub fn integer_matrix(rows: usize, cols: usize, bound: i64, rng: &mut impl RngCore) -> Vec<Vec<BigInt>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
        .collect()
}

/// `ℤ^rows` modulo the columns of a random `rows × cols` matrix.
pub fn integer_module(rows: usize, cols: usize, bound: i64, rng: &mut impl RngCore) -> Result<FPModule<IntegerRing>> {
    let m = integer_matrix(rows, cols, bound, rng);
    let relations: Vec<Vec<BigInt>> = (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect();
    FPModule::from_relations(&IntegerRing, rows, &relations)
}
