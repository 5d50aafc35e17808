use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Reduction, Ring, RingDescriptor};
use crate::error::{Error, Result};

/// The integers, a PID. Submodules of `ℤ^q` are kept in Hermite normal form:
/// row echelon on leading positions, positive pivots, and every entry sitting
/// in another basis vector's pivot column reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerRing;

impl IntegerRing {
    pub fn new() -> Self {
        IntegerRing
    }
}

fn leading_position(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|a| !a.is_zero())
}

fn axpy(v: &mut [BigInt], q: &BigInt, w: &[BigInt]) {
    // v -= q * w
    for (a, b) in v.iter_mut().zip(w) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

impl Ring for IntegerRing {
    type Elem = BigInt;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::integers()
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn embed_integer(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn embed_rational(&self, q: &BigRational) -> Option<BigInt> {
        q.is_integer().then(|| q.to_integer())
    }

    fn variable(&self, _name: &str) -> Option<BigInt> {
        None
    }

    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }

    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }

    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn global_dimension(&self) -> usize {
        1
    }

    fn quotient_dimension(&self, _ideal: &[BigInt]) -> Result<Option<usize>> {
        Err(Error::Unsupported("dimension of quotients is only implemented for polynomial rings".into()))
    }

    fn standard_basis(&self, gens: &[Vec<BigInt>], rank: usize) -> Result<Vec<Vec<BigInt>>> {
        let mut pending: Vec<Vec<BigInt>> = gens
            .iter()
            .filter(|v| !self.is_zero_vector(v))
            .cloned()
            .collect();
        let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
        for p in 0..rank {
            let (mut active, rest): (Vec<_>, Vec<_>) =
                pending.into_iter().partition(|v| !v[p].is_zero());
            pending = rest;
            // Euclid on column p
            while active.len() > 1 {
                let k = (0..active.len())
                    .min_by(|&i, &j| active[i][p].abs().cmp(&active[j][p].abs()).then(i.cmp(&j)))
                    .unwrap();
                let pivot = active.swap_remove(k);
                let mut next = vec![pivot.clone()];
                for mut v in active {
                    let q = &v[p] / &pivot[p];
                    axpy(&mut v, &q, &pivot);
                    if v[p].is_zero() {
                        if !self.is_zero_vector(&v) {
                            pending.push(v);
                        }
                    } else {
                        next.push(v);
                    }
                }
                active = next;
            }
            if let Some(mut v) = active.pop() {
                if v[p].is_negative() {
                    v.iter_mut().for_each(|a| *a = -&*a);
                }
                basis.push((p, v));
            }
        }
        for k in 0..basis.len() {
            let (p, pivot) = basis[k].clone();
            for entry in basis.iter_mut().take(k) {
                let q = entry.1[p].div_floor(&pivot[p]);
                if !q.is_zero() {
                    axpy(&mut entry.1, &q, &pivot);
                }
            }
        }
        Ok(basis.into_iter().map(|(_, v)| v).collect())
    }

    fn reduce(&self, v: &[BigInt], basis: &[Vec<BigInt>]) -> Reduction<BigInt> {
        let mut rem = v.to_vec();
        let mut quotients = Vec::with_capacity(basis.len());
        for b in basis {
            let Some(p) = leading_position(b) else {
                quotients.push(BigInt::zero());
                continue;
            };
            let q = rem[p].div_floor(&b[p]);
            if !q.is_zero() {
                axpy(&mut rem, &q, b);
            }
            quotients.push(q);
        }
        Reduction {
            quotients,
            remainder: rem,
        }
    }
}
