use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Monomial orders supported by the polynomial backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "degrevlex" => Some(MonomialOrder::DegRevLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }

    #[inline]
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(&a.exps, &b.exps),
            MonomialOrder::DegRevLex => a
                .degree
                .cmp(&b.degree)
                .then_with(|| revlex(&a.exps, &b.exps)),
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

// Ties broken on the last variable: the smaller exponent there wins.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Compare two exponent vectors under `order`.
pub fn monomial_compare(a: &[u32], b: &[u32], order: MonomialOrder) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "exponent vectors of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(order.compare(&Monomial::new(a), &Monomial::new(b)))
}

/// A power product `x₁^e₁ ⋯ xₙ^eₙ` with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 4]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree: exps.iter().sum(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 4]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degrevlex_examples() {
        // x^2 vs xy
        assert_eq!(
            monomial_compare(&[2, 0], &[1, 1], MonomialOrder::DegRevLex).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            monomial_compare(&[1, 2], &[1, 2], MonomialOrder::Lex).unwrap(),
            Ordering::Equal
        );
        // y^3 vs x under lex
        assert_eq!(
            monomial_compare(&[0, 3], &[1, 0], MonomialOrder::Lex).unwrap(),
            Ordering::Less
        );
        // degrevlex differs from deglex: xz^2 < y^3? degree 3 both, last var z: 2 vs 0
        assert_eq!(
            monomial_compare(&[1, 0, 2], &[0, 3, 0], MonomialOrder::DegRevLex).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn length_mismatch() {
        assert!(monomial_compare(&[1], &[1, 0], MonomialOrder::Lex).is_err());
    }

    fn exps(n: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..4, n)
    }

    proptest! {
        #[test]
        fn total_order(a in exps(3), b in exps(3), c in exps(3)) {
            for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
                let ab = monomial_compare(&a, &b, order).unwrap();
                let ba = monomial_compare(&b, &a, order).unwrap();
                prop_assert_eq!(ab, ba.reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                let bc = monomial_compare(&b, &c, order).unwrap();
                if ab != Ordering::Greater && bc != Ordering::Greater {
                    prop_assert_ne!(monomial_compare(&a, &c, order).unwrap(), Ordering::Greater);
                }
                // multiplicative
                let (ma, mb, mc) = (Monomial::new(&a), Monomial::new(&b), Monomial::new(&c));
                prop_assert_eq!(order.compare(&ma.mul(&mc), &mb.mul(&mc)), ab);
            }
        }

        #[test]
        fn degree_first_agreement(a in exps(3), b in exps(3)) {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            if da != db {
                prop_assert_eq!(
                    monomial_compare(&a, &b, MonomialOrder::DegRevLex).unwrap(),
                    da.cmp(&db)
                );
            }
        }
    }
}
