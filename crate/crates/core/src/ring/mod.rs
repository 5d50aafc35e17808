//! Exact arithmetic for the supported base rings.
//!
//! Two backends implement [`Ring`]: [`PolyRing`], multivariate polynomials
//! over the rationals with a monomial order, and [`IntegerRing`]. Besides
//! element arithmetic every backend supplies a *module engine*: a canonical
//! standard basis for submodules of `R^q` (reduced Gröbner basis, or Hermite
//! normal form over the integers) together with division with quotients.
//! Everything downstream (syzygies, lifts, kernels, Ext) is written against
//! that engine and works for both backends.
//!
//! Vectors of `R^q` are plain `Vec<Elem>`. Submodule standard bases use
//! position-over-term: the first nonzero coordinate of a vector is its
//! leading position.

mod integer;
mod matrix;
mod monomial;
mod parse;
mod poly;

pub use integer::IntegerRing;
pub use matrix::Matrix;
pub use monomial::{monomial_compare, Monomial, MonomialOrder};
pub use parse::parse_element;
pub use poly::{PolyRing, Polynomial};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Result of dividing a vector by a standard basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction<E> {
    /// One coefficient per basis element: `v = Σ quotients[k]·basis[k] + remainder`.
    pub quotients: Vec<E>,
    pub remainder: Vec<E>,
}

/// A computable commutative Noetherian domain together with its module engine.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn descriptor(&self) -> RingDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn embed_integer(&self, n: &BigInt) -> Self::Elem;
    /// `None` when the rational is not an element of the ring.
    fn embed_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    fn variable(&self, name: &str) -> Option<Self::Elem>;

    /// Inverse of `a` if `a` is a unit.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// `a / b` when `b` divides `a` exactly.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn format(&self, a: &Self::Elem) -> String;

    /// Upper bound for the grade of a nonzero finitely generated module and
    /// for the length of a minimal-enough free resolution.
    fn global_dimension(&self) -> usize;

    /// Canonical standard basis (reduced, position-over-term) of the
    /// submodule of `R^rank` generated by `gens`. Zero vectors are dropped.
    fn standard_basis(&self, gens: &[Vec<Self::Elem>], rank: usize) -> Result<Vec<Vec<Self::Elem>>>;

    /// Full division of `v` by a standard basis produced by [`Ring::standard_basis`].
    /// The remainder is zero iff `v` lies in the submodule.
    fn reduce(&self, v: &[Self::Elem], basis: &[Vec<Self::Elem>]) -> Reduction<Self::Elem>;

    /// Krull dimension of `R/I` for the ideal generated by `ideal`; `None`
    /// when `I` is the unit ideal.
    fn quotient_dimension(&self, ideal: &[Self::Elem]) -> Result<Option<usize>>;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.unit_inverse(a).is_some()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn embed_int(&self, n: i64) -> Self::Elem {
        self.embed_integer(&BigInt::from(n))
    }

    fn parse(&self, text: &str) -> Result<Self::Elem>
    where
        Self: Sized,
    {
        parse_element(self, text)
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn zero_vector(&self, n: usize) -> Vec<Self::Elem> {
        vec![self.zero(); n]
    }

    fn unit_vector(&self, n: usize, i: usize) -> Vec<Self::Elem> {
        let mut v = self.zero_vector(n);
        v[i] = self.one();
        v
    }

    fn is_zero_vector(&self, v: &[Self::Elem]) -> bool {
        v.iter().all(|a| self.is_zero(a))
    }

    fn add_vectors(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        a.iter().zip(b).map(|(x, y)| self.add(x, y)).collect()
    }

    fn sub_vectors(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        a.iter().zip(b).map(|(x, y)| self.sub(x, y)).collect()
    }

    fn scale_vector(&self, c: &Self::Elem, v: &[Self::Elem]) -> Vec<Self::Elem> {
        v.iter().map(|x| self.mul(c, x)).collect()
    }

    /// `Σ coeffs[k]·vectors[k]` in `R^rank`.
    fn combine(&self, coeffs: &[Self::Elem], vectors: &[Vec<Self::Elem>], rank: usize) -> Vec<Self::Elem> {
        let mut acc = self.zero_vector(rank);
        for (c, v) in coeffs.iter().zip(vectors) {
            if self.is_zero(c) {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(v) {
                if !self.is_zero(x) {
                    *a = self.add(a, &self.mul(c, x));
                }
            }
        }
        acc
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            if !self.is_zero(x) && !self.is_zero(y) {
                acc = self.add(&acc, &self.mul(x, y));
            }
        }
        acc
    }
}

/// Coefficient domain of a [`RingDescriptor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    PolynomialOverQ,
    Integers,
}

/// Serializable description of a base ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    pub kind: RingKind,
    pub variables: Vec<String>,
    /// Present iff `kind` is [`RingKind::PolynomialOverQ`].
    pub order: Option<MonomialOrder>,
}

impl RingDescriptor {
    pub fn polynomial<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<Self> {
        let d = RingDescriptor {
            kind: RingKind::PolynomialOverQ,
            variables: variables.into_iter().map(Into::into).collect(),
            order: Some(order),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn integers() -> Self {
        RingDescriptor {
            kind: RingKind::Integers,
            variables: Vec::new(),
            order: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            RingKind::Integers => {
                if !self.variables.is_empty() || self.order.is_some() {
                    return Err(Error::InvalidRing(
                        "the integer ring takes no variables and no monomial order".into(),
                    ));
                }
            }
            RingKind::PolynomialOverQ => {
                if self.order.is_none() {
                    return Err(Error::InvalidRing("missing monomial order".into()));
                }
                for (i, v) in self.variables.iter().enumerate() {
                    if !is_identifier(v) {
                        return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
                    }
                    if self.variables[..i].contains(v) {
                        return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_validation() {
        assert!(RingDescriptor::polynomial(["x", "y"], MonomialOrder::DegRevLex).is_ok());
        assert!(RingDescriptor::polynomial(["x", "x"], MonomialOrder::DegRevLex).is_err());
        assert!(RingDescriptor::polynomial(["1x"], MonomialOrder::Lex).is_err());
        assert!(RingDescriptor::polynomial([""], MonomialOrder::Lex).is_err());
        assert!(RingDescriptor::polynomial(["x_1", "Y2"], MonomialOrder::Lex).is_ok());
        let mut z = RingDescriptor::integers();
        assert!(z.validate().is_ok());
        z.order = Some(MonomialOrder::Lex);
        assert!(z.validate().is_err());
    }
}
