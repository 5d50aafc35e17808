use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::{Reduction, Ring, RingDescriptor, RingKind};
use crate::error::{Error, Result};
use crate::groebner::{self, ModuleOrder};

/// A polynomial with rational coefficients.
///
/// Terms are sorted descending by the owning ring's monomial order; no
/// coefficient is zero and no monomial repeats. The zero polynomial has no
/// terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, BigRational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.1)
    }

    /// Nonzero constant polynomials are the units.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, BigRational)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub(crate) fn push_trailing(&mut self, term: (Monomial, BigRational)) {
        self.terms.push(term);
    }
}

/// `ℚ[x₁, …, xₙ]` with a fixed monomial order.
///
/// `budget` caps the number of S-pairs any single Gröbner basis computation
/// may process; exceeding it yields [`Error::BudgetExceeded`].
#[derive(Debug, Clone)]
pub struct PolyRing {
    variables: Vec<String>,
    order: MonomialOrder,
    budget: Option<usize>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.variables == other.variables && self.order == other.order
    }
}

impl PolyRing {
    pub fn new<S: Into<String>>(variables: impl IntoIterator<Item = S>, order: MonomialOrder) -> Result<Self> {
        let d = RingDescriptor::polynomial(variables, order)?;
        Ok(PolyRing {
            variables: d.variables,
            order,
            budget: None,
        })
    }

    pub fn from_descriptor(d: &RingDescriptor) -> Result<Self> {
        d.validate()?;
        match (d.kind, d.order) {
            (RingKind::PolynomialOverQ, Some(order)) => Self::new(d.variables.clone(), order),
            _ => Err(Error::InvalidRing("not a polynomial ring descriptor".into())),
        }
    }

    pub fn with_budget(mut self, budget: Option<usize>) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> Option<usize> {
        self.budget
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn constant(&self, c: BigRational) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(self.nvars()), c)],
            }
        }
    }

    pub fn term(&self, m: Monomial, c: BigRational) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.term(Monomial::variable(self.nvars(), i), BigRational::one())
    }

    /// Build a polynomial from arbitrary (exponents, coefficient) pairs,
    /// collecting like terms.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Result<Polynomial> {
        let mut raw = Vec::new();
        for (e, c) in terms {
            if e.len() != self.nvars() {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    e.len(),
                    self.nvars()
                )));
            }
            raw.push((Monomial::new(&e), c));
        }
        Ok(self.normalize(raw))
    }

    fn normalize(&self, mut raw: Vec<(Monomial, BigRational)>) -> Polynomial {
        raw.sort_by(|a, b| self.order.compare(&b.0, &a.0));
        let mut terms: Vec<(Monomial, BigRational)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|t| !t.1.is_zero());
        Polynomial { terms }
    }

    /// `p − c·m·g`, the elementary reduction step.
    pub fn sub_scaled(&self, p: &Polynomial, c: &BigRational, m: &Monomial, g: &Polynomial) -> Polynomial {
        if c.is_zero() || g.is_zero() {
            return p.clone();
        }
        let mut out = Vec::with_capacity(p.terms.len() + g.terms.len());
        let mut pi = p.terms.iter().peekable();
        let mut gi = g.terms.iter().map(|(gm, gc)| (m.mul(gm), gc * c)).peekable();
        loop {
            let ord = match (pi.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(a), Some(b)) => self.order.compare(&a.0, &b.0),
            };
            match ord {
                Ordering::Greater => out.push(pi.next().unwrap().clone()),
                Ordering::Less => {
                    let (bm, bc) = gi.next().unwrap();
                    out.push((bm, -bc));
                }
                Ordering::Equal => {
                    let (am, ac) = pi.next().unwrap();
                    let (_, bc) = gi.next().unwrap();
                    let s = ac - bc;
                    if !s.is_zero() {
                        out.push((am.clone(), s));
                    }
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn scale(&self, p: &Polynomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: p.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, p: &Polynomial, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: p.terms.iter().map(|(pm, a)| (pm.mul(m), a * c)).collect(),
        }
    }

    /// Division by a single polynomial: `(quotient, remainder)` with
    /// `p = quotient·d + remainder` and no term of the remainder divisible by
    /// the leading monomial of `d`.
    pub fn div_rem(&self, p: &Polynomial, d: &Polynomial) -> (Polynomial, Polynomial) {
        let Some((dm, dc)) = d.leading_term() else {
            return (Polynomial::zero(), p.clone());
        };
        let mut rest = p.clone();
        let mut quotient = Vec::new();
        let mut remainder = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            match dm.quotient_of(&m) {
                Some(q) => {
                    let qc = &c / dc;
                    rest = self.sub_scaled(&rest, &qc, &q, d);
                    quotient.push((q, qc));
                }
                None => {
                    rest.terms.remove(0);
                    remainder.push((m, c));
                }
            }
        }
        (self.normalize(quotient), Polynomial { terms: remainder })
    }

    fn format_coefficient_term(&self, m: &Monomial, c: &BigRational, out: &mut String) {
        let abs = c.abs();
        let mono = self.format_monomial(m);
        if mono.is_empty() {
            write_rational(&abs, out);
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            write_rational(&abs, out);
            out.push('*');
            out.push_str(&mono);
        }
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.variables[i].clone()),
                _ => parts.push(format!("{}^{}", self.variables[i], e)),
            }
        }
        parts.join("*")
    }
}

fn write_rational(q: &BigRational, out: &mut String) {
    if q.is_integer() {
        let _ = write!(out, "{}", q.numer());
    } else {
        let _ = write!(out, "{}/{}", q.numer(), q.denom());
    }
}

impl Ring for PolyRing {
    type Elem = Polynomial;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            kind: RingKind::PolynomialOverQ,
            variables: self.variables.clone(),
            order: Some(self.order),
        }
    }

    fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    fn one(&self) -> Polynomial {
        self.constant(BigRational::one())
    }

    fn is_zero(&self, a: &Polynomial) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.sub_scaled(a, &-BigRational::one(), &Monomial::one(self.nvars()), b)
    }

    fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.sub_scaled(a, &BigRational::one(), &Monomial::one(self.nvars()), b)
    }

    fn neg(&self, a: &Polynomial) -> Polynomial {
        Polynomial {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        let (small, large) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
        let mut acc = Polynomial::zero();
        for (m, c) in &small.terms {
            acc = self.sub_scaled(&acc, &-c, m, large);
        }
        acc
    }

    fn embed_integer(&self, n: &BigInt) -> Polynomial {
        self.constant(BigRational::from_integer(n.clone()))
    }

    fn embed_rational(&self, q: &BigRational) -> Option<Polynomial> {
        Some(self.constant(q.clone()))
    }

    fn variable(&self, name: &str) -> Option<Polynomial> {
        self.variables.iter().position(|v| v == name).map(|i| self.var(i))
    }

    fn unit_inverse(&self, a: &Polynomial) -> Option<Polynomial> {
        if a.is_constant() {
            Some(self.constant(a.terms[0].1.recip()))
        } else {
            None
        }
    }

    fn exact_div(&self, a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(a, b);
        r.is_zero().then_some(q)
    }

    fn format(&self, a: &Polynomial) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in a.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            self.format_coefficient_term(m, c, &mut out);
        }
        out
    }

    fn global_dimension(&self) -> usize {
        self.nvars()
    }

    fn quotient_dimension(&self, ideal: &[Polynomial]) -> Result<Option<usize>> {
        let gens: Vec<Vec<Polynomial>> = ideal.iter().map(|p| vec![p.clone()]).collect();
        let order = ModuleOrder::position_over_term(self.order, 1);
        let gb = groebner::buchberger(self, &gens, &order)?;
        groebner::lt_dimension(self, &gb)
    }

    fn standard_basis(&self, gens: &[Vec<Polynomial>], rank: usize) -> Result<Vec<Vec<Polynomial>>> {
        let order = ModuleOrder::position_over_term(self.order, rank);
        Ok(groebner::buchberger(self, gens, &order)?.into_generators())
    }

    fn reduce(&self, v: &[Polynomial], basis: &[Vec<Polynomial>]) -> Reduction<Polynomial> {
        let order = ModuleOrder::position_over_term(self.order, v.len());
        groebner::reduce_with_quotients(self, v, basis, &order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qxy() -> PolyRing {
        PolyRing::new(["x", "y"], MonomialOrder::DegRevLex).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_examples() {
        let r = qxy();
        assert!(r.parse("0").unwrap().is_zero());
        let p = r.parse("3*x^2*y - 1/2").unwrap();
        assert_eq!(
            p.terms(),
            &[(Monomial::new(&[2, 1]), q(3, 1)), (Monomial::new(&[0, 0]), q(-1, 2))]
        );
        let rx = PolyRing::new(["x"], MonomialOrder::DegRevLex).unwrap();
        let p = rx.parse("x + x").unwrap();
        assert_eq!(p.terms(), &[(Monomial::new(&[1]), q(2, 1))]);
    }

    #[test]
    fn format_round_trip() {
        let r = qxy();
        for s in ["0", "3*x^2*y - 1/2", "-x + y", "x*y - 2/3*y^2 + 5", "-7/2"] {
            let p = r.parse(s).unwrap();
            assert_eq!(r.format(&p), s);
            assert_eq!(r.parse(&r.format(&p)).unwrap(), p);
        }
    }

    #[test]
    fn exact_division() {
        let r = qxy();
        let a = r.parse("x^2 - y^2").unwrap();
        let b = r.parse("x + y").unwrap();
        assert_eq!(r.exact_div(&a, &b).unwrap(), r.parse("x - y").unwrap());
        assert!(r.exact_div(&a, &r.parse("x").unwrap()).is_none());
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| q(n, d))
    }

    fn poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((0u32..3, 0u32..3, small_rational()), 0..5).prop_map(|ts| {
            qxy()
                .from_terms(ts.into_iter().map(|(a, b, c)| (vec![a, b], c)))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            let r = qxy();
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
            prop_assert_eq!(
                r.mul(&a, &r.add(&b, &c)),
                r.add(&r.mul(&a, &b), &r.mul(&a, &c))
            );
            prop_assert!(r.mul(&a, &r.zero()).is_zero());
            prop_assert!(r.sub(&a, &a).is_zero());
            prop_assert_eq!(r.parse(&r.format(&a)).unwrap(), a);
        }

        #[test]
        fn rational_arithmetic_is_exact(n in any::<i64>(), d in any::<i64>(), m in any::<u64>()) {
            prop_assume!(n != 0 && d != 0);
            let big = BigInt::from(m) * BigInt::from(u64::MAX) + BigInt::from(n);
            prop_assume!(!big.is_zero());
            let a = BigRational::new(big, BigInt::from(d));
            let r = qxy();
            let pa = r.constant(a.clone());
            let pinv = r.unit_inverse(&pa).unwrap();
            prop_assert_eq!(r.mul(&pa, &pinv), r.one());
            prop_assert!(a.denom().is_positive());
        }
    }
}
