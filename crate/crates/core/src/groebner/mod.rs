//! Buchberger engine for submodules of `ℚ[x₁..xₙ]^q`.
//!
//! Module terms are pairs (position, monomial). Under position-over-term the
//! first coordinate dominates: `e₀` beats every term in `e₁`, and so on. The
//! generic routines in [`linear`] (syzygies, lifts, intersections) rely on
//! this elimination property and work for every [`Ring`] backend.

mod linear;

pub use linear::{
    contains, intersect, lift, lift_many, submodule_equal, syzygies, syzygy_matrix, TrackedBasis,
};

use std::cmp::Ordering;
use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{Monomial, MonomialOrder, PolyRing, Polynomial, Reduction, Ring};

/// How positions and monomials are combined into a module term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionRule {
    PositionOverTerm,
    TermOverPosition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub base: MonomialOrder,
    pub position: PositionRule,
    pub rank: usize,
}

impl ModuleOrder {
    pub fn position_over_term(base: MonomialOrder, rank: usize) -> Self {
        ModuleOrder {
            base,
            position: PositionRule::PositionOverTerm,
            rank,
        }
    }

    pub fn term_over_position(base: MonomialOrder, rank: usize) -> Self {
        ModuleOrder {
            base,
            position: PositionRule::TermOverPosition,
            rank,
        }
    }

    /// Compare module terms `m₁·e_{p₁}` and `m₂·e_{p₂}`. Lower positions rank higher.
    pub fn compare(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match self.position {
            PositionRule::PositionOverTerm => b.0.cmp(&a.0).then_with(|| self.base.compare(a.1, b.1)),
            PositionRule::TermOverPosition => self.base.compare(a.1, b.1).then_with(|| b.0.cmp(&a.0)),
        }
    }

    /// Position of the leading term of `v`, or `None` for the zero vector.
    pub fn leading_position(&self, v: &[Polynomial]) -> Option<usize> {
        match self.position {
            PositionRule::PositionOverTerm => v.iter().position(|p| !p.is_zero()),
            PositionRule::TermOverPosition => {
                let mut best: Option<usize> = None;
                for (i, p) in v.iter().enumerate() {
                    let Some(m) = p.leading_monomial() else { continue };
                    best = match best {
                        Some(b) if self.base.compare(v[b].leading_monomial().unwrap(), m) != Ordering::Less => Some(b),
                        _ => Some(i),
                    };
                }
                best
            }
        }
    }
}

/// A Gröbner basis of a submodule of `R^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    generators: Vec<Vec<Polynomial>>,
    order: ModuleOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.generators
    }

    pub fn into_generators(self) -> Vec<Vec<Polynomial>> {
        self.generators
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.order.rank
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.generators
            .iter()
            .map(|g| {
                let p = self.order.leading_position(g).expect("nonzero generator");
                (p, g[p].leading_monomial().unwrap().clone())
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
struct Element {
    v: Vec<Polynomial>,
    pos: usize,
    lm: Monomial,
    lc: BigRational,
}

impl Element {
    fn new(v: Vec<Polynomial>, order: &ModuleOrder) -> Option<Self> {
        let pos = order.leading_position(&v)?;
        let (lm, lc) = v[pos].leading_term().cloned().unwrap();
        Some(Element { v, pos, lm, lc })
    }

    fn monic(mut self, ring: &PolyRing) -> Self {
        if !self.lc.is_one() {
            let inv = self.lc.recip();
            self.v = self.v.iter().map(|p| ring.scale(p, &inv)).collect();
            self.lc = BigRational::one();
        }
        self
    }
}

fn leading_term(order: &ModuleOrder, p: &[Polynomial]) -> Option<(usize, Monomial, BigRational)> {
    let pos = order.leading_position(p)?;
    let (m, c) = p[pos].leading_term().cloned().unwrap();
    Some((pos, m, c))
}

/// Division of `v` by `basis`. With `full == false` only leading terms are
/// reduced. Quotients are accumulated when requested.
fn reduce_elements(
    ring: &PolyRing,
    v: &[Polynomial],
    basis: &[Element],
    order: &ModuleOrder,
    full: bool,
    mut quotients: Option<&mut Vec<Polynomial>>,
) -> Vec<Polynomial> {
    let mut p = v.to_vec();
    let mut rest: Vec<Polynomial> = vec![Polynomial::zero(); v.len()];
    while let Some((pos, m, c)) = leading_term(order, &p) {
        let divisor = basis
            .iter()
            .enumerate()
            .find(|(_, b)| b.pos == pos && b.lm.divides(&m));
        match divisor {
            Some((k, b)) => {
                let q = b.lm.quotient_of(&m).unwrap();
                let coef = &c / &b.lc;
                for (pi, bi) in p.iter_mut().zip(&b.v) {
                    if !bi.is_zero() {
                        *pi = ring.sub_scaled(pi, &coef, &q, bi);
                    }
                }
                if let Some(qs) = quotients.as_deref_mut() {
                    let t = ring.term(q, coef);
                    qs[k] = ring.add(&qs[k], &t);
                }
            }
            None => {
                if !full {
                    break;
                }
                let t = p[pos].pop_leading().unwrap();
                rest[pos].push_trailing(t);
            }
        }
    }
    for (r, left) in rest.iter_mut().zip(p) {
        for t in left.terms() {
            r.push_trailing(t.clone());
        }
    }
    rest
}

/// Full division with quotients against an arbitrary generator list.
pub fn reduce_with_quotients(
    ring: &PolyRing,
    v: &[Polynomial],
    basis: &[Vec<Polynomial>],
    order: &ModuleOrder,
) -> Reduction<Polynomial> {
    let elems: Vec<Element> = basis
        .iter()
        .map(|b| Element::new(b.clone(), order).expect("zero vector in basis"))
        .collect();
    let mut quotients = vec![Polynomial::zero(); basis.len()];
    let remainder = reduce_elements(ring, v, &elems, order, true, Some(&mut quotients));
    Reduction {
        quotients,
        remainder,
    }
}

/// Fully reduced remainder of `v` modulo `gb`; zero iff `v` lies in the submodule.
pub fn normal_form(ring: &PolyRing, v: &[Polynomial], gb: &GroebnerBasis) -> Vec<Polynomial> {
    reduce_with_quotients(ring, v, &gb.generators, &gb.order).remainder
}

fn s_vector(ring: &PolyRing, a: &Element, b: &Element) -> Vec<Polynomial> {
    let lcm = a.lm.lcm(&b.lm);
    let qa = a.lm.quotient_of(&lcm).unwrap();
    let qb = b.lm.quotient_of(&lcm).unwrap();
    let ca = a.lc.recip();
    let cb = b.lc.recip();
    a.v.iter()
        .zip(&b.v)
        .map(|(x, y)| {
            let left = ring.mul_term(x, &qa, &ca);
            ring.sub_scaled(&left, &cb, &qb, y)
        })
        .collect()
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
}

fn check_shapes(ring: &PolyRing, gens: &[Vec<Polynomial>], order: &ModuleOrder) -> Result<()> {
    if order.base != ring.order() {
        return Err(Error::DimensionMismatch(
            "module order base differs from the ring's monomial order".into(),
        ));
    }
    if let Some(g) = gens.iter().find(|g| g.len() != order.rank) {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in a module of rank {}",
            g.len(),
            order.rank
        )));
    }
    Ok(())
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
///
/// Pairs are processed by the normal strategy (smallest lcm first, ties by
/// index) and pruned with Buchberger's chain criterion. The product
/// criterion is only used for ideals (`rank == 1`), where it is valid.
pub fn buchberger(ring: &PolyRing, gens: &[Vec<Polynomial>], order: &ModuleOrder) -> Result<GroebnerBasis> {
    check_shapes(ring, gens, order)?;
    let mut basis: Vec<Element> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: Element, basis: &mut Vec<Element>, pairs: &mut Vec<Pair>, pending: &mut HashSet<(usize, usize)>| {
        let j = basis.len();
        for (i, b) in basis.iter().enumerate() {
            if b.pos == h.pos {
                pairs.push(Pair {
                    i,
                    j,
                    pos: h.pos,
                    lcm: b.lm.lcm(&h.lm),
                });
                pending.insert((i, j));
            }
        }
        basis.push(h);
    };

    for g in gens {
        let h = reduce_elements(ring, g, &basis, order, true, None);
        if let Some(e) = Element::new(h, order) {
            add(e.monic(ring), &mut basis, &mut pairs, &mut pending);
        }
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                order
                    .compare((pa.pos, &pa.lcm), (pb.pos, &pb.lcm))
                    .then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(k);
        pending.remove(&(pair.i, pair.j));

        if order.rank == 1 && basis[pair.i].lm.is_coprime(&basis[pair.j].lm) {
            continue;
        }
        let chain = basis.iter().enumerate().any(|(m, b)| {
            m != pair.i
                && m != pair.j
                && b.pos == pair.pos
                && b.lm.divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(m), pair.i.max(m)))
                && !pending.contains(&(pair.j.min(m), pair.j.max(m)))
        });
        if chain {
            continue;
        }

        processed += 1;
        if let Some(limit) = ring.budget() {
            if processed > limit {
                return Err(Error::BudgetExceeded { limit });
            }
        }
        let s = s_vector(ring, &basis[pair.i], &basis[pair.j]);
        let h = reduce_elements(ring, &s, &basis, order, true, None);
        if let Some(e) = Element::new(h, order) {
            add(e.monic(ring), &mut basis, &mut pairs, &mut pending);
        }
    }

    Ok(GroebnerBasis {
        generators: interreduce(ring, basis, order),
        order: *order,
        reduced: true,
    })
}

fn interreduce(ring: &PolyRing, basis: Vec<Element>, order: &ModuleOrder) -> Vec<Vec<Polynomial>> {
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !basis.iter().enumerate().any(|(j, b)| {
                j != i
                    && b.pos == basis[i].pos
                    && b.lm.divides(&basis[i].lm)
                    && (b.lm != basis[i].lm || j < i)
            })
        })
        .collect();
    let mut minimal: Vec<Element> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect();
    for i in 0..minimal.len() {
        let others: Vec<Element> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, e)| e.clone())
            .collect();
        let r = reduce_elements(ring, &minimal[i].v, &others, order, true, None);
        minimal[i] = Element::new(r, order).expect("lead term survives").monic(ring);
    }
    minimal.sort_by(|a, b| order.compare((b.pos, &b.lm), (a.pos, &a.lm)));
    minimal.into_iter().map(|e| e.v).collect()
}

/// Buchberger's criterion checked from scratch: every S-vector of two
/// generators reduces to zero against the generators.
pub fn satisfies_buchberger_criterion(ring: &PolyRing, gb: &GroebnerBasis) -> bool {
    let order = gb.order;
    let elems: Vec<Element> = gb
        .generators
        .iter()
        .filter_map(|g| Element::new(g.clone(), &order))
        .collect();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if elems[i].pos != elems[j].pos {
                continue;
            }
            let s = s_vector(ring, &elems[i], &elems[j]);
            let r = reduce_elements(ring, &s, &elems, &order, true, None);
            if !ring.is_zero_vector(&r) {
                return false;
            }
        }
    }
    true
}

/// Checks the reduced-basis conditions: monic leading coefficients and no
/// term of any generator divisible by another generator's leading term.
pub fn is_reduced(gb: &GroebnerBasis) -> bool {
    let order = gb.order;
    let elems: Vec<Element> = gb
        .generators
        .iter()
        .filter_map(|g| Element::new(g.clone(), &order))
        .collect();
    if elems.len() != gb.generators.len() {
        return false;
    }
    elems.iter().enumerate().all(|(i, e)| {
        e.lc.is_one()
            && elems.iter().enumerate().all(|(j, f)| {
                i == j
                    || e.v[f.pos]
                        .terms()
                        .iter()
                        .all(|(m, _)| !f.lm.divides(m))
            })
    })
}

/// Krull dimension of `R/in(I)` for an ideal given by its Gröbner basis: the
/// size of the largest set of variables containing the support of no
/// leading monomial. `None` when the ideal is the whole ring.
pub fn lt_dimension(ring: &PolyRing, gb: &GroebnerBasis) -> Result<Option<usize>> {
    if gb.rank() != 1 {
        return Err(Error::DimensionMismatch("lt_dimension needs an ideal (rank 1)".into()));
    }
    let n = ring.nvars();
    let supports: Vec<u64> = gb
        .leading_terms()
        .iter()
        .map(|(_, m)| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    if supports.contains(&0) {
        return Ok(None);
    }
    if n > 20 {
        return Err(Error::Unsupported("dimension of rings with more than 20 variables".into()));
    }
    let best = (0u64..(1 << n))
        .filter(|s| supports.iter().all(|m| m & !s != 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Ok(Some(best))
}

/// True when the ideal basis contains a unit.
pub fn is_unit_ideal(gb: &GroebnerBasis) -> bool {
    gb.rank() == 1 && gb.generators.iter().any(|g| g[0].is_constant())
}
