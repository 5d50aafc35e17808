//! Instances with a known positive answer: `A = U ⊕ 0` and `B = 0 ⊕ R^b`
//! inside `R^a ⊕ R^b`, where `R^a/U` has grade at least two, optionally
//! moved by an invertible change of coordinates.

use num_traits::One;
use rand::Rng as _;
use rand::RngCore;

use super::SubdirectInstance;
use crate::error::Result;
use crate::ring::{Matrix, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};

/// Building blocks for `U ≤ R^a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealShape {
    /// `(x₁, …, x_k)^d` in one coordinate.
    MaximalPower { vars: usize, power: u32 },
    /// `m^d·R^k` plus the Koszul relations `xⱼeᵢ − xᵢeⱼ` among the first
    /// `k` variables, spread over `k` coordinates.
    KoszulType { size: usize, power: u32 },
}

impl IdealShape {
    fn width(&self) -> usize {
        match self {
            IdealShape::MaximalPower { .. } => 1,
            IdealShape::KoszulType { size, .. } => *size,
        }
    }

    fn describe(&self) -> String {
        match self {
            IdealShape::MaximalPower { vars, power } => format!("m{vars}^{power}"),
            IdealShape::KoszulType { size, power } => format!("koszul{size}+m^{power}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub name: String,
    pub instance: SubdirectInstance<PolyRing>,
}

fn power_generators(ring: &PolyRing, vars: usize, power: u32) -> Vec<Polynomial> {
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn go(ring: &PolyRing, k: usize, left: u32, vars: usize, exps: &mut Vec<u32>, out: &mut Vec<Polynomial>) {
        if k + 1 == vars {
            exps[k] = left;
            out.push(ring.term(Monomial::new(exps), One::one()));
            exps[k] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[k] = e;
            go(ring, k + 1, left - e, vars, exps, out);
        }
        exps[k] = 0;
    }
    go(ring, 0, power, vars, &mut exps, &mut out);
    out
}

fn shape_generators(ring: &PolyRing, shape: &IdealShape) -> Vec<Vec<Polynomial>> {
    match *shape {
        IdealShape::MaximalPower { vars, power } => power_generators(ring, vars, power)
            .into_iter()
            .map(|p| vec![p])
            .collect(),
        IdealShape::KoszulType { size, power } => {
            let mut out = Vec::new();
            for i in 0..size {
                for p in power_generators(ring, ring.nvars(), power) {
                    let mut v = ring.zero_vector(size);
                    v[i] = p;
                    out.push(v);
                }
            }
            for i in 0..size {
                for j in i + 1..size {
                    let mut v = ring.zero_vector(size);
                    v[i] = ring.var(j);
                    v[j] = ring.neg(&ring.var(i));
                    out.push(v);
                }
            }
            out
        }
    }
}

/// `A = (⊕ shapes) ⊕ 0` and `B = 0 ⊕ R^b`.
pub fn block_instance(ring: &PolyRing, shapes: &[IdealShape], b: usize) -> Result<SubdirectInstance<PolyRing>> {
    let a: usize = shapes.iter().map(IdealShape::width).sum();
    let q = a + b;
    let mut a_gens = Vec::new();
    let mut offset = 0;
    for shape in shapes {
        for g in shape_generators(ring, shape) {
            let mut v = ring.zero_vector(q);
            for (k, p) in g.into_iter().enumerate() {
                v[offset + k] = p;
            }
            a_gens.push(v);
        }
        offset += shape.width();
    }
    let b_gens: Vec<Vec<Polynomial>> = (a..q).map(|i| ring.unit_vector(q, i)).collect();
    SubdirectInstance::new(ring, q, &a_gens, &b_gens)
}

/// `q = 2`, `A = ⟨(x,0),(y,0)⟩`, `B = ⟨(0,1)⟩` over `ℚ[x,y]`.
pub fn canonical_instance() -> SubdirectInstance<PolyRing> {
    let ring = PolyRing::new(["x", "y"], MonomialOrder::DegRevLex).expect("valid ring");
    block_instance(&ring, &[IdealShape::MaximalPower { vars: 2, power: 1 }], 1).expect("canonical instance")
}

/// Twenty instances over `ℚ[x,y]` and `ℚ[x,y,z]` with `a ≤ 3`, `b ≤ 2`.
pub fn structured_family() -> Vec<FamilyMember> {
    use IdealShape::*;
    let r2 = PolyRing::new(["x", "y"], MonomialOrder::DegRevLex).expect("valid ring");
    let r3 = PolyRing::new(["x", "y", "z"], MonomialOrder::DegRevLex).expect("valid ring");
    let m = |vars, power| MaximalPower { vars, power };
    let k = |size, power| KoszulType { size, power };
    let specs: Vec<(&PolyRing, Vec<IdealShape>, usize)> = vec![
        (&r2, vec![m(2, 1)], 1),
        (&r2, vec![m(2, 1)], 2),
        (&r2, vec![m(2, 2)], 1),
        (&r2, vec![m(2, 3)], 1),
        (&r2, vec![m(2, 1), m(2, 1)], 1),
        (&r2, vec![m(2, 1), m(2, 2)], 2),
        (&r2, vec![m(2, 2), m(2, 2), m(2, 1)], 1),
        (&r2, vec![k(2, 2)], 1),
        (&r2, vec![k(2, 3)], 1),
        (&r2, vec![m(2, 3), m(2, 1)], 2),
        (&r3, vec![m(3, 1)], 1),
        (&r3, vec![m(3, 2)], 1),
        (&r3, vec![m(2, 1)], 1),
        (&r3, vec![m(3, 1), m(2, 1)], 1),
        (&r3, vec![m(3, 2), m(3, 1)], 2),
        (&r3, vec![k(3, 2)], 1),
        (&r3, vec![k(2, 2)], 2),
        (&r3, vec![m(3, 1), m(3, 1), m(3, 1)], 1),
        (&r2, vec![m(2, 2)], 2),
        (&r3, vec![m(3, 3)], 1),
    ];
    specs
        .into_iter()
        .map(|(ring, shapes, b)| {
            let vars = ring.variables().join("");
            let parts: Vec<String> = shapes.iter().map(IdealShape::describe).collect();
            FamilyMember {
                name: format!("Q[{vars}]:{}+free{b}", parts.join("+")),
                instance: block_instance(ring, &shapes, b).expect("family instance"),
            }
        })
        .collect()
}

/// `I + c·E_{ij}` for `i ≠ j`.
pub fn elementary_shear<R: Ring>(ring: &R, q: usize, i: usize, j: usize, c: &R::Elem) -> Matrix<R::Elem> {
    assert_ne!(i, j, "elementary operation needs two distinct coordinates");
    let mut cols: Vec<Vec<R::Elem>> = (0..q).map(|k| ring.unit_vector(q, k)).collect();
    cols[j][i] = c.clone();
    Matrix::from_columns(q, cols).expect("square")
}

fn random_linear(ring: &PolyRing, rng: &mut impl RngCore) -> Polynomial {
    loop {
        let mut p = ring.embed_int(rng.gen_range(-2..=2));
        for v in 0..ring.nvars() {
            let c = rng.gen_range(-2..=2);
            if c != 0 {
                p = ring.add(&p, &ring.mul(&ring.embed_int(c), &ring.var(v)));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Product of one to `max_steps` elementary matrices with multipliers of
/// degree at most one.
pub fn random_shear(ring: &PolyRing, q: usize, max_steps: usize, rng: &mut impl RngCore) -> Matrix<Polynomial> {
    let mut g = Matrix::identity(ring, q);
    if q < 2 {
        return g;
    }
    let steps = rng.gen_range(1..=max_steps.max(1));
    for _ in 0..steps {
        let i = rng.gen_range(0..q);
        let mut j = rng.gen_range(0..q - 1);
        if j >= i {
            j += 1;
        }
        let e = elementary_shear(ring, q, i, j, &random_linear(ring, rng));
        g = e.mul(ring, &g).expect("square");
    }
    g
}
