//! Subdirect products `M ×_T N` of quotients of a free module, and the
//! certification that their torsion-free factor is projective.
//!
//! An instance is a pair of submodules `A, B ≤ R^q`. From it come
//! `M = R^q/A`, `N = R^q/B`, `S = A + B` and `T = R^q/S`; `R^q` is the fiber
//! product of `M` and `N` over `T` exactly when `A ∩ B = 0`.

mod family;

pub use family::{
    block_instance, canonical_instance, elementary_shear, random_shear, structured_family, FamilyMember, IdealShape,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpmod::{cokernel, solve_lift, FPModule, Morphism, ShortExactSequence, Submodule};
use crate::homology::{ext, grade, torsion_submodule, GradeValue};
use crate::groebner;
use crate::linalg;
use crate::ring::{Matrix, Ring};

#[derive(Debug, Clone, PartialEq)]
pub struct SubdirectInstance<R: Ring> {
    ring: R,
    q: usize,
    a: Submodule<R>,
    b: Submodule<R>,
}

impl<R: Ring> SubdirectInstance<R> {
    pub fn new(ring: &R, q: usize, a: &[Vec<R::Elem>], b: &[Vec<R::Elem>]) -> Result<Self> {
        Ok(SubdirectInstance {
            ring: ring.clone(),
            q,
            a: Submodule::new(ring, q, a)?,
            b: Submodule::new(ring, q, b)?,
        })
    }

    pub fn from_submodules(a: Submodule<R>, b: Submodule<R>) -> Result<Self> {
        if a.ring() != b.ring() {
            return Err(Error::RingMismatch);
        }
        if a.rank() != b.rank() {
            return Err(Error::DimensionMismatch("A and B live in different free modules".into()));
        }
        Ok(SubdirectInstance {
            ring: a.ring().clone(),
            q: a.rank(),
            a,
            b,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn a(&self) -> &Submodule<R> {
        &self.a
    }

    pub fn b(&self) -> &Submodule<R> {
        &self.b
    }

    /// `R^q / A`.
    pub fn m(&self) -> FPModule<R> {
        self.a.quotient()
    }

    /// `R^q / B`.
    pub fn n(&self) -> FPModule<R> {
        self.b.quotient()
    }

    /// `S = A + B`.
    pub fn s(&self) -> Result<Submodule<R>> {
        self.a.sum(&self.b)
    }

    /// The same instance after the change of coordinates `g` (an invertible
    /// `q × q` matrix) applied to both submodules.
    pub fn transform(&self, g: &Matrix<R::Elem>) -> Result<Self> {
        Ok(SubdirectInstance {
            ring: self.ring.clone(),
            q: self.q,
            a: self.a.map(g)?,
            b: self.b.map(g)?,
        })
    }
}

/// `A ∩ B = 0`.
pub fn check_regular<R: Ring>(inst: &SubdirectInstance<R>) -> Result<bool> {
    Ok(inst.a.intersect(&inst.b)?.is_zero())
}

/// `T = R^q/(A + B)`, with redundant generators eliminated.
pub fn interconnection_module<R: Ring>(inst: &SubdirectInstance<R>) -> Result<FPModule<R>> {
    Ok(inst.s()?.quotient().simplify()?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectivityVerdict {
    pub projective: bool,
    /// Rank over the fraction field.
    pub rank: usize,
}

/// Constant-rank criterion: with `r = g − rank ∂`, `M` is projective iff the
/// ideal of `(g − r)`-minors of `∂` is the unit ideal (the ideal of larger
/// minors vanishes by the choice of `r`).
pub fn is_projective<R: Ring>(m: &FPModule<R>) -> Result<ProjectivityVerdict> {
    let (m, _, _) = m.simplify()?;
    let ring = m.ring();
    let g = m.generators();
    let d = m.relation_matrix();
    let rank_d = linalg::rank(ring, &d)?;
    let rank = g - rank_d;
    if rank_d == 0 {
        return Ok(ProjectivityVerdict { projective: true, rank });
    }
    let minors = linalg::minors(ring, &d, rank_d)?;
    if minors.iter().any(|x| ring.is_unit(x)) {
        return Ok(ProjectivityVerdict { projective: true, rank });
    }
    let gens: Vec<Vec<R::Elem>> = minors.into_iter().map(|x| vec![x]).collect();
    Ok(ProjectivityVerdict {
        projective: Submodule::new(ring, 1, &gens)?.is_full(),
        rank,
    })
}

/// For `M = R^g/K`: a matrix `S` with `S·K = 0` and `S ≡ I` modulo `K`, so
/// that `S` defines a section of `R^g → M`. `None` when the nonzero maximal
/// minors of `K` do not generate the unit ideal, i.e. when `M` is not projective.
///
/// With `ρ = rank K`, every nonzero `ρ`-minor `μ = det K[I,J]` gives the
/// projection `K[:,J]·K[I,J]⁻¹·E_I` onto the column space of `K` away from
/// `μ = 0`; a partition of unity `Σ cμ·μ = 1` glues them into a polynomial
/// projection `P`, and `S = I − P`.
fn presentation_section<R: Ring>(m: &FPModule<R>) -> Result<Option<Matrix<R::Elem>>> {
    let ring = m.ring();
    let g = m.generators();
    let k = m.relation_matrix();
    let rho = linalg::rank(ring, &k)?;
    let mut s = Matrix::identity(ring, g);
    if rho == 0 {
        return Ok(Some(s));
    }
    let mut minors = linalg::indexed_minors(ring, &k, rho)?;
    let weights: Vec<R::Elem> = match minors.iter().position(|mn| ring.is_unit(&mn.value)) {
        Some(i) => {
            let w = ring.unit_inverse(&minors[i].value).expect("unit");
            minors = vec![minors.swap_remove(i)];
            vec![w]
        }
        None => {
            minors = unit_subset(ring, minors)?;
            let gens: Vec<Vec<R::Elem>> = minors.iter().map(|mn| vec![mn.value.clone()]).collect();
            match groebner::lift(ring, &[ring.one()], &gens, 1)? {
                Some(c) => c,
                None => return Ok(None),
            }
        }
    };
    for (w, mn) in weights.iter().zip(&minors) {
        if ring.is_zero(w) {
            continue;
        }
        let columns = k.select_columns(&mn.cols);
        let adj = linalg::adjugate(ring, &columns.select_rows(&mn.rows))?;
        let select = Matrix::from_columns(
            rho,
            (0..g)
                .map(|i| match mn.rows.iter().position(|&r| r == i) {
                    Some(pos) => ring.unit_vector(rho, pos),
                    None => ring.zero_vector(rho),
                })
                .collect(),
        )?;
        let term = columns.mul(ring, &adj)?.mul(ring, &select)?.scale(ring, w);
        s = s.sub(ring, &term)?;
    }
    Ok(Some(s))
}

/// A few of the minors, smallest first, that already generate the unit ideal
/// (all of them if none do), so the lift of `1` stays small.
fn unit_subset<R: Ring>(ring: &R, mut minors: Vec<linalg::Minor<R::Elem>>) -> Result<Vec<linalg::Minor<R::Elem>>> {
    minors.sort_by_key(|mn| ring.format(&mn.value).len());
    let mut chosen: Vec<linalg::Minor<R::Elem>> = Vec::new();
    let mut basis: Vec<Vec<R::Elem>> = Vec::new();
    for mn in minors {
        let v = vec![mn.value.clone()];
        if groebner::contains(ring, &basis, &v) {
            continue;
        }
        chosen.push(mn);
        let gens: Vec<Vec<R::Elem>> = chosen.iter().map(|c| vec![c.value.clone()]).collect();
        basis = ring.standard_basis(&gens, 1)?;
        if groebner::contains(ring, &basis, &[ring.one()]) {
            break;
        }
    }
    Ok(chosen)
}

/// Section of the presentation map `R^g → M` (identity matrix, free source).
fn presentation_splitting<R: Ring>(pi: &Morphism<R>) -> Result<Option<Morphism<R>>> {
    let ring = pi.ring();
    let (small, to, from) = pi.target().simplify()?;
    let Some(s) = presentation_section(&small)? else {
        return Ok(None);
    };
    let cover = FPModule::free(ring, small.generators());
    let sigma = Morphism::new(&small, &cover, s)?;
    let lift = Morphism::new(&cover, pi.source(), from.matrix().clone())?;
    Ok(Some(lift.after(&sigma)?.after(&to)?))
}

fn is_presentation_map<R: Ring>(pi: &Morphism<R>) -> bool {
    let ring = pi.ring();
    let g = pi.source().generators();
    pi.source().relations().is_empty()
        && pi.target().generators() == g
        && *pi.matrix() == Matrix::identity(ring, g)
}

/// A section `σ` of the epimorphism `π` with `π ∘ σ = id`, if one exists.
pub fn split_surjection<R: Ring>(pi: &Morphism<R>) -> Result<Option<Morphism<R>>> {
    if !pi.is_epi()? {
        return Err(Error::NotEpi);
    }
    let id = Morphism::identity(pi.target());
    let sigma = if is_presentation_map(pi) {
        presentation_splitting(pi)?
    } else {
        solve_lift(&id, pi)?
    };
    if let Some(s) = &sigma {
        if !pi.after(s)?.equals(&id) {
            return Err(Error::Inconsistent("section does not split the epimorphism".into()));
        }
    }
    Ok(sigma)
}

/// A complement `B′ ⊇ B` of `A` in `R^q`, or the nonzero obstruction `Ext¹(T, A)`.
#[derive(Debug, Clone)]
pub struct ComplementResult<R: Ring> {
    pub complement: Option<Submodule<R>>,
    /// `Ext¹(T, A)`.
    pub obstruction: FPModule<R>,
    pub contains_b: bool,
    pub meets_a_trivially: bool,
    pub spans_with_a: bool,
    /// The projection `B′ → R^q/A` is an isomorphism.
    pub isomorphic_to_m: bool,
}

impl<R: Ring> ComplementResult<R> {
    pub fn verified(&self) -> bool {
        self.complement.is_some() && self.contains_b && self.meets_a_trivially && self.spans_with_a && self.isomorphic_to_m
    }
}

/// `0 → A → N → T → 0` with `A ≅ S/B` embedded in `N = R^q/B`.
fn interconnection_sequence<R: Ring>(inst: &SubdirectInstance<R>) -> Result<(FPModule<R>, ShortExactSequence<R>)> {
    let (a_mod, _) = inst.a.as_module()?;
    let iota = Morphism::new(&a_mod, &inst.n(), inst.a.generator_matrix())?;
    let pi = cokernel(&iota)?;
    Ok((a_mod, ShortExactSequence::new(iota, pi)?))
}

pub fn complement_above<R: Ring>(inst: &SubdirectInstance<R>) -> Result<ComplementResult<R>> {
    if !check_regular(inst)? {
        return Err(Error::Precondition("A ∩ B ≠ 0".into()));
    }
    let ring = &inst.ring;
    let (a_mod, ses) = interconnection_sequence(inst)?;
    let t = ses.epi().target().clone();
    let obstruction = ext(1, &t, &a_mod)?;
    let mut result = ComplementResult {
        complement: None,
        obstruction,
        contains_b: false,
        meets_a_trivially: false,
        spans_with_a: false,
        isomorphic_to_m: false,
    };
    if !result.obstruction.is_zero() {
        return Ok(result);
    }
    let sigma = ses
        .section()?
        .ok_or_else(|| Error::Inconsistent("Ext¹(T, A) = 0 but 0 → A → N → T → 0 does not split".into()))?;
    let mut gens = inst.b.generators().to_vec();
    gens.extend(sigma.matrix().columns().iter().cloned());
    let complement = Submodule::new(ring, inst.q, &gens)?;
    result.contains_b = complement.contains_submodule(&inst.b);
    result.meets_a_trivially = complement.intersect(&inst.a)?.is_zero();
    result.spans_with_a = complement.sum(&inst.a)?.is_full();
    let (c_mod, _) = complement.as_module()?;
    let projection = Morphism::new(&c_mod, &inst.m(), complement.generator_matrix())?;
    result.isomorphic_to_m = projection.is_iso()?;
    result.complement = Some(complement);
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    NotRegular,
    GradeTooSmall,
    BudgetExceeded,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureReason::NotRegular => "not_regular",
            FailureReason::GradeTooSmall => "grade_too_small",
            FailureReason::BudgetExceeded => "budget_exceeded",
        }
    }
}

/// Outcome of [`certify`].
#[derive(Debug, Clone)]
pub struct Certificate<R: Ring> {
    pub regular: bool,
    pub grade_t: Option<GradeValue>,
    pub hypothesis_met: bool,
    /// Preimage `A′ ⊇ A` of `tor(M)` in `R^q`.
    pub torsion_preimage: Option<Submodule<R>>,
    /// `R^q/A′ ≅ M/tor(M)`.
    pub tf_factor: Option<FPModule<R>>,
    pub projective: bool,
    pub rank: usize,
    /// A section of `R^q → R^q/A′`.
    pub section: Option<Morphism<R>>,
    pub stably_free_note: bool,
    /// `A′ ∩ B = 0`, checked when the hypothesis holds.
    pub torsion_preimage_regular: Option<bool>,
    /// `grade R^q/(A′ + B)`, computed when the hypothesis holds.
    pub grade_after_quotient: Option<GradeValue>,
    pub failure_reason: Option<FailureReason>,
}

impl<R: Ring> Certificate<R> {
    fn failed(reason: FailureReason) -> Self {
        Certificate {
            regular: false,
            grade_t: None,
            hypothesis_met: false,
            torsion_preimage: None,
            tf_factor: None,
            projective: false,
            rank: 0,
            section: None,
            stably_free_note: false,
            torsion_preimage_regular: None,
            grade_after_quotient: None,
            failure_reason: Some(reason),
        }
    }

    /// Re-check the claims of an accepting certificate: projectivity and the
    /// section identity `π ∘ σ = id`.
    pub fn verify(&self, inst: &SubdirectInstance<R>) -> Result<bool> {
        if !self.hypothesis_met {
            return Ok(true);
        }
        let (Some(tf), Some(sigma)) = (&self.tf_factor, &self.section) else {
            return Ok(false);
        };
        let ring = inst.ring();
        let pi = Morphism::new(&FPModule::free(ring, inst.q), tf, Matrix::identity(ring, inst.q))?;
        Ok(self.projective
            && self.torsion_preimage_regular == Some(true)
            && self.grade_after_quotient.is_some_and(|g| g.at_least(2))
            && pi.after(sigma)?.equals(&Morphism::identity(tf)))
    }
}

/// Decide the grade-two hypothesis for `(A, B)` and, when it holds, certify
/// that `M/tor(M)` is projective with an explicit section of `R^q → M/tor(M)`.
///
/// The torsion-free factor and its projectivity are reported in every case.
pub fn certify<R: Ring>(inst: &SubdirectInstance<R>) -> Result<Certificate<R>> {
    match certify_inner(inst) {
        Err(Error::BudgetExceeded { .. }) => Ok(Certificate::failed(FailureReason::BudgetExceeded)),
        other => other,
    }
}

fn certify_inner<R: Ring>(inst: &SubdirectInstance<R>) -> Result<Certificate<R>> {
    let ring = inst.ring();
    let q = inst.q;
    let regular = check_regular(inst)?;
    let t = interconnection_module(inst)?;
    let grade_t = grade(&t)?;
    let hypothesis_met = regular && grade_t.at_least(2);

    let m = inst.m();
    let tor = torsion_submodule(&m)?;
    let a_prime = tor.preimage;
    let tf = a_prime.quotient();
    let verdict = is_projective(&tf)?;

    let mut cert = Certificate {
        regular,
        grade_t: Some(grade_t),
        hypothesis_met,
        torsion_preimage: Some(a_prime.clone()),
        tf_factor: Some(tf.clone()),
        projective: verdict.projective,
        rank: verdict.rank,
        section: None,
        stably_free_note: verdict.projective,
        torsion_preimage_regular: None,
        grade_after_quotient: None,
        failure_reason: if !regular {
            Some(FailureReason::NotRegular)
        } else if !hypothesis_met {
            Some(FailureReason::GradeTooSmall)
        } else {
            None
        },
    };
    if verdict.projective {
        let pi = Morphism::new(&FPModule::free(ring, q), &tf, Matrix::identity(ring, q))?;
        cert.section = split_surjection(&pi)?;
    }
    if hypothesis_met {
        cert.torsion_preimage_regular = Some(a_prime.intersect(&inst.b)?.is_zero());
        cert.grade_after_quotient = Some(grade(&a_prime.sum(&inst.b)?.quotient())?);
    }
    Ok(cert)
}

/// Both sides of the equivalence "the extension `0 → A → N → T → 0` splits
/// iff `Ext¹(T, A) = 0`", valid when `Ext¹(T, R^q) = 0`.
#[derive(Debug, Clone)]
pub struct AppendixReport<R: Ring> {
    pub splits: bool,
    pub retraction: Option<Morphism<R>>,
    pub ext1_t_a: FPModule<R>,
    pub ext1_vanishes: bool,
    pub equivalent: bool,
}

pub fn appendix_equivalence_check<R: Ring>(inst: &SubdirectInstance<R>) -> Result<AppendixReport<R>> {
    if !check_regular(inst)? {
        return Err(Error::Precondition("A ∩ B ≠ 0, so A → N is not injective".into()));
    }
    let ring = inst.ring();
    let (a_mod, ses) = interconnection_sequence(inst)?;
    let t = ses.epi().target().clone();
    if !ext(1, &t, &FPModule::free(ring, 1))?.is_zero() {
        return Err(Error::Precondition("Ext¹(T, P) ≠ 0".into()));
    }
    let retraction = ses.retraction()?;
    if let Some(r) = &retraction {
        if !r.after(ses.mono())?.equals(&Morphism::identity(&a_mod)) {
            return Err(Error::Inconsistent("retraction does not restrict to the identity".into()));
        }
    }
    let ext1_t_a = ext(1, &t, &a_mod)?;
    let splits = retraction.is_some();
    let ext1_vanishes = ext1_t_a.is_zero();
    Ok(AppendixReport {
        splits,
        retraction,
        ext1_t_a,
        ext1_vanishes,
        equivalent: splits == ext1_vanishes,
    })
}
