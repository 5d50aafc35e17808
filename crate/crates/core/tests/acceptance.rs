//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits nonzero if any of them fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng as _, RngCore};

use subdirect_core::fpmod::{dual, kernel, FPModule, Submodule};
use subdirect_core::groebner::{self, buchberger, normal_form, satisfies_buchberger_criterion, ModuleOrder};
use subdirect_core::homology::{
    annihilator, auslander_dual, codimension, ext, free_embedding, grade, torsion_cross_check, torsion_submodule,
    GradeValue,
};
use subdirect_core::random::{self, seeded, PolyShape};
use subdirect_core::ring::{IntegerRing, MonomialOrder, PolyRing, Polynomial, Ring};
use subdirect_core::snf::{group_structure, oracle_homology};
use subdirect_core::subdirect::{
    appendix_equivalence_check, canonical_instance, certify, complement_above, is_projective, random_shear,
    structured_family, Certificate, FailureReason, SubdirectInstance,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: subdirect_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn qxy() -> PolyRing {
    PolyRing::new(["x", "y"], MonomialOrder::DegRevLex).unwrap()
}

fn qxyz() -> PolyRing {
    PolyRing::new(["x", "y", "z"], MonomialOrder::DegRevLex).unwrap()
}

fn vecs(r: &PolyRing, rows: &[&[&str]]) -> Vec<Vec<Polynomial>> {
    rows.iter().map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect()).collect()
}

fn pick_ring(rng: &mut impl RngCore) -> PolyRing {
    if rng.gen_bool(0.5) {
        qxy()
    } else {
        qxyz()
    }
}

fn gb_soundness() -> Check {
    let mut rng = seeded(1);
    let shape = PolyShape {
        max_degree: 2,
        max_terms: 3,
        coeff: 4,
        zero_percent: 30,
    };
    let mut nonzero_syzygies = 0;
    for case in 0..100 {
        let ring = pick_ring(&mut rng);
        let q = rng.gen_range(1..=3);
        let gens = random::vectors(&ring, q, rng.gen_range(1..=4), shape, &mut rng);
        let order = if rng.gen_bool(0.5) {
            ModuleOrder::position_over_term(ring.order(), q)
        } else {
            ModuleOrder::term_over_position(ring.order(), q)
        };
        let gb = ok(buchberger(&ring, &gens, &order))?;
        ensure(satisfies_buchberger_criterion(&ring, &gb), || format!("case {case}: criterion fails"))?;
        let member = ring.combine(&random::vectors(&ring, 1, gens.len(), shape, &mut rng).concat(), &gens, q);
        let probes = [member, random::vectors(&ring, q, 1, shape, &mut rng).remove(0)];
        for v in &probes {
            let nf = normal_form(&ring, v, &gb);
            ensure(normal_form(&ring, &nf, &gb) == nf, || format!("case {case}: normal form not idempotent"))?;
            let lift = ok(groebner::lift(&ring, v, &gens, q))?;
            ensure(ring.is_zero_vector(&nf) == lift.is_some(), || format!("case {case}: membership and lift disagree"))?;
            if let Some(c) = lift {
                ensure(&ring.combine(&c, &gens, q) == v, || format!("case {case}: lift does not reproduce the vector"))?;
            }
        }
        ensure(ring.is_zero_vector(&normal_form(&ring, &probes[0], &gb)), || format!("case {case}: member not reduced to zero"))?;
        for s in ok(groebner::syzygies(&ring, &gens, q))? {
            nonzero_syzygies += 1;
            ensure(ring.is_zero_vector(&ring.combine(&s, &gens, q)), || format!("case {case}: syzygy not exact"))?;
        }
    }
    Ok(format!("100 submodules, {nonzero_syzygies} syzygies checked"))
}

fn snf_cross_validation() -> Check {
    let mut rng = seeded(2);
    let z = IntegerRing;
    let mut torsion_cases = 0;
    for case in 0..200 {
        let m = ok(random::integer_module(rng.gen_range(1..=5), rng.gen_range(1..=6), 20, &mut rng))?;
        let o = oracle_homology(&m);
        let t = ok(torsion_submodule(&m))?;
        let d = ok(dual(&m))?;
        let e = ok(ext(1, &m, &FPModule::free(&z, 1)))?;
        let g = ok(grade(&m))?;
        ensure(group_structure(t.inclusion.source()) == o.torsion, || format!("case {case}: torsion"))?;
        ensure(group_structure(&d.module) == o.dual, || format!("case {case}: dual"))?;
        ensure(group_structure(&e) == o.ext1, || format!("case {case}: Ext¹"))?;
        ensure(g == o.grade, || format!("case {case}: grade {g} vs {}", o.grade))?;
        let preimage = ok(Submodule::new(&z, m.generators(), &o.torsion_preimage))?;
        ensure(ok(preimage.equals(&t.preimage))?, || format!("case {case}: torsion preimage"))?;
        if !o.torsion.is_zero() {
            torsion_cases += 1;
        }
    }
    Ok(format!("200 presentations, {torsion_cases} with torsion"))
}

fn small_module(ring: &PolyRing, rng: &mut impl RngCore) -> Result<FPModule<PolyRing>, String> {
    let shape = PolyShape {
        max_degree: 2,
        max_terms: 2,
        coeff: 3,
        zero_percent: 35,
    };
    let g = rng.gen_range(1..=3);
    ok(random::module(ring, g, rng.gen_range(1..=3), shape, rng))
}

/// R/I with up to one generator of I per variable, so that higher grades show up.
fn cyclic_module(ring: &PolyRing, rng: &mut impl RngCore) -> Result<FPModule<PolyRing>, String> {
    let shape = PolyShape {
        max_degree: 2,
        max_terms: 2,
        coeff: 3,
        zero_percent: 0,
    };
    let count = rng.gen_range(1..=ring.variables().len());
    ok(random::module(ring, 1, count, shape, rng))
}

fn epsilon_sequence() -> Check {
    let mut rng = seeded(3);
    let ring = qxy();
    let one = FPModule::free(&ring, 1);
    let mut with_torsion = 0;
    for case in 0..50 {
        let m = small_module(&ring, &mut rng)?;
        let t = ok(torsion_submodule(&m))?;
        let tor = t.inclusion.source();
        let check = ok(torsion_cross_check(&m))?;
        ensure(check.generators_are_torsion, || format!("case {case}: a generator of ker ε has zero annihilator"))?;
        ensure(tor.is_zero() || !ok(annihilator(tor))?.is_zero(), || format!("case {case}: ker ε not torsion"))?;
        ensure(check.factor_is_torsionless, || format!("case {case}: M/ker ε is not torsionless"))?;
        let tf = ok(subdirect_core::homology::torsionfree_factor(&m))?;
        ensure(ok(torsion_submodule(tf.target()))?.inclusion.source().is_zero(), || {
            format!("case {case}: second ε-kernel nonzero")
        })?;
        let ext1 = ok(ext(1, &ok(auslander_dual(&m))?, &one))?;
        ensure(ext1.is_zero() == tor.is_zero(), || format!("case {case}: Ext¹(A(M), R) = 0 ⟺ ker ε = 0 fails"))?;
        if !tor.is_zero() {
            with_torsion += 1;
        }
    }
    ensure(with_torsion > 0, || "no module with torsion was generated".into())?;
    Ok(format!("50 modules, {with_torsion} with nonzero torsion"))
}

fn grade_codim() -> Check {
    let mut rng = seeded(4);
    let mut seen = Vec::new();
    for case in 0..40 {
        let ring = pick_ring(&mut rng);
        let m = if case % 2 == 0 {
            small_module(&ring, &mut rng)?
        } else {
            cyclic_module(&ring, &mut rng)?
        };
        let g = ok(grade(&m))?;
        let c = ok(codimension(&m))?;
        ensure(g == c, || format!("case {case}: grade {g} but codimension {c}"))?;
        seen.push(g);
    }
    let r = qxy();
    let fixed = [
        (vecs(&r, &[&["x"], &["y"]]), GradeValue::Finite(2)),
        (vecs(&r, &[&["x"]]), GradeValue::Finite(1)),
        (vecs(&r, &[&["1"]]), GradeValue::Infinite),
    ];
    for (rels, want) in fixed {
        let m = ok(FPModule::from_relations(&r, 1, &rels))?;
        let g = ok(grade(&m))?;
        ensure(g == want, || format!("fixed point: grade {g}, expected {want}"))?;
    }
    let r3 = qxyz();
    let maximal = ok(FPModule::from_relations(&r3, 1, &vecs(&r3, &[&["x"], &["y"], &["z"]])))?;
    let g = ok(grade(&maximal))?;
    ensure(g == GradeValue::Finite(3), || format!("R/(x,y,z): grade {g}, expected 3"))?;
    seen.push(g);
    ensure(ok(grade(&FPModule::zero(&r)))? == GradeValue::Infinite, || "grade(0) is not infinite".into())?;
    seen.sort();
    seen.dedup();
    let values: Vec<String> = seen.iter().map(|g| g.to_string()).collect();
    Ok(format!("40 random modules and 4 fixed ones, grades seen {{{}}}", values.join(", ")))
}

struct Certified {
    instance: SubdirectInstance<PolyRing>,
    certificate: Certificate<PolyRing>,
}

fn projective_factor(certified: &mut Vec<Certified>) -> Check {
    let mut rng = seeded(5);
    for member in structured_family() {
        let base = &member.instance;
        let base_cert = ok(certify(base))?;
        for k in 0..6 {
            let g = random_shear(base.ring(), base.q(), 6, &mut rng);
            let inst = ok(base.transform(&g))?;
            let c = ok(certify(&inst))?;
            let name = format!("{} shear {k}", member.name);
            ensure(c.hypothesis_met, || format!("{name}: hypothesis not met ({:?})", c.failure_reason))?;
            ensure(c.projective, || format!("{name}: not projective"))?;
            ensure(ok(c.verify(&inst))?, || format!("{name}: section does not verify"))?;
            ensure(
                (c.regular, c.grade_t, c.projective, c.rank)
                    == (base_cert.regular, base_cert.grade_t, base_cert.projective, base_cert.rank),
                || format!("{name}: certificate not invariant under the change of coordinates"),
            )?;
            certified.push(Certified {
                instance: inst,
                certificate: c,
            });
        }
    }
    let canonical = canonical_instance();
    let c = ok(certify(&canonical))?;
    ensure(c.projective && c.rank == 1 && c.tf_factor.is_some(), || "canonical instance: tf factor not projective of rank 1".into())?;
    Ok(format!("{} sheared instances certified", certified.len()))
}

fn negatives() -> Check {
    let r = qxy();
    let inst = ok(SubdirectInstance::new(&r, 2, &vecs(&r, &[&["x", "y"]]), &vecs(&r, &[&["y", "x"]])))?;
    let c = ok(certify(&inst))?;
    ensure(c.failure_reason == Some(FailureReason::GradeTooSmall), || format!("grade-1 instance: {:?}", c.failure_reason))?;
    let v = ok(is_projective(&inst.m()))?;
    ensure(!v.projective, || "grade-1 instance: M reported projective".into())?;
    let q1: [(&str, &str); 4] = [("x", "y"), ("x^2", "x*y + 1"), ("x + y", "x + y"), ("y^2 - x", "3")];
    for (a, b) in q1 {
        let inst = ok(SubdirectInstance::new(&r, 1, &vecs(&r, &[&[a]]), &vecs(&r, &[&[b]])))?;
        let c = ok(certify(&inst))?;
        ensure(c.failure_reason == Some(FailureReason::NotRegular), || format!("q = 1, A = ({a}), B = ({b}): {:?}", c.failure_reason))?;
    }
    Ok("grade_too_small and non-projective; 4 rank-one instances not_regular".into())
}

fn complements(certified: &[Certified]) -> Check {
    let mut checked = 0;
    for (k, item) in certified.iter().enumerate() {
        if !item.certificate.hypothesis_met {
            continue;
        }
        let a_prime = item.certificate.torsion_preimage.clone().ok_or("missing torsion preimage")?;
        let quotient = ok(SubdirectInstance::from_submodules(a_prime, item.instance.b().clone()))?;
        let c = ok(complement_above(&quotient))?;
        ensure(c.verified(), || format!("instance {k}: complement not verified"))?;
        let b_prime = c.complement.as_ref().unwrap();
        ensure(b_prime.contains_submodule(item.instance.b()), || format!("instance {k}: B ⊄ B′"))?;
        checked += 1;
    }
    let canonical = canonical_instance();
    let c = ok(complement_above(&canonical))?;
    let r = canonical.ring();
    let residue_field = ok(FPModule::from_relations(r, 1, &vecs(r, &[&["x"], &["y"]])))?;
    ensure(c.complement.is_none(), || "canonical instance: complement found".into())?;
    ensure(c.obstruction == residue_field, || "canonical instance: Ext¹(T, A) is not R/(x,y)".into())?;
    Ok(format!("{checked} complements verified; canonical obstruction R/(x,y)"))
}

/// `A = 0 ⊕ R^b`, `B = U ⊕ 0`: the same quotient `T = R^a/U`, but now `A` is a summand of `N`.
fn swapped(inst: &SubdirectInstance<PolyRing>) -> Result<SubdirectInstance<PolyRing>, String> {
    ok(SubdirectInstance::new(inst.ring(), inst.q(), inst.b().generators(), inst.a().generators()))
}

fn splitting_vs_ext() -> Check {
    let mut rng = seeded(8);
    let family = structured_family();
    let mut chosen: Vec<_> = family.iter().collect();
    chosen.shuffle(&mut rng);
    let mut split = 0;
    let mut nonsplit = 0;
    for (k, member) in chosen.iter().take(20).enumerate() {
        let base = if k % 2 == 0 { member.instance.clone() } else { swapped(&member.instance)? };
        let g = random_shear(base.ring(), base.q(), 6, &mut rng);
        let inst = ok(base.transform(&g))?;
        let t = inst.s().map(|s| s.quotient()).map_err(|e| e.to_string())?;
        ensure(ok(grade(&t))?.at_least(2), || format!("{}: grade(T) < 2", member.name))?;
        let rep = ok(appendix_equivalence_check(&inst))?;
        ensure(rep.equivalent, || format!("{}: split = {} but Ext¹(T,A) = 0 is {}", member.name, rep.splits, rep.ext1_vanishes))?;
        if rep.splits {
            split += 1;
        } else {
            nonsplit += 1;
        }
    }
    ensure(split > 0 && nonsplit > 0, || format!("only one direction exercised ({split} split, {nonsplit} not)"))?;
    let rep = ok(appendix_equivalence_check(&canonical_instance()))?;
    ensure(!rep.splits && !rep.ext1_vanishes, || "canonical witness does not report both sides false".into())?;
    Ok(format!("20 instances ({split} split, {nonsplit} non-split); canonical witness false/false"))
}

fn embeddings(certified: &[Certified]) -> Check {
    let r = qxy();
    let mut modules: Vec<FPModule<PolyRing>> = Vec::new();
    for item in certified.iter().step_by(6) {
        if modules.len() == 19 {
            break;
        }
        modules.extend(item.certificate.tf_factor.clone());
    }
    ensure(modules.len() == 19, || format!("only {} torsion-free factors available", modules.len()))?;
    modules.push(ok(FPModule::from_relations(&r, 2, &vecs(&r, &[&["x", "y"]])))?);
    let count = modules.len();
    for (k, m) in modules.iter().enumerate() {
        let f = ok(free_embedding(m))?;
        ensure(ok(f.is_mono())?, || format!("module {k}: embedding not injective"))?;
        ensure(ok(kernel(&f))?.source().is_zero(), || format!("module {k}: kernel nonzero"))?;
    }
    Ok(format!("{count} torsion-free modules embedded"))
}

fn grade_inheritance() -> Check {
    let mut rng = seeded(10);
    let family = structured_family();
    let shape = PolyShape {
        max_degree: 2,
        max_terms: 3,
        coeff: 3,
        zero_percent: 20,
    };
    let mut zero_factors = 0;
    for case in 0..30 {
        let member = family.choose(&mut rng).unwrap();
        let inst = &member.instance;
        let ring = inst.ring();
        // T = R^q/(A + B) is a grade-two torsion module
        let base = ok(inst.s())?;
        ensure(ok(grade(&base.quotient()))?.at_least(2), || format!("case {case}: base grade < 2"))?;
        let extra = random::vectors(ring, inst.q(), rng.gen_range(1..=2), shape, &mut rng);
        let mut gens = base.generators().to_vec();
        gens.extend(extra);
        let factor = ok(Submodule::new(ring, inst.q(), &gens))?.quotient();
        let g = ok(grade(&factor))?;
        ensure(g.at_least(2), || format!("case {case}: factor of {} has grade {g}", member.name))?;
        if factor.is_zero() {
            zero_factors += 1;
        }
    }
    Ok(format!("30 factors, {zero_factors} of them zero"))
}

struct Criterion {
    number: usize,
    name: &'static str,
    limit: Option<Duration>,
}

fn report(c: &Criterion, result: Check, elapsed: Duration) -> bool {
    let over = c.limit.is_some_and(|l| elapsed > l);
    let (status, detail) = match (&result, over) {
        (Ok(d), false) => ("PASS", d.clone()),
        (Ok(d), true) => ("FAIL", format!("{d}; exceeded {:?}", c.limit.unwrap())),
        (Err(e), _) => ("FAIL", e.clone()),
    };
    println!("[{status}] {:>2}. {} ({:.1}s): {detail}", c.number, c.name, elapsed.as_secs_f64());
    status == "PASS"
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let mut certified = Vec::new();
    let mut all = true;
    let mut run = |number, name, limit, f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let result = f();
        all &= report(&Criterion { number, name, limit }, result, start.elapsed());
    };
    run(1, "Gröbner soundness", secs(120), &mut gb_soundness);
    run(2, "Smith normal form cross-validation", secs(60), &mut snf_cross_validation);
    run(3, "torsion / evaluation-map sequence", secs(300), &mut epsilon_sequence);
    run(4, "grade equals codimension", secs(180), &mut grade_codim);
    run(5, "projective torsion-free factor", secs(600), &mut || projective_factor(&mut certified));
    run(6, "non-vacuity negatives", None, &mut negatives);
    run(7, "complements above B", None, &mut || complements(&certified));
    run(8, "splitting vs Ext¹(T, A)", secs(300), &mut splitting_vs_ext);
    run(9, "free embedding", secs(300), &mut || embeddings(&certified));
    run(10, "grade inheritance by factors", None, &mut grade_inheritance);
    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: some criteria failed");
        ExitCode::FAILURE
    }
}

