use serde_json::{json, Value};

use subdirect_core::format::{format_vectors, matrix_json, module_json, submodule_json};
use subdirect_core::homology::GradeValue;
use subdirect_core::ring::Ring;
use subdirect_core::snf::GroupStructure;
use subdirect_core::subdirect::{AppendixReport, Certificate, ComplementResult, SubdirectInstance};

pub fn grade(g: GradeValue) -> Value {
    serde_json::to_value(g).expect("grade serializes")
}

fn opt<T>(v: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    v.map(f).unwrap_or(Value::Null)
}

pub fn elements<R: Ring>(ring: &R, v: &[R::Elem]) -> Value {
    json!(v.iter().map(|e| ring.format(e)).collect::<Vec<_>>())
}

pub fn vectors<R: Ring>(ring: &R, vs: &[Vec<R::Elem>]) -> Value {
    json!(format_vectors(ring, vs))
}

pub fn group(g: &GroupStructure) -> Value {
    json!({
        "free_rank": g.free_rank,
        "torsion": g.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

pub fn certificate<R: Ring>(inst: &SubdirectInstance<R>, c: &Certificate<R>, verified: bool) -> Value {
    let grade_t = opt(c.grade_t, grade);
    let tf = opt(c.tf_factor.as_ref(), module_json);
    let note = if c.projective {
        Value::from("the torsion-free factor is projective, hence stably free; freeness follows when the ring is Hermite and is not certified here")
    } else {
        Value::Null
    };
    json!({
        "q": inst.q(),
        "regular": c.regular,
        "regular_interconnection": c.regular,
        "grade_t": grade_t,
        "autonomy_degree": grade_t,
        "hypothesis_met": c.hypothesis_met,
        "torsion_preimage": opt(c.torsion_preimage.as_ref(), submodule_json),
        "tf_factor": tf,
        "largest_controllable_subbehavior": tf,
        "projective": c.projective,
        "rank": c.rank,
        "section": opt(c.section.as_ref(), |s| matrix_json(s.ring(), s.matrix())),
        "section_verified": verified,
        "stably_free_note": c.stably_free_note,
        "remark": note,
        "torsion_preimage_regular": c.torsion_preimage_regular,
        "grade_after_quotient": opt(c.grade_after_quotient, grade),
        "failure_reason": opt(c.failure_reason, |r| Value::from(r.as_str())),
    })
}

pub fn complement<R: Ring>(c: &ComplementResult<R>) -> Value {
    json!({
        "regular": true,
        "complement": opt(c.complement.as_ref(), submodule_json),
        "obstruction": module_json(&c.obstruction),
        "obstruction_vanishes": c.obstruction.is_zero(),
        "contains_b": c.contains_b,
        "meets_a_trivially": c.meets_a_trivially,
        "spans_with_a": c.spans_with_a,
        "isomorphic_to_m": c.isomorphic_to_m,
        "verified": c.verified(),
    })
}

pub fn appendix<R: Ring>(r: &AppendixReport<R>) -> Value {
    json!({
        "splits": r.splits,
        "retraction": opt(r.retraction.as_ref(), |m| matrix_json(m.ring(), m.matrix())),
        "ext1_t_a": module_json(&r.ext1_t_a),
        "ext1_vanishes": r.ext1_vanishes,
        "equivalent": r.equivalent,
    })
}
