use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use subdirect_core::format::{
    matrix_json, module_json, parse_vector, submodule_json, AnyRing, InstanceSpec, ModuleSpec, SubmoduleSpec,
};
use subdirect_core::fpmod::{dual, kernel, FPModule, Morphism};
use subdirect_core::groebner;
use subdirect_core::homology::{
    annihilator, auslander_dual, codimension, ext, free_embedding, free_resolution, grade, torsion_submodule,
    torsionfree_factor,
};
use subdirect_core::random::seeded;
use subdirect_core::ring::{IntegerRing, Matrix, Ring};
use subdirect_core::snf::{group_structure, oracle_homology};
use subdirect_core::subdirect::{
    appendix_equivalence_check, certify, check_regular, complement_above, is_projective, random_shear,
    split_surjection, structured_family, FailureReason, SubdirectInstance,
};
use subdirect_core::Error;

use crate::input::{self, convert, CliError, CliResult, Source};
use crate::{report, Command, InstanceArgs, ModuleArgs, Outcome, Status};

macro_rules! dispatch {
    ($ring:expr, $r:ident => $body:expr) => {
        match $ring {
            AnyRing::Polynomial($r) => $body,
            AnyRing::Integers($r) => $body,
        }
    };
}

fn holds(report: Value) -> CliResult<Outcome> {
    Ok(Outcome {
        report,
        status: Status::Holds,
    })
}


/// Run `$body` with `$m` bound to the parsed module, for either ring backend.
macro_rules! on_module {
    ($args:expr, $budget:expr, |$m:ident| $body:expr) => {{
        let (ring, src, spec) = module_input($args, $budget)?;
        dispatch!(&ring, r => {
            let $m = convert(&src, spec.to_module(r))?;
            $body
        })
    }};
}

macro_rules! on_gens {
    ($args:expr, $budget:expr, |$r:ident, $q:ident, $gens:ident| $body:expr) => {{
        let ring = input::ring(&$args.ring.ring, $budget)?;
        let (src, spec) = input::submodule_spec(&$args.gens)?;
        dispatch!(&ring, $r => {
            let ($q, $gens) = convert(&src, spec.to_generators($r, $args.q, "gens"))?;
            $body
        })
    }};
}

macro_rules! on_instance {
    ($args:expr, $budget:expr, |$i:ident| $body:expr) => {{
        let loaded = single_instance($args, $budget)?;
        dispatch!(&loaded.ring, r => {
            let $i = build(r, &loaded)?;
            $body
        })
    }};
}

fn module_input(args: &ModuleArgs, budget: Option<usize>) -> CliResult<(AnyRing, Source, ModuleSpec)> {
    let ring = input::ring(&args.ring.ring, budget)?;
    let (src, spec) = input::module_spec(&args.module)?;
    Ok((ring, src, spec))
}

pub fn run(cmd: &Command, budget: Option<usize>) -> CliResult<Outcome> {
    match cmd {
        Command::Gb(args) => on_gens!(args, budget, |r, q, gens| {
            let basis = r.standard_basis(&gens, q)?;
            holds(json!({"rank": q, "basis": report::vectors(r, &basis)}))
        }),
        Command::Nf { gens, vector } => {
            let vsrc = Source::read(vector)?;
            on_gens!(gens, budget, |r, q, gens| {
                let v = vsrc.parse(|v: Vec<String>| parse_vector(r, &v, "vector"))?;
                if v.len() != q {
                    return Err(CliError::Usage(format!("vector has {} entries, expected {q}", v.len())));
                }
                let basis = r.standard_basis(&gens, q)?;
                let nf = r.reduce(&v, &basis).remainder;
                let lift = groebner::lift(r, &v, &gens, q)?;
                holds(json!({
                    "normal_form": report::elements(r, &nf),
                    "member": r.is_zero_vector(&nf),
                    "lift": lift.map(|c| report::elements(r, &c)),
                }))
            })
        }
        Command::Syz(args) => on_gens!(args, budget, |r, q, gens| {
            let syz = groebner::syzygies(r, &gens, q)?;
            holds(json!({"generators": gens.len(), "syzygies": report::vectors(r, &syz)}))
        }),
        Command::Intersect(args) => on_instance!(args, budget, |i| {
            let meet = i.a().intersect(i.b())?;
            holds(json!({
                "rank": i.q(),
                "generators": report::vectors(i.ring(), meet.generators()),
                "zero": meet.is_zero(),
            }))
        }),
        Command::Resolve { module, length } => on_module!(module, budget, |m| {
            let r = m.ring();
            let res = free_resolution(&m, length.unwrap_or(r.global_dimension() + 1))?;
            holds(json!({
                "ranks": res.ranks(),
                "complete": res.is_complete(),
                "augmentation": matrix_json(r, res.augmentation()),
                "differentials": res.differentials().iter().map(|d| matrix_json(r, d)).collect::<Vec<_>>(),
                "verified": res.verify(&m)?,
            }))
        }),
        Command::Ext { module, i, target } => {
            let target = target.as_deref().map(input::module_spec).transpose()?;
            on_module!(module, budget, |m| {
                let n = match &target {
                    Some((src, spec)) => convert(src, spec.to_module(m.ring()))?,
                    None => FPModule::free(m.ring(), 1),
                };
                let e = ext(*i, &m, &n)?;
                holds(json!({"i": i, "ext": module_json(&e), "zero": e.is_zero()}))
            })
        }
        Command::Grade(args) => on_module!(args, budget, |m| {
            let g = report::grade(grade(&m)?);
            holds(json!({"grade": g, "autonomy_degree": g}))
        }),
        Command::Codim(args) => on_module!(args, budget, |m| {
            holds(json!({"codimension": report::grade(codimension(&m)?)}))
        }),
        Command::Annihilator(args) => on_module!(args, budget, |m| {
            let ann = annihilator(&m)?;
            let gens: Vec<_> = ann.generators().iter().map(|v| v[0].clone()).collect();
            holds(json!({
                "generators": report::elements(m.ring(), &gens),
                "unit_ideal": ann.is_full(),
                "zero": ann.is_zero(),
            }))
        }),
        Command::Auslander(args) => on_module!(args, budget, |m| {
            holds(json!({"transpose": module_json(&auslander_dual(&m)?)}))
        }),
        Command::Torsion(args) => on_module!(args, budget, |m| {
            let t = torsion_submodule(&m)?;
            holds(json!({
                "torsion": module_json(t.inclusion.source()),
                "inclusion": matrix_json(m.ring(), t.inclusion.matrix()),
                "torsion_preimage": submodule_json(&t.preimage),
                "torsion_free": t.inclusion.source().is_zero(),
            }))
        }),
        Command::TfFactor(args) => on_module!(args, budget, |m| {
            let p = torsionfree_factor(&m)?;
            holds(json!({"tf_factor": module_json(p.target()), "projection": matrix_json(m.ring(), p.matrix())}))
        }),
        Command::Embed(args) => on_module!(args, budget, |m| match free_embedding(&m) {
            Ok(f) => holds(json!({
                "torsion_free": true,
                "free_rank": f.target().generators(),
                "embedding": matrix_json(m.ring(), f.matrix()),
                "kernel_zero": kernel(&f)?.source().is_zero(),
            })),
            Err(Error::NotTorsionFree { witness }) => Ok(Outcome {
                report: json!({"torsion_free": false, "witness": witness}),
                status: Status::Fails,
            }),
            Err(e) => Err(e.into()),
        }),
        Command::Split(args) => on_module!(args, budget, |m| {
            let r = m.ring();
            let g = m.generators();
            let pi = Morphism::new(&FPModule::free(r, g), &m, Matrix::identity(r, g))?;
            let section = split_surjection(&pi)?;
            let verdict = is_projective(&m)?;
            Ok(Outcome {
                report: json!({
                    "projective": verdict.projective,
                    "rank": verdict.rank,
                    "splits": section.is_some(),
                    "section": section.as_ref().map(|s| matrix_json(r, s.matrix())),
                }),
                status: Status::from_bool(section.is_some()),
            })
        }),
        Command::Complement(args) => on_instance!(args, budget, |i| {
            if !check_regular(&i)? {
                return Ok(Outcome {
                    report: json!({"regular": false}),
                    status: Status::Fails,
                });
            }
            let c = complement_above(&i)?;
            Ok(Outcome {
                report: report::complement(&c),
                status: Status::from_bool(c.verified()),
            })
        }),
        Command::Certify { instance, jobs } => certify_batch(instance, budget, *jobs),
        Command::AppendixCheck(args) => on_instance!(args, budget, |i| match appendix_equivalence_check(&i) {
            Ok(rep) => Ok(Outcome {
                report: report::appendix(&rep),
                status: Status::from_bool(rep.equivalent),
            }),
            Err(Error::Precondition(msg)) => Ok(Outcome {
                report: json!({"precondition_failed": msg}),
                status: Status::Fails,
            }),
            Err(e) => Err(e.into()),
        }),
        Command::Oracle { ring, module } => {
            if let Some(path) = ring {
                if !matches!(input::ring(path, budget)?, AnyRing::Integers(_)) {
                    return Err(CliError::Usage("the oracle works over the integers only".into()));
                }
            }
            oracle(module)
        }
        Command::Generate { seed, shears, dir } => generate(*seed, *shears, dir),
    }
}

/// An instance whose ring is known but whose submodules are not yet parsed.
pub struct LoadedInstance {
    label: String,
    ring: AnyRing,
    q: Option<usize>,
    a: (Source, SubmoduleSpec),
    b: (Source, SubmoduleSpec),
}

fn from_flags(args: &InstanceArgs, budget: Option<usize>) -> CliResult<LoadedInstance> {
    let (Some(ring), Some(a), Some(b)) = (&args.ring, &args.a, &args.b) else {
        return Err(CliError::Usage(
            "give either --instance FILE or all of --ring, --A and --B".into(),
        ));
    };
    Ok(LoadedInstance {
        label: a.display().to_string(),
        ring: input::ring(ring, budget)?,
        q: args.q,
        a: input::submodule_spec(a)?,
        b: input::submodule_spec(b)?,
    })
}

fn from_file(path: &Path, budget: Option<usize>) -> CliResult<LoadedInstance> {
    let (src, spec) = input::instance_spec(path)?;
    let descriptor = convert(&src, spec.ring.descriptor())?;
    let ring = convert(&src, AnyRing::from_descriptor(&descriptor, budget))?;
    let InstanceSpec { q, a, b, .. } = spec;
    Ok(LoadedInstance {
        label: path.display().to_string(),
        ring,
        q: Some(q),
        a: (src.clone(), a),
        b: (src, b),
    })
}

fn load_instances(args: &InstanceArgs, budget: Option<usize>) -> CliResult<Vec<LoadedInstance>> {
    if args.instance.is_empty() {
        return Ok(vec![from_flags(args, budget)?]);
    }
    if args.a.is_some() || args.b.is_some() || args.ring.is_some() {
        return Err(CliError::Usage("--instance cannot be combined with --ring, --A or --B".into()));
    }
    args.instance.iter().map(|p| from_file(p, budget)).collect()
}

fn single_instance(args: &InstanceArgs, budget: Option<usize>) -> CliResult<LoadedInstance> {
    let mut all = load_instances(args, budget)?;
    if all.len() != 1 {
        return Err(CliError::Usage("this subcommand takes exactly one instance".into()));
    }
    Ok(all.remove(0))
}

fn build<R: Ring>(ring: &R, l: &LoadedInstance) -> CliResult<SubdirectInstance<R>> {
    let q = l
        .q
        .or_else(|| l.a.1.rank())
        .or_else(|| l.b.1.rank())
        .ok_or_else(|| CliError::Usage("cannot infer q from empty generator lists; pass --q".into()))?;
    let (_, a) = convert(&l.a.0, l.a.1.to_generators(ring, Some(q), "A"))?;
    let (_, b) = convert(&l.b.0, l.b.1.to_generators(ring, Some(q), "B"))?;
    Ok(SubdirectInstance::new(ring, q, &a, &b)?)
}

fn certify_one(l: &LoadedInstance) -> CliResult<Outcome> {
    dispatch!(&l.ring, r => {
        let inst = build(r, l)?;
        let c = certify(&inst)?;
        let verified = c.hypothesis_met && c.verify(&inst)?;
        let status = match c.failure_reason {
            Some(FailureReason::BudgetExceeded) => Status::Error,
            _ => Status::from_bool(verified),
        };
        Ok(Outcome { report: report::certificate(&inst, &c, verified), status })
    })
}

fn certify_batch(args: &InstanceArgs, budget: Option<usize>, jobs: usize) -> CliResult<Outcome> {
    let loaded = load_instances(args, budget)?;
    if loaded.len() == 1 {
        return certify_one(&loaded[0]);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    let results: Vec<(String, CliResult<Outcome>)> =
        pool.install(|| loaded.par_iter().map(|l| (l.label.clone(), certify_one(l))).collect());
    let mut status = Status::Holds;
    let mut entries = Vec::with_capacity(results.len());
    for (file, res) in results {
        match res {
            Ok(o) => {
                status = status.max(o.status);
                entries.push(json!({"file": file, "certificate": o.report}));
            }
            Err(e) => {
                status = Status::Error;
                entries.push(json!({"file": file, "error": e.to_string()}));
            }
        }
    }
    Ok(Outcome {
        report: json!({"instances": entries}),
        status,
    })
}

fn oracle(path: &Path) -> CliResult<Outcome> {
    let (src, spec) = input::module_spec(path)?;
    let m = convert(&src, spec.to_module(&IntegerRing))?;
    let o = oracle_homology(&m);
    let tor = torsion_submodule(&m)?;
    let pipeline_torsion = group_structure(tor.inclusion.source());
    let pipeline_dual = group_structure(&dual(&m)?.module);
    let pipeline_ext1 = group_structure(&ext(1, &m, &FPModule::free(&IntegerRing, 1))?);
    let pipeline_grade = grade(&m)?;
    let agree = pipeline_torsion == o.torsion && pipeline_dual == o.dual && pipeline_ext1 == o.ext1 && pipeline_grade == o.grade;
    Ok(Outcome {
        report: json!({
            "oracle": {
                "structure": report::group(&o.structure),
                "torsion": report::group(&o.torsion),
                "dual": report::group(&o.dual),
                "ext1": report::group(&o.ext1),
                "grade": report::grade(o.grade),
            },
            "pipeline": {
                "torsion": report::group(&pipeline_torsion),
                "dual": report::group(&pipeline_dual),
                "ext1": report::group(&pipeline_ext1),
                "grade": report::grade(pipeline_grade),
            },
            "agree": agree,
        }),
        status: Status::from_bool(agree),
    })
}

fn write_instance(path: &Path, inst: &SubdirectInstance<impl Ring>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(&InstanceSpec::from_instance(inst)).expect("instance serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Input {
        file: path.to_path_buf(),
        line: None,
        token: None,
        message: e.to_string(),
    })
}

fn generate(seed: u64, shears: usize, dir: &Path) -> CliResult<Outcome> {
    fs::create_dir_all(dir).map_err(|e| CliError::Input {
        file: dir.to_path_buf(),
        line: None,
        token: None,
        message: e.to_string(),
    })?;
    let mut rng = seeded(seed);
    let mut files: Vec<PathBuf> = Vec::new();
    for (k, member) in structured_family().iter().enumerate() {
        let base = &member.instance;
        let path = dir.join(format!("{k:02}-base.json"));
        write_instance(&path, base)?;
        files.push(path);
        for s in 0..shears {
            let g = random_shear(base.ring(), base.q(), 6, &mut rng);
            let path = dir.join(format!("{k:02}-shear{s}.json"));
            write_instance(&path, &base.transform(&g)?)?;
            files.push(path);
        }
    }
    holds(json!({
        "seed": seed,
        "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
    }))
}
