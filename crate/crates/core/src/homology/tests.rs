use super::*;
use crate::fpmod::{direct_sum, FPModule, Submodule};
use crate::ring::{IntegerRing, Matrix, MonomialOrder, PolyRing, Polynomial, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly(vars: &[&str]) -> PolyRing {
    PolyRing::new(vars.iter().copied(), MonomialOrder::DegRevLex).unwrap()
}

fn module<R: Ring>(r: &R, g: usize, rels: &[&[&str]]) -> FPModule<R> {
    let cols = rels.iter().map(|c| c.iter().map(|s| r.parse(s).unwrap()).collect()).collect();
    FPModule::present(r, &Matrix::from_columns(g, cols).unwrap(), g).unwrap()
}

fn ideal<R: Ring>(r: &R, gens: &[&str]) -> Submodule<R> {
    Submodule::new(r, 1, &gens.iter().map(|s| vec![r.parse(s).unwrap()]).collect::<Vec<_>>()).unwrap()
}

#[test]
fn resolution_examples() {
    let r = poly(&["x", "y"]);
    let free = FPModule::free(&r, 2);
    let res = free_resolution(&free, 3).unwrap();
    assert_eq!(res.ranks(), vec![2]);
    assert!(res.is_complete());
    assert!(res.verify(&free).unwrap());

    let t0 = module(&r, 1, &[&["x"], &["y"]]);
    let res = free_resolution(&t0, 3).unwrap();
    assert_eq!(res.ranks(), vec![1, 2, 1]);
    assert!(res.is_complete());
    assert!(res.verify(&t0).unwrap());
    let d2 = &res.differentials()[1];
    let expected = [r.parse("y").unwrap(), r.parse("-x").unwrap()];
    let neg: Vec<Polynomial> = expected.iter().map(|p| r.neg(p)).collect();
    assert!(d2.column(0) == expected || d2.column(0) == neg.as_slice());

    let z = IntegerRing;
    let z6 = module(&z, 1, &[&["6"]]);
    let res = free_resolution(&z6, 2).unwrap();
    assert_eq!(res.ranks(), vec![1, 1]);
    assert_eq!(res.differentials()[0].column(0), &[BigInt::from(6)]);
    assert!(free_resolution(&z6, 0).is_err());
}

#[test]
fn resolutions_prune_unit_entries() {
    let r = poly(&["x", "y"]);
    let m = module(&r, 2, &[&["x", "0"], &["y", "0"], &["0", "1"]]);
    let res = free_resolution(&m, 3).unwrap();
    assert_eq!(res.ranks(), vec![1, 2, 1]);
    assert!(res.verify(&m).unwrap());
}

#[test]
fn ext_examples() {
    let r = poly(&["x", "y"]);
    let rr = FPModule::free(&r, 1);
    let free = FPModule::free(&r, 2);
    for i in 1..3 {
        assert!(ext(i, &free, &rr).unwrap().is_zero());
    }
    let t0 = module(&r, 1, &[&["x"], &["y"]]);
    assert!(ext(0, &t0, &rr).unwrap().is_zero());
    assert!(ext(1, &t0, &rr).unwrap().is_zero());
    let e2 = ext(2, &t0, &rr).unwrap();
    assert_eq!(e2, t0);

    // Ext¹(R/(x,y), (x,y)) ≅ R/(x,y)
    let (m, _) = ideal(&r, &["x", "y"]).as_module().unwrap();
    let e = ext(1, &t0, &m).unwrap();
    assert_eq!(e.generators(), 1);
    assert!(annihilator(&e).unwrap().equals(&ideal(&r, &["x", "y"])).unwrap());

    // Ext⁰(M, R) ≅ M*
    let m = module(&r, 2, &[&["x", "y"]]);
    let e0 = ext(0, &m, &rr).unwrap();
    let d = crate::fpmod::dual(&m).unwrap().module.simplify().unwrap().0;
    assert_eq!(e0.generators(), d.generators());
    for k in 0..=d.generators() {
        assert!(fitting_ideal(&e0, k).unwrap().equals(&fitting_ideal(&d, k).unwrap()).unwrap());
    }
}

#[test]
fn grade_examples() {
    let r = poly(&["x", "y"]);
    assert_eq!(grade(&FPModule::zero(&r)).unwrap(), GradeValue::Infinite);
    assert_eq!(grade(&module(&r, 1, &[&["1"]])).unwrap(), GradeValue::Infinite);
    assert_eq!(grade(&FPModule::free(&r, 1)).unwrap(), GradeValue::Finite(0));
    assert_eq!(grade(&module(&r, 1, &[&["x"], &["y"]])).unwrap(), GradeValue::Finite(2));
    assert_eq!(grade(&module(&r, 1, &[&["x"]])).unwrap(), GradeValue::Finite(1));
    assert_eq!(grade(&module(&IntegerRing, 1, &[&["6"]])).unwrap(), GradeValue::Finite(1));
    assert!(GradeValue::Infinite.at_least(5));
    assert!(GradeValue::Finite(2).at_least(2));
    assert!(!GradeValue::Finite(1).at_least(2));
    assert_eq!(serde_json::to_string(&GradeValue::Finite(2)).unwrap(), "2");
    assert_eq!(serde_json::to_string(&GradeValue::Infinite).unwrap(), "\"infinite\"");
}

#[test]
fn annihilator_examples() {
    let r = poly(&["x", "y"]);
    let t0 = module(&r, 1, &[&["x"], &["y"]]);
    assert!(annihilator(&t0).unwrap().equals(&ideal(&r, &["x", "y"])).unwrap());
    assert!(annihilator(&FPModule::free(&r, 2)).unwrap().is_zero());
    let m = module(&r, 2, &[&["x", "0"], &["0", "y"]]);
    assert!(annihilator(&m).unwrap().equals(&ideal(&r, &["x*y"])).unwrap());
}

#[test]
fn codimension_examples() {
    let r = poly(&["x", "y"]);
    assert_eq!(codimension(&module(&r, 1, &[&["x"], &["y"]])).unwrap(), GradeValue::Finite(2));
    assert_eq!(codimension(&module(&r, 1, &[&["x"]])).unwrap(), GradeValue::Finite(1));
    assert_eq!(codimension(&FPModule::free(&r, 1)).unwrap(), GradeValue::Finite(0));
    assert_eq!(codimension(&FPModule::zero(&r)).unwrap(), GradeValue::Infinite);
    assert!(matches!(
        codimension(&module(&IntegerRing, 1, &[&["6"]])),
        Err(crate::Error::Unsupported(_))
    ));
}

#[test]
fn auslander_dual_examples() {
    let r = poly(&["x", "y"]);
    assert!(auslander_dual(&FPModule::free(&r, 3)).unwrap().is_zero());
    let m = module(&r, 2, &[&["x", "y"]]);
    assert_eq!(auslander_dual(&m).unwrap(), module(&r, 1, &[&["x"], &["y"]]));
    let z = IntegerRing;
    assert_eq!(auslander_dual(&module(&z, 1, &[&["6"]])).unwrap(), module(&z, 1, &[&["6"]]));
}

#[test]
fn torsion_examples() {
    let r = poly(&["x", "y"]);
    let t0 = module(&r, 1, &[&["x"], &["y"]]);
    let free = FPModule::free(&r, 1);
    let m = direct_sum(&t0, &free).unwrap().module;
    let tor = torsion_submodule(&m).unwrap();
    let expected = Submodule::new(
        &r,
        2,
        &[
            vec![r.one(), r.zero()],
            vec![r.zero(), r.zero()],
        ],
    )
    .unwrap()
    .sum(&Submodule::new(&r, 2, m.relations()).unwrap())
    .unwrap();
    assert!(tor.preimage.equals(&expected).unwrap());
    let f = torsionfree_factor(&m).unwrap();
    assert_eq!(f.target(), &free);
    assert!(torsion_cross_check(&m).unwrap().passed());

    let tf = module(&r, 2, &[&["x", "y"]]);
    assert!(torsion_submodule(&tf).unwrap().inclusion.source().is_zero());
    assert!(torsionfree_factor(&tf).unwrap().is_iso().unwrap());
    assert!(torsion_cross_check(&tf).unwrap().passed());

    assert!(torsionfree_factor(&t0).unwrap().target().is_zero());

    let z = IntegerRing;
    let zm = module(&z, 2, &[&["0", "6"]]);
    let tor = torsion_submodule(&zm).unwrap();
    let (ts, _, _) = tor.inclusion.source().simplify().unwrap();
    assert_eq!(ts.relations(), &[vec![BigInt::from(6)]]);
    assert!(torsion_cross_check(&zm).unwrap().passed());
}

#[test]
fn free_embedding_examples() {
    let r = poly(&["x", "y"]);
    let free = FPModule::free(&r, 2);
    assert!(free_embedding(&free).unwrap().is_iso().unwrap());

    let m = module(&r, 2, &[&["y", "-x"]]);
    let e = free_embedding(&m).unwrap();
    assert_eq!(e.target().generators(), 1);
    let x = r.parse("x").unwrap();
    let y = r.parse("y").unwrap();
    let cols = [e.matrix().column(0)[0].clone(), e.matrix().column(1)[0].clone()];
    assert!(cols == [x.clone(), y.clone()] || cols == [r.neg(&x), r.neg(&y)]);

    let m = module(&r, 2, &[&["x", "y"]]);
    let e = free_embedding(&m).unwrap();
    assert!(e.target().generators() <= 2);
    assert!(e.is_mono().unwrap());

    let t0 = module(&r, 1, &[&["x"], &["y"]]);
    assert!(matches!(free_embedding(&t0), Err(crate::Error::NotTorsionFree { .. })));
}

#[test]
fn hom_from_torsion_into_torsion_free_vanishes() {
    let r = poly(&["x", "y"]);
    let t = module(&r, 1, &[&["x"], &["y^2"]]);
    let m = module(&r, 2, &[&["x", "y"]]);
    assert!(hom_is_zero(&t, &m).unwrap());
    assert!(!hom_is_zero(&t, &t).unwrap());
}

fn small_poly(r: &PolyRing) -> impl Strategy<Value = Polynomial> + '_ {
    prop::collection::vec((-2i64..=2, 0u32..=2, 0u32..=1), 1..3).prop_map(move |ts| {
        let mut p = r.zero();
        for (c, a, b) in ts {
            let t = r.mul(&r.embed_int(c), &r.term(crate::ring::Monomial::new(&[a, b]), num_traits::One::one()));
            p = r.add(&p, &t);
        }
        p
    })
}

static RING: std::sync::OnceLock<PolyRing> = std::sync::OnceLock::new();

fn ring() -> &'static PolyRing {
    RING.get_or_init(|| poly(&["x", "y"]))
}

/// Cyclic or two-generator modules with up to three random relations.
fn module_strategy() -> impl Strategy<Value = FPModule<PolyRing>> {
    let r = ring();
    (1usize..=2, prop::collection::vec(prop::collection::vec(small_poly(r), 2), 1..=3)).prop_map(move |(g, rels)| {
        let cols: Vec<Vec<Polynomial>> = rels.into_iter().map(|c| c[..g].to_vec()).collect();
        FPModule::present(r, &Matrix::from_columns(g, cols).unwrap(), g).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn resolutions_are_exact(m in module_strategy()) {
        let res = free_resolution(&m, 3).unwrap();
        prop_assert!(res.verify(&m).unwrap());
        prop_assert!(res.length() <= 2 || !res.is_complete());
    }

    #[test]
    fn grade_equals_codimension(m in module_strategy()) {
        prop_assert_eq!(grade(&m).unwrap(), codimension(&m).unwrap());
    }

    #[test]
    fn grade_of_cyclic_annihilator_quotient(m in module_strategy()) {
        let ann = annihilator(&m).unwrap();
        let cyclic = ann.quotient();
        prop_assert_eq!(grade(&m).unwrap(), grade(&cyclic).unwrap());
    }

    #[test]
    fn evaluation_sequence_surrogates(m in module_strategy()) {
        let check = torsion_cross_check(&m).unwrap();
        prop_assert!(check.passed(), "{:?}", check);
        let a = auslander_dual(&m).unwrap();
        let rr = FPModule::free(ring(), 1);
        let e1 = ext(1, &a, &rr).unwrap();
        let tor_zero = torsion_submodule(&m).unwrap().inclusion.source().is_zero();
        prop_assert_eq!(e1.is_zero(), tor_zero);
        if e1.is_zero() && ext(2, &a, &rr).unwrap().is_zero() {
            let eps = crate::fpmod::evaluation_map(&m).unwrap();
            prop_assert!(eps.is_epi().unwrap());
        }
    }

    #[test]
    fn positive_grade_means_torsion(m in module_strategy()) {
        if grade(&m).unwrap().at_least(1) {
            let tor = torsion_submodule(&m).unwrap();
            prop_assert!(tor.inclusion.is_epi().unwrap());
        }
    }

    #[test]
    fn factors_inherit_grade_two(m in module_strategy(), extra in small_poly(ring())) {
        let r = ring();
        let t0 = Submodule::new(r, 1, &[vec![r.parse("x").unwrap()], vec![r.parse("y").unwrap()]]).unwrap();
        // T = R^g / (K + m²·R^g) has grade 2 unless zero; quotient further by `extra`
        let g = m.generators();
        let mut rels = m.relations().to_vec();
        for i in 0..g {
            for p in t0.generators() {
                for q in t0.generators() {
                    let mut v = r.zero_vector(g);
                    v[i] = r.mul(&p[0], &q[0]);
                    rels.push(v);
                }
            }
        }
        let t = FPModule::from_relations(r, g, &rels).unwrap();
        prop_assert!(grade(&t).unwrap().at_least(2));
        rels.push(r.scale_vector(&extra, &r.unit_vector(g, 0)));
        let factor = FPModule::from_relations(r, g, &rels).unwrap();
        prop_assert!(grade(&factor).unwrap().at_least(2));
    }

    #[test]
    fn ext_is_additive(m in module_strategy(), n in module_strategy()) {
        let r = ring();
        let rr = FPModule::free(r, 1);
        let sum = direct_sum(&n, &rr).unwrap().module;
        for i in 0..=1 {
            let whole = ext(i, &m, &sum).unwrap();
            let parts = direct_sum(&ext(i, &m, &n).unwrap(), &ext(i, &m, &rr).unwrap()).unwrap().module;
            prop_assert!(annihilator(&whole).unwrap().equals(&annihilator(&parts).unwrap()).unwrap());
            for k in 0..=1 {
                prop_assert!(fitting_ideal(&whole, k).unwrap().equals(&fitting_ideal(&parts, k).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn torsion_free_modules_embed(m in module_strategy()) {
        let f = torsionfree_factor(&m).unwrap();
        let e = free_embedding(f.target()).unwrap();
        prop_assert!(e.is_mono().unwrap());
    }
}

#[test]
fn three_variable_grade_and_codimension() {
    let r = poly(&["x", "y", "z"]);
    for (rels, expected) in [
        (vec!["x", "y", "z"], 3),
        (vec!["x*y", "x*z"], 1),
        (vec!["x", "y*z"], 2),
        (vec!["x^2", "y^2", "z"], 3),
    ] {
        let cols: Vec<&[&str]> = rels.iter().map(std::slice::from_ref).collect();
        let t = module(&r, 1, &cols);
        assert_eq!(grade(&t).unwrap(), GradeValue::Finite(expected));
        assert_eq!(codimension(&t).unwrap(), GradeValue::Finite(expected));
    }
}
