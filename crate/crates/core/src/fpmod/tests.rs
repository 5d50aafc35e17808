use super::*;
use crate::groebner;
use crate::ring::{IntegerRing, MonomialOrder, PolyRing};
use num_bigint::BigInt;
use proptest::prelude::*;

fn qxy() -> PolyRing {
    PolyRing::new(["x", "y"], MonomialOrder::DegRevLex).unwrap()
}

fn cols<R: Ring>(r: &R, rows: usize, cs: &[&[&str]]) -> Matrix<R::Elem> {
    Matrix::from_columns(
        rows,
        cs.iter().map(|c| c.iter().map(|s| r.parse(s).unwrap()).collect()).collect(),
    )
    .unwrap()
}

fn module<R: Ring>(r: &R, g: usize, rels: &[&[&str]]) -> FPModule<R> {
    FPModule::present(r, &cols(r, g, rels), g).unwrap()
}

fn zz() -> IntegerRing {
    IntegerRing
}

fn int_mat(rows: usize, cs: &[&[i64]]) -> Matrix<BigInt> {
    Matrix::from_columns(rows, cs.iter().map(|c| c.iter().map(|&a| BigInt::from(a)).collect()).collect()).unwrap()
}

#[test]
fn present_examples() {
    let r = qxy();
    let t0 = module(&r, 1, &[&["x"], &["y"]]);
    assert_eq!(t0.generators(), 1);
    assert_eq!(t0.relations().len(), 2);

    let m = module(&r, 2, &[&["x", "0"], &["y", "0"], &["0", "1"]]);
    let (s, to, from) = m.simplify().unwrap();
    assert_eq!(s, t0);
    assert!(to.after(&from).unwrap().equals(&Morphism::identity(&s)));
    assert!(from.after(&to).unwrap().equals(&Morphism::identity(&m)));

    assert!(FPModule::present(&r, &Matrix::zero(&r, 0, 0), 0).unwrap().is_zero());
    assert!(FPModule::present(&r, &Matrix::zero(&r, 2, 1), 1).is_err());
}

#[test]
fn morphisms_are_witnessed() {
    let r = qxy();
    let rx = module(&r, 1, &[&["x"]]);
    let free = FPModule::free(&r, 1);
    assert!(Morphism::new(&free, &rx, Matrix::identity(&r, 1)).is_ok());
    assert!(matches!(
        Morphism::new(&rx, &free, Matrix::identity(&r, 1)),
        Err(Error::NotWellDefined(_))
    ));
    let f = Morphism::new(&rx, &rx, cols(&r, 1, &[&["y + 1"]])).unwrap();
    assert!(f.verify_witness());
}

#[test]
fn kernel_examples() {
    let r = qxy();
    let free = FPModule::free(&r, 1);
    assert!(kernel(&Morphism::identity(&free)).unwrap().source().is_zero());

    let mult_x = Morphism::new(&free, &free, cols(&r, 1, &[&["x"]])).unwrap();
    assert!(kernel(&mult_x).unwrap().source().is_zero());
    assert!(mult_x.is_mono().unwrap());
    assert!(!mult_x.is_epi().unwrap());

    let rx = module(&r, 1, &[&["x"]]);
    let quot = Morphism::new(&free, &rx, Matrix::identity(&r, 1)).unwrap();
    let k = kernel(&quot).unwrap();
    assert_eq!(k.source(), &FPModule::free(&r, 1));
    assert!(groebner::submodule_equal(&r, k.matrix().columns(), &[vec![r.parse("x").unwrap()]], 1).unwrap());
    assert!(quot.after(&k).unwrap().is_zero());
    assert!(k.is_mono().unwrap());
}

#[test]
fn cokernel_examples() {
    let r = qxy();
    let free = FPModule::free(&r, 1);
    let c = cokernel(&Morphism::zero(&free, &free).unwrap()).unwrap();
    assert_eq!(c.target(), &free);

    let z = zz();
    let zfree = FPModule::free(&z, 1);
    let six = Morphism::new(&zfree, &zfree, int_mat(1, &[&[6]])).unwrap();
    let c = cokernel(&six).unwrap();
    assert_eq!(c.target().relations(), &[vec![BigInt::from(6)]]);

    let free2 = FPModule::free(&r, 2);
    let f = Morphism::new(&free, &free2, cols(&r, 2, &[&["y", "-x"]])).unwrap();
    let c = cokernel(&f).unwrap();
    let (ideal, _) = Submodule::new(&r, 1, &[vec![r.parse("x").unwrap()], vec![r.parse("y").unwrap()]])
        .unwrap()
        .as_module()
        .unwrap();
    assert_eq!(c.target().generators(), ideal.generators());
    assert!(groebner::submodule_equal(&r, c.target().relations(), ideal.relations(), 2).unwrap());
    assert!(c.after(&f).unwrap().is_zero());
}

#[test]
fn direct_sum_examples() {
    let r = qxy();
    let t0 = module(&r, 1, &[&["x"], &["y"]]);
    let free = FPModule::free(&r, 1);
    let s = direct_sum(&t0, &free).unwrap();
    assert_eq!(s.module, module(&r, 2, &[&["x", "0"], &["y", "0"]]));
    for i in 0..2 {
        for j in 0..2 {
            let c = s.projections[i].after(&s.injections[j]).unwrap();
            if i == j {
                assert!(c.equals(&Morphism::identity(c.source())));
            } else {
                assert!(c.is_zero());
            }
        }
    }
    let s = direct_sum(&free, &free).unwrap();
    assert_eq!(s.module, FPModule::free(&r, 2));
    let s = direct_sum(&t0, &FPModule::zero(&r)).unwrap();
    assert_eq!(s.module, t0);
}

#[test]
fn pullback_examples() {
    let r = qxy();
    let t0 = module(&r, 1, &[&["x"], &["y"]]);
    let id = Morphism::identity(&t0);
    let p = pullback(&id, &id).unwrap();
    assert!(p.to_first.is_iso().unwrap());

    let zero = FPModule::zero(&r);
    let free = FPModule::free(&r, 1);
    let p0 = Morphism::zero(&t0, &zero).unwrap();
    let q0 = Morphism::zero(&free, &zero).unwrap();
    let p = pullback(&p0, &q0).unwrap();
    assert_eq!(p.module, direct_sum(&t0, &free).unwrap().module);

    // M = R/(x,y) ⊕ R → T = R/(x,y) ← N = R
    let m = direct_sum(&t0, &free).unwrap().module;
    let p_map = Morphism::new(&m, &t0, cols(&r, 1, &[&["1"], &["0"]])).unwrap();
    let q_map = Morphism::new(&free, &t0, Matrix::identity(&r, 1)).unwrap();
    let p = pullback(&p_map, &q_map).unwrap();
    assert_eq!(p.module, FPModule::free(&r, 2));
    assert!(p_map.after(&p.to_first).unwrap().equals(&q_map.after(&p.to_second).unwrap()));
    assert!(p.to_first.is_epi().unwrap() && p.to_second.is_epi().unwrap());
    let a = kernel(&p.to_first).unwrap();
    let b = kernel(&p.to_second).unwrap();
    let a_sub = Submodule::new(&r, 2, a.matrix().columns()).unwrap();
    let b_sub = Submodule::new(&r, 2, b.matrix().columns()).unwrap();
    let mut a_exp = Vec::new();
    let mut b_exp = Vec::new();
    // the pullback embeds in M ⊕ N = R^3 as pairs; the two kernels are
    // ⟨(x,0),(y,0)⟩ and ⟨(0,1)⟩ up to the choice of basis of P ≅ R².
    for s in ["x", "y"] {
        let mut v = r.zero_vector(2);
        v[0] = r.parse(s).unwrap();
        a_exp.push(v);
    }
    b_exp.push(r.unit_vector(2, 1));
    let a_img = Submodule::new(&r, 2, &a_exp).unwrap();
    let b_img = Submodule::new(&r, 2, &b_exp).unwrap();
    // compare after transporting by the coordinates P → M ⊕ N
    let emb = p.to_first.matrix().vstack(p.to_second.matrix()).unwrap();
    let expected_emb = cols(&r, 3, &[&["1", "0", "1"], &["0", "1", "0"]]);
    let a_t = a_sub.map(&emb).unwrap();
    let b_t = b_sub.map(&emb).unwrap();
    let ea = a_img.map(&expected_emb).unwrap();
    let eb = b_img.map(&expected_emb).unwrap();
    let m_rel = Submodule::new(&r, 3, &[
        vec![r.parse("x").unwrap(), r.zero(), r.zero()],
        vec![r.parse("y").unwrap(), r.zero(), r.zero()],
    ])
    .unwrap();
    assert!(a_t.sum(&m_rel).unwrap().equals(&ea.sum(&m_rel).unwrap()).unwrap());
    assert!(b_t.sum(&m_rel).unwrap().equals(&eb.sum(&m_rel).unwrap()).unwrap());
    assert!(p.kernel_isomorphism(&q_map).is_ok());

    let other = module(&r, 1, &[&["x"]]);
    let bad = Morphism::new(&free, &other, Matrix::identity(&r, 1)).unwrap();
    assert!(pullback(&p_map, &bad).is_err());
}

#[test]
fn dual_examples() {
    let r = qxy();
    let d = dual(&FPModule::free(&r, 3)).unwrap();
    assert_eq!(d.module, FPModule::free(&r, 3));
    assert!(dual(&module(&r, 1, &[&["x"]])).unwrap().module.is_zero());
    let z = zz();
    let z6 = FPModule::present(&z, &int_mat(1, &[&[6]]), 1).unwrap();
    assert!(dual(&z6).unwrap().module.is_zero());
}

#[test]
fn evaluation_examples() {
    let r = qxy();
    let free = FPModule::free(&r, 2);
    assert!(evaluation_map(&free).unwrap().is_iso().unwrap());
    let rx = module(&r, 1, &[&["x"]]);
    let e = evaluation_map(&rx).unwrap();
    assert!(e.target().is_zero());
    assert!(e.is_zero());

    let z = zz();
    let m = FPModule::present(&z, &int_mat(2, &[&[0, 6]]), 2).unwrap();
    let e = evaluation_map(&m).unwrap();
    let k = kernel(&e).unwrap();
    let (ks, _, _) = k.source().simplify().unwrap();
    assert_eq!(ks.generators(), 1);
    assert_eq!(ks.relations(), &[vec![BigInt::from(6)]]);
    let image: Vec<Vec<BigInt>> = k.matrix().columns().to_vec();
    for v in &image {
        assert_eq!(v[0], BigInt::from(0));
    }
}

#[test]
fn solve_lift_examples() {
    let z = zz();
    let free = FPModule::free(&z, 1);
    let two = Morphism::new(&free, &free, int_mat(1, &[&[2]])).unwrap();
    let four = Morphism::new(&free, &free, int_mat(1, &[&[4]])).unwrap();
    assert!(solve_lift(&two, &four).unwrap().is_none());
    let h = solve_lift(&four, &two).unwrap().unwrap();
    assert_eq!(h.matrix(), two.matrix());
    let h = solve_lift(&four, &Morphism::identity(&free)).unwrap().unwrap();
    assert!(h.equals(&four));
}

#[test]
fn short_exact_sequences() {
    let r = qxy();
    let free = FPModule::free(&r, 1);
    let t0 = module(&r, 1, &[&["x"], &["y"]]);
    let (ideal, incl) = Submodule::new(&r, 1, &[vec![r.parse("x").unwrap()], vec![r.parse("y").unwrap()]])
        .unwrap()
        .as_module()
        .unwrap();
    let epi = Morphism::new(&free, &t0, Matrix::identity(&r, 1)).unwrap();
    let ses = ShortExactSequence::new(incl.clone(), epi.clone()).unwrap();
    assert!(ses.section().unwrap().is_none());
    assert!(ses.retraction().unwrap().is_none());
    let _ = ideal;

    let m = direct_sum(&t0, &free).unwrap();
    let ses = ShortExactSequence::new(m.injections[1].clone(), m.projections[0].clone()).unwrap();
    let s = ses.section().unwrap().unwrap();
    assert!(ses.epi().after(&s).unwrap().equals(&Morphism::identity(&t0)));
    let rt = ses.retraction().unwrap().unwrap();
    assert!(rt.after(ses.mono()).unwrap().equals(&Morphism::identity(&free)));

    assert!(ShortExactSequence::new(Morphism::zero(&free, &free).unwrap(), Morphism::identity(&free)).is_err());
}

fn small_poly(r: &PolyRing) -> impl Strategy<Value = Polynomial> + '_ {
    prop::collection::vec((-2i64..=2, 0u32..=1, 0u32..=1), 0..3).prop_map(move |ts| {
        let mut p = r.zero();
        for (c, a, b) in ts {
            let t = r.mul(&r.embed_int(c), &r.term(Monomial::new(&[a, b]), num_traits::One::one()));
            p = r.add(&p, &t);
        }
        p
    })
}

use crate::ring::{Monomial, Polynomial};

fn small_matrix(r: &PolyRing, rows: usize, cs: usize) -> impl Strategy<Value = Matrix<Polynomial>> + '_ {
    prop::collection::vec(prop::collection::vec(small_poly(r), rows), cs)
        .prop_map(move |c| Matrix::from_columns(rows, c).unwrap())
}

/// A random morphism `M → N` with `N`'s relations chosen to contain the image
/// of `M`'s relations.
fn random_morphism(r: &PolyRing, km: Matrix<Polynomial>, f: Matrix<Polynomial>, extra: Matrix<Polynomial>) -> Morphism<PolyRing> {
    let m = FPModule::present(r, &km, km.nrows()).unwrap();
    let pushed = f.mul(r, &km).unwrap();
    let n = FPModule::present(r, &pushed.hstack(&extra).unwrap(), f.nrows()).unwrap();
    Morphism::new(&m, &n, f).unwrap()
}

static RING: std::sync::OnceLock<PolyRing> = std::sync::OnceLock::new();

fn ring() -> &'static PolyRing {
    RING.get_or_init(qxy)
}

fn morphism_strategy() -> impl Strategy<Value = Morphism<PolyRing>> {
    let r = ring();
    (small_matrix(r, 2, 1), small_matrix(r, 2, 2), small_matrix(r, 2, 1))
        .prop_map(move |(km, f, extra)| random_morphism(r, km, f, extra))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn kernel_cokernel_exactness(f in morphism_strategy()) {
        let r = ring();
        let k = kernel(&f).unwrap();
        prop_assert!(f.after(&k).unwrap().is_zero());
        prop_assert!(k.is_mono().unwrap());
        // every source vector mapping to zero lies in im(k) + K_M
        let mut img = k.matrix().columns().to_vec();
        img.extend(f.source().relations().iter().cloned());
        let mut cs = f.matrix().columns().to_vec();
        cs.extend(f.target().relations().iter().cloned());
        let gm = f.source().generators();
        let pre: Vec<_> = groebner::syzygies(r, &cs, f.target().generators()).unwrap()
            .into_iter().map(|s| s[..gm].to_vec()).collect();
        let mut pre_all = pre.clone();
        pre_all.extend(f.source().relations().iter().cloned());
        prop_assert!(groebner::submodule_equal(r, &img, &pre_all, gm).unwrap());

        let c = cokernel(&f).unwrap();
        prop_assert!(c.after(&f).unwrap().is_zero());
        prop_assert!(c.is_epi().unwrap());
        let i = image(&f).unwrap();
        let c2 = cokernel(&i).unwrap();
        prop_assert_eq!(c2.target(), c.target());
    }

    #[test]
    fn evaluation_is_natural(f in morphism_strategy()) {
        let em = evaluation_map(f.source()).unwrap();
        let en = evaluation_map(f.target()).unwrap();
        let ffdd = dual_morphism(&dual_morphism(&f).unwrap()).unwrap();
        prop_assert!(ffdd.after(&em).unwrap().equals(&en.after(&f).unwrap()));
    }

    #[test]
    fn dual_is_contravariant(f in morphism_strategy(), g in small_matrix(ring(), 1, 2)) {
        let r = ring();
        let n = f.target().clone();
        // g: N → R/(relations pushed forward)
        let pushed = g.mul(r, &n.relation_matrix()).unwrap();
        let t = FPModule::present(r, &pushed, 1).unwrap();
        let g = Morphism::new(&n, &t, g).unwrap();
        let lhs = dual_morphism(&g.after(&f).unwrap()).unwrap();
        let rhs = dual_morphism(&f).unwrap().after(&dual_morphism(&g).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn pullback_square_commutes(f in morphism_strategy()) {
        let c = cokernel(&f).unwrap();
        let t = c.target().clone();
        let q = Morphism::identity(&t);
        let p = pullback(&c, &q).unwrap();
        prop_assert!(c.after(&p.to_first).unwrap().equals(&q.after(&p.to_second).unwrap()));
        prop_assert!(p.to_first.is_epi().unwrap());
        prop_assert!(p.to_second.is_epi().unwrap());
        prop_assert!(p.kernel_isomorphism(&q).is_ok());
    }
}
