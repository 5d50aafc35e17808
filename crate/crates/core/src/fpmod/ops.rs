use super::{FPModule, Morphism};
use crate::error::{Error, Result};
use crate::groebner;
use crate::ring::{Matrix, Ring};

/// `⟨num⟩ / ⟨den⟩` for `⟨den⟩ ⊆ ⟨num⟩ ⊆ R^n`, with the `n × h` matrix of the
/// chosen generators (representatives in `R^n`).
pub(crate) fn subquotient<R: Ring>(
    ring: &R,
    n: usize,
    num: &[Vec<R::Elem>],
    den: &[Vec<R::Elem>],
) -> Result<(FPModule<R>, Matrix<R::Elem>)> {
    let den_basis = ring.standard_basis(den, n)?;
    let mut all = num.to_vec();
    all.extend(den_basis.iter().cloned());
    let num_basis = ring.standard_basis(&all, n)?;
    let mut gens: Vec<Vec<R::Elem>> = Vec::new();
    for v in num_basis {
        let r = ring.reduce(&v, &den_basis).remainder;
        if !ring.is_zero_vector(&r) && !gens.contains(&r) {
            gens.push(r);
        }
    }
    let h = gens.len();
    if h == 0 {
        return Ok((FPModule::zero(ring), Matrix::zero(ring, n, 0)));
    }
    let mut cols = gens.clone();
    cols.extend(den_basis.iter().cloned());
    let rels: Vec<Vec<R::Elem>> = groebner::syzygies(ring, &cols, n)?
        .into_iter()
        .map(|s| s[..h].to_vec())
        .filter(|s| !ring.is_zero_vector(s))
        .collect();
    let module = FPModule::from_relations(ring, h, &rels)?;
    Ok((module, Matrix::from_columns(n, gens)?))
}

/// The kernel of `f` as a monomorphism `K → source(f)`.
pub fn kernel<R: Ring>(f: &Morphism<R>) -> Result<Morphism<R>> {
    let ring = f.ring();
    let (m, n) = (f.source(), f.target());
    let gm = m.generators();
    let mut cols: Vec<Vec<R::Elem>> = f.matrix().columns().to_vec();
    cols.extend(n.relations().iter().cloned());
    let preimage: Vec<Vec<R::Elem>> = groebner::syzygies(ring, &cols, n.generators())?
        .into_iter()
        .map(|s| s[..gm].to_vec())
        .filter(|s| !ring.is_zero_vector(s))
        .collect();
    let (k, incl) = subquotient(ring, gm, &preimage, m.relations())?;
    let mono = Morphism::new(&k, m, incl)?;
    let (_, _, from) = k.simplify()?;
    mono.after(&from)
}

/// The cokernel of `f` as an epimorphism `target(f) → C`.
pub fn cokernel<R: Ring>(f: &Morphism<R>) -> Result<Morphism<R>> {
    let ring = f.ring();
    let n = f.target();
    let mut rels = n.relations().to_vec();
    rels.extend(f.matrix().columns().iter().cloned());
    let c = FPModule::from_relations(ring, n.generators(), &rels)?;
    let epi = Morphism::new(n, &c, Matrix::identity(ring, n.generators()))?;
    let (_, to, _) = c.simplify()?;
    to.after(&epi)
}

/// The image of `f` as a monomorphism `I → target(f)`.
pub fn image<R: Ring>(f: &Morphism<R>) -> Result<Morphism<R>> {
    let ring = f.ring();
    let n = f.target();
    let (i, incl) = subquotient(ring, n.generators(), f.matrix().columns(), n.relations())?;
    let mono = Morphism::new(&i, n, incl)?;
    let (_, _, from) = i.simplify()?;
    mono.after(&from)
}

#[derive(Debug, Clone)]
pub struct DirectSum<R: Ring> {
    pub module: FPModule<R>,
    pub injections: [Morphism<R>; 2],
    pub projections: [Morphism<R>; 2],
}

/// `M ⊕ N` with block presentation, injections and projections.
pub fn direct_sum<R: Ring>(m: &FPModule<R>, n: &FPModule<R>) -> Result<DirectSum<R>> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = m.ring();
    let (a, b) = (m.generators(), n.generators());
    let rel = Matrix::block_diagonal(ring, &m.relation_matrix(), &n.relation_matrix());
    let sum = FPModule::present(ring, &rel, a + b)?;
    let id_a = Matrix::identity(ring, a);
    let id_b = Matrix::identity(ring, b);
    let i1 = Matrix::block_diagonal(ring, &id_a, &Matrix::zero(ring, b, 0));
    let i2 = Matrix::block_diagonal(ring, &Matrix::zero(ring, a, 0), &id_b);
    let p1 = i1.transpose();
    let p2 = i2.transpose();
    Ok(DirectSum {
        injections: [Morphism::new(m, &sum, i1)?, Morphism::new(n, &sum, i2)?],
        projections: [Morphism::new(&sum, m, p1)?, Morphism::new(&sum, n, p2)?],
        module: sum,
    })
}

#[derive(Debug, Clone)]
pub struct Pullback<R: Ring> {
    pub module: FPModule<R>,
    pub to_first: Morphism<R>,
    pub to_second: Morphism<R>,
}

/// Fiber product `M ×_T N` of two epimorphisms `p: M → T`, `q: N → T`,
/// computed as the kernel of `(p, −q): M ⊕ N → T`.
pub fn pullback<R: Ring>(p: &Morphism<R>, q: &Morphism<R>) -> Result<Pullback<R>> {
    if p.target() != q.target() {
        return Err(Error::Precondition("pullback of morphisms with different targets".into()));
    }
    if !p.is_epi()? || !q.is_epi()? {
        return Err(Error::NotEpi);
    }
    let ring = p.ring();
    let sum = direct_sum(p.source(), q.source())?;
    let minus_q = q.matrix().scale(ring, &ring.neg(&ring.one()));
    let diff = Morphism::new(&sum.module, p.target(), p.matrix().hstack(&minus_q)?)?;
    let k = kernel(&diff)?;
    Ok(Pullback {
        module: k.source().clone(),
        to_first: sum.projections[0].after(&k)?,
        to_second: sum.projections[1].after(&k)?,
    })
}

impl<R: Ring> Pullback<R> {
    /// The isomorphism `ker(P → M) → ker(N → T)` induced by `P → N`,
    /// returned only after checking that it is mono and epi.
    pub fn kernel_isomorphism(&self, q: &Morphism<R>) -> Result<Morphism<R>> {
        let k_first = kernel(&self.to_first)?;
        let k_q = kernel(q)?;
        let into_n = self.to_second.after(&k_first)?;
        let iso = solve_lift(&into_n, &k_q)?
            .ok_or_else(|| Error::Inconsistent("kernel of P → M does not land in ker(N → T)".into()))?;
        if !iso.is_iso()? {
            return Err(Error::Inconsistent("kernels of the pullback square are not isomorphic".into()));
        }
        Ok(iso)
    }
}

/// `M* = Hom(M, R)` embedded in `(R^g)* = R^g`.
#[derive(Debug, Clone)]
pub struct Dual<R: Ring> {
    pub module: FPModule<R>,
    /// `g × d`: column `k` is the `k`-th generating functional, evaluated on
    /// the generators of `M`.
    pub embedding: Matrix<R::Elem>,
}

/// Functionals on the generators annihilating every relation, i.e. the
/// kernel of the transposed presentation map `∂ᵀ: R^g → R^r`.
pub fn dual<R: Ring>(m: &FPModule<R>) -> Result<Dual<R>> {
    let ring = m.ring();
    let g = m.generators();
    let r = m.relations().len();
    let rows = m.relation_matrix().transpose();
    let functionals = groebner::syzygies(ring, rows.columns(), r)?;
    let syz = groebner::syzygies(ring, &functionals, g)?;
    let module = FPModule::from_relations(ring, functionals.len(), &syz)?;
    Ok(Dual {
        module,
        embedding: Matrix::from_columns(g, functionals)?,
    })
}

/// Coordinates of a functional `λ ∈ R^g` with respect to the generators of
/// `M*`; `None` if `λ` is not in `M*`.
fn dual_coordinates<R: Ring>(ring: &R, d: &Dual<R>, lambda: &[R::Elem]) -> Option<Vec<R::Elem>> {
    let red = ring.reduce(lambda, d.embedding.columns());
    ring.is_zero_vector(&red.remainder).then_some(red.quotients)
}

/// `f*: N* → M*`, `λ ↦ λ ∘ f`.
pub fn dual_morphism<R: Ring>(f: &Morphism<R>) -> Result<Morphism<R>> {
    let ring = f.ring();
    let dm = dual(f.source())?;
    let dn = dual(f.target())?;
    let ft = f.matrix().transpose();
    let mut cols = Vec::with_capacity(dn.embedding.ncols());
    for lambda in dn.embedding.columns() {
        let pulled = ft.apply(ring, lambda);
        cols.push(
            dual_coordinates(ring, &dm, &pulled)
                .ok_or_else(|| Error::Inconsistent("pulled-back functional not in M*".into()))?,
        );
    }
    Morphism::new(&dn.module, &dm.module, Matrix::from_columns(dm.module.generators(), cols)?)
}

/// The evaluation map `ε_M: M → M**`, `m ↦ (λ ↦ λ(m))`.
pub fn evaluation_map<R: Ring>(m: &FPModule<R>) -> Result<Morphism<R>> {
    let ring = m.ring();
    let d1 = dual(m)?;
    let d2 = dual(&d1.module)?;
    let mut cols = Vec::with_capacity(m.generators());
    for i in 0..m.generators() {
        // the functional on M* given by evaluation at generator i
        let eval = d1.embedding.row(i);
        cols.push(
            dual_coordinates(ring, &d2, &eval)
                .ok_or_else(|| Error::Inconsistent("evaluation functional not in M**".into()))?,
        );
    }
    Morphism::new(m, &d2.module, Matrix::from_columns(d2.module.generators(), cols)?)
}

/// A morphism `h: X → Y` with `g ∘ h = f`, or `None` when no such lift exists.
///
/// Solved as one linear system over `R` in the unknowns `H` (the matrix of
/// `h`), `W` and `V`:
/// `G·H − K_Z·W = F` (the square commutes modulo the relations of `Z`) and
/// `H·K_X − K_Y·V = 0` (`h` respects the relations of `X`).
pub fn solve_lift<R: Ring>(f: &Morphism<R>, g: &Morphism<R>) -> Result<Option<Morphism<R>>> {
    if f.target() != g.target() {
        return Err(Error::Precondition("solve_lift needs a common target".into()));
    }
    let ring = f.ring();
    let (x, y, z) = (f.source(), g.source(), f.target());
    let (gx, gy, gz) = (x.generators(), y.generators(), z.generators());
    let kx = x.relations();
    let ky = y.relations();
    let kz = z.relations();
    let top = gz * gx;
    let dim = top + gy * kx.len();

    let mut gens: Vec<Vec<R::Elem>> = Vec::new();
    // H[a][j]
    for j in 0..gx {
        for a in 0..gy {
            let mut v = ring.zero_vector(dim);
            for (i, e) in g.matrix().column(a).iter().enumerate() {
                v[j * gz + i] = e.clone();
            }
            for (t, rel) in kx.iter().enumerate() {
                v[top + t * gy + a] = rel[j].clone();
            }
            gens.push(v);
        }
    }
    // W[b][j]
    for j in 0..gx {
        for rel in kz {
            let mut v = ring.zero_vector(dim);
            for (i, e) in rel.iter().enumerate() {
                v[j * gz + i] = ring.neg(e);
            }
            gens.push(v);
        }
    }
    // V[c][t]
    for t in 0..kx.len() {
        for rel in ky {
            let mut v = ring.zero_vector(dim);
            for (a, e) in rel.iter().enumerate() {
                v[top + t * gy + a] = ring.neg(e);
            }
            gens.push(v);
        }
    }
    let mut target = ring.zero_vector(dim);
    for j in 0..gx {
        for (i, e) in f.matrix().column(j).iter().enumerate() {
            target[j * gz + i] = e.clone();
        }
    }
    let Some(coeffs) = groebner::lift(ring, &target, &gens, dim)? else {
        return Ok(None);
    };
    let cols: Vec<Vec<R::Elem>> = (0..gx).map(|j| coeffs[j * gy..(j + 1) * gy].to_vec()).collect();
    let h = Morphism::new(x, y, Matrix::from_columns(gy, cols)?)?;
    if !g.after(&h)?.equals(f) {
        return Err(Error::Inconsistent("lift does not commute".into()));
    }
    Ok(Some(h))
}

/// `0 → A → N → T → 0`, verified exact.
#[derive(Debug, Clone)]
pub struct ShortExactSequence<R: Ring> {
    mono: Morphism<R>,
    epi: Morphism<R>,
}

impl<R: Ring> ShortExactSequence<R> {
    pub fn new(mono: Morphism<R>, epi: Morphism<R>) -> Result<Self> {
        if mono.target() != epi.source() {
            return Err(Error::Precondition("maps of the sequence are not composable".into()));
        }
        if !epi.after(&mono)?.is_zero() {
            return Err(Error::Precondition("composition A → N → T is not zero".into()));
        }
        if !mono.is_mono()? {
            return Err(Error::Precondition("A → N is not injective".into()));
        }
        if !epi.is_epi()? {
            return Err(Error::NotEpi);
        }
        let ring = mono.ring();
        let n = mono.target();
        let k = kernel(&epi)?;
        let mut im = mono.matrix().columns().to_vec();
        im.extend(n.relations().iter().cloned());
        let mut ker = k.matrix().columns().to_vec();
        ker.extend(n.relations().iter().cloned());
        if !groebner::submodule_equal(ring, &im, &ker, n.generators())? {
            return Err(Error::Precondition("image of A → N differs from ker(N → T)".into()));
        }
        Ok(ShortExactSequence { mono, epi })
    }

    pub fn mono(&self) -> &Morphism<R> {
        &self.mono
    }

    pub fn epi(&self) -> &Morphism<R> {
        &self.epi
    }

    /// A section `T → N` of the epimorphism, if the sequence splits.
    pub fn section(&self) -> Result<Option<Morphism<R>>> {
        solve_lift(&Morphism::identity(self.epi.target()), &self.epi)
    }

    /// A retraction `N → A` of the monomorphism, if the sequence splits.
    pub fn retraction(&self) -> Result<Option<Morphism<R>>> {
        // r ∘ ι = id_A: dualize the lifting problem through the section.
        match self.section()? {
            None => Ok(None),
            Some(s) => {
                // n − s(π(n)) lies in ι(A); lift it through ι.
                let ring = self.mono.ring();
                let n = self.mono.target();
                let id = Morphism::identity(n);
                let sp = s.after(&self.epi)?;
                let diff = Morphism::new(n, n, id.matrix().sub(ring, sp.matrix())?)?;
                solve_lift(&diff, &self.mono)
            }
        }
    }
}
