//! Finite-dimensional modules presented as vertex spaces with action
//! matrices, and the algorithms that only need that presentation: Hom
//! spaces, sub- and quotient modules, Krull-Schmidt decomposition,
//! isomorphism testing, radical, top, socle and syzygies.
//!
//! The same code serves modules over the preprojective algebra
//! ([`Representation`]) and over endomorphism algebras
//! ([`BModule`](crate::tilt::BModule)).

mod morphism;
mod representation;

pub use morphism::Morphism;
pub use representation::{cosyzygy, Representation};

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{charpoly, coprime_factors, layout, BlockSystem, Coordinates, Matrix, Poly, Quotient};

/// Seed used by the convenience wrappers that do not take an explicit RNG.
pub const DEFAULT_SEED: u64 = 0;

/// Number of random combinations tried when searching for splitting
/// endomorphisms or invertible homomorphisms.
pub const SEARCH_TRIES: usize = 48;

/// A module given by a vector space per vertex and a family of action
/// matrices, each going from one vertex space to another.
pub trait Module<F: Field>: Clone + fmt::Debug + Send + Sync {
    fn dims(&self) -> &[usize];

    fn action_count(&self) -> usize;

    /// `(source, target)` vertex of action `k`.
    fn action_ends(&self, k: usize) -> (usize, usize);

    fn action(&self, k: usize) -> &Matrix<F>;

    /// Actions that, together with the vertex idempotents, generate the
    /// algebra. Homomorphisms are exactly the maps commuting with these.
    fn generators(&self) -> &[usize];

    /// A module over the same algebra with new spaces and actions.
    fn rebuild(&self, dims: Vec<usize>, actions: Vec<Matrix<F>>) -> Self;

    fn same_algebra(&self, other: &Self) -> bool;

    fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

/// Modules over algebras whose indecomposable projectives are available.
pub trait ProjectiveCovers<F: Field>: Module<F> {
    /// The indecomposable projective at vertex `v`.
    fn projective(&self, v: usize) -> Self;

    /// For the map `P_v → self` sending the generator `e_v` to `w ∈ self_v`:
    /// per vertex `j`, the matrix of images of the basis of `(P_v)_j`.
    fn cover_images(&self, v: usize, w: &[F]) -> Vec<Matrix<F>>;
}

/// A basis of `Hom(X, Y)`.
#[derive(Clone, Debug)]
pub struct HomSpace<F> {
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub basis: Vec<Morphism<F>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coeffs: &[F]) -> Morphism<F> {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut out = Morphism::zero(&self.source_dims, &self.target_dims);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(*c));
            }
        }
        out
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Morphism<F> {
        let coeffs: Vec<F> = (0..self.dim()).map(|_| F::random(rng)).collect();
        self.combination(&coeffs)
    }

    /// Basis vectors (flattened) as the columns of a matrix.
    pub fn as_columns(&self) -> Matrix<F> {
        let len: usize = self.source_dims.iter().zip(&self.target_dims).map(|(s, t)| s * t).sum();
        Matrix::from_columns(len, &self.basis.iter().map(Morphism::flatten).collect::<Vec<_>>())
    }
}

/// Solves the intertwining conditions `f_t X_k = Y_k f_s` over all generators.
pub fn hom_basis<F: Field, M: Module<F>>(x: &M, y: &M) -> HomSpace<F> {
    assert!(x.same_algebra(y), "Hom between modules over different algebras");
    let (unknowns, n_unknowns) = layout(x.dims().iter().zip(y.dims()).map(|(&s, &t)| (t, s)));
    let gens = x.generators();
    let (eqs, n_eqs) = layout(gens.iter().map(|&k| {
        let (s, t) = x.action_ends(k);
        (y.dims()[t], x.dims()[s])
    }));
    let mut sys = BlockSystem::new(n_eqs, n_unknowns);
    for (e, &k) in eqs.iter().zip(gens) {
        let (s, t) = x.action_ends(k);
        sys.add_term(*e, unknowns[t], None, Some(x.action(k)), F::one());
        sys.add_term(*e, unknowns[s], Some(y.action(k)), None, -F::one());
    }
    let kernel = sys.matrix.kernel_basis();
    let basis = kernel
        .columns()
        .iter()
        .map(|c| Morphism::from_flat(x.dims(), y.dims(), c))
        .collect();
    HomSpace { source_dims: x.dims().to_vec(), target_dims: y.dims().to_vec(), basis }
}

pub fn hom_dim<F: Field, M: Module<F>>(x: &M, y: &M) -> usize {
    hom_basis(x, y).dim()
}

/// True iff `f` commutes with every action.
pub fn is_module_map<F: Field, M: Module<F>>(x: &M, y: &M, f: &Morphism<F>) -> bool {
    (0..x.action_count()).all(|k| {
        let (s, t) = x.action_ends(k);
        &f.blocks[t] * x.action(k) == y.action(k) * &f.blocks[s]
    })
}

/// Block-diagonal direct sum; the empty sum is the zero module over `like`.
pub fn direct_sum<F: Field, M: Module<F>>(like: &M, parts: &[&M]) -> M {
    let nv = like.dims().len();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims()[v]).sum()).collect();
    let actions = (0..like.action_count())
        .map(|k| Matrix::block_diag(&parts.iter().map(|p| p.action(k)).collect::<Vec<_>>()))
        .collect();
    like.rebuild(dims, actions)
}

/// Restriction to an invariant subspace given by per-vertex column bases.
/// Returns the submodule and its inclusion.
pub fn submodule<F: Field, M: Module<F>>(m: &M, bases: &[Matrix<F>]) -> (M, Morphism<F>) {
    let coords: Vec<Coordinates<F>> = bases.iter().map(Coordinates::new).collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let actions = (0..m.action_count())
        .map(|k| {
            let (s, t) = m.action_ends(k);
            let img = m.action(k) * &bases[s];
            let mut out = Matrix::zeros(dims[t], dims[s]);
            for j in 0..dims[s] {
                let c = coords[t].of(&img.column(j));
                for (i, v) in c.into_iter().enumerate() {
                    out[(i, j)] = v;
                }
            }
            out
        })
        .collect();
    (m.rebuild(dims, actions), Morphism::new(bases.to_vec()))
}

/// Quotient by an invariant subspace (per-vertex spanning columns).
/// Returns the quotient module, the projection and the chosen section.
pub fn quotient<F: Field, M: Module<F>>(m: &M, sub: &[Matrix<F>]) -> (M, Morphism<F>, Morphism<F>) {
    let qs: Vec<Quotient<F>> = m.dims().iter().zip(sub).map(|(&d, s)| Quotient::new(d, s)).collect();
    let dims: Vec<usize> = qs.iter().map(Quotient::dim).collect();
    let actions = (0..m.action_count())
        .map(|k| {
            let (s, t) = m.action_ends(k);
            &(&qs[t].projection * m.action(k)) * &qs[s].section
        })
        .collect();
    let proj = Morphism::new(qs.iter().map(|q| q.projection.clone()).collect());
    let sect = Morphism::new(qs.iter().map(|q| q.section.clone()).collect());
    (m.rebuild(dims, actions), proj, sect)
}

/// Image of a module map, as per-vertex column bases in the target.
pub fn image_bases<F: Field>(f: &Morphism<F>) -> Vec<Matrix<F>> {
    f.blocks.iter().map(Matrix::column_space).collect()
}

/// Kernel of a module map, as per-vertex column bases in the source.
pub fn kernel_bases<F: Field>(f: &Morphism<F>) -> Vec<Matrix<F>> {
    f.blocks.iter().map(Matrix::kernel_basis).collect()
}

/// `rad M = Σ_k image(M_k)` over the generators, per vertex.
pub fn radical_bases<F: Field, M: Module<F>>(m: &M) -> Vec<Matrix<F>> {
    let mut spans: Vec<Matrix<F>> = m.dims().iter().map(|&d| Matrix::zeros(d, 0)).collect();
    for &k in m.generators() {
        let (_, t) = m.action_ends(k);
        spans[t] = spans[t].hstack(m.action(k));
    }
    spans.iter().map(Matrix::column_space).collect()
}

pub fn radical<F: Field, M: Module<F>>(m: &M) -> (M, Morphism<F>) {
    submodule(m, &radical_bases(m))
}

/// `M / rad M`, which is semisimple.
pub fn top<F: Field, M: Module<F>>(m: &M) -> M {
    quotient(m, &radical_bases(m)).0
}

/// Multiplicities of the simples in the top.
pub fn top_dims<F: Field, M: Module<F>>(m: &M) -> Vec<usize> {
    let rad = radical_bases(m);
    m.dims().iter().zip(&rad).map(|(&d, r)| d - r.cols()).collect()
}

/// `soc M = ∩ ker(M_k)` over generators leaving each vertex.
pub fn socle_bases<F: Field, M: Module<F>>(m: &M) -> Vec<Matrix<F>> {
    (0..m.dims().len())
        .map(|v| {
            let mut stacked = Matrix::zeros(0, m.dims()[v]);
            for &k in m.generators() {
                if m.action_ends(k).0 == v {
                    stacked = stacked.vstack(m.action(k));
                }
            }
            stacked.kernel_basis()
        })
        .collect()
}

pub fn socle_dims<F: Field, M: Module<F>>(m: &M) -> Vec<usize> {
    socle_bases(m).iter().map(Matrix::cols).collect()
}

/// Radical layers: the dimension vectors of `rad^k M / rad^{k+1} M`.
pub fn loewy_layers<F: Field, M: Module<F>>(m: &M) -> Vec<Vec<usize>> {
    let mut layers = Vec::new();
    let mut cur = m.clone();
    while !cur.is_zero() {
        layers.push(top_dims(&cur));
        cur = radical(&cur).0;
    }
    layers
}

/// A projective cover `P → M` built from lifts of a basis of the top.
#[derive(Clone, Debug)]
pub struct Cover<F, M> {
    pub projective: M,
    pub map: Morphism<F>,
    /// Vertex of each projective summand, in order.
    pub summands: Vec<usize>,
}

pub fn projective_cover<F: Field, M: ProjectiveCovers<F>>(m: &M) -> Cover<F, M> {
    let rad = radical_bases(m);
    let mut parts = Vec::new();
    let mut images: Vec<Vec<Matrix<F>>> = Vec::new();
    let mut summands = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let q = Quotient::new(m.dims()[v], r);
        for lift in q.section.columns() {
            parts.push(m.projective(v));
            images.push(m.cover_images(v, &lift));
            summands.push(v);
        }
    }
    let refs: Vec<&M> = parts.iter().collect();
    let projective = direct_sum(m, &refs);
    let blocks = (0..m.dims().len())
        .map(|j| {
            let mut b = Matrix::zeros(m.dims()[j], 0);
            for img in &images {
                b = b.hstack(&img[j]);
            }
            b
        })
        .collect();
    Cover { projective, map: Morphism::new(blocks), summands }
}

/// `Ω M = ker(P(M) → M)` together with the cover it came from.
pub fn syzygy<F: Field, M: ProjectiveCovers<F>>(m: &M) -> (M, Cover<F, M>) {
    let cover = projective_cover(m);
    let (omega, _) = submodule(&cover.projective, &kernel_bases(&cover.map));
    (omega, cover)
}

/// A module is projective iff its projective cover is an isomorphism.
pub fn is_projective<F: Field, M: ProjectiveCovers<F>>(m: &M) -> bool {
    projective_cover(m).projective.total_dim() == m.total_dim()
}

/// `dim Ext¹(M, N)` from `0 → ΩM → P → M → 0`:
/// `dim Hom(ΩM, N) − dim Hom(P, N) + dim Hom(M, N)`.
pub fn ext1_dim_via_syzygy<F: Field, M: ProjectiveCovers<F>>(m: &M, n: &M) -> usize {
    let (omega, cover) = syzygy(m);
    let hom_p: usize = cover.summands.iter().map(|&v| n.dims()[v]).sum();
    hom_dim(&omega, n) + hom_dim(m, n) - hom_p
}

/// Basis of the Jacobson radical of `End(M)` (coordinates w.r.t. `end`) via the
/// trace form `(f, g) ↦ tr(fg)`, valid when `char F > dim M`.
pub fn end_radical_coords<F: Field>(end: &HomSpace<F>) -> Matrix<F> {
    let k = end.dim();
    let totals: Vec<Matrix<F>> = end.basis.iter().map(Morphism::total).collect();
    let mut gram = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let t = (&totals[i] * &totals[j]).trace();
            gram[(i, j)] = t;
            gram[(j, i)] = t;
        }
    }
    gram.kernel_basis()
}

fn check_field_size<F: Field>(dim: usize) -> Result<()> {
    if (dim as u64) >= F::CHARACTERISTIC {
        return Err(Error::Config(format!(
            "field characteristic {} too small for a module of dimension {dim}",
            F::CHARACTERISTIC
        )));
    }
    Ok(())
}

/// `dim End(M)/rad End(M)`; 1 certifies absolute indecomposability.
pub fn residue_dim<F: Field, M: Module<F>>(m: &M) -> Result<usize> {
    check_field_size::<F>(m.total_dim())?;
    let end = hom_basis(m, m);
    Ok(end.dim() - end_radical_coords(&end).cols())
}

pub fn is_indecomposable<F: Field, M: Module<F>>(m: &M) -> Result<bool> {
    Ok(!m.is_zero() && residue_dim(m)? == 1)
}

/// Splits `m` along the generalised eigenspaces of some endomorphism, or
/// returns `None` if `m` is indecomposable.
fn split_once<F: Field, M: Module<F>, R: Rng + ?Sized>(m: &M, rng: &mut R) -> Result<Option<Vec<M>>> {
    check_field_size::<F>(m.total_dim())?;
    let end = hom_basis(m, m);
    let residue = end.dim() - end_radical_coords(&end).cols();
    if residue <= 1 {
        return Ok(None);
    }
    let candidates = end
        .basis
        .iter()
        .cloned()
        .map(Ok)
        .chain((0..SEARCH_TRIES).map(|_| Err(())));
    for cand in candidates {
        let e = match cand {
            Ok(b) => b,
            Err(()) => end.random_element(rng),
        };
        let mut cp = Poly::one();
        for b in &e.blocks {
            cp = cp.mul(&charpoly(b));
        }
        let factors = coprime_factors(&cp);
        if factors.len() < 2 {
            continue;
        }
        let parts = factors
            .iter()
            .map(|g| {
                let bases: Vec<Matrix<F>> = e
                    .blocks
                    .iter()
                    .map(|b| g.eval_matrix(b).pow(b.rows() as u64).kernel_basis())
                    .collect();
                submodule(m, &bases).0
            })
            .filter(|p| !p.is_zero())
            .collect::<Vec<_>>();
        if parts.len() >= 2 {
            return Ok(Some(parts));
        }
    }
    Err(Error::NonSplitResidue(residue))
}

/// Indecomposable summands (with repetition), via recursive Fitting splitting.
pub fn indecomposable_summands<F: Field, M: Module<F>, R: Rng + ?Sized>(m: &M, rng: &mut R) -> Result<Vec<M>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(cur) = stack.pop() {
        match split_once(&cur, rng)? {
            None => out.push(cur),
            Some(parts) => stack.extend(parts.into_iter().rev()),
        }
    }
    Ok(out)
}

/// Krull-Schmidt decomposition: pairwise non-isomorphic indecomposable
/// summands with multiplicities, in order of first appearance.
pub fn decompose<F: Field, M: Module<F>, R: Rng + ?Sized>(m: &M, rng: &mut R) -> Result<Vec<(M, usize)>> {
    let mut groups: Vec<(M, usize)> = Vec::new();
    for s in indecomposable_summands(m, rng)? {
        match groups.iter_mut().find(|(g, _)| find_isomorphism(g, &s, rng).is_some()) {
            Some((_, mult)) => *mult += 1,
            None => groups.push((s, 1)),
        }
    }
    Ok(groups)
}

/// Searches `Hom(x, y)` for an invertible element: basis elements first,
/// then seeded random combinations. Fast-paths on dimensions and Hom-dimension
/// fingerprints.
pub fn find_isomorphism<F: Field, M: Module<F>, R: Rng + ?Sized>(x: &M, y: &M, rng: &mut R) -> Option<Morphism<F>> {
    if !x.same_algebra(y) || x.dims() != y.dims() {
        return None;
    }
    let xy = hom_basis(x, y);
    if xy.dim() == 0 && !x.is_zero() {
        return None;
    }
    if x.is_zero() {
        return Some(Morphism::zero(x.dims(), y.dims()));
    }
    if xy.dim() != hom_dim(y, x) || hom_dim(x, x) != hom_dim(y, y) || xy.dim() != hom_dim(x, x) {
        return None;
    }
    if let Some(b) = xy.basis.iter().find(|b| b.is_invertible()) {
        return Some(b.clone());
    }
    (0..SEARCH_TRIES).map(|_| xy.random_element(rng)).find(Morphism::is_invertible)
}

pub fn is_isomorphic<F: Field, M: Module<F>>(x: &M, y: &M) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    find_isomorphism(x, y, &mut rng).is_some()
}

/// Transports `m` along a vertexwise base change `g` (`g_v : M_v → M'_v`).
pub fn base_change<F: Field, M: Module<F>>(m: &M, g: &Morphism<F>) -> M {
    let inv = g.inverse().expect("base change must be invertible");
    let actions = (0..m.action_count())
        .map(|k| {
            let (s, t) = m.action_ends(k);
            &(&g.blocks[t] * m.action(k)) * &inv.blocks[s]
        })
        .collect();
    m.rebuild(m.dims().to_vec(), actions)
}

/// A random invertible vertexwise base change.
pub fn random_base_change<F: Field, R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Morphism<F> {
    Morphism::new(
        dims.iter()
            .map(|&d| loop {
                let data = (0..d * d).map(|_| F::random(rng)).collect();
                let m = Matrix::new(d, d, data);
                if m.is_invertible() {
                    break m;
                }
            })
            .collect(),
    )
}
