//! `Ext¹` at cocycle level, explicit short exact sequences, pullbacks,
//! pushouts and relative exactness with respect to `Hom(−, T)`.
//!
//! An extension `0 → Y → E → X → 0` is encoded by a family `C_b : X_{s(b)} →
//! Y_{t(b)}`, one per arrow, with `E_b = [[Y_b, C_b], [0, X_b]]`. The relation
//! on `E` holds iff `Σ_{s(b)=i} sign(b) (Y_{b*} C_b + C_{b*} X_b) = 0` at every
//! vertex, and `C` is split iff `C_b = Y_b f_{s(b)} − f_{t(b)} X_b` for some
//! vertex maps `f_v : X_v → Y_v`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{layout, Block, BlockSystem, Coordinates, Matrix};
use crate::quiver::symmetric_form;
use crate::rep::{direct_sum, hom_basis, hom_dim, kernel_bases, quotient, submodule, Module, Morphism, Representation};

/// Extra random classes tried on top of the representatives when an
/// `Ext¹` space has dimension at least 2.
pub const CLASS_SAMPLES: usize = 64;

/// `Ext¹(x, y)`: classes of extensions `0 → y → E → x → 0`.
#[derive(Clone, Debug)]
pub struct ExtSpace<F> {
    pub x: Representation<F>,
    pub y: Representation<F>,
    /// Position of `C_b` inside a flattened cocycle.
    blocks: Vec<Block>,
    /// Basis of the cocycle space `Z`, as columns.
    pub cocycles: Matrix<F>,
    /// Basis of the coboundary space `B ⊂ Z`, as columns.
    pub coboundaries: Matrix<F>,
    /// Cocycles whose classes form a basis of `Z / B`, as columns.
    pub representatives: Matrix<F>,
    coords: Coordinates<F>,
}

impl<F: Field> ExtSpace<F> {
    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Splits a flattened cocycle into its per-arrow matrices.
    pub fn unflatten(&self, flat: &[F]) -> Vec<Matrix<F>> {
        self.blocks
            .iter()
            .map(|b| Matrix::new(b.rows, b.cols, flat[b.offset..b.offset + b.len()].to_vec()))
            .collect()
    }

    pub fn flatten(cocycle: &[Matrix<F>]) -> Vec<F> {
        cocycle.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    /// `Σ coeffs_k · representative_k` as per-arrow matrices.
    pub fn cocycle(&self, coeffs: &[F]) -> Result<Vec<Matrix<F>>> {
        if coeffs.len() != self.dim() {
            return Err(Error::Input(format!("{} coefficients for an Ext space of dimension {}", coeffs.len(), self.dim())));
        }
        Ok(self.unflatten(&self.representatives.mul_vec(coeffs)))
    }

    /// Coordinates of the class of a cocycle with respect to the representatives.
    pub fn class_of(&self, cocycle: &[Matrix<F>]) -> Vec<F> {
        let mut v = self.coords.of(&Self::flatten(cocycle));
        v.truncate(self.dim());
        v
    }

    /// The cocycle obtained by pushing along `f : y → y'`.
    pub fn push(&self, cocycle: &[Matrix<F>], f: &Morphism<F>) -> Vec<Matrix<F>> {
        let dq = self.x.dq();
        cocycle.iter().enumerate().map(|(b, c)| &f.blocks[dq.arrow(b).target] * c).collect()
    }

    /// The cocycle obtained by pulling back along `h : x' → x`.
    pub fn pull(&self, cocycle: &[Matrix<F>], h: &Morphism<F>) -> Vec<Matrix<F>> {
        let dq = self.x.dq();
        cocycle.iter().enumerate().map(|(b, c)| c * &h.blocks[dq.arrow(b).source]).collect()
    }
}

/// Computes `Z`, `B` and a basis of `Z / B` for `Ext¹(x, y)`.
pub fn ext1_cocycle<F: Field>(x: &Representation<F>, y: &Representation<F>) -> ExtSpace<F> {
    assert!(x.same_algebra(y), "Ext between modules over different algebras");
    let dq = x.dq();
    let (xd, yd) = (x.dims(), y.dims());
    let narrows = dq.arrows().len();
    let (cblocks, n) = layout((0..narrows).map(|b| {
        let a = dq.arrow(b);
        (yd[a.target], xd[a.source])
    }));

    // linearised relation, one y_i × x_i block per vertex
    let (rel, nrel) = layout((0..dq.vertices()).map(|i| (yd[i], xd[i])));
    let mut sys = BlockSystem::new(nrel, n);
    for (i, r) in rel.iter().enumerate() {
        for b in dq.outgoing(i) {
            let sign = F::from_i64(dq.sign(b));
            let bs = dq.star(b);
            sys.add_term(*r, cblocks[b], Some(y.action(bs)), None, sign);
            sys.add_term(*r, cblocks[bs], None, Some(x.action(b)), sign);
        }
    }
    let cocycles = sys.matrix.kernel_basis();

    // coboundaries of vertex maps f_v : x_v → y_v
    let (fblocks, nf) = layout((0..dq.vertices()).map(|v| (yd[v], xd[v])));
    let mut cob = BlockSystem::new(n, nf);
    for b in 0..narrows {
        let a = dq.arrow(b);
        cob.add_term(cblocks[b], fblocks[a.source], Some(y.action(b)), None, F::one());
        cob.add_term(cblocks[b], fblocks[a.target], None, Some(x.action(b)), -F::one());
    }
    let coboundaries = cob.matrix.column_space();

    let joint = coboundaries.hstack(&cocycles);
    let pivots = joint.echelon().pivots;
    let rb = coboundaries.cols();
    let rep_idx: Vec<usize> = pivots.iter().filter(|&&p| p >= rb).map(|&p| p - rb).collect();
    let representatives = cocycles.select_cols(&rep_idx);
    let coords = Coordinates::new(&representatives.hstack(&coboundaries));
    ExtSpace { x: x.clone(), y: y.clone(), blocks: cblocks, cocycles, coboundaries, representatives, coords }
}

pub fn ext1_dim<F: Field>(x: &Representation<F>, y: &Representation<F>) -> usize {
    ext1_cocycle(x, y).dim()
}

/// `dim Hom(x,y) + dim Hom(y,x) − (dim x, dim y)`.
pub fn ext1_dim_formula<F: Field>(x: &Representation<F>, y: &Representation<F>) -> i64 {
    let form = symmetric_form(x.dq(), &x.dim_vector(), &y.dim_vector()).expect("same quiver");
    hom_dim(x, y) as i64 + hom_dim(y, x) as i64 - form
}

/// `0 → sub --inj--> mid --surj--> quot → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence<F> {
    pub sub: Representation<F>,
    pub mid: Representation<F>,
    pub quot: Representation<F>,
    pub inj: Morphism<F>,
    pub surj: Morphism<F>,
}

impl<F: Field> ShortExactSequence<F> {
    /// Checks that both maps are module maps and that the sequence is exact.
    pub fn is_valid(&self) -> bool {
        use crate::rep::is_module_map;
        self.mid.check_relations()
            && is_module_map(&self.sub, &self.mid, &self.inj)
            && is_module_map(&self.mid, &self.quot, &self.surj)
            && self.inj.is_injective()
            && self.surj.is_surjective()
            && self.surj.compose(&self.inj).is_zero()
            && self.mid.total_dim() == self.sub.total_dim() + self.quot.total_dim()
    }

    /// `sub → sub ⊕ quot → quot`.
    pub fn split(sub: &Representation<F>, quot: &Representation<F>) -> Self {
        let mid = direct_sum(sub, &[sub, quot]);
        let (sd, qd) = (sub.dims(), quot.dims());
        let inj = Morphism::new(
            sd.iter().zip(qd).map(|(&s, &q)| Matrix::identity(s).vstack(&Matrix::zeros(q, s))).collect(),
        );
        let surj = Morphism::new(
            sd.iter().zip(qd).map(|(&s, &q)| Matrix::zeros(q, s).hstack(&Matrix::identity(q))).collect(),
        );
        ShortExactSequence { sub: sub.clone(), mid, quot: quot.clone(), inj, surj }
    }
}

/// The extension with cocycle `Σ coeffs_k · representative_k`.
pub fn build_extension<F: Field>(e: &ExtSpace<F>, coeffs: &[F]) -> Result<ShortExactSequence<F>> {
    let c = e.cocycle(coeffs)?;
    Ok(extension_from_cocycle(&e.x, &e.y, &c))
}

/// Middle term `[[Y_b, C_b], [0, X_b]]` on `E_v = Y_v ⊕ X_v`.
pub fn extension_from_cocycle<F: Field>(
    x: &Representation<F>,
    y: &Representation<F>,
    cocycle: &[Matrix<F>],
) -> ShortExactSequence<F> {
    let mut s = ShortExactSequence::split(y, x);
    let dq = x.dq();
    let mats = (0..dq.arrows().len())
        .map(|b| {
            let a = dq.arrow(b);
            let mut m = s.mid.action(b).clone();
            m.set_block(0, y.dims()[a.source], &cocycle[b]);
            m
        })
        .collect();
    s.mid = Representation::unchecked(x.algebra(), s.mid.dims().to_vec(), mats).expect("block shapes");
    s
}

/// True iff `f : w → target` lies in the image of `Hom(w, through) → Hom(w, target)`,
/// `g ↦ p ∘ g`.
pub fn factors_through<F: Field>(
    f: &Morphism<F>,
    w: &Representation<F>,
    through: &Representation<F>,
    p: &Morphism<F>,
) -> bool {
    let hom = hom_basis(w, through);
    let len = f.flatten().len();
    let cols: Vec<Vec<F>> = hom.basis.iter().map(|g| p.compose(g).flatten()).collect();
    let a = Matrix::from_columns(len, &cols);
    let r = a.rank();
    a.hstack(&Matrix::from_columns(len, &[f.flatten()])).rank() == r
}

/// True iff `surj` admits a section.
pub fn is_split<F: Field>(s: &ShortExactSequence<F>) -> bool {
    factors_through(&Morphism::identity(s.quot.dims()), &s.quot, &s.mid, &s.surj)
}

/// Pullback along `h : w → quot`: `E' = {(e, u) : surj(e) = h(u)} ⊂ mid ⊕ w`.
pub fn pullback<F: Field>(s: &ShortExactSequence<F>, w: &Representation<F>, h: &Morphism<F>) -> ShortExactSequence<F> {
    let sum = direct_sum(&s.mid, &[&s.mid, w]);
    let diff = Morphism::new(
        s.surj.blocks.iter().zip(&h.blocks).map(|(p, hv)| p.hstack(&hv.scale(-F::one()))).collect(),
    );
    let bases = kernel_bases(&diff);
    let (mid, _) = submodule(&sum, &bases);
    let md = s.mid.dims();
    let inj = Morphism::new(
        bases
            .iter()
            .enumerate()
            .map(|(v, k)| {
                let coords = Coordinates::new(k);
                let ambient = s.inj.blocks[v].vstack(&Matrix::zeros(w.dims()[v], s.sub.dims()[v]));
                let cols: Vec<Vec<F>> = ambient.columns().iter().map(|c| coords.of(c)).collect();
                Matrix::from_columns(k.cols(), &cols)
            })
            .collect(),
    );
    let surj = Morphism::new(
        bases
            .iter()
            .enumerate()
            .map(|(v, k)| &Matrix::zeros(w.dims()[v], md[v]).hstack(&Matrix::identity(w.dims()[v])) * k)
            .collect(),
    );
    ShortExactSequence { sub: s.sub.clone(), mid, quot: w.clone(), inj, surj }
}

/// Pushout along `g : sub → n`: `E' = (n ⊕ mid) / {(g(y), −inj(y))}`.
pub fn pushout<F: Field>(s: &ShortExactSequence<F>, n: &Representation<F>, g: &Morphism<F>) -> ShortExactSequence<F> {
    let sum = direct_sum(n, &[n, &s.mid]);
    let rel: Vec<Matrix<F>> =
        g.blocks.iter().zip(&s.inj.blocks).map(|(gv, iv)| gv.vstack(&iv.scale(-F::one()))).collect();
    let (mid, proj, sect) = quotient(&sum, &rel);
    let nd = n.dims();
    let md = s.mid.dims();
    let inj = Morphism::new(
        (0..nd.len())
            .map(|v| &proj.blocks[v] * &Matrix::identity(nd[v]).vstack(&Matrix::zeros(md[v], nd[v])))
            .collect(),
    );
    let surj = Morphism::new(
        (0..nd.len())
            .map(|v| &Matrix::zeros(s.quot.dims()[v], nd[v]).hstack(&s.surj.blocks[v]) * &sect.blocks[v])
            .collect(),
    );
    ShortExactSequence { sub: n.clone(), mid, quot: s.quot.clone(), inj, surj }
}

/// `Hom(−, t)` keeps the sequence exact: `dim Hom(mid,t) = dim Hom(sub,t) + dim Hom(quot,t)`.
/// `t` is given by its indecomposable summands.
pub fn is_ft_exact<F: Field>(s: &ShortExactSequence<F>, t: &[Representation<F>]) -> bool {
    t.iter().all(|n| hom_dim(&s.mid, n) == hom_dim(&s.sub, n) + hom_dim(&s.quot, n))
}

/// Which orientation of a pair admits a non-split `F^T`-exact sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    /// `0 → y → E → x → 0`
    Forward,
    /// `0 → x → E → y → 0`
    Backward,
    Both,
    None,
}

#[derive(Clone, Debug)]
pub struct DirectionWitness<F> {
    pub direction: Direction,
    /// A non-split `F^T`-exact sequence for the first orientation that has one.
    pub witness: Option<ShortExactSequence<F>>,
    /// Number of classes examined in each orientation.
    pub classes_tried: (usize, usize),
}

/// How classes of an `Ext¹` space are enumerated up to scalars.
#[derive(Clone, Copy, Debug)]
pub struct ClassSampling {
    /// Enumerate all `p + 1` lines of a 2-dimensional space.
    pub exhaustive: bool,
    pub samples: usize,
    /// Try a basis of the `F^T`-exact subspace before the sampled classes.
    pub seed_exact_subspace: bool,
}

impl Default for ClassSampling {
    fn default() -> Self {
        ClassSampling { exhaustive: false, samples: CLASS_SAMPLES, seed_exact_subspace: true }
    }
}

/// Scale so that the first nonzero coordinate is 1.
pub fn normalize_class<F: Field>(v: &mut [F]) {
    if let Some(c) = v.iter().find(|c| !c.is_zero()).copied() {
        let inv = c.inv().expect("nonzero");
        for x in v.iter_mut() {
            *x *= inv;
        }
    }
}

/// Nonzero classes up to scalar: the basis vectors, then either all lines
/// (2-dimensional, exhaustive) or seeded random lines, deduplicated.
pub fn sample_classes<F: Field, R: Rng + ?Sized>(dim: usize, sampling: ClassSampling, rng: &mut R) -> Vec<Vec<F>> {
    let mut out: Vec<Vec<F>> = (0..dim)
        .map(|k| (0..dim).map(|j| if j == k { F::one() } else { F::zero() }).collect())
        .collect();
    if dim <= 1 {
        return out;
    }
    if dim == 2 && sampling.exhaustive {
        for a in 1..F::CHARACTERISTIC {
            out.push(vec![F::one(), F::from_i64(a as i64)]);
        }
        return out;
    }
    for _ in 0..sampling.samples {
        let mut v: Vec<F> = (0..dim).map(|_| F::random(rng)).collect();
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        normalize_class(&mut v);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Searches both orientations of a pair with `Ext¹ ≠ 0` for a non-split
/// sequence that stays exact under `Hom(−, T)`. Every candidate class is
/// confirmed by the Hom-dimension identity on its middle term.
pub fn ft_exact_direction<F: Field, R: Rng + ?Sized>(
    x: &Representation<F>,
    y: &Representation<F>,
    t: &[Representation<F>],
    sampling: ClassSampling,
    rng: &mut R,
) -> Result<DirectionWitness<F>> {
    let fwd = ext1_cocycle(x, y);
    if fwd.is_zero() {
        return Err(Error::Input("ft_exact_direction needs Ext¹(x, y) ≠ 0".into()));
    }
    let bwd = ext1_cocycle(y, x);
    let mut search = |e: &ExtSpace<F>| -> Result<(Option<ShortExactSequence<F>>, usize)> {
        let mut classes = Vec::new();
        if sampling.seed_exact_subspace {
            for mut c in ft_exact_subspace(e, t).columns() {
                normalize_class(&mut c);
                classes.push(c);
            }
        }
        classes.extend(sample_classes::<F, _>(e.dim(), sampling, rng));
        let mut tried = 0;
        for c in &classes {
            tried += 1;
            let s = build_extension(e, c)?;
            if is_ft_exact(&s, t) {
                return Ok((Some(s), tried));
            }
        }
        Ok((None, tried))
    };
    let (f, nf) = search(&fwd)?;
    let (b, nb) = search(&bwd)?;
    let direction = match (f.is_some(), b.is_some()) {
        (true, true) => Direction::Both,
        (true, false) => Direction::Forward,
        (false, true) => Direction::Backward,
        (false, false) => Direction::None,
    };
    Ok(DirectionWitness { direction, witness: f.or(b), classes_tried: (nf, nb) })
}

/// Classes in `Ext¹(y, x)` (sequences `0 → x → E → y → 0`) that stay exact
/// under `Hom(−, T)`, as a basis of coordinate vectors.
///
/// A class is `F^T`-exact iff every `f : x → T_j` extends over `E`, i.e. iff
/// its pushforward along every such `f` splits. This is the intersection of
/// the kernels of the linear maps `f_* : Ext¹(y, x) → Ext¹(y, T_j)`.
pub fn ft_exact_subspace<F: Field>(e: &ExtSpace<F>, t: &[Representation<F>]) -> Matrix<F> {
    let k = e.dim();
    let mut stacked = Matrix::zeros(0, k);
    for tj in t {
        let target = ext1_cocycle(&e.x, tj);
        if target.is_zero() {
            continue;
        }
        for f in hom_basis(&e.y, tj).basis {
            let cols: Vec<Vec<F>> = (0..k)
                .map(|c| {
                    let rep = e.unflatten(&e.representatives.column(c));
                    target.class_of(&e.push(&rep, &f))
                })
                .collect();
            stacked = stacked.vstack(&Matrix::from_columns(target.dim(), &cols));
        }
    }
    stacked.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::quiver::{DynkinType, Preprojective};
    use crate::rep::{is_indecomposable, is_isomorphic};
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    type F = Fp<32003>;

    fn alg(n: usize) -> Arc<Preprojective<F>> {
        Preprojective::new(DynkinType::A(n)).unwrap()
    }

    fn one() -> Matrix<F> {
        Matrix::identity(1)
    }

    #[test]
    fn ext_examples_a3() {
        let a3 = alg(3);
        let s1 = Representation::simple(&a3, 0);
        let s2 = Representation::simple(&a3, 1);
        let p2 = Representation::projective(&a3, 1);
        assert_eq!(ext1_dim(&s1, &s2), 1);
        assert_eq!(ext1_dim(&s2, &s2), 0);
        assert_eq!(ext1_dim_formula(&s1, &s2), 1);
        assert_eq!(ext1_dim_formula(&s2, &s2), 0);
        assert_eq!(ext1_dim_formula(&p2, &s2), 0);
        assert_eq!(ext1_dim(&p2, &s2), 0);
        for v in 0..3 {
            let p = Representation::projective(&a3, v);
            assert_eq!(ext1_dim(&s1, &p), 0);
            assert_eq!(ext1_dim(&p, &s1), 0);
        }
    }

    #[test]
    fn extension_of_simples() {
        let a3 = alg(3);
        let s1 = Representation::simple(&a3, 0);
        let s2 = Representation::simple(&a3, 1);
        let e = ext1_cocycle(&s1, &s2);
        let s = build_extension(&e, &[F::from_i64(1)]).unwrap();
        assert!(s.is_valid());
        assert_eq!(s.mid.dims(), &[1, 1, 0]);
        assert!(is_indecomposable(&s.mid).unwrap());
        assert!(!is_split(&s));
        let expected = Representation::from_arrows(&a3, &[1, 1, 0], &[("a1", one())]).unwrap();
        assert!(is_isomorphic(&s.mid, &expected));
        let z = build_extension(&e, &[F::from_i64(0)]).unwrap();
        assert!(is_split(&z));
        assert!(is_isomorphic(&z.mid, &direct_sum(&s1, &[&s2, &s1])));
        assert!(build_extension(&e, &[]).is_err());
    }

    #[test]
    fn pullback_and_pushout_basics() {
        let a3 = alg(3);
        let s1 = Representation::simple(&a3, 0);
        let s2 = Representation::simple(&a3, 1);
        let s = build_extension(&ext1_cocycle(&s1, &s2), &[F::from_i64(1)]).unwrap();
        let id = pullback(&s, &s1, &Morphism::identity(s1.dims()));
        assert!(id.is_valid());
        assert!(!is_split(&id));
        assert!(is_isomorphic(&id.mid, &s.mid));
        let zero = pullback(&s, &s1, &Morphism::zero(s1.dims(), s1.dims()));
        assert!(zero.is_valid());
        assert!(is_split(&zero));
        let po = pushout(&s, &s2, &Morphism::identity(s2.dims()));
        assert!(po.is_valid());
        assert!(!is_split(&po));
        let po0 = pushout(&s, &s2, &Morphism::zero(s2.dims(), s2.dims()));
        assert!(po0.is_valid());
        assert!(is_split(&po0));
    }

    #[test]
    fn ft_exact_examples() {
        let a3 = alg(3);
        let s1 = Representation::simple(&a3, 0);
        let s2 = Representation::simple(&a3, 1);
        let s = build_extension(&ext1_cocycle(&s1, &s2), &[F::from_i64(1)]).unwrap();
        let projs: Vec<_> = (0..3).map(|v| Representation::projective(&a3, v)).collect();
        assert!(is_ft_exact(&s, &projs));
        let split = ShortExactSequence::split(&s2, &s1);
        assert!(is_ft_exact(&split, &[s1.clone(), s2.clone()]));
        // Hom(1/2, S2) = 0 but Hom(S2, S2) = 1
        assert!(!is_ft_exact(&s, &[s2.clone()]));
    }

    #[test]
    fn direction_search() {
        let a3 = alg(3);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s1 = Representation::simple(&a3, 0);
        let s2 = Representation::simple(&a3, 1);
        let s3 = Representation::simple(&a3, 2);
        let d = ft_exact_direction(&s1, &s3, &[s1.clone()], ClassSampling::default(), &mut rng);
        assert!(d.is_err());
        let projs: Vec<_> = (0..3).map(|v| Representation::projective(&a3, v)).collect();
        let d = ft_exact_direction(&s1, &s2, &projs, ClassSampling::default(), &mut rng).unwrap();
        assert_eq!(d.direction, Direction::Both);
        let w = d.witness.unwrap();
        assert!(w.is_valid() && !is_split(&w) && is_ft_exact(&w, &projs));
    }

    #[test]
    fn subspace_matches_sampling_on_simples() {
        let a3 = alg(3);
        let s1 = Representation::simple(&a3, 0);
        let s2 = Representation::simple(&a3, 1);
        let e = ext1_cocycle(&s2, &s1);
        let projs: Vec<_> = (0..3).map(|v| Representation::projective(&a3, v)).collect();
        assert_eq!(ft_exact_subspace(&e, &projs).cols(), 1);
        assert_eq!(ft_exact_subspace(&e, &[s1.clone()]).cols(), 0);
    }

    #[test]
    fn class_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(sample_classes::<Fp<101>, _>(1, ClassSampling::default(), &mut rng).len(), 1);
        let all = sample_classes::<Fp<101>, _>(2, ClassSampling { exhaustive: true, samples: 0, seed_exact_subspace: false }, &mut rng);
        assert_eq!(all.len(), 102);
        let some = sample_classes::<F, _>(2, ClassSampling::default(), &mut rng);
        assert!(some.len() > 2 && some.len() <= 2 + CLASS_SAMPLES);
        for c in &some {
            assert_eq!(c.iter().find(|v| !v.is_zero()).copied(), Some(F::from_i64(1)));
        }
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use crate::atlas::Atlas;
    use crate::field::Fp;
    use crate::quiver::{symmetric_form, DynkinType};
    use crate::rep::{base_change, decompose, random_base_change};
    use crate::rigid::{enumerate_maximal_rigid, ExchangeGraph};
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::OnceLock;

    type F = Fp<32003>;

    fn a3() -> &'static (Atlas<F>, ExchangeGraph) {
        static CELL: OnceLock<(Atlas<F>, ExchangeGraph)> = OnceLock::new();
        CELL.get_or_init(|| {
            let atlas = Atlas::enumerate(DynkinType::A(3), 0).unwrap();
            let g = ExchangeGraph::mutation(&atlas, enumerate_maximal_rigid(&atlas).unwrap()).unwrap();
            (atlas, g)
        })
    }

    fn nonsplit_pairs() -> Vec<(usize, usize)> {
        let atlas = &a3().0;
        (0..atlas.len())
            .flat_map(|i| (0..atlas.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| atlas.ext(i, j) > 0)
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn symmetric_form_is_symmetric(d in proptest::collection::vec(0usize..4, 3), e in proptest::collection::vec(0usize..4, 3)) {
            let dq = a3().0.algebra().dq();
            let (d, e) = (crate::quiver::DimVector(d), crate::quiver::DimVector(e));
            let de = symmetric_form(dq, &d, &e).unwrap();
            prop_assert_eq!(de, symmetric_form(dq, &e, &d).unwrap());
            prop_assert_eq!(symmetric_form(dq, &d, &d).unwrap() % 2, 0);
        }

        #[test]
        fn hom_is_invariant_under_base_change(i in 0usize..12, j in 0usize..12, seed in any::<u64>()) {
            let atlas = &a3().0;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = atlas.module(i);
            let g = random_base_change::<F, _>(x.dims(), &mut rng);
            let moved = base_change(x, &g);
            prop_assert!(moved.check_relations());
            prop_assert_eq!(hom_dim(&moved, atlas.module(j)), atlas.hom(i, j));
            prop_assert_eq!(ext1_dim(&moved, atlas.module(j)), atlas.ext(i, j));
        }

        #[test]
        fn hom_is_additive_and_sums_decompose(i in 0usize..12, j in 0usize..12, k in 0usize..12, seed in any::<u64>()) {
            let atlas = &a3().0;
            let (x, y, z) = (atlas.module(i), atlas.module(j), atlas.module(k));
            let s = direct_sum(x, &[x, y]);
            prop_assert_eq!(hom_dim(&s, z), atlas.hom(i, k) + atlas.hom(j, k));
            prop_assert_eq!(hom_dim(z, &s), atlas.hom(k, i) + atlas.hom(k, j));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mixed = base_change(&s, &random_base_change::<F, _>(s.dims(), &mut rng));
            let mut found = atlas.locate_summands(&mixed, seed).unwrap();
            found.sort();
            let mut expected = vec![i, j];
            expected.sort();
            prop_assert_eq!(found, expected);
            let parts = decompose(&mixed, &mut rng).unwrap();
            prop_assert_eq!(parts.iter().map(|p| p.1).sum::<usize>(), 2);
        }

        #[test]
        fn extension_splits_iff_class_is_zero(pick in any::<prop::sample::Index>(), zero in any::<bool>(), seed in any::<u64>()) {
            let atlas = &a3().0;
            let pairs = nonsplit_pairs();
            let (i, j) = pairs[pick.index(pairs.len())];
            let e = ext1_cocycle(atlas.module(i), atlas.module(j));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let coeffs: Vec<F> = (0..e.dim()).map(|_| if zero { F::zero() } else { F::random(&mut rng) }).collect();
            let s = build_extension(&e, &coeffs).unwrap();
            prop_assert!(s.is_valid());
            prop_assert_eq!(is_split(&s), coeffs.iter().all(|c| c.is_zero()));
        }

        /// A pullback of a non-split sequence along `h` is non-split iff `h`
        /// does not factor through the middle term.
        #[test]
        fn pullback_splits_iff_map_factors(pick in any::<prop::sample::Index>(), w in 0usize..12, seed in any::<u64>()) {
            let atlas = &a3().0;
            let pairs = nonsplit_pairs();
            let (i, j) = pairs[pick.index(pairs.len())];
            let e = ext1_cocycle(atlas.module(i), atlas.module(j));
            let s = build_extension(&e, &vec![F::one(); e.dim()]).unwrap();
            let wm = atlas.module(w);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = hom_basis(wm, &s.quot).random_element(&mut rng);
            let p = pullback(&s, wm, &h);
            prop_assert!(p.is_valid());
            prop_assert_eq!(is_split(&p), factors_through(&h, wm, &s.mid, &s.surj));
        }

        /// The exact-subspace computation and the Hom-dimension identity agree
        /// on random classes.
        #[test]
        fn exactness_matches_subspace_membership(pick in any::<prop::sample::Index>(), t in 0usize..14, seed in any::<u64>(), inside in any::<bool>()) {
            let (atlas, g) = a3();
            let pairs = nonsplit_pairs();
            let (i, j) = pairs[pick.index(pairs.len())];
            let tm: Vec<Representation<F>> = g.vertices[t].summands.iter().map(|&k| atlas.module(k).clone()).collect();
            let e = ext1_cocycle(atlas.module(i), atlas.module(j));
            let sub = ft_exact_subspace(&e, &tm);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let coeffs: Vec<F> = if inside && sub.cols() > 0 {
                let c: Vec<F> = (0..sub.cols()).map(|_| F::random(&mut rng)).collect();
                sub.mul_vec(&c)
            } else {
                (0..e.dim()).map(|_| F::random(&mut rng)).collect()
            };
            let member = sub.hstack(&Matrix::from_columns(e.dim(), std::slice::from_ref(&coeffs))).rank() == sub.cols();
            let s = build_extension(&e, &coeffs).unwrap();
            prop_assert_eq!(is_ft_exact(&s, &tm), member);
        }
    }
}
