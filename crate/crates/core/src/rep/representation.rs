use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::{DimVector, DoubleQuiver, Preprojective};

use super::{Module, ProjectiveCovers};

/// A finite-dimensional `Λ`-module: one matrix per arrow of the double quiver,
/// `mats[a]` of shape `dim_{t(a)} × dim_{s(a)}`.
#[derive(Clone)]
pub struct Representation<F> {
    alg: Arc<Preprojective<F>>,
    dims: Vec<usize>,
    mats: Vec<Matrix<F>>,
    generators: Vec<usize>,
}

impl<F: fmt::Debug> fmt::Debug for Representation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation").field("dims", &self.dims).field("mats", &self.mats).finish()
    }
}

impl<F: Field> PartialEq for Representation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dims == other.dims && self.mats == other.mats
    }
}

impl<F: Field> Representation<F> {
    /// Validates shapes and the preprojective relation.
    pub fn new(alg: &Arc<Preprojective<F>>, dims: Vec<usize>, mats: Vec<Matrix<F>>) -> Result<Self> {
        let rep = Self::unchecked(alg, dims, mats)?;
        if !rep.relation_residues().iter().all(Matrix::is_zero) {
            return Err(Error::Input("matrices violate the preprojective relation".into()));
        }
        Ok(rep)
    }

    /// Checks shapes only; the relation may fail.
    pub fn unchecked(alg: &Arc<Preprojective<F>>, dims: Vec<usize>, mats: Vec<Matrix<F>>) -> Result<Self> {
        let dq = alg.dq();
        if dims.len() != dq.vertices() {
            return Err(Error::Input(format!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                dq.vertices()
            )));
        }
        if mats.len() != dq.arrows().len() {
            return Err(Error::Input(format!("{} matrices for {} arrows", mats.len(), dq.arrows().len())));
        }
        for (a, m) in mats.iter().enumerate() {
            let arr = dq.arrow(a);
            if m.shape() != (dims[arr.target], dims[arr.source]) {
                return Err(Error::Input(format!(
                    "matrix for {} has shape {:?}, expected {:?}",
                    dq.arrow_name(a),
                    m.shape(),
                    (dims[arr.target], dims[arr.source])
                )));
            }
        }
        Ok(Representation { alg: alg.clone(), dims, mats, generators: (0..dq.arrows().len()).collect() })
    }

    /// Builds a module from named arrow matrices (`"a1"`, `"a2*"`, ...); the
    /// remaining arrows act by zero.
    pub fn from_arrows(alg: &Arc<Preprojective<F>>, dims: &[usize], arrows: &[(&str, Matrix<F>)]) -> Result<Self> {
        let dq = alg.dq();
        let mut mats: Vec<Matrix<F>> = dq
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims.get(a.target).copied().unwrap_or(0), dims.get(a.source).copied().unwrap_or(0)))
            .collect();
        for (name, m) in arrows {
            let a = dq.arrow_by_name(name).ok_or_else(|| Error::Input(format!("unknown arrow {name:?}")))?;
            mats[a] = m.clone();
        }
        Self::new(alg, dims.to_vec(), mats)
    }

    pub fn zero(alg: &Arc<Preprojective<F>>) -> Self {
        Self::simple_like(alg, vec![0; alg.vertices()])
    }

    fn simple_like(alg: &Arc<Preprojective<F>>, dims: Vec<usize>) -> Self {
        let mats = alg
            .dq()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Self::unchecked(alg, dims, mats).expect("zero matrices have consistent shapes")
    }

    /// The simple module at vertex `v` (0-based).
    pub fn simple(alg: &Arc<Preprojective<F>>, v: usize) -> Self {
        let mut dims = vec![0; alg.vertices()];
        dims[v] = 1;
        Self::simple_like(alg, dims)
    }

    /// `Λe_v` on its path-class basis, arrows acting by left multiplication.
    pub fn projective(alg: &Arc<Preprojective<F>>, v: usize) -> Self {
        let data = alg.projective_data(v);
        let dims = data.elements.iter().map(Vec::len).collect();
        Self::unchecked(alg, dims, data.mats.clone()).expect("projective data is well-shaped")
    }

    pub fn algebra(&self) -> &Arc<Preprojective<F>> {
        &self.alg
    }

    pub fn dq(&self) -> &DoubleQuiver {
        self.alg.dq()
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.clone())
    }

    pub fn mats(&self) -> &[Matrix<F>] {
        &self.mats
    }

    /// `Σ_{s(b)=i} sign(b) M_{b*} M_b` for each vertex `i`.
    pub fn relation_residues(&self) -> Vec<Matrix<F>> {
        let dq = self.alg.dq();
        (0..dq.vertices())
            .map(|i| {
                let mut acc = Matrix::zeros(self.dims[i], self.dims[i]);
                for b in dq.outgoing(i) {
                    let term = &self.mats[dq.star(b)] * &self.mats[b];
                    acc.add_scaled(F::from_i64(dq.sign(b)), &term);
                }
                acc
            })
            .collect()
    }

    pub fn check_relations(&self) -> bool {
        self.relation_residues().iter().all(Matrix::is_zero)
    }

    /// The `k`-dual `DM` with `(DM)_a = (M_{a*})ᵀ`; it satisfies the same relation.
    pub fn dual(&self) -> Self {
        let dq = self.alg.dq();
        let mats = (0..dq.arrows().len()).map(|a| self.mats[dq.star(a)].transpose()).collect();
        Self::unchecked(&self.alg, self.dims.clone(), mats).expect("dual shapes are consistent")
    }

    /// Matrix entries as canonical integers in `[0, p)`, row-major per arrow.
    pub fn matrix_entries(&self) -> Vec<Vec<u64>> {
        self.mats.iter().map(Matrix::to_u64_vec).collect()
    }
}

impl<F: Field> Module<F> for Representation<F> {
    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn action_count(&self) -> usize {
        self.mats.len()
    }

    fn action_ends(&self, k: usize) -> (usize, usize) {
        let a = self.alg.dq().arrow(k);
        (a.source, a.target)
    }

    fn action(&self, k: usize) -> &Matrix<F> {
        &self.mats[k]
    }

    fn generators(&self) -> &[usize] {
        &self.generators
    }

    fn rebuild(&self, dims: Vec<usize>, actions: Vec<Matrix<F>>) -> Self {
        Representation { alg: self.alg.clone(), dims, mats: actions, generators: self.generators.clone() }
    }

    fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || self.alg.dq() == other.alg.dq()
    }
}

impl<F: Field> ProjectiveCovers<F> for Representation<F> {
    fn projective(&self, v: usize) -> Self {
        Representation::projective(&self.alg, v)
    }

    fn cover_images(&self, v: usize, w: &[F]) -> Vec<Matrix<F>> {
        let data = self.alg.projective_data(v);
        data.elements
            .iter()
            .enumerate()
            .map(|(j, paths)| {
                let cols: Vec<Vec<F>> = paths
                    .iter()
                    .map(|p| p.arrows.iter().fold(w.to_vec(), |vec, &a| self.mats[a].mul_vec(&vec)))
                    .collect();
                Matrix::from_columns(self.dims[j], &cols)
            })
            .collect()
    }
}

/// `D Ω D M`, the cokernel of an injective envelope.
pub fn cosyzygy<F: Field>(m: &Representation<F>) -> Representation<F> {
    super::syzygy(&m.dual()).0.dual()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::quiver::DynkinType;
    use crate::rep::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F = Fp<32003>;

    fn a(n: usize) -> Arc<Preprojective<F>> {
        Preprojective::new(DynkinType::A(n)).unwrap()
    }

    fn one() -> Matrix<F> {
        Matrix::identity(1)
    }

    #[test]
    fn relations() {
        let alg = a(2);
        assert!(Representation::simple(&alg, 0).check_relations());
        // αα* ≠ 0 on a (1,1) module
        let bad = Representation::unchecked(&alg, vec![1, 1], vec![one(), one()]).unwrap();
        assert!(!bad.check_relations());
        assert!(Representation::from_arrows(&alg, &[1, 1], &[("a1", one()), ("a1*", one())]).is_err());
        let a3 = a(3);
        for v in 0..3 {
            assert!(Representation::projective(&a3, v).check_relations());
        }
        assert!(Representation::unchecked(&a3, vec![1, 1], vec![]).is_err());
    }

    #[test]
    fn projective_dims() {
        let a3 = a(3);
        assert_eq!(Representation::projective(&a3, 1).dims(), &[1, 2, 1]);
        assert_eq!(Representation::projective(&a3, 0).dims(), &[1, 1, 1]);
        assert_eq!(Representation::projective(&a(2), 0).dims(), &[1, 1]);
        let total: usize = (0..3).map(|v| Representation::projective(&a3, v).total_dim()).sum();
        assert_eq!(total, a3.dim());
    }

    #[test]
    fn hom_examples() {
        let a3 = a(3);
        let p1 = Representation::projective(&a3, 0);
        let p2 = Representation::projective(&a3, 1);
        let s1 = Representation::simple(&a3, 0);
        assert_eq!(hom_dim(&s1, &p1), 0);
        assert_eq!(hom_dim(&p2, &p2), 2);
        let m = direct_sum(&p1, &[&p2, &s1]);
        for v in 0..3 {
            assert_eq!(hom_dim(&Representation::projective(&a3, v), &m), m.dims()[v]);
        }
        for b in hom_basis(&p2, &m).basis {
            assert!(is_module_map(&p2, &m, &b));
        }
    }

    #[test]
    fn sums() {
        let a3 = a(3);
        let s1 = Representation::simple(&a3, 0);
        let s2 = Representation::simple(&a3, 1);
        let p1 = Representation::projective(&a3, 0);
        assert_eq!(direct_sum(&s1, &[&s1, &s2]).dims(), &[1, 1, 0]);
        assert_eq!(direct_sum(&s1, &[]).dims(), &[0, 0, 0]);
        assert_eq!(direct_sum(&s1, &[&p1, &p1]).dims(), &[2, 2, 2]);
    }

    #[test]
    fn decompositions() {
        let a3 = a(3);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p1 = Representation::projective(&a3, 0);
        let s2 = Representation::simple(&a3, 1);
        let d = decompose(&direct_sum(&p1, &[&p1, &s2]), &mut rng).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|(_, m)| *m == 1));
        let d = decompose(&direct_sum(&p1, &[&p1, &p1]), &mut rng).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 2);
        assert!(is_isomorphic(&d[0].0, &p1));
        // 1/2: α1 acts by 1
        let e = Representation::from_arrows(&a3, &[1, 1, 0], &[("a1", one())]).unwrap();
        assert_eq!(hom_dim(&e, &e), 1);
        let d = decompose(&e, &mut rng).unwrap();
        assert_eq!(d.len(), 1);
        assert!(is_indecomposable(&e).unwrap());
    }

    #[test]
    fn isomorphisms() {
        let a3 = a(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s1 = Representation::simple(&a3, 0);
        let s2 = Representation::simple(&a3, 1);
        assert!(!is_isomorphic(&s1, &s2));
        let p2 = Representation::projective(&a3, 1);
        assert!(is_isomorphic(&p2, &p2));
        let g = random_base_change::<F, _>(p2.dims(), &mut rng);
        let q = base_change(&p2, &g);
        assert!(q.check_relations());
        assert!(is_isomorphic(&p2, &q));
        // the self-dual P_2 presented through the transpose convention
        assert!(is_isomorphic(&p2, &p2.dual()));
    }

    #[test]
    fn radical_top_syzygy() {
        let a3 = a(3);
        let p1 = Representation::projective(&a3, 0);
        let p2 = Representation::projective(&a3, 1);
        assert_eq!(radical(&p1).0.dims(), &[0, 1, 1]);
        let t = top(&p2);
        assert!(is_isomorphic(&t, &Representation::simple(&a3, 1)));
        assert!(syzygy(&p1).0.is_zero());
        assert_eq!(loewy_layers(&p2), vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]);
        let a2 = a(2);
        let omega = syzygy(&Representation::simple(&a2, 0)).0;
        assert!(is_isomorphic(&omega, &Representation::simple(&a2, 1)));
        let co = cosyzygy(&Representation::simple(&a2, 0));
        assert!(is_isomorphic(&co, &Representation::simple(&a2, 1)));
        assert!(is_projective(&p2));
        assert!(!is_projective(&t));
    }

    #[test]
    fn socles() {
        let a3 = a(3);
        // socle of P_1 = 1/2/3 is S_3
        assert_eq!(socle_dims(&Representation::projective(&a3, 0)), vec![0, 0, 1]);
        assert_eq!(socle_dims(&Representation::projective(&a3, 1)), vec![0, 1, 0]);
    }

    #[test]
    fn dual_is_involutive() {
        let a3 = a(3);
        let p1 = Representation::projective(&a3, 0);
        assert_eq!(p1.dual().dual(), p1);
        assert!(p1.dual().check_relations());
        // D(P_1) = 3/2/1 = P_3 (Nakayama permutation)
        assert!(is_isomorphic(&p1.dual(), &Representation::projective(&a3, 2)));
    }
}
