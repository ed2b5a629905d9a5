//! Exact linear algebra over a prime field.
//!
//! Everything here is deterministic: elimination always takes the first
//! nonzero entry of a column as pivot, and bases are emitted in free-variable
//! order.

mod matrix;
mod poly;
mod system;

pub use matrix::{Echelon, Matrix};
pub use poly::{charpoly, coprime_factors, Poly};
pub use system::{layout, Block, BlockSystem};

use crate::field::Field;

/// Bases of the generalised eigenspaces of `e`, one per coprime factor of its
/// characteristic polynomial. The returned subspaces are `e`-invariant and
/// their direct sum is the whole space.
pub fn fitting_split<F: Field>(e: &Matrix<F>) -> Vec<Matrix<F>> {
    assert!(e.is_square(), "fitting_split needs a square matrix");
    let n = e.rows();
    if n == 0 {
        return Vec::new();
    }
    let factors = coprime_factors(&charpoly(e));
    if factors.len() <= 1 {
        return vec![Matrix::identity(n)];
    }
    factors.iter().map(|g| primary_component(e, g)).collect()
}

/// Kernel of `g(e)^n`, the generalised eigenspace belonging to the factor `g`.
pub fn primary_component<F: Field>(e: &Matrix<F>, g: &Poly<F>) -> Matrix<F> {
    let n = e.rows();
    g.eval_matrix(e).pow(n as u64).kernel_basis()
}

/// Projection onto a quotient `V / U` with a canonical complement.
///
/// The complement is spanned by the standard basis vectors at the non-pivot
/// positions of `rref(U^T)`, which makes the projection independent of the
/// particular basis chosen for `U`.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    /// `q x d`, kills `U`.
    pub projection: Matrix<F>,
    /// `d x q`, the complement; `projection * section = I`.
    pub section: Matrix<F>,
    /// Rows of `rref(U^T)`, a basis of `U`.
    pub sub_rows: Matrix<F>,
}

impl<F: Field> Quotient<F> {
    /// `sub` holds spanning vectors of `U` as columns (they need not be independent).
    pub fn new(ambient: usize, sub: &Matrix<F>) -> Self {
        assert_eq!(sub.rows(), ambient);
        let e = sub.transpose().echelon();
        let rank = e.rank();
        let mut is_pivot = vec![false; ambient];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..ambient).filter(|&j| !is_pivot[j]).collect();
        let q = free.len();
        let mut projection = Matrix::zeros(q, ambient);
        let mut section = Matrix::zeros(ambient, q);
        for (k, &c) in free.iter().enumerate() {
            projection[(k, c)] = F::one();
            section[(c, k)] = F::one();
        }
        for (row, &p) in e.pivots.iter().enumerate() {
            for (k, &c) in free.iter().enumerate() {
                projection[(k, p)] = -e.matrix[(row, c)];
            }
        }
        let sub_rows = e.matrix.block(0, 0, rank, ambient);
        Quotient { projection, section, sub_rows }
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_rows.rows()
    }
}

/// Coordinates of vectors with respect to a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct Coordinates<F> {
    rows: Vec<usize>,
    inverse: Matrix<F>,
    len: usize,
}

impl<F: Field> Coordinates<F> {
    /// `basis` holds the family as columns; it must have full column rank.
    pub fn new(basis: &Matrix<F>) -> Self {
        let e = basis.transpose().echelon();
        assert_eq!(e.rank(), basis.cols(), "coordinate basis must be independent");
        let rows = e.pivots.clone();
        let inverse = basis.select_rows(&rows).inverse().expect("pivot rows invertible");
        Coordinates { rows, inverse, len: basis.rows() }
    }

    /// Coordinates of `v`, assuming `v` lies in the span.
    pub fn of(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.len);
        let picked: Vec<F> = self.rows.iter().map(|&r| v[r]).collect();
        self.inverse.mul_vec(&picked)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}
