use crate::field::Field;
use crate::linalg::Matrix;

/// A vertex-indexed family of linear maps `f_v : X_v → Y_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism<F> {
    pub blocks: Vec<Matrix<F>>,
}

impl<F: Field> Morphism<F> {
    pub fn new(blocks: Vec<Matrix<F>>) -> Self {
        Morphism { blocks }
    }

    pub fn zero(source: &[usize], target: &[usize]) -> Self {
        assert_eq!(source.len(), target.len());
        Morphism { blocks: source.iter().zip(target).map(|(&s, &t)| Matrix::zeros(t, s)).collect() }
    }

    pub fn identity(dims: &[usize]) -> Self {
        Morphism { blocks: dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    pub fn source_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::cols).collect()
    }

    pub fn target_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rows).collect()
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &Self) -> Self {
        Morphism { blocks: self.blocks.iter().zip(&first.blocks).map(|(a, b)| a * b).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: F) -> Self {
        Morphism { blocks: self.blocks.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn inverse(&self) -> Option<Self> {
        self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>().map(Morphism::new)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// Concatenation of the row-major blocks.
    pub fn flatten(&self) -> Vec<F> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn from_flat(source: &[usize], target: &[usize], data: &[F]) -> Self {
        let mut off = 0;
        let blocks = source
            .iter()
            .zip(target)
            .map(|(&s, &t)| {
                let m = Matrix::new(t, s, data[off..off + s * t].to_vec());
                off += s * t;
                m
            })
            .collect();
        assert_eq!(off, data.len());
        Morphism { blocks }
    }

    /// Block-diagonal sum `f ⊕ g`.
    pub fn direct_sum(parts: &[&Self]) -> Self {
        let n = parts.first().map_or(0, |p| p.blocks.len());
        Morphism {
            blocks: (0..n)
                .map(|v| Matrix::block_diag(&parts.iter().map(|p| &p.blocks[v]).collect::<Vec<_>>()))
                .collect(),
        }
    }

    /// Total-space matrix `⊕_v f_v`.
    pub fn total(&self) -> Matrix<F> {
        Matrix::block_diag(&self.blocks.iter().collect::<Vec<_>>())
    }
}
