use crate::field::Field;
use crate::linalg::Matrix;

/// Accumulates a dense linear system whose unknowns and equations are
/// matrix-shaped blocks, so that conditions such as `f_t X − Y f_s = 0`
/// can be written down block by block.
pub struct BlockSystem<F> {
    pub matrix: Matrix<F>,
}

/// Location and shape of a matrix-valued block inside a flattened vector.
#[derive(Clone, Copy, Debug)]
pub struct Block {
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Lays out blocks of the given shapes consecutively; returns blocks and total length.
pub fn layout(shapes: impl IntoIterator<Item = (usize, usize)>) -> (Vec<Block>, usize) {
    let mut off = 0;
    let blocks = shapes
        .into_iter()
        .map(|(rows, cols)| {
            let b = Block { offset: off, rows, cols };
            off += rows * cols;
            b
        })
        .collect();
    (blocks, off)
}

impl<F: Field> BlockSystem<F> {
    pub fn new(equations: usize, unknowns: usize) -> Self {
        BlockSystem { matrix: Matrix::zeros(equations, unknowns) }
    }

    /// Adds `sign · L · U · R` to equation block `eq`, where `U` is unknown
    /// block `unk`. `None` stands for an identity factor.
    pub fn add_term(&mut self, eq: Block, unk: Block, left: Option<&Matrix<F>>, right: Option<&Matrix<F>>, sign: F) {
        if eq.is_empty() || unk.is_empty() {
            return;
        }
        // (L U R)[i][j] = Σ_{k,l} L[i][k] U[k][l] R[l][j]
        for i in 0..eq.rows {
            for k in 0..unk.rows {
                let lik = match left {
                    Some(l) => l[(i, k)],
                    None => {
                        if i == k {
                            F::one()
                        } else {
                            F::zero()
                        }
                    }
                };
                if lik.is_zero() {
                    continue;
                }
                for l in 0..unk.cols {
                    for j in 0..eq.cols {
                        let rlj = match right {
                            Some(r) => r[(l, j)],
                            None => {
                                if l == j {
                                    F::one()
                                } else {
                                    F::zero()
                                }
                            }
                        };
                        if rlj.is_zero() {
                            continue;
                        }
                        let row = eq.offset + i * eq.cols + j;
                        let col = unk.offset + k * unk.cols + l;
                        self.matrix[(row, col)] += sign * lik * rlj;
                    }
                }
            }
        }
    }
}
