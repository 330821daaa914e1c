use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::matrix::{conjugate, Matrix};
use crate::upoly::Polynomial;

/// One diagonal block of a structured matrix description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    /// λ on the diagonal, ones on the superdiagonal; size 1, 2 or 3.
    Jordan {
        lambda: Scalar,
        size: usize,
    },
    Companion(Polynomial),
    Raw(Matrix),
}

impl Block {
    pub fn size(&self) -> usize {
        match self {
            Block::Jordan { size, .. } => *size,
            Block::Companion(p) => p.deg(),
            Block::Raw(m) => m.rows(),
        }
    }

    pub fn matrix(&self) -> Matrix {
        match self {
            Block::Jordan { lambda, size } => {
                let field = lambda.field();
                Matrix::from_fn(field, *size, *size, |i, j| {
                    if i == j {
                        lambda.clone()
                    } else if j == i + 1 {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
            }
            Block::Companion(p) => Matrix::companion(p),
            Block::Raw(m) => m.clone(),
        }
    }

    fn field(&self) -> Field {
        match self {
            Block::Jordan { lambda, .. } => lambda.field(),
            Block::Companion(p) => p.field(),
            Block::Raw(m) => m.field(),
        }
    }
}

/// A block-diagonal matrix, optionally conjugated: `A = P·diag(blocks)·P⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    field: Field,
    blocks: Vec<Block>,
    conjugator: Option<Matrix>,
}

impl BlockSpec {
    pub fn new(field: Field, blocks: Vec<Block>, conjugator: Option<Matrix>) -> Result<Self> {
        for (i, b) in blocks.iter().enumerate() {
            if b.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field,
                    found: b.field(),
                });
            }
            match b {
                Block::Jordan { size, .. } if !(1..=3).contains(size) => {
                    return Err(Error::InvalidBlockSpec(format!(
                        "block {i}: Jordan block size {size} not in 1..=3"
                    )))
                }
                Block::Companion(p) if !p.is_monic() || p.deg() == 0 => {
                    return Err(Error::InvalidBlockSpec(format!(
                        "block {i}: companion polynomial must be monic of degree >= 1"
                    )))
                }
                Block::Raw(m) if !m.is_square() || m.rows() == 0 => {
                    return Err(Error::InvalidBlockSpec(format!(
                        "block {i}: raw block must be square and nonempty"
                    )))
                }
                _ => {}
            }
        }
        let n: usize = blocks.iter().map(Block::size).sum();
        if n == 0 {
            return Err(Error::InvalidBlockSpec("no blocks".into()));
        }
        if let Some(p) = &conjugator {
            if p.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field,
                    found: p.field(),
                });
            }
            if p.rows() != n || p.cols() != n {
                return Err(Error::InvalidBlockSpec(format!(
                    "conjugator is {}x{}, blocks total {n}",
                    p.rows(),
                    p.cols()
                )));
            }
            p.inverse()
                .map_err(|_| Error::InvalidBlockSpec("conjugator is singular".into()))?;
        }
        Ok(BlockSpec {
            field,
            blocks,
            conjugator,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn conjugator(&self) -> Option<&Matrix> {
        self.conjugator.as_ref()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Block::size).sum()
    }

    /// Starting row/column of each block.
    pub fn offsets(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |off, b| {
                let start = *off;
                *off += b.size();
                Some(start)
            })
            .collect()
    }

    pub fn block_diagonal(&self) -> Matrix {
        let blocks: Vec<Matrix> = self.blocks.iter().map(Block::matrix).collect();
        Matrix::block_diagonal(self.field, &blocks)
    }

    /// Conjugates an arbitrary matrix of the right size by the spec's
    /// conjugator (identity when absent).
    pub fn conjugate(&self, m: &Matrix) -> Matrix {
        match &self.conjugator {
            Some(p) => conjugate(p, m).expect("validated conjugator"),
            None => m.clone(),
        }
    }

    pub fn assemble(&self) -> Matrix {
        self.conjugate(&self.block_diagonal())
    }
}
