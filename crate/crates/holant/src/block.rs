//! Block algebra on signatures: domain partitions, subtensor restriction,
//! direct sums, and block submatrices of flattenings.

use crate::mat::Mat;
use crate::scalar::Scalar;
use crate::signature::{Signature, SignatureError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BlockError {
    #[error("partition blocks must be nonempty, disjoint, and cover 0..{0}")]
    BadPartition(usize),
    #[error("pattern length {got} does not match arity/split {expected}")]
    BadPattern { got: usize, expected: usize },
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// Which block of a two-block partition an axis is restricted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// A two-block partition `X ⊔ Y = [q]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    q: usize,
    x: Vec<usize>,
    y: Vec<usize>,
}

impl Partition {
    pub fn new(q: usize, x: Vec<usize>) -> Result<Self, BlockError> {
        let mut seen = vec![false; q];
        for &v in &x {
            if v >= q || std::mem::replace(&mut seen[v], true) {
                return Err(BlockError::BadPartition(q));
            }
        }
        let y: Vec<usize> = (0..q).filter(|&v| !seen[v]).collect();
        if x.is_empty() || y.is_empty() {
            return Err(BlockError::BadPartition(q));
        }
        Ok(Partition { q, x, y })
    }

    /// The partition of `[q_left + q_right]` into the two original domains of
    /// a direct sum.
    pub fn of_direct_sum(q_left: usize, q_right: usize) -> Self {
        Partition {
            q: q_left + q_right,
            x: (0..q_left).collect(),
            y: (q_left..q_left + q_right).collect(),
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn block(&self, side: Side) -> &[usize] {
        match side {
            Side::X => &self.x,
            Side::Y => &self.y,
        }
    }

    pub fn block_size(&self, side: Side) -> usize {
        self.block(side).len()
    }
}

/// `F ⊕ G`: same-arity signatures on disjoint domain copies; diagonal blocks
/// are `F` and `G`, all mixed blocks are zero.
pub fn direct_sum(f: &Signature, g: &Signature) -> Result<Signature, SignatureError> {
    if f.arity() != g.arity() {
        return Err(SignatureError::ArityMismatch(f.arity(), g.arity()));
    }
    let (qf, qg) = (f.q(), g.q());
    let q = qf + qg;
    Ok(Signature::from_fn(q, f.arity(), |idx| {
        if idx.iter().all(|&v| v < qf) {
            f.get(idx).clone()
        } else if idx.iter().all(|&v| v >= qf) {
            let shifted: Vec<usize> = idx.iter().map(|&v| v - qf).collect();
            g.get(&shifted).clone()
        } else {
            Scalar::zero()
        }
    }))
}

/// `H_X ⊕ H_Y` as a block-diagonal matrix.
pub fn mat_direct_sum(hx: &Mat, hy: &Mat) -> Mat {
    let n = hx.rows() + hy.rows();
    let m = hx.cols() + hy.cols();
    Mat::from_fn(n, m, |i, j| {
        if i < hx.rows() && j < hx.cols() {
            hx[(i, j)].clone()
        } else if i >= hx.rows() && j >= hx.cols() {
            hy[(i - hx.rows(), j - hx.cols())].clone()
        } else {
            Scalar::zero()
        }
    })
}

/// The orthogonal antidiagonal block matrix `[[0, Hᵀ], [H, 0]]` on the
/// doubled domain.
pub fn antidiagonal_block(h: &Mat) -> Mat {
    assert!(h.is_square());
    let q = h.rows();
    Mat::from_fn(2 * q, 2 * q, |i, j| {
        if i < q && j >= q {
            h[(j - q, i)].clone()
        } else if i >= q && j < q {
            h[(i - q, j)].clone()
        } else {
            Scalar::zero()
        }
    })
}

/// `H|_{R,C}`: the submatrix of a `q x q` matrix with rows in block `R` and
/// columns in block `C`.
pub fn mat_block(h: &Mat, part: &Partition, r: Side, c: Side) -> Mat {
    h.submatrix(part.block(r), part.block(c))
}

/// Restrict every axis to the same domain subset, relabelled to `0..|Z|`.
pub fn restrict(f: &Signature, subset: &[usize]) -> Result<Signature, BlockError> {
    if subset.is_empty() || subset.iter().any(|&v| v >= f.q()) {
        return Err(BlockError::BadPartition(f.q()));
    }
    Ok(Signature::from_fn(subset.len(), f.arity(), |idx| {
        let global: Vec<usize> = idx.iter().map(|&v| subset[v]).collect();
        f.get(&global).clone()
    }))
}

/// The per-axis block restriction `F|_r` as a raw tensor (axis `i` ranges
/// over the chosen block, so dimensions may differ per axis).
pub fn restrict_pattern(
    f: &Signature,
    part: &Partition,
    pattern: &[Side],
) -> Result<SubTensor, BlockError> {
    if pattern.len() != f.arity() {
        return Err(BlockError::BadPattern { got: pattern.len(), expected: f.arity() });
    }
    let dims: Vec<usize> = pattern.iter().map(|&s| part.block_size(s)).collect();
    let total: usize = dims.iter().product::<usize>().max(1);
    let mut values = Vec::with_capacity(total);
    let mut idx = vec![0usize; dims.len()];
    loop {
        let global: Vec<usize> = idx
            .iter()
            .zip(pattern)
            .map(|(&v, &s)| part.block(s)[v])
            .collect();
        values.push(f.get(&global).clone());
        if !increment_mixed(&mut idx, &dims) {
            break;
        }
    }
    Ok(SubTensor { dims, values })
}

/// A dense tensor with per-axis dimensions; the ragged-block counterpart of
/// [`Signature`].
#[derive(Debug, Clone, PartialEq)]
pub struct SubTensor {
    dims: Vec<usize>,
    values: Vec<Scalar>,
}

impl SubTensor {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// When all axes share a dimension this is an ordinary signature.
    pub fn into_signature(self) -> Option<Signature> {
        let q = self.dims.first().copied()?;
        if self.dims.iter().any(|&d| d != q) {
            return None;
        }
        Signature::new(q, self.dims.len(), self.values).ok()
    }

    /// `(m, d)` flattening with the usual reversed-column convention, in
    /// mixed radix: rows are the first `m` axes in order, columns the last
    /// `d` axes in reversed order.
    pub fn flatten(&self, m: usize, d: usize) -> Mat {
        assert_eq!(m + d, self.dims.len());
        let rows: usize = self.dims[..m].iter().product::<usize>().max(1);
        let cols: usize = self.dims[m..].iter().product::<usize>().max(1);
        let mut entries = vec![Scalar::zero(); rows * cols];
        let mut idx = vec![0usize; self.dims.len()];
        for v in &self.values {
            let mut row = 0;
            for (ax, &i) in idx.iter().enumerate().take(m) {
                row = row * self.dims[ax] + i;
            }
            // Column digits in reversed axis order: last axis most significant.
            let mut col = 0;
            for ax in (m..self.dims.len()).rev() {
                col = col * self.dims[ax] + idx[ax];
            }
            entries[row * cols + col] = v.clone();
            increment_mixed(&mut idx, &self.dims);
        }
        Mat::new(rows, cols, entries)
    }
}

/// `F^{m,d}|_{r,c} = (F|_{rc})^{m,d}`: the block submatrix of a flattening,
/// with `rc` the concatenated restriction pattern on the inputs.
pub fn block(
    f: &Signature,
    m: usize,
    d: usize,
    part: &Partition,
    r: &[Side],
    c: &[Side],
) -> Result<Mat, BlockError> {
    if m + d != f.arity() {
        return Err(SignatureError::SplitMismatch { m, d, n: f.arity() }.into());
    }
    if r.len() != m || c.len() != d {
        return Err(BlockError::BadPattern { got: r.len() + c.len(), expected: m + d });
    }
    let pattern: Vec<Side> = r.iter().chain(c).copied().collect();
    Ok(restrict_pattern(f, part, &pattern)?.flatten(m, d))
}

fn increment_mixed(idx: &mut [usize], dims: &[usize]) -> bool {
    for (slot, &dim) in idx.iter_mut().zip(dims).rev() {
        *slot += 1;
        if *slot < dim {
            return true;
        }
        *slot = 0;
    }
    false
}
