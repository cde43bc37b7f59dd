//! Signatures as dense real tensors over domain `[q]`, their matrix
//! flattenings, and the elementary tensor operations.
//!
//! Index convention: an n-ary signature stores its values with the *last*
//! input fastest-varying, so the linear index of `(x_1, ..., x_n)` is
//! `x_1·q^(n-1) + ... + x_n`. The flattening's reversed-column convention is
//! a view concern handled by [`Flattening`], never by [`Signature`] itself.

use crate::mat::Mat;
use crate::scalar::{Backend, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SignatureError {
    #[error("arity mismatch: expected split {m} + {d} = {n}")]
    SplitMismatch { m: usize, d: usize, n: usize },
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(usize, usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("values length {got} does not match q^arity = {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    BadMatrix { rows: usize, cols: usize, expected: usize },
    #[error("input index {0} out of range for arity {1}")]
    InputOutOfRange(usize, usize),
    #[error("contraction needs two distinct inputs")]
    EqualContractionIndices,
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("similar pair violation: {0}")]
    NotSimilar(String),
}

/// A real tensor of arity `n` over domain `[q]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SignatureData")]
pub struct Signature {
    q: usize,
    arity: usize,
    values: Vec<Scalar>,
}

/// Raw JSON form; `TryFrom` enforces `values.len() == q^arity`.
#[derive(Deserialize)]
struct SignatureData {
    q: usize,
    arity: usize,
    values: Vec<Scalar>,
}

impl TryFrom<SignatureData> for Signature {
    type Error = SignatureError;
    fn try_from(d: SignatureData) -> Result<Self, SignatureError> {
        if d.q == 0 {
            return Err(SignatureError::DomainMismatch(0, 1));
        }
        Signature::new(d.q, d.arity, d.values)
    }
}

impl Signature {
    pub fn new(q: usize, arity: usize, values: Vec<Scalar>) -> Result<Self, SignatureError> {
        assert!(q >= 1, "domain size must be positive");
        let expected = q.checked_pow(arity as u32).expect("q^n overflow");
        if values.len() != expected {
            return Err(SignatureError::BadLength { got: values.len(), expected });
        }
        Ok(Signature { q, arity, values })
    }

    pub fn from_fn(q: usize, arity: usize, mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        let mut values = Vec::with_capacity(q.pow(arity as u32));
        let mut idx = vec![0usize; arity];
        loop {
            values.push(f(&idx));
            if !increment(&mut idx, q) {
                break;
            }
        }
        Signature { q, arity, values }
    }

    pub fn zero(q: usize, arity: usize) -> Self {
        Signature::from_fn(q, arity, |_| Scalar::zero())
    }

    /// Arity-0 signature holding a single scalar.
    pub fn scalar(q: usize, value: Scalar) -> Self {
        Signature { q, arity: 0, values: vec![value] }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn linear_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.arity);
        idx.iter().fold(0, |acc, &x| {
            debug_assert!(x < self.q);
            acc * self.q + x
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.values[self.linear_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Scalar) {
        let i = self.linear_index(idx);
        self.values[i] = v;
    }

    /// Iterate all input tuples in linear-index order.
    pub fn tuples(&self) -> Tuples {
        Tuples::new(self.q, self.arity)
    }

    pub fn backend(&self) -> Backend {
        if self.is_exact() {
            Backend::Exact
        } else {
            Backend::Float
        }
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(Scalar::is_exact)
    }

    pub fn to_float(&self) -> Signature {
        Signature {
            q: self.q,
            arity: self.arity,
            values: self.values.iter().map(Scalar::to_float).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Signature) -> f64 {
        assert_eq!(self.values.len(), other.values.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs_f64())
            .fold(0.0, f64::max)
    }

    /// Entrywise equality: exact when both entries are exact, within `tol` otherwise.
    pub fn eq_within(&self, other: &Signature, tol: f64) -> bool {
        self.q == other.q
            && self.arity == other.arity
            && self.values.iter().zip(&other.values).all(|(a, b)| a.eq_within(b, tol))
    }

    pub fn add(&self, other: &Signature) -> Signature {
        assert_eq!((self.q, self.arity), (other.q, other.arity));
        Signature {
            q: self.q,
            arity: self.arity,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Signature {
        Signature {
            q: self.q,
            arity: self.arity,
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// The `q^m x q^d` signature matrix. Column tuples are reversed per the
    /// flattening convention; see [`Flattening`].
    pub fn flatten(&self, m: usize, d: usize) -> Result<Flattening, SignatureError> {
        if m + d != self.arity {
            return Err(SignatureError::SplitMismatch { m, d, n: self.arity });
        }
        let (q, qd) = (self.q, self.q.pow(d as u32));
        let mat = Mat::from_fn(self.q.pow(m as u32), qd, |row, col| {
            self.values[row * qd + reverse_digits(col, q, d)].clone()
        });
        Ok(Flattening { q: self.q, m, d, mat })
    }

    /// Column signature vector, `flatten(n, 0)`.
    pub fn vector(&self) -> Mat {
        self.flatten(self.arity, 0).expect("n+0 split").mat
    }

    /// True iff invariant under all input permutations; checks adjacent
    /// transpositions only. Exact entries compare exactly.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        for k in 0..self.arity.saturating_sub(1) {
            for idx in self.tuples() {
                if idx[k] < idx[k + 1] {
                    let mut swapped = idx.clone();
                    swapped.swap(k, k + 1);
                    if !self.get(&idx).eq_within(self.get(&swapped), tol) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Sum the diagonal `x_i = x_j` over the domain, producing an
    /// `(n-2)`-ary signature.
    pub fn contract(&self, i: usize, j: usize) -> Result<Signature, SignatureError> {
        let n = self.arity;
        if i >= n || j >= n {
            return Err(SignatureError::InputOutOfRange(i.max(j), n));
        }
        if i == j {
            return Err(SignatureError::EqualContractionIndices);
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let q = self.q;
        Ok(Signature::from_fn(q, n - 2, |rest| {
            let mut full = vec![0usize; n];
            let mut r = rest.iter();
            for (pos, slot) in full.iter_mut().enumerate() {
                if pos != lo && pos != hi {
                    *slot = *r.next().unwrap();
                }
            }
            let mut acc = Scalar::zero();
            for z in 0..q {
                full[lo] = z;
                full[hi] = z;
                acc += self.get(&full);
            }
            acc
        }))
    }

    pub fn tensor_product(&self, other: &Signature) -> Result<Signature, SignatureError> {
        if self.q != other.q {
            return Err(SignatureError::DomainMismatch(self.q, other.q));
        }
        let mut values = Vec::with_capacity(self.values.len() * other.values.len());
        for a in &self.values {
            for b in &other.values {
                values.push(a * b);
            }
        }
        Ok(Signature { q: self.q, arity: self.arity + other.arity, values })
    }

    /// Relabel input axes: the result `P` satisfies
    /// `P(x_0, ..., x_{n-1}) = F(x_{perm[0]}, ..., x_{perm[n-1]})`.
    pub fn permute_inputs(&self, perm: &[usize]) -> Result<Signature, SignatureError> {
        let n = self.arity;
        if perm.len() != n || {
            let mut seen = vec![false; n];
            perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        } {
            return Err(SignatureError::NotAPermutation(n));
        }
        Ok(Signature::from_fn(self.q, n, |idx| {
            let src: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            self.get(&src).clone()
        }))
    }
}

/// `Σ_x F_x G_x`.
pub fn inner_product(f: &Signature, g: &Signature) -> Result<Scalar, SignatureError> {
    if f.q != g.q {
        return Err(SignatureError::DomainMismatch(f.q, g.q));
    }
    if f.arity != g.arity {
        return Err(SignatureError::ArityMismatch(f.arity, g.arity));
    }
    let mut acc = Scalar::zero();
    for (a, b) in f.values.iter().zip(&g.values) {
        acc += &(a * b);
    }
    Ok(acc)
}

pub fn norm(f: &Signature) -> Scalar {
    inner_product(f, f).expect("self inner product").sqrt()
}

/// Apply `H` on every input axis: the result has signature vector `H^{⊗n} f`.
pub fn apply_transform(h: &Mat, f: &Signature) -> Result<Signature, SignatureError> {
    if !h.is_square() || h.rows() != f.q {
        return Err(SignatureError::BadMatrix {
            rows: h.rows(),
            cols: h.cols(),
            expected: f.q,
        });
    }
    let (q, n) = (f.q, f.arity);
    let mut values = f.values.clone();
    // One axis at a time; axis `ax` has stride q^(n-1-ax).
    for ax in 0..n {
        let stride = q.pow((n - 1 - ax) as u32);
        let block = stride * q;
        let mut next = vec![Scalar::zero(); values.len()];
        for base in (0..values.len()).step_by(block) {
            for off in 0..stride {
                for x in 0..q {
                    let mut acc = Scalar::zero();
                    for y in 0..q {
                        acc += &(&h[(x, y)] * &values[base + y * stride + off]);
                    }
                    next[base + x * stride + off] = acc;
                }
            }
        }
        values = next;
    }
    Ok(Signature { q, arity: n, values })
}

/// Right action: the result satisfies `(FA)^{0,n} = F^{0,n} A^{⊗n}`,
/// which is the per-axis action of `Aᵀ`.
pub fn apply_right(f: &Signature, a: &Mat) -> Result<Signature, SignatureError> {
    apply_transform(&a.transpose(), f)
}

/// A binary signature from its `q x q` matrix.
pub fn binary_from_mat(m: &Mat) -> Signature {
    assert!(m.is_square());
    Signature::from_fn(m.rows(), 2, |idx| m[(idx[0], idx[1])].clone())
}

/// The `q^m x q^d` matrix view of a signature, with the column tuple read in
/// reversed input order: entry `(x, y)` is `F(x_0,...,x_{m-1}, y_{d-1},...,y_0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Flattening {
    q: usize,
    m: usize,
    d: usize,
    mat: Mat,
}

impl Flattening {
    pub fn new(q: usize, m: usize, d: usize, mat: Mat) -> Self {
        assert_eq!(mat.rows(), q.pow(m as u32));
        assert_eq!(mat.cols(), q.pow(d as u32));
        Flattening { q, m, d, mat }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    /// Reconstruct the signature; inverse of [`Signature::flatten`].
    pub fn unflatten(&self) -> Signature {
        let (q, d) = (self.q, self.d);
        let qd = q.pow(d as u32);
        let mut values = Vec::with_capacity(self.mat.rows() * qd);
        for row in 0..self.mat.rows() {
            for tail in 0..qd {
                values.push(self.mat[(row, reverse_digits(tail, q, d))].clone());
            }
        }
        Signature { q, arity: self.m + self.d, values }
    }

    pub fn compose(&self, rhs: &Flattening) -> Flattening {
        assert_eq!(self.d, rhs.m, "composition split mismatch");
        Flattening::new(self.q, self.m, rhs.d, self.mat.matmul(&rhs.mat))
    }

    pub fn kron(&self, rhs: &Flattening) -> Flattening {
        Flattening::new(self.q, self.m + rhs.m, self.d + rhs.d, self.mat.kron(&rhs.mat))
    }

    pub fn transpose(&self) -> Flattening {
        Flattening::new(self.q, self.d, self.m, self.mat.transpose())
    }
}

/// Reverse the base-`q` digit string of `x`, read as `len` digits.
pub(crate) fn reverse_digits(x: usize, q: usize, len: usize) -> usize {
    let mut x = x;
    let mut out = 0;
    for _ in 0..len {
        out = out * q + x % q;
        x /= q;
    }
    out
}

pub(crate) fn increment(idx: &mut [usize], q: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < q {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Odometer over `[q]^n` in linear-index order.
pub struct Tuples {
    q: usize,
    next: Option<Vec<usize>>,
}

impl Tuples {
    pub fn new(q: usize, n: usize) -> Self {
        Tuples { q, next: Some(vec![0; n]) }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut following = cur.clone();
        if increment(&mut following, self.q) {
            self.next = Some(following);
        }
        Some(cur)
    }
}

/// Two signature lists over a common domain with an arity-preserving
/// correspondence (by position).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarPair {
    pub left: Vec<Signature>,
    pub right: Vec<Signature>,
}

impl SimilarPair {
    pub fn new(left: Vec<Signature>, right: Vec<Signature>) -> Result<Self, SignatureError> {
        if left.len() != right.len() {
            return Err(SignatureError::NotSimilar(format!(
                "sides have {} and {} signatures",
                left.len(),
                right.len()
            )));
        }
        if left.is_empty() {
            return Err(SignatureError::NotSimilar("empty signature sets".into()));
        }
        let q = left[0].q;
        for s in left.iter().chain(&right) {
            if s.q != q {
                return Err(SignatureError::NotSimilar(format!(
                    "domain sizes differ: {} vs {}",
                    q, s.q
                )));
            }
        }
        for (i, (f, g)) in left.iter().zip(&right).enumerate() {
            if f.arity != g.arity {
                return Err(SignatureError::NotSimilar(format!(
                    "corresponding signatures {} have arities {} and {}",
                    i, f.arity, g.arity
                )));
            }
        }
        Ok(SimilarPair { left, right })
    }

    pub fn q(&self) -> usize {
        self.left[0].q
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.left.iter().chain(&self.right).all(Signature::is_exact)
    }

    /// The identity pair (F, F).
    pub fn reflexive(set: Vec<Signature>) -> Result<Self, SignatureError> {
        SimilarPair::new(set.clone(), set)
    }
}
