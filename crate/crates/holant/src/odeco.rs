//! Simultaneous orthogonal decomposition of symmetric signature sets
//! ("odeco" sets): a single orthogonal map carrying every signature to a
//! weighted equality.
//!
//! The constructive route: replace odd-arity signatures by their self star
//! product, collapse everything to binary, check the collapses commute,
//! jointly diagonalize, then verify the original signatures against the
//! recovered weights. Failures are staged and reported as such.

use crate::mat::{Mat, OrthogonalMap};
use crate::scalar::Scalar;
use crate::signature::{apply_transform, Signature};
use crate::spectral::{joint_diagonalize, SpectralError};
use thiserror::Error;

/// Default relative residual tolerance for float inputs.
pub const DEFAULT_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum OdecoError {
    #[error("signature {0} is not symmetric")]
    NotSymmetric(usize),
    #[error("star product of signatures {i} and {j} is asymmetric (so the set is not odeco)")]
    AsymmetricStar { i: usize, j: usize },
    #[error("binary collapses of signatures {i} and {j} do not commute (norm {norm:.3e})")]
    NonCommutingCollapses { i: usize, j: usize, norm: f64 },
    #[error("signature {index} fails weighted-equality verification (residual {residual:.3e})")]
    ResidualTooLarge { index: usize, residual: f64 },
    #[error("arity must be at least 1 on both factors")]
    ArityTooSmall,
    #[error("collapse requires even arity, got {0}")]
    OddArity(usize),
    #[error("empty signature set")]
    Empty,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// A weighted equality: nonzero only on constant tuples, value `weights[x]`
/// at `(x,...,x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenEqSignature {
    pub arity: usize,
    pub weights: Vec<Scalar>,
}

impl GenEqSignature {
    pub fn new(arity: usize, weights: Vec<Scalar>) -> Self {
        GenEqSignature { arity, weights }
    }

    pub fn signature(&self) -> Signature {
        crate::standard::gen_equality(self.arity, &self.weights)
    }
}

/// Star product of two symmetric signatures: contract one input of each.
/// `(F1 ∗ F2)(x, y) = Σ_z F1(x, z) F2(y, z)`; symmetry of the factors makes
/// the choice of contracted inputs irrelevant.
pub fn star(f1: &Signature, f2: &Signature, tol: f64) -> Result<Signature, OdecoError> {
    if f1.arity() < 1 || f2.arity() < 1 {
        return Err(OdecoError::ArityTooSmall);
    }
    if !f1.is_symmetric(tol) {
        return Err(OdecoError::NotSymmetric(0));
    }
    if !f2.is_symmetric(tol) {
        return Err(OdecoError::NotSymmetric(1));
    }
    let (n1, n2, q) = (f1.arity(), f2.arity(), f1.q());
    Ok(Signature::from_fn(q, n1 + n2 - 2, |idx| {
        let (x, y) = idx.split_at(n1 - 1);
        let mut acc = Scalar::zero();
        let mut a = x.to_vec();
        a.push(0);
        let mut b = y.to_vec();
        b.push(0);
        for z in 0..q {
            a[n1 - 1] = z;
            b[n2 - 1] = z;
            acc += &(f1.get(&a) * f2.get(&b));
        }
        acc
    }))
}

/// Collapse an even-arity symmetric signature to a binary one by contracting
/// all but one pair of inputs (pairing choice is irrelevant by symmetry).
/// Binary signatures collapse to themselves.
pub fn collapse_to_binary(f: &Signature) -> Result<Signature, OdecoError> {
    if !f.arity().is_multiple_of(2) || f.arity() == 0 {
        return Err(OdecoError::OddArity(f.arity()));
    }
    let mut cur = f.clone();
    while cur.arity() > 2 {
        cur = cur.contract(2, 3).expect("arity >= 4");
    }
    Ok(cur)
}

/// The collapse as a `q x q` matrix.
pub fn collapse_matrix(f: &Signature) -> Result<Mat, OdecoError> {
    Ok(collapse_to_binary(f)?.flatten(1, 1).expect("binary").into_mat())
}

/// Check that every ordered star product (including self-products) is
/// symmetric — the combinatorial odeco criterion.
pub fn pairwise_star_symmetric(set: &[Signature], tol: f64) -> Result<bool, OdecoError> {
    for (i, f) in set.iter().enumerate() {
        if !f.is_symmetric(tol) {
            return Err(OdecoError::NotSymmetric(i));
        }
    }
    for f1 in set.iter() {
        for f2 in set.iter() {
            if f1.arity() < 1 || f2.arity() < 1 {
                continue;
            }
            if !star(f1, f2, tol)?.is_symmetric(tol) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Budget-bounded check that every connected gadget over the set has a
/// symmetric signature (a necessary condition for odeco, sufficient in the
/// limit of unbounded budgets).
pub fn connected_gadget_symmetric(
    set: &[Signature],
    budget: &crate::enumerate::GadgetBudget,
    tol: f64,
) -> Result<bool, OdecoError> {
    for (i, f) in set.iter().enumerate() {
        if !f.is_symmetric(tol) {
            return Err(OdecoError::NotSymmetric(i));
        }
    }
    let asym = crate::enumerate::visit_connected_gadgets(set, budget, |g| {
        if g.signature().is_symmetric(tol) {
            std::ops::ControlFlow::Continue(())
        } else {
            std::ops::ControlFlow::Break(())
        }
    });
    Ok(asym.is_none())
}

/// Weights iff the signature is a weighted equality: every entry off the
/// constant tuples is at most `tol` in magnitude (exactly zero when exact).
pub fn verify_geneq(f: &Signature, tol: f64) -> Option<Vec<Scalar>> {
    for idx in f.tuples() {
        if idx.iter().all(|&x| x == idx[0]) {
            continue;
        }
        let v = f.get(&idx);
        let ok = if v.is_exact() { v.is_zero() } else { v.abs_f64() <= tol };
        if !ok {
            return None;
        }
    }
    Some((0..f.q()).map(|x| f.get(&vec![x; f.arity()]).clone()).collect())
}

/// A verified simultaneous decomposition: `H F` is a weighted equality with
/// the given weights, per original signature, within `residual`.
#[derive(Debug, Clone)]
pub struct OdecoCertificate {
    pub h: OrthogonalMap,
    pub weights: Vec<Vec<f64>>,
    /// Max relative off-constant magnitude over all transformed signatures.
    pub residual: f64,
    /// Set when the input contained only unary (and zero) signatures, where
    /// the map merely aligns the first nonzero unary with the first axis.
    pub unaries_only: bool,
}

/// Constructive simultaneous decomposition. Stages: drop zeros, set aside
/// unaries, square odd arities via the star product, collapse to binary,
/// check commutation, jointly diagonalize, read weights off the constant
/// tuples, and verify every original signature (unaries included).
pub fn odeco_decompose(set: &[Signature], tol: f64) -> Result<OdecoCertificate, OdecoError> {
    if set.is_empty() {
        return Err(OdecoError::Empty);
    }
    let q = set[0].q();
    for (i, f) in set.iter().enumerate() {
        if !f.is_symmetric(tol) {
            return Err(OdecoError::NotSymmetric(i));
        }
    }
    // Working signatures: non-unary, nonzero; odd arities squared.
    let mut working: Vec<Signature> = Vec::new();
    for (i, f) in set.iter().enumerate() {
        if f.is_zero() || f.arity() <= 1 {
            continue;
        }
        if f.arity() % 2 == 1 {
            let squared = star(f, f, tol)?;
            if !squared.is_symmetric(tol) {
                return Err(OdecoError::AsymmetricStar { i, j: i });
            }
            working.push(squared);
        } else {
            working.push(f.clone());
        }
    }

    let h = if working.is_empty() {
        // Unaries (and zeros) only: align the first nonzero unary with e0.
        let u = set.iter().find(|f| f.arity() == 1 && !f.is_zero());
        match u {
            None => Mat::identity(q),
            Some(u) => householder_to_e0(u),
        }
    } else {
        let collapses: Vec<Mat> = working
            .iter()
            .map(collapse_matrix)
            .collect::<Result<_, _>>()?;
        // Commutation = symmetry of pairwise products (the spectral-theorem
        // route): check before diagonalizing so the failure stage is named.
        for i in 0..collapses.len() {
            for j in i + 1..collapses.len() {
                let prod = collapses[i].matmul(&collapses[j]);
                let defect = prod.sub(&prod.transpose()).max_abs();
                let scale = 1.0 + collapses[i].max_abs() * collapses[j].max_abs();
                if defect > tol * scale {
                    return Err(OdecoError::NonCommutingCollapses { i, j, norm: defect });
                }
            }
        }
        let jd = joint_diagonalize(&collapses, tol)?;
        // joint_diagonalize makes Hᵀ M H diagonal; the signature action needs
        // the transpose.
        jd.h.mat().transpose()
    };
    let unaries_only = working.is_empty();

    // Weights from the constant tuples of the transformed originals, then
    // full verification (odd arities and unaries included).
    let mut weights = Vec::with_capacity(set.len());
    let mut residual = 0.0f64;
    for (index, f) in set.iter().enumerate() {
        let hf = apply_transform(&h, f).expect("dimension checked");
        weights.push((0..q).map(|x| hf.get(&vec![x; f.arity()]).to_f64()).collect());
        let scale = 1.0f64.max(f.max_abs());
        let mut off = 0.0f64;
        for idx in hf.tuples() {
            if !idx.iter().all(|&x| x == idx[0]) {
                off = off.max(hf.get(&idx).abs_f64());
            }
        }
        let rel = off / scale;
        if rel > tol {
            return Err(OdecoError::ResidualTooLarge { index, residual: rel });
        }
        residual = residual.max(rel);
    }
    let h = OrthogonalMap::new(h, (tol * 100.0).max(1e-9))
        .expect("transpose of a verified orthogonal map");
    Ok(OdecoCertificate { h, weights, residual, unaries_only })
}

/// Orthogonal reflection sending `u` to `‖u‖ e0`.
fn householder_to_e0(u: &Signature) -> Mat {
    let q = u.q();
    let v: Vec<f64> = u.values().iter().map(Scalar::to_f64).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut w = v.clone();
    w[0] -= norm;
    let ww: f64 = w.iter().map(|x| x * x).sum();
    if ww < 1e-30 {
        return Mat::identity(q);
    }
    Mat::from_fn(q, q, |i, j| {
        let id = (i == j) as u8 as f64;
        Scalar::from_f64(id - 2.0 * w[i] * w[j] / ww)
    })
}
