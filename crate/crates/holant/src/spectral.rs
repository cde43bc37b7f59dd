//! Numerical kernels for the constructive algorithms: joint diagonalization
//! of commuting symmetric matrices by cyclic Jacobi rotations, SVD, Lagrange
//! interpolation of subdomain indicators, and signed-permutation matching of
//! weighted-equality families.

use crate::mat::{Mat, OrthogonalMap};
use crate::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("matrix {0} is not square or has mismatched dimension")]
    BadDimension(usize),
    #[error("matrix {index} is not symmetric (defect {defect:.3e} exceeds tol)")]
    NotSymmetric { index: usize, defect: f64 },
    #[error("matrices {i} and {j} do not commute (commutator norm {norm:.3e})")]
    NotCommuting { i: usize, j: usize, norm: f64 },
    #[error("input is not diagonal")]
    NotDiagonal,
    #[error("empty input")]
    Empty,
}

/// Result of a joint diagonalization: `Hᵀ Mᵢ H` is diagonal up to `residual`.
#[derive(Debug, Clone)]
pub struct JointDiagResult {
    pub h: OrthogonalMap,
    pub diagonals: Vec<Vec<f64>>,
    /// Max off-diagonal magnitude over all transformed matrices.
    pub residual: f64,
}

type FMat = Vec<Vec<f64>>;

fn fmat_identity(n: usize) -> FMat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as usize as f64).collect()).collect()
}

fn max_abs(m: &FMat) -> f64 {
    m.iter().flatten().fold(0.0f64, |a, &x| a.max(x.abs()))
}

fn off_diag_max(m: &FMat) -> f64 {
    let n = m.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.max(m[i][j].abs());
            }
        }
    }
    worst
}

/// Cyclic Jacobi sweeps choosing, for each plane (p, r), the rotation that
/// minimizes the total squared off-diagonal mass of all matrices at once.
/// Returns the final max off-diagonal magnitude.
fn jacobi_sweeps(mats: &mut [FMat], h: &mut FMat, max_sweeps: usize, eps: f64) -> f64 {
    let n = h.len();
    if n < 2 {
        return 0.0;
    }
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n - 1 {
            for r in p + 1..n {
                // With u = M[p][r] and v = (M[p][p] − M[r][r])/2, the
                // off-diagonal mass after rotating by θ is
                // (A+C)/2 + (A−C)/2·cos4θ − B·sin4θ, minimized at
                // 4θ = atan2(B, (C−A)/2).
                let (mut a, mut b, mut c) = (0.0f64, 0.0f64, 0.0f64);
                for m in mats.iter() {
                    let u = m[p][r];
                    let v = (m[p][p] - m[r][r]) / 2.0;
                    a += u * u;
                    b += u * v;
                    c += v * v;
                }
                if a <= eps * eps {
                    continue;
                }
                let theta = 0.25 * f64::atan2(b, (c - a) / 2.0);
                let (s, co) = theta.sin_cos();
                if s.abs() <= 1e-15 {
                    continue;
                }
                rotated = true;
                for m in mats.iter_mut() {
                    rotate_sym(m, p, r, co, s);
                }
                // H ← H·R so that HᵀMᵢH ends up diagonal.
                for row in h.iter_mut() {
                    let (xp, xr) = (row[p], row[r]);
                    row[p] = co * xp + s * xr;
                    row[r] = -s * xp + co * xr;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    mats.iter().map(off_diag_max).fold(0.0, f64::max)
}

/// `M ← Rᵀ M R` for the plane rotation `R = [c, −s; s, c]` in coords (p, r).
fn rotate_sym(m: &mut FMat, p: usize, r: usize, c: f64, s: f64) {
    let n = m.len();
    for i in 0..n {
        let (xp, xr) = (m[i][p], m[i][r]);
        m[i][p] = c * xp + s * xr;
        m[i][r] = -s * xp + c * xr;
    }
    for j in 0..n {
        let (xp, xr) = (m[p][j], m[r][j]);
        m[p][j] = c * xp + s * xr;
        m[r][j] = -s * xp + c * xr;
    }
}

/// Jointly diagonalize symmetric, pairwise-commuting matrices. Inputs are
/// checked (symmetry and commutators within `tol`, scaled by the entry
/// magnitudes); the returned residual reports what the rotations achieved.
///
/// Columns are ordered by the stacked diagonal tuples, descending, and signed
/// so each column's first entry above 1e-10 is positive, making repeated runs
/// bit-identical.
pub fn joint_diagonalize(mats: &[Mat], tol: f64) -> Result<JointDiagResult, SpectralError> {
    if mats.is_empty() {
        return Err(SpectralError::Empty);
    }
    let n = mats[0].rows();
    for (i, m) in mats.iter().enumerate() {
        if !m.is_square() || m.rows() != n {
            return Err(SpectralError::BadDimension(i));
        }
        let defect = m.sub(&m.transpose()).max_abs();
        if defect > tol * (1.0 + m.max_abs()) {
            return Err(SpectralError::NotSymmetric { index: i, defect });
        }
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let comm = mats[i].matmul(&mats[j]).sub(&mats[j].matmul(&mats[i]));
            let norm = comm.max_abs();
            if norm > tol * (1.0 + mats[i].max_abs() * mats[j].max_abs()) {
                return Err(SpectralError::NotCommuting { i, j, norm });
            }
        }
    }

    let scale = mats.iter().map(Mat::max_abs).fold(1.0, f64::max);
    let mut work: Vec<FMat> = mats.iter().map(Mat::to_f64_rows).collect();
    let mut h = fmat_identity(n);
    let eps = 1e-14 * scale;
    let mut residual = jacobi_sweeps(&mut work, &mut h, 100, eps);

    if residual > tol * scale {
        // Stalled: eigendecompose a seeded random combination and refine
        // from its eigenbasis.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut combo = vec![vec![0.0; n]; n];
        for m in mats {
            let c: f64 = rng.gen_range(0.5..1.5);
            let rows = m.to_f64_rows();
            for i in 0..n {
                for j in 0..n {
                    combo[i][j] += c * rows[i][j];
                }
            }
        }
        let mut h2 = fmat_identity(n);
        let mut combo_work = vec![combo];
        jacobi_sweeps(&mut combo_work, &mut h2, 100, eps);
        let mut work2: Vec<FMat> =
            mats.iter().map(|m| conjugate(&h2, &m.to_f64_rows())).collect();
        let mut h_acc = h2.clone();
        let r2 = jacobi_sweeps(&mut work2, &mut h_acc, 100, eps);
        if r2 < residual {
            work = work2;
            h = h_acc;
            residual = r2;
        }
    }

    // Deterministic column order and signs.
    let key = |col: usize, work: &[FMat]| -> Vec<f64> {
        work.iter().map(|m| m[col][col]).collect()
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        key(b, &work).partial_cmp(&key(a, &work)).unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut h_final = vec![vec![0.0; n]; n];
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut sign = 1.0;
        for row in h.iter() {
            if row[old_col].abs() > 1e-10 {
                sign = row[old_col].signum();
                break;
            }
        }
        for (row, h_row) in h.iter().enumerate() {
            h_final[row][new_col] = sign * h_row[old_col];
        }
    }
    let diagonals: Vec<Vec<f64>> =
        work.iter().map(|m| order.iter().map(|&c| m[c][c]).collect()).collect();
    let h = OrthogonalMap::new(Mat::from_rows_f64(&h_final), 1e-9)
        .expect("accumulated rotations stay orthogonal");
    Ok(JointDiagResult { h, diagonals, residual })
}

/// `Hᵀ M H` on raw float matrices.
fn conjugate(h: &FMat, m: &FMat) -> FMat {
    let n = h.len();
    let mut hm = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            hm[i][j] = (0..n).map(|k| h[k][i] * m[k][j]).sum();
        }
    }
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|k| hm[i][k] * h[k][j]).sum();
        }
    }
    out
}

/// Singular value decomposition in the form `M = Uᵀ D V` with `U, V`
/// orthogonal and `D` diagonal, nonnegative, sorted descending.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub u: OrthogonalMap,
    pub singular: Vec<f64>,
    pub v: OrthogonalMap,
}

impl SvdFactors {
    pub fn d_mat(&self) -> Mat {
        Mat::from_diagonal(
            &self.singular.iter().map(|&s| Scalar::from_f64(s)).collect::<Vec<_>>(),
        )
    }
}

pub fn svd_factor(m: &Mat) -> Result<SvdFactors, SpectralError> {
    if !m.is_square() {
        return Err(SpectralError::BadDimension(0));
    }
    let n = m.rows();
    let a = m.to_f64_rows();
    // Eigen-decompose MᵀM = W Λ Wᵀ; then M = P Σ Wᵀ with columns
    // p_i = M w_i / σ_i, completed to an orthonormal basis on the nullspace.
    let mut mtm = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            mtm[i][j] = (0..n).map(|k| a[k][i] * a[k][j]).sum();
        }
    }
    let mut w = fmat_identity(n);
    let mut work = vec![mtm];
    jacobi_sweeps(&mut work, &mut w, 100, 1e-16 * (1.0 + max_abs(&a)).powi(2));
    let lambda: Vec<f64> = (0..n).map(|i| work[0][i][i].max(0.0)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| lambda[y].partial_cmp(&lambda[x]).unwrap());
    let singular: Vec<f64> = order.iter().map(|&i| lambda[i].sqrt()).collect();

    let wcol = |i: usize| -> Vec<f64> { (0..n).map(|r| w[r][order[i]]).collect() };
    let cutoff = singular.first().copied().unwrap_or(0.0) * 1e-12;
    let mut p_cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (i, &sigma) in singular.iter().enumerate() {
        if sigma > cutoff && sigma > 0.0 {
            let wc = wcol(i);
            p_cols.push(
                (0..n)
                    .map(|r| (0..n).map(|k| a[r][k] * wc[k]).sum::<f64>() / sigma)
                    .collect(),
            );
        } else {
            p_cols.push(vec![0.0; n]);
        }
    }
    complete_orthonormal(&mut p_cols);

    let v_rows: Vec<Vec<f64>> = (0..n).map(&wcol).collect(); // V = Wᵀ
    let u_rows: Vec<Vec<f64>> = p_cols; // U = Pᵀ: row i of U is column i of P
    let orth = |rows: &[Vec<f64>]| {
        OrthogonalMap::new(Mat::from_rows_f64(rows), 1e-8)
            .map_err(|_| SpectralError::BadDimension(0))
    };
    Ok(SvdFactors { u: orth(&u_rows)?, singular, v: orth(&v_rows)? })
}

/// Replace near-zero columns with unit vectors orthogonal to the others.
fn complete_orthonormal(cols: &mut [Vec<f64>]) {
    let n = cols.len();
    for i in 0..n {
        let norm: f64 = cols[i].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.5 {
            continue;
        }
        for e in 0..n {
            let mut cand = vec![0.0; n];
            cand[e] = 1.0;
            for other in 0..n {
                if other == i {
                    continue;
                }
                let on: f64 = cols[other].iter().map(|x| x * x).sum();
                if on < 0.5 {
                    continue;
                }
                let dot: f64 = cand.iter().zip(&cols[other]).map(|(x, y)| x * y).sum();
                for (c, o) in cand.iter_mut().zip(&cols[other]) {
                    *c -= dot * o;
                }
            }
            let nn: f64 = cand.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nn > 1e-6 {
                for c in cand.iter_mut() {
                    *c /= nn;
                }
                cols[i] = cand;
                break;
            }
        }
    }
}

/// The family of subdomain indicators obtained from a diagonal matrix by
/// Lagrange interpolation: one indicator per distinct diagonal value (float
/// values are clustered within a relative gap of `cluster_tol`).
#[derive(Debug, Clone)]
pub struct IndicatorFamily {
    pub level_sets: Vec<Vec<usize>>,
    pub matrices: Vec<Mat>,
    /// Lagrange basis polynomial per level set (low-degree-first
    /// coefficients); evaluating it entrywise on the diagonal reproduces the
    /// indicator, exactly on the exact backend.
    pub polynomials: Vec<Vec<Scalar>>,
}

pub fn vandermonde_indicators(
    d: &Mat,
    cluster_tol: f64,
) -> Result<IndicatorFamily, SpectralError> {
    if !d.is_square() {
        return Err(SpectralError::BadDimension(0));
    }
    if !d.is_diagonal_within(1e-14 * (1.0 + d.max_abs())) {
        return Err(SpectralError::NotDiagonal);
    }
    let q = d.rows();
    let diag = d.diagonal();
    let exact = diag.iter().all(Scalar::is_exact);

    // Group indices by (clustered) value in first-occurrence order.
    let mut level_sets: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<Scalar> = Vec::new();
    let scale = 1.0 + diag.iter().map(Scalar::abs_f64).fold(0.0, f64::max);
    for x in 0..q {
        let matched = reps.iter().position(|r| {
            if exact {
                r == &diag[x]
            } else {
                (r.to_f64() - diag[x].to_f64()).abs() <= cluster_tol * scale
            }
        });
        match matched {
            Some(k) => level_sets[k].push(x),
            None => {
                reps.push(diag[x].clone());
                level_sets.push(vec![x]);
            }
        }
    }

    // Lagrange basis polynomial per representative value.
    let mut polynomials = Vec::with_capacity(reps.len());
    for a in 0..reps.len() {
        let mut coeffs = vec![Scalar::one()];
        for (b, rep) in reps.iter().enumerate() {
            if b == a {
                continue;
            }
            // coeffs ← coeffs · (t − r_b) / (r_a − r_b)
            let denom = &reps[a] - rep;
            let mut next = vec![Scalar::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += &(&(-rep) * c);
                next[i + 1] += c;
            }
            coeffs = next.into_iter().map(|c| &c / &denom).collect();
        }
        polynomials.push(coeffs);
    }

    // Evaluate each polynomial entrywise on the diagonal (Horner).
    let matrices: Vec<Mat> = polynomials
        .iter()
        .map(|p| {
            let values: Vec<Scalar> = diag
                .iter()
                .map(|t| {
                    let mut acc = Scalar::zero();
                    for c in p.iter().rev() {
                        acc = &(&acc * t) + c;
                    }
                    acc
                })
                .collect();
            Mat::from_diagonal(&values)
        })
        .collect();
    Ok(IndicatorFamily { level_sets, matrices, polynomials })
}

/// A signed permutation: basis vector `y` maps to `signs[perm[y]] · e_{perm[y]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPerm {
    pub fn matrix(&self) -> Mat {
        let q = self.perm.len();
        let mut m = Mat::zeros(q, q);
        for y in 0..q {
            let x = self.perm[y];
            m[(x, y)] = Scalar::from_int(self.signs[x] as i64);
        }
        m
    }
}

/// Find a signed permutation carrying one weighted-equality family to
/// another: for each member `k` of arity `n_k`,
/// `b[k][x] = signs[x]^{n_k} · a[k][perm⁻¹(x)]` within `tol` (a weight of an
/// n-ary weighted equality scales by `s^n` under a diagonal sign `s`).
/// Exhaustive over the signed-permutation group; fine for q <= 6.
pub fn signed_perm_match(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    arities: &[usize],
    tol: f64,
) -> Option<SignedPerm> {
    assert_eq!(a.len(), b.len());
    assert_eq!(a.len(), arities.len());
    let q = a.first().map_or(0, Vec::len);
    let mut perm: Vec<usize> = (0..q).collect();
    loop {
        'signs: for mask in 0u32..(1 << q) {
            let signs: Vec<i8> =
                (0..q).map(|x| if mask >> x & 1 == 1 { -1 } else { 1 }).collect();
            for (k, &n) in arities.iter().enumerate() {
                for y in 0..q {
                    let x = perm[y];
                    let s = if n % 2 == 0 { 1.0 } else { signs[x] as f64 };
                    if (b[k][x] - s * a[k][y]).abs() > tol {
                        continue 'signs;
                    }
                }
            }
            return Some(SignedPerm { perm: perm.clone(), signs });
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Random orthogonal matrix: Gram-Schmidt of a Gaussian matrix, with a random
/// sign on the first row so both components of O(q) occur.
pub fn random_orthogonal(q: usize, rng: &mut impl Rng) -> Mat {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..q)
            .map(|_| (0..q).map(|_| StandardNormal.sample(rng)).collect())
            .collect();
        let mut ok = true;
        for i in 0..q {
            for j in 0..i {
                let dot: f64 = cols[i].iter().zip(&cols[j]).map(|(x, y)| x * y).sum();
                let cj = cols[j].clone();
                for (x, y) in cols[i].iter_mut().zip(&cj) {
                    *x -= dot * y;
                }
            }
            let norm: f64 = cols[i].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for x in cols[i].iter_mut() {
                *x /= norm;
            }
        }
        if !ok {
            continue;
        }
        let flip = rng.gen_bool(0.5);
        return Mat::from_fn(q, q, |i, j| {
            let v = cols[j][i];
            Scalar::from_f64(if flip && i == 0 { -v } else { v })
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seeded(n: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(n)
    }

    fn sym_rand(q: usize, rng: &mut impl Rng) -> Mat {
        let mut m = Mat::zeros(q, q);
        for i in 0..q {
            for j in i..q {
                let v: f64 = rng.gen_range(-2.0..2.0);
                m[(i, j)] = Scalar::from_f64(v);
                m[(j, i)] = Scalar::from_f64(v);
            }
        }
        m
    }

    #[test]
    fn already_diagonal_is_fixed_point() {
        let d = Mat::from_rows_int(&[vec![3, 0], vec![0, 1]]);
        let res = joint_diagonalize(&[d], 1e-12).unwrap();
        assert_eq!(res.residual, 0.0);
        assert_eq!(res.diagonals[0], vec![3.0, 1.0]);
        let h = res.h.mat();
        assert!(h.orthogonality_defect() < 1e-12);
        for i in 0..2 {
            for j in 0..2 {
                let v = h[(i, j)].to_f64().abs();
                assert!(v < 1e-12 || (v - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn matrix_and_its_square_share_a_basis() {
        let mut rng = seeded(7);
        let m = sym_rand(4, &mut rng);
        let m2 = m.matmul(&m);
        let res = joint_diagonalize(&[m.clone(), m2.clone()], 1e-8).unwrap();
        assert!(res.residual <= 1e-9 * (1.0 + m2.max_abs()), "residual {}", res.residual);
        // Eigen oracle: the second diagonal is the square of the first.
        for i in 0..4 {
            let (d1, d2) = (res.diagonals[0][i], res.diagonals[1][i]);
            assert!((d1 * d1 - d2).abs() < 1e-8);
        }
    }

    #[test]
    fn identity_is_inert() {
        let mut rng = seeded(8);
        let m = sym_rand(3, &mut rng);
        let with_id = joint_diagonalize(&[Mat::identity(3), m.clone()], 1e-8).unwrap();
        let alone = joint_diagonalize(&[m], 1e-8).unwrap();
        assert_eq!(with_id.diagonals[1], alone.diagonals[0]);
        assert_eq!(with_id.h.mat(), alone.h.mat());
    }

    #[test]
    fn recovers_planted_commuting_family() {
        // Commuting matrices built as H diag Hᵀ from one random orthogonal H,
        // including repeated eigenvalues.
        let mut rng = seeded(42);
        let q = 4;
        let h = random_orthogonal(q, &mut rng);
        let spectra = [
            vec![2.0, 2.0, -1.0, 0.5],
            vec![1.0, 3.0, 3.0, 0.0],
            vec![-1.0, 2.0, 0.0, 0.0],
            vec![4.0, 4.0, 4.0, 1.0],
            vec![0.5, -0.5, 2.0, 2.0],
        ];
        let mats: Vec<Mat> = spectra
            .iter()
            .map(|sp| {
                let d = Mat::from_diagonal(
                    &sp.iter().map(|&x| Scalar::from_f64(x)).collect::<Vec<_>>(),
                );
                h.matmul(&d).matmul(&h.transpose())
            })
            .collect();
        let res = joint_diagonalize(&mats, 1e-7).unwrap();
        assert!(res.residual < 1e-8, "residual {}", res.residual);
        for (k, sp) in spectra.iter().enumerate() {
            let mut got = res.diagonals[k].clone();
            let mut want = sp.clone();
            got.sort_by(|a, b| a.partial_cmp(b).unwrap());
            want.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-8, "diagonal mismatch {g} vs {w}");
            }
        }
    }

    #[test]
    fn non_commuting_rejected() {
        let a = Mat::from_rows_int(&[vec![1, 0], vec![0, -1]]);
        let b = Mat::from_rows_int(&[vec![0, 1], vec![1, 0]]);
        assert!(matches!(
            joint_diagonalize(&[a, b], 1e-10),
            Err(SpectralError::NotCommuting { .. })
        ));
        let ns = Mat::from_rows_int(&[vec![0, 1], vec![0, 0]]);
        assert!(matches!(
            joint_diagonalize(&[ns], 1e-10),
            Err(SpectralError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn svd_reconstructs() {
        let mut rng = seeded(3);
        for trial in 0..10 {
            let m = Mat::from_fn(3, 3, |_, _| Scalar::from_f64(rng.gen_range(-2.0..2.0)));
            let f = svd_factor(&m).unwrap();
            let rebuilt = f.u.mat().transpose().matmul(&f.d_mat()).matmul(f.v.mat());
            let scale = 1.0f64.max(m.max_abs());
            assert!(
                rebuilt.max_abs_diff(&m) <= 1e-10 * scale,
                "trial {trial}: reconstruction error {}",
                rebuilt.max_abs_diff(&m)
            );
            assert!(f.u.mat().orthogonality_defect() <= 1e-10);
            assert!(f.v.mat().orthogonality_defect() <= 1e-10);
            for w in f.singular.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn svd_of_orthogonal_and_zero() {
        let mut rng = seeded(4);
        let h = random_orthogonal(3, &mut rng);
        let f = svd_factor(&h).unwrap();
        for s in &f.singular {
            assert!((s - 1.0).abs() < 1e-10);
        }
        let z = Mat::zeros(2, 2);
        let fz = svd_factor(&z).unwrap();
        assert_eq!(fz.singular, vec![0.0, 0.0]);
        assert!(fz.u.mat().orthogonality_defect() < 1e-12);
    }

    #[test]
    fn indicator_examples() {
        // diag(1,2,2) → {diag(1,0,0), diag(0,1,1)}.
        let d = Mat::from_diagonal(&[
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(2),
        ]);
        let fam = vandermonde_indicators(&d, 1e-6).unwrap();
        assert_eq!(fam.level_sets, vec![vec![0], vec![1, 2]]);
        assert_eq!(
            fam.matrices[0].diagonal(),
            vec![Scalar::one(), Scalar::zero(), Scalar::zero()]
        );
        assert_eq!(
            fam.matrices[1].diagonal(),
            vec![Scalar::zero(), Scalar::one(), Scalar::one()]
        );
        // p1(t) = (t−2)/(1−2) = 2 − t.
        assert_eq!(fam.polynomials[0], vec![Scalar::from_int(2), Scalar::from_int(-1)]);

        // cI → single indicator I.
        let c = Mat::from_diagonal(&[Scalar::from_int(5), Scalar::from_int(5)]);
        let fam = vandermonde_indicators(&c, 1e-6).unwrap();
        assert_eq!(fam.matrices.len(), 1);
        assert_eq!(fam.matrices[0], Mat::identity(2));

        // diag(0,1) → polynomials 1−t and t.
        let d01 = Mat::from_diagonal(&[Scalar::zero(), Scalar::one()]);
        let fam = vandermonde_indicators(&d01, 1e-6).unwrap();
        assert_eq!(fam.polynomials[0], vec![Scalar::one(), Scalar::from_int(-1)]);
        assert_eq!(fam.polynomials[1], vec![Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn indicators_sum_to_identity_and_idempotent() {
        let d = Mat::from_diagonal(&[
            Scalar::from_ratio(1, 3),
            Scalar::from_ratio(1, 3),
            Scalar::from_int(-2),
            Scalar::from_int(7),
        ]);
        let fam = vandermonde_indicators(&d, 1e-6).unwrap();
        let mut sum = Mat::zeros(4, 4);
        for m in &fam.matrices {
            assert_eq!(m.matmul(m), *m, "idempotent");
            sum = sum.add(m);
        }
        assert_eq!(sum, Mat::identity(4));
        for i in 0..fam.matrices.len() {
            for j in 0..fam.matrices.len() {
                if i != j {
                    assert_eq!(fam.matrices[i].matmul(&fam.matrices[j]), Mat::zeros(4, 4));
                }
            }
        }
    }

    #[test]
    fn signed_perm_examples() {
        let a = vec![vec![1.0, 2.0]];
        let m = signed_perm_match(&a, &a, &[2], 1e-9).unwrap();
        assert_eq!(m.perm, vec![0, 1]);
        // a=(1,2), b=(2,1), even arity → swap works with either sign.
        let b = vec![vec![2.0, 1.0]];
        let m = signed_perm_match(&a, &b, &[2], 1e-9).unwrap();
        assert_eq!(m.perm, vec![1, 0]);
        // Odd arity: b = −a needs the −1 signs.
        let neg = vec![vec![-1.0, -2.0]];
        let m = signed_perm_match(&a, &neg, &[3], 1e-9).unwrap();
        assert_eq!(m.perm, vec![0, 1]);
        assert_eq!(m.signs, vec![-1, -1]);
        // No match.
        assert!(signed_perm_match(&[vec![1.0, 0.0]], &[vec![2.0, 0.0]], &[2], 1e-9).is_none());
    }

    #[test]
    fn signed_perm_matrix_acts_on_gen_equalities() {
        use crate::signature::apply_transform;
        use crate::standard;
        let weights = [Scalar::from_f64(1.0), Scalar::from_f64(2.0)];
        let e3 = standard::gen_equality(3, &weights);
        let sp = SignedPerm { perm: vec![1, 0], signs: vec![1, -1] };
        let moved = apply_transform(&sp.matrix(), &e3).unwrap();
        // b_x = s_x^3 a_{perm⁻¹(x)}: b_0 = a_1 = 2, b_1 = −a_0 = −1.
        assert_eq!(moved.get(&[0, 0, 0]).to_f64(), 2.0);
        assert_eq!(moved.get(&[1, 1, 1]).to_f64(), -1.0);
    }

    #[test]
    fn random_orthogonal_is_orthogonal() {
        let mut rng = seeded(11);
        for q in 1..=5 {
            let h = random_orthogonal(q, &mut rng);
            assert!(h.orthogonality_defect() < 1e-10);
        }
    }
}
