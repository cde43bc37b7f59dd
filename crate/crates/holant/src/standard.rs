//! The library of standard signatures: equalities, weighted equalities,
//! wires and braids, pins, subdomain indicators, and the perfect-matching
//! family.

use crate::scalar::Scalar;
use crate::signature::Signature;

/// `=_n` on domain `[q]`: 1 on constant tuples, 0 elsewhere. The arity-0
/// case is the scalar `q` (an unconstrained variable summed over the domain).
pub fn equality(n: usize, q: usize) -> Signature {
    if n == 0 {
        return Signature::scalar(q, Scalar::from_int(q as i64));
    }
    Signature::from_fn(q, n, |idx| {
        if idx.iter().all(|&x| x == idx[0]) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Weighted equality: value `weights[x]` on the constant tuple `(x,...,x)`.
/// The arity-0 case is the scalar `Σ_x weights[x]` (the closed loop value).
pub fn gen_equality(n: usize, weights: &[Scalar]) -> Signature {
    let q = weights.len();
    assert!(q >= 1, "weights must be nonempty");
    if n == 0 {
        let mut acc = Scalar::zero();
        for w in weights {
            acc += w;
        }
        return Signature::scalar(q, acc);
    }
    Signature::from_fn(q, n, |idx| {
        if idx.iter().all(|&x| x == idx[0]) {
            weights[idx[0]].clone()
        } else {
            Scalar::zero()
        }
    })
}

/// The wire signature: binary identity, `=_2`.
pub fn wire(q: usize) -> Signature {
    equality(2, q)
}

/// Braid signature for a permutation of `[n]`: the 2n-ary signature whose
/// `(n,n)` matrix routes left strand `i` to right strand `perm[i]`.
///
/// Inputs follow the gadget cyclic order, so the tuple is
/// `(x_0,...,x_{n-1}, y_{n-1},...,y_0)` and the value is 1 iff
/// `x_i = y_{perm[i]}` for every `i`.
pub fn braid(perm: &[usize], q: usize) -> Signature {
    let n = perm.len();
    {
        let mut seen = vec![false; n];
        for &p in perm {
            assert!(p < n && !std::mem::replace(&mut seen[p], true), "not a permutation");
        }
    }
    Signature::from_fn(q, 2 * n, |idx| {
        let x = &idx[..n];
        // idx[n..] holds (y_{n-1}, ..., y_0).
        let y_at = |j: usize| idx[n + (n - 1 - j)];
        if (0..n).all(|i| x[i] == y_at(perm[i])) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// The 4-ary swap signature `S`, the braid of the transposition (0 1).
pub fn swap(q: usize) -> Signature {
    braid(&[1, 0], q)
}

/// Unary pinning signature: the indicator of domain element `b`.
pub fn pin(b: usize, q: usize) -> Signature {
    assert!(b < q);
    Signature::from_fn(q, 1, |idx| if idx[0] == b { Scalar::one() } else { Scalar::zero() })
}

/// Binary diagonal indicator of a subdomain `Z ⊆ [q]`.
pub fn indicator(z: &[usize], q: usize) -> Signature {
    assert!(z.iter().all(|&x| x < q));
    Signature::from_fn(q, 2, |idx| {
        if idx[0] == idx[1] && z.contains(&idx[0]) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Boolean-domain signature that is 1 on strings of Hamming weight 1: placing
/// one on every vertex of a multigraph counts its perfect matchings.
pub fn perfect_matching(n: usize) -> Signature {
    Signature::from_fn(2, n, |idx| {
        if idx.iter().sum::<usize>() == 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Boolean-domain symmetric signature from its values on Hamming weights
/// `0..=n` (the bracket notation `[w_0, ..., w_n]`).
pub fn from_symmetric_weights(weights: &[i64]) -> Signature {
    let n = weights.len() - 1;
    Signature::from_fn(2, n, |idx| Scalar::from_int(weights[idx.iter().sum::<usize>()]))
}

/// Signature of a vertexless wire gadget: `matching` pairs up `[2k]` (as
/// input positions in cyclic order) and the value is 1 iff each pair agrees.
pub fn wire_signature(matching: &[(usize, usize)], q: usize) -> Signature {
    let n = 2 * matching.len();
    let mut seen = vec![false; n];
    for &(a, b) in matching {
        assert!(a < n && b < n && a != b, "bad matching pair");
        assert!(!std::mem::replace(&mut seen[a], true));
        assert!(!std::mem::replace(&mut seen[b], true));
    }
    Signature::from_fn(q, n, |idx| {
        if matching.iter().all(|&(a, b)| idx[a] == idx[b]) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// All perfect matchings of `[2k]`, in deterministic order. The signatures of
/// vertexless `2k`-ary gadgets are exactly the wire signatures of these.
pub fn perfect_matchings_of(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n.is_multiple_of(2));
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut cur = Vec::new();
    fn rec(used: &mut [bool], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some(a) = used.iter().position(|&u| !u) else {
            out.push(cur.clone());
            return;
        };
        used[a] = true;
        for b in a + 1..used.len() {
            if !used[b] {
                used[b] = true;
                cur.push((a, b));
                rec(used, cur, out);
                cur.pop();
                used[b] = false;
            }
        }
        used[a] = false;
    }
    rec(&mut used, &mut cur, &mut out);
    out
}
