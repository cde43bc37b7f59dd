//! Desk-scale indistinguishability testers: exhaustive Holant comparison over
//! enumerated grids, the bipartite variant, trace words for binary sets, and
//! the CSP variants (equalities adjoined).
//!
//! Verdicts are exact whenever the inputs are rational; float inputs fall
//! back to a relative 1e-8 comparison and the verdict is flagged numerical.
//! Budget exhaustion is reported as "no counterexample within budget", never
//! as equivalence.

use crate::enumerate::{visit_grids, GridBudget};
use crate::gadget::{Gadget, SignatureGrid, Terminal};
use crate::mat::Mat;
use crate::scalar::Scalar;
use crate::signature::{Signature, SimilarPair};
use crate::standard;
use serde::Serialize;
use std::ops::ControlFlow;
use thiserror::Error;

/// Relative tolerance for float-backed comparisons.
pub const NUMERICAL_TOL: f64 = 1e-8;

/// Largest equality arity adjoined by the CSP variants.
const MAX_EQ_ARITY: usize = 4;

#[derive(Debug, Error, PartialEq)]
pub enum IndistError {
    #[error("trace words need binary signatures; index {0} has arity {1}")]
    NonBinary(usize, usize),
    #[error("word letter {0} out of range for a set of {1}")]
    LetterOutOfRange(usize, usize),
    #[error("empty trace word")]
    EmptyWord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    NoCounterexampleWithinBudget,
    Distinguished,
}

/// A distinguishing grid with the two Holant values.
#[derive(Debug, Clone)]
pub struct Witness {
    pub grid: SignatureGrid,
    pub left_value: Scalar,
    pub right_value: Scalar,
}

#[derive(Debug, Clone)]
pub struct IndistVerdict {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    /// True when the comparison used the float tolerance rather than exact
    /// rational equality.
    pub numerical: bool,
}

impl IndistVerdict {
    pub fn distinguished(&self) -> bool {
        self.outcome == Outcome::Distinguished
    }

    fn no_counterexample(numerical: bool) -> Self {
        IndistVerdict {
            outcome: Outcome::NoCounterexampleWithinBudget,
            witness: None,
            numerical,
        }
    }

    fn found(witness: Witness, numerical: bool) -> Self {
        IndistVerdict { outcome: Outcome::Distinguished, witness: Some(witness), numerical }
    }
}

fn differ(a: &Scalar, b: &Scalar, exact: bool) -> bool {
    if exact {
        a != b
    } else {
        let scale = 1f64.max(a.abs_f64()).max(b.abs_f64());
        (a.to_f64() - b.to_f64()).abs() > NUMERICAL_TOL * scale
    }
}

/// Compare Holant values over every grid within budget; the first witness in
/// the deterministic enumeration order is reported.
pub fn holant_indist(pair: &SimilarPair, budget: &GridBudget) -> IndistVerdict {
    let exact = pair.is_exact();
    let found = visit_grids(&pair.left, budget, |grid| {
        let left_value = grid.holant();
        let right_grid = grid.replace_signatures(pair).expect("grid built over pair.left");
        let right_value = right_grid.holant();
        if differ(&left_value, &right_value, exact) {
            ControlFlow::Break(Witness { grid: grid.clone(), left_value, right_value })
        } else {
            ControlFlow::Continue(())
        }
    });
    match found {
        Some(w) => IndistVerdict::found(w, !exact),
        None => IndistVerdict::no_counterexample(!exact),
    }
}

/// Bipartite tester: signatures of the first pair on the left side, of the
/// second on the right, edges only across.
pub fn bipartite_indist(
    pair_left: &SimilarPair,
    pair_right: &SimilarPair,
    budget: &GridBudget,
) -> IndistVerdict {
    let mut left = pair_left.left.clone();
    left.extend(pair_right.left.iter().cloned());
    let mut right = pair_left.right.clone();
    right.extend(pair_right.right.iter().cloned());
    let combined = SimilarPair::new(left, right).expect("sides are similar");
    let l_idx: Vec<usize> = (0..pair_left.left.len()).collect();
    let r_idx: Vec<usize> =
        (pair_left.left.len()..combined.left.len()).collect();
    let budget = GridBudget { bipartite: Some((l_idx, r_idx)), ..budget.clone() };
    holant_indist(&combined, &budget)
}

/// One letter of a trace word: a signature index and a transpose flag.
pub type Letter = (usize, bool);

/// `tr(∏ matrices)`, reading each letter as the `(1,1)` matrix of a binary
/// signature, transposed when flagged.
pub fn trace_word(word: &[Letter], set: &[Signature]) -> Result<Scalar, IndistError> {
    if word.is_empty() {
        return Err(IndistError::EmptyWord);
    }
    let mats = binary_matrices(set)?;
    let q = set[0].q();
    let mut acc = Mat::identity(q);
    for &(i, t) in word {
        if i >= mats.len() {
            return Err(IndistError::LetterOutOfRange(i, mats.len()));
        }
        let m = if t { mats[i].transpose() } else { mats[i].clone() };
        acc = acc.matmul(&m);
    }
    Ok(acc.trace())
}

fn binary_matrices(set: &[Signature]) -> Result<Vec<Mat>, IndistError> {
    set.iter()
        .enumerate()
        .map(|(i, s)| {
            if s.arity() != 2 {
                Err(IndistError::NonBinary(i, s.arity()))
            } else {
                Ok(s.flatten(1, 1).expect("binary").into_mat())
            }
        })
        .collect()
}

/// The cycle grid whose Holant value is the trace of the word.
pub fn word_grid(word: &[Letter], set: &[Signature]) -> SignatureGrid {
    let q = set[0].q();
    let p = word.len();
    let vertices: Vec<usize> = word.iter().map(|&(i, _)| i).collect();
    // Untransposed letters use port 0 as the incoming (row) side; transposed
    // letters swap the roles.
    let in_port = |k: usize| -> usize { word[k].1 as usize };
    let out_port = |k: usize| -> usize { 1 - word[k].1 as usize };
    let pairs = (0..p)
        .map(|k| {
            (
                Terminal::Port { vertex: k, slot: out_port(k) },
                Terminal::Port { vertex: (k + 1) % p, slot: in_port((k + 1) % p) },
            )
        })
        .collect();
    let gadget = Gadget::new(q, set.to_vec(), vertices, pairs, 0, 0, 0)
        .expect("cycle grid is well-formed");
    SignatureGrid::new(gadget).expect("no dangling edges")
}

/// All words over the letter alphabet up to `max_len`, in deterministic order.
fn words(set_len: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let alphabet: Vec<Letter> =
        (0..set_len).flat_map(|i| [(i, false), (i, true)]).collect();
    let mut out: Vec<Vec<Letter>> = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Compare all trace words up to `max_len`; the witness is the cycle grid of
/// the first disagreeing word.
pub fn trace_indist(pair: &SimilarPair, max_len: usize) -> Result<IndistVerdict, IndistError> {
    binary_matrices(&pair.left)?;
    binary_matrices(&pair.right)?;
    let exact = pair.is_exact();
    for word in words(pair.left.len(), max_len) {
        if word.is_empty() {
            continue;
        }
        let l = trace_word(&word, &pair.left)?;
        let r = trace_word(&word, &pair.right)?;
        if differ(&l, &r, exact) {
            return Ok(IndistVerdict::found(
                Witness { grid: word_grid(&word, &pair.left), left_value: l, right_value: r },
                !exact,
            ));
        }
    }
    Ok(IndistVerdict::no_counterexample(!exact))
}

/// Which grids the CSP tester ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CspVariant {
    /// All (F ∪ EQ)-grids within budget.
    All,
    /// Equalities restricted to even arities.
    EvenDegree,
    /// Cycle-shaped grids only (trace words); binary signatures required.
    Cycles,
    /// Cycles and paths; binary signatures required.
    Paths,
}

/// CSP-indistinguishability: Holant comparison with equality signatures
/// adjoined to both sides (arities up to 4; even only for [`CspVariant::EvenDegree`]).
pub fn csp_indist(
    pair: &SimilarPair,
    budget: &GridBudget,
    variant: CspVariant,
) -> Result<IndistVerdict, IndistError> {
    let q = pair.q();
    match variant {
        CspVariant::All | CspVariant::EvenDegree => {
            let arities: Vec<usize> = match variant {
                CspVariant::All => (1..=MAX_EQ_ARITY).collect(),
                _ => (1..=MAX_EQ_ARITY).filter(|a| a % 2 == 0).collect(),
            };
            let mut left = pair.left.clone();
            let mut right = pair.right.clone();
            for a in arities {
                let eq = standard::equality(a, q);
                left.push(eq.clone());
                right.push(eq);
            }
            let augmented = SimilarPair::new(left, right).expect("similar by construction");
            Ok(holant_indist(&augmented, budget))
        }
        CspVariant::Cycles => trace_indist(pair, budget.max_vertices),
        CspVariant::Paths => {
            let cycles = trace_indist(pair, budget.max_vertices)?;
            if cycles.distinguished() {
                return Ok(cycles);
            }
            path_indist(pair, budget.max_vertices)
        }
    }
}

/// Compare `1ᵀ W 1` over all words of length < max_len (homomorphisms from
/// paths; the empty word gives the single-vertex path, value q).
fn path_indist(pair: &SimilarPair, max_len: usize) -> Result<IndistVerdict, IndistError> {
    let lmats = binary_matrices(&pair.left)?;
    let rmats = binary_matrices(&pair.right)?;
    let exact = pair.is_exact();
    let q = pair.q();
    let ones = Mat::from_fn(q, 1, |_, _| Scalar::one());
    let sum_all = |mats: &[Mat], word: &[Letter]| -> Scalar {
        let mut acc = Mat::identity(q);
        for &(i, t) in word {
            let m = if t { mats[i].transpose() } else { mats[i].clone() };
            acc = acc.matmul(&m);
        }
        ones.transpose().matmul(&acc).matmul(&ones)[(0, 0)].clone()
    };
    for word in words(pair.left.len(), max_len.saturating_sub(1)) {
        let l = sum_all(&lmats, &word);
        let r = sum_all(&rmats, &word);
        if differ(&l, &r, exact) {
            let grid = path_grid(&word, &pair.left);
            return Ok(IndistVerdict::found(
                Witness { grid, left_value: l, right_value: r },
                !exact,
            ));
        }
    }
    Ok(IndistVerdict::no_counterexample(!exact))
}

/// Path grid: unary all-ones endpoints around the word's matrix chain.
fn path_grid(word: &[Letter], set: &[Signature]) -> SignatureGrid {
    let q = set[0].q();
    let mut sigs = set.to_vec();
    sigs.push(standard::equality(1, q));
    let eq1 = sigs.len() - 1;
    let p = word.len();
    let mut vertices: Vec<usize> = vec![eq1];
    vertices.extend(word.iter().map(|&(i, _)| i));
    vertices.push(eq1);
    let in_port = |k: usize| -> usize { word[k].1 as usize };
    let out_port = |k: usize| -> usize { 1 - word[k].1 as usize };
    let mut pairs = Vec::new();
    if p == 0 {
        pairs.push((Terminal::Port { vertex: 0, slot: 0 }, Terminal::Port { vertex: 1, slot: 0 }));
    } else {
        pairs.push((
            Terminal::Port { vertex: 0, slot: 0 },
            Terminal::Port { vertex: 1, slot: in_port(0) },
        ));
        for k in 0..p - 1 {
            pairs.push((
                Terminal::Port { vertex: 1 + k, slot: out_port(k) },
                Terminal::Port { vertex: 2 + k, slot: in_port(k + 1) },
            ));
        }
        pairs.push((
            Terminal::Port { vertex: p, slot: out_port(p - 1) },
            Terminal::Port { vertex: p + 1, slot: 0 },
        ));
    }
    let gadget =
        Gadget::new(q, sigs, vertices, pairs, 0, 0, 0).expect("path grid is well-formed");
    SignatureGrid::new(gadget).expect("no dangling edges")
}
