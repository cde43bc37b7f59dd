//! Signature-grid calculus for Holant problems.
//!
//! A *signature* is a real tensor of arity `n` over domain `[q]`, assigned to
//! the vertices of a multigraph; the *Holant value* of such a grid is the
//! full tensor-network contraction. This crate provides the calculus built on
//! that idea and the constructive algorithms around it:
//!
//! - [`signature`], [`block`]: tensors, flattenings with the reversed-column
//!   convention, orthogonal actions, direct sums and block algebra.
//! - [`gadget`], [`eval`]: gadgets with ordered dangling edges, the
//!   composition/tensor/transpose operations, quantum gadgets, and Holant
//!   evaluation via greedy tensor-network contraction.
//! - [`enumerate`], [`indist`], [`homs`]: desk-scale indistinguishability
//!   testers (exhaustive grid enumeration, bipartite and CSP variants, trace
//!   words) and graph-homomorphism counting.
//! - [`spectral`]: joint diagonalization of commuting symmetric matrices,
//!   SVD, Lagrange indicator interpolation, and signed-permutation matching.
//! - [`odeco`]: star products, binary collapses, and the constructive
//!   simultaneous orthogonal decomposition of symmetric signature sets.
//! - [`ortho`]: ortho-equivalence verification and search (exact base cases,
//!   binary solver, domain induction, Riemannian heuristic, gadget spans).
//!
//! Arithmetic is dual-backend ([`scalar::Scalar`]): exact rationals by
//! default — verdicts never depend on tolerances when the inputs are
//! rational — with `f64` for spectral work.
//!
//! See the `examples/` directory for one runnable walkthrough per major
//! capability, and the `holant` binary for the file-driven CLI.
//!
//! # Quick start
//!
//! Count the perfect matchings of the complete graph K4 by placing the
//! Hamming-weight-1 signature on each vertex and contracting the grid:
//!
//! ```
//! use holant::gadget::SignatureGrid;
//! use holant::standard;
//!
//! let pm = standard::perfect_matching(3);
//! let edges = vec![
//!     ((0, 0), (1, 0)), ((0, 1), (2, 0)), ((0, 2), (3, 0)),
//!     ((1, 1), (2, 1)), ((1, 2), (3, 1)), ((2, 2), (3, 2)),
//! ];
//! let grid = SignatureGrid::from_edges(2, vec![pm], vec![0; 4], edges, 0).unwrap();
//! assert_eq!(grid.holant().to_f64(), 3.0);
//! ```
//!
//! Holant values are invariant under orthogonal transformation of the
//! signature set, and the exhaustive tester certifies small instances:
//!
//! ```
//! use holant::enumerate::GridBudget;
//! use holant::indist::holant_indist;
//! use holant::signature::{apply_transform, SimilarPair};
//! use holant::standard;
//!
//! let f = standard::from_symmetric_weights(&[1, 2, 1]);
//! let h = holant::mat::cayley_orthogonal(&holant::Mat::from_rows_int(
//!     &[vec![0, 1], vec![-1, 0]],
//! ));
//! let pair = SimilarPair::new(vec![f.clone()], vec![apply_transform(&h, &f).unwrap()])
//!     .unwrap();
//! let verdict = holant_indist(&pair, &GridBudget::with_max_vertices(3));
//! assert!(!verdict.distinguished());
//! ```

pub mod block;
pub mod enumerate;
pub mod eval;
pub mod gadget;
pub mod homs;
pub mod indist;
pub mod json;
pub mod mat;
pub mod odeco;
pub mod ortho;
pub mod report;
pub mod scalar;
pub mod signature;
pub mod spectral;
pub mod standard;

pub use gadget::{Gadget, QuantumGadget, SignatureGrid, Terminal};
pub use mat::Mat;
pub use scalar::{Backend, Scalar};
pub use signature::{
    apply_right, apply_transform, inner_product, norm, Flattening, Signature, SimilarPair,
};
