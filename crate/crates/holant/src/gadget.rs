//! Gadgets and signature grids: multigraphs with signature-labelled vertices,
//! ordered dangling edges, and vertexless loops, together with the gadget
//! operations (composition, tensoring, transposition, pivoting) and quantum
//! gadgets.
//!
//! Dangling edges follow the counterclockwise convention: cyclic position `p`
//! is left rank `p` for `p < m`, and right rank `m + d - 1 - p` otherwise
//! (right ranks count from the bottom, so rank 0 sits at the top right).

use crate::eval;
use crate::scalar::Scalar;
use crate::signature::{Flattening, Signature, SimilarPair};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GadgetError {
    #[error("signature table entry {0} has wrong domain size")]
    TableDomainMismatch(usize),
    #[error("vertex {0} references missing signature id {1}")]
    MissingSignature(usize, usize),
    #[error("terminal {0:?} is used {1} times (each must be used exactly once)")]
    TerminalUseCount(Terminal, usize),
    #[error("dangling ranks must be 0..m and 0..d with no gaps")]
    DanglingRanks,
    #[error("compose requires d(K) = m(L), got {0} and {1}")]
    ComposeMismatch(usize, usize),
    #[error("tensor/compose requires equal domain sizes, got {0} and {1}")]
    DomainMismatch(usize, usize),
    #[error("pivot count {0} exceeds the {1} dangling edges on the source side")]
    PivotOutOfRange(i64, usize),
    #[error("assigned signature {0} not found in the replacement pair")]
    UnmappedSignature(usize),
    #[error("signature grids must have no dangling edges, got ({0},{1})")]
    NotAGrid(usize, usize),
    #[error("inner product needs equal dangling counts, got {0} and {1}")]
    InnerArityMismatch(usize, usize),
    #[error("quantum gadget terms must share (m,d): {0:?} vs {1:?}")]
    QuantumShapeMismatch((usize, usize), (usize, usize)),
    #[error("quantum gadget needs at least one term")]
    EmptyQuantum,
}

/// One end of an edge: a vertex port, or a dangling end at a left/right rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Terminal {
    Port { vertex: usize, slot: usize },
    Left(usize),
    Right(usize),
}

/// An `F`-gadget: a grid fragment with `m` left and `d` right dangling edges.
///
/// Edges are stored as a perfect matching on terminals; vertexless loops are
/// a bare counter (they only contribute a global factor `q` each).
#[derive(Debug, Clone, PartialEq)]
pub struct Gadget {
    q: usize,
    sigs: Vec<Signature>,
    vertices: Vec<usize>,
    pairs: Vec<(Terminal, Terminal)>,
    loops: usize,
    m: usize,
    d: usize,
}

impl Gadget {
    pub fn new(
        q: usize,
        sigs: Vec<Signature>,
        vertices: Vec<usize>,
        pairs: Vec<(Terminal, Terminal)>,
        loops: usize,
        m: usize,
        d: usize,
    ) -> Result<Self, GadgetError> {
        for (i, s) in sigs.iter().enumerate() {
            if s.q() != q {
                return Err(GadgetError::TableDomainMismatch(i));
            }
        }
        for (v, &sid) in vertices.iter().enumerate() {
            if sid >= sigs.len() {
                return Err(GadgetError::MissingSignature(v, sid));
            }
        }
        let g = Gadget { q, sigs, vertices, pairs, loops, m, d };
        g.check_terminals()?;
        Ok(g)
    }

    fn check_terminals(&self) -> Result<(), GadgetError> {
        use std::collections::HashMap;
        let mut counts: HashMap<Terminal, usize> = HashMap::new();
        for &(a, b) in &self.pairs {
            *counts.entry(a).or_default() += 1;
            *counts.entry(b).or_default() += 1;
        }
        let mut expected: Vec<Terminal> = Vec::new();
        for (v, &sid) in self.vertices.iter().enumerate() {
            for slot in 0..self.sigs[sid].arity() {
                expected.push(Terminal::Port { vertex: v, slot });
            }
        }
        expected.extend((0..self.m).map(Terminal::Left));
        expected.extend((0..self.d).map(Terminal::Right));
        for t in &expected {
            match counts.remove(t) {
                Some(1) => {}
                other => return Err(GadgetError::TerminalUseCount(*t, other.unwrap_or(0))),
            }
        }
        if let Some((&t, &c)) = counts.iter().next() {
            return Err(GadgetError::TerminalUseCount(t, c));
        }
        Ok(())
    }

    /// Gadget of a single vertex whose ports meet the dangling edges in input
    /// order, so that its matrix is exactly `F^{m,d}`.
    pub fn single_vertex(sig: Signature, m: usize, d: usize) -> Result<Self, GadgetError> {
        assert_eq!(m + d, sig.arity(), "split must match arity");
        let mut pairs = Vec::new();
        for i in 0..m {
            pairs.push((Terminal::Port { vertex: 0, slot: i }, Terminal::Left(i)));
        }
        for k in 0..d {
            pairs.push((Terminal::Port { vertex: 0, slot: m + k }, Terminal::Right(d - 1 - k)));
        }
        Gadget::new(sig.q(), vec![sig], vec![0], pairs, 0, m, d)
    }

    /// A single wire: one left and one right dangling end, no vertices.
    pub fn wire(q: usize) -> Self {
        Gadget::new(q, vec![], vec![], vec![(Terminal::Left(0), Terminal::Right(0))], 0, 1, 1)
            .expect("wire is well-formed")
    }

    /// Vertexless gadget from a matching on cyclic dangling positions
    /// `0..m+d`.
    pub fn vertexless(
        q: usize,
        matching: &[(usize, usize)],
        m: usize,
        d: usize,
    ) -> Result<Self, GadgetError> {
        let pos = |p: usize| -> Terminal {
            if p < m {
                Terminal::Left(p)
            } else {
                Terminal::Right(m + d - 1 - p)
            }
        };
        let pairs = matching.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
        Gadget::new(q, vec![], vec![], pairs, 0, m, d)
    }

    /// Wire-only braid gadget routing left strand `i` to right strand
    /// `perm[i]`; its matrix is the `(n,n)` flattening of the braid signature.
    pub fn braid(perm: &[usize], q: usize) -> Self {
        let n = perm.len();
        let pairs = (0..n).map(|i| (Terminal::Left(i), Terminal::Right(perm[i]))).collect();
        Gadget::new(q, vec![], vec![], pairs, 0, n, n).expect("braid is well-formed")
    }

    /// A grid with the given number of vertexless loops and nothing else.
    pub fn loops_only(q: usize, loops: usize) -> Self {
        Gadget { q, sigs: vec![], vertices: vec![], pairs: vec![], loops, m: 0, d: 0 }
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

    pub fn arity(&self) -> usize {
        self.m + self.d
    }

    pub fn sig_table(&self) -> &[Signature] {
        &self.sigs
    }

    pub fn vertex_signatures(&self) -> impl Iterator<Item = &Signature> {
        self.vertices.iter().map(|&sid| &self.sigs[sid])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn pairs(&self) -> &[(Terminal, Terminal)] {
        &self.pairs
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn is_exact(&self) -> bool {
        self.sigs.iter().all(Signature::is_exact)
    }

    /// Terminal at cyclic dangling position `p`.
    pub fn dangling_at(&self, p: usize) -> Terminal {
        assert!(p < self.arity());
        if p < self.m {
            Terminal::Left(p)
        } else {
            Terminal::Right(self.m + self.d - 1 - p)
        }
    }

    /// The signature matrix `M(K)`: dangling edges clamp the row/column
    /// indices and internal edge assignments are summed out.
    pub fn matrix(&self) -> Flattening {
        eval::gadget_matrix(self)
    }

    /// The unflattened signature of the gadget.
    pub fn signature(&self) -> Signature {
        self.matrix().unflatten()
    }

    /// `K ∘ L`: connect right dangling ends of `K` to left dangling ends of
    /// `L`; matrices multiply.
    pub fn compose(&self, rhs: &Gadget) -> Result<Gadget, GadgetError> {
        if self.q != rhs.q {
            return Err(GadgetError::DomainMismatch(self.q, rhs.q));
        }
        if self.d != rhs.m {
            return Err(GadgetError::ComposeMismatch(self.d, rhs.m));
        }
        let (merged_sigs, self_map, rhs_map) = merge_tables(&self.sigs, &rhs.sigs);
        let voff = self.vertices.len();
        let mut vertices: Vec<usize> = self.vertices.iter().map(|&s| self_map[s]).collect();
        vertices.extend(rhs.vertices.iter().map(|&s| rhs_map[s]));

        // Tag terminals by side, glue junctions, then resolve paths/cycles.
        let tag_l = |t: Terminal| Tagged::A(t);
        let tag_r = |t: Terminal| Tagged::B(t);
        let mut edges: Vec<(Tagged, Tagged)> = Vec::new();
        for &(a, b) in &self.pairs {
            edges.push((tag_l(a), tag_l(b)));
        }
        for &(a, b) in &rhs.pairs {
            edges.push((tag_r(a), tag_r(b)));
        }
        for i in 0..self.d {
            edges.push((tag_l(Terminal::Right(i)), tag_r(Terminal::Left(i))));
        }
        let glued: Vec<Tagged> = (0..self.d)
            .flat_map(|i| [tag_l(Terminal::Right(i)), tag_r(Terminal::Left(i))])
            .collect();
        let (paths, cycles) = resolve_glue(&edges, &glued);

        let relabel = |t: Tagged| -> Terminal {
            match t {
                Tagged::A(Terminal::Port { vertex, slot }) => Terminal::Port { vertex, slot },
                Tagged::A(t) => t, // Left of K stays
                Tagged::B(Terminal::Port { vertex, slot }) => {
                    Terminal::Port { vertex: vertex + voff, slot }
                }
                Tagged::B(t) => t, // Right of L stays
            }
        };
        let pairs = paths.into_iter().map(|(a, b)| (relabel(a), relabel(b))).collect();
        Gadget::new(
            self.q,
            merged_sigs,
            vertices,
            pairs,
            self.loops + rhs.loops + cycles,
            self.m,
            rhs.d,
        )
    }

    /// `K ⊗ L`: disjoint union with `K` above `L`; matrices Kronecker.
    pub fn tensor(&self, rhs: &Gadget) -> Result<Gadget, GadgetError> {
        if self.q != rhs.q {
            return Err(GadgetError::DomainMismatch(self.q, rhs.q));
        }
        let (merged_sigs, self_map, rhs_map) = merge_tables(&self.sigs, &rhs.sigs);
        let voff = self.vertices.len();
        let mut vertices: Vec<usize> = self.vertices.iter().map(|&s| self_map[s]).collect();
        vertices.extend(rhs.vertices.iter().map(|&s| rhs_map[s]));
        let map_self = |t: Terminal| t;
        let map_rhs = |t: Terminal| match t {
            Terminal::Port { vertex, slot } => Terminal::Port { vertex: vertex + voff, slot },
            Terminal::Left(i) => Terminal::Left(self.m + i),
            Terminal::Right(j) => Terminal::Right(self.d + j),
        };
        let mut pairs: Vec<(Terminal, Terminal)> =
            self.pairs.iter().map(|&(a, b)| (map_self(a), map_self(b))).collect();
        pairs.extend(rhs.pairs.iter().map(|&(a, b)| (map_rhs(a), map_rhs(b))));
        Gadget::new(
            self.q,
            merged_sigs,
            vertices,
            pairs,
            self.loops + rhs.loops,
            self.m + rhs.m,
            self.d + rhs.d,
        )
    }

    /// `Kᵀ`: exchange left and right roles (horizontal reflection); the
    /// matrix transposes.
    pub fn transpose(&self) -> Gadget {
        let flip = |t: Terminal| match t {
            Terminal::Left(i) => Terminal::Right(i),
            Terminal::Right(j) => Terminal::Left(j),
            p => p,
        };
        Gadget {
            q: self.q,
            sigs: self.sigs.clone(),
            vertices: self.vertices.clone(),
            pairs: self.pairs.iter().map(|&(a, b)| (flip(a), flip(b))).collect(),
            loops: self.loops,
            m: self.d,
            d: self.m,
        }
    }

    /// Move dangling edges between the sides while preserving their cyclic
    /// order. Positive counts move bottom-left edges to the right; negative
    /// counts move bottom-right edges to the left. The unflattened signature
    /// is unchanged.
    pub fn pivot(&self, count: i64) -> Result<Gadget, GadgetError> {
        if count >= 0 {
            if count as usize > self.m {
                return Err(GadgetError::PivotOutOfRange(count, self.m));
            }
        } else if (-count) as usize > self.d {
            return Err(GadgetError::PivotOutOfRange(count, self.d));
        }
        let mut g = self.clone();
        for _ in 0..count.unsigned_abs() {
            g = if count > 0 { g.pivot_one_right() } else { g.pivot_one_left() };
        }
        Ok(g)
    }

    fn pivot_one_right(&self) -> Gadget {
        // Bottom-left l_{m-1} wraps around the bottom to become the new
        // bottom-right r_d; existing right ranks keep their positions.
        let relabel = |t: Terminal| match t {
            Terminal::Left(i) if i == self.m - 1 => Terminal::Right(self.d),
            other => other,
        };
        Gadget {
            q: self.q,
            sigs: self.sigs.clone(),
            vertices: self.vertices.clone(),
            pairs: self.pairs.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect(),
            loops: self.loops,
            m: self.m - 1,
            d: self.d + 1,
        }
    }

    fn pivot_one_left(&self) -> Gadget {
        // r_{d-1} becomes l_m.
        let relabel = |t: Terminal| match t {
            Terminal::Right(j) if j == self.d - 1 => Terminal::Left(self.m),
            other => other,
        };
        Gadget {
            q: self.q,
            sigs: self.sigs.clone(),
            vertices: self.vertices.clone(),
            pairs: self.pairs.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect(),
            loops: self.loops,
            m: self.m + 1,
            d: self.d - 1,
        }
    }

    /// Replace every assigned signature by its correspondent in the pair.
    pub fn replace_signatures(&self, pair: &SimilarPair) -> Result<Gadget, GadgetError> {
        let mut sigs = Vec::with_capacity(self.sigs.len());
        for (i, s) in self.sigs.iter().enumerate() {
            let pos = pair
                .left
                .iter()
                .position(|f| f == s)
                .ok_or(GadgetError::UnmappedSignature(i))?;
            sigs.push(pair.right[pos].clone());
        }
        Ok(Gadget {
            q: self.q,
            sigs,
            vertices: self.vertices.clone(),
            pairs: self.pairs.clone(),
            loops: self.loops,
            m: self.m,
            d: self.d,
        })
    }
}

/// Connect the i-th dangling ends (in cyclic order) of two gadgets of equal
/// total arity; the Holant value of the closure equals the inner product of
/// their signatures.
pub fn gadget_inner(k: &Gadget, l: &Gadget) -> Result<Scalar, GadgetError> {
    if k.arity() != l.arity() {
        return Err(GadgetError::InnerArityMismatch(k.arity(), l.arity()));
    }
    if k.q != l.q {
        return Err(GadgetError::DomainMismatch(k.q, l.q));
    }
    let (merged_sigs, k_map, l_map) = merge_tables(&k.sigs, &l.sigs);
    let voff = k.vertices.len();
    let mut vertices: Vec<usize> = k.vertices.iter().map(|&s| k_map[s]).collect();
    vertices.extend(l.vertices.iter().map(|&s| l_map[s]));

    let mut edges: Vec<(Tagged, Tagged)> = Vec::new();
    for &(a, b) in &k.pairs {
        edges.push((Tagged::A(a), Tagged::A(b)));
    }
    for &(a, b) in &l.pairs {
        edges.push((Tagged::B(a), Tagged::B(b)));
    }
    let mut glued = Vec::new();
    for p in 0..k.arity() {
        let (ta, tb) = (Tagged::A(k.dangling_at(p)), Tagged::B(l.dangling_at(p)));
        edges.push((ta, tb));
        glued.push(ta);
        glued.push(tb);
    }
    let (paths, cycles) = resolve_glue(&edges, &glued);
    let relabel = |t: Tagged| match t {
        Tagged::A(Terminal::Port { vertex, slot }) => Terminal::Port { vertex, slot },
        Tagged::B(Terminal::Port { vertex, slot }) => Terminal::Port { vertex: vertex + voff, slot },
        _ => unreachable!("all dangling ends were glued"),
    };
    let pairs = paths.into_iter().map(|(a, b)| (relabel(a), relabel(b))).collect();
    let grid = Gadget::new(
        k.q,
        merged_sigs,
        vertices,
        pairs,
        k.loops + l.loops + cycles,
        0,
        0,
    )?;
    Ok(eval::holant_gadget(&grid))
}

/// A gadget with no dangling edges.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureGrid(Gadget);

impl SignatureGrid {
    pub fn new(gadget: Gadget) -> Result<Self, GadgetError> {
        if gadget.m != 0 || gadget.d != 0 {
            return Err(GadgetError::NotAGrid(gadget.m, gadget.d));
        }
        Ok(SignatureGrid(gadget))
    }

    /// Build a grid from a vertex list and an edge list on ports.
    pub fn from_edges(
        q: usize,
        sigs: Vec<Signature>,
        vertices: Vec<usize>,
        edges: Vec<((usize, usize), (usize, usize))>,
        loops: usize,
    ) -> Result<Self, GadgetError> {
        let pairs = edges
            .into_iter()
            .map(|((v1, s1), (v2, s2))| {
                (Terminal::Port { vertex: v1, slot: s1 }, Terminal::Port { vertex: v2, slot: s2 })
            })
            .collect();
        SignatureGrid::new(Gadget::new(q, sigs, vertices, pairs, loops, 0, 0)?)
    }

    pub fn gadget(&self) -> &Gadget {
        &self.0
    }

    /// The Holant value: the full tensor-network contraction of the grid.
    pub fn holant(&self) -> Scalar {
        eval::holant_gadget(&self.0)
    }

    pub fn replace_signatures(&self, pair: &SimilarPair) -> Result<SignatureGrid, GadgetError> {
        Ok(SignatureGrid(self.0.replace_signatures(pair)?))
    }
}

/// A formal linear combination of gadgets with a common dangling type.
#[derive(Debug, Clone)]
pub struct QuantumGadget {
    terms: Vec<(Scalar, Gadget)>,
}

impl QuantumGadget {
    pub fn new(terms: Vec<(Scalar, Gadget)>) -> Result<Self, GadgetError> {
        let Some(((_, first), rest)) = terms.split_first() else {
            return Err(GadgetError::EmptyQuantum);
        };
        let shape = (first.m(), first.d());
        let q = first.q();
        for (_, g) in rest {
            if (g.m(), g.d()) != shape {
                return Err(GadgetError::QuantumShapeMismatch(shape, (g.m(), g.d())));
            }
            if g.q() != q {
                return Err(GadgetError::DomainMismatch(q, g.q()));
            }
        }
        Ok(QuantumGadget { terms })
    }

    pub fn terms(&self) -> &[(Scalar, Gadget)] {
        &self.terms
    }

    /// `M` extended linearly: `Σ_i c_i · M(K_i)`.
    pub fn matrix(&self) -> Flattening {
        let (c0, g0) = &self.terms[0];
        let first = g0.matrix();
        let (q, m, d) = (first.q(), first.m(), first.d());
        let mut acc = first.mat().scale(c0);
        for (c, g) in &self.terms[1..] {
            acc = acc.add(&g.matrix().mat().scale(c));
        }
        Flattening::new(q, m, d, acc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Tagged {
    A(Terminal),
    B(Terminal),
}

/// Resolve a degree-<=2 multigraph on terminals into its path endpoints and
/// closed-cycle count. Terminals listed in `glued` have degree 2 and vanish;
/// every other terminal has degree 1 and survives as a path endpoint.
fn resolve_glue(
    edges: &[(Tagged, Tagged)],
    glued: &[Tagged],
) -> (Vec<(Tagged, Tagged)>, usize) {
    use std::collections::HashMap;
    let mut adj: HashMap<Tagged, Vec<(usize, Tagged)>> = HashMap::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj.entry(a).or_default().push((i, b));
        adj.entry(b).or_default().push((i, a));
    }
    let glue_set: std::collections::HashSet<Tagged> = glued.iter().copied().collect();
    let mut used = vec![false; edges.len()];
    let mut paths = Vec::new();

    // Walk each path from its endpoints.
    let mut endpoints: Vec<Tagged> = adj
        .keys()
        .filter(|t| !glue_set.contains(t))
        .copied()
        .collect();
    endpoints.sort();
    for &start in &endpoints {
        let incident = &adj[&start];
        debug_assert_eq!(incident.len(), 1);
        let (ei, _) = incident[0];
        if used[ei] {
            continue;
        }
        let mut cur = start;
        let mut edge = ei;
        loop {
            used[edge] = true;
            let (a, b) = edges[edge];
            let next = if a == cur { b } else { a };
            if !glue_set.contains(&next) {
                paths.push((start, next));
                break;
            }
            let (e1, _) = adj[&next][0];
            let (e2, _) = adj[&next][1];
            edge = if e1 == edge { e2 } else { e1 };
            cur = next;
        }
    }
    // Remaining unused edges form closed cycles through glued terminals.
    let mut cycles = 0;
    for i in 0..edges.len() {
        if used[i] {
            continue;
        }
        cycles += 1;
        let mut cur = edges[i].0;
        let mut edge = i;
        loop {
            used[edge] = true;
            let (a, b) = edges[edge];
            let next = if a == cur { b } else { a };
            let (e1, _) = adj[&next][0];
            let (e2, _) = adj[&next][1];
            let stepped = if e1 == edge { e2 } else { e1 };
            if used[stepped] {
                break;
            }
            edge = stepped;
            cur = next;
        }
    }
    (paths, cycles)
}

fn merge_tables(
    a: &[Signature],
    b: &[Signature],
) -> (Vec<Signature>, Vec<usize>, Vec<usize>) {
    let mut merged: Vec<Signature> = Vec::new();
    let index_of = |s: &Signature, merged: &mut Vec<Signature>| -> usize {
        if let Some(i) = merged.iter().position(|t| t == s) {
            i
        } else {
            merged.push(s.clone());
            merged.len() - 1
        }
    };
    let a_map: Vec<usize> = a.iter().map(|s| index_of(s, &mut merged)).collect();
    let b_map: Vec<usize> = b.iter().map(|s| index_of(s, &mut merged)).collect();
    (merged, a_map, b_map)
}
