//! Exhaustive desk-scale enumeration of signature grids and gadgets.
//!
//! Grids are generated as (vertex multiset, perfect matching of port stubs)
//! pairs — covering self-loops, parallel edges, and distinct port orderings
//! for asymmetric signatures — then deduplicated by a canonical form:
//! the minimum, over signature-preserving vertex relabellings, of the sorted
//! edge list, with port slots wildcarded on symmetric signatures.
//! Deduplication only affects speed, never verdicts.

use crate::gadget::{Gadget, SignatureGrid, Terminal};
use crate::signature::Signature;
use std::collections::HashSet;
use std::ops::ControlFlow;

/// Bounds for exhaustive grid enumeration.
#[derive(Debug, Clone)]
pub struct GridBudget {
    pub max_vertices: usize,
    pub max_total_degree: usize,
    /// When set, also yield grids carrying vertexless loops (each loop costs
    /// 2 toward the total-degree budget). Loops multiply both sides of any
    /// comparison by `q`, so they are excluded by default.
    pub allow_vertexless_loops: bool,
    /// Bipartite mode: signature indices allowed on the two sides; edges run
    /// only between sides.
    pub bipartite: Option<(Vec<usize>, Vec<usize>)>,
}

impl Default for GridBudget {
    fn default() -> Self {
        GridBudget {
            max_vertices: 5,
            max_total_degree: 14,
            allow_vertexless_loops: false,
            bipartite: None,
        }
    }
}

impl GridBudget {
    pub fn with_max_vertices(n: usize) -> Self {
        GridBudget { max_vertices: n, ..Default::default() }
    }
}

type Stub = (usize, usize); // (vertex, slot)

/// Visit every grid within budget in a deterministic order, stopping early if
/// the callback breaks.
pub fn visit_grids<B>(
    set: &[Signature],
    budget: &GridBudget,
    mut f: impl FnMut(&SignatureGrid) -> ControlFlow<B>,
) -> Option<B> {
    let q = {
        let s = set.first()?;
        s.q()
    };
    let symmetric: Vec<bool> = set.iter().map(|s| s.is_symmetric(0.0)).collect();

    let max_loops = |used_degree: usize| -> usize {
        if budget.allow_vertexless_loops {
            (budget.max_total_degree - used_degree) / 2
        } else {
            0
        }
    };

    // Pure-loop grids first (no vertices).
    for loops in 1..=max_loops(0) {
        let grid = SignatureGrid::new(Gadget::loops_only(q, loops)).expect("loops-only grid");
        if let ControlFlow::Break(b) = f(&grid) {
            return Some(b);
        }
    }

    let mut result = None;
    for multiset in vertex_multisets(set, budget) {
        let degree: usize = multiset.iter().map(|&sid| set[sid].arity()).sum();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let side_of = side_assignment(&multiset, budget);
        let stubs: Vec<Stub> = multiset
            .iter()
            .enumerate()
            .flat_map(|(v, &sid)| (0..set[sid].arity()).map(move |slot| (v, slot)))
            .collect();
        let stop = visit_matchings(&stubs, side_of.as_deref(), &mut |matching| {
            let key = canonical_key(&multiset, matching, &symmetric);
            if !seen.insert(key) {
                return ControlFlow::Continue(());
            }
            for loops in 0..=max_loops(degree) {
                let grid = build_grid(q, set, &multiset, matching, loops);
                if let ControlFlow::Break(b) = f(&grid) {
                    return ControlFlow::Break(b);
                }
            }
            ControlFlow::Continue(())
        });
        if let Some(b) = stop {
            result = Some(b);
            break;
        }
    }
    result
}

/// Collect every grid within budget, in the visit order.
pub fn enumerate_grids(set: &[Signature], budget: &GridBudget) -> Vec<SignatureGrid> {
    let mut out = Vec::new();
    visit_grids::<()>(set, budget, |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    });
    out
}

fn build_grid(
    q: usize,
    set: &[Signature],
    multiset: &[usize],
    matching: &[(Stub, Stub)],
    loops: usize,
) -> SignatureGrid {
    let pairs = matching
        .iter()
        .map(|&((v1, s1), (v2, s2))| {
            (Terminal::Port { vertex: v1, slot: s1 }, Terminal::Port { vertex: v2, slot: s2 })
        })
        .collect();
    let gadget = Gadget::new(q, set.to_vec(), multiset.to_vec(), pairs, loops, 0, 0)
        .expect("enumerated grid is well-formed");
    SignatureGrid::new(gadget).expect("no dangling edges")
}

/// Non-decreasing signature-index sequences within the vertex and degree
/// budgets, with an even total degree (otherwise no perfect stub matching
/// exists). In bipartite mode the two sides' stub counts must agree.
fn vertex_multisets(set: &[Signature], budget: &GridBudget) -> Vec<Vec<usize>> {
    let allowed: Vec<usize> = match &budget.bipartite {
        None => (0..set.len()).collect(),
        Some((l, r)) => {
            let mut v: Vec<usize> = l.iter().chain(r).copied().collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        allowed: &[usize],
        from: usize,
        set: &[Signature],
        budget: &GridBudget,
        degree: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() && degree.is_multiple_of(2) && bipartite_balanced(set, budget, cur) {
            out.push(cur.clone());
        }
        if cur.len() == budget.max_vertices {
            return;
        }
        for (pos, &sid) in allowed.iter().enumerate().skip(from) {
            let d = degree + set[sid].arity();
            if d > budget.max_total_degree {
                continue;
            }
            cur.push(sid);
            rec(allowed, pos, set, budget, d, cur, out);
            cur.pop();
        }
    }
    rec(&allowed, 0, set, budget, 0, &mut cur, &mut out);
    // Deterministic order: vertex count, then lexicographic.
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

fn bipartite_balanced(set: &[Signature], budget: &GridBudget, multiset: &[usize]) -> bool {
    let Some((l, _)) = &budget.bipartite else {
        return true;
    };
    let mut left = 0usize;
    let mut right = 0usize;
    for &sid in multiset {
        if l.contains(&sid) {
            left += set[sid].arity();
        } else {
            right += set[sid].arity();
        }
    }
    left == right
}

/// 0 = left side, 1 = right side for each vertex, when bipartite.
fn side_assignment(multiset: &[usize], budget: &GridBudget) -> Option<Vec<u8>> {
    let (l, _) = budget.bipartite.as_ref()?;
    Some(multiset.iter().map(|sid| if l.contains(sid) { 0 } else { 1 }).collect())
}

/// Enumerate perfect matchings of the stubs. General mode pairs the lowest
/// unmatched stub with every later stub (self-loops included); bipartite mode
/// only pairs across sides.
fn visit_matchings<B>(
    stubs: &[Stub],
    sides: Option<&[u8]>,
    f: &mut impl FnMut(&[(Stub, Stub)]) -> ControlFlow<B>,
) -> Option<B> {
    fn rec<B>(
        stubs: &[Stub],
        sides: Option<&[u8]>,
        used: &mut [bool],
        cur: &mut Vec<(Stub, Stub)>,
        f: &mut impl FnMut(&[(Stub, Stub)]) -> ControlFlow<B>,
    ) -> Option<B> {
        let Some(a) = used.iter().position(|&u| !u) else {
            return match f(cur) {
                ControlFlow::Break(b) => Some(b),
                ControlFlow::Continue(()) => None,
            };
        };
        used[a] = true;
        for b in a + 1..stubs.len() {
            if used[b] {
                continue;
            }
            if let Some(s) = sides {
                if s[stubs[a].0] == s[stubs[b].0] {
                    continue;
                }
            }
            used[b] = true;
            cur.push((stubs[a], stubs[b]));
            if let Some(out) = rec(stubs, sides, used, cur, f) {
                return Some(out);
            }
            cur.pop();
            used[b] = false;
        }
        used[a] = false;
        None
    }
    if stubs.is_empty() {
        return match f(&[]) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        };
    }
    let mut used = vec![false; stubs.len()];
    rec(stubs, sides, &mut used, &mut Vec::new(), f)
}

const SLOT_WILDCARD: usize = usize::MAX;

/// Minimum over signature-class vertex relabellings of the sorted edge list.
fn canonical_key(
    multiset: &[usize],
    matching: &[(Stub, Stub)],
    symmetric: &[bool],
) -> Vec<usize> {
    let n = multiset.len();
    let mut best: Option<Vec<usize>> = None;
    for_each_class_permutation(multiset, &mut |perm| {
        let mut edges: Vec<[usize; 4]> = matching
            .iter()
            .map(|&((v1, s1), (v2, s2))| {
                let e1 = [perm[v1], if symmetric[multiset[v1]] { SLOT_WILDCARD } else { s1 }];
                let e2 = [perm[v2], if symmetric[multiset[v2]] { SLOT_WILDCARD } else { s2 }];
                if e1 <= e2 {
                    [e1[0], e1[1], e2[0], e2[1]]
                } else {
                    [e2[0], e2[1], e1[0], e1[1]]
                }
            })
            .collect();
        edges.sort_unstable();
        let key: Vec<usize> = edges.into_iter().flatten().collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    let mut key = best.unwrap_or_default();
    key.splice(0..0, [n]);
    key
}

/// All vertex relabellings that permute only within equal-signature classes.
/// The multiset is sorted, so classes are contiguous runs.
fn for_each_class_permutation(multiset: &[usize], f: &mut impl FnMut(&[usize])) {
    let n = multiset.len();
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for v in 1..=n {
        if v == n || multiset[v] != multiset[start] {
            runs.push((start, v));
            start = v;
        }
    }
    fn rec(
        runs: &[(usize, usize)],
        ri: usize,
        perm: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if ri == runs.len() {
            f(perm);
            return;
        }
        let (lo, hi) = runs[ri];
        fn heap(
            perm: &mut Vec<usize>,
            k: usize,
            hi: usize,
            ri: usize,
            runs: &[(usize, usize)],
            f: &mut impl FnMut(&[usize]),
        ) {
            if k == hi {
                rec(runs, ri + 1, perm, f);
                return;
            }
            for i in k..hi {
                perm.swap(k, i);
                heap(perm, k + 1, hi, ri, runs, f);
                perm.swap(k, i);
            }
        }
        heap(perm, lo, hi, ri, runs, f);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    rec(&runs, 0, &mut perm, f);
}

/// Bounds for gadget enumeration (dangling edges allowed).
#[derive(Debug, Clone)]
pub struct GadgetBudget {
    pub max_vertices: usize,
    pub max_total_degree: usize,
    /// Cap on the number of dangling edges (the arity of the enumerated
    /// gadget signatures).
    pub max_dangling: usize,
}

impl Default for GadgetBudget {
    fn default() -> Self {
        GadgetBudget { max_vertices: 2, max_total_degree: 10, max_dangling: 6 }
    }
}

/// Visit every connected gadget with at least one vertex and any number of
/// dangling edges (all drawn on the left, ranks in stub order) within budget.
/// Used for bounded checks of "every connected gadget has property P".
pub fn visit_connected_gadgets<B>(
    set: &[Signature],
    budget: &GadgetBudget,
    mut f: impl FnMut(&Gadget) -> ControlFlow<B>,
) -> Option<B> {
    let q = {
        let s = set.first()?;
        s.q()
    };
    let symmetric: Vec<bool> = set.iter().map(|s| s.is_symmetric(0.0)).collect();
    let grid_budget = GridBudget {
        max_vertices: budget.max_vertices,
        max_total_degree: budget.max_total_degree,
        allow_vertexless_loops: false,
        bipartite: None,
    };
    for multiset in vertex_multisets_any_parity(set, &grid_budget) {
        let stubs: Vec<Stub> = multiset
            .iter()
            .enumerate()
            .flat_map(|(v, &sid)| (0..set[sid].arity()).map(move |slot| (v, slot)))
            .collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        // Choose dangling stubs, then match the rest.
        for dangling_mask in 0u32..(1 << stubs.len()) {
            let dangling: Vec<Stub> = (0..stubs.len())
                .filter(|&i| dangling_mask >> i & 1 == 1)
                .map(|i| stubs[i])
                .collect();
            if dangling.len() > budget.max_dangling || !(stubs.len() - dangling.len()).is_multiple_of(2) {
                continue;
            }
            let internal: Vec<Stub> = (0..stubs.len())
                .filter(|&i| dangling_mask >> i & 1 == 0)
                .map(|i| stubs[i])
                .collect();
            let stop = visit_matchings(&internal, None, &mut |matching| {
                if !is_connected(multiset.len(), matching) {
                    return ControlFlow::Continue(());
                }
                // Canonical key over internal edges plus per-vertex dangling
                // counts (ranks are irrelevant for symmetry checks).
                let mut key = canonical_key(&multiset, matching, &symmetric);
                let mut dang_count = vec![0usize; multiset.len()];
                for &(v, _) in &dangling {
                    dang_count[v] += 1;
                }
                dang_count.sort_unstable();
                key.extend(dang_count);
                if !seen.insert(key) {
                    return ControlFlow::Continue(());
                }
                let mut pairs: Vec<(Terminal, Terminal)> = matching
                    .iter()
                    .map(|&((v1, s1), (v2, s2))| {
                        (
                            Terminal::Port { vertex: v1, slot: s1 },
                            Terminal::Port { vertex: v2, slot: s2 },
                        )
                    })
                    .collect();
                for (rank, &(v, s)) in dangling.iter().enumerate() {
                    pairs.push((Terminal::Port { vertex: v, slot: s }, Terminal::Left(rank)));
                }
                let gadget =
                    Gadget::new(q, set.to_vec(), multiset.clone(), pairs, 0, dangling.len(), 0)
                        .expect("enumerated gadget is well-formed");
                f(&gadget)
            });
            if let Some(b) = stop {
                return Some(b);
            }
        }
    }
    None
}

/// Enumerate `(m,d)`-gadgets within budget: vertex multisets (possibly empty)
/// with a perfect matching on stubs plus the labelled dangling terminals.
/// Wire-only gadgets (dangling ends matched to each other) are included.
pub fn enumerate_typed_gadgets(
    set: &[Signature],
    q: usize,
    m: usize,
    d: usize,
    budget: &GadgetBudget,
) -> Vec<Gadget> {
    let symmetric: Vec<bool> = set.iter().map(|s| s.is_symmetric(0.0)).collect();
    let grid_budget = GridBudget {
        max_vertices: budget.max_vertices,
        max_total_degree: budget.max_total_degree,
        allow_vertexless_loops: false,
        bipartite: None,
    };
    let mut multisets = vec![vec![]];
    multisets.extend(vertex_multisets_any_parity(set, &grid_budget));
    let mut out = Vec::new();
    for multiset in multisets {
        let stub_count: usize = multiset.iter().map(|&sid| set[sid].arity()).sum();
        if !(stub_count + m + d).is_multiple_of(2) {
            continue;
        }
        // Terminals: stubs then dangling; encode dangling as pseudo-stubs
        // with vertex = usize::MAX - rank so the matcher can run unchanged.
        let mut terminals: Vec<Stub> = multiset
            .iter()
            .enumerate()
            .flat_map(|(v, &sid)| (0..set[sid].arity()).map(move |slot| (v, slot)))
            .collect();
        for rank in 0..m + d {
            terminals.push((usize::MAX - rank, 0));
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        visit_matchings::<()>(&terminals, None, &mut |matching| {
            let key = typed_canonical_key(&multiset, matching, &symmetric);
            if !seen.insert(key) {
                return ControlFlow::Continue(());
            }
            let term_of = |(v, s): Stub| -> Terminal {
                if v <= usize::MAX - (m + d) {
                    Terminal::Port { vertex: v, slot: s }
                } else {
                    let rank = usize::MAX - v;
                    if rank < m {
                        Terminal::Left(rank)
                    } else {
                        Terminal::Right(rank - m)
                    }
                }
            };
            let pairs: Vec<(Terminal, Terminal)> =
                matching.iter().map(|&(a, b)| (term_of(a), term_of(b))).collect();
            out.push(
                Gadget::new(q, set.to_vec(), multiset.clone(), pairs, 0, m, d)
                    .expect("enumerated gadget is well-formed"),
            );
            ControlFlow::Continue(())
        });
    }
    out
}

fn typed_canonical_key(
    multiset: &[usize],
    matching: &[(Stub, Stub)],
    symmetric: &[bool],
) -> Vec<usize> {
    // Dangling pseudo-vertices (usize::MAX - rank) are fixed labels; only
    // real vertices are permuted.
    let n = multiset.len();
    let mut best: Option<Vec<usize>> = None;
    for_each_class_permutation(multiset, &mut |perm| {
        let map = |(v, s): Stub| -> [usize; 2] {
            if v < n {
                [perm[v], if symmetric[multiset[v]] { SLOT_WILDCARD } else { s }]
            } else {
                [v, s]
            }
        };
        let mut edges: Vec<[usize; 4]> = matching
            .iter()
            .map(|&(a, b)| {
                let (e1, e2) = (map(a), map(b));
                if e1 <= e2 {
                    [e1[0], e1[1], e2[0], e2[1]]
                } else {
                    [e2[0], e2[1], e1[0], e1[1]]
                }
            })
            .collect();
        edges.sort_unstable();
        let key: Vec<usize> = edges.into_iter().flatten().collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.unwrap_or_default()
}

fn vertex_multisets_any_parity(set: &[Signature], budget: &GridBudget) -> Vec<Vec<usize>> {
    // Like vertex_multisets but without the even-degree filter.
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(
        set: &[Signature],
        from: usize,
        budget: &GridBudget,
        degree: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == budget.max_vertices {
            return;
        }
        for sid in from..set.len() {
            let d = degree + set[sid].arity();
            if d > budget.max_total_degree {
                continue;
            }
            cur.push(sid);
            rec(set, sid, budget, d, cur, out);
            cur.pop();
        }
    }
    rec(set, 0, budget, 0, &mut cur, &mut out);
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

fn is_connected(n_vertices: usize, matching: &[(Stub, Stub)]) -> bool {
    if n_vertices <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n_vertices];
    for &((v1, _), (v2, _)) in matching {
        adj[v1].push(v2);
        adj[v2].push(v1);
    }
    let mut seen = vec![false; n_vertices];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
