//! Shared generators for the integration suites: random rational signatures,
//! random gadgets, and random grids, all deterministic per seed.

// Each integration test binary compiles this module separately, so some
// helpers are unused in some binaries.
#![allow(dead_code)]

use holant::gadget::{Gadget, SignatureGrid, Terminal};
use holant::scalar::Scalar;
use holant::signature::Signature;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_rational(rng: &mut impl Rng) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-4..=4), *[1, 1, 2].choose(rng).unwrap())
}

pub fn random_signature(q: usize, arity: usize, rng: &mut impl Rng) -> Signature {
    Signature::from_fn(q, arity, |_| random_rational(rng))
}

/// Random gadget with the given dangling type: random vertex arities, then a
/// random perfect matching over stubs and dangling terminals.
pub fn random_gadget(
    q: usize,
    m: usize,
    d: usize,
    max_vertices: usize,
    max_arity: usize,
    rng: &mut impl Rng,
) -> Gadget {
    loop {
        let nv = rng.gen_range(1..=max_vertices);
        let arities: Vec<usize> = (0..nv).map(|_| rng.gen_range(1..=max_arity)).collect();
        let total: usize = arities.iter().sum();
        if !(total + m + d).is_multiple_of(2) {
            continue;
        }
        let sigs: Vec<Signature> =
            arities.iter().map(|&a| random_signature(q, a, rng)).collect();
        let mut terminals: Vec<Terminal> = Vec::new();
        for (v, &a) in arities.iter().enumerate() {
            for slot in 0..a {
                terminals.push(Terminal::Port { vertex: v, slot });
            }
        }
        terminals.extend((0..m).map(Terminal::Left));
        terminals.extend((0..d).map(Terminal::Right));
        terminals.shuffle(rng);
        let pairs: Vec<(Terminal, Terminal)> =
            terminals.chunks(2).map(|c| (c[0], c[1])).collect();
        let vertices: Vec<usize> = (0..nv).collect();
        if let Ok(g) = Gadget::new(q, sigs, vertices, pairs, 0, m, d) {
            return g;
        }
    }
}

pub fn random_grid(
    q: usize,
    max_vertices: usize,
    max_arity: usize,
    rng: &mut impl Rng,
) -> SignatureGrid {
    loop {
        let g = random_gadget(q, 0, 0, max_vertices, max_arity, rng);
        if let Ok(grid) = SignatureGrid::new(g) {
            return grid;
        }
    }
}
