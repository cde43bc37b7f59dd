//! Holant values are invariant under orthogonal transformations of the
//! signature set, and wire signatures are fixed points of the action.
//!
//! ```bash
//! cargo run -p holant --example orthogonal_invariance
//! ```

use holant::gadget::SignatureGrid;
use holant::signature::{apply_transform, SimilarPair};
use holant::spectral::random_orthogonal;
use holant::standard;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // A small grid over one ternary signature: a triangle with one dangling
    // pair closed into self-loops... keep it simple: two vertices, three
    // parallel edges.
    let f = standard::from_symmetric_weights(&[1, 2, 0, 1]);
    let grid = SignatureGrid::from_edges(
        2,
        vec![f.clone()],
        vec![0, 0],
        vec![((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 2), (1, 2))],
        0,
    )
    .unwrap();
    let value = grid.holant();
    println!("holant(grid; F)        = {value}");

    for trial in 0..3 {
        let h = random_orthogonal(2, &mut rng);
        let hf = apply_transform(&h, &f).unwrap();
        let pair = SimilarPair::new(vec![f.clone()], vec![hf]).unwrap();
        let moved = grid.replace_signatures(&pair).unwrap().holant();
        println!(
            "holant(grid; H{}F)      = {:.12}   (difference {:.2e})",
            trial,
            moved.to_f64(),
            (moved.to_f64() - value.to_f64()).abs()
        );
    }

    // Wire signatures (vertexless gadgets) are fixed by every orthogonal map.
    let h = random_orthogonal(3, &mut rng);
    for matching in standard::perfect_matchings_of(4) {
        let w = standard::wire_signature(&matching, 3);
        let hw = apply_transform(&h, &w).unwrap();
        println!(
            "wire {matching:?}: ‖HW − W‖ = {:.2e}",
            hw.max_abs_diff(&w)
        );
    }
}
