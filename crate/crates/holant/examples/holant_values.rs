//! Building signature grids and evaluating Holant values.
//!
//! ```bash
//! cargo run -p holant --example holant_values
//! ```

use holant::gadget::{Gadget, SignatureGrid};
use holant::scalar::Scalar;
use holant::signature::Signature;
use holant::standard;

fn main() {
    // A vertexless loop contributes a factor q: one loop at q = 3.
    let loop_grid = SignatureGrid::new(Gadget::loops_only(3, 1)).unwrap();
    println!("single vertexless loop, q = 3: holant = {}", loop_grid.holant());

    // Two unary vertices (1, 2) joined by an edge: 1*1 + 2*2 = 5.
    let u = Signature::new(2, 1, vec![Scalar::from_int(1), Scalar::from_int(2)]).unwrap();
    let dumbbell =
        SignatureGrid::from_edges(2, vec![u], vec![0, 0], vec![((0, 0), (1, 0))], 0).unwrap();
    println!("two unary vertices joined:    holant = {}", dumbbell.holant());

    // Perfect matchings of K4: place the Hamming-weight-1 signature on every
    // vertex of the complete graph K4. The Holant value counts matchings.
    let pm = standard::perfect_matching(3);
    let edges = vec![
        ((0, 0), (1, 0)),
        ((0, 1), (2, 0)),
        ((0, 2), (3, 0)),
        ((1, 1), (2, 1)),
        ((1, 2), (3, 1)),
        ((2, 2), (3, 2)),
    ];
    let k4 = SignatureGrid::from_edges(2, vec![pm], vec![0; 4], edges, 0).unwrap();
    println!("perfect matchings of K4:      holant = {}", k4.holant());

    // Exact arithmetic by default: rational entries stay rational.
    let third = Signature::new(2, 1, vec![Scalar::from_ratio(1, 3), Scalar::from_ratio(2, 3)])
        .unwrap();
    let exact = SignatureGrid::from_edges(
        2,
        vec![third],
        vec![0, 0],
        vec![((0, 0), (1, 0))],
        0,
    )
    .unwrap();
    println!("rational unary pair:          holant = {}", exact.holant());
}
