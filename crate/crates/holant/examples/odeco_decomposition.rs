//! Simultaneous orthogonal decomposition: recover the hidden rotation of a
//! weighted-equality set, and watch a non-decomposable tensor fail the star
//! symmetry test.
//!
//! ```bash
//! cargo run -p holant --example odeco_decomposition
//! ```

use holant::odeco::{odeco_decompose, pairwise_star_symmetric, star};
use holant::scalar::Scalar;
use holant::signature::apply_transform;
use holant::spectral::random_orthogonal;
use holant::standard;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let q = 3;

    // Hide two weighted equalities behind a random rotation.
    let w1: Vec<Scalar> = [1.0, 2.0, 3.0].iter().map(|&x| Scalar::from_f64(x)).collect();
    let w2: Vec<Scalar> = [0.5, -1.0, 2.0].iter().map(|&x| Scalar::from_f64(x)).collect();
    let h = random_orthogonal(q, &mut rng);
    let set = vec![
        apply_transform(&h.transpose(), &standard::gen_equality(2, &w1)).unwrap(),
        apply_transform(&h.transpose(), &standard::gen_equality(3, &w2)).unwrap(),
    ];

    println!(
        "pairwise star symmetry: {}",
        pairwise_star_symmetric(&set, 1e-9).unwrap()
    );
    let cert = odeco_decompose(&set, 1e-7).unwrap();
    println!("decomposed with residual {:.3e}", cert.residual);
    println!("recovered weights (up to signed permutation):");
    for w in &cert.weights {
        println!("  {w:?}");
    }

    // The symmetric order-3 tensor with ones on permutations of (0,0,1) is
    // not decomposable: its self star product is asymmetric.
    let w = standard::from_symmetric_weights(&[0, 1, 0, 0]);
    let ww = star(&w, &w, 0.0).unwrap();
    println!(
        "counterexample tensor: (W∗W)(0,0,1,1) = {} but (W∗W)(0,1,0,1) = {}",
        ww.get(&[0, 0, 1, 1]),
        ww.get(&[0, 1, 0, 1])
    );
    println!(
        "pairwise star symmetry: {}",
        pairwise_star_symmetric(std::slice::from_ref(&w), 0.0).unwrap()
    );
    match odeco_decompose(&[w], 1e-9) {
        Err(e) => println!("decomposition fails at the expected stage: {e}"),
        Ok(_) => unreachable!("the counterexample tensor is not odeco"),
    }
}
