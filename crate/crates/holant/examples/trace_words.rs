//! Trace words decide simultaneous orthogonal similarity of matrix sets:
//! orthogonally similar sets agree on every word, and disagreement shows up
//! in short words.
//!
//! ```bash
//! cargo run -p holant --example trace_words
//! ```

use holant::indist::{trace_indist, trace_word};
use holant::mat::Mat;
use holant::signature::{binary_from_mat, SimilarPair};
use holant::spectral::random_orthogonal;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = Mat::from_rows_f64(&[vec![1.0, 2.0], vec![3.0, 4.0]]);

    // tr(A Aᵀ) = 30 by hand.
    let set = [binary_from_mat(&a)];
    println!("tr(A·Aᵀ) = {}", trace_word(&[(0, false), (0, true)], &set).unwrap());

    // An orthogonally similar copy agrees on all words up to length 6.
    let h = random_orthogonal(2, &mut rng);
    let b = h.matmul(&a).matmul(&h.transpose());
    let pair = SimilarPair::new(vec![binary_from_mat(&a)], vec![binary_from_mat(&b)]).unwrap();
    let verdict = trace_indist(&pair, 6).unwrap();
    println!("similar pair, words <= 6: {:?}", verdict.outcome);

    // A perturbed copy disagrees quickly; the witness is the cycle grid of
    // the offending word.
    let mut b_perturbed = b.clone();
    b_perturbed[(0, 0)] =
        &b_perturbed[(0, 0)] + &holant::scalar::Scalar::from_f64(0.01);
    let pair = SimilarPair::new(
        vec![binary_from_mat(&a)],
        vec![binary_from_mat(&b_perturbed)],
    )
    .unwrap();
    let verdict = trace_indist(&pair, 4).unwrap();
    println!("perturbed pair: {:?}", verdict.outcome);
    if let Some(w) = verdict.witness {
        println!(
            "  witness cycle of length {}: {} vs {}",
            w.grid.gadget().vertices().len(),
            w.left_value,
            w.right_value
        );
    }
}
