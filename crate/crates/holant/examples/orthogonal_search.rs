//! Searching for orthogonal equivalences: verification, the binary solver,
//! domain induction along a shared diagonal, and the Riemannian heuristic.
//!
//! ```bash
//! cargo run -p holant --example orthogonal_search
//! ```

use holant::block::{direct_sum, mat_direct_sum};
use holant::mat::Mat;
use holant::ortho::{
    domain_induction, heuristic_search, search, solve_binary, verify, SearchOptions,
};
use holant::scalar::Scalar;
use holant::signature::{apply_transform, binary_from_mat, Signature, SimilarPair};
use holant::spectral::random_orthogonal;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);

    // Verify a known map.
    let f = Signature::new(2, 1, vec![Scalar::from_int(3), Scalar::from_int(4)]).unwrap();
    let h = Mat::from_fn(2, 2, |i, j| {
        Scalar::from_ratio([[3, 4], [-4, 3]][i][j], 5)
    });
    let g = apply_transform(&h, &f).unwrap();
    let pair = SimilarPair::new(vec![f], vec![g]).unwrap();
    let cert = verify(&pair, &h, 1e-12).unwrap();
    println!("verify: accepted with residual {:.3e}", cert.max_residual());

    // Binary sets: eigen-splitting plus sign propagation.
    let a = Mat::from_fn(3, 3, |_, _| Scalar::from_f64(rng.gen_range(-1.0..1.0)));
    let ho = random_orthogonal(3, &mut rng);
    let pair = SimilarPair::new(
        vec![binary_from_mat(&a)],
        vec![binary_from_mat(&ho.matmul(&a).matmul(&ho.transpose()))],
    )
    .unwrap();
    let cert = solve_binary(&pair, 1e-7, 0).unwrap();
    println!("solve_binary: method {:?}, residual {:.3e}", cert.method, cert.max_residual());

    // Domain induction: a two-block instance with the shared diagonal
    // diag(1,1,2,2) splits into two 2x2 subproblems.
    let ha = random_orthogonal(2, &mut rng);
    let hb = random_orthogonal(2, &mut rng);
    let block_h = mat_direct_sum(&ha, &hb);
    let fa = Signature::from_fn(2, 2, |_| Scalar::from_f64(rng.gen_range(-1.0..1.0)));
    let fb = Signature::from_fn(2, 2, |_| Scalar::from_f64(rng.gen_range(-1.0..1.0)));
    let f = direct_sum(&fa, &fb).unwrap();
    let g = apply_transform(&block_h, &f).unwrap();
    let d = Mat::from_diagonal(&[
        Scalar::from_int(1),
        Scalar::from_int(1),
        Scalar::from_int(2),
        Scalar::from_int(2),
    ]);
    let d_sig = binary_from_mat(&d);
    let pair = SimilarPair::new(vec![f, d_sig.clone()], vec![g, d_sig]).unwrap();
    let leaf = |sub: &SimilarPair| heuristic_search(sub, 8, 300, 1, 1e-8);
    let cert = domain_induction(&pair, &d, &leaf, 1e-8).unwrap();
    println!("domain_induction: residual {:.3e}", cert.max_residual());

    // The full pipeline dispatches by shape; here, a planted rotation of a
    // ternary signature lands on the heuristic.
    let f = Signature::from_fn(2, 3, |_| Scalar::from_f64(rng.gen_range(-1.0..1.0)));
    let hq = random_orthogonal(2, &mut rng);
    let pair =
        SimilarPair::new(vec![f.clone()], vec![apply_transform(&hq, &f).unwrap()]).unwrap();
    match search(&pair, &SearchOptions::default()) {
        Some(cert) => println!("search: found via {:?}", cert.method),
        None => println!("search: no certificate (increase restarts)"),
    }
}
