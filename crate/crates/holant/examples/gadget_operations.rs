//! The gadget algebra: composition, tensoring, transposition, and pivoting
//! act on signature matrices as matrix product, Kronecker product, transpose,
//! and nothing at all (pivoting only re-splits the matrix view).
//!
//! ```bash
//! cargo run -p holant --example gadget_operations
//! ```

use holant::gadget::Gadget;
use holant::scalar::Scalar;
use holant::signature::Signature;

fn main() {
    // A (1,1)-gadget from a binary signature and the wire.
    let f = Signature::new(
        2,
        2,
        vec![
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(0),
            Scalar::from_int(1),
        ],
    )
    .unwrap();
    let k = Gadget::single_vertex(f, 1, 1).unwrap();
    let wire = Gadget::wire(2);

    println!("M(K) =\n{}", k.matrix().mat());

    let kk = k.compose(&k).unwrap();
    println!("M(K ∘ K) = M(K)² =\n{}", kk.matrix().mat());

    let kw = k.tensor(&wire).unwrap();
    println!("M(K ⊗ wire) = M(K) ⊗ I, a {}x{} matrix", kw.matrix().mat().rows(), kw.matrix().mat().cols());

    println!("M(Kᵀ) =\n{}", k.transpose().matrix().mat());

    // Pivoting moves dangling edges between the sides without touching the
    // underlying signature: the (2,0) view of K is its signature vector.
    let all_left = k.pivot(-1).unwrap();
    println!(
        "K pivoted to (2,0): matrix is the signature vector, {} entries",
        all_left.matrix().mat().rows()
    );
    assert_eq!(all_left.signature(), k.signature());

    // The braid gadget routes strands; its matrix permutes tensor factors.
    let swap = Gadget::braid(&[1, 0], 2);
    println!("M(swap braid) =\n{}", swap.matrix().mat());
}
