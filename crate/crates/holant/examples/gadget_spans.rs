//! Exploring intertwiner spaces through gadget spans: the span of the
//! signature matrices of enumerated (m,d)-gadgets over a signature set.
//!
//! ```bash
//! cargo run -p holant --example gadget_spans
//! ```

use holant::enumerate::GadgetBudget;
use holant::mat::Mat;
use holant::ortho::gadget_span;
use holant::scalar::Scalar;
use holant::signature::binary_from_mat;

fn main() {
    let budget = GadgetBudget { max_vertices: 2, max_total_degree: 8, max_dangling: 2 };

    // Over the empty set only wires exist: the (1,1) span is the line R·I.
    let span = gadget_span(&[], 2, 1, 1, &budget);
    println!("empty set, (1,1): dimension {}", span.dim());
    println!("{}", span.basis[0]);

    // Adding a nontrivial diagonal binary signature grows the span: powers
    // of the diagonal appear as path gadgets.
    let d = binary_from_mat(&Mat::from_diagonal(&[Scalar::from_int(1), Scalar::from_int(2)]));
    let span = gadget_span(&[d], 2, 1, 1, &budget);
    println!("one diagonal signature, (1,1): dimension {}", span.dim());
    for (i, b) in span.basis.iter().enumerate() {
        println!("basis {i}:\n{b}");
    }

    // Budget monotonicity: a larger budget never shrinks the span.
    let tiny = GadgetBudget { max_vertices: 1, max_total_degree: 4, max_dangling: 2 };
    let sig = binary_from_mat(&Mat::from_rows_int(&[vec![0, 1], vec![1, 1]]));
    let small = gadget_span(std::slice::from_ref(&sig), 2, 1, 1, &tiny);
    let large = gadget_span(&[sig], 2, 1, 1, &budget);
    println!(
        "budget growth: dimension {} → {} (containment: {})",
        small.dim(),
        large.dim(),
        small.basis.iter().all(|b| large.contains(b, 1e-10))
    );
}
