//! Desk-scale indistinguishability testing: the classic 4-ary pair that is
//! indistinguishable on bipartite grids but distinguished on general ones.
//!
//! ```bash
//! cargo run -p holant --example indistinguishability
//! ```

use holant::enumerate::GridBudget;
use holant::indist::{bipartite_indist, holant_indist};
use holant::signature::SimilarPair;
use holant::standard;

fn main() {
    let binary = standard::from_symmetric_weights(&[0, 1, 0]);
    let f = standard::from_symmetric_weights(&[1, 1, 1, 0, 0]);
    let g = standard::from_symmetric_weights(&[0, 0, 1, 0, 0]);

    // Bipartite: [0,1,0] on the left, the 4-ary signatures on the right.
    let pair_left = SimilarPair::reflexive(vec![binary.clone()]).unwrap();
    let pair_right = SimilarPair::new(vec![f.clone()], vec![g.clone()]).unwrap();
    let budget = GridBudget {
        max_vertices: 6,
        max_total_degree: 16,
        allow_vertexless_loops: false,
        bipartite: None,
    };
    let verdict = bipartite_indist(&pair_left, &pair_right, &budget);
    println!(
        "bipartite grids up to 6 vertices: {:?}",
        verdict.outcome
    );

    // General grids: the norms differ, so a counterexample exists.
    let pair = SimilarPair::new(vec![binary.clone(), f], vec![binary, g]).unwrap();
    let verdict = holant_indist(&pair, &GridBudget::with_max_vertices(3));
    println!("general grids: {:?}", verdict.outcome);
    if let Some(w) = verdict.witness {
        println!(
            "  first witness: {} vertices, {} edges, values {} vs {}",
            w.grid.gadget().vertices().len(),
            w.grid.gadget().pairs().len(),
            w.left_value,
            w.right_value
        );
        println!(
            "  witness as JSON:\n{}",
            serde_json::to_string_pretty(&holant::json::gadget_to_json(w.grid.gadget()))
                .unwrap()
        );
    }
}
