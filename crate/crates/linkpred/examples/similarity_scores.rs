//! Score vertex pairs with the five local similarity indices.
//!
//! ```bash
//! cargo run --example similarity_scores
//! ```

use linkpred::Result;
use linkpred::graph::Graph;
use linkpred::similarity::{SimilarityMethod, score};

fn main() -> Result<()> {
    // A small collaboration-style graph.
    let g = Graph::from_edges(
        &[
            (0, 2), (0, 3), (0, 4),
            (1, 2), (1, 3), (1, 5),
            (2, 3), (4, 5),
        ],
        None,
    )?;

    println!("pair (0,1): shares neighbors 2 and 3\n");
    println!("{:<22} {:>10}", "method", "score");
    for method in SimilarityMethod::ALL {
        println!(
            "{:<22} {:>10.4}",
            format!("{method:?} ({method})"),
            score(method, &g, 0, 1)?
        );
    }

    // CN, Jaccard, AA, and RA are zero exactly when there is no common
    // neighbor; preferential attachment only looks at degrees.
    println!("\npair (4,5): connected vertices share no common neighbor here");
    for method in SimilarityMethod::ALL {
        println!(
            "{:<22} {:>10.4}",
            method.name(),
            score(method, &g, 4, 5)?
        );
    }
    Ok(())
}
