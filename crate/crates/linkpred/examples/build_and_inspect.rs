//! Build a graph from an edge list, query it, and simulate missing edges.
//!
//! ```bash
//! cargo run --example build_and_inspect
//! ```

use linkpred::Result;
use linkpred::graph::Graph;

fn main() -> Result<()> {
    // Zachary-style toy: two dense blocks joined by a few bridges.
    let edges = [
        (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
        (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7),
        (3, 4), (2, 5),
    ];
    let g = Graph::from_edges(&edges, None)?;

    println!(
        "graph: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
    println!("neighbors of 3: {:?}", g.neighbors(3));
    println!("average degree: {:.3}", g.average_degree()?);
    println!("clustering coefficient: {:.3}", g.clustering_coefficient());
    println!("non-edges: {}", g.non_edges().count());

    // The evaluation noise model: remove 20% of edges uniformly at random.
    let (observed, removed) = g.remove_random_edges(0.2, 42)?;
    println!(
        "\nafter removing {} edges (seed 42): {} observed edges",
        removed.len(),
        observed.edge_count()
    );
    for (u, v) in removed.iter() {
        println!("  missing edge ({u}, {v})");
    }
    // The same seed removes the same edges.
    let (_, again) = g.remove_random_edges(0.2, 42)?;
    assert_eq!(removed, again);
    Ok(())
}
