//! Detect communities with label propagation and greedy modularity
//! maximization, and compare partition quality.
//!
//! ```bash
//! cargo run --example detect_communities
//! ```

use linkpred::Result;
use linkpred::community::{detect_greedy_modularity, detect_label_propagation, modularity};
use linkpred::graph::Graph;

fn main() -> Result<()> {
    // Three 5-cliques in a ring, one bridge edge between consecutive cliques.
    let mut edges = Vec::new();
    for block in 0..3 {
        let base = block * 5;
        for u in base..base + 5 {
            for v in u + 1..base + 5 {
                edges.push((u, v));
            }
        }
    }
    edges.extend([(4, 5), (9, 10), (14, 0)]);
    let g = Graph::from_edges(&edges, None)?;

    let lp = detect_label_propagation(&g, 7, 100)?;
    println!(
        "label propagation: {} communities, Q = {:.4}",
        lp.community_count(),
        modularity(&g, &lp)?
    );
    for (c, members) in lp.communities().iter().enumerate() {
        println!("  community {c}: {members:?}");
    }

    let greedy = detect_greedy_modularity(&g);
    println!(
        "\ngreedy modularity: {} communities, Q = {:.4}",
        greedy.community_count(),
        modularity(&g, &greedy)?
    );
    for (c, members) in greedy.communities().iter().enumerate() {
        println!("  community {c}: {members:?}");
    }

    // Putting everything in one block zeroes Q; the detected split beats it.
    let whole = linkpred::community::Cover::whole(g.vertex_count());
    println!("\nsingle-block Q = {:.4}", modularity(&g, &whole)?);
    Ok(())
}
