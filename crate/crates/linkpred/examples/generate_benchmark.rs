//! Generate LFR benchmark networks, disjoint and overlapping, and write
//! the edge list plus ground-truth community file.
//!
//! ```bash
//! cargo run --example generate_benchmark
//! ```

use linkpred::Result;
use linkpred::io::{LabelMap, write_cover_file, write_edge_list_file};
use linkpred::lfr::{self, LfrParams};

fn main() -> Result<()> {
    let params = LfrParams {
        n: 1000,
        avg_degree: 10.0,
        max_degree: 15,
        degree_exponent: 2.0,
        community_exponent: 1.0,
        min_community: 20,
        max_community: 40,
        mixing: 0.1,
        overlap_count: 0,
        overlap_memberships: 0,
        seed: 42,
    };
    let network = lfr::generate(&params)?;
    println!(
        "disjoint: {} vertices, {} edges, {} communities, achieved mixing {:.4}",
        network.graph.vertex_count(),
        network.graph.edge_count(),
        network.ground_truth.community_count(),
        network.achieved_mixing,
    );
    println!(
        "mean degree {:.2}, clustering {:.3}",
        network.graph.average_degree()?,
        network.graph.clustering_coefficient(),
    );

    let labels = LabelMap::numeric(network.graph.vertex_count());
    let dir = std::env::temp_dir();
    let edges_path = dir.join("lfr_edges.txt");
    let cover_path = dir.join("lfr_communities.txt");
    write_edge_list_file(&network.graph, &labels, &edges_path)?;
    write_cover_file(&network.ground_truth, &labels, &cover_path)?;
    println!("wrote {} and {}", edges_path.display(), cover_path.display());

    // Overlapping variant: 400 vertices belong to two communities each.
    let overlapping = lfr::generate(&LfrParams {
        overlap_count: 400,
        overlap_memberships: 2,
        ..params
    })?;
    let doubles = (0..overlapping.graph.vertex_count())
        .filter(|&v| overlapping.ground_truth.memberships(v).len() == 2)
        .count();
    println!(
        "\noverlapping: {} communities, {} vertices with 2 memberships, achieved mixing {:.4}",
        overlapping.ground_truth.community_count(),
        doubles,
        overlapping.achieved_mixing,
    );
    Ok(())
}
