//! The full two-phase prediction pipeline: detect communities on an
//! observed network, then rank unconnected pairs with intra-community
//! candidates ahead of inter-community ones.
//!
//! ```bash
//! cargo run --example predict_missing_edges
//! ```

use linkpred::Result;
use linkpred::community::detect_label_propagation;
use linkpred::graph::Graph;
use linkpred::lfr::{self, LfrParams};
use linkpred::predictor::{rank_baseline, rank_community_aware};
use linkpred::similarity::SimilarityMethod;

fn main() -> Result<()> {
    let network = lfr::generate(&LfrParams {
        n: 300,
        avg_degree: 10.0,
        max_degree: 15,
        degree_exponent: 2.0,
        community_exponent: 1.0,
        min_community: 20,
        max_community: 40,
        mixing: 0.1,
        overlap_count: 0,
        overlap_memberships: 0,
        seed: 5,
    })?;
    let original: &Graph = &network.graph;

    // Hide 15% of the edges; those are what we try to find again.
    let (observed, removed) = original.remove_random_edges(0.15, 99)?;
    println!(
        "observed network: {} of {} edges, {} hidden",
        observed.edge_count(),
        original.edge_count(),
        removed.len()
    );

    // Phase one: communities of the observed network.
    let cover = detect_label_propagation(&observed, 1, 100)?;
    println!("detected {} communities", cover.community_count());

    // Phase two: tiered ranking by Adamic-Adar.
    let ranked = rank_community_aware(&observed, &cover, SimilarityMethod::AdamicAdar)?;
    println!(
        "{} candidates ({} intra, {} inter)\n",
        ranked.len(),
        ranked.intra_count(),
        ranked.inter_count()
    );

    println!("top 10 candidates:");
    let mut hits = 0;
    for (rank, pair) in ranked.top_k(10).iter().enumerate() {
        let hidden = removed.contains(pair.u, pair.v);
        hits += usize::from(hidden);
        println!(
            "  #{:<2} ({:>3}, {:>3})  {}  score {:.3}  {}",
            rank + 1,
            pair.u,
            pair.v,
            pair.tier,
            pair.score,
            if hidden { "<- hidden edge" } else { "" }
        );
    }
    println!("{hits} of the top 10 are hidden edges");

    // The baseline ignores communities; compare its top-10 hit count.
    let baseline = rank_baseline(&observed, SimilarityMethod::AdamicAdar);
    let base_hits = baseline
        .top_k(10)
        .iter()
        .filter(|p| removed.contains(p.u, p.v))
        .count();
    println!("baseline hits in its top 10: {base_hits}");
    Ok(())
}
