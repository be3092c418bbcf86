//! Missing-edge prediction for undirected networks.
//!
//! The idea: vertices in the same community are more likely to be connected
//! than vertices in different communities. Prediction therefore runs in two
//! phases. First the observed network is divided into communities (built-in
//! detectors, or any external detector via a cover file). Second, every
//! unconnected vertex pair is scored with a local similarity index and the
//! candidates are ranked in two tiers: pairs inside a community first, pairs
//! across communities after, each tier sorted by score.
//!
//! The crate also ships the machinery needed to evaluate such predictors:
//! a random-edge-removal noise model, rank-based AUC/ROC with tie handling,
//! an LFR benchmark generator with planted (optionally overlapping)
//! communities, and a seeded experiment harness that sweeps methods and
//! removal fractions and emits CSV.
//!
//! ```
//! use linkpred::{community, evaluation, graph::Graph, predictor, similarity::SimilarityMethod};
//!
//! // Two triangles joined by a single edge; drop one intra-triangle edge.
//! let original = Graph::from_edges(
//!     &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)],
//!     None,
//! )
//! .unwrap();
//! let (observed, removed) = original.remove_random_edges(1.0 / 7.0, 7).unwrap();
//!
//! let cover = community::detect_label_propagation(&observed, 42, 100).unwrap();
//! let ranking =
//!     predictor::rank_community_aware(&observed, &cover, SimilarityMethod::CommonNeighbors)
//!         .unwrap();
//! let labeled = evaluation::label_ranking(&ranking, &removed).unwrap();
//! let auc = evaluation::auc_exact(&labeled).unwrap();
//! assert!(auc.auc >= 0.0 && auc.auc <= 1.0);
//! ```

pub mod community;
pub mod evaluation;
pub mod experiment;
pub mod graph;
pub mod io;
pub mod lfr;
pub mod predictor;
pub mod seeds;
pub mod similarity;

mod error;

pub use error::{Error, Result};
