//! Tiered candidate ranking: every unconnected pair is scored, then
//! intra-community candidates are ranked ahead of inter-community ones,
//! each tier sorted by score.

use std::fmt;
use std::io::Write;

use crate::community::Cover;
use crate::graph::Graph;
use crate::io::LabelMap;
use crate::similarity::{SimilarityMethod, score_valid};
use crate::{Error, Result};

/// Position of a candidate pair relative to the cover. `Intra` orders
/// before `Inter`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    Intra,
    Inter,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::Intra => "intra",
            Tier::Inter => "inter",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An unconnected pair with its similarity score and tier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredPair {
    pub u: usize,
    pub v: usize,
    pub score: f64,
    pub tier: Tier,
}

/// The concatenated two-tier ordering of all candidate pairs: every intra
/// entry precedes every inter entry, scores are non-increasing within a
/// tier, and every non-edge of the observed graph appears exactly once.
#[derive(Debug, Clone)]
pub struct RankedPredictions {
    pairs: Vec<ScoredPair>,
    intra_count: usize,
}

impl RankedPredictions {
    pub fn pairs(&self) -> &[ScoredPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn intra_count(&self) -> usize {
        self.intra_count
    }

    pub fn inter_count(&self) -> usize {
        self.pairs.len() - self.intra_count
    }

    /// First `min(k, len)` entries.
    pub fn top_k(&self, k: usize) -> &[ScoredPair] {
        &self.pairs[..k.min(self.pairs.len())]
    }
}

/// Ranks every non-edge of `g` with intra-community candidates first.
/// Within a tier, candidates sort by descending score, ties broken by
/// canonical pair order. The cover must describe exactly the vertices
/// of `g`.
pub fn rank_community_aware(
    g: &Graph,
    cover: &Cover,
    method: SimilarityMethod,
) -> Result<RankedPredictions> {
    if cover.vertex_count() != g.vertex_count() {
        return Err(Error::CoverSizeMismatch {
            cover: cover.vertex_count(),
            graph: g.vertex_count(),
        });
    }
    let mut intra = Vec::new();
    let mut inter = Vec::new();
    for (u, v) in g.non_edges() {
        let score = score_valid(method, g, u, v);
        if cover.same_community(u, v) {
            intra.push(ScoredPair {
                u,
                v,
                score,
                tier: Tier::Intra,
            });
        } else {
            inter.push(ScoredPair {
                u,
                v,
                score,
                tier: Tier::Inter,
            });
        }
    }
    sort_tier(&mut intra);
    sort_tier(&mut inter);
    let intra_count = intra.len();
    intra.extend(inter);
    Ok(RankedPredictions {
        pairs: intra,
        intra_count,
    })
}

/// Plain score-descending ranking over all non-edges, with the same
/// tie-break. The single tier is labeled `Inter` by convention.
pub fn rank_baseline(g: &Graph, method: SimilarityMethod) -> RankedPredictions {
    let mut pairs: Vec<ScoredPair> = g
        .non_edges()
        .map(|(u, v)| ScoredPair {
            u,
            v,
            score: score_valid(method, g, u, v),
            tier: Tier::Inter,
        })
        .collect();
    sort_tier(&mut pairs);
    RankedPredictions {
        pairs,
        intra_count: 0,
    }
}

fn sort_tier(pairs: &mut [ScoredPair]) {
    pairs.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| (a.u, a.v).cmp(&(b.u, b.v)))
    });
}

/// Writes `u_label,v_label,tier,score,rank` rows, rank counted from 1.
/// `limit` truncates to the top entries when given.
pub fn write_predictions_csv<W: Write>(
    preds: &RankedPredictions,
    labels: &LabelMap,
    limit: Option<usize>,
    mut out: W,
) -> Result<()> {
    writeln!(out, "u_label,v_label,tier,score,rank")?;
    let shown = limit.unwrap_or(preds.len());
    for (rank, pair) in preds.top_k(shown).iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{}",
            labels.label(pair.u),
            labels.label(pair.v),
            pair.tier,
            pair.score,
            rank + 1
        )?;
    }
    Ok(())
}
