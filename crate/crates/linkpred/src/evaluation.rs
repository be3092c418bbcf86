//! Rank-based evaluation of a prediction against the removed-edge set:
//! AUC (the probability that a random positive outranks a random negative,
//! ties counted half) and the ROC curve it is the area under.
//!
//! Outranking respects the tiered ranking: an earlier tier outranks a later
//! one regardless of score, and two instances are tied only when both tier
//! and score coincide. The deterministic pair-order tie-break used for list
//! layout never counts as outranking, so an uninformative ranking scores
//! exactly 0.5.

use std::io::Write;

use rand::{Rng, RngExt};

use crate::graph::EdgeSet;
use crate::predictor::{RankedPredictions, Tier};
use crate::{Error, Result};

/// Class of a candidate pair: positives are the removed ("missing") edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Positive,
    Negative,
}

/// One ranked candidate with its class label.
#[derive(Debug, Clone, Copy)]
pub struct LabeledInstance {
    pub tier: Tier,
    pub score: f64,
    pub label: Label,
}

/// A ranking with class labels attached; instances are ordered best first
/// (tier, then score descending).
#[derive(Debug, Clone)]
pub struct LabeledRanking {
    instances: Vec<LabeledInstance>,
    positives: usize,
}

impl LabeledRanking {
    /// Builds a labeled ranking from unordered instances, sorting them into
    /// evaluation order.
    pub fn from_instances(mut instances: Vec<LabeledInstance>) -> LabeledRanking {
        instances.sort_by(|a, b| a.tier.cmp(&b.tier).then(b.score.total_cmp(&a.score)));
        let positives = instances
            .iter()
            .filter(|i| i.label == Label::Positive)
            .count();
        LabeledRanking {
            instances,
            positives,
        }
    }

    pub fn instances(&self) -> &[LabeledInstance] {
        &self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn positives(&self) -> usize {
        self.positives
    }

    pub fn negatives(&self) -> usize {
        self.instances.len() - self.positives
    }

    fn check_defined(&self) -> Result<()> {
        if self.positives() == 0 || self.negatives() == 0 {
            return Err(Error::UndefinedAuc {
                positives: self.positives(),
                negatives: self.negatives(),
            });
        }
        Ok(())
    }

    /// Consecutive runs of equal (tier, score): the tie groups.
    fn tie_groups(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut start = 0usize;
        std::iter::from_fn(move || {
            if start >= self.instances.len() {
                return None;
            }
            let head = &self.instances[start];
            let mut end = start + 1;
            while end < self.instances.len() {
                let cur = &self.instances[end];
                if cur.tier != head.tier || cur.score != head.score {
                    break;
                }
                end += 1;
            }
            let group = (start, end);
            start = end;
            Some(group)
        })
    }
}

/// Labels every candidate of `preds` against the removed edges. Every
/// removed edge must appear among the candidates; a mismatch means the
/// ranking was computed on a different graph than the removal.
pub fn label_ranking(preds: &RankedPredictions, removed: &EdgeSet) -> Result<LabeledRanking> {
    let mut instances = Vec::with_capacity(preds.len());
    let mut positives = 0usize;
    for pair in preds.pairs() {
        let label = if removed.contains(pair.u, pair.v) {
            positives += 1;
            Label::Positive
        } else {
            Label::Negative
        };
        instances.push(LabeledInstance {
            tier: pair.tier,
            score: pair.score,
            label,
        });
    }
    if positives != removed.len() {
        let candidates: std::collections::HashSet<(usize, usize)> =
            preds.pairs().iter().map(|p| (p.u, p.v)).collect();
        let (u, v) = removed
            .iter()
            .find(|&(u, v)| !candidates.contains(&(u, v)))
            .expect("some removed edge is missing from the candidates");
        return Err(Error::RemovedPairNotCandidate { u, v });
    }
    Ok(LabeledRanking {
        instances,
        positives,
    })
}

/// AUC result with the class counts it was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AucResult {
    pub auc: f64,
    pub positives: usize,
    pub negatives: usize,
}

/// Exact AUC: `[#(pos outranks neg) + ½·#(ties)] / (P·N)`, accumulated
/// over tie groups in one pass rather than the quadratic pair loop.
pub fn auc_exact(ranking: &LabeledRanking) -> Result<AucResult> {
    ranking.check_defined()?;
    let negatives_total = ranking.negatives();
    let mut negatives_seen = 0usize;
    let mut wins = 0.0f64;
    let mut ties = 0.0f64;
    for (start, end) in ranking.tie_groups() {
        let group = &ranking.instances()[start..end];
        let pos = group.iter().filter(|i| i.label == Label::Positive).count();
        let neg = group.len() - pos;
        // Positives here beat every negative ranked strictly later.
        wins += (pos * (negatives_total - negatives_seen - neg)) as f64;
        ties += (pos * neg) as f64;
        negatives_seen += neg;
    }
    let pn = (ranking.positives() * negatives_total) as f64;
    Ok(AucResult {
        auc: (wins + 0.5 * ties) / pn,
        positives: ranking.positives(),
        negatives: negatives_total,
    })
}

/// Monte-Carlo AUC: draws `samples` independent (positive, negative) pairs
/// and averages 1 per outranking, ½ per tie.
pub fn auc_sampled<R: Rng>(
    ranking: &LabeledRanking,
    samples: usize,
    rng: &mut R,
) -> Result<AucResult> {
    ranking.check_defined()?;
    assert!(samples >= 1, "at least one sample is required");
    let mut pos: Vec<(Tier, f64)> = Vec::with_capacity(ranking.positives());
    let mut neg: Vec<(Tier, f64)> = Vec::with_capacity(ranking.negatives());
    for i in ranking.instances() {
        match i.label {
            Label::Positive => pos.push((i.tier, i.score)),
            Label::Negative => neg.push((i.tier, i.score)),
        }
    }
    let mut total = 0.0f64;
    for _ in 0..samples {
        let (pt, ps) = pos[rng.random_range(0..pos.len())];
        let (nt, ns) = neg[rng.random_range(0..neg.len())];
        total += match pt.cmp(&nt) {
            std::cmp::Ordering::Less => 1.0,
            std::cmp::Ordering::Greater => 0.0,
            std::cmp::Ordering::Equal => {
                if ps > ns {
                    1.0
                } else if ps == ns {
                    0.5
                } else {
                    0.0
                }
            }
        };
    }
    Ok(AucResult {
        auc: total / samples as f64,
        positives: ranking.positives(),
        negatives: ranking.negatives(),
    })
}

/// ROC curve points `(fpr, tpr)`, one per tie-group boundary, from (0,0)
/// to (1,1). The trapezoidal area under these points equals [`auc_exact`].
pub fn roc_points(ranking: &LabeledRanking) -> Result<Vec<(f64, f64)>> {
    ranking.check_defined()?;
    let p = ranking.positives() as f64;
    let n = ranking.negatives() as f64;
    let mut points = Vec::with_capacity(ranking.len() + 1);
    points.push((0.0, 0.0));
    let (mut tp, mut fp) = (0usize, 0usize);
    for (start, end) in ranking.tie_groups() {
        let group = &ranking.instances()[start..end];
        let pos = group.iter().filter(|i| i.label == Label::Positive).count();
        tp += pos;
        fp += group.len() - pos;
        points.push((fp as f64 / n, tp as f64 / p));
    }
    Ok(points)
}

/// Writes `fpr,tpr` rows.
pub fn write_roc_csv<W: Write>(points: &[(f64, f64)], mut out: W) -> Result<()> {
    writeln!(out, "fpr,tpr")?;
    for (fpr, tpr) in points {
        writeln!(out, "{fpr},{tpr}")?;
    }
    Ok(())
}

/// Trapezoidal area under a point sequence.
pub fn trapezoid_area(points: &[(f64, f64)]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[1].1 + w[0].1) / 2.0)
        .sum()
}
