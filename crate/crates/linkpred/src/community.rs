//! Community structure: covers (possibly overlapping vertex groupings),
//! two built-in partition detectors, and Newman modularity.
//!
//! The prediction method is detector-agnostic; anything that produces a
//! cover works, including external detector output loaded from a community
//! file via [`crate::io::read_cover`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::{Error, Result};

/// Assignment of every vertex to one or more communities. Community ids are
/// dense `0..community_count` and each id is used by at least one vertex.
/// A cover where every vertex has exactly one membership is a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    memberships: Vec<Vec<usize>>,
    community_count: usize,
}

impl Cover {
    /// Builds a cover from per-vertex membership lists, validating the
    /// invariants. Memberships are sorted and deduplicated.
    pub fn from_memberships(mut memberships: Vec<Vec<usize>>) -> Result<Cover> {
        let mut max_id = None::<usize>;
        for (v, ms) in memberships.iter_mut().enumerate() {
            ms.sort_unstable();
            ms.dedup();
            if ms.is_empty() {
                return Err(Error::UncoveredVertex(v));
            }
            max_id = max_id.max(Some(*ms.last().unwrap()));
        }
        let community_count = max_id.map_or(0, |m| m + 1);
        let mut used = vec![false; community_count];
        for ms in &memberships {
            for &c in ms {
                used[c] = true;
            }
        }
        if let Some(missing) = used.iter().position(|&u| !u) {
            return Err(Error::UnusedCommunityId(missing));
        }
        Ok(Cover {
            memberships,
            community_count,
        })
    }

    /// Builds a partition from arbitrary per-vertex labels, relabeling to
    /// dense ids in order of first appearance.
    pub fn from_partition(labels: &[usize]) -> Cover {
        let mut dense: BTreeMap<usize, usize> = BTreeMap::new();
        let mut next = 0usize;
        let memberships = labels
            .iter()
            .map(|&label| {
                let id = *dense.entry(label).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                });
                vec![id]
            })
            .collect();
        Cover {
            memberships,
            community_count: next,
        }
    }

    /// One singleton community per vertex.
    pub fn singletons(n: usize) -> Cover {
        Cover {
            memberships: (0..n).map(|v| vec![v]).collect(),
            community_count: n,
        }
    }

    /// A single community holding every vertex.
    pub fn whole(n: usize) -> Cover {
        Cover {
            memberships: vec![vec![0]; n],
            community_count: if n == 0 { 0 } else { 1 },
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.memberships.len()
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    /// Sorted community ids of `v`.
    pub fn memberships(&self, v: usize) -> &[usize] {
        &self.memberships[v]
    }

    pub fn is_partition(&self) -> bool {
        self.memberships.iter().all(|ms| ms.len() == 1)
    }

    /// Member lists per community, vertices ascending.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.community_count];
        for (v, ms) in self.memberships.iter().enumerate() {
            for &c in ms {
                members[c].push(v);
            }
        }
        members
    }

    /// True iff `u` and `v` share at least one community. This is the
    /// intra-community test used by the tiered ranking; for overlapping
    /// covers a single shared membership suffices.
    pub fn same_community(&self, u: usize, v: usize) -> bool {
        let (a, b) = (&self.memberships[u], &self.memberships[v]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// How a cover is obtained for prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectorChoice {
    LabelPropagation,
    GreedyModularity,
    /// Cover supplied from outside (ground truth or external detector).
    Loaded,
}

impl DetectorChoice {
    pub fn name(self) -> &'static str {
        match self {
            DetectorChoice::LabelPropagation => "label-propagation",
            DetectorChoice::GreedyModularity => "greedy-modularity",
            DetectorChoice::Loaded => "loaded",
        }
    }
}

impl fmt::Display for DetectorChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DetectorChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<DetectorChoice> {
        match s.to_ascii_lowercase().as_str() {
            "label-propagation" | "lp" => Ok(DetectorChoice::LabelPropagation),
            "greedy-modularity" | "greedy" => Ok(DetectorChoice::GreedyModularity),
            "loaded" => Ok(DetectorChoice::Loaded),
            other => Err(Error::Config(format!(
                "unknown detector {other:?} (expected label-propagation, greedy-modularity, or loaded)"
            ))),
        }
    }
}

/// Asynchronous label propagation. Every vertex starts with its own label;
/// vertices are visited in a fresh seeded random order each sweep and adopt
/// the majority label among their neighbors. When several labels tie for
/// the majority the current label is kept if it is among them, otherwise
/// one is drawn uniformly; this makes a converged labeling a fixed point.
/// Stops after a sweep that changes nothing, or after `max_sweeps`.
/// Deterministic for a fixed seed. Isolated vertices keep their own label
/// and end up in singleton communities.
pub fn detect_label_propagation(g: &Graph, seed: u64, max_sweeps: usize) -> Result<Cover> {
    if max_sweeps == 0 {
        return Err(Error::InvalidParameter(
            "label propagation needs max_sweeps >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..max_sweeps {
        shuffle(&mut order, &mut rng);
        if !propagation_sweep(g, &mut labels, &order, &mut rng) {
            break;
        }
    }
    Ok(Cover::from_partition(&labels))
}

/// One pass over `order`; returns whether any label changed.
fn propagation_sweep<R: Rng>(
    g: &Graph,
    labels: &mut [usize],
    order: &[usize],
    rng: &mut R,
) -> bool {
    let mut changed = false;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in order {
        let nbrs = g.neighbors(v);
        if nbrs.is_empty() {
            continue;
        }
        counts.clear();
        for &u in nbrs {
            *counts.entry(labels[u]).or_insert(0) += 1;
        }
        let best = *counts.values().max().unwrap();
        if counts.get(&labels[v]) == Some(&best) {
            continue;
        }
        let top: Vec<usize> = counts
            .iter()
            .filter(|&(_, &c)| c == best)
            .map(|(&l, _)| l)
            .collect();
        let pick = top[rng.random_range(0..top.len())];
        if pick != labels[v] {
            labels[v] = pick;
            changed = true;
        }
    }
    changed
}

fn shuffle<R: Rng>(items: &mut [usize], rng: &mut R) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}

/// Agglomerative greedy modularity maximization. Starts from singleton
/// communities and repeatedly merges the connected pair with the largest
/// modularity gain, stopping when no merge gains. Ties break toward the
/// smallest community-id pair, so the result is deterministic. An edgeless
/// graph comes back as singletons.
pub fn detect_greedy_modularity(g: &Graph) -> Cover {
    let n = g.vertex_count();
    let m = g.edge_count();
    if m == 0 {
        return Cover::singletons(n);
    }
    let mf = m as f64;

    // Community-level adjacency; communities start out as vertices.
    let mut between: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for (u, v) in g.edges() {
        *between[u].entry(v).or_insert(0) += 1;
        *between[v].entry(u).or_insert(0) += 1;
    }
    let mut total_degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<bool> = vec![true; n];

    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            for (&b, &w) in between[a].range(a + 1..) {
                let gain = w as f64 / mf
                    - (total_degree[a] as f64 * total_degree[b] as f64) / (2.0 * mf * mf);
                // Strict > keeps the first (lexicographically smallest)
                // pair on exact ties.
                if best.is_none_or(|(g0, _, _)| gain > g0) {
                    best = Some((gain, a, b));
                }
            }
        }
        let Some((gain, a, b)) = best else { break };
        if gain <= 0.0 {
            break;
        }
        // Merge b into a (a < b).
        total_degree[a] += total_degree[b];
        let moved = std::mem::take(&mut members[b]);
        members[a].extend(moved);
        between[a].remove(&b);
        let b_edges = std::mem::take(&mut between[b]);
        for (c, w) in b_edges {
            if c == a {
                continue;
            }
            *between[a].entry(c).or_insert(0) += w;
            let cm = &mut between[c];
            cm.remove(&b);
            *cm.entry(a).or_insert(0) += w;
        }
        alive[b] = false;
    }

    let mut labels = vec![0usize; n];
    let mut next = 0usize;
    for a in 0..n {
        if alive[a] && !members[a].is_empty() {
            for &v in &members[a] {
                labels[v] = next;
            }
            next += 1;
        }
    }
    Cover::from_partition(&labels)
}

/// Newman modularity `Q = Σ_c [e_c/m − (d_c/2m)²]` of a disjoint partition,
/// where `e_c` counts intra-community edges and `d_c` sums member degrees.
pub fn modularity(g: &Graph, cover: &Cover) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::ModularityUndefined);
    }
    if cover.vertex_count() != g.vertex_count() {
        return Err(Error::CoverSizeMismatch {
            cover: cover.vertex_count(),
            graph: g.vertex_count(),
        });
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| cover.memberships(v).len() > 1) {
        return Err(Error::OverlappingCover(v));
    }
    let community = |v: usize| cover.memberships(v)[0];
    let m = g.edge_count() as f64;
    let k = cover.community_count();
    let mut intra = vec![0usize; k];
    let mut degree = vec![0usize; k];
    for v in 0..g.vertex_count() {
        degree[community(v)] += g.degree(v);
    }
    for (u, v) in g.edges() {
        if community(u) == community(v) {
            intra[community(u)] += 1;
        }
    }
    Ok((0..k)
        .map(|c| {
            let d = degree[c] as f64 / (2.0 * m);
            intra[c] as f64 / m - d * d
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique_edges(vertices: &[usize]) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                edges.push((u, v));
            }
        }
        edges
    }

    #[test]
    fn cover_invariants_are_enforced() {
        assert!(matches!(
            Cover::from_memberships(vec![vec![0], vec![]]),
            Err(Error::UncoveredVertex(1))
        ));
        assert!(matches!(
            Cover::from_memberships(vec![vec![0], vec![2]]),
            Err(Error::UnusedCommunityId(1))
        ));
        let c = Cover::from_memberships(vec![vec![0, 0, 1], vec![1]]).unwrap();
        assert_eq!(c.memberships(0), &[0, 1]);
        assert!(!c.is_partition());
    }

    #[test]
    fn same_community_examples() {
        let part = Cover::from_memberships(vec![vec![0], vec![0], vec![1]]).unwrap();
        assert!(part.same_community(0, 1));
        assert!(!part.same_community(0, 2));

        let overlap = Cover::from_memberships(vec![vec![0], vec![0, 1], vec![1]]).unwrap();
        assert!(overlap.same_community(0, 1));
        assert!(overlap.same_community(1, 2));
        assert!(!overlap.same_community(0, 2));
    }

    #[test]
    fn label_propagation_splits_bridged_cliques() {
        let mut edges = clique_edges(&[0, 1, 2, 3, 4]);
        edges.extend(clique_edges(&[5, 6, 7, 8, 9]));
        edges.push((4, 5));
        let g = Graph::from_edges(&edges, None).unwrap();
        let cover = detect_label_propagation(&g, 11, 100).unwrap();
        assert!(cover.is_partition());
        assert_eq!(cover.community_count(), 2);
        for u in 0..5 {
            assert!(cover.same_community(0, u));
            assert!(!cover.same_community(0, u + 5));
        }
    }

    #[test]
    fn label_propagation_on_edgeless_graph_yields_singletons() {
        let g = Graph::from_edges(&[], Some(4)).unwrap();
        let cover = detect_label_propagation(&g, 3, 100).unwrap();
        assert_eq!(cover.community_count(), 4);
    }

    #[test]
    fn label_propagation_absorbs_a_clique_for_every_seed() {
        let g = Graph::from_edges(&clique_edges(&[0, 1, 2, 3, 4, 5]), None).unwrap();
        for seed in 0..100 {
            let cover = detect_label_propagation(&g, seed, 100).unwrap();
            assert_eq!(cover.community_count(), 1, "seed {seed}");
        }
    }

    #[test]
    fn label_propagation_is_deterministic() {
        let mut edges = clique_edges(&[0, 1, 2, 3]);
        edges.extend(clique_edges(&[4, 5, 6, 7]));
        edges.push((0, 4));
        edges.push((1, 5));
        let g = Graph::from_edges(&edges, None).unwrap();
        let a = detect_label_propagation(&g, 99, 100).unwrap();
        let b = detect_label_propagation(&g, 99, 100).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn label_propagation_converged_state_is_a_fixed_point() {
        let mut edges = clique_edges(&[0, 1, 2, 3, 4]);
        edges.extend(clique_edges(&[5, 6, 7, 8, 9]));
        edges.push((2, 7));
        let g = Graph::from_edges(&edges, None).unwrap();
        for seed in [0, 1, 2, 17] {
            let cover = detect_label_propagation(&g, seed, 100).unwrap();
            let mut labels: Vec<usize> =
                (0..g.vertex_count()).map(|v| cover.memberships(v)[0]).collect();
            let order: Vec<usize> = (0..g.vertex_count()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
            assert!(!propagation_sweep(&g, &mut labels, &order, &mut rng));
        }
    }

    #[test]
    fn zero_sweeps_is_rejected() {
        let g = Graph::from_edges(&[(0, 1)], None).unwrap();
        assert!(detect_label_propagation(&g, 0, 0).is_err());
    }

    /// Every partition of `0..n` via restricted-growth strings.
    fn all_partitions(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = vec![0usize; n];
        fn rec(current: &mut Vec<usize>, i: usize, max: usize, out: &mut Vec<Vec<usize>>) {
            if i == current.len() {
                out.push(current.clone());
                return;
            }
            for label in 0..=max + 1 {
                current[i] = label;
                rec(current, i + 1, max.max(label), out);
            }
        }
        if n > 0 {
            rec(&mut current, 1, 0, &mut out);
        }
        out
    }

    #[test]
    fn greedy_modularity_recovers_two_cliques() {
        let mut edges = clique_edges(&[0, 1, 2, 3]);
        edges.extend(clique_edges(&[4, 5, 6, 7]));
        edges.push((3, 4));
        let g = Graph::from_edges(&edges, None).unwrap();
        let cover = detect_greedy_modularity(&g);
        assert_eq!(cover.community_count(), 2);
        assert!(cover.same_community(0, 3));
        assert!(cover.same_community(4, 7));
        assert!(!cover.same_community(0, 4));

        // The two cliques maximize Q over every partition of 8 vertices.
        let q_detected = modularity(&g, &cover).unwrap();
        let mut q_best = f64::NEG_INFINITY;
        for labels in all_partitions(8) {
            let q = modularity(&g, &Cover::from_partition(&labels)).unwrap();
            q_best = q_best.max(q);
        }
        assert!((q_detected - q_best).abs() < 1e-12);
    }

    #[test]
    fn greedy_modularity_merges_a_single_edge() {
        // Q(merged) = 0 beats Q(singletons) = -0.5.
        let g = Graph::from_edges(&[(0, 1)], None).unwrap();
        let cover = detect_greedy_modularity(&g);
        assert_eq!(cover.community_count(), 1);
    }

    #[test]
    fn greedy_modularity_unifies_k4() {
        let g = Graph::from_edges(&clique_edges(&[0, 1, 2, 3]), None).unwrap();
        let cover = detect_greedy_modularity(&g);
        assert_eq!(cover.community_count(), 1);
        // Enumeration confirms no partition of K4 beats the single block.
        let q_one = modularity(&g, &cover).unwrap();
        for labels in all_partitions(4) {
            let q = modularity(&g, &Cover::from_partition(&labels)).unwrap();
            assert!(q <= q_one + 1e-12);
        }
    }

    #[test]
    fn greedy_modularity_on_edgeless_graph_yields_singletons() {
        let g = Graph::from_edges(&[], Some(3)).unwrap();
        assert_eq!(detect_greedy_modularity(&g).community_count(), 3);
    }

    #[test]
    fn greedy_modularity_never_loses_to_singletons() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let n = rng.random_range(2..12);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < 0.3 {
                        edges.push((u, v));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = Graph::from_edges(&edges, Some(n)).unwrap();
            let q = modularity(&g, &detect_greedy_modularity(&g)).unwrap();
            let q0 = modularity(&g, &Cover::singletons(n)).unwrap();
            assert!(q >= q0 - 1e-12);
            assert!((-0.5..1.0).contains(&q));
        }
    }

    #[test]
    fn modularity_examples() {
        let g = Graph::from_edges(&clique_edges(&[0, 1, 2]), None).unwrap();
        assert!((modularity(&g, &Cover::whole(3)).unwrap() - 0.0).abs() < 1e-12);

        let mut edges = clique_edges(&[0, 1, 2]);
        edges.extend(clique_edges(&[3, 4, 5]));
        let two = Graph::from_edges(&edges, None).unwrap();
        let parts = Cover::from_partition(&[0, 0, 0, 1, 1, 1]);
        assert!((modularity(&two, &parts).unwrap() - 0.5).abs() < 1e-12);

        let k2 = Graph::from_edges(&[(0, 1)], None).unwrap();
        assert!((modularity(&k2, &Cover::singletons(2)).unwrap() - -0.5).abs() < 1e-12);
    }

    #[test]
    fn modularity_rejects_overlap_and_edgeless() {
        let g = Graph::from_edges(&[(0, 1)], None).unwrap();
        let overlap = Cover::from_memberships(vec![vec![0, 1], vec![1]]).unwrap();
        assert!(matches!(
            modularity(&g, &overlap),
            Err(Error::OverlappingCover(0))
        ));
        let empty = Graph::from_edges(&[], Some(2)).unwrap();
        assert!(matches!(
            modularity(&empty, &Cover::singletons(2)),
            Err(Error::ModularityUndefined)
        ));
    }

    /// Brute-force oracle: Q = Σ_ij (A_ij − d_i d_j / 2m) δ(c_i, c_j) / 2m.
    fn modularity_oracle(g: &Graph, community: &[usize]) -> f64 {
        let m2 = 2.0 * g.edge_count() as f64;
        let n = g.vertex_count();
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                if community[i] != community[j] {
                    continue;
                }
                let a = if i != j && g.has_edge(i, j) { 1.0 } else { 0.0 };
                q += a - g.degree(i) as f64 * g.degree(j) as f64 / m2;
            }
        }
        q / m2
    }

    #[test]
    fn modularity_matches_double_sum_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let n = rng.random_range(2..7);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < 0.5 {
                        edges.push((u, v));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = Graph::from_edges(&edges, Some(n)).unwrap();
            let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..3)).collect();
            let cover = Cover::from_partition(&labels);
            let community: Vec<usize> = (0..n).map(|v| cover.memberships(v)[0]).collect();
            let q = modularity(&g, &cover).unwrap();
            assert!((q - modularity_oracle(&g, &community)).abs() < 1e-12);
        }
    }
}
