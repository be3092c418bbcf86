//! Local vertex-similarity indices. Each scores an unconnected pair from
//! the two neighbor sets (and neighbor degrees) alone.

use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, intersection_size};
use crate::{Error, Result};

/// The five similarity indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimilarityMethod {
    /// Size of the common-neighbor set.
    CommonNeighbors,
    /// Common neighbors normalized by the union of the neighbor sets.
    Jaccard,
    /// Common neighbors weighted by inverse log degree.
    AdamicAdar,
    /// Common neighbors weighted by inverse degree.
    ResourceAllocation,
    /// Product of the two degrees.
    PreferentialAttachment,
}

impl SimilarityMethod {
    pub const ALL: [SimilarityMethod; 5] = [
        SimilarityMethod::CommonNeighbors,
        SimilarityMethod::Jaccard,
        SimilarityMethod::AdamicAdar,
        SimilarityMethod::ResourceAllocation,
        SimilarityMethod::PreferentialAttachment,
    ];

    /// Short name used in CLI arguments, config files, and CSV output.
    pub fn name(self) -> &'static str {
        match self {
            SimilarityMethod::CommonNeighbors => "cn",
            SimilarityMethod::Jaccard => "jaccard",
            SimilarityMethod::AdamicAdar => "aa",
            SimilarityMethod::ResourceAllocation => "ra",
            SimilarityMethod::PreferentialAttachment => "pa",
        }
    }
}

impl fmt::Display for SimilarityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimilarityMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<SimilarityMethod> {
        match s.to_ascii_lowercase().as_str() {
            "cn" => Ok(SimilarityMethod::CommonNeighbors),
            "jaccard" => Ok(SimilarityMethod::Jaccard),
            "aa" => Ok(SimilarityMethod::AdamicAdar),
            "ra" => Ok(SimilarityMethod::ResourceAllocation),
            "pa" => Ok(SimilarityMethod::PreferentialAttachment),
            other => Err(Error::Config(format!(
                "unknown similarity method {other:?} (expected cn, jaccard, aa, ra, or pa)"
            ))),
        }
    }
}

/// `|Γ_u ∩ Γ_v|`.
pub fn score_common_neighbors(g: &Graph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    Ok(score_valid(SimilarityMethod::CommonNeighbors, g, u, v))
}

/// `|Γ_u ∩ Γ_v| / |Γ_u ∪ Γ_v|`, 0 when both neighbor sets are empty.
pub fn score_jaccard(g: &Graph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    Ok(score_valid(SimilarityMethod::Jaccard, g, u, v))
}

/// `Σ 1/ln|Γ_s|` over common neighbors `s`. A common neighbor is adjacent
/// to both endpoints, so its degree is at least 2 and every term is finite.
/// The log base only rescales scores, so rankings do not depend on it.
pub fn score_adamic_adar(g: &Graph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    Ok(score_valid(SimilarityMethod::AdamicAdar, g, u, v))
}

/// `Σ 1/|Γ_s|` over common neighbors `s`.
pub fn score_resource_allocation(g: &Graph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    Ok(score_valid(SimilarityMethod::ResourceAllocation, g, u, v))
}

/// `|Γ_u| · |Γ_v|`.
pub fn score_preferential_attachment(g: &Graph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    Ok(score_valid(SimilarityMethod::PreferentialAttachment, g, u, v))
}

/// Dispatches to the scorer for `method`.
pub fn score(method: SimilarityMethod, g: &Graph, u: usize, v: usize) -> Result<f64> {
    check_pair(g, u, v)?;
    Ok(score_valid(method, g, u, v))
}

fn check_pair(g: &Graph, u: usize, v: usize) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    assert_ne!(u, v, "similarity is defined for distinct vertices");
    Ok(())
}

/// Scorer core. Callers must have validated that `u != v` and both ids are
/// in range.
pub(crate) fn score_valid(method: SimilarityMethod, g: &Graph, u: usize, v: usize) -> f64 {
    let nu = g.neighbors(u);
    let nv = g.neighbors(v);
    match method {
        SimilarityMethod::CommonNeighbors => intersection_size(nu, nv) as f64,
        SimilarityMethod::Jaccard => {
            let inter = intersection_size(nu, nv);
            let union = nu.len() + nv.len() - inter;
            if union == 0 {
                0.0
            } else {
                inter as f64 / union as f64
            }
        }
        SimilarityMethod::AdamicAdar => {
            common_weighted_sum(g, nu, nv, |d| 1.0 / (d as f64).ln())
        }
        SimilarityMethod::ResourceAllocation => {
            common_weighted_sum(g, nu, nv, |d| 1.0 / d as f64)
        }
        SimilarityMethod::PreferentialAttachment => (nu.len() * nv.len()) as f64,
    }
}

fn common_weighted_sum(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    weight: impl Fn(usize) -> f64,
) -> f64 {
    let mut sum = 0.0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let d = g.degree(a[i]);
                debug_assert!(d >= 2, "a common neighbor has degree >= 2");
                sum += weight(d);
                i += 1;
                j += 1;
            }
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn path3() -> Graph {
        Graph::from_edges(&[(0, 1), (1, 2)], None).unwrap()
    }

    #[test]
    fn common_neighbors_examples() {
        assert_eq!(score_common_neighbors(&path3(), 0, 2).unwrap(), 1.0);

        let disjoint = Graph::from_edges(&[(0, 1), (2, 3)], None).unwrap();
        assert_eq!(score_common_neighbors(&disjoint, 0, 2).unwrap(), 0.0);

        // K5: any pair shares the other three vertices.
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        let k5 = Graph::from_edges(&edges, None).unwrap();
        assert_eq!(score_common_neighbors(&k5, 1, 3).unwrap(), 3.0);
    }

    #[test]
    fn jaccard_examples() {
        // Identical nonempty neighbor sets.
        let g = Graph::from_edges(&[(0, 2), (0, 3), (1, 2), (1, 3)], None).unwrap();
        assert_eq!(score_jaccard(&g, 0, 1).unwrap(), 1.0);

        // Disjoint nonempty neighbor sets.
        let h = Graph::from_edges(&[(0, 2), (1, 3)], None).unwrap();
        assert_eq!(score_jaccard(&h, 0, 1).unwrap(), 0.0);

        // Γ_u = {a,b,c}, Γ_v = {b,c,d}: 2/4.
        let k = Graph::from_edges(&[(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (1, 5)], None)
            .unwrap();
        assert_eq!(score_jaccard(&k, 0, 1).unwrap(), 0.5);

        // Both isolated: 0/0 defined as 0.
        let iso = Graph::from_edges(&[(2, 3)], Some(5)).unwrap();
        assert_eq!(score_jaccard(&iso, 0, 4).unwrap(), 0.0);
    }

    #[test]
    fn adamic_adar_examples() {
        let none = Graph::from_edges(&[(0, 2), (1, 3)], None).unwrap();
        assert_eq!(score_adamic_adar(&none, 0, 1).unwrap(), 0.0);

        // One common neighbor of degree 2.
        let one = path3();
        let expected = 1.0 / 2f64.ln();
        assert!((score_adamic_adar(&one, 0, 2).unwrap() - expected).abs() < 1e-12);

        // Common neighbors of degrees 2 and 4.
        let g = Graph::from_edges(
            &[(0, 2), (1, 2), (0, 3), (1, 3), (3, 4), (3, 5)],
            None,
        )
        .unwrap();
        let expected = 1.0 / 2f64.ln() + 1.0 / 4f64.ln();
        assert!((score_adamic_adar(&g, 0, 1).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 2.1640).abs() < 5e-4);
    }

    #[test]
    fn resource_allocation_examples() {
        let one = path3();
        assert_eq!(score_resource_allocation(&one, 0, 2).unwrap(), 0.5);

        // Common neighbors of degrees 2 and 5.
        let g = Graph::from_edges(
            &[(0, 2), (1, 2), (0, 3), (1, 3), (3, 4), (3, 5), (3, 6)],
            None,
        )
        .unwrap();
        assert!((score_resource_allocation(&g, 0, 1).unwrap() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn preferential_attachment_examples() {
        // Degrees 3 and 4.
        let g = Graph::from_edges(
            &[(0, 2), (0, 3), (0, 4), (1, 4), (1, 5), (1, 6), (1, 7)],
            None,
        )
        .unwrap();
        assert_eq!(score_preferential_attachment(&g, 0, 1).unwrap(), 12.0);

        let iso = Graph::from_edges(&[(1, 2)], Some(3)).unwrap();
        assert_eq!(score_preferential_attachment(&iso, 0, 1).unwrap(), 0.0);

        let pair = Graph::from_edges(&[(0, 2), (1, 3)], None).unwrap();
        assert_eq!(score_preferential_attachment(&pair, 0, 1).unwrap(), 1.0);
    }

    #[test]
    fn out_of_range_vertex_is_an_error() {
        let g = path3();
        for method in SimilarityMethod::ALL {
            assert!(matches!(
                score(method, &g, 0, 7),
                Err(Error::VertexOutOfRange { vertex: 7, .. })
            ));
        }
    }

    #[test]
    fn names_round_trip_case_insensitively() {
        for method in SimilarityMethod::ALL {
            assert_eq!(method.name().parse::<SimilarityMethod>().unwrap(), method);
            assert_eq!(
                method
                    .name()
                    .to_uppercase()
                    .parse::<SimilarityMethod>()
                    .unwrap(),
                method
            );
        }
        assert!("katz".parse::<SimilarityMethod>().is_err());
    }

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(&edges, Some(n)).unwrap()
    }

    /// Independent set-algebra oracle over hash sets built from scratch.
    fn naive_score(method: SimilarityMethod, g: &Graph, u: usize, v: usize) -> f64 {
        let set = |x: usize| -> HashSet<usize> { g.neighbors(x).iter().copied().collect() };
        let (su, sv) = (set(u), set(v));
        let common: HashSet<usize> = su.intersection(&sv).copied().collect();
        match method {
            SimilarityMethod::CommonNeighbors => common.len() as f64,
            SimilarityMethod::Jaccard => {
                let union = su.union(&sv).count();
                if union == 0 {
                    0.0
                } else {
                    common.len() as f64 / union as f64
                }
            }
            SimilarityMethod::AdamicAdar => common
                .iter()
                .map(|&s| 1.0 / (set(s).len() as f64).ln())
                .sum(),
            SimilarityMethod::ResourceAllocation => {
                common.iter().map(|&s| 1.0 / set(s).len() as f64).sum()
            }
            SimilarityMethod::PreferentialAttachment => (su.len() * sv.len()) as f64,
        }
    }

    #[test]
    fn properties_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..60 {
            let n = rng.random_range(2..9);
            let p = rng.random::<f64>();
            let g = random_graph(n, p, &mut rng);
            for u in 0..n {
                for v in u + 1..n {
                    let cn = score_valid(SimilarityMethod::CommonNeighbors, &g, u, v);
                    for method in SimilarityMethod::ALL {
                        let s = score_valid(method, &g, u, v);
                        // Symmetry is exact.
                        assert_eq!(s, score_valid(method, &g, v, u));
                        assert!(s >= 0.0);
                        // Matches the independent oracle.
                        assert!((s - naive_score(method, &g, u, v)).abs() < 1e-12);
                    }
                    let jac = score_valid(SimilarityMethod::Jaccard, &g, u, v);
                    assert!(jac <= 1.0);
                    assert_eq!(cn, cn.round(), "CN is integer-valued");
                    let aa = score_valid(SimilarityMethod::AdamicAdar, &g, u, v);
                    let ra = score_valid(SimilarityMethod::ResourceAllocation, &g, u, v);
                    if cn >= 1.0 {
                        // ln k < k for k >= 2, so AA strictly dominates RA.
                        assert!(aa > ra);
                        assert!(jac > 0.0);
                    } else {
                        assert_eq!(aa, 0.0);
                        assert_eq!(ra, 0.0);
                        assert_eq!(jac, 0.0);
                    }
                }
            }
        }
    }
}
