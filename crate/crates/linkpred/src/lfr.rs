//! LFR benchmark networks: power-law degrees and community sizes, a planted
//! (optionally overlapping) ground-truth cover, and a mixing parameter
//! controlling the fraction of each vertex's edges that leave its
//! communities.
//!
//! The generator follows the standard recipe: sample a degree sequence and
//! community sizes, assign memberships, split each vertex's degree into an
//! intra-community quota and an external remainder, then wire both sides by
//! configuration-model stub matching with rewiring repair passes. It targets
//! the distributional contract (degrees, sizes, mixing) rather than
//! bit-compatibility with any particular implementation.

use std::collections::BTreeSet;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::community::Cover;
use crate::graph::{Graph, round_half_up};
use crate::seeds::derive_seed;
use crate::{Error, Result};

/// Parameters of one LFR instance.
#[derive(Debug, Clone, Serialize)]
pub struct LfrParams {
    /// Vertex count.
    pub n: usize,
    /// Target average degree ⟨k⟩.
    pub avg_degree: f64,
    /// Maximum degree.
    pub max_degree: usize,
    /// Degree power-law exponent (τ1).
    pub degree_exponent: f64,
    /// Community-size power-law exponent (τ2).
    pub community_exponent: f64,
    /// Minimum community size.
    pub min_community: usize,
    /// Maximum community size.
    pub max_community: usize,
    /// Mixing parameter μ: fraction of each vertex's edges leaving its
    /// communities.
    pub mixing: f64,
    /// Number of overlapping vertices (o_n).
    pub overlap_count: usize,
    /// Memberships per overlapping vertex (o_m); irrelevant when
    /// `overlap_count` is 0.
    pub overlap_memberships: usize,
    pub seed: u64,
}

impl LfrParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n == 0 {
            return fail("n must be positive".into());
        }
        if !(self.min_community >= 1 && self.min_community <= self.max_community) {
            return fail(format!(
                "community bounds must satisfy 1 <= c_min <= c_max (got {}..{})",
                self.min_community, self.max_community
            ));
        }
        if self.max_community > self.n {
            return fail(format!(
                "max community size {} exceeds n = {}",
                self.max_community, self.n
            ));
        }
        if self.max_degree == 0 || self.max_degree > self.n - 1 {
            return fail(format!(
                "max degree {} must lie in 1..=n-1 = {}",
                self.max_degree,
                self.n - 1
            ));
        }
        if !(0.0..=1.0).contains(&self.mixing) || self.mixing.is_nan() {
            return fail(format!("mixing {} is outside [0, 1]", self.mixing));
        }
        if self.overlap_count > self.n {
            return fail(format!(
                "overlap count {} exceeds n = {}",
                self.overlap_count, self.n
            ));
        }
        if self.overlap_count > 0 && self.overlap_memberships < 2 {
            return fail("overlapping vertices need at least 2 memberships".into());
        }
        for (name, value) in [
            ("degree exponent", self.degree_exponent),
            ("community exponent", self.community_exponent),
        ] {
            if !(value >= 1.0) || !value.is_finite() {
                return fail(format!("{name} must be a finite value >= 1 (got {value})"));
            }
        }
        if !(self.avg_degree >= 1.0) {
            return fail(format!("average degree {} must be >= 1", self.avg_degree));
        }
        Ok(())
    }

    /// Total membership slots: n plus the extra memberships of overlapping
    /// vertices.
    pub fn membership_total(&self) -> usize {
        if self.overlap_count == 0 {
            self.n
        } else {
            self.n + self.overlap_count * (self.overlap_memberships - 1)
        }
    }
}

/// Knobs of the wiring stage.
#[derive(Debug, Clone)]
pub struct LfrOptions {
    /// Largest fraction of stubs that may be dropped when unplaceable.
    pub stub_discard_tolerance: f64,
    /// Largest allowed |achieved − target| mixing deviation.
    pub mixing_tolerance: f64,
    /// Regenerations with a derived seed before giving up.
    pub max_retries: u32,
}

impl Default for LfrOptions {
    fn default() -> LfrOptions {
        LfrOptions {
            stub_discard_tolerance: 0.01,
            mixing_tolerance: 0.05,
            max_retries: 5,
        }
    }
}

/// A generated benchmark instance.
#[derive(Debug, Clone)]
pub struct LfrNetwork {
    pub graph: Graph,
    pub ground_truth: Cover,
    /// Realized fraction of edges whose endpoints share no community.
    pub achieved_mixing: f64,
}

/// `count` independent draws from `P(x) ∝ x^(−exponent)` on the integers
/// `lo..=hi`. The bounded support keeps the distribution proper for any
/// exponent down to 1 (the boundary community-size exponent).
pub fn sample_power_law<R: Rng>(
    count: usize,
    exponent: f64,
    lo: usize,
    hi: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if lo < 1 || lo > hi {
        return Err(Error::InvalidParameter(format!(
            "power-law support must satisfy 1 <= lo <= hi (got {lo}..{hi})"
        )));
    }
    if !(exponent >= 1.0) || !exponent.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "power-law exponent must be a finite value >= 1 (got {exponent})"
        )));
    }
    let mut cumulative = Vec::with_capacity(hi - lo + 1);
    let mut total = 0.0;
    for x in lo..=hi {
        total += (x as f64).powf(-exponent);
        cumulative.push(total);
    }
    Ok((0..count)
        .map(|_| {
            let target = rng.random::<f64>() * total;
            let idx = cumulative.partition_point(|&c| c <= target);
            lo + idx.min(hi - lo)
        })
        .collect())
}

/// Expected value of the bounded power law.
pub(crate) fn power_law_mean(exponent: f64, lo: usize, hi: usize) -> f64 {
    let mut weight = 0.0;
    let mut weighted = 0.0;
    for x in lo..=hi {
        let w = (x as f64).powf(-exponent);
        weight += w;
        weighted += x as f64 * w;
    }
    weighted / weight
}

/// Samples the degree sequence: the lower cutoff is the integer in
/// `1..=max_degree` whose expected mean is closest to the target average
/// degree, and the sum is forced even by decrementing one random entry.
pub fn sample_degree_sequence<R: Rng>(params: &LfrParams, rng: &mut R) -> Result<Vec<usize>> {
    let (mut best_lo, mut best_err) = (0usize, f64::INFINITY);
    for lo in 1..=params.max_degree {
        let err = (power_law_mean(params.degree_exponent, lo, params.max_degree)
            - params.avg_degree)
            .abs();
        if err < best_err {
            best_err = err;
            best_lo = lo;
        }
    }
    if best_err > 0.2 * params.avg_degree {
        return Err(Error::InvalidParameter(format!(
            "no degree cutoff reaches within 20% of average degree {} (closest mean misses by {best_err:.3})",
            params.avg_degree
        )));
    }
    let mut degrees = sample_power_law(
        params.n,
        params.degree_exponent,
        best_lo,
        params.max_degree,
        rng,
    )?;
    if degrees.iter().sum::<usize>() % 2 == 1 {
        let adjustable: Vec<usize> = (0..degrees.len())
            .filter(|&i| degrees[i] > best_lo)
            .collect();
        match adjustable.len() {
            0 => {
                return Err(Error::InvalidParameter(
                    "cannot make the degree sum even: every degree sits at the lower cutoff"
                        .into(),
                ));
            }
            len => degrees[adjustable[rng.random_range(0..len)]] -= 1,
        }
    }
    Ok(degrees)
}

/// Draws community sizes from the τ2 power law on
/// `min_community..=max_community` until they exactly sum to the membership
/// total, adjusting the final draw to close the gap; when the remaining gap
/// cannot be a legal size the sequence is resampled.
pub fn sample_community_sizes<R: Rng>(params: &LfrParams, rng: &mut R) -> Result<Vec<usize>> {
    let total = params.membership_total();
    if total < params.min_community {
        return Err(Error::InvalidParameter(format!(
            "membership total {total} is below the minimum community size {}",
            params.min_community
        )));
    }
    for _ in 0..1000 {
        let mut sizes = Vec::new();
        let mut sum = 0usize;
        loop {
            let draw = sample_power_law(
                1,
                params.community_exponent,
                params.min_community,
                params.max_community,
                rng,
            )?[0];
            if sum + draw < total {
                sum += draw;
                sizes.push(draw);
            } else if sum + draw == total {
                sizes.push(draw);
                return Ok(sizes);
            } else {
                // Close the gap exactly; gap < draw <= max_community.
                let gap = total - sum;
                if gap >= params.min_community {
                    sizes.push(gap);
                    return Ok(sizes);
                }
                break; // unclampable: resample the whole sequence
            }
        }
    }
    Err(Error::GenerationFailed(
        "community sizes failed to reach the membership total after 1000 attempts".into(),
    ))
}

/// Assigns memberships: `overlap_count` vertices drawn uniformly receive
/// `overlap_memberships` distinct communities, everyone else one. Slots are
/// matched at random; placements that repeat a (vertex, community) pair or
/// whose intra-community degree demand `(1−μ)·k_v` exceeds the smallest
/// host community's size − 1 are re-drawn by swapping slots.
pub fn assign_memberships<R: Rng>(
    sizes: &[usize],
    degrees: &[usize],
    params: &LfrParams,
    rng: &mut R,
) -> Result<Cover> {
    let n = params.n;
    assert_eq!(degrees.len(), n, "one degree per vertex");
    let total: usize = sizes.iter().sum();
    if total != params.membership_total() {
        return Err(Error::InvalidParameter(format!(
            "community sizes sum to {total}, expected membership total {}",
            params.membership_total()
        )));
    }

    let mut multiplicity = vec![1usize; n];
    let mut ids: Vec<usize> = (0..n).collect();
    shuffle_usizes(&mut ids, rng);
    for &v in ids.iter().take(params.overlap_count) {
        multiplicity[v] = params.overlap_memberships;
    }

    // Slot i of vertex v occupies positions offset[v]..offset[v+1] in the
    // flattened slot array; the community side is shuffled against it.
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + multiplicity[v];
    }
    let mut slots: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
        .collect();
    assert_eq!(slots.len(), total);
    shuffle_usizes(&mut slots, rng);

    let demand: Vec<usize> = degrees
        .iter()
        .map(|&k| round_half_up((1.0 - params.mixing) * k as f64))
        .collect();

    let violation = |slots: &[usize], v: usize| -> bool {
        let mine = &slots[offsets[v]..offsets[v + 1]];
        let mut seen = BTreeSet::new();
        for &c in mine {
            if !seen.insert(c) {
                return true; // duplicate membership
            }
            if sizes[c] < demand[v] + 1 {
                return true; // community too small for the internal quota
            }
        }
        false
    };

    let mut attempts = 0usize;
    'repair: loop {
        for v in 0..n {
            if violation(&slots, v) {
                if attempts >= 10_000 {
                    return Err(Error::GenerationFailed(format!(
                        "membership assignment failed after 10000 swaps: vertex {v} (degree {}, internal demand {}) cannot fit its communities — raise the minimum community size or the mixing parameter",
                        degrees[v], demand[v]
                    )));
                }
                attempts += 1;
                let mine = rng.random_range(offsets[v]..offsets[v + 1]);
                let other = rng.random_range(0..slots.len());
                slots.swap(mine, other);
                continue 'repair;
            }
        }
        break;
    }

    let memberships: Vec<Vec<usize>> = (0..n)
        .map(|v| slots[offsets[v]..offsets[v + 1]].to_vec())
        .collect();
    Cover::from_memberships(memberships)
}

/// Generates an LFR network with default wiring options.
pub fn generate(params: &LfrParams) -> Result<LfrNetwork> {
    generate_with(params, &LfrOptions::default())
}

/// Generates an LFR network. When the wiring stage misses the mixing target
/// or drops too many stubs, the whole pipeline is retried with a seed
/// derived from `params.seed` before reporting failure.
pub fn generate_with(params: &LfrParams, options: &LfrOptions) -> Result<LfrNetwork> {
    params.validate()?;
    let mut last = None;
    for attempt in 0..=options.max_retries as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(params.seed, attempt));
        match build_once(params, options, &mut rng) {
            Ok(network) => return Ok(network),
            Err(err @ Error::GenerationFailed(_)) => last = Some(err),
            Err(err) => return Err(err),
        }
    }
    Err(last.unwrap_or_else(|| Error::GenerationFailed("no attempt ran".into())))
}

fn build_once<R: Rng>(
    params: &LfrParams,
    options: &LfrOptions,
    rng: &mut R,
) -> Result<LfrNetwork> {
    let degrees = sample_degree_sequence(params, rng)?;
    let sizes = sample_community_sizes(params, rng)?;
    let cover = assign_memberships(&sizes, &degrees, params, rng)?;

    // Split each vertex's degree into an internal quota, apportioned over
    // its communities proportionally to (size − 1), and an external rest.
    let community_members = cover.communities();
    let mut internal_share: Vec<Vec<(usize, usize)>> = vec![Vec::new(); params.n];
    let mut external_stubs: Vec<usize> = Vec::new();
    for v in 0..params.n {
        let quota = round_half_up((1.0 - params.mixing) * degrees[v] as f64);
        let communities = cover.memberships(v);
        let shares = apportion(
            quota,
            &communities
                .iter()
                .map(|&c| (sizes[c] - 1) as f64)
                .collect::<Vec<_>>(),
        );
        for (&c, &s) in communities.iter().zip(&shares) {
            if s > 0 {
                internal_share[v].push((c, s));
            }
        }
        for _ in 0..degrees[v] - quota.min(degrees[v]) {
            external_stubs.push(v);
        }
    }

    let total_stubs: usize = degrees.iter().sum();
    let mut wiring = Wiring::new(params.n);

    // Intra-community wiring, one configuration-model pass per community.
    let mut discarded = 0usize;
    for (c, members) in community_members.iter().enumerate() {
        let mut stubs: Vec<usize> = Vec::new();
        for &v in members {
            if let Some(&(_, share)) = internal_share[v].iter().find(|&&(cc, _)| cc == c) {
                stubs.extend(std::iter::repeat_n(v, share));
            }
        }
        discarded += wiring.wire(stubs, WiringContext::Intra, &cover, rng);
    }
    // External wiring across communities.
    discarded += wiring.wire(external_stubs, WiringContext::Inter, &cover, rng);

    if total_stubs > 0 && discarded as f64 / total_stubs as f64 > options.stub_discard_tolerance
    {
        return Err(Error::GenerationFailed(format!(
            "{discarded} of {total_stubs} stubs were unplaceable (tolerance {})",
            options.stub_discard_tolerance
        )));
    }

    let graph = Graph::from_edges(&wiring.edges, Some(params.n))?;
    if graph.edge_count() == 0 {
        return Err(Error::GenerationFailed("wiring produced no edges".into()));
    }
    let inter = graph
        .edges()
        .filter(|&(u, v)| !cover.same_community(u, v))
        .count();
    let achieved_mixing = inter as f64 / graph.edge_count() as f64;
    if (achieved_mixing - params.mixing).abs() > options.mixing_tolerance {
        return Err(Error::GenerationFailed(format!(
            "achieved mixing {achieved_mixing:.4} misses target {} by more than {}",
            params.mixing, options.mixing_tolerance
        )));
    }
    Ok(LfrNetwork {
        graph,
        ground_truth: cover,
        achieved_mixing,
    })
}

/// Splits `quota` into integer shares proportional to `weights` (largest
/// remainder, ties to the earlier entry).
fn apportion(quota: usize, weights: &[f64]) -> Vec<usize> {
    let total: f64 = weights.iter().sum();
    if total <= 0.0 || quota == 0 {
        return vec![0; weights.len()];
    }
    let exact: Vec<f64> = weights.iter().map(|w| quota as f64 * w / total).collect();
    let mut shares: Vec<usize> = exact.iter().map(|&e| e.floor() as usize).collect();
    let leftover = quota - shares.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = exact[a] - exact[a].floor();
        let fb = exact[b] - exact[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for step in 0..leftover {
        shares[order[step % order.len()]] += 1;
    }
    shares
}

#[derive(Clone, Copy, PartialEq)]
enum WiringContext {
    /// Both endpoints inside one community (stubs are community-local).
    Intra,
    /// Endpoints must share no community.
    Inter,
}

/// Incremental simple-graph builder used by both wiring phases.
struct Wiring {
    adjacency: Vec<BTreeSet<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Wiring {
    fn new(n: usize) -> Wiring {
        Wiring {
            adjacency: vec![BTreeSet::new(); n],
            edges: Vec::new(),
        }
    }

    fn valid(&self, u: usize, v: usize, context: WiringContext, cover: &Cover) -> bool {
        u != v
            && !self.adjacency[u].contains(&v)
            && (context == WiringContext::Intra || !cover.same_community(u, v))
    }

    fn add(&mut self, u: usize, v: usize) -> usize {
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        self.edges.push((u.min(v), u.max(v)));
        self.edges.len() - 1
    }

    /// Configuration-model matching with rewiring repair. Shuffles the stub
    /// list and pairs consecutive entries; invalid pairs go to a leftover
    /// pool. Repair passes first retry direct pairing, then attempt degree-
    /// preserving edge swaps against edges placed in this context. Returns
    /// the number of stubs it had to discard.
    fn wire<R: Rng>(
        &mut self,
        mut stubs: Vec<usize>,
        context: WiringContext,
        cover: &Cover,
        rng: &mut R,
    ) -> usize {
        let mut local_edges: Vec<usize> = Vec::new(); // indices into self.edges
        let mut stale_rounds = 0;
        for _round in 0..100 {
            if stubs.len() < 2 {
                break;
            }
            shuffle_usizes(&mut stubs, rng);
            let mut leftover = Vec::new();
            for pair in stubs.chunks(2) {
                let [u, v] = *pair else {
                    leftover.extend_from_slice(pair);
                    continue;
                };
                if self.valid(u, v, context, cover) {
                    local_edges.push(self.add(u, v));
                } else if !self.try_swap(u, v, context, cover, &local_edges, rng) {
                    leftover.push(u);
                    leftover.push(v);
                }
            }
            if leftover.len() == stubs.len() {
                stale_rounds += 1;
                if stale_rounds >= 3 {
                    stubs = leftover;
                    break;
                }
            } else {
                stale_rounds = 0;
            }
            stubs = leftover;
        }
        stubs.len()
    }

    /// Places the stub pair (u, v) by breaking an existing edge (x, y) of
    /// the same context into (u, x) and (v, y); degrees are preserved.
    fn try_swap<R: Rng>(
        &mut self,
        u: usize,
        v: usize,
        context: WiringContext,
        cover: &Cover,
        local_edges: &[usize],
        rng: &mut R,
    ) -> bool {
        if local_edges.is_empty() {
            return false;
        }
        for _ in 0..32 {
            let idx = local_edges[rng.random_range(0..local_edges.len())];
            let (x, y) = self.edges[idx];
            let (a, b) = if rng.random_range(0..2) == 0 {
                (x, y)
            } else {
                (y, x)
            };
            // Removing (x, y) first also permits u == y / v == x cases.
            if u == a || v == b || (u, v) == (a, b) || (u, v) == (b, a) {
                continue;
            }
            self.adjacency[x].remove(&y);
            self.adjacency[y].remove(&x);
            if self.valid(u, a, context, cover) && self.valid(v, b, context, cover) {
                self.adjacency[u].insert(a);
                self.adjacency[a].insert(u);
                self.edges[idx] = (u.min(a), u.max(a));
                self.add(v, b);
                return true;
            }
            self.adjacency[x].insert(y);
            self.adjacency[y].insert(x);
        }
        false
    }
}

fn shuffle_usizes<R: Rng>(items: &mut [usize], rng: &mut R) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}
