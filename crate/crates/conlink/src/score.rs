//! Pair-scoring methods and deterministic ranking.
//!
//! Six scores over node pairs: the walk-sum score H (weighted count of walks
//! of length 2..p, or its closed form at infinite horizon), regular
//! equivalence sigma, effective conductance G = 1/R, and the three
//! neighborhood indices Jaccard, Adamic–Adar, and Resource Allocation.
//! A ranking sorts scores descending with a documented tie-break so that
//! equal inputs always produce byte-identical orderings.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Pair};
use crate::kernel::{
    adjacency_matrix, inverse_i_minus_alpha_a, resistance_matrix, walk_sum,
};

/// Significant decimal digits kept in scores. Ranking quantizes to this
/// precision before comparing, and emission prints exactly this precision,
/// so the order of a printed table can always be reproduced from its own
/// numbers: score differences below the 12th digit (typically symmetry
/// twins that are equal up to rounding noise) fall through to the
/// deterministic pair tie-break instead of depending on last-bit noise.
pub const SCORE_DIGITS: usize = 12;

/// Round to `SCORE_DIGITS` significant decimal digits (exactly, via decimal
/// formatting). Zero and non-finite values pass through.
pub fn quantize_score(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SCORE_DIGITS - 1, x)
        .parse()
        .expect("formatted float reparses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Walk-sum score: weighted walks of length 2..p between the pair.
    H,
    /// Effective conductance 1/R with unit resistors on edges.
    G,
    /// Regular equivalence: entry of (I - alpha*A)^-1.
    Sigma,
    /// Common neighbors over union of neighborhoods.
    Jaccard,
    /// Sum of 1/ln(degree) over common neighbors.
    AdamicAdar,
    /// Sum of 1/degree over common neighbors.
    ResourceAllocation,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::H,
        Method::G,
        Method::Sigma,
        Method::Jaccard,
        Method::AdamicAdar,
        Method::ResourceAllocation,
    ];

    /// Short names used by the CLI and in emitted tables.
    pub fn name(self) -> &'static str {
        match self {
            Method::H => "h",
            Method::G => "g",
            Method::Sigma => "sigma",
            Method::Jaccard => "j",
            Method::AdamicAdar => "ad",
            Method::ResourceAllocation => "ra",
        }
    }

    pub fn parse(s: &str) -> Result<Method> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Ok(Method::H),
            "g" => Ok(Method::G),
            "sigma" => Ok(Method::Sigma),
            "j" | "jaccard" => Ok(Method::Jaccard),
            "ad" | "adamic-adar" => Ok(Method::AdamicAdar),
            "ra" | "resource-allocation" => Ok(Method::ResourceAllocation),
            other => Err(Error::InvalidConfig(format!(
                "unknown method {other:?} (expected h, g, sigma, j, ad, or ra)"
            ))),
        }
    }

    /// Does this method use the walk series (and hence alpha, p, horizon)?
    pub fn uses_walks(self) -> bool {
        matches!(self, Method::H | Method::Sigma)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Horizon {
    Finite,
    Infinite,
}

impl Horizon {
    pub fn name(self) -> &'static str {
        match self {
            Horizon::Finite => "finite",
            Horizon::Infinite => "infinite",
        }
    }

    pub fn parse(s: &str) -> Result<Horizon> {
        match s.to_ascii_lowercase().as_str() {
            "finite" => Ok(Horizon::Finite),
            "infinite" | "inf" => Ok(Horizon::Infinite),
            other => Err(Error::InvalidConfig(format!(
                "unknown horizon {other:?} (expected finite or infinite)"
            ))),
        }
    }
}

/// Default walk weight per step: e^-2.
pub fn default_alpha() -> f64 {
    (-2.0f64).exp()
}

/// Default maximum walk length for the finite-horizon walk sum.
pub const DEFAULT_P: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreConfig {
    pub method: Method,
    /// Weight alpha applied per walk step (walk methods only).
    pub alpha: f64,
    /// Maximum walk length for the finite horizon (walk methods only).
    pub p: usize,
    /// Finite truncation or closed-form infinite sum (walk methods only).
    pub horizon: Horizon,
}

impl ScoreConfig {
    /// Defaults: alpha = e^-2, p = 10; H truncates (finite), sigma uses its
    /// closed form (infinite).
    pub fn new(method: Method) -> Self {
        let horizon = match method {
            Method::Sigma => Horizon::Infinite,
            _ => Horizon::Finite,
        };
        ScoreConfig { method, alpha: default_alpha(), p: DEFAULT_P, horizon }
    }

    pub fn with_p(mut self, p: usize) -> Self {
        self.p = p;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_horizon(mut self, horizon: Horizon) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.method.uses_walks() {
            if !(self.alpha > 0.0) || !self.alpha.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "alpha must be positive and finite, got {}",
                    self.alpha
                )));
            }
            if self.horizon == Horizon::Finite && self.p < 2 {
                return Err(Error::InvalidConfig(format!(
                    "finite horizon needs p >= 2, got {}",
                    self.p
                )));
            }
        }
        Ok(())
    }

    /// Compact one-line description, used in command echoes.
    pub fn describe(&self) -> String {
        if self.method.uses_walks() {
            match self.horizon {
                Horizon::Finite => {
                    format!("{}(alpha={:.6}, p={})", self.method, self.alpha, self.p)
                }
                Horizon::Infinite => {
                    format!("{}(alpha={:.6}, horizon=infinite)", self.method, self.alpha)
                }
            }
        } else {
            self.method.name().to_string()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Universe {
    Adjacent,
    Nonadjacent,
}

impl Universe {
    pub fn name(self) -> &'static str {
        match self {
            Universe::Adjacent => "adjacent",
            Universe::Nonadjacent => "nonadjacent",
        }
    }

    pub fn parse(s: &str) -> Result<Universe> {
        match s.to_ascii_lowercase().as_str() {
            "adjacent" => Ok(Universe::Adjacent),
            "nonadjacent" | "non-adjacent" => Ok(Universe::Nonadjacent),
            other => Err(Error::InvalidConfig(format!(
                "unknown universe {other:?} (expected adjacent or nonadjacent)"
            ))),
        }
    }

    pub fn pairs(self, g: &Graph) -> Vec<Pair> {
        match self {
            Universe::Adjacent => g.adjacent_pairs(),
            Universe::Nonadjacent => g.nonadjacent_pairs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairScore {
    pub pair: Pair,
    /// Score quantized to `SCORE_DIGITS` significant digits.
    pub score: f64,
    /// 1-based position in the ranking.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub config: ScoreConfig,
    pub universe: Universe,
    pub entries: Vec<PairScore>,
}

impl RankedList {
    pub fn rank_of(&self, pair: Pair) -> Option<usize> {
        let key = (pair.0.min(pair.1), pair.0.max(pair.1));
        self.entries.iter().find(|e| e.pair == key).map(|e| e.rank)
    }

    /// Map from pair to rank for bulk lookups.
    pub fn rank_index(&self) -> HashMap<Pair, usize> {
        self.entries.iter().map(|e| (e.pair, e.rank)).collect()
    }

    pub fn top(&self, k: usize) -> &[PairScore] {
        &self.entries[..k.min(self.entries.len())]
    }
}

/// Raw (unranked) scores for an explicit list of pairs. All pairs must be
/// distinct-node pairs within the graph.
pub fn raw_scores(g: &Graph, pairs: &[Pair], cfg: &ScoreConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let n = g.n();
    for &(i, j) in pairs {
        if i >= n || j >= n {
            return Err(Error::NodeOutOfRange { id: i.max(j), n });
        }
        if i == j {
            return Err(Error::InvalidConfig("cannot score a node against itself".into()));
        }
    }
    match cfg.method {
        Method::H => walk_scores(g, pairs, cfg, false),
        Method::Sigma => walk_scores(g, pairs, cfg, true),
        Method::G => {
            let r = resistance_matrix(g)?;
            Ok(pairs
                .iter()
                .map(|&(i, j)| {
                    let rij = r.get(i, j);
                    if rij.is_finite() {
                        1.0 / rij
                    } else {
                        0.0
                    }
                })
                .collect())
        }
        Method::Jaccard => Ok(pairs.iter().map(|&(i, j)| jaccard(g, i, j)).collect()),
        Method::AdamicAdar => Ok(pairs.iter().map(|&(i, j)| adamic_adar(g, i, j)).collect()),
        Method::ResourceAllocation => {
            Ok(pairs.iter().map(|&(i, j)| resource_allocation(g, i, j)).collect())
        }
    }
}

/// H and sigma share the walk machinery; sigma differs only by including the
/// r = 0 and r = 1 terms of the geometric series.
fn walk_scores(g: &Graph, pairs: &[Pair], cfg: &ScoreConfig, sigma: bool) -> Result<Vec<f64>> {
    let a = adjacency_matrix(g);
    match cfg.horizon {
        Horizon::Finite => {
            let s = walk_sum(&a, cfg.alpha, cfg.p)?;
            Ok(pairs
                .iter()
                .map(|&(i, j)| {
                    let mut v = s.get(i, j);
                    if sigma {
                        // Off-diagonal terms of I vanish; r = 1 contributes
                        // alpha for adjacent pairs.
                        v += cfg.alpha * a.get(i, j);
                    }
                    v
                })
                .collect())
        }
        Horizon::Infinite => {
            let inv = inverse_i_minus_alpha_a(&a, cfg.alpha)?;
            Ok(pairs
                .iter()
                .map(|&(i, j)| {
                    if sigma {
                        inv.get(i, j)
                    } else {
                        // Remove the r = 0 and r = 1 terms of the series;
                        // off-diagonal I contributes nothing, the direct edge
                        // contributes alpha.
                        inv.get(i, j) - cfg.alpha * a.get(i, j)
                    }
                })
                .collect())
        }
    }
}

fn jaccard(g: &Graph, i: usize, j: usize) -> f64 {
    let (inter, union) = inter_union(&g.neighbors(i).unwrap(), &g.neighbors(j).unwrap());
    if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    }
}

fn adamic_adar(g: &Graph, i: usize, j: usize) -> f64 {
    common_neighbors(g.neighbors(i).unwrap(), g.neighbors(j).unwrap())
        .map(|k| 1.0 / (g.degree(k) as f64).ln())
        .sum()
}

fn resource_allocation(g: &Graph, i: usize, j: usize) -> f64 {
    common_neighbors(g.neighbors(i).unwrap(), g.neighbors(j).unwrap())
        .map(|k| 1.0 / g.degree(k) as f64)
        .sum()
}

/// Sizes of intersection and union of two sorted id slices.
fn inter_union(a: &[usize], b: &[usize]) -> (usize, usize) {
    let mut ai = 0;
    let mut bi = 0;
    let mut inter = 0;
    let mut union = 0;
    while ai < a.len() && bi < b.len() {
        union += 1;
        match a[ai].cmp(&b[bi]) {
            Ordering::Equal => {
                inter += 1;
                ai += 1;
                bi += 1;
            }
            Ordering::Less => ai += 1,
            Ordering::Greater => bi += 1,
        }
    }
    union += a.len() - ai + b.len() - bi;
    (inter, union)
}

/// Members of the intersection of two sorted id slices.
fn common_neighbors<'a>(
    a: &'a [usize],
    b: &'a [usize],
) -> impl Iterator<Item = usize> + 'a {
    let mut ai = 0;
    let mut bi = 0;
    std::iter::from_fn(move || {
        while ai < a.len() && bi < b.len() {
            match a[ai].cmp(&b[bi]) {
                Ordering::Equal => {
                    let k = a[ai];
                    ai += 1;
                    bi += 1;
                    return Some(k);
                }
                Ordering::Less => ai += 1,
                Ordering::Greater => bi += 1,
            }
        }
        None
    })
}

/// Deterministic ranking: quantize scores to `SCORE_DIGITS` significant
/// digits, sort descending, break ties by lexicographic (i, j) ascending,
/// assign 1-based ranks.
pub fn rank(config: ScoreConfig, universe: Universe, scored: Vec<(Pair, f64)>) -> RankedList {
    let mut entries: Vec<PairScore> = scored
        .into_iter()
        .map(|(pair, s)| PairScore { pair, score: quantize_score(s), rank: 0 })
        .collect();
    entries.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.pair.cmp(&b.pair))
    });
    for (idx, e) in entries.iter_mut().enumerate() {
        e.rank = idx + 1;
    }
    RankedList { config, universe, entries }
}

/// Score one pair universe of a graph and rank it.
pub fn score(g: &Graph, universe: Universe, cfg: &ScoreConfig) -> Result<RankedList> {
    let pairs = universe.pairs(g);
    let raw = raw_scores(g, &pairs, cfg)?;
    Ok(rank(cfg.clone(), universe, pairs.into_iter().zip(raw).collect()))
}
