//! Destruction/restoration protocol: remove the m best-ranked existing links
//! under one scoring method, re-rank the damaged graph's absent pairs under
//! another, and measure how well the removed links resurface.
//!
//! Two evaluation scenarios share one computation. Scenario one keeps
//! creating links in ranked order until every removed link is back; the cost
//! is m_plus, the worst post-damage rank of a removed link, summarized by the
//! quality Q. Scenario two creates exactly m links; K of them coincide with
//! removed links, summarized by eta = K/m.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generate::{generate, GeneratorConfig};
use crate::graph::{Graph, Pair};
use crate::score::{score, PairScore, ScoreConfig, Universe};

#[derive(Debug, Clone, PartialEq)]
pub struct DamageRecord {
    /// Method and parameters used to pick the removed links.
    pub removal: ScoreConfig,
    pub m: usize,
    /// The removed links with their pre-removal ranks 1..=m.
    pub removed: Vec<PairScore>,
    pub damaged: Graph,
    /// Edge count of the undamaged graph.
    pub original_edge_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Create links until all removed ones are restored.
    One,
    /// Create exactly m links.
    Two,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::One => "1",
            Scenario::Two => "2",
        }
    }

    pub fn parse(s: &str) -> Result<Scenario> {
        match s {
            "1" | "one" => Ok(Scenario::One),
            "2" | "two" => Ok(Scenario::Two),
            other => Err(Error::InvalidConfig(format!(
                "unknown scenario {other:?} (expected 1 or 2)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestorationReport {
    /// Method and parameters used to rank candidate links.
    pub creation: ScoreConfig,
    pub scenario: Scenario,
    /// Rank of each removed link among the damaged graph's nonadjacent
    /// pairs, parallel to `DamageRecord::removed`.
    pub post_ranks: Vec<usize>,
    /// Worst post-damage rank: links created in scenario one.
    pub m_plus: usize,
    /// Removed links among the top-m created in scenario two.
    pub k: usize,
    /// Scenario-one quality.
    pub q: f64,
    /// Scenario-two quality K/m.
    pub eta: f64,
}

/// Remove the top-m existing links in one shot: ranks are computed once on
/// the intact graph and the m best are removed together (no re-scoring
/// between removals).
pub fn damage(g: &Graph, removal_cfg: &ScoreConfig, m: usize) -> Result<DamageRecord> {
    if m >= g.edge_count() {
        return Err(Error::InvalidConfig(format!(
            "cannot remove {m} of {} links",
            g.edge_count()
        )));
    }
    let ranked = score(g, Universe::Adjacent, removal_cfg)?;
    let removed: Vec<PairScore> = ranked.entries[..m].to_vec();
    let pairs: Vec<Pair> = removed.iter().map(|e| e.pair).collect();
    let damaged = g.remove_edges(&pairs)?;
    Ok(DamageRecord {
        removal: removal_cfg.clone(),
        m,
        removed,
        damaged,
        original_edge_count: g.edge_count(),
    })
}

/// Scenario-one restoration quality.
///
/// `m_total` is the number of all possible links N(N-1)/2, `m` the removed
/// count, `m_plus_edges` the undamaged edge count, and `m_plus_rank` the
/// number of links created before all removed ones are restored. The first
/// factor is the damaged graph's unconnected-pair count over its restored
/// target size; the second penalizes creations beyond the minimum m.
pub fn quality_q(
    m_total: usize,
    m: usize,
    m_plus_edges: usize,
    m_plus_rank: usize,
) -> Result<f64> {
    if m_plus_edges == 0 || m_plus_rank == 0 {
        return Err(Error::InvalidConfig(
            "quality needs a positive edge count and restoration rank".into(),
        ));
    }
    if m == 0 {
        return Err(Error::InvalidConfig("quality undefined for m = 0".into()));
    }
    debug_assert!(m_plus_rank >= m, "cannot restore m links in fewer than m creations");
    let unconnected = (m_total + m - m_plus_edges) as f64;
    Ok(unconnected / m_plus_edges as f64 * (m as f64 / m_plus_rank as f64))
}

/// Rank the damaged graph's nonadjacent pairs under the creation config and
/// derive every restoration statistic from the removed links' ranks there.
fn evaluate(
    rec: &DamageRecord,
    creation_cfg: &ScoreConfig,
    scenario: Scenario,
) -> Result<RestorationReport> {
    if rec.m == 0 {
        return Err(Error::InvalidConfig(
            "restoration needs at least one removed link".into(),
        ));
    }
    let ranked = score(&rec.damaged, Universe::Nonadjacent, creation_cfg)?;
    let index = ranked.rank_index();
    let mut post_ranks = Vec::with_capacity(rec.m);
    for e in &rec.removed {
        let r = index.get(&e.pair).copied().ok_or_else(|| {
            Error::NumericFault(format!(
                "removed pair ({}, {}) missing from the damaged nonadjacent universe",
                e.pair.0, e.pair.1
            ))
        })?;
        post_ranks.push(r);
    }
    let m_plus = post_ranks.iter().copied().max().unwrap_or(0);
    let k = post_ranks.iter().filter(|&&r| r <= rec.m).count();
    let m_total = rec.damaged.total_possible_links();
    let q = quality_q(m_total, rec.m, rec.original_edge_count, m_plus)?;
    let eta = k as f64 / rec.m as f64;
    Ok(RestorationReport {
        creation: creation_cfg.clone(),
        scenario,
        post_ranks,
        m_plus,
        k,
        q,
        eta,
    })
}

/// Scenario one: links are created in ranked order until all removed ones
/// are restored; reports m_plus and Q (the full report also carries K and
/// eta since they come from the same ranking).
pub fn restore_scenario_one(
    rec: &DamageRecord,
    creation_cfg: &ScoreConfig,
) -> Result<RestorationReport> {
    evaluate(rec, creation_cfg, Scenario::One)
}

/// Scenario two: exactly m links are created; K of them were removed links,
/// scoring eta = K/m.
pub fn restore_scenario_two(
    rec: &DamageRecord,
    creation_cfg: &ScoreConfig,
) -> Result<RestorationReport> {
    evaluate(rec, creation_cfg, Scenario::Two)
}

/// One cell of the experiment grid: removal method crossed with creation
/// method, averaged over the valid realizations.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub mean_q: f64,
    pub std_q: f64,
    pub mean_eta: f64,
    pub std_eta: f64,
    /// Realizations that produced a value for this cell; failures (for
    /// example a divergent closed-form score on one realization) are skipped
    /// and visible as n_valid below the realization count.
    pub n_valid: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentGrid {
    pub generator: GeneratorConfig,
    pub m: usize,
    pub realizations: usize,
    pub base_seed: u64,
    pub removal_methods: Vec<ScoreConfig>,
    pub creation_methods: Vec<ScoreConfig>,
    /// cells[r][c] pairs removal_methods[r] with creation_methods[c].
    pub cells: Vec<Vec<GridCell>>,
}

/// Derive the seed for realization `idx` from the base seed. SplitMix64 over
/// a golden-ratio stride: cheap, stateless, and scrambles consecutive
/// indices into unrelated streams.
pub fn realization_seed(base_seed: u64, idx: u64) -> u64 {
    let mut z = base_seed
        .wrapping_add(idx.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Full removal-method x creation-method grid over generated realizations.
///
/// Every realization generates one graph from a seed derived from
/// (base_seed, index), damages it once per removal method, and evaluates
/// every creation method against each damage record. Realizations run in
/// parallel; aggregation folds them in index order, so the result does not
/// depend on scheduling.
pub fn run_grid(
    gen_cfg: &GeneratorConfig,
    methods: &[ScoreConfig],
    m: usize,
    realizations: usize,
    base_seed: u64,
) -> Result<ExperimentGrid> {
    if realizations == 0 {
        return Err(Error::InvalidConfig("need at least one realization".into()));
    }
    if methods.is_empty() {
        return Err(Error::InvalidConfig("need at least one method".into()));
    }
    gen_cfg.validate()?;
    let k = methods.len();
    // Per realization: k x k of Option<(q, eta)>.
    let per_real: Vec<Vec<Vec<Option<(f64, f64)>>>> = (0..realizations)
        .into_par_iter()
        .map(|r| {
            let seed = realization_seed(base_seed, r as u64);
            let cfg = gen_cfg.with_seed(seed);
            let mut table = vec![vec![None; k]; k];
            let graph = match generate(&cfg) {
                Ok(g) => g,
                Err(_) => return table,
            };
            for (ri, removal) in methods.iter().enumerate() {
                let rec = match damage(&graph, removal, m) {
                    Ok(rec) => rec,
                    Err(_) => continue,
                };
                for (ci, creation) in methods.iter().enumerate() {
                    if let Ok(report) = evaluate(&rec, creation, Scenario::One) {
                        table[ri][ci] = Some((report.q, report.eta));
                    }
                }
            }
            table
        })
        .collect();

    let cells: Vec<Vec<GridCell>> = (0..k)
        .map(|ri| {
            (0..k)
                .map(|ci| {
                    let values: Vec<(f64, f64)> =
                        per_real.iter().filter_map(|t| t[ri][ci]).collect();
                    aggregate(&values)
                })
                .collect()
        })
        .collect();

    Ok(ExperimentGrid {
        generator: gen_cfg.clone(),
        m,
        realizations,
        base_seed,
        removal_methods: methods.to_vec(),
        creation_methods: methods.to_vec(),
        cells,
    })
}

/// Mean and population standard deviation of the q and eta samples.
fn aggregate(values: &[(f64, f64)]) -> GridCell {
    let n = values.len();
    if n == 0 {
        return GridCell { mean_q: 0.0, std_q: 0.0, mean_eta: 0.0, std_eta: 0.0, n_valid: 0 };
    }
    let nf = n as f64;
    let mean_q = values.iter().map(|v| v.0).sum::<f64>() / nf;
    let mean_eta = values.iter().map(|v| v.1).sum::<f64>() / nf;
    let var_q = values.iter().map(|v| (v.0 - mean_q).powi(2)).sum::<f64>() / nf;
    let var_eta = values.iter().map(|v| (v.1 - mean_eta).powi(2)).sum::<f64>() / nf;
    GridCell {
        mean_q,
        std_q: var_q.sqrt(),
        mean_eta,
        std_eta: var_eta.sqrt(),
        n_valid: n,
    }
}
