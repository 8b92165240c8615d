//! Random-graph generators: Barabási–Albert preferential attachment and
//! Erdős–Rényi. Both are deterministic functions of their seed; nodes are
//! labeled "1".."n".

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Pair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Ba,
    Er,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub kind: GeneratorKind,
    /// Target node count.
    pub n: usize,
    /// BA: seed-network size (a ring of m0 nodes, or a single edge for m0=2).
    pub m0: usize,
    /// BA: links added per new node.
    pub m_attach: usize,
    /// ER: independent edge probability.
    pub p_edge: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn ba(n: usize, m0: usize, m_attach: usize, seed: u64) -> Self {
        GeneratorConfig { kind: GeneratorKind::Ba, n, m0, m_attach, p_edge: 0.0, seed }
    }

    pub fn er(n: usize, p_edge: f64, seed: u64) -> Self {
        GeneratorConfig { kind: GeneratorKind::Er, n, m0: 0, m_attach: 0, p_edge, seed }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            GeneratorKind::Ba => {
                if self.m0 < 2 {
                    return Err(Error::InvalidConfig(
                        "ba: seed size m0 must be at least 2".into(),
                    ));
                }
                if self.m0 >= self.n {
                    return Err(Error::InvalidConfig(format!(
                        "ba: m0 ({}) must be smaller than n ({})",
                        self.m0, self.n
                    )));
                }
                if self.m_attach == 0 || self.m_attach > self.m0 {
                    return Err(Error::InvalidConfig(format!(
                        "ba: m_attach ({}) must be in 1..=m0 ({})",
                        self.m_attach, self.m0
                    )));
                }
            }
            GeneratorKind::Er => {
                if self.n == 0 {
                    return Err(Error::InvalidConfig("er: n must be positive".into()));
                }
                if !(0.0..=1.0).contains(&self.p_edge) || self.p_edge.is_nan() {
                    return Err(Error::InvalidConfig(format!(
                        "er: p_edge ({}) must lie in [0, 1]",
                        self.p_edge
                    )));
                }
            }
        }
        Ok(())
    }

    /// A copy of the config with a different seed (used by the experiment
    /// driver to derive per-realization seeds).
    pub fn with_seed(&self, seed: u64) -> Self {
        let mut c = self.clone();
        c.seed = seed;
        c
    }
}

/// Generate a graph per the config. Equal configs (seed included) produce
/// identical graphs.
pub fn generate(cfg: &GeneratorConfig) -> Result<Graph> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let edges = match cfg.kind {
        GeneratorKind::Ba => ba_edges(cfg.n, cfg.m0, cfg.m_attach, &mut rng),
        GeneratorKind::Er => er_edges(cfg.n, cfg.p_edge, &mut rng),
    };
    let labels = (1..=cfg.n).map(|i| i.to_string()).collect();
    Graph::new(labels, &edges)
}

/// Preferential attachment: start from a ring of m0 nodes (a single edge when
/// m0 = 2), then attach each new node to m_attach distinct existing nodes,
/// each drawn with probability proportional to current degree. Draws that hit
/// an already-chosen target are rejected and redrawn, keeping the graph
/// simple.
fn ba_edges(n: usize, m0: usize, m_attach: usize, rng: &mut ChaCha8Rng) -> Vec<Pair> {
    let mut edges: Vec<Pair> = Vec::with_capacity(m0 + (n - m0) * m_attach);
    let mut degree = vec![0usize; n];
    let mut degree_sum = 0usize;
    let mut add = |a: usize, b: usize, degree: &mut [usize], degree_sum: &mut usize| {
        edges.push((a.min(b), a.max(b)));
        degree[a] += 1;
        degree[b] += 1;
        *degree_sum += 2;
    };
    if m0 == 2 {
        add(0, 1, &mut degree, &mut degree_sum);
    } else {
        for i in 0..m0 {
            add(i, (i + 1) % m0, &mut degree, &mut degree_sum);
        }
    }
    let mut targets: Vec<usize> = Vec::with_capacity(m_attach);
    for new in m0..n {
        targets.clear();
        while targets.len() < m_attach {
            // Roulette-wheel draw over current degrees of existing nodes.
            let mut ticket = rng.gen_range(0..degree_sum);
            let mut chosen = usize::MAX;
            for (j, &d) in degree.iter().enumerate().take(new) {
                if ticket < d {
                    chosen = j;
                    break;
                }
                ticket -= d;
            }
            debug_assert!(chosen != usize::MAX, "degree walk overran the wheel");
            if !targets.contains(&chosen) {
                targets.push(chosen);
            }
        }
        // degree_sum must not shift while drawing this node's targets, so
        // edges are added only after all m_attach draws.
        for &t in &targets {
            add(new, t, &mut degree, &mut degree_sum);
        }
    }
    edges
}

/// Each of the N(N-1)/2 pairs is an edge independently with probability p.
/// Pairs are visited in lexicographic order so the draw sequence is part of
/// the deterministic contract.
fn er_edges(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<Pair> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    edges
}
