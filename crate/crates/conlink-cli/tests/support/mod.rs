//! Shared helpers for the integration and acceptance suites: brute-force
//! oracles that recompute kernel quantities by definition (explicit walk
//! enumeration, spanning-tree/2-forest counting, Jacobi diagonalization)
//! plus random-graph construction and a runner for the compiled binary.
#![allow(dead_code)]

use std::process::{Command, Output};

use conlink::{DenseMatrix, Graph};
use rand::prelude::*;

/// Run the compiled `conlink` binary with the given arguments.
pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conlink"))
        .args(args)
        .output()
        .expect("failed to spawn conlink binary")
}

pub fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "conlink {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout not utf-8")
}

/// Random connected graph: a random spanning tree plus `extra` distinct
/// additional edges (fewer if the graph saturates).
pub fn random_connected_edges(rng: &mut impl Rng, n: usize, extra: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for k in 1..n {
        let a = order[k];
        let b = order[rng.gen_range(0..k)];
        edges.push((a.min(b), a.max(b)));
    }
    edges.sort_unstable();
    let max_edges = n * (n - 1) / 2;
    let target = (edges.len() + extra).min(max_edges);
    while edges.len() < target {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let e = (a.min(b), a.max(b));
        if let Err(pos) = edges.binary_search(&e) {
            edges.insert(pos, e);
        }
    }
    edges
}

/// Wrap raw index edges in a Graph with labels "1"..="n".
pub fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Graph::new(labels, edges).expect("oracle graph must be valid")
}

/// Number of walks of exactly length `r` from `start` to every node, by
/// explicit enumeration of each walk. Deliberately avoids any matrix
/// arithmetic so it checks the kernel rather than mirroring it.
pub fn walks_from(n: usize, edges: &[(usize, usize)], start: usize, r: usize) -> Vec<u64> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn go(adj: &[Vec<usize>], u: usize, left: usize, counts: &mut [u64]) {
        if left == 0 {
            counts[u] += 1;
            return;
        }
        for &v in &adj[u] {
            go(adj, v, left - 1, counts);
        }
    }
    let mut counts = vec![0u64; n];
    go(&adj, start, r, &mut counts);
    counts
}

/// Weighted walk sum sum_{r=2}^{p} alpha^r * (#walks of length r), for every
/// ordered pair, from the explicit enumerator.
pub fn walk_sum_oracle(n: usize, edges: &[(usize, usize)], alpha: f64, p: usize) -> Vec<Vec<f64>> {
    let mut h = vec![vec![0.0; n]; n];
    for r in 2..=p {
        let weight = alpha.powi(r as i32);
        for i in 0..n {
            let counts = walks_from(n, edges, i, r);
            for j in 0..n {
                h[i][j] += weight * counts[j] as f64;
            }
        }
    }
    h
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            self.parent[x] = self.find(self.parent[x]);
        }
        self.parent[x]
    }
    /// False if the edge would close a cycle.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Effective resistance of every pair by Kirchhoff's theorem: R(i,j) is the
/// number of spanning 2-forests separating i from j divided by the number of
/// spanning trees. Both counts come from explicit subset enumeration, so the
/// oracle shares no code path with the Laplacian solver it checks.
pub fn resistance_by_forests(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<f64>> {
    let mut trees = 0u64;
    let mut separating = vec![vec![0u64; n]; n];
    // Acyclic edge subsets of size n-1 span one tree; of size n-2 they span
    // exactly two trees, and the subset separates the pairs whose endpoints
    // fall in different ones. Recursion keeps a union-find per prefix so
    // cyclic branches prune early.
    fn grow(
        edges: &[(usize, usize)],
        from: usize,
        picked: usize,
        want: usize,
        dsu: &Dsu,
        out: &mut dyn FnMut(&mut Dsu),
    ) {
        if picked == want {
            let mut d = Dsu { parent: dsu.parent.clone() };
            out(&mut d);
            return;
        }
        if edges.len() - from < want - picked {
            return;
        }
        for k in from..edges.len() {
            let mut next = Dsu { parent: dsu.parent.clone() };
            if next.union(edges[k].0, edges[k].1) {
                grow(edges, k + 1, picked + 1, want, &next, out);
            }
        }
    }
    let root = Dsu::new(n);
    grow(edges, 0, 0, n - 1, &root, &mut |_| trees += 1);
    grow(edges, 0, 0, n - 2, &root, &mut |d| {
        for i in 0..n {
            for j in (i + 1)..n {
                if d.find(i) != d.find(j) {
                    separating[i][j] += 1;
                }
            }
        }
    });
    assert!(trees > 0, "oracle called on a disconnected graph");
    let mut r = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let val = separating[i][j] as f64 / trees as f64;
            r[i][j] = val;
            r[j][i] = val;
        }
    }
    r
}

/// Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations — an
/// independent check on the power-iteration estimate.
pub fn jacobi_max_eigenvalue(a: &DenseMatrix) -> f64 {
    let n = a.n();
    let mut m = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = a.get(i, j);
        }
    }
    let off = |m: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i][j] * m[i][j];
                }
            }
        }
        s
    };
    for _sweep in 0..100 {
        if off(&m) < 1e-22 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-14 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    (0..n).map(|i| m[i][i]).fold(f64::NEG_INFINITY, f64::max)
}
