//! Numeric core shared by the scorers: walk-count power sums, dominant
//! eigenvalue estimation, the resolvent inverse (I - alpha*A)^-1, and
//! effective resistance of the graph viewed as a network of unit resistors.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::DenseMatrix;

/// The numeric tolerances, collected in one place.
pub mod tol {
    /// Power-iteration stopping residual for ||A v - lambda v||.
    pub const EIGEN_RESIDUAL: f64 = 1e-10;
    /// Iteration cap for the eigenvalue estimate.
    pub const EIGEN_MAX_ITER: usize = 50_000;
    /// Maximum accepted asymmetry in matrices that should be symmetric.
    pub const SYMMETRY: f64 = 1e-8;
    /// Guard band on the series convergence test: the closed form is refused
    /// when alpha * lambda_max >= 1 - GUARD, absorbing eigen-estimate error.
    pub const CONVERGENCE_GUARD: f64 = 1e-6;
}

/// Adjacency matrix of the graph: symmetric 0/1 with zero diagonal.
pub fn adjacency_matrix(g: &Graph) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(g.n());
    for &(i, j) in g.edges() {
        a.set(i, j, 1.0);
        a.set(j, i, 1.0);
    }
    a
}

/// Sum of (alpha * A)^r for r = 2..=p, by iterated multiply-accumulate: one
/// running power is advanced and folded into the accumulator, so only two
/// matrices are ever alive.
pub fn walk_sum(a: &DenseMatrix, alpha: f64, p: usize) -> Result<DenseMatrix> {
    if p < 2 {
        return Err(Error::InvalidConfig(format!(
            "walk sum needs p >= 2, got {p}"
        )));
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "walk weight alpha must be positive, got {alpha}"
        )));
    }
    let mut x = a.clone();
    x.scale(alpha);
    let mut power = x.matmul(&x); // (alpha A)^2
    let mut sum = power.clone();
    for _ in 3..=p {
        power = power.matmul(&x);
        sum.add_assign(&power);
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    pub lambda_max: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Largest eigenvalue of a symmetric nonnegative matrix by power iteration.
///
/// Iterates on A + I rather than A: for bipartite graphs the spectrum is
/// symmetric (+-lambda), so plain power iteration oscillates without
/// converging, while the shift makes lambda_max + 1 strictly dominant.
/// The start vector is the normalized all-ones vector (deterministic, and
/// never orthogonal to the nonnegative dominant eigenvector). The residual
/// reported is ||A v - lambda v|| for the unshifted matrix with ||v|| = 1.
pub fn dominant_eigenvalue(
    a: &DenseMatrix,
    tolerance: f64,
    max_iter: usize,
) -> Result<SpectralEstimate> {
    let n = a.n();
    if n == 0 {
        return Ok(SpectralEstimate { lambda_max: 0.0, iterations: 0, residual: 0.0 });
    }
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        let av = a.matvec(&v);
        // Rayleigh quotient of the unshifted matrix (v is unit length).
        let lambda = dot(&v, &av);
        residual = norm(&sub_scaled(&av, lambda, &v));
        if residual <= tolerance {
            return Ok(SpectralEstimate { lambda_max: lambda, iterations: it, residual });
        }
        // One shifted step: w = (A + I) v = Av + v.
        let mut w = av;
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi += *vi;
        }
        let wn = norm(&w);
        if wn == 0.0 {
            // (A + I) v = 0 cannot happen for nonnegative A with nonnegative
            // start, but guard against misuse with arbitrary matrices.
            return Err(Error::NumericFault("power iteration hit a zero vector".into()));
        }
        for wi in &mut w {
            *wi /= wn;
        }
        v = w;
    }
    Err(Error::NoConvergence { iterations: max_iter, residual })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn sub_scaled(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - s * y).collect()
}

/// (I - alpha*A)^-1, defined only while the geometric series converges.
/// Refuses to compute when alpha * lambda_max is not safely below 1: the
/// algebraic inverse may still exist there, but it no longer equals the walk
/// series the callers are approximating.
pub fn inverse_i_minus_alpha_a(a: &DenseMatrix, alpha: f64) -> Result<DenseMatrix> {
    let est = dominant_eigenvalue(a, tol::EIGEN_RESIDUAL, tol::EIGEN_MAX_ITER)?;
    let alpha_lambda = alpha * est.lambda_max;
    if alpha_lambda >= 1.0 - tol::CONVERGENCE_GUARD {
        return Err(Error::Divergent { alpha_lambda });
    }
    let n = a.n();
    let mut m = DenseMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j) - alpha * a.get(i, j);
            m.set(i, j, v);
        }
    }
    let inv = m.inverse()?;
    let asym = inv.max_asymmetry();
    if asym > tol::SYMMETRY {
        return Err(Error::NumericFault(format!(
            "inverse of symmetric matrix came out asymmetric by {asym:.3e}"
        )));
    }
    Ok(inv)
}

/// Effective resistance between nodes i and j when every edge is a 1-ohm
/// resistor. Infinite when i and j lie in different components. Computed by
/// grounding node j: delete its row and column from the component Laplacian
/// and solve for a unit current injected at i; the potential at i is R.
pub fn effective_resistance(g: &Graph, i: usize, j: usize) -> Result<f64> {
    let n = g.n();
    if i >= n || j >= n {
        return Err(Error::NodeOutOfRange { id: i.max(j), n });
    }
    if i == j {
        return Err(Error::InvalidConfig(
            "effective resistance needs two distinct nodes".into(),
        ));
    }
    let comps = g.connected_components();
    let comp = comps
        .iter()
        .find(|c| c.binary_search(&i).is_ok())
        .expect("every node lies in a component");
    if comp.binary_search(&j).is_err() {
        return Ok(f64::INFINITY);
    }
    // Positions within the component, skipping the grounded node j.
    let mut pos = vec![usize::MAX; n];
    let mut k = 0;
    for &u in comp {
        if u != j {
            pos[u] = k;
            k += 1;
        }
    }
    let lg = grounded_laplacian(g, comp, &pos, k);
    let lu = lg.lu()?;
    let mut rhs = vec![0.0; k];
    rhs[pos[i]] = 1.0;
    let x = lu.solve(&rhs);
    Ok(x[pos[i]])
}

/// All-pairs effective resistance, infinity across components, zero on the
/// diagonal. One grounded solve per component instead of one per pair: with
/// X the inverse of the Laplacian missing the ground row/column,
/// R(i, j) = X_ii + X_jj - 2 X_ij and R(ground, i) = X_ii.
pub fn resistance_matrix(g: &Graph) -> Result<DenseMatrix> {
    let n = g.n();
    let mut r = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                r.set(i, j, f64::INFINITY);
            }
        }
    }
    for comp in g.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        let ground = comp[0];
        let mut pos = vec![usize::MAX; n];
        let mut k = 0;
        for &u in &comp {
            if u != ground {
                pos[u] = k;
                k += 1;
            }
        }
        let lg = grounded_laplacian(g, &comp, &pos, k);
        let x = lg.inverse()?;
        for (ci, &u) in comp.iter().enumerate() {
            for &v in comp.iter().skip(ci + 1) {
                let ruv = if u == ground {
                    x.get(pos[v], pos[v])
                } else if v == ground {
                    x.get(pos[u], pos[u])
                } else {
                    x.get(pos[u], pos[u]) + x.get(pos[v], pos[v]) - 2.0 * x.get(pos[u], pos[v])
                };
                r.set(u, v, ruv);
                r.set(v, u, ruv);
            }
        }
    }
    Ok(r)
}

/// Component Laplacian with one node's row and column removed. `pos` maps
/// node id to its reduced index; the grounded node maps to usize::MAX.
fn grounded_laplacian(g: &Graph, comp: &[usize], pos: &[usize], k: usize) -> DenseMatrix {
    let mut lg = DenseMatrix::zeros(k);
    for &u in comp {
        if pos[u] == usize::MAX {
            continue;
        }
        lg.set(pos[u], pos[u], g.degree(u) as f64);
        for &v in g.neighbors(u).expect("component member in range") {
            if pos[v] != usize::MAX {
                let cur = lg.get(pos[u], pos[v]);
                lg.set(pos[u], pos[v], cur - 1.0);
            }
        }
    }
    lg
}
