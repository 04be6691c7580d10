use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{members, set_len, Graph};
use crate::structure::components;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1_000_000;
/// Default gap below which two spectral radii are reported as indistinguishable.
pub const DEFAULT_MARGIN: f64 = 1e-9;

/// Spectral radius and unit Perron vector of an adjacency matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerronData {
    pub rho: f64,
    /// Unit 2-norm, entrywise non-negative; zero off the component that
    /// attains `rho`.
    pub x: Vec<f64>,
    /// `‖A x − ρ x‖_∞`.
    pub residual: f64,
    pub iterations: usize,
}

impl PerronData {
    /// Index of the largest entry (lowest index among exact ties).
    pub fn extremal_vertex(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.x.iter().enumerate() {
            if v > self.x[best] {
                best = i;
            }
        }
        best
    }

    /// Vertices ordered by decreasing entry, ties by index.
    pub fn ranking(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.x.len()).collect();
        idx.sort_by(|&a, &b| self.x[b].total_cmp(&self.x[a]).then(a.cmp(&b)));
        idx
    }
}

/// Shifted power iteration on `A + I` restricted to one component.
///
/// The shift makes `ρ + 1` strictly dominant in modulus even for bipartite
/// components, where `−ρ` is also an eigenvalue of `A`. Starting from the
/// degree vector (positive on a connected component) every iterate stays
/// positive.
fn component_perron(
    nbrs: &[Vec<usize>],
    verts: &[usize],
    tol: f64,
    max_iter: usize,
) -> std::result::Result<(f64, Vec<(usize, f64)>, f64, usize), (usize, f64)> {
    let k = verts.len();
    if k == 1 {
        return Ok((0.0, vec![(verts[0], 1.0)], 0.0, 0));
    }
    // local indexing
    let mut local = vec![usize::MAX; nbrs.len()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| nbrs[v].iter().map(|&w| local[w]).collect())
        .collect();

    let mut x: Vec<f64> = adj.iter().map(|a| a.len() as f64).collect();
    normalize(&mut x);
    let mut ax = vec![0.0; k];
    let mut best = f64::INFINITY;
    for it in 1..=max_iter {
        for (i, a) in adj.iter().enumerate() {
            ax[i] = a.iter().map(|&j| x[j]).sum();
        }
        let rho: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(xi, axi)| (axi - rho * xi).abs())
            .fold(0.0, f64::max);
        best = best.min(residual);
        if residual <= tol {
            let out = verts.iter().copied().zip(x.iter().copied()).collect();
            return Ok((rho, out, residual, it));
        }
        for i in 0..k {
            x[i] += ax[i];
        }
        normalize(&mut x);
    }
    Err((max_iter, best))
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in x {
        *v /= norm;
    }
}

/// Spectral radius and Perron vector with `‖Ax − ρx‖_∞ ≤ tol`.
///
/// Disconnected input is solved per component; `rho` is the maximum and
/// the vector is supported on the first component attaining it.
pub fn perron(g: &Graph, tol: f64) -> Result<PerronData> {
    perron_with_cap(g, tol, MAX_ITERATIONS)
}

pub fn perron_with_cap(g: &Graph, tol: f64, max_iter: usize) -> Result<PerronData> {
    let n = g.order();
    if n == 0 {
        return Ok(PerronData {
            rho: 0.0,
            x: Vec::new(),
            residual: 0.0,
            iterations: 0,
        });
    }
    let nbrs: Vec<Vec<usize>> = (0..n).map(|u| members(g.neighbors(u)).collect()).collect();
    let mut best: Option<(f64, Vec<(usize, f64)>, f64, usize)> = None;
    let mut total_iters = 0;
    for comp in components(g) {
        // a component of order k has ρ ≤ k − 1
        if let Some((rho, ..)) = &best {
            if (set_len(comp) as f64 - 1.0) <= *rho {
                continue;
            }
        }
        let verts: Vec<usize> = members(comp).collect();
        let (rho, entries, residual, iters) =
            component_perron(&nbrs, &verts, tol, max_iter).map_err(|(iterations, best_residual)| {
                Error::NonConvergence {
                    iterations,
                    best_residual,
                }
            })?;
        total_iters += iters;
        if best.as_ref().is_none_or(|b| rho > b.0) {
            best = Some((rho, entries, residual, iters));
        }
    }
    let (rho, entries, residual, _) = best.expect("non-empty graph has a component");
    let mut x = vec![0.0; n];
    for (v, val) in entries {
        x[v] = val;
    }
    Ok(PerronData {
        rho,
        x,
        residual,
        iterations: total_iters,
    })
}

/// Outcome of comparing two spectral radii with an explicit margin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoOrder {
    Greater,
    Less,
    Indistinguishable,
}

/// `Greater` iff `a − b > margin`, `Less` iff `b − a > margin`.
pub fn compare_rho(a: f64, b: f64, margin: f64) -> RhoOrder {
    if a - b > margin {
        RhoOrder::Greater
    } else if b - a > margin {
        RhoOrder::Less
    } else {
        RhoOrder::Indistinguishable
    }
}
