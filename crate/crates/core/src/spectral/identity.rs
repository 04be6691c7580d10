//! Two-step walk identity at a vertex and the edge bound it yields.
//!
//! For an eigenpair `(ρ, x)` and a vertex `u`:
//!
//! ```text
//! ρ² x_u = d(u) x_u + Σ_{v ∈ N₊(u)} d_{N(u)}(v) x_v + Σ_{w ∈ N²(u)} d_{N(u)}(w) x_w
//! ```
//!
//! Subtracting `ρ x_u = Σ_{v ∈ N(u)} x_v`, bounding `x_w ≤ x_u`, and using
//! `m = |N(u)| + e(N₊(u)) + e(N(u), W) + e(W)` gives, whenever
//! `ρ² − ρ > m − 2` and `u` carries the largest Perron entry,
//!
//! ```text
//! e(W) < Σ_{v ∈ N₊}(d_{N(u)}(v) − 1) x_v/x_u − e(N₊) + 2 − Σ_{v ∈ N₀} x_v/x_u
//!      ≤ e(N₊) − |N₊| + 2 − Σ_{v ∈ N₀} x_v/x_u.
//! ```

use serde::{Deserialize, Serialize};

use crate::forbidden::classify_neighborhood;
use crate::graph::{members, set_len, Graph};
use crate::spectral::perron::PerronData;
use crate::structure::second_neighborhood;

/// `|ρ² x_u − (right-hand side)| / x_u`.
pub fn walk_identity_residual(g: &Graph, u: usize, p: &PerronData) -> f64 {
    let x = &p.x;
    let nbhd = g.neighbors(u);
    let mut rhs = g.degree(u) as f64 * x[u];
    for v in members(nbhd) {
        rhs += g.degree_in(v, nbhd) as f64 * x[v];
    }
    for w in members(second_neighborhood(g, u)) {
        rhs += g.degree_in(w, nbhd) as f64 * x[w];
    }
    (p.rho * p.rho * x[u] - rhs).abs() / x[u]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeBoundCheck {
    pub hub: usize,
    /// `ρ² − ρ > m − 2`, the premise of the bound.
    pub premise: bool,
    /// `e(W)`.
    pub edges_outside: usize,
    /// The weighted middle term.
    pub weighted_bound: f64,
    /// `e(N₊) − |N₊| + 2 − Σ_{N₀} x_v/x_u`.
    pub combinatorial_bound: f64,
}

impl EdgeBoundCheck {
    /// Both inequalities hold (vacuously when the premise fails).
    pub fn holds(&self, slack: f64) -> bool {
        !self.premise
            || ((self.edges_outside as f64) < self.weighted_bound + slack
                && self.weighted_bound <= self.combinatorial_bound + slack)
    }
}

/// Evaluates the `e(W)` bound at the extremal vertex of `p`.
pub fn edge_bound_at_extremal(g: &Graph, p: &PerronData) -> EdgeBoundCheck {
    let hub = p.extremal_vertex();
    let x = &p.x;
    let d = classify_neighborhood(g, hub);
    let nbhd = d.neighborhood();
    let m = g.size() as f64;
    let e_plus = g.edges_within(d.n_plus) as f64;
    let zero_weight: f64 = members(d.n_zero).map(|v| x[v] / x[hub]).sum();
    let weighted: f64 = members(d.n_plus)
        .map(|v| (g.degree_in(v, nbhd) as f64 - 1.0) * x[v] / x[hub])
        .sum::<f64>()
        - e_plus
        + 2.0
        - zero_weight;
    EdgeBoundCheck {
        hub,
        premise: p.rho * p.rho - p.rho > m - 2.0,
        edges_outside: g.edges_within(d.w),
        weighted_bound: weighted,
        combinatorial_bound: e_plus - set_len(d.n_plus) as f64 + 2.0 - zero_weight,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilySpec};
    use crate::spectral::perron::perron;

    #[test]
    fn k4_hand_check() {
        let g = build_family(&FamilySpec::Complete { n: 4 }).unwrap();
        let p = perron(&g, 1e-12).unwrap();
        for u in 0..4 {
            assert!(walk_identity_residual(&g, u, &p) < 1e-10);
        }
    }

    #[test]
    fn book_identity() {
        let g = build_family(&FamilySpec::Snk { n: 13, k: 2 }).unwrap();
        let p = perron(&g, 1e-12).unwrap();
        assert!(walk_identity_residual(&g, 0, &p) <= 1e-8);
        assert!(walk_identity_residual(&g, 7, &p) <= 1e-8);
    }

    #[test]
    fn bound_on_pendant_book() {
        let g = build_family(&FamilySpec::SnkT { n: 14, k: 2, t: 2 }).unwrap();
        let p = perron(&g, 1e-12).unwrap();
        let c = edge_bound_at_extremal(&g, &p);
        assert_eq!(c.hub, 0);
        assert!(c.premise);
        assert_eq!(c.edges_outside, 0);
        assert!(c.holds(1e-9));
        // star component with 11 vertices: e(N₊) − |N₊| + 2 = 10 − 11 + 2
        assert!(c.combinatorial_bound < 1.0);
    }
}
