//! Edge-count-preserving surgeries that raise the spectral radius.
//!
//! None of these operations checks pattern-freeness of its output; callers
//! recheck with [`crate::forbidden`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, members, set_len, Graph, VertexSet};
use crate::structure::{is_connected, structure};

/// Move the edges `v·w` (`w ∈ moved`) to `u·w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RotationMove {
    pub u: usize,
    pub v: usize,
    pub moved: VertexSet,
}

impl RotationMove {
    /// The largest valid move set, `N(v) ∖ N[u]`.
    pub fn full(g: &Graph, u: usize, v: usize) -> Option<Self> {
        if u >= g.order() || v >= g.order() || u == v {
            return None;
        }
        let moved = g.neighbors(v) & !g.closed_neighbors(u);
        (moved != 0).then_some(RotationMove { u, v, moved })
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.order();
        let err = |msg: String| Err(Error::InvalidMove(msg));
        if self.u >= n || self.v >= n {
            return err(format!("vertex out of range for order {n}"));
        }
        if self.u == self.v {
            return err("u and v must differ".into());
        }
        if self.moved == 0 {
            return err("moved set is empty".into());
        }
        if self.moved & !g.neighbors(self.v) != 0 {
            return err("moved set is not contained in N(v)".into());
        }
        if self.moved & g.closed_neighbors(self.u) != 0 {
            return err("moved set meets N[u]".into());
        }
        Ok(())
    }
}

/// `g − Σ v·w + Σ u·w` over `w ∈ moved`.
pub fn rotate_edges(g: &Graph, mv: &RotationMove) -> Result<Graph> {
    mv.validate(g)?;
    let mut h = g.clone();
    for w in members(mv.moved) {
        h.remove_edge(mv.v, w);
        h.add_edge(mv.u, w);
    }
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reattachment {
    pub graph: Graph,
    /// Vertices of the end-block that was detached.
    pub block: VertexSet,
    /// Its former cut vertex.
    pub cut_vertex: usize,
}

/// Moves the edges from the cut vertex `v` of the first end-block `B`
/// with `u ∉ V(B)` into `B` over to `u`. `Ok(None)` when no end-block
/// avoids `u` behind a cut vertex.
pub fn reattach_end_block(g: &Graph, u: usize) -> Result<Option<Reattachment>> {
    if u >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: u,
            order: g.order(),
        });
    }
    if !is_connected(g) {
        return Err(Error::InvalidArgument("graph must be connected".into()));
    }
    let s = structure(g);
    for block in s.end_block_iter() {
        if block.vertices & bit(u) != 0 {
            continue;
        }
        let cut = block.vertices & s.cut_vertices;
        if set_len(cut) != 1 {
            continue;
        }
        let v = cut.trailing_zeros() as usize;
        let targets = g.neighbors(v) & block.vertices;
        let mut h = g.clone();
        for w in members(targets) {
            h.remove_edge(v, w);
            h.add_edge(u, w);
        }
        return Ok(Some(Reattachment {
            graph: h,
            block: block.vertices,
            cut_vertex: v,
        }));
    }
    Ok(None)
}

/// Intermediate graphs of the split, on a common vertex set: the input
/// padded with isolated placeholders, and the rewired graph in which every
/// `w_i` is isolated.
#[doc(hidden)]
#[derive(Clone, Debug)]
pub struct WSplitStages {
    pub padded: Graph,
    pub rewired: Graph,
    /// Placeholders of each `w_i`; for odd `d_i` the last one is the pendant.
    pub placeholders: Vec<Vec<usize>>,
}

fn check_w_split(g: &Graph, hub: usize, v: usize, ws: &[usize]) -> Result<()> {
    let n = g.order();
    let err = |msg: String| Err(Error::WSplit(msg));
    if hub >= n || v >= n || ws.iter().any(|&w| w >= n) {
        return err(format!("vertex out of range for order {n}"));
    }
    if !g.has_edge(hub, v) {
        return err(format!("hub {hub} is not adjacent to {v}"));
    }
    let leaves = g.neighbors(v) & !bit(hub);
    let mut seen = 0u128;
    for &w in ws {
        if w == hub || w == v || seen & bit(w) != 0 {
            return err(format!("w = {w} repeated or equal to hub or v"));
        }
        seen |= bit(w);
        if g.degree(w) < 2 {
            return err(format!("w = {w} has degree {} < 2", g.degree(w)));
        }
        if g.neighbors(w) & !leaves != 0 {
            return err(format!("N({w}) is not contained in N({v}) minus the hub"));
        }
    }
    Ok(())
}

#[doc(hidden)]
pub fn w_split_stages(g: &Graph, hub: usize, v: usize, ws: &[usize]) -> Result<WSplitStages> {
    check_w_split(g, hub, v, ws)?;
    let mut padded = g.clone();
    let mut placeholders = Vec::with_capacity(ws.len());
    for &w in ws {
        let count = g.degree(w).div_ceil(2);
        let mut ks = Vec::with_capacity(count);
        for _ in 0..count {
            ks.push(padded.add_vertex()?);
        }
        placeholders.push(ks);
    }
    let mut rewired = padded.clone();
    for (&w, ks) in ws.iter().zip(&placeholders) {
        for x in members(g.neighbors(w)) {
            rewired.remove_edge(w, x);
        }
        let d = g.degree(w);
        for &k in &ks[..d / 2] {
            rewired.add_edge(hub, k);
            rewired.add_edge(v, k);
        }
        if d % 2 == 1 {
            rewired.add_edge(hub, *ks.last().expect("odd degree has a pendant"));
        }
    }
    Ok(WSplitStages {
        padded,
        rewired,
        placeholders,
    })
}

/// Replaces each `w_i` (neighbours among the leaves of the star centred at
/// `v`, degree `d_i ≥ 2`) by `⌊d_i/2⌋` new common neighbours of `hub` and
/// `v`, plus one pendant at `hub` when `d_i` is odd, then drops isolated
/// vertices. Surviving vertices keep their relative order.
pub fn w_split(g: &Graph, hub: usize, v: usize, ws: &[usize]) -> Result<Graph> {
    Ok(w_split_stages(g, hub, v, ws)?.rewired.without_isolated())
}

/// A connected gem-free graph around `hub = 0` with
/// `G[N(hub)] = K_{1,r} ∪ t K_1` (star centre `1`, leaves `2..r+2`, then
/// `t` pendants) and an independent set of `w`s, the `i`-th adjacent to
/// `degrees[i]` consecutive leaves starting at leaf `i mod r`.
///
/// Returns the graph and the labels of the `w`s.
pub fn star_neighborhood_instance(
    r: usize,
    t: usize,
    degrees: &[usize],
) -> Result<(Graph, Vec<usize>)> {
    if r == 0 || degrees.iter().any(|&d| d < 2 || d > r) {
        return Err(Error::InvalidArgument(format!(
            "need r >= 1 and 2 <= d_i <= r, got r={r}, degrees={degrees:?}"
        )));
    }
    let n = 2 + r + t + degrees.len();
    let mut g = Graph::with_order(n)?;
    g.add_edge(0, 1);
    for leaf in 2..r + 2 {
        g.add_edge(0, leaf);
        g.add_edge(1, leaf);
    }
    for p in r + 2..r + t + 2 {
        g.add_edge(0, p);
    }
    let ws: Vec<usize> = (r + t + 2..n).collect();
    for (i, (&w, &d)) in ws.iter().zip(degrees).enumerate() {
        for j in 0..d {
            g.add_edge(w, 2 + (i + j) % r);
        }
    }
    Ok((g, ws))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilySpec};
    use crate::forbidden::{is_free, ForbiddenSpec};
    use crate::spectral::perron::perron;
    use crate::structure::cut_vertices;

    fn rho(g: &Graph) -> f64 {
        perron(g, 1e-12).unwrap().rho
    }

    #[test]
    fn p4_rotation_gives_claw() {
        // a-b-c-d, move d from c to b
        let g = build_family(&FamilySpec::Path { n: 4 }).unwrap();
        let mv = RotationMove { u: 1, v: 2, moved: bit(3) };
        let h = rotate_edges(&g, &mv).unwrap();
        assert_eq!(h.degree_sequence(), vec![3, 1, 1, 1]);
        assert!(rho(&h) > rho(&g));
        assert!((rho(&h) - 3f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn invalid_moves() {
        let g = build_family(&FamilySpec::Path { n: 4 }).unwrap();
        let bad = [
            RotationMove { u: 1, v: 1, moved: bit(0) },
            RotationMove { u: 1, v: 2, moved: 0 },
            RotationMove { u: 0, v: 2, moved: bit(1) },
            RotationMove { u: 1, v: 2, moved: bit(0) },
            RotationMove { u: 9, v: 2, moved: bit(3) },
        ];
        for mv in bad {
            assert!(matches!(rotate_edges(&g, &mv), Err(Error::InvalidMove(_))), "{mv:?}");
        }
        assert!(RotationMove::full(&g, 0, 1).is_some());
        assert_eq!(RotationMove::full(&g, 1, 0), None);
    }

    #[test]
    fn full_rotation_towards_extremal_vertex() {
        let g = build_family(&FamilySpec::Fan { n: 7 }).unwrap();
        let p = perron(&g, 1e-12).unwrap();
        let u = p.extremal_vertex();
        for v in 0..g.order() {
            if let Some(mv) = RotationMove::full(&g, u, v) {
                let h = rotate_edges(&g, &mv).unwrap();
                assert_eq!(h.size(), g.size());
                assert!(rho(&h) > rho(&g) + 1e-10);
            }
        }
    }

    #[test]
    fn reattach_makes_u_a_cut_vertex() {
        // two triangles joined by a path: 0-1-2 triangle, 2-3-4 path, 4-5-6 triangle
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)])
            .unwrap();
        let r = reattach_end_block(&g, 5).unwrap().unwrap();
        assert_eq!(r.block, 0b111);
        assert_eq!(r.cut_vertex, 2);
        assert_eq!(r.graph.size(), g.size());
        assert!(cut_vertices(&r.graph) & bit(5) != 0);
        assert!(rho(&r.graph) > rho(&g));
    }

    #[test]
    fn reattach_noop_on_two_connected() {
        let g = build_family(&FamilySpec::Cycle { n: 6 }).unwrap();
        assert_eq!(reattach_end_block(&g, 0).unwrap(), None);
        let k4 = build_family(&FamilySpec::Complete { n: 4 }).unwrap();
        assert_eq!(reattach_end_block(&k4, 2).unwrap(), None);
    }

    #[test]
    fn reattach_result_is_rechecked_for_gems() {
        let gem = ForbiddenSpec::gem();
        let g = build_family(&FamilySpec::SnkT { n: 9, k: 2, t: 2 }).unwrap();
        for u in 0..g.order() {
            if let Some(r) = reattach_end_block(&g, u).unwrap() {
                assert_eq!(r.graph.size(), g.size());
                // whatever the answer, it is computed rather than assumed
                let _ = is_free(&r.graph, &gem);
            }
        }
    }

    #[test]
    fn w_split_small_degrees() {
        for d in [2usize, 3] {
            let (g, ws) = star_neighborhood_instance(4, 0, &[d]).unwrap();
            let h = w_split(&g, 0, 1, &ws).unwrap();
            assert_eq!(h.size(), g.size());
            assert_eq!(h.order(), g.order() - 1 + d.div_ceil(2));
            // the placeholders are the last vertices
            let k = g.order() - 1;
            assert!(h.has_edge(0, k) && h.has_edge(1, k));
            if d == 3 {
                assert_eq!(h.neighbors(k + 1), bit(0));
            }
            assert!(rho(&h) > rho(&g));
        }
    }

    #[test]
    fn w_split_preconditions() {
        let (g, ws) = star_neighborhood_instance(4, 1, &[2]).unwrap();
        assert!(matches!(w_split(&g, 0, 2, &ws), Err(Error::WSplit(_))));
        assert!(matches!(w_split(&g, 0, 1, &[0]), Err(Error::WSplit(_))));
        // the pendant at the hub has degree 1
        assert!(matches!(w_split(&g, 0, 1, &[6]), Err(Error::WSplit(_))));
        assert!(matches!(w_split(&g, 0, 1, &[ws[0], ws[0]]), Err(Error::WSplit(_))));
        assert!(star_neighborhood_instance(3, 0, &[4]).is_err());
    }

    #[test]
    fn instance_is_gem_free() {
        let gem = ForbiddenSpec::gem();
        let (g, ws) = star_neighborhood_instance(5, 2, &[2, 3, 5]).unwrap();
        assert!(is_free(&g, &gem));
        assert!(is_connected(&g));
        assert_eq!(ws.len(), 3);
        let h = w_split(&g, 0, 1, &ws).unwrap();
        assert!(is_free(&h, &gem));
        // two odd degrees add two pendants to the existing two
        assert_eq!(h.degree_sequence().iter().filter(|&&d| d == 1).count(), 4);
    }
}
