//! Compact undirected simple graphs on at most 128 vertices.
//!
//! Every row of the adjacency matrix is a single `u128` bitset, so
//! neighbourhood intersections and degree counts are a handful of
//! instructions. Vertices are the dense integers `0..n`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order.
pub const MAX_ORDER: usize = 128;

/// A set of vertices of a [`Graph`], one bit per vertex.
pub type VertexSet = u128;

#[inline]
pub const fn bit(v: usize) -> VertexSet {
    1u128 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn full_set(n: usize) -> VertexSet {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

#[inline]
pub fn set_len(s: VertexSet) -> usize {
    s.count_ones() as usize
}

/// Iterate the members of a vertex set in increasing order.
#[inline]
pub fn members(mut s: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(v)
        }
    })
}

pub fn set_from<I: IntoIterator<Item = usize>>(vs: I) -> VertexSet {
    vs.into_iter().fold(0, |acc, v| acc | bit(v))
}

/// Undirected simple graph with bitset adjacency rows.
///
/// Ordering and hashing compare the order first and then the rows, which
/// makes equality "vertex-identical" rather than "isomorphic". Use
/// [`crate::canon`] for isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n > MAX_ORDER`; use [`Graph::with_order`] for untrusted sizes.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        Graph { n, adj: vec![0; n] }
    }

    pub fn with_order(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        Ok(Self::empty(n))
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::with_order(n)?;
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_rows(n: usize, adj: Vec<VertexSet>) -> Self {
        debug_assert_eq!(adj.len(), n);
        let g = Graph { n, adj };
        debug_assert!(g.is_well_formed());
        g
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Symmetric, loop-free, and no bits beyond `n`.
    pub fn is_well_formed(&self) -> bool {
        let mask = full_set(self.n);
        self.adj.len() == self.n
            && (0..self.n).all(|u| {
                let row = self.adj[u];
                row & !mask == 0
                    && row & bit(u) == 0
                    && members(row).all(|v| self.adj[v] & bit(u) != 0)
            })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges, `e(G)`.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        full_set(self.n)
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> VertexSet {
        self.adj[u]
    }

    /// Closed neighbourhood `N[u]`.
    #[inline]
    pub fn closed_neighbors(&self, u: usize) -> VertexSet {
        self.adj[u] | bit(u)
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    /// `d_S(u) = |N(u) ∩ S|`.
    #[inline]
    pub fn degree_in(&self, u: usize, s: VertexSet) -> usize {
        (self.adj[u] & s).count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.adj
    }

    /// Panics on a loop or out-of-range vertex.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u},{v})");
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "bad edge ({u},{v})");
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> Result<usize> {
        if self.n == MAX_ORDER {
            return Err(Error::OrderTooLarge(self.n + 1));
        }
        self.adj.push(0);
        self.n += 1;
        Ok(self.n - 1)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| members(self.adj[u] & !full_set(u + 1)).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|u| self.degree(u)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        set_from((0..self.n).filter(|&u| self.adj[u] == 0))
    }

    /// `e(S)`: edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        members(s).map(|u| self.degree_in(u, s)).sum::<usize>() / 2
    }

    /// `e(S, T)` for disjoint `s`, `t`.
    pub fn edges_between(&self, s: VertexSet, t: VertexSet) -> usize {
        debug_assert_eq!(s & t, 0);
        members(s).map(|u| self.degree_in(u, t)).sum()
    }

    /// Subgraph induced by `keep`, relabelled to `0..|keep|` preserving order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let keep = keep & self.vertices();
        let index: Vec<usize> = members(keep).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in index.iter().enumerate() {
            pos[v] = i;
        }
        let adj = index
            .iter()
            .map(|&v| set_from(members(self.adj[v] & keep).map(|w| pos[w])))
            .collect();
        Graph::from_rows(index.len(), adj)
    }

    /// Drops every isolated vertex, keeping the relative order of the rest.
    pub fn without_isolated(&self) -> Graph {
        let iso = self.isolated_vertices();
        if iso == 0 {
            self.clone()
        } else {
            self.induced(self.vertices() & !iso)
        }
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0; self.n];
        for u in 0..self.n {
            adj[perm[u]] = set_from(members(self.adj[u]).map(|w| perm[w]));
        }
        Graph::from_rows(self.n, adj)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

/// `g ∨ h`: disjoint union plus every edge between the two sides.
/// Vertices of `g` keep their labels; those of `h` are shifted by `n(g)`.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let mut out = disjoint_union(g, h)?;
    let (a, b) = (g.order(), h.order());
    let right = full_set(a + b) & !full_set(a);
    for u in 0..a {
        out.adj[u] |= right;
    }
    for v in a..a + b {
        out.adj[v] |= full_set(a);
    }
    Ok(out)
}

pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.order() + h.order();
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let shift = g.order();
    let adj = g
        .adj
        .iter()
        .copied()
        .chain(h.adj.iter().map(|&r| r << shift))
        .collect();
    Ok(Graph::from_rows(n, adj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn edge_bookkeeping() {
        let mut g = Graph::empty(4);
        g.add_edge(0, 1);
        g.add_edge(2, 1);
        assert_eq!(g.size(), 2);
        assert!(g.has_edge(1, 0));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.isolated_vertices(), bit(3));
        g.remove_edge(1, 0);
        assert_eq!(g.size(), 1);
        assert!(g.is_well_formed());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(Graph::with_order(129), Err(Error::OrderTooLarge(129))));
    }

    #[test]
    fn join_counts_cross_edges() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let j = join(&k2, &Graph::empty(11)).unwrap();
        assert_eq!(j.order(), 13);
        assert_eq!(j.size(), 1 + 2 * 11);

        let gem = join(&Graph::empty(1), &path(4)).unwrap();
        assert_eq!(gem.size(), 7);
        assert_eq!(gem.degree(0), 4);

        let p = path(5);
        assert_eq!(join(&Graph::empty(0), &p).unwrap(), p);
        assert_eq!(disjoint_union(&p, &k2).unwrap().size(), 5);
        assert!(join(&Graph::empty(100), &Graph::empty(29)).is_err());
    }

    #[test]
    fn full_order_row_edges() {
        let mut g = Graph::empty(128);
        g.add_edge(0, 127);
        g.add_edge(126, 127);
        assert_eq!(g.size(), 2);
        assert_eq!(g.degree(127), 2);
        assert!(g.is_well_formed());
        assert_eq!(g.without_isolated().order(), 3);
    }

    #[test]
    fn induced_and_sets() {
        let g = path(5);
        let h = g.induced(set_from([1, 2, 4]));
        assert_eq!(h.order(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(g.edges_within(set_from([0, 1, 2])), 2);
        assert_eq!(g.edges_between(set_from([0, 1]), set_from([2, 3])), 1);
    }
}
