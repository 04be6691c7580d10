//! Non-induced subgraph detection and the neighbourhood decomposition
//! around a hub vertex.
//!
//! A general pattern (order ≤ 8) is matched by backtracking over pattern
//! vertices, highest degree first, with candidates filtered by the
//! intersection of the images' neighbourhoods. The gem `K_1 ∨ P_4` has a
//! direct test: `G` contains a gem iff some vertex `h` has a path with three
//! edges inside `G[N(h)]`.

use crate::error::{Error, Result};
use crate::family::{build_family, FamilySpec};
use crate::graph::{bit, members, set_len, Graph, VertexSet};

pub const MAX_PATTERN_ORDER: usize = 8;

/// The forbidden graph `F`.
#[derive(Clone, Debug)]
pub struct ForbiddenSpec {
    pattern: Graph,
    name: String,
    /// For a gem pattern: pattern vertex playing each role of `H_5`
    /// (hub, then the path in order).
    gem_roles: Option<[usize; 5]>,
}

impl ForbiddenSpec {
    pub fn gem() -> Self {
        let pattern = build_family(&FamilySpec::Fan { n: 5 }).expect("fan 5");
        ForbiddenSpec {
            pattern,
            name: "gem".into(),
            gem_roles: Some([0, 1, 2, 3, 4]),
        }
    }

    /// Arbitrary pattern; named by its graph6 string.
    pub fn new(pattern: Graph) -> Result<Self> {
        let name = crate::graph6::encode(&pattern);
        Self::named(pattern, name)
    }

    pub fn named(pattern: Graph, name: impl Into<String>) -> Result<Self> {
        if pattern.order() == 0 {
            return Err(Error::InvalidPattern("empty pattern".into()));
        }
        if pattern.order() > MAX_PATTERN_ORDER {
            return Err(Error::InvalidPattern(format!(
                "pattern order {} exceeds {MAX_PATTERN_ORDER}",
                pattern.order()
            )));
        }
        if pattern.isolated_vertices() != 0 {
            return Err(Error::InvalidPattern("pattern has isolated vertices".into()));
        }
        let gem = Self::gem();
        let gem_roles = if pattern.order() == 5 && pattern.size() == 7 {
            find_embedding_general(&pattern, &gem.pattern, &[]).map(|m| [m[0], m[1], m[2], m[3], m[4]])
        } else {
            None
        };
        Ok(ForbiddenSpec {
            pattern,
            name: name.into(),
            gem_roles,
        })
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_gem(&self) -> bool {
        self.gem_roles.is_some()
    }
}

/// True iff some injective map sends every edge of `F` to an edge of `g`.
pub fn contains_subgraph(g: &Graph, f: &ForbiddenSpec) -> bool {
    if f.is_gem() {
        gem_hub(g).is_some()
    } else {
        find_embedding_general(g, &f.pattern, &[]).is_some()
    }
}

pub fn is_free(g: &Graph, f: &ForbiddenSpec) -> bool {
    !contains_subgraph(g, f)
}

/// One embedding, as `witness[pattern_vertex] = graph_vertex`.
pub fn find_embedding(g: &Graph, f: &ForbiddenSpec) -> Option<Vec<usize>> {
    match f.gem_roles {
        Some(roles) => {
            let (h, path) = gem_hub(g)?;
            let mut w = vec![0; 5];
            w[roles[0]] = h;
            for (i, &p) in path.iter().enumerate() {
                w[roles[i + 1]] = p;
            }
            Some(w)
        }
        None => find_embedding_general(g, &f.pattern, &[]),
    }
}

/// A path `a-b-c-d` on distinct vertices of `within`, edges taken from `g`.
fn p4_inside(g: &Graph, within: VertexSet) -> Option<[usize; 4]> {
    for b in members(within) {
        let nb = g.neighbors(b) & within;
        if set_len(nb) < 2 {
            continue;
        }
        for c in members(nb) {
            let a_set = nb & !bit(c);
            let d_set = g.neighbors(c) & within & !bit(b);
            if a_set == 0 || d_set == 0 {
                continue;
            }
            let a = a_set.trailing_zeros() as usize;
            let d_choice = d_set & !bit(a);
            if d_choice != 0 {
                return Some([a, b, c, d_choice.trailing_zeros() as usize]);
            }
            let d = d_set.trailing_zeros() as usize;
            let a_choice = a_set & !bit(d);
            if a_choice != 0 {
                return Some([a_choice.trailing_zeros() as usize, b, c, d]);
            }
        }
    }
    None
}

/// `true` iff `G[s]` has a path with three edges.
pub fn has_p4(g: &Graph, s: VertexSet) -> bool {
    p4_inside(g, s).is_some()
}

fn gem_hub(g: &Graph) -> Option<(usize, [usize; 4])> {
    (0..g.order())
        .filter(|&h| g.degree(h) >= 4)
        .find_map(|h| p4_inside(g, g.neighbors(h)).map(|p| (h, p)))
}

/// Backtracking embedding search of `pattern` into `g`, with some pattern
/// vertices optionally pinned to given graph vertices.
fn find_embedding_general(g: &Graph, pattern: &Graph, pinned: &[(usize, usize)]) -> Option<Vec<usize>> {
    let k = pattern.order();
    if k > g.order() {
        return None;
    }
    let order = search_order(pattern, pinned);
    let mut map = vec![usize::MAX; k];
    let mut used: VertexSet = 0;
    for &(p, v) in pinned {
        if v >= g.order() || used & bit(v) != 0 || g.degree(v) < pattern.degree(p) {
            return None;
        }
        map[p] = v;
        used |= bit(v);
    }
    for &(p, _) in pinned {
        for q in members(pattern.neighbors(p)) {
            if map[q] != usize::MAX && !g.has_edge(map[p], map[q]) {
                return None;
            }
        }
    }
    let by_degree: Vec<VertexSet> = (0..=MAX_PATTERN_ORDER)
        .map(|d| crate::graph::set_from((0..g.order()).filter(|&v| g.degree(v) >= d)))
        .collect();
    if extend(g, pattern, &order[pinned.len()..], &mut map, used, &by_degree) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    g: &Graph,
    pattern: &Graph,
    rest: &[usize],
    map: &mut [usize],
    used: VertexSet,
    by_degree: &[VertexSet],
) -> bool {
    let Some((&p, tail)) = rest.split_first() else {
        return true;
    };
    let mut cand = by_degree[pattern.degree(p).min(MAX_PATTERN_ORDER)] & !used;
    for q in members(pattern.neighbors(p)) {
        if map[q] != usize::MAX {
            cand &= g.neighbors(map[q]);
        }
    }
    for v in members(cand) {
        map[p] = v;
        if extend(g, pattern, tail, map, used | bit(v), by_degree) {
            return true;
        }
    }
    map[p] = usize::MAX;
    false
}

/// Pinned vertices first, then greedily the vertex with the most placed
/// neighbours (ties: higher degree, then lower index).
fn search_order(pattern: &Graph, pinned: &[(usize, usize)]) -> Vec<usize> {
    let k = pattern.order();
    let mut order: Vec<usize> = pinned.iter().map(|&(p, _)| p).collect();
    let mut placed: VertexSet = crate::graph::set_from(order.iter().copied());
    while order.len() < k {
        let next = (0..k)
            .filter(|&p| placed & bit(p) == 0)
            .max_by_key(|&p| (pattern.degree_in(p, placed), pattern.degree(p), std::cmp::Reverse(p)))
            .expect("unplaced vertex");
        order.push(next);
        placed |= bit(next);
    }
    order
}

/// True iff some embedding of `F` into `g` uses at least one of `anchors`.
pub fn contains_subgraph_through(g: &Graph, f: &ForbiddenSpec, anchors: &[(usize, usize)]) -> bool {
    find_embedding_through(g, f, anchors).is_some()
}

/// An embedding of `F` that uses at least one of the `anchors` edges.
pub fn find_embedding_through(g: &Graph, f: &ForbiddenSpec, anchors: &[(usize, usize)]) -> Option<Vec<usize>> {
    let pattern = &f.pattern;
    anchors.iter().filter(|&&(a, b)| g.has_edge(a, b)).find_map(|&(a, b)| {
        pattern.edges().find_map(|(p, q)| {
            find_embedding_general(g, pattern, &[(p, a), (q, b)])
                .or_else(|| find_embedding_general(g, pattern, &[(p, b), (q, a)]))
        })
    })
}

/// F-freeness of `g - removed + added`, checking only embeddings through
/// an added edge. `g` itself must be F-free.
pub fn ffree_after_edit(
    g: &Graph,
    f: &ForbiddenSpec,
    added: &[(usize, usize)],
    removed: &[(usize, usize)],
) -> Result<bool> {
    debug_assert!(is_free(g, f), "ffree_after_edit requires an F-free base graph");
    let edited = apply_edit(g, added, removed)?;
    Ok(!contains_subgraph_through(&edited, f, added))
}

/// `g - removed + added`, validating that removed edges exist and added
/// ones do not.
pub fn apply_edit(g: &Graph, added: &[(usize, usize)], removed: &[(usize, usize)]) -> Result<Graph> {
    let n = g.order();
    let check = |&(u, v): &(usize, usize)| {
        if u >= n || v >= n {
            Err(Error::InvalidEdit(format!("edge ({u},{v}) out of range")))
        } else if u == v {
            Err(Error::InvalidEdit(format!("loop at {u}")))
        } else {
            Ok(())
        }
    };
    let mut h = g.clone();
    for e @ &(u, v) in removed {
        check(e)?;
        if !h.has_edge(u, v) {
            return Err(Error::InvalidEdit(format!("edge ({u},{v}) is not present")));
        }
        h.remove_edge(u, v);
    }
    for e @ &(u, v) in added {
        check(e)?;
        if g.has_edge(u, v) || h.has_edge(u, v) {
            return Err(Error::InvalidEdit(format!("edge ({u},{v}) already present")));
        }
        h.add_edge(u, v);
    }
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentClass {
    /// `K_{1,0}`.
    Singleton,
    /// `K_{1,r}` with `r ≥ 1` leaves.
    Star(usize),
    Triangle,
    /// Contains a path with three edges.
    Other,
}

#[derive(Clone, Debug)]
pub struct NeighborhoodComponent {
    pub vertices: VertexSet,
    pub class: ComponentClass,
}

/// The partition `û / N₀(û) / N₊(û) / W / W₀` around a hub.
#[derive(Clone, Debug)]
pub struct NeighborhoodDecomposition {
    pub hub: usize,
    /// Isolated vertices of `G[N(û)]`.
    pub n_zero: VertexSet,
    /// `N(û) ∖ N₀(û)`.
    pub n_plus: VertexSet,
    /// `V ∖ N[û]`.
    pub w: VertexSet,
    /// `⋃_{u ∈ N₀(û)} N_W(u)`.
    pub w_zero: VertexSet,
    pub components: Vec<NeighborhoodComponent>,
}

impl NeighborhoodDecomposition {
    pub fn neighborhood(&self) -> VertexSet {
        self.n_zero | self.n_plus
    }

    pub fn has_other(&self) -> bool {
        self.components.iter().any(|c| c.class == ComponentClass::Other)
    }

    pub fn star_components(&self) -> usize {
        self.components
            .iter()
            .filter(|c| matches!(c.class, ComponentClass::Star(_)))
            .count()
    }
}

fn classify_component(g: &Graph, comp: VertexSet) -> ComponentClass {
    let k = set_len(comp);
    let e = g.edges_within(comp);
    if k == 1 {
        ComponentClass::Singleton
    } else if k == 3 && e == 3 {
        ComponentClass::Triangle
    } else if e == k - 1 && members(comp).any(|v| g.degree_in(v, comp) == k - 1) {
        ComponentClass::Star(k - 1)
    } else {
        ComponentClass::Other
    }
}

pub fn classify_neighborhood(g: &Graph, hub: usize) -> NeighborhoodDecomposition {
    let nbhd = g.neighbors(hub);
    let n_zero = crate::graph::set_from(members(nbhd).filter(|&v| g.neighbors(v) & nbhd == 0));
    let n_plus = nbhd & !n_zero;
    let w = g.vertices() & !g.closed_neighbors(hub);
    let w_zero = members(n_zero).fold(0, |acc, v| acc | (g.neighbors(v) & w));

    let mut components = Vec::new();
    let mut left = nbhd;
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        let comp = crate::structure::reach(g, s, nbhd);
        left &= !comp;
        components.push(NeighborhoodComponent {
            vertices: comp,
            class: classify_component(g, comp),
        });
    }
    NeighborhoodDecomposition {
        hub,
        n_zero,
        n_plus,
        w,
        w_zero,
        components,
    }
}
