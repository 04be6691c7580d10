//! Exhaustive generation of pattern-free graphs with a fixed edge count.
//!
//! Graphs without isolated vertices are grown from `K_2` one edge at a
//! time by canonical augmentation: a child `H = G + e` is kept iff `e`
//! lies in the `Aut(H)`-orbit of the canonical deletable edge of `H`, and
//! each parent tries one augmentation per `Aut(G)`-orbit. An augmentation
//! joins two existing vertices, hangs a pendant on a new vertex, or (when
//! disconnected graphs are allowed) adds a new `K_2`. Deletable edges are
//! all edges, or in connected mode the non-bridges and the pendant edges,
//! so every class appears exactly once. Pattern-freeness is inherited by
//! subgraphs, so children containing the pattern through the new edge are
//! cut immediately.

use log::debug;
use rayon::prelude::*;

use crate::canon::{canonize, CanonicalForm, Canonization, UnionFind};
use crate::error::{Error, Result};
use crate::forbidden::{contains_subgraph, contains_subgraph_through, ForbiddenSpec};
use crate::graph::{members, Graph};
use crate::record::{rank_records, ExtremalRecord, Method};
use crate::spectral::perron::{perron, DEFAULT_MARGIN, DEFAULT_TOL};
use crate::structure::bridges;

/// Default cap on `m` for exhaustive runs.
pub const DEFAULT_GUARD: usize = 16;

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub connected_only: bool,
    /// Cut children containing the pattern as soon as they appear. With
    /// `false`, the pattern is only tested on complete graphs.
    pub prune: bool,
    pub parallel: bool,
    /// Largest `m` accepted.
    pub guard: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            connected_only: true,
            prune: true,
            parallel: true,
            guard: DEFAULT_GUARD,
        }
    }
}

struct Node {
    graph: Graph,
    canon: Canonization,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct EdgeKey {
    lo: usize,
    hi: usize,
    common: usize,
    around: usize,
}

fn edge_key(h: &Graph, u: usize, v: usize) -> EdgeKey {
    let (du, dv) = (h.degree(u), h.degree(v));
    let around = members(h.neighbors(u) | h.neighbors(v)).map(|x| h.degree(x)).sum();
    EdgeKey {
        lo: du.min(dv),
        hi: du.max(dv),
        common: (h.neighbors(u) & h.neighbors(v)).count_ones() as usize,
        around,
    }
}

fn deletable_edges(h: &Graph, connected_only: bool) -> Vec<(usize, usize)> {
    if !connected_only {
        return h.edges().collect();
    }
    let bridge_list = bridges(h);
    h.edges()
        .filter(|&(u, v)| {
            h.degree(u) == 1 || h.degree(v) == 1 || !bridge_list.contains(&(u, v))
        })
        .collect()
}

fn same_edge_orbit(c: &Canonization, n: usize, a: (usize, usize), b: (usize, usize)) -> bool {
    if a == b {
        return true;
    }
    let idx = |u: usize, v: usize| u.min(v) * n + u.max(v);
    let mut uf = UnionFind::new(n * n);
    for gen in &c.generators {
        for u in 0..n {
            for v in u + 1..n {
                uf.union(idx(u, v), idx(gen[u], gen[v]));
            }
        }
    }
    uf.find(idx(a.0, a.1)) == uf.find(idx(b.0, b.1))
}

/// `Some(canonization)` iff `(u, v)` is a canonical deletion of `h`.
fn accept(h: &Graph, u: usize, v: usize, connected_only: bool) -> Option<Canonization> {
    let del = deletable_edges(h, connected_only);
    let keys: Vec<EdgeKey> = del.iter().map(|&(a, b)| edge_key(h, a, b)).collect();
    let best = *keys.iter().min().expect("child has a deletable edge");
    let added = (u.min(v), u.max(v));
    if edge_key(h, u, v) != best {
        return None;
    }
    let c = canonize(h);
    let star = del
        .iter()
        .zip(&keys)
        .filter(|(_, k)| **k == best)
        .map(|(&(a, b), _)| {
            let (la, lb) = (c.labeling[a], c.labeling[b]);
            ((la.max(lb), la.min(lb)), (a, b))
        })
        .max()
        .expect("best key is attained")
        .1;
    same_edge_orbit(&c, h.order(), added, star).then_some(c)
}

struct Generator<'a> {
    m: usize,
    pattern: Option<&'a ForbiddenSpec>,
    opts: EnumOptions,
}

impl Generator<'_> {
    fn children(&self, node: &Node) -> Vec<Node> {
        let g = &node.graph;
        let n = g.order();
        let mut out = Vec::new();
        let mut try_child = |h: Graph, u: usize, v: usize| {
            if self.opts.prune {
                if let Some(f) = self.pattern {
                    if contains_subgraph_through(&h, f, &[(u, v)]) {
                        return;
                    }
                }
            }
            if let Some(canon) = accept(&h, u, v, self.opts.connected_only) {
                out.push(Node { graph: h, canon });
            }
        };

        // one non-edge per Aut(G)-orbit of pairs
        let idx = |u: usize, v: usize| u.min(v) * n + u.max(v);
        let mut uf = UnionFind::new(n * n);
        for gen in &node.canon.generators {
            for u in 0..n {
                for v in u + 1..n {
                    uf.union(idx(u, v), idx(gen[u], gen[v]));
                }
            }
        }
        let mut seen = vec![false; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let r = uf.find(idx(u, v));
                if g.has_edge(u, v) || seen[r] {
                    continue;
                }
                seen[r] = true;
                let mut h = g.clone();
                h.add_edge(u, v);
                try_child(h, u, v);
            }
        }

        // one pendant per vertex orbit
        let orbits = node.canon.orbits();
        if n < crate::graph::MAX_ORDER {
            for u in 0..n {
                if orbits[u] != u {
                    continue;
                }
                let mut h = g.clone();
                let w = h.add_vertex().expect("order checked");
                h.add_edge(u, w);
                try_child(h, u, w);
            }
        }

        if !self.opts.connected_only && n + 2 <= crate::graph::MAX_ORDER {
            let mut h = g.clone();
            let a = h.add_vertex().expect("order checked");
            let b = h.add_vertex().expect("order checked");
            h.add_edge(a, b);
            try_child(h, a, b);
        }
        out
    }

    fn keep_leaf(&self, node: &Node) -> bool {
        match self.pattern {
            Some(f) if !self.opts.prune => !contains_subgraph(&node.graph, f),
            _ => true,
        }
    }

    fn dfs(&self, node: Node, visit: &mut dyn FnMut(&Node)) {
        if node.graph.size() == self.m {
            if self.keep_leaf(&node) {
                visit(&node);
            }
            return;
        }
        for child in self.children(&node) {
            self.dfs(child, visit);
        }
    }

    fn root(&self) -> Node {
        let g = Graph::from_edges(2, [(0, 1)]).expect("K_2");
        Node {
            canon: canonize(&g),
            graph: g,
        }
    }

    /// Subtree roots, in tree order, for parallel expansion.
    fn frontier(&self) -> (Vec<Node>, Vec<Node>) {
        let mut level = vec![self.root()];
        let mut done = Vec::new();
        while level.len() < 64 {
            let mut next = Vec::new();
            let mut any = false;
            for node in level {
                if node.graph.size() == self.m {
                    done.push(node);
                } else {
                    any = true;
                    next.extend(self.children(&node));
                }
            }
            level = next;
            if !any {
                break;
            }
        }
        (done, level)
    }
}

fn check_guard(m: usize, opts: &EnumOptions) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if m > opts.guard {
        return Err(Error::ResourceGuard { m, limit: opts.guard });
    }
    Ok(())
}

/// Applies `map` to one canonical representative of every class, in a
/// deterministic order that does not depend on `opts.parallel`.
pub fn par_map_graphs<T, F>(
    m: usize,
    pattern: Option<&ForbiddenSpec>,
    opts: &EnumOptions,
    map: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Graph, &Canonization) -> Option<T> + Sync,
{
    check_guard(m, opts)?;
    let gen = Generator {
        m,
        pattern,
        opts: *opts,
    };
    let (done, frontier) = gen.frontier();
    debug!("enumeration m={m}: {} subtrees", frontier.len());
    let mut out: Vec<T> = done
        .iter()
        .filter(|n| gen.keep_leaf(n))
        .filter_map(|n| map(&n.graph, &n.canon))
        .collect();
    let run = |node: Node| {
        let mut local = Vec::new();
        gen.dfs(node, &mut |n| {
            if let Some(t) = map(&n.graph, &n.canon) {
                local.push(t);
            }
        });
        local
    };
    let parts: Vec<Vec<T>> = if opts.parallel {
        frontier.into_par_iter().map(run).collect()
    } else {
        frontier.into_iter().map(run).collect()
    };
    out.extend(parts.into_iter().flatten());
    Ok(out)
}

/// Canonical representatives of all `F`-free graphs with `m` edges and no
/// isolated vertices, sorted by canonical form.
pub fn enumerate_ffree(m: usize, f: &ForbiddenSpec, opts: &EnumOptions) -> Result<Vec<Graph>> {
    collect_sorted(m, Some(f), opts)
}

/// As [`enumerate_ffree`] with no forbidden pattern.
pub fn enumerate_graphs(m: usize, opts: &EnumOptions) -> Result<Vec<Graph>> {
    collect_sorted(m, None, opts)
}

fn collect_sorted(m: usize, f: Option<&ForbiddenSpec>, opts: &EnumOptions) -> Result<Vec<Graph>> {
    let mut v = par_map_graphs(m, f, opts, |_, c| Some((c.form(), c.graph.clone())))?;
    v.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(v.into_iter().map(|(_, g)| g).collect())
}

/// Number of classes, without materializing them.
pub fn count_ffree(m: usize, f: Option<&ForbiddenSpec>, opts: &EnumOptions) -> Result<usize> {
    Ok(par_map_graphs(m, f, opts, |_, _| Some(()))?.len())
}

/// Streams canonical representatives in tree order on the calling thread.
pub fn for_each_ffree(
    m: usize,
    f: Option<&ForbiddenSpec>,
    opts: &EnumOptions,
    mut visit: impl FnMut(&Graph),
) -> Result<()> {
    check_guard(m, opts)?;
    let gen = Generator {
        m,
        pattern: f,
        opts: *opts,
    };
    gen.dfs(gen.root(), &mut |n| visit(&n.canon.graph));
    Ok(())
}

/// The `top_k` graphs of largest spectral radius among the `F`-free
/// graphs with `m` edges, ranked, with the gap to the next rank.
pub fn extremal_scan(
    m: usize,
    f: &ForbiddenSpec,
    top_k: usize,
    opts: &EnumOptions,
) -> Result<Vec<ExtremalRecord>> {
    extremal_scan_with_margin(m, f, top_k, opts, DEFAULT_MARGIN)
}

pub fn extremal_scan_with_margin(
    m: usize,
    f: &ForbiddenSpec,
    top_k: usize,
    opts: &EnumOptions,
    margin: f64,
) -> Result<Vec<ExtremalRecord>> {
    Ok(extremal_scan_counted(m, f, top_k, opts, margin)?.0)
}

/// As [`extremal_scan_with_margin`], also returning the number of classes ranked.
pub fn extremal_scan_counted(
    m: usize,
    f: &ForbiddenSpec,
    top_k: usize,
    opts: &EnumOptions,
    margin: f64,
) -> Result<(Vec<ExtremalRecord>, usize)> {
    let scored = par_map_graphs(m, Some(f), opts, |_, c| {
        Some(perron(&c.graph, DEFAULT_TOL).map(|p| (c.form(), p.rho)))
    })?;
    let mut scored = scored.into_iter().collect::<Result<Vec<(CanonicalForm, f64)>>>()?;
    let total = scored.len();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    // one extra rank so the last reported rank has a margin
    scored.truncate(top_k + 1);
    let mut recs = rank_records(
        m,
        f.name(),
        Method::Exhaustive,
        scored.into_iter().map(|(c, r)| (c.as_str().to_string(), r)).collect(),
        margin,
    );
    recs.truncate(top_k);
    Ok((recs, total))
}
