//! Connectivity, cut vertices and the block decomposition.

use crate::graph::{bit, members, set_len, Graph, VertexSet};

/// A maximal 2-connected subgraph, or a bridge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: VertexSet,
    /// Edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct Structure {
    pub is_connected: bool,
    pub cut_vertices: VertexSet,
    pub blocks: Vec<Block>,
    /// Indices into `blocks` of blocks containing at most one cut vertex.
    pub end_blocks: Vec<usize>,
}

impl Structure {
    pub fn end_block_iter(&self) -> impl Iterator<Item = &Block> {
        self.end_blocks.iter().map(|&i| &self.blocks[i])
    }
}

/// Vertex sets of the connected components, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<VertexSet> {
    let mut seen: VertexSet = 0;
    let mut out = Vec::new();
    for s in 0..g.order() {
        if seen & bit(s) != 0 {
            continue;
        }
        let comp = reach(g, s, g.vertices());
        seen |= comp;
        out.push(comp);
    }
    out
}

/// Vertices reachable from `s` inside `within`.
pub fn reach(g: &Graph, s: usize, within: VertexSet) -> VertexSet {
    let mut comp = bit(s);
    let mut frontier = bit(s);
    while frontier != 0 {
        let mut next = 0;
        for v in members(frontier) {
            next |= g.neighbors(v);
        }
        frontier = next & within & !comp;
        comp |= frontier;
    }
    comp
}

/// The empty graph and `K_1` count as connected.
pub fn is_connected(g: &Graph) -> bool {
    g.order() <= 1 || reach(g, 0, g.vertices()) == g.vertices()
}

/// `N²(u)`: vertices at distance exactly two from `u`.
pub fn second_neighborhood(g: &Graph, u: usize) -> VertexSet {
    let mut two = 0;
    for v in members(g.neighbors(u)) {
        two |= g.neighbors(v);
    }
    two & !g.closed_neighbors(u)
}

struct Tarjan<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    cut: VertexSet,
    blocks: Vec<Block>,
}

impl Tarjan<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        let mut children = 0;
        for v in members(self.g.neighbors(u)) {
            if self.disc[v] == 0 {
                children += 1;
                self.stack.push((u, v));
                self.visit(v, Some(u));
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    if parent.is_some() {
                        self.cut |= bit(u);
                    }
                    self.pop_block(u, v);
                }
            } else if Some(v) != parent && self.disc[v] < self.disc[u] {
                self.stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
        if parent.is_none() && children > 1 {
            self.cut |= bit(u);
        }
    }

    fn pop_block(&mut self, u: usize, v: usize) {
        let mut edges = Vec::new();
        let mut vertices = 0;
        while let Some((a, b)) = self.stack.pop() {
            edges.push((a.min(b), a.max(b)));
            vertices |= bit(a) | bit(b);
            if (a, b) == (u, v) {
                break;
            }
        }
        edges.sort_unstable();
        self.blocks.push(Block { vertices, edges });
    }
}

pub fn structure(g: &Graph) -> Structure {
    let n = g.order();
    let mut t = Tarjan {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        cut: 0,
        blocks: Vec::new(),
    };
    for s in 0..n {
        if t.disc[s] == 0 {
            t.visit(s, None);
        }
    }
    let cut = t.cut;
    let mut blocks = t.blocks;
    blocks.sort_by_key(|b| b.edges[0]);
    let end_blocks = blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| set_len(b.vertices & cut) <= 1)
        .map(|(i, _)| i)
        .collect();
    Structure {
        is_connected: is_connected(g),
        cut_vertices: cut,
        blocks,
        end_blocks,
    }
}

pub fn cut_vertices(g: &Graph) -> VertexSet {
    structure(g).cut_vertices
}

/// Bridges as `(u, v)` with `u < v`.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    structure(g)
        .blocks
        .into_iter()
        .filter(Block::is_bridge)
        .map(|b| b.edges[0])
        .collect()
}
