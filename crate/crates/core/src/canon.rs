//! Canonical labelling by individualization and refinement.
//!
//! Ordered partitions are refined to equitable ones with a splitter queue;
//! fragments are ordered by their neighbour count into the splitter, so
//! the procedure commutes with relabelling. The search tree individualizes
//! vertices of the first smallest non-singleton cell. Each leaf yields a
//! relabelled graph; the canonical graph is the largest one under
//! [`Graph`]'s ordering. Leaves that reproduce the first or the best graph
//! give automorphisms, which prune children by orbit and trigger a jump
//! back to the deepest common ancestor.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{bit, members, set_len, Graph, VertexSet};
use crate::graph6;

/// Isomorphism-invariant encoding: the graph6 string of the canonical graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The canonical representative.
    pub fn graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical form holds valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Result of a canonical labelling run.
#[derive(Clone, Debug)]
pub struct Canonization {
    /// `labeling[v]` is the canonical label of vertex `v`.
    pub labeling: Vec<usize>,
    /// `g.permuted(&labeling)`.
    pub graph: Graph,
    /// Generators of `Aut(g)` as images `γ[v]`.
    pub generators: Vec<Vec<usize>>,
}

impl Canonization {
    pub fn form(&self) -> CanonicalForm {
        CanonicalForm(graph6::encode(&self.graph))
    }

    /// Orbit representative (smallest member) of every vertex.
    pub fn orbits(&self) -> Vec<usize> {
        let n = self.labeling.len();
        let mut uf = UnionFind::new(n);
        for gen in &self.generators {
            for (v, &w) in gen.iter().enumerate() {
                uf.union(v, w);
            }
        }
        let mut rep = vec![usize::MAX; n];
        for v in 0..n {
            let r = uf.find(v);
            if rep[r] == usize::MAX {
                rep[r] = v;
            }
        }
        (0..n).map(|v| rep[uf.find(v)]).collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so representatives are stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Refines `cells` to the coarsest equitable refinement reachable from the
/// splitters in `queue`.
fn refine(g: &Graph, cells: &mut Vec<VertexSet>, mut queue: VecDeque<VertexSet>) {
    let mut groups: Vec<(usize, VertexSet)> = Vec::new();
    while let Some(splitter) = queue.pop_front() {
        let mut i = 0;
        while i < cells.len() {
            let cell = cells[i];
            if set_len(cell) == 1 {
                i += 1;
                continue;
            }
            groups.clear();
            for v in members(cell) {
                let c = g.degree_in(v, splitter);
                match groups.iter_mut().find(|(k, _)| *k == c) {
                    Some((_, s)) => *s |= bit(v),
                    None => groups.push((c, bit(v))),
                }
            }
            if groups.len() == 1 {
                i += 1;
                continue;
            }
            groups.sort_unstable_by_key(|&(c, _)| c);
            let k = groups.len();
            cells.splice(i..=i, groups.iter().map(|&(_, s)| s));
            queue.extend(groups.iter().map(|&(_, s)| s));
            i += k;
        }
    }
}

struct Leaf {
    seq: Vec<usize>,
    lab: Vec<usize>,
    graph: Graph,
}

struct Searcher<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Searcher<'_> {
    fn automorphism(&mut self, lab: &[usize], target: &[usize]) {
        let mut gamma = vec![0; lab.len()];
        for (i, &v) in lab.iter().enumerate() {
            gamma[v] = target[i];
        }
        if gamma.iter().enumerate().any(|(v, &w)| v != w) && !self.generators.contains(&gamma) {
            self.generators.push(gamma);
        }
    }

    /// Returns the depth to jump back to, if any.
    fn leaf(&mut self, cells: &[VertexSet], seq: &[usize]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut perm = vec![0; lab.len()];
        for (pos, &v) in lab.iter().enumerate() {
            perm[v] = pos;
        }
        let graph = self.g.permuted(&perm);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                seq: seq.to_vec(),
                lab,
                graph,
            };
            self.best = Some(Leaf {
                seq: leaf.seq.clone(),
                lab: leaf.lab.clone(),
                graph: leaf.graph.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if graph == first.graph {
            let (target, level) = (first.lab.clone(), common_prefix(seq, &first.seq));
            self.automorphism(&lab, &target);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best set with first");
        if graph == best.graph {
            let (target, level) = (best.lab.clone(), common_prefix(seq, &best.seq));
            self.automorphism(&lab, &target);
            return Some(level);
        }
        if graph > best.graph {
            self.best = Some(Leaf {
                seq: seq.to_vec(),
                lab,
                graph,
            });
        }
        None
    }

    fn same_orbit(&self, w: usize, explored: &[usize], seq: &[usize]) -> bool {
        let n = self.g.order();
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for gen in &self.generators {
            if seq.iter().all(|&v| gen[v] == v) {
                any = true;
                for (v, &x) in gen.iter().enumerate() {
                    uf.union(v, x);
                }
            }
        }
        if !any {
            return false;
        }
        let r = uf.find(w);
        explored.iter().any(|&e| uf.find(e) == r)
    }

    fn visit(&mut self, cells: Vec<VertexSet>, seq: &mut Vec<usize>) -> Option<usize> {
        let mut target = None;
        let mut target_len = usize::MAX;
        for (i, &c) in cells.iter().enumerate() {
            let len = set_len(c);
            if len > 1 && len < target_len {
                target = Some(i);
                target_len = len;
            }
        }
        let Some(t) = target else {
            return self.leaf(&cells, seq);
        };
        let depth = seq.len();
        let mut explored = Vec::new();
        for w in members(cells[t]) {
            if !explored.is_empty() && self.same_orbit(w, &explored, seq) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(bit(w));
            child.push(cells[t] & !bit(w));
            child.extend_from_slice(&cells[t + 1..]);
            refine(self.g, &mut child, VecDeque::from([bit(w)]));
            seq.push(w);
            let jump = self.visit(child, seq);
            seq.pop();
            explored.push(w);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }
}

/// Canonical labelling, canonical graph and automorphism generators.
pub fn canonize(g: &Graph) -> Canonization {
    let n = g.order();
    let mut cells = Vec::new();
    if n > 0 {
        cells.push(g.vertices());
        refine(g, &mut cells, VecDeque::from([g.vertices()]));
    }
    let mut s = Searcher {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    s.visit(cells, &mut Vec::new());
    let best = s.best.expect("search reaches a leaf");
    let mut labeling = vec![0; n];
    for (pos, &v) in best.lab.iter().enumerate() {
        labeling[v] = pos;
    }
    Canonization {
        labeling,
        graph: best.graph,
        generators: s.generators,
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonize(g).form()
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.size() == h.size()
        && g.degree_sequence() == h.degree_sequence()
        && canonize(g).graph == canonize(h).graph
}

/// Orbit representative (smallest member) of every vertex under `Aut(g)`.
pub fn orbits(g: &Graph) -> Vec<usize> {
    canonize(g).orbits()
}
