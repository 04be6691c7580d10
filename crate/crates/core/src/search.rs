//! Seeded hill climbing over connected pattern-free graphs with `m` edges.
//!
//! # Random streams
//!
//! The generator is xoshiro256++ seeded from the 64-bit seed through
//! SplitMix64 (`Xoshiro256PlusPlus::seed_from_u64`). Restart `i` uses the
//! base state advanced by `i` calls to `jump()` (2^128 steps each), so the
//! restarts draw from disjoint streams and their results do not depend on
//! scheduling. Integer and boolean draws use `rand` 0.9's uniform sampling.
//!
//! # Moves
//!
//! * Rotation: `u` among the three largest Perron entries, `v` below `u` in
//!   the Perron ranking, and either all of `N(v) ∖ N[u]` or one vertex of
//!   it moved from `v` to `u`.
//! * Reattachment: one edge removed and one non-edge added, possibly to a
//!   new pendant vertex.
//!
//! A move that creates the pattern is repaired: the lightest edge of the
//! copy (by `x_a x_b`) is traded for a pendant at the move's target, since
//! a pendant cannot lie in a gem. Isolated vertices are dropped.
//!
//! # Climbing
//!
//! Each round scores the whole neighbourhood of the current graph with a
//! perturbative estimate of the new `ρ` (change `2 x_c x_d − 2 x_a x_b` for
//! an edge swap, plus `x_c² / ρ` for a new pendant vertex), keeps every
//! move estimated to raise `ρ` and the [`SCREEN_WIDTH`] best of the rest,
//! orders them by estimate (random tie-break) and takes the first whose
//! result is connected, pattern-free, not excluded and raises `ρ` by more
//! than the margin. A restart ends when none does or after `max_steps`
//! evaluated moves.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use log::debug;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::forbidden::{
    contains_subgraph_through, find_embedding, find_embedding_through, is_free, ForbiddenSpec,
};
use crate::graph::{bit, members, Graph, VertexSet, MAX_ORDER};
use crate::graph6;
use crate::record::{ExtremalRecord, Method};
use crate::spectral::perron::{perron, PerronData, DEFAULT_MARGIN, DEFAULT_TOL};
use crate::structure::is_connected;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub m: usize,
    pub forbidden: ForbiddenSpec,
    /// Classes that may never be visited.
    pub excluded: Vec<CanonicalForm>,
    pub restarts: usize,
    pub max_steps: usize,
    pub seed: u64,
    pub margin: f64,
    pub tol: f64,
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(m: usize, forbidden: ForbiddenSpec) -> Self {
        SearchConfig {
            m,
            forbidden,
            excluded: Vec::new(),
            restarts: 20,
            max_steps: 200_000,
            seed: 0,
            margin: DEFAULT_MARGIN,
            tol: DEFAULT_TOL,
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        let most = MAX_ORDER * (MAX_ORDER - 1) / 2;
        if self.m == 0 || self.m > most {
            return Err(Error::InvalidArgument(format!("m must be in 1..={most}, got {}", self.m)));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidArgument("max_steps must be positive".into()));
        }
        Ok(())
    }
}

/// Serializable echo of a [`SearchConfig`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub m: usize,
    pub forbidden: String,
    pub excluded: Vec<String>,
    pub restarts: usize,
    pub max_steps: usize,
    pub seed: u64,
    pub margin: f64,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestartResult {
    pub index: usize,
    pub graph6: String,
    pub rho: f64,
    /// Moves evaluated.
    pub steps: usize,
    /// Moves taken.
    pub accepted: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunLog {
    pub config: ConfigEcho,
    pub restarts: Vec<RestartResult>,
    pub best: ExtremalRecord,
    /// Index of the restart that produced `best`.
    pub best_restart: usize,
    #[serde(serialize_with = "as_millis")]
    pub wall_time: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl RunLog {
    pub fn best_graph(&self) -> Graph {
        graph6::decode(&self.best.graph6).expect("run log holds valid graph6")
    }
}

/// Stream for restart `index`.
pub fn restart_rng(seed: u64, index: usize) -> Xoshiro256PlusPlus {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    for _ in 0..index {
        rng.jump();
    }
    rng
}

/// Pattern copies a single move may break before it is abandoned.
pub const MAX_REPAIRS: usize = 4;
/// Moves tried per round beyond those estimated to raise `ρ`.
pub const SCREEN_WIDTH: usize = 256;
/// Residual tolerance for screening candidates.
const SCREEN_TOL: f64 = 1e-7;

struct Excluder {
    entries: Vec<(Vec<usize>, CanonicalForm)>,
}

impl Excluder {
    fn new(forms: &[CanonicalForm]) -> Self {
        Excluder {
            entries: forms
                .iter()
                .map(|f| (f.graph().without_isolated().degree_sequence(), f.clone()))
                .collect(),
        }
    }

    fn excludes(&self, g: &Graph) -> bool {
        if self.entries.is_empty() {
            return false;
        }
        let ds = g.degree_sequence();
        let mut form = None;
        self.entries.iter().any(|(d, f)| {
            *d == ds && form.get_or_insert_with(|| canonical_form(g)) == f
        })
    }
}

struct Climber<'a> {
    cfg: &'a SearchConfig,
    excluder: &'a Excluder,
}

impl Climber<'_> {
    fn feasible(&self, g: &Graph) -> bool {
        is_connected(g) && !self.excluder.excludes(g)
    }

    fn random_start(&self, rng: &mut Xoshiro256PlusPlus) -> Result<Graph> {
        let m = self.cfg.m;
        let lo = ((4 * m) as f64).sqrt().ceil() as usize;
        let hi = (m + 1).min(MAX_ORDER);
        let lo = lo.clamp(2, hi);
        for _ in 0..200 {
            let n = rng.random_range(lo..=hi);
            let mut g = crate::random::random_connected(rng, n, 0.0);
            if g.size() > m {
                continue;
            }
            let mut pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            pairs.shuffle(rng);
            let free = is_free(&g, &self.cfg.forbidden);
            if !free {
                continue;
            }
            for (u, v) in pairs {
                if g.size() == m {
                    break;
                }
                if g.has_edge(u, v) {
                    continue;
                }
                g.add_edge(u, v);
                if contains_subgraph_through(&g, &self.cfg.forbidden, &[(u, v)]) {
                    g.remove_edge(u, v);
                }
            }
            if g.size() == m && self.feasible(&g) {
                return Ok(g);
            }
        }
        Err(Error::NoFeasibleStart(format!(
            "no connected {}-free start with {m} edges after 200 attempts",
            self.cfg.forbidden.name()
        )))
    }

    /// Breaks every copy of the pattern by deleting its edge of least
    /// Perron weight `x_a x_b` (never a just-added edge) and hanging a
    /// pendant on `anchor` in its place, at most [`MAX_REPAIRS`] times.
    fn repair(&self, h: &mut Graph, added: &[(usize, usize)], anchor: usize, x: &[f64]) -> Option<()> {
        let f = &self.cfg.forbidden;
        // the base is pattern-free; with no pendant in the pattern, deletions
        // and new pendants create no copy, so every copy uses an added edge
        let local = f.pattern().min_degree() >= 2;
        let weight = |v: usize| x.get(v).copied().unwrap_or(0.0);
        for _ in 0..=MAX_REPAIRS {
            let found = if local {
                find_embedding_through(h, f, added)
            } else {
                find_embedding(h, f)
            };
            let Some(w) = found else {
                return Some(());
            };
            let (a, b) = f
                .pattern()
                .edges()
                .map(|(p, q)| (w[p].min(w[q]), w[p].max(w[q])))
                .filter(|&(a, b)| !added.iter().any(|&(c, d)| (c.min(d), c.max(d)) == (a, b)))
                .min_by(|e, f| (weight(e.0) * weight(e.1)).total_cmp(&(weight(f.0) * weight(f.1))))?;
            h.remove_edge(a, b);
            let z = h.add_vertex().ok()?;
            h.add_edge(anchor, z);
        }
        None
    }

    /// Every rotation towards one of the three largest Perron entries
    /// (whole set and single vertices) and every single-edge reattachment,
    /// ranked by a perturbative estimate of the new `ρ`. Moves estimated
    /// not to raise `ρ` are cut to the best [`SCREEN_WIDTH`].
    fn neighbourhood(&self, g: &Graph, p: &PerronData, rng: &mut Xoshiro256PlusPlus) -> Vec<Ranked> {
        let n = g.order();
        let x = &p.x;
        let rho = p.rho;
        let mut above = Vec::new();
        let mut below: BinaryHeap<Reverse<Ranked>> = BinaryHeap::with_capacity(SCREEN_WIDTH + 1);
        // the smallest estimate still worth generating
        let floor = |below: &BinaryHeap<Reverse<Ranked>>| {
            if below.len() < SCREEN_WIDTH {
                f64::NEG_INFINITY
            } else {
                below.peek().map_or(f64::NEG_INFINITY, |r| r.0.est)
            }
        };
        let mut push = |below: &mut BinaryHeap<Reverse<Ranked>>, est: f64, mv: Move| {
            let r = Ranked { est, key: rng.random(), mv };
            if est > rho {
                above.push(r);
            } else if below.len() < SCREEN_WIDTH {
                below.push(Reverse(r));
            } else if below.peek().is_some_and(|min| r > min.0) {
                below.pop();
                below.push(Reverse(r));
            }
        };
        let ranking = p.ranking();
        for (i, &u) in ranking.iter().take(3).enumerate() {
            for &v in &ranking[i + 1..] {
                let cand = g.neighbors(v) & !g.closed_neighbors(u);
                if cand == 0 {
                    continue;
                }
                let gain = |s: VertexSet| rho + 2.0 * (x[u] - x[v]) * members(s).map(|w| x[w]).sum::<f64>();
                push(&mut below, gain(cand), Move::Rotate { u, v, moved: cand });
                if cand.count_ones() > 1 {
                    for w in members(cand) {
                        push(&mut below, gain(bit(w)), Move::Rotate { u, v, moved: bit(w) });
                    }
                }
            }
        }
        // additions by decreasing gain, so each scan can stop early
        let mut pairs: Vec<(f64, usize, Option<usize>)> = Vec::new();
        for c in 0..n {
            for d in c + 1..n {
                if !g.has_edge(c, d) {
                    pairs.push((2.0 * x[c] * x[d], c, Some(d)));
                }
            }
            if n < MAX_ORDER {
                pairs.push((x[c] * x[c] / rho, c, None));
            }
        }
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        for (a, b) in g.edges() {
            let lost = rho - 2.0 * x[a] * x[b];
            for &(gain, c, d) in &pairs {
                let est = lost + gain;
                if est <= rho && est < floor(&below) {
                    break;
                }
                push(&mut below, est, Move::Reattach { remove: (a, b), add: (c, d) });
            }
        }
        above.sort_unstable_by(|a, b| b.cmp(a));
        above.extend(below.into_sorted_vec().into_iter().map(|Reverse(r)| r));
        above
    }

    fn apply(&self, g: &Graph, p: &PerronData, mv: Move) -> Option<Graph> {
        let mut h = g.clone();
        let (added, anchor) = match mv {
            Move::Rotate { u, v, moved } => {
                for w in members(moved) {
                    h.remove_edge(v, w);
                    h.add_edge(u, w);
                }
                (members(moved).map(|w| (u, w)).collect::<Vec<_>>(), u)
            }
            Move::Reattach { remove: (a, b), add: (c, d) } => {
                h.remove_edge(a, b);
                let d = match d {
                    Some(d) => d,
                    None => h.add_vertex().ok()?,
                };
                h.add_edge(c, d);
                (vec![(c, d)], p.extremal_vertex())
            }
        };
        self.repair(&mut h, &added, anchor, &p.x)?;
        let h = h.without_isolated();
        self.feasible(&h).then_some(h)
    }

    fn run(&self, index: usize) -> Result<(Graph, RestartResult)> {
        let cfg = self.cfg;
        let mut rng = restart_rng(cfg.seed, index);
        let mut cur = self.random_start(&mut rng)?;
        let mut p = perron(&cur, cfg.tol)?;
        let screen_tol = cfg.tol.max(SCREEN_TOL);
        let (mut steps, mut accepted) = (0, 0);
        'climb: while steps < cfg.max_steps {
            for Ranked { mv, .. } in self.neighbourhood(&cur, &p, &mut rng) {
                if steps == cfg.max_steps {
                    break 'climb;
                }
                steps += 1;
                let Some(h) = self.apply(&cur, &p, mv) else {
                    continue;
                };
                debug_assert_eq!(h.size(), cfg.m);
                debug_assert!(is_free(&h, &cfg.forbidden));
                // the Rayleigh quotient is accurate to the square of the residual
                if perron(&h, screen_tol)?.rho - p.rho <= cfg.margin {
                    continue;
                }
                let q = perron(&h, cfg.tol)?;
                if q.rho - p.rho > cfg.margin {
                    cur = h;
                    p = q;
                    accepted += 1;
                    continue 'climb;
                }
            }
            // no improving move among those screened: local optimum
            break;
        }
        debug!("restart {index}: rho={} after {steps} steps", p.rho);
        let result = RestartResult {
            index,
            graph6: graph6::encode(&cur),
            rho: p.rho,
            steps,
            accepted,
        };
        Ok((cur, result))
    }
}

/// A move with its estimated `ρ` and a random tie-break.
#[derive(Clone, Copy, Debug)]
struct Ranked {
    est: f64,
    key: u64,
    mv: Move,
}

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ranked {}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.total_cmp(&other.est).then(self.key.cmp(&other.key))
    }
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Rotate { u: usize, v: usize, moved: VertexSet },
    /// Delete `remove`, then join `add.0` to `add.1` or to a new vertex.
    Reattach { remove: (usize, usize), add: (usize, Option<usize>) },
}

/// Runs `cfg.restarts` independent climbs and keeps the best.
pub fn local_search(cfg: &SearchConfig) -> Result<RunLog> {
    cfg.validate()?;
    let start = Instant::now();
    let excluder = Excluder::new(&cfg.excluded);
    let climber = Climber {
        cfg,
        excluder: &excluder,
    };
    let runs: Vec<Result<(Graph, RestartResult)>> = if cfg.parallel {
        (0..cfg.restarts).into_par_iter().map(|i| climber.run(i)).collect()
    } else {
        (0..cfg.restarts).map(|i| climber.run(i)).collect()
    };
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let mut best_i = 0;
    for (i, (_, r)) in runs.iter().enumerate() {
        if r.rho > runs[best_i].1.rho {
            best_i = i;
        }
    }
    let (_, best) = &runs[best_i];
    let record = ExtremalRecord {
        m: cfg.m,
        forbidden: cfg.forbidden.name().to_string(),
        rank: 1 + cfg.excluded.len(),
        graph6: best.graph6.clone(),
        rho: best.rho,
        method: Method::LocalSearch,
        margin: None,
        indistinguishable: false,
        verdict: None,
    };
    Ok(RunLog {
        config: ConfigEcho {
            m: cfg.m,
            forbidden: cfg.forbidden.name().to_string(),
            excluded: cfg.excluded.iter().map(|f| f.to_string()).collect(),
            restarts: cfg.restarts,
            max_steps: cfg.max_steps,
            seed: cfg.seed,
            margin: cfg.margin,
            tol: cfg.tol,
        },
        best_restart: best_i,
        restarts: runs.into_iter().map(|(_, r)| r).collect(),
        best: record,
        wall_time: start.elapsed(),
    })
}
