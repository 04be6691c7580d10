//! Named graph constructions.
//!
//! Labelling is fixed so tests can refer to vertices by index: clique
//! vertices come first, then the independent set, then pendant vertices.
//! Hubs and centres are always vertex 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{join, Graph, MAX_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `P_n`.
    Path { n: usize },
    /// `C_n`.
    Cycle { n: usize },
    /// `K_{1,n-1}`.
    Star { n: usize },
    /// `K_{s,t}`.
    CompleteBipartite { s: usize, t: usize },
    /// `K_n`.
    Complete { n: usize },
    /// `S_{n,k}`: `K_k` joined to `n-k` isolated vertices.
    Snk { n: usize, k: usize },
    /// `S_{n,k}^t`: `S_{n-t,k}` with `t` pendants on vertex 0.
    SnkT { n: usize, k: usize, t: usize },
    /// `S_n^k`: `K_{1,n-1}` plus `k` disjoint edges among the leaves.
    StarMatching { n: usize, k: usize },
    /// `H_n`: `K_1` joined to `P_{n-1}`. `H_5` is the gem.
    Fan { n: usize },
    /// `SK_{2,t}`: `K_{2,t}` with one edge subdivided.
    SubdividedK2t { t: usize },
    /// `K_k ∨ qK_1`.
    JoinCliqueEmpty { k: usize, q: usize },
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl FamilySpec {
    /// `S_{(m+3)/2,2}`, defined for odd `m ≥ 3`.
    pub fn book_for_size(m: usize) -> Result<Self> {
        if m.is_multiple_of(2) || m < 3 {
            return Err(Error::Parity(format!(
                "S_{{(m+3)/2,2}} needs odd m >= 3, got {m}"
            )));
        }
        Ok(FamilySpec::Snk { n: (m + 3) / 2, k: 2 })
    }

    /// `S_{(m+t+3)/2,2}^t`, defined when `m + t` is odd.
    pub fn pendant_book_for_size(m: usize, t: usize) -> Result<Self> {
        if !(m + t + 3).is_multiple_of(2) {
            return Err(Error::Parity(format!(
                "S^t_{{(m+t+3)/2,2}} needs m + t odd, got m={m}, t={t}"
            )));
        }
        let spec = FamilySpec::SnkT {
            n: (m + t + 3) / 2,
            k: 2,
            t,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Star { .. } => "star",
            FamilySpec::CompleteBipartite { .. } => "kbip",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Snk { .. } => "snk",
            FamilySpec::SnkT { .. } => "snkt",
            FamilySpec::StarMatching { .. } => "star-matching",
            FamilySpec::Fan { .. } => "fan",
            FamilySpec::SubdividedK2t { .. } => "sk2t",
            FamilySpec::JoinCliqueEmpty { .. } => "join-clique",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            FamilySpec::Path { n }
            | FamilySpec::Cycle { n }
            | FamilySpec::Star { n }
            | FamilySpec::Complete { n }
            | FamilySpec::Fan { n } => vec![n],
            FamilySpec::CompleteBipartite { s, t } => vec![s, t],
            FamilySpec::Snk { n, k } | FamilySpec::StarMatching { n, k } => vec![n, k],
            FamilySpec::SnkT { n, k, t } => vec![n, k, t],
            FamilySpec::SubdividedK2t { t } => vec![t],
            FamilySpec::JoinCliqueEmpty { k, q } => vec![k, q],
        }
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidFamily {
            family: self.to_string(),
            reason: reason.into(),
        }
    }

    /// Checks the parameter domain of the kind (not the order limit).
    pub fn validate(&self) -> Result<()> {
        let bad = |cond: bool, reason: &str| {
            if cond {
                Err(self.invalid(reason))
            } else {
                Ok(())
            }
        };
        match *self {
            FamilySpec::Path { n } => bad(n < 1, "requires n >= 1"),
            FamilySpec::Cycle { n } => bad(n < 3, "requires n >= 3"),
            FamilySpec::Star { n } => bad(n < 2, "requires n >= 2"),
            FamilySpec::CompleteBipartite { s, t } => bad(s < 1 || t < 1, "requires s, t >= 1"),
            FamilySpec::Complete { n } => bad(n < 1, "requires n >= 1"),
            FamilySpec::Snk { n, k } => {
                bad(k < 1, "requires k >= 1")?;
                bad(n <= k, "requires n > k")
            }
            FamilySpec::SnkT { n, k, t } => {
                bad(k < 1, "requires k >= 1")?;
                bad(n < t || n - t <= k, "requires n - t > k")
            }
            FamilySpec::StarMatching { n, k } => {
                bad(n < 2, "requires n >= 2")?;
                bad(2 * k > n - 1, "requires 2k <= n - 1")
            }
            FamilySpec::Fan { n } => bad(n < 2, "requires n >= 2"),
            FamilySpec::SubdividedK2t { t } => bad(t < 1, "requires t >= 1"),
            FamilySpec::JoinCliqueEmpty { k, q } => bad(k < 1 || q < 1, "requires k, q >= 1"),
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Path { n }
            | FamilySpec::Cycle { n }
            | FamilySpec::Star { n }
            | FamilySpec::Complete { n }
            | FamilySpec::Snk { n, .. }
            | FamilySpec::SnkT { n, .. }
            | FamilySpec::StarMatching { n, .. }
            | FamilySpec::Fan { n } => n,
            FamilySpec::CompleteBipartite { s, t } => s + t,
            FamilySpec::SubdividedK2t { t } => t + 3,
            FamilySpec::JoinCliqueEmpty { k, q } => k + q,
        }
    }

    /// Edge count from the closed-form definition.
    pub fn size(&self) -> usize {
        match *self {
            FamilySpec::Path { n } => n - 1,
            FamilySpec::Cycle { n } => n,
            FamilySpec::Star { n } => n - 1,
            FamilySpec::CompleteBipartite { s, t } => s * t,
            FamilySpec::Complete { n } => choose2(n),
            FamilySpec::Snk { n, k } => choose2(k) + k * (n - k),
            FamilySpec::SnkT { n, k, t } => choose2(k) + k * (n - t - k) + t,
            FamilySpec::StarMatching { n, k } => n - 1 + k,
            FamilySpec::Fan { n } => 2 * n - 3,
            FamilySpec::SubdividedK2t { t } => 2 * t + 1,
            FamilySpec::JoinCliqueEmpty { k, q } => choose2(k) + k * q,
        }
    }
}

/// Builds the named graph.
pub fn build_family(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.order();
    if n > MAX_ORDER {
        return Err(spec.invalid(format!("order {n} exceeds {MAX_ORDER}")));
    }
    let mut g = Graph::empty(n);
    match *spec {
        FamilySpec::Path { n } => {
            for i in 1..n {
                g.add_edge(i - 1, i);
            }
        }
        FamilySpec::Cycle { n } => {
            for i in 0..n {
                g.add_edge(i, (i + 1) % n);
            }
        }
        FamilySpec::Star { n } => {
            for i in 1..n {
                g.add_edge(0, i);
            }
        }
        FamilySpec::CompleteBipartite { s, t } => {
            for a in 0..s {
                for b in s..s + t {
                    g.add_edge(a, b);
                }
            }
        }
        FamilySpec::Complete { n } => {
            for a in 0..n {
                for b in a + 1..n {
                    g.add_edge(a, b);
                }
            }
        }
        FamilySpec::Snk { k, .. } | FamilySpec::JoinCliqueEmpty { k, .. } => {
            let clique = build_family(&FamilySpec::Complete { n: k })?;
            return join(&clique, &Graph::empty(n - k));
        }
        FamilySpec::SnkT { n, k, t } => {
            let base = n - t;
            for a in 0..k {
                for b in a + 1..base {
                    g.add_edge(a, b);
                }
            }
            for p in base..n {
                g.add_edge(0, p);
            }
        }
        FamilySpec::StarMatching { n, k } => {
            for i in 1..n {
                g.add_edge(0, i);
            }
            for j in 0..k {
                g.add_edge(2 * j + 1, 2 * j + 2);
            }
        }
        FamilySpec::Fan { n } => {
            for i in 1..n {
                g.add_edge(0, i);
                if i > 1 {
                    g.add_edge(i - 1, i);
                }
            }
        }
        FamilySpec::SubdividedK2t { t } => {
            // a = 0, b = 1, independent side 2..t+2, subdivision vertex t+2
            let s = t + 2;
            for c in 2..t + 2 {
                g.add_edge(1, c);
                if c != 2 {
                    g.add_edge(0, c);
                }
            }
            g.add_edge(0, s);
            g.add_edge(s, 2);
        }
    }
    Ok(g)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}:{}", self.name(), params.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `name:p1,p2,...`, e.g. `snkt:14,2,2` or `fan:5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidArgument(format!("family '{s}': {reason}"));
        let (name, rest) = s.split_once(':').ok_or_else(|| bad("expected name:params"))?;
        let p: Vec<usize> = rest
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("parameters must be non-negative integers"))?;
        let arity = |k: usize| {
            if p.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} parameter(s)")))
            }
        };
        let spec = match name.trim() {
            "path" => arity(1).map(|_| FamilySpec::Path { n: p[0] }),
            "cycle" => arity(1).map(|_| FamilySpec::Cycle { n: p[0] }),
            "star" => arity(1).map(|_| FamilySpec::Star { n: p[0] }),
            "kbip" => arity(2).map(|_| FamilySpec::CompleteBipartite { s: p[0], t: p[1] }),
            "complete" => arity(1).map(|_| FamilySpec::Complete { n: p[0] }),
            "snk" => arity(2).map(|_| FamilySpec::Snk { n: p[0], k: p[1] }),
            "snkt" => arity(3).map(|_| FamilySpec::SnkT {
                n: p[0],
                k: p[1],
                t: p[2],
            }),
            "star-matching" => arity(2).map(|_| FamilySpec::StarMatching { n: p[0], k: p[1] }),
            "fan" => arity(1).map(|_| FamilySpec::Fan { n: p[0] }),
            "sk2t" => arity(1).map(|_| FamilySpec::SubdividedK2t { t: p[0] }),
            "join-clique" => arity(2).map(|_| FamilySpec::JoinCliqueEmpty { k: p[0], q: p[1] }),
            other => Err(bad(&format!("unknown family '{other}'"))),
        }?;
        spec.validate()?;
        Ok(spec)
    }
}
