//! Ranked extremal records shared by scans, searches, certification and
//! the store.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forbidden::{is_free, ForbiddenSpec};
use crate::graph6;
use crate::structure::is_connected;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    ConstructionPool,
    LocalSearch,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::ConstructionPool => "construction-pool",
            Method::LocalSearch => "local-search",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "construction-pool" | "pool" => Ok(Method::ConstructionPool),
            "local-search" | "search" => Ok(Method::LocalSearch),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

/// Outcome of checking a predicted ranking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A deciding gap fell below the comparison margin.
    Indistinguishable,
    /// No prediction exists for these parameters.
    Unjudged,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Indistinguishable => "indistinguishable",
            Verdict::Unjudged => "unjudged",
        }
    }

    /// Process exit code for a verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Unjudged => 0,
            Verdict::Fail | Verdict::Indistinguishable => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pass" => Ok(Verdict::Pass),
            "fail" => Ok(Verdict::Fail),
            "indistinguishable" => Ok(Verdict::Indistinguishable),
            "unjudged" => Ok(Verdict::Unjudged),
            _ => Err(Error::InvalidArgument(format!("unknown verdict {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub m: usize,
    /// Name of the forbidden pattern.
    pub forbidden: String,
    /// 1 for the maximizer.
    pub rank: usize,
    pub graph6: String,
    pub rho: f64,
    pub method: Method,
    /// `ρ(rank) − ρ(rank + 1)`, absent for the last listed rank.
    pub margin: Option<f64>,
    /// Margin at or below the comparison margin.
    #[serde(default)]
    pub indistinguishable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

impl ExtremalRecord {
    /// Decodes the graph and checks it is connected, `f`-free and has `m` edges.
    pub fn validate(&self, f: &ForbiddenSpec) -> Result<()> {
        let g = graph6::decode(&self.graph6)?;
        if g.size() != self.m {
            return Err(Error::InvalidArgument(format!(
                "record has {} edges, expected {}",
                g.size(),
                self.m
            )));
        }
        if !is_connected(&g.without_isolated()) || g.isolated_vertices() != 0 {
            return Err(Error::InvalidArgument("record graph is not connected".into()));
        }
        if !is_free(&g, f) {
            return Err(Error::InvalidArgument(format!("record graph contains {}", f.name())));
        }
        Ok(())
    }
}

/// Ranks `(graph6, rho)` pairs by decreasing `rho` (ties by graph6) and
/// fills in ranks and margins.
pub fn rank_records(
    m: usize,
    forbidden: &str,
    method: Method,
    mut entries: Vec<(String, f64)>,
    margin: f64,
) -> Vec<ExtremalRecord> {
    entries.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let rhos: Vec<f64> = entries.iter().map(|e| e.1).collect();
    entries
        .into_iter()
        .enumerate()
        .map(|(i, (graph6, rho))| {
            let gap = rhos.get(i + 1).map(|next| rho - next);
            ExtremalRecord {
                m,
                forbidden: forbidden.to_string(),
                rank: i + 1,
                graph6,
                rho,
                method,
                margin: gap,
                indistinguishable: gap.is_some_and(|g| g <= margin),
                verdict: None,
            }
        })
        .collect()
}
