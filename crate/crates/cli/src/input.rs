//! Graph arguments: graph6 strings, `name:params` family specs, or graph6
//! lines on stdin when no argument is given.

use std::io::BufRead;

use anyhow::{Context, Result};
use spectral_turan::{build_family, graph6, FamilySpec, ForbiddenSpec, Graph};

/// A parsed graph argument and the family it names, if any.
pub struct Input {
    pub label: String,
    pub graph: Graph,
    pub family: Option<FamilySpec>,
}

/// `:` never occurs in graph6, so it marks a family spec.
pub fn parse(arg: &str) -> Result<Input> {
    let arg = arg.trim();
    if arg.contains(':') && !arg.starts_with(">>") {
        let spec: FamilySpec = arg.parse()?;
        let graph = build_family(&spec)?;
        return Ok(Input {
            label: spec.to_string(),
            graph,
            family: Some(spec),
        });
    }
    let graph = graph6::decode(arg).with_context(|| format!("cannot read graph {arg:?}"))?;
    Ok(Input {
        label: arg.to_string(),
        graph,
        family: None,
    })
}

pub fn collect(args: &[String]) -> Result<Vec<Input>> {
    if !args.is_empty() {
        return args.iter().map(|a| parse(a)).collect();
    }
    let mut out = Vec::new();
    for (i, line) in std::io::stdin().lock().lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse(&line).with_context(|| format!("stdin line {}", i + 1))?);
    }
    Ok(out)
}

/// `gem` or any graph argument.
pub fn pattern(arg: &str) -> Result<ForbiddenSpec> {
    if arg == "gem" {
        return Ok(ForbiddenSpec::gem());
    }
    let input = parse(arg)?;
    Ok(ForbiddenSpec::named(input.graph, input.label)?)
}
