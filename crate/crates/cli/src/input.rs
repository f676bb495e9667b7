use std::io::{self, BufRead};

use dellac_core::tpath::PartialTableau;
use dellac_core::{Object, SurjectivePistol, Tableau};

use crate::cmd::CliError;
use crate::ObjectArgs;

fn parse_one(s: &str) -> Result<Object, CliError> {
    let s = s.trim();
    if s.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| CliError::Usage(format!("bad JSON object {s:?}: {e}")))?;
        return Ok(Object::from_json(&v)?);
    }
    Ok(s.parse()?)
}

/// The objects named by `args`, or every non-empty line of stdin.
pub fn objects(args: &ObjectArgs) -> Result<Vec<Object>, CliError> {
    if let Some(s) = args
        .encoding
        .as_ref()
        .or(args.tableau.as_ref())
        .or(args.pistol.as_ref())
    {
        return Ok(vec![parse_one(s)?]);
    }
    let mut out = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(parse_one(&line)?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(
            "no object given (pass one as an argument or on stdin)".into(),
        ));
    }
    Ok(out)
}

pub fn tableaux(args: &ObjectArgs) -> Result<Vec<Tableau>, CliError> {
    objects(args)?
        .into_iter()
        .map(|o| match o {
            Object::Tableau(t) => Ok(t),
            other => Err(CliError::Usage(format!(
                "expected a tableau, got {}",
                other.encode()
            ))),
        })
        .collect()
}

pub fn pistols(args: &ObjectArgs) -> Result<Vec<SurjectivePistol>, CliError> {
    objects(args)?
        .into_iter()
        .map(|o| match o {
            Object::Pistol(f) => Ok(f),
            other => Err(CliError::Usage(format!(
                "expected a pistol, got {}",
                other.encode()
            ))),
        })
        .collect()
}

/// `T n=<n> cols=...` where 0 marks an empty row.
pub fn partial_tableau(s: &str) -> Result<PartialTableau, CliError> {
    let bad = || CliError::Usage(format!("cannot read partial tableau {s:?}"));
    let mut parts = s.split_whitespace();
    if parts.next() != Some("T") {
        return Err(bad());
    }
    let n: usize = parts
        .next()
        .and_then(|p| p.strip_prefix("n="))
        .and_then(|p| p.parse().ok())
        .ok_or_else(bad)?;
    let cols = parts
        .next()
        .and_then(|p| p.strip_prefix("cols="))
        .ok_or_else(bad)?
        .split(',')
        .map(|c| c.parse::<usize>().map(|c| (c > 0).then_some(c)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(PartialTableau::new(n, cols)?)
}
