//! Tournament sources named on the command line.
//!
//! A source is `-` (stdin), a path to a `TRN v1` file, or an inline
//! construction: `transitive:N`, `cyclic:N`, `interval:N:S`, `random:N[:SEED]`.

use std::fs::File;
use std::io::{self, BufReader};

use anyhow::{Context, Result};
use tourprof_core::tournament::{cyclic, interval, random_tournament, read_trn, transitive};
use tourprof_core::Tournament;

use crate::UsageError;

fn number<T: std::str::FromStr>(field: &str, what: &str, spec: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| UsageError(format!("bad {what} '{field}' in source '{spec}'")).into())
}

fn inline(spec: &str) -> Option<Result<Tournament>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let built = match parts.as_slice() {
        ["transitive", n] => number(n, "order", spec).map(transitive),
        ["cyclic", n] => number(n, "order", spec).and_then(|n| Ok(cyclic(n)?)),
        ["interval", n, s] => number(n, "order", spec)
            .and_then(|n| Ok(interval(n, number(s, "span", spec)?)?)),
        ["random", n] => number(n, "order", spec).map(|n| random_tournament(n, 0)),
        ["random", n, seed] => {
            number(n, "order", spec).and_then(|n| Ok(random_tournament(n, number(seed, "seed", spec)?)))
        }
        [name, ..] if matches!(*name, "transitive" | "cyclic" | "interval" | "random") => {
            Err(UsageError(format!("wrong number of fields in source '{spec}'")).into())
        }
        _ => return None,
    };
    Some(built)
}

/// Resolves a source string to a tournament.
pub fn load(spec: &str) -> Result<Tournament> {
    if spec == "-" {
        return read_trn(io::stdin().lock()).context("reading tournament from stdin");
    }
    if let Some(t) = inline(spec) {
        return t;
    }
    let file = File::open(spec).with_context(|| format!("cannot open '{spec}'"))?;
    read_trn(BufReader::new(file)).with_context(|| format!("reading '{spec}'"))
}

/// Host tournament for a blow-up: `T<m>` (transitive), `C<m>` (cyclic) or any source.
pub fn host(spec: &str) -> Result<Tournament> {
    let (kind, rest) = spec.split_at(1.min(spec.len()));
    if let Ok(m) = rest.parse::<usize>() {
        match kind {
            "T" => return Ok(transitive(m)),
            "C" => return Ok(cyclic(m)?),
            _ => {}
        }
    }
    load(spec)
}
