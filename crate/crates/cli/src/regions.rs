//! Region flags: `--rect 3x6`, `--aztec N=2,n=3,k=1`, `--stair M=7,n=3`,
//! `--grid path`.

use std::collections::HashMap;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use ribbonry::{build_aztec, build_rectangle, build_stair, Region};

#[derive(Args, Debug, Clone, Default)]
#[group(id = "region", multiple = false)]
pub struct RegionArgs {
    /// Rectangle with ROWS rows and COLS columns, written ROWSxCOLS.
    #[arg(long, value_name = "ROWSxCOLS")]
    pub rect: Option<String>,
    /// Generalized Aztec diamond, e.g. N=2,n=3,k=1 (k defaults to 0).
    #[arg(long, value_name = "N=..,n=..,k=..")]
    pub aztec: Option<String>,
    /// Stair with M rows of n cells, e.g. M=7,n=3.
    #[arg(long, value_name = "M=..,n=..")]
    pub stair: Option<String>,
    /// Grid file: `#` marks a cell, the last line is the bottom row.
    #[arg(long, value_name = "PATH")]
    pub grid: Option<PathBuf>,
}

/// A region together with the ribbon length its parameters imply, if any.
#[derive(Debug, Clone)]
pub struct ResolvedRegion {
    pub region: Region,
    pub implied_n: Option<usize>,
}

fn parse_params(text: &str, allowed: &[&str]) -> Result<HashMap<String, usize>> {
    let mut out = HashMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| anyhow!("expected key=value, got {part:?}"))?;
        let key = key.trim();
        if !allowed.contains(&key) {
            bail!("unknown parameter {key:?}; expected one of {}", allowed.join(", "));
        }
        let value: usize = value.trim().parse().with_context(|| format!("parameter {key} must be a number"))?;
        if out.insert(key.to_string(), value).is_some() {
            bail!("parameter {key} given twice");
        }
    }
    Ok(out)
}

fn require(params: &HashMap<String, usize>, key: &str) -> Result<usize> {
    params.get(key).copied().ok_or_else(|| anyhow!("missing parameter {key}"))
}

pub fn parse_rect(text: &str) -> Result<(usize, usize)> {
    let (rows, cols) = text.split_once(['x', 'X']).ok_or_else(|| anyhow!("expected ROWSxCOLS, got {text:?}"))?;
    let rows = rows.trim().parse().context("rows must be a number")?;
    let cols = cols.trim().parse().context("columns must be a number")?;
    Ok((rows, cols))
}

impl RegionArgs {
    pub fn is_set(&self) -> bool {
        self.rect.is_some() || self.aztec.is_some() || self.stair.is_some() || self.grid.is_some()
    }

    pub fn resolve(&self) -> Result<ResolvedRegion> {
        if let Some(text) = &self.rect {
            let (rows, cols) = parse_rect(text)?;
            return Ok(ResolvedRegion { region: build_rectangle(rows, cols)?, implied_n: None });
        }
        if let Some(text) = &self.aztec {
            let p = parse_params(text, &["N", "n", "k"])?;
            let n = require(&p, "n")?;
            let region = build_aztec(require(&p, "N")?, n, p.get("k").copied().unwrap_or(0))?;
            return Ok(ResolvedRegion { region, implied_n: Some(n) });
        }
        if let Some(text) = &self.stair {
            let p = parse_params(text, &["M", "n"])?;
            let n = require(&p, "n")?;
            let region = build_stair(require(&p, "M")?, n)?;
            return Ok(ResolvedRegion { region, implied_n: Some(n) });
        }
        if let Some(path) = &self.grid {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok(ResolvedRegion { region: Region::parse_grid(&text)?, implied_n: None });
        }
        bail!("no region given; use one of --rect, --aztec, --stair or --grid")
    }
}

/// Ribbon length from `--n`, or from the region parameters. The two must
/// agree when both are present.
pub fn ribbon_length(explicit: Option<usize>, resolved: &ResolvedRegion) -> Result<usize> {
    match (explicit, resolved.implied_n) {
        (Some(a), Some(b)) if a != b => bail!("--n {a} contradicts n={b} in the region parameters"),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => bail!("--n is required for this region"),
    }
}
