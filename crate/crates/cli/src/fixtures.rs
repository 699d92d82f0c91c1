use std::path::{Path, PathBuf};

use serde::Deserialize;
use wallcross::algebra::{parse_rational, Rational};

use crate::CliError;

pub const ENV_VAR: &str = "WALLCROSS_FIXTURES";
const FILE: &str = "p2_table.csv";

/// One row of the reference table: degree, self-nodal invariant and the
/// smooth-pair column (kept as reference data only).
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureRow {
    pub d: i64,
    pub gw_nodal: Rational,
    pub gw_smooth: Rational,
}

#[derive(Deserialize)]
struct RawRow {
    d: i64,
    gw_nodal: String,
    gw_smooth: String,
}

/// Flag, then environment variable, then `./fixtures`. A directory means
/// `<dir>/p2_table.csv`.
pub fn resolve(flag: Option<&Path>) -> PathBuf {
    let base = flag
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("fixtures"));
    if base.is_dir() {
        base.join(FILE)
    } else {
        base
    }
}

pub fn load(path: &Path) -> Result<Vec<FixtureRow>, CliError> {
    if !path.is_file() {
        return Err(CliError::FixturesMissing(path.display().to_string()));
    }
    let bad = |e: String| CliError::Config(format!("{}: {e}", path.display()));
    let mut reader = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let mut rows = Vec::new();
    for rec in reader.deserialize::<RawRow>() {
        let raw = rec.map_err(|e| bad(e.to_string()))?;
        rows.push(FixtureRow {
            d: raw.d,
            gw_nodal: parse_rational(raw.gw_nodal.trim()).map_err(|e| bad(e.to_string()))?,
            gw_smooth: parse_rational(raw.gw_smooth.trim()).map_err(|e| bad(e.to_string()))?,
        });
    }
    Ok(rows)
}
