use rayon::prelude::*;
use serde::Serialize;
use wallcross::algebra::{format_rational, Rational};
use wallcross::invariants::{
    c_ord, dt_kronecker_numeric, gw_local_p1, gw_selfnodal, gw_selfnodal_via_dt, log_local_factor,
    partition_sum_lhs,
};
use wallcross::qtorus::{divisibility_check, gv_from_refined, ks_factorize};
use wallcross::scattering::{central_ray_omega, complete_to_consistency, ScatteringDiagram, MAX_ORDER};

use crate::fixtures::FixtureRow;
use crate::report::{write_aligned, write_csv, Format};
use crate::{CliError, Grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Table,
    Chain,
    Partition,
    Scatter,
    Refined,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub anchor: String,
}

impl Check {
    fn compare(id: String, lhs: Result<Rational, String>, rhs: Result<Rational, String>, anchor: &str) -> Self {
        let status = match (&lhs, &rhs) {
            (Ok(a), Ok(b)) if a == b => Status::Pass,
            _ => Status::Fail,
        };
        let show = |r: Result<Rational, String>| r.map_or_else(|e| format!("error: {e}"), |v| format_rational(&v));
        Check { id, status, lhs: show(lhs), rhs: show(rhs), anchor: anchor.to_string() }
    }

    fn predicate(id: String, ok: Result<bool, String>, lhs: String, anchor: &str) -> Self {
        let (status, rhs) = match ok {
            Ok(true) => (Status::Pass, "true".to_string()),
            Ok(false) => (Status::Fail, "false".to_string()),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        Check { id, status, lhs, rhs, anchor: anchor.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
        Self { passed, failed: checks.len() - passed, checks }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn write(&self, format: Format, out: &mut dyn std::io::Write) -> std::io::Result<()> {
        let columns = ["id", "status", "lhs", "rhs", "anchor"];
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| {
                let s = if c.status == Status::Pass { "pass" } else { "FAIL" };
                vec![c.id.clone(), s.to_string(), c.lhs.clone(), c.rhs.clone(), c.anchor.clone()]
            })
            .collect();
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(self)?),
            Format::Csv => write_csv(&columns, &rows, out),
            Format::Human => {
                write_aligned(&columns, &rows, out)?;
                writeln!(out, "{} passed, {} failed", self.passed, self.failed)
            }
        }
    }
}

pub struct VerifyArgs<'a> {
    pub r: &'a Grid,
    pub m: &'a Grid,
    pub d_max: i64,
    pub fixtures: Option<&'a [FixtureRow]>,
}

fn s<E: ToString>(e: E) -> String {
    e.to_string()
}

fn table(rows: &[FixtureRow]) -> Vec<Check> {
    rows.par_iter()
        .map(|row| {
            Check::compare(
                format!("table/d={}", row.d),
                gw_selfnodal(1, row.d).map_err(s),
                Ok(row.gw_nodal.clone()),
                "closed form against the reference table (r=1)",
            )
        })
        .collect()
}

fn chain(r: &Grid, d_max: i64) -> Vec<Check> {
    let cells: Vec<(i64, i64)> = r.values().iter().flat_map(|&r| (1..=d_max).map(move |d| (r, d))).collect();
    cells
        .par_iter()
        .flat_map_iter(|&(r, d)| {
            let lhs = gw_selfnodal(r, d).map_err(s);
            let local = gw_local_p1(r, d)
                .map(|v| v * log_local_factor((d * (r + 2)) as u64))
                .map_err(s);
            [
                Check::compare(
                    format!("chain/dt/r={r}/d={d}"),
                    lhs.clone(),
                    gw_selfnodal_via_dt(r, d).map_err(s),
                    "closed form against Moebius-inverted Kronecker DT",
                ),
                Check::compare(
                    format!("chain/local/r={r}/d={d}"),
                    lhs,
                    local,
                    "closed form against local P^1 times log/local factor",
                ),
            ]
        })
        .collect()
}

fn partition(d_max: i64) -> Vec<Check> {
    (1..=d_max)
        .into_par_iter()
        .map(|d| {
            Check::compare(
                format!("partition/d={d}"),
                partition_sum_lhs(d).map_err(s),
                c_ord(d).map_err(s),
                "partition sum against C(4d-1,d)/d^2",
            )
        })
        .collect()
}

fn scatter(m: &Grid, d_max: i64) -> Vec<Check> {
    m.values()
        .par_iter()
        .flat_map_iter(|&m| {
            let order = (2 * d_max) as u32;
            let diagram = u32::try_from(m)
                .map_err(s)
                .and_then(|mu| ScatteringDiagram::local(mu, order).map_err(s))
                .and_then(|init| complete_to_consistency(&init, order).map_err(s));
            // m < 3 has no closed DT formula: the quantum torus supplies the
            // low degrees and the diagonal vanishes from d = 2 on.
            let reference = (1..3).contains(&m).then(|| {
                ks_factorize(m as u32, d_max.min(REFINED_DEFAULT_CAP) as u32).map(|f| f.diagonal()).map_err(s)
            });
            let mut out = Vec::new();
            if let Ok(dg) = &diagram {
                out.push(Check::predicate(
                    format!("scatter/m={m}/consistent"),
                    Ok(dg.path_ordered_product().is_identity()),
                    format!("{} rays", dg.rays().len()),
                    "path-ordered product is the identity",
                ));
            }
            for d in 1..=d_max {
                let got = diagram.clone().and_then(|dg| central_ray_omega(&dg, d as u32).map_err(s));
                let (want, anchor) = match &reference {
                    Some(Ok(diag)) => match diag.get((d - 1) as usize) {
                        Some(rec) => (Ok(rec.omega.eval_at_one()), "central ray against quantum torus at t=1"),
                        None => (Ok(Rational::from_integer(0.into())), "central ray vanishes for m < 3, d >= 2"),
                    },
                    Some(Err(e)) => (Err(e.clone()), "central ray against quantum torus at t=1"),
                    None => (dt_kronecker_numeric(m, d).map_err(s), "central ray against Reineke's formula"),
                };
                out.push(Check::compare(format!("scatter/m={m}/d={d}"), got, want, anchor));
            }
            out
        })
        .collect()
}

fn refined(m: &Grid, d_max: i64) -> Vec<Check> {
    m.values()
        .par_iter()
        .flat_map_iter(|&m| {
            let mut out = Vec::new();
            let f = match u32::try_from(m).map_err(s).and_then(|mu| ks_factorize(mu, d_max as u32).map_err(s)) {
                Ok(f) => f,
                Err(e) => {
                    out.push(Check::predicate(format!("refined/m={m}"), Err(e), String::new(), "quantum torus factorization"));
                    return out;
                }
            };
            out.push(Check::predicate(
                format!("refined/m={m}/reassemble"),
                f.verify().map_err(s),
                format!("{} factors", f.factors().len()),
                "factors multiply back to E(x)E(y)",
            ));
            for rec in f.diagonal() {
                let d = i64::from(rec.dimension_vector.0);
                let om = &rec.omega;
                if m >= 3 {
                    out.push(Check::compare(
                        format!("refined/m={m}/d={d}/t=1"),
                        Ok(om.eval_at_one()),
                        dt_kronecker_numeric(m, d).map_err(s),
                        "refined invariant at t=1 against Reineke's formula",
                    ));
                }
                out.push(Check::predicate(
                    format!("refined/m={m}/d={d}/shape"),
                    Ok(om.is_palindromic() && om.has_integer_coeffs()),
                    om.to_q_string(),
                    "palindromic with integer coefficients",
                ));
                if m >= 3 {
                    let quotient = divisibility_check(om, (m * d) as u32).map_err(s);
                    let lhs = quotient.as_ref().map_or_else(Clone::clone, |q| q.to_q_string());
                    let gv = quotient.and_then(|q| gv_from_refined(&q).map_err(s));
                    out.push(Check::predicate(
                        format!("refined/m={m}/d={d}/divisible"),
                        gv.map(|_| true),
                        lhs,
                        "divisible by [md]_q with an integral genus expansion",
                    ));
                }
            }
            out
        })
        .collect()
}

pub fn run(suite: Suite, args: &VerifyArgs<'_>) -> Result<VerifyReport, CliError> {
    if args.d_max < 1 {
        return Err(CliError::Config("--d-max must be >= 1".into()));
    }
    let wants = |x: Suite| suite == x || suite == Suite::All;
    if wants(Suite::Scatter) && 2 * args.d_max > i64::from(MAX_ORDER) {
        return Err(CliError::Config(format!("scatter suite needs --d-max <= {}", MAX_ORDER / 2)));
    }
    let refined_d = args.d_max.min(REFINED_DEFAULT_CAP);
    let mut checks = Vec::new();
    if wants(Suite::Table) {
        let rows = args.fixtures.ok_or_else(|| CliError::Config("table suite needs fixtures".into()))?;
        checks.extend(table(rows));
    }
    if wants(Suite::Chain) {
        checks.extend(chain(args.r, args.d_max));
    }
    if wants(Suite::Partition) {
        checks.extend(partition(args.d_max));
    }
    if wants(Suite::Scatter) {
        checks.extend(scatter(args.m, args.d_max));
    }
    if wants(Suite::Refined) {
        checks.extend(refined(args.m, refined_d));
    }
    Ok(VerifyReport::new(checks))
}

/// The refined suite stops at this degree; the quantum torus solve grows
/// quickly with the degree.
pub const REFINED_DEFAULT_CAP: i64 = 3;
