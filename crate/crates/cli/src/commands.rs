use std::collections::BTreeMap;

use rayon::prelude::*;
use num_traits::{One, Signed, Zero};
use serde_json::json;
use wallcross::algebra::{Rational, TruncationPolicy};
use wallcross::invariants::{
    dt_kronecker_numeric, gv_from_gw_genus0, gw_local_p1, gw_selfnodal, local_gv_from_bps, PairParams,
};
use wallcross::qtorus::{bps_records, ks_factorize, MAX_KS_ORDER};
use wallcross::scattering::{central_ray_omega, complete_to_consistency, ScatterError, ScatteringDiagram, MAX_ORDER};

use crate::report::{Cell, Table};
use crate::{CliError, Grid};

const MAX_DEGREE: i64 = 200;

fn degrees(d: Option<Grid>, d_max: Option<i64>, default: i64) -> Result<Vec<i64>, CliError> {
    let grid = match (d, d_max) {
        (Some(g), _) => g,
        (None, Some(n)) => Grid::range(1, n),
        (None, None) => Grid::range(1, default),
    };
    if grid.values().is_empty() || grid.max() > MAX_DEGREE {
        return Err(CliError::Config(format!("degrees must lie in 1..={MAX_DEGREE}")));
    }
    Ok(grid.values().to_vec())
}

fn positive_u32(name: &str, v: i64) -> Result<u32, CliError> {
    u32::try_from(v).ok().filter(|&x| x >= 1).ok_or_else(|| CliError::Config(format!("{name} must be >= 1, got {v}")))
}

/// Closed-form genus-zero invariants over an `(r, d)` grid.
pub fn gw(r: &Grid, d: Option<Grid>, d_max: Option<i64>) -> Result<Table, CliError> {
    let ds = degrees(d, d_max, 6)?;
    let cells: Vec<(i64, i64)> = r.values().iter().flat_map(|&r| ds.iter().map(move |&d| (r, d))).collect();
    let rows = cells
        .par_iter()
        .map(|&(r, d)| {
            let tangency = match PairParams::new(r, d) {
                Ok(p) => Cell::Int(p.tangency() as i64),
                Err(e) => Cell::Error(e.to_string()),
            };
            vec![
                Cell::Int(r),
                Cell::Int(d),
                tangency,
                gw_selfnodal(r, d).map_err(|e| e.to_string()).into(),
                gw_local_p1(r, d).map_err(|e| e.to_string()).into(),
            ]
        })
        .collect();
    Ok(Table { columns: vec!["r", "d", "tangency", "gw_selfnodal", "gw_local_p1"], rows })
}

/// Kronecker DT invariants, numeric and optionally refined.
pub fn dt(m: i64, d: Option<Grid>, d_max: Option<i64>, refined: bool) -> Result<Table, CliError> {
    let ds = degrees(d, d_max, 3)?;
    if !refined {
        let rows = ds
            .par_iter()
            .map(|&d| vec![Cell::Int(m), Cell::Int(d), dt_kronecker_numeric(m, d).map_err(|e| e.to_string()).into()])
            .collect();
        return Ok(Table { columns: vec!["m", "d", "omega"], rows });
    }
    let mu = positive_u32("m", m)?;
    let top = ds.iter().copied().max().unwrap_or(1);
    if ds.iter().any(|&d| d < 1) || top > i64::from(MAX_KS_ORDER) {
        return Err(CliError::Config(format!("refined degrees must lie in 1..={MAX_KS_ORDER}")));
    }
    let diag = ks_factorize(mu, top as u32).map_err(|e| CliError::Config(e.to_string()))?.diagonal();
    let rows = ds
        .iter()
        .map(|&d| {
            let om = diag[(d - 1) as usize].omega.clone();
            let closed = if m >= 3 { dt_kronecker_numeric(m, d).map_err(|e| e.to_string()).into() } else { Cell::Empty };
            vec![Cell::Int(m), Cell::Int(d), Cell::Rational(om.eval_at_one()), Cell::Poly(om), closed]
        })
        .collect();
    Ok(Table { columns: vec!["m", "d", "omega_at_1", "omega_refined", "omega_closed"], rows })
}

pub enum ScatterOutput {
    Diagram(serde_json::Value, Table),
    Omega(serde_json::Value, Table),
}

fn scatter_error(e: ScatterError) -> CliError {
    let kind = match e {
        ScatterError::InsufficientOrder { .. } => "InsufficientOrder",
        ScatterError::OrderOverflow { .. } => "OrderOverflow",
        ScatterError::NonPrimitiveInput(..) => "NonPrimitiveInput",
        _ => "ScatterError",
    };
    CliError::Config(format!("{kind}: {e}"))
}

/// Completes the `m`-local diagram to `order`, optionally extracting `Ω_{(d,d)}(1)`.
pub fn scatter(m: i64, order: i64, extract: Option<i64>) -> Result<ScatterOutput, CliError> {
    let m = positive_u32("m", m)?;
    let order = positive_u32("order", order)?;
    if order > MAX_ORDER {
        return Err(scatter_error(ScatterError::OrderOverflow { order, max: MAX_ORDER }));
    }
    if let Some(d) = extract {
        let d = positive_u32("extract-omega", d)?;
        if order < 2 * d {
            return Err(scatter_error(ScatterError::InsufficientOrder { d, needed: 2 * d, available: order }));
        }
    }
    let initial = ScatteringDiagram::local(m, order).map_err(scatter_error)?;
    let diagram = complete_to_consistency(&initial, order).map_err(scatter_error)?;
    let dump = diagram.to_json();
    match extract {
        Some(d) => {
            let omega = central_ray_omega(&diagram, d as u32).map_err(scatter_error)?;
            let value = json!({ "m": m, "order": order, "d": d, "omega": wallcross::algebra::format_rational(&omega), "diagram": dump });
            let mut t = Table::new(vec!["m", "order", "d", "omega"]);
            t.rows.push(vec![Cell::Int(i64::from(m)), Cell::Int(i64::from(order)), Cell::Int(d), Cell::Rational(omega)]);
            Ok(ScatterOutput::Omega(value, t))
        }
        None => {
            let mut t = Table::new(vec!["direction", "incoming", "wall_function"]);
            for ray in diagram.rays() {
                let (a, b) = ray.direction();
                t.rows.push(vec![
                    Cell::Text(format!("({a},{b})")),
                    Cell::Text(ray.incoming().to_string()),
                    Cell::Text(wall_function_string(ray.function(), a, b)),
                ]);
            }
            Ok(ScatterOutput::Diagram(dump, t))
        }
    }
}

/// Gopakumar–Vafa invariants of local `P^1`, genus zero from the closed
/// local invariants or all genera from the refined quiver data.
pub fn gv(r: &Grid, d: Option<Grid>, d_max: Option<i64>, refined: bool, policy: TruncationPolicy) -> Result<Table, CliError> {
    let ds = degrees(d, d_max, if refined { 2 } else { 5 })?;
    let top = ds.iter().copied().max().unwrap_or(1);
    if !refined {
        let rows = r
            .values()
            .par_iter()
            .map(|&r| {
                let gw: Result<BTreeMap<u32, Rational>, String> =
                    (1..=top).map(|d| gw_local_p1(r, d).map(|v| (d as u32, v)).map_err(|e| e.to_string())).collect();
                let gv = gw.clone().and_then(|g| gv_from_gw_genus0(&g).map_err(|e| e.to_string()));
                ds.iter()
                    .map(|&d| match (&gw, &gv) {
                        (Ok(g), Ok(n)) => vec![
                            Cell::Int(r),
                            Cell::Int(d),
                            Cell::Rational(g[&(d as u32)].clone()),
                            Cell::Rational(n[&(d as u32)].clone()),
                        ],
                        (_, Err(e)) | (Err(e), _) => vec![Cell::Int(r), Cell::Int(d), Cell::Error(e.clone()), Cell::Empty],
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        return Ok(Table { columns: vec!["r", "d", "gw_local_p1", "n_0"], rows });
    }
    if top > i64::from(MAX_KS_ORDER) || ds.iter().any(|&d| d < 1) {
        return Err(CliError::Config(format!("refined degrees must lie in 1..={MAX_KS_ORDER}")));
    }
    let mut rows = Vec::new();
    for &r in r.values() {
        let m = match PairParams::new(r, 1) {
            Ok(p) => p.m(),
            Err(e) => {
                rows.push(vec![Cell::Int(r), Cell::Empty, Cell::Error(e.to_string()), Cell::Empty, Cell::Empty]);
                continue;
            }
        };
        match bps_records(m, top as u32) {
            Ok(recs) => {
                let omega = recs.iter().map(|rec| (rec.degree, rec.omega.clone())).collect();
                let local = local_gv_from_bps(&omega, m, policy).map_err(|e| e.to_string());
                for rec in recs.into_iter().filter(|rec| ds.contains(&i64::from(rec.degree))) {
                    let quotient = match &local {
                        Ok(l) => match l[&rec.degree].as_poly() {
                            Some(p) => Cell::Poly(p.clone()),
                            None => Cell::Error(format!("{} is not a polynomial", l[&rec.degree])),
                        },
                        Err(e) => Cell::Error(e.clone()),
                    };
                    rows.push(vec![
                        Cell::Int(r),
                        Cell::Int(i64::from(rec.degree)),
                        Cell::Poly(rec.omega),
                        quotient,
                        Cell::List(rec.gv.iter().map(ToString::to_string).collect()),
                    ]);
                }
            }
            Err(e) => rows.push(vec![Cell::Int(r), Cell::Empty, Cell::Error(e.to_string()), Cell::Empty, Cell::Empty]),
        }
    }
    Ok(Table { columns: vec!["r", "d", "omega", "quotient", "gv"], rows })
}

fn monomial(a: i64, b: i64) -> String {
    let var = |v: &str, e: i64| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    format!("{}{}", var("x", a), var("y", b))
}

/// `Σ c_k (x^a y^b)^k` written out, e.g. `1 + 3xy + x^2y^2`.
fn wall_function_string(coeffs: &[Rational], a: i64, b: i64) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let k = k as i64;
        let mono = monomial(k * a, k * b);
        let neg = c.is_negative();
        let abs = c.abs();
        let coeff = if abs.is_one() && !mono.is_empty() { String::new() } else { wallcross::algebra::format_rational(&abs) };
        let term = format!("{coeff}{mono}");
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wallcross::algebra::{int, rat};

    #[test]
    fn wall_functions_render() {
        assert_eq!(wall_function_string(&[int(1), int(1)], 1, 0), "1 + x");
        assert_eq!(wall_function_string(&[int(1), int(2), int(3)], 1, 1), "1 + 2xy + 3x^2y^2");
        assert_eq!(wall_function_string(&[int(1), int(0), rat(-1, 2)], 2, 1), "1 - 1/2x^4y^2");
        assert_eq!(wall_function_string(&[], 1, 1), "0");
    }

    #[test]
    fn degree_bounds() {
        assert!(degrees(None, Some(0), 3).is_err());
        assert!(degrees(Some(Grid::single(MAX_DEGREE + 1)), None, 3).is_err());
        assert_eq!(degrees(None, None, 3).unwrap(), vec![1, 2, 3]);
    }
}
