use std::io::{self, Write};

use convball_core::problems::ConstantEstimate;
use convball_core::solvers::{BoundCheck, BoundKind, OrderEstimate, Solution};
use convball_core::{ContinuityConstants, IterationMethod, RadiusReport, Real};
use serde_json::{json, Value};

use crate::args::Format;
use crate::tables::{TableSpec, LABELS, SYMBOLS};

pub const SCHEMA_RADIUS: &str = "convball.radius.v1";
pub const SCHEMA_SOLVE: &str = "convball.solve.v1";
pub const SCHEMA_REPRODUCE: &str = "convball.reproduce.v1";
pub const SCHEMA_ESTIMATE: &str = "convball.estimate.v1";
pub const SCHEMA_ORDER: &str = "convball.order.v1";

/// `v` rounded to `digits` significant decimal digits.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", digits.saturating_sub(1), v).parse().unwrap_or(v)
}

/// Shortest decimal text of `v` rounded to `digits` significant digits.
pub fn sig(v: f64, digits: usize) -> String {
    format!("{}", round_sig(v, digits))
}

/// Scientific notation that survives values below the `f64` range.
pub fn sci<R: Real>(r: &R) -> String {
    let f = r.to_f64();
    if f != 0.0 || r.is_zero() || !r.is_finite() {
        return format!("{f:.6e}");
    }
    let text = r.to_string();
    match text.split_once(['e', 'E']) {
        Some((m, e)) => match (m.parse::<f64>(), e.trim_start_matches('+').parse::<i64>()) {
            (Ok(m), Ok(e)) => {
                // Renormalize the mantissa in case the backend prints e.g. 12.3e-400.
                let shift = m.abs().log10().floor() as i64;
                format!("{:.6}e{}", m / 10f64.powi(shift as i32), e + shift)
            }
            _ => text,
        },
        None => text,
    }
}

fn json_real<R: Real>(r: &R) -> Value {
    let f = r.to_f64();
    if f != 0.0 || r.is_zero() {
        json!(f)
    } else {
        json!(sci(r))
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn constants_line(c: &ContinuityConstants) -> String {
    format!("{}, center {}, full {}, q {}", c.class(), c.center(), c.full(), c.q())
}

fn radii_values(r: &RadiusReport) -> [f64; 5] {
    [r.rho[0], r.rho[1], r.rho[2], r.rho[3], r.rho_min]
}

pub fn radius(out: &mut dyn Write, r: &RadiusReport, format: Format) -> io::Result<()> {
    let values = radii_values(r);
    match format {
        Format::Markdown => {
            writeln!(out, "Convergence radii ({})", constants_line(&r.constants))?;
            writeln!(out)?;
            writeln!(out, "| Radius | Value |")?;
            writeln!(out, "|---|---|")?;
            for (s, v) in SYMBOLS.iter().zip(values) {
                writeln!(out, "| {s} | {} |", sig(v, 9))?;
            }
            writeln!(out)?;
            let close = if r.uniqueness_closed { "≤" } else { "<" };
            writeln!(
                out,
                "Uniqueness: the root is the only solution in B(x*, ϱ) for {} ≤ ϱ {close} {}",
                sig(r.rho_min, 9),
                sig(r.uniqueness_sup, 9)
            )?;
            writeln!(out, "Domain limit: {}", sig(r.domain_limit, 9))
        }
        Format::Csv => {
            writeln!(out, "label,value")?;
            for (l, v) in LABELS.iter().zip(values) {
                writeln!(out, "{l},{}", sig(v, 12))?;
            }
            writeln!(out, "uniqueness_sup,{}", sig(r.uniqueness_sup, 12))?;
            writeln!(out, "domain_limit,{}", sig(r.domain_limit, 12))
        }
        Format::Json => emit_json(
            out,
            &json!({
                "schema": SCHEMA_RADIUS,
                "constants": r.constants,
                "radii": {
                    "rho": r.rho.map(|v| round_sig(v, 12)),
                    "rho_min": round_sig(r.rho_min, 12),
                    "domain_limit": round_sig(r.domain_limit, 12),
                },
                "uniqueness": {
                    "sup": round_sig(r.uniqueness_sup, 12),
                    "closed": r.uniqueness_closed,
                },
            }),
        ),
    }
}

/// One reproduced row.
#[derive(Debug, Clone)]
pub struct Row {
    pub table: u8,
    pub index: usize,
    pub computed: f64,
    pub expected: f64,
    pub rel_dev: f64,
    pub pass: bool,
}

impl Row {
    pub fn label(&self) -> String {
        format!("table{}.{}", self.table, LABELS[self.index])
    }

    fn status(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

pub fn reproduce(
    out: &mut dyn Write,
    tables: &[(TableSpec, ContinuityConstants, Vec<Row>)],
    rtol: f64,
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Markdown => {
            for (spec, _, rows) in tables {
                writeln!(out, "## Table {}: {}", spec.id, spec.title)?;
                writeln!(out)?;
                match &spec.quoted {
                    Some(q) => {
                        writeln!(out, "| Radius | Computed | Published | Rel. dev. | Status | {}† |", q.method)?;
                        writeln!(out, "|---|---|---|---|---|---|")?;
                    }
                    None => {
                        writeln!(out, "| Radius | Computed | Published | Rel. dev. | Status |")?;
                        writeln!(out, "|---|---|---|---|---|")?;
                    }
                }
                for row in rows {
                    write!(
                        out,
                        "| {} | {} | {} | {:.2e} | {} |",
                        SYMBOLS[row.index],
                        sig(row.computed, 6),
                        row.expected,
                        row.rel_dev,
                        row.status()
                    )?;
                    if let Some(q) = &spec.quoted {
                        match q.values[row.index] {
                            Some(v) => write!(out, " {v} |")?,
                            None => write!(out, " n/a |")?,
                        }
                    }
                    writeln!(out)?;
                }
                if spec.quoted.is_some() {
                    writeln!(out)?;
                    writeln!(out, "† Quoted reference values, not computed by this tool.")?;
                }
                writeln!(out)?;
            }
            let failed = tables.iter().flat_map(|t| &t.2).filter(|r| !r.pass).count();
            let total: usize = tables.iter().map(|t| t.2.len()).sum();
            writeln!(out, "{} of {total} rows within rtol {rtol}", total - failed)
        }
        Format::Csv => {
            writeln!(out, "label,computed,paper,rel_dev,status")?;
            for row in tables.iter().flat_map(|t| &t.2) {
                writeln!(
                    out,
                    "{},{},{},{:.6e},{}",
                    row.label(),
                    sig(row.computed, 12),
                    row.expected,
                    row.rel_dev,
                    row.status()
                )?;
            }
            Ok(())
        }
        Format::Json => {
            let tables: Vec<Value> = tables
                .iter()
                .map(|(spec, c, rows)| {
                    json!({
                        "table": spec.id,
                        "constants": c,
                        "rows": rows.iter().map(|r| json!({
                            "label": LABELS[r.index],
                            "computed": round_sig(r.computed, 12),
                            "paper": r.expected,
                            "rel_dev": round_sig(r.rel_dev, 6),
                            "status": r.status(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let all_pass =
                tables.iter().all(|t| t["rows"].as_array().is_some_and(|r| r.iter().all(|r| r["status"] == "PASS")));
            emit_json(out, &json!({ "schema": SCHEMA_REPRODUCE, "rtol": rtol, "all_pass": all_pass, "tables": tables }))
        }
    }
}

fn x_summary<R: Real>(x: &[R]) -> String {
    if x.len() == 1 {
        x[0].to_string()
    } else {
        let max = x.iter().map(|v| v.abs()).reduce(|a, b| a.max_of(b)).expect("nonempty");
        format!("‖x‖∞ = {}", sci(&max))
    }
}

fn bound_name(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::Y => "y",
        BoundKind::Z1 => "z1",
        BoundKind::Z2 => "z2",
        BoundKind::Next => "next",
        BoundKind::Monotone => "monotone",
    }
}

pub fn trace<R: Real>(
    out: &mut dyn Write,
    problem: &str,
    precision: u32,
    sol: &Solution<R>,
    checks: Option<&[BoundCheck]>,
    format: Format,
) -> io::Result<()> {
    let t = &sol.trace;
    match format {
        Format::Markdown => {
            let status = if t.converged { "converged" } else { "not converged" };
            writeln!(
                out,
                "{} on {problem}, {precision} digits: {status} after {} iterations",
                t.method,
                t.iterations()
            )?;
            writeln!(out)?;
            writeln!(out, "| n | x | residual | error |")?;
            writeln!(out, "|---|---|---|---|")?;
            for (n, s) in t.steps.iter().enumerate() {
                let err = s.error_to_root.as_ref().map_or("n/a".to_string(), sci);
                writeln!(out, "| {n} | {} | {} | {err} |", x_summary(&s.x), sci(&s.residual_norm))?;
            }
            if let Some(checks) = checks {
                writeln!(out)?;
                writeln!(out, "| n | bound | lhs | rhs | holds |")?;
                writeln!(out, "|---|---|---|---|---|")?;
                for c in checks {
                    writeln!(
                        out,
                        "| {} | {} | {:.6e} | {:.6e} | {} |",
                        c.step,
                        bound_name(c.kind),
                        c.lhs,
                        c.rhs,
                        if c.holds { "yes" } else { "NO" }
                    )?;
                }
            }
            Ok(())
        }
        Format::Csv => {
            writeln!(out, "step,residual,error,x")?;
            for (n, s) in t.steps.iter().enumerate() {
                let err = s.error_to_root.as_ref().map_or(String::new(), sci);
                let x: Vec<String> = s.x.iter().map(|v| v.to_f64().to_string()).collect();
                writeln!(out, "{n},{},{err},\"{}\"", sci(&s.residual_norm), x.join(" "))?;
            }
            Ok(())
        }
        Format::Json => {
            let steps: Vec<Value> = t
                .steps
                .iter()
                .enumerate()
                .map(|(n, s)| {
                    json!({
                        "n": n,
                        "x": s.x.iter().map(|v| v.to_f64()).collect::<Vec<_>>(),
                        "residual": json_real(&s.residual_norm),
                        "error": s.error_to_root.as_ref().map(json_real),
                    })
                })
                .collect();
            let mut v = json!({
                "schema": SCHEMA_SOLVE,
                "method": t.method,
                "problem": problem,
                "precision_digits": precision,
                "converged": t.converged,
                "iterations": t.iterations(),
                "final_x": t.last().x.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "steps": steps,
            });
            if let Some(checks) = checks {
                v["bounds"] = json!(checks);
            }
            emit_json(out, &v)
        }
    }
}

pub fn estimate(out: &mut dyn Write, problem: &str, e: &ConstantEstimate, format: Format) -> io::Result<()> {
    match format {
        Format::Markdown => {
            writeln!(
                out,
                "Continuity constants of {problem} (sampled lower bound; {} samples in radius {}, q = {})",
                e.samples, e.ball_radius, e.q
            )?;
            writeln!(out)?;
            writeln!(out, "| Constant | Estimate |")?;
            writeln!(out, "|---|---|")?;
            writeln!(out, "| center | {} |", sig(e.kappa0_hat, 9))?;
            writeln!(out, "| full | {} |", sig(e.kappa_hat, 9))
        }
        Format::Csv => {
            writeln!(out, "label,value")?;
            writeln!(out, "kappa0_hat,{}", e.kappa0_hat)?;
            writeln!(out, "kappa_hat,{}", e.kappa_hat)
        }
        Format::Json => emit_json(
            out,
            &json!({
                "schema": SCHEMA_ESTIMATE,
                "problem": problem,
                "caveat": "sampled lower bound",
                "estimate": e,
            }),
        ),
    }
}

pub fn order<R: Real>(
    out: &mut dyn Write,
    problem: &str,
    method: IterationMethod,
    precision: u32,
    errors: &[R],
    est: &OrderEstimate,
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Markdown => {
            writeln!(out, "{method} on {problem}, {precision} digits")?;
            writeln!(out)?;
            writeln!(out, "| n | error |")?;
            writeln!(out, "|---|---|")?;
            for (n, e) in errors.iter().enumerate() {
                writeln!(out, "| {n} | {} |", sci(e))?;
            }
            writeln!(out)?;
            writeln!(
                out,
                "COC = {:.4} from {} usable errors (theoretical order {})",
                est.coc,
                est.samples_used,
                method.order()
            )
        }
        Format::Csv => {
            writeln!(out, "label,value")?;
            writeln!(out, "coc,{}", est.coc)?;
            writeln!(out, "samples_used,{}", est.samples_used)
        }
        Format::Json => emit_json(
            out,
            &json!({
                "schema": SCHEMA_ORDER,
                "method": method,
                "problem": problem,
                "precision_digits": precision,
                "errors": errors.iter().map(json_real).collect::<Vec<_>>(),
                "estimate": est,
                "theoretical_order": method.order(),
            }),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use convball_core::BigReal;

    #[test]
    fn rounds_to_significant_digits() {
        assert_eq!(round_sig(0.002081312847, 6), 0.00208131);
        assert_eq!(round_sig(-12345.678, 3), -12300.0);
        assert_eq!(round_sig(0.0, 5), 0.0);
        assert!(round_sig(f64::NAN, 5).is_nan());
        assert_eq!(sig(4.047722650, 6), "4.04772");
    }

    #[test]
    fn scientific_text_survives_underflow() {
        assert_eq!(sci(&2.5e-3), "2.500000e-3");
        let tiny = BigReal::with_digits(1e-200, 64).powi(3);
        assert_eq!(tiny.to_f64(), 0.0);
        assert!(sci(&tiny).ends_with("e-600"), "{}", sci(&tiny));
        assert!(sci(&tiny).starts_with("1.000000"), "{}", sci(&tiny));
    }
}
