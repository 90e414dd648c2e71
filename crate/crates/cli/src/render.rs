//! Text, CSV and JSON rendering of the command outputs.

use num_rational::Ratio;
use serde::Serialize;
use sigmatau_core::verify::hull::HullExport;
use sigmatau_core::{BenefitHit, Census, Factorization, PrimeTable, RealX, Superchampions};

use crate::config::OutputFormat;
use crate::Failure;

/// Fixed rendering with trailing zeros removed (`2.800` prints as `2.8`).
fn trimmed(x: RealX, decimals: usize) -> String {
    let s = x.to_fixed(decimals);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn fixed_or_inf(x: RealX, decimals: usize) -> String {
    if x.is_finite() {
        x.to_fixed(decimals)
    } else {
        "inf".to_string()
    }
}

fn ratio_string(r: Ratio<u64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `n/base` as a reduced quotient of factorizations.
pub fn quotient_string(n: &Factorization, base: &Factorization) -> String {
    let (num, den) = n.quotient(base);
    let num_s = if num.is_one() {
        "1".to_string()
    } else {
        num.to_string()
    };
    if den.is_one() {
        num_s
    } else {
        format!("{num_s}/{den}")
    }
}

/// Left-aligned columns separated by two spaces.
fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if k + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(c);
                s.push_str(&" ".repeat(w - c.chars().count() + 2));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Failure::Runtime(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Runtime(e.to_string()))
}

fn json<T: Serialize>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::Runtime(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn table(header: &[&str], rows: Vec<Vec<String>>, format: OutputFormat) -> Result<String, Failure> {
    match format {
        OutputFormat::Text => Ok(text_table(header, &rows)),
        OutputFormat::Csv => csv_table(header, &rows),
        OutputFormat::Json => {
            let objs: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .into_iter()
                .map(|r| {
                    header
                        .iter()
                        .zip(r)
                        .map(|(h, c)| (h.to_string(), serde_json::Value::String(c)))
                        .collect()
                })
                .collect();
            json(&objs)
        }
    }
}

pub const SUPERCHAMPION_COLUMNS: [&str; 8] = [
    "i",
    "N",
    "factorization",
    "sigma_over_n",
    "tau",
    "log_tau",
    "eps_hi",
    "eps_lo",
];

pub fn superchampions(
    seq: &Superchampions,
    table_primes: &PrimeTable,
    min_run: usize,
    format: OutputFormat,
) -> Result<String, Failure> {
    let rows = seq
        .records()
        .map(|r| {
            vec![
                r.index.to_string(),
                r.n.to_u128().map(|n| n.to_string()).unwrap_or_default(),
                r.n.render(Some(table_primes), min_run),
                trimmed(r.stats.sigma_over_n, 3),
                r.n.tau_u128().map(|t| t.to_string()).unwrap_or_default(),
                r.stats.log_tau.to_fixed(12),
                fixed_or_inf(r.eps_hi, 3),
                r.eps_lo.to_fixed(3),
            ]
        })
        .collect();
    table(&SUPERCHAMPION_COLUMNS, rows, format)
}

pub const HIT_COLUMNS: [&str; 4] = ["n_over_M1", "tau_ratio", "ben", "f1"];

fn hit_rows(hits: &[BenefitHit], base: &Factorization) -> Vec<Vec<String>> {
    hits.iter()
        .map(|h| {
            vec![
                quotient_string(&h.n, base),
                ratio_string(h.n.tau_ratio(base)),
                h.ben.to_sci(10),
                h.f1.map(|v| v.to_fixed(10)).unwrap_or_default(),
            ]
        })
        .collect()
}

pub fn hits(
    hits: &[BenefitHit],
    base: &Factorization,
    format: OutputFormat,
) -> Result<String, Failure> {
    table(&HIT_COLUMNS, hit_rows(hits, base), format)
}

#[derive(Serialize)]
struct CensusJson {
    threshold: String,
    count: usize,
    windows: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hits: Option<Vec<serde_json::Map<String, serde_json::Value>>>,
}

pub fn census(
    c: &Census,
    base: &Factorization,
    list: bool,
    format: OutputFormat,
) -> Result<String, Failure> {
    let threshold = c.threshold.to_sci(10);
    match format {
        OutputFormat::Text => {
            let mut s = format!("nu({threshold}) = {}\n", c.count);
            s.push_str(&format!(
                "windows: {}\n",
                c.windows
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ));
            if list {
                s.push_str(&text_table(&HIT_COLUMNS, &hit_rows(&c.hits, base)));
            }
            Ok(s)
        }
        OutputFormat::Csv => {
            if list {
                csv_table(&HIT_COLUMNS, &hit_rows(&c.hits, base))
            } else {
                csv_table(
                    &["threshold", "count"],
                    &[vec![threshold, c.count.to_string()]],
                )
            }
        }
        OutputFormat::Json => {
            let hits = list.then(|| {
                hit_rows(&c.hits, base)
                    .into_iter()
                    .map(|r| {
                        HIT_COLUMNS
                            .iter()
                            .zip(r)
                            .map(|(h, v)| (h.to_string(), serde_json::Value::String(v)))
                            .collect()
                    })
                    .collect()
            });
            json(&CensusJson {
                threshold,
                count: c.count,
                windows: c.windows.clone(),
                hits,
            })
        }
    }
}

pub const HULL_POINT_COLUMNS: [&str; 4] = ["n", "tau", "log_tau", "log_sigma_over_n"];
pub const HULL_VERTEX_COLUMNS: [&str; 7] = [
    "i",
    "n",
    "tau",
    "log_tau",
    "log_sigma_over_n",
    "eps_hi",
    "eps_lo",
];

pub fn hull_points(h: &HullExport) -> Result<String, Failure> {
    let rows: Vec<Vec<String>> = h
        .points
        .iter()
        .map(|p| {
            vec![
                p.n.to_string(),
                p.tau.to_string(),
                p.log_tau.to_fixed(20),
                p.log_sigma_over_n.to_fixed(20),
            ]
        })
        .collect();
    csv_table(&HULL_POINT_COLUMNS, &rows)
}

pub fn hull_vertices(h: &HullExport) -> Result<String, Failure> {
    let rows: Vec<Vec<String>> = h
        .vertices
        .iter()
        .map(|v| {
            vec![
                v.index.to_string(),
                v.n.to_string(),
                v.tau.to_string(),
                v.log_tau.to_fixed(20),
                v.log_sigma_over_n.to_fixed(20),
                fixed_or_inf(v.eps_hi, 20),
                v.eps_lo.to_fixed(20),
            ]
        })
        .collect();
    csv_table(&HULL_VERTEX_COLUMNS, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimmed_decimals() {
        assert_eq!(trimmed(RealX::from(2.8), 3), "2.8");
        assert_eq!(trimmed(RealX::from(3.0), 3), "3");
        assert_eq!(trimmed(RealX::from(7.0) / RealX::from(3.0), 3), "2.333");
    }

    #[test]
    fn text_alignment() {
        let t = text_table(&["a", "bb"], &[vec!["123".into(), "x".into()]]);
        assert_eq!(t, "a    bb\n123  x\n");
    }

    #[test]
    fn csv_quotes_nothing_plain() {
        let t = csv_table(&["x", "y"], &[vec!["1/2".into(), "2^8·3".into()]]).unwrap();
        assert_eq!(t, "x,y\n1/2,2^8·3\n");
    }
}
