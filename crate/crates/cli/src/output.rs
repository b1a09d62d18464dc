use serde::Serialize;
use serde_json::Value;

use crate::args::OutputFormat;
use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => sig12(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Command result ready for rendering.
#[derive(Debug, Clone)]
pub struct Payload {
    pub results: Value,
    /// Preferred CSV/text layout; objects are flattened to `key,value` rows
    /// when absent.
    pub table: Option<Table>,
}

#[derive(Debug, Serialize)]
pub struct ReportEnvelope<'a> {
    pub tool_version: &'static str,
    pub command: &'static str,
    pub parameters: &'a std::collections::BTreeMap<String, Value>,
    pub results: &'a Value,
    pub elapsed_ms: u64,
}

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Twelve significant digits, trailing zeros dropped.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{e}")
    }
}

fn flatten(results: &Value) -> Table {
    let mut t = Table {
        header: vec!["key", "value"],
        rows: Vec::new(),
    };
    if let Value::Object(map) = results {
        for (k, v) in map {
            let cell = match v {
                Value::Number(n) if n.is_u64() => Cell::Int(n.as_u64().unwrap()),
                Value::Number(n) => Cell::Num(n.as_f64().unwrap_or(f64::NAN)),
                Value::String(s) => Cell::Text(s.clone()),
                Value::Null => Cell::Text(String::new()),
                other => Cell::Text(other.to_string()),
            };
            t.rows.push(vec![Cell::Text(k.clone()), cell]);
        }
    }
    t
}

fn params_line(cfg: &RunConfig) -> String {
    format!(
        "# iqconc {TOOL_VERSION} {} {}",
        cfg.command.as_str(),
        serde_json::to_string(&cfg.parameters).expect("parameters serialize")
    )
}

fn render_csv(cfg: &RunConfig, table: &Table) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).map_err(|e| CliError::Io(e.to_string()))?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render)).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
        .expect("csv output is UTF-8");
    Ok(format!("{}\n{body}", params_line(cfg)))
}

fn render_text(cfg: &RunConfig, payload: &Payload) -> String {
    let table = payload.table.clone().unwrap_or_else(|| flatten(&payload.results));
    let cells: Vec<Vec<String>> = std::iter::once(table.header.iter().map(|h| h.to_string()).collect())
        .chain(table.rows.iter().map(|r| r.iter().map(Cell::render).collect()))
        .collect();
    let ncol = table.header.len();
    let widths: Vec<usize> = (0..ncol)
        .map(|c| cells.iter().map(|r| r.get(c).map_or(0, |s| s.len())).max().unwrap_or(0))
        .collect();
    let mut out = format!("iqconc {}\n", cfg.command.as_str());
    for (k, v) in &cfg.parameters {
        out.push_str(&format!("  {k} = {v}\n"));
    }
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn render(cfg: &RunConfig, payload: &Payload, elapsed_ms: u64) -> Result<String, CliError> {
    match cfg.output_format {
        OutputFormat::Json => {
            let env = ReportEnvelope {
                tool_version: TOOL_VERSION,
                command: cfg.command.as_str(),
                parameters: &cfg.parameters,
                results: &payload.results,
                elapsed_ms,
            };
            Ok(serde_json::to_string_pretty(&env).expect("envelope serializes") + "\n")
        }
        OutputFormat::Csv => {
            let table = payload.table.clone().unwrap_or_else(|| flatten(&payload.results));
            render_csv(cfg, &table)
        }
        OutputFormat::Text => Ok(render_text(cfg, payload)),
    }
}
