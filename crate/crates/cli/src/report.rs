//! Certificate records and their CSV/JSON renderings.

use std::io::Write;

use ordmoment::{InequalityReport64, ProofCase};
use serde_json::{json, Map, Value};

use crate::error::CliError;

pub const CELL_COLUMNS: [&str; 14] = [
    "dist",
    "n",
    "i",
    "k",
    "delta",
    "rho",
    "case",
    "moment_exact",
    "moment_err",
    "moment_mc",
    "mc_se",
    "bound",
    "margin_ratio",
    "holds",
];

pub const STEP_COLUMNS: [&str; 14] = [
    "dist",
    "name",
    "rho",
    "n",
    "i",
    "x",
    "delta",
    "lhs",
    "rhs",
    "margin",
    "strict",
    "holds",
    "printed_rhs",
    "printed_holds",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    /// The left side could not be computed to tolerance.
    Error,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "true",
            Verdict::Violated => "false",
            Verdict::Error => "error",
        }
    }
}

/// One `(law, n, i, k, δ)` cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CellRecord {
    pub dist: String,
    pub n: usize,
    pub i: usize,
    pub k: f64,
    pub delta: f64,
    pub rho: f64,
    pub case: ProofCase,
    pub moment_exact: Option<f64>,
    pub moment_err: Option<f64>,
    pub moment_mc: Option<f64>,
    pub mc_se: Option<f64>,
    pub bound: f64,
    pub margin_ratio: Option<f64>,
    pub holds: Verdict,
}

/// A proof-step report, tagged with the law for the Chebyshev rows.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRow {
    pub dist: Option<String>,
    pub report: InequalityReport64,
}

/// 17 significant digits; non-finite values print as `inf`, `-inf`, `nan`.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

fn jnum(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(fmt_real(x))
    }
}

fn jopt(x: Option<f64>) -> Value {
    x.map(jnum).unwrap_or(Value::Null)
}

impl CellRecord {
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.dist.clone(),
            self.n.to_string(),
            self.i.to_string(),
            fmt_real(self.k),
            fmt_real(self.delta),
            fmt_real(self.rho),
            self.case.to_string(),
            fmt_opt(self.moment_exact),
            fmt_opt(self.moment_err),
            fmt_opt(self.moment_mc),
            fmt_opt(self.mc_se),
            fmt_real(self.bound),
            fmt_opt(self.margin_ratio),
            self.holds.as_str().into(),
        ]
    }

    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("dist".into(), json!(self.dist));
        m.insert("n".into(), json!(self.n));
        m.insert("i".into(), json!(self.i));
        m.insert("k".into(), jnum(self.k));
        m.insert("delta".into(), jnum(self.delta));
        m.insert("rho".into(), jnum(self.rho));
        m.insert("case".into(), json!(self.case.as_str()));
        m.insert("moment_exact".into(), jopt(self.moment_exact));
        m.insert("moment_err".into(), jopt(self.moment_err));
        m.insert("moment_mc".into(), jopt(self.moment_mc));
        m.insert("mc_se".into(), jopt(self.mc_se));
        m.insert("bound".into(), jnum(self.bound));
        m.insert("margin_ratio".into(), jopt(self.margin_ratio));
        m.insert("holds".into(), json!(self.holds.as_str()));
        Value::Object(m)
    }
}

impl StepRow {
    pub fn bare(report: InequalityReport64) -> Self {
        Self { dist: None, report }
    }

    fn csv_fields(&self) -> Vec<String> {
        let r = &self.report;
        let p = &r.params;
        vec![
            self.dist.clone().unwrap_or_default(),
            r.name.to_string(),
            fmt_opt(p.rho),
            p.n.map(|n| n.to_string()).unwrap_or_default(),
            fmt_opt(p.i),
            fmt_opt(p.x),
            fmt_opt(p.delta),
            fmt_real(r.lhs),
            fmt_real(r.rhs),
            fmt_real(r.margin),
            r.strict.to_string(),
            r.holds.to_string(),
            fmt_opt(r.printed_constant.map(|c| c.rhs)),
            r.printed_constant.map(|c| c.holds.to_string()).unwrap_or_default(),
        ]
    }

    fn json(&self) -> Value {
        let r = &self.report;
        let p = &r.params;
        let mut m = Map::new();
        m.insert(
            "dist".into(),
            self.dist.clone().map(Value::String).unwrap_or(Value::Null),
        );
        m.insert("name".into(), json!(r.name.as_str()));
        m.insert("rho".into(), jopt(p.rho));
        m.insert("n".into(), p.n.map(|n| json!(n)).unwrap_or(Value::Null));
        m.insert("i".into(), jopt(p.i));
        m.insert("x".into(), jopt(p.x));
        m.insert("delta".into(), jopt(p.delta));
        m.insert("lhs".into(), jnum(r.lhs));
        m.insert("rhs".into(), jnum(r.rhs));
        m.insert("ln_lhs".into(), jnum(r.ln_lhs));
        m.insert("ln_rhs".into(), jnum(r.ln_rhs));
        m.insert("margin".into(), jnum(r.margin));
        m.insert("strict".into(), json!(r.strict));
        m.insert("holds".into(), json!(r.holds));
        m.insert("printed_rhs".into(), jopt(r.printed_constant.map(|c| c.rhs)));
        m.insert(
            "printed_holds".into(),
            r.printed_constant.map(|c| json!(c.holds)).unwrap_or(Value::Null),
        );
        Value::Object(m)
    }
}

pub fn write_cells_csv<W: Write>(w: W, cells: &[CellRecord]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CELL_COLUMNS)?;
    for c in cells {
        out.write_record(c.csv_fields())?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_steps_csv<W: Write>(w: W, steps: &[StepRow]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(STEP_COLUMNS)?;
    for s in steps {
        out.write_record(s.csv_fields())?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(
    mut w: W,
    metadata: Value,
    cells: &[CellRecord],
    steps: &[StepRow],
) -> Result<(), CliError> {
    let doc = json!({
        "metadata": metadata,
        "records": cells.iter().map(CellRecord::json).collect::<Vec<_>>(),
        "proof_steps": steps.iter().map(StepRow::json).collect::<Vec<_>>(),
    });
    serde_json::to_writer_pretty(&mut w, &doc)?;
    writeln!(w)?;
    Ok(())
}
