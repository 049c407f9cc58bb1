//! Text and JSON renderings. Both are deterministic for fixed inputs.

use fiberlab_core::grammar::print_monomial;
use fiberlab_core::koszul::{GradedTor, TorMap};
use fiberlab_core::{BettiTable, Field, Invariants};
use fiberlab_verify::Report;
use serde_json::{json, Value};

use crate::Format;

/// Buffered output, flushed once at exit.
#[derive(Default)]
pub struct Sink(String);

impl Sink {
    pub fn line(&mut self, s: impl AsRef<str>) {
        self.0.push_str(s.as_ref());
        self.0.push('\n');
    }

    pub fn json(&mut self, v: &Value) {
        self.line(v.to_string());
    }

    pub fn text(&self) -> &str {
        &self.0
    }
}

fn coarse_rows(out: &mut Sink, rows: impl Iterator<Item = ((usize, u32), u64)>) {
    out.line("i\tj\tdim");
    for ((i, j), d) in rows {
        out.line(format!("{i}\t{j}\t{d}"));
    }
}

pub fn betti(out: &mut Sink, format: Format, t: &BettiTable) {
    let ring = t.ring();
    match format {
        Format::Json => out.json(&json!({
            "char": t.field().characteristic(),
            "entries": t.coarse().iter().map(|((i, j), d)| json!({"i": i, "j": j, "dim": d})).collect::<Vec<_>>(),
            "multigraded": t
                .multigraded()
                .map(|(i, b, d)| json!({"i": i, "b": b.exponents(), "dim": d}))
                .collect::<Vec<_>>(),
        })),
        Format::Text => {
            out.line(format!("char {}", t.field().characteristic()));
            coarse_rows(out, t.coarse().into_iter());
            out.line("multigraded");
            for (i, b, d) in t.multigraded() {
                out.line(format!("{i}\t{}\t{d}", print_monomial(ring, b)));
            }
        }
    }
}

pub fn invariants(out: &mut Sink, format: Format, inv: &Invariants, componentwise_linear: bool) {
    match format {
        Format::Json => out.json(&json!({
            "reg": inv.reg,
            "pdim": inv.pdim,
            "depth": inv.depth,
            "t0": inv.t0,
            "componentwiseLinear": componentwise_linear,
        })),
        Format::Text => {
            out.line(format!("reg\t{}", inv.reg));
            out.line(format!("pdim\t{}", inv.pdim));
            out.line(format!("depth\t{}", inv.depth));
            out.line(format!("t0\t{}", inv.t0));
            out.line(format!("componentwiseLinear\t{componentwise_linear}"));
        }
    }
}

pub fn tor(out: &mut Sink, format: Format, field: Field, t: &GradedTor) {
    match format {
        Format::Json => out.json(&json!({
            "char": field.characteristic(),
            "entries": t.entries().iter().map(|((i, j), d)| json!({"i": i, "j": j, "dim": d})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            out.line(format!("char {}", field.characteristic()));
            coarse_rows(out, t.entries().iter().map(|(k, v)| (*k, *v)));
        }
    }
}

pub fn tor_map(out: &mut Sink, format: Format, field: Field, m: &TorMap) {
    let blocks: Vec<(usize, u32, Vec<Vec<String>>)> = m
        .nonzero_degrees()
        .into_iter()
        .map(|(i, j)| {
            let mat = m.coarse_matrix(i, j).iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
            (i, j, mat)
        })
        .collect();
    match format {
        Format::Json => out.json(&json!({
            "char": field.characteristic(),
            "nonzero": blocks.iter().map(|(i, j, mat)| json!({"i": i, "j": j, "matrix": mat})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            out.line(format!("char {}", field.characteristic()));
            if blocks.is_empty() {
                out.line("zero map");
            }
            for (i, j, mat) in blocks {
                out.line(format!("i={i} j={j}"));
                for row in mat {
                    out.line(format!("  [{}]", row.join(" ")));
                }
            }
        }
    }
}

fn report_line(r: &Report) -> String {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
    let values: Vec<String> = r
        .computed
        .iter()
        .map(|(k, v)| match r.expected.get(k) {
            Some(e) if e != v => format!("{k}={} (expected {})", plain(v), plain(e)),
            _ => format!("{k}={}", plain(v)),
        })
        .collect();
    let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
    let mut line = format!("{:<5} {}", plain(&verdict), r.claim);
    if !params.is_empty() {
        line += &format!(" [{}]", params.join("; "));
    }
    line += &format!(": {}", values.join(", "));
    if let Some(n) = &r.note {
        line += &format!(" ({n})");
    }
    line
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render_reports(out: &mut Sink, format: Format, timing: bool, reports: &[Report]) {
    for r in reports {
        match format {
            Format::Json => out.json(&r.to_json(timing)),
            Format::Text => out.line(report_line(r)),
        }
    }
}
