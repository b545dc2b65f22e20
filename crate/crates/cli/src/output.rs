//! Report emission. Every command narrates through a [`Printer`] so the
//! same run can serve humans (plain text) and tools (JSON lines: one
//! self-contained object per line, nothing to parse beyond line splits).

use mrules_core::semantics::Refutation;
use mrules_core::MRule;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    JsonLines,
}

pub struct Printer {
    format: OutputFormat,
}

impl Printer {
    pub fn new(format: OutputFormat) -> Printer {
        Printer { format }
    }

    /// Emits one record. Only the representation for the active format is
    /// built.
    pub fn record(&self, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) {
        match self.format {
            OutputFormat::Text => println!("{}", text()),
            OutputFormat::JsonLines => println!("{}", json()),
        }
    }
}

/// The valuation of a refutation as a JSON object, variables in sorted
/// order (the underlying map is ordered, so output is deterministic).
pub fn valuation_json(r: &Refutation) -> Value {
    Value::Object(
        r.valuation
            .iter()
            .map(|(v, e)| (v.to_string(), json!(e)))
            .collect(),
    )
}

pub fn refutation_json(r: &Refutation) -> Value {
    json!({
        "algebra_size": r.algebra.size(),
        "valuation": valuation_json(r),
        "conclusion_values": r.conclusion_values,
    })
}

/// One-line human description of a refutation: the valuation and where
/// each conclusion landed instead of top.
pub fn refutation_text(r: &Refutation, rule: &MRule) -> String {
    if rule.conclusions().is_empty() {
        return format!(
            "under {}, every premise hits top and there is no conclusion to satisfy",
            r.valuation
        );
    }
    let vals = {
        rule.conclusions()
            .iter()
            .zip(&r.conclusion_values)
            .map(|(c, v)| format!("{c} = {v}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "under {}, every conclusion stays below top: {}",
        r.valuation, vals
    )
}
