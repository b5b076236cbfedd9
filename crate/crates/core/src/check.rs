//! Uniform record for a verified identity: name, context, residual,
//! tolerance, pass/fail.  Every verification op in the crate reports its
//! findings as a list of these.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    /// Stable identifier of the identity being checked.
    pub name: String,
    /// Where it was evaluated (graph, vertex, indices).
    pub context: String,
    /// Observed residual; 0/1 for boolean checks.
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRow {
    pub fn new(
        name: impl Into<String>,
        context: impl Into<String>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        CheckRow {
            name: name.into(),
            context: context.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// Boolean check: residual 0 when it held, 1 when it did not.
    pub fn bool(name: impl Into<String>, context: impl Into<String>, ok: bool) -> Self {
        CheckRow {
            name: name.into(),
            context: context.into(),
            residual: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass: ok,
        }
    }
}

/// Collapses rows with the same name, keeping the worst residual; used
/// for the one-row-per-identity summary table.
pub fn aggregate(rows: &[CheckRow]) -> Vec<CheckRow> {
    let mut out: Vec<CheckRow> = Vec::new();
    for row in rows {
        match out.iter_mut().find(|r| r.name == row.name) {
            Some(existing) => {
                if row.residual > existing.residual {
                    existing.residual = row.residual;
                    existing.context = row.context.clone();
                }
                existing.pass &= row.pass;
            }
            None => out.push(row.clone()),
        }
    }
    out
}

/// True when every row passed.
pub fn all_pass(rows: &[CheckRow]) -> bool {
    rows.iter().all(|r| r.pass)
}
