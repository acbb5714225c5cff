//! CSV rows and the summary document.

use std::io::Write;

use serde_json::Value;

use crate::accounting::ResultRow;
use crate::error::Result;
use crate::format::sig12;

pub const CSV_HEADER: [&str; 7] = ["trial", "t", "loss", "cum_loss", "opt", "regret", "bound"];

/// What a scenario produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub rows: Vec<ResultRow>,
    pub summary: Value,
    pub pass: bool,
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.trial.to_string(),
            r.t.to_string(),
            sig12(r.loss),
            sig12(r.cum_loss),
            sig12(r.opt),
            sig12(r.regret),
            sig12(r.bound),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Sends the CSV to `csv_path` (or `stdout`) and the summary to `stdout` when
/// a path was given, `stderr` otherwise. Scenarios without rows print only the
/// summary, to `stdout`.
pub fn emit<O: Write, E: Write>(
    outcome: &Outcome,
    csv_path: Option<&std::path::Path>,
    stdout: &mut O,
    stderr: &mut E,
) -> Result<()> {
    let summary = serde_json::to_string(&outcome.summary)?;
    match csv_path {
        Some(path) => {
            let file = std::io::BufWriter::new(std::fs::File::create(path)?);
            write_csv(&outcome.rows, file)?;
            writeln!(stdout, "{summary}")?;
        }
        None if outcome.rows.is_empty() => writeln!(stdout, "{summary}")?,
        None => {
            write_csv(&outcome.rows, &mut *stdout)?;
            writeln!(stderr, "{summary}")?;
        }
    }
    Ok(())
}
