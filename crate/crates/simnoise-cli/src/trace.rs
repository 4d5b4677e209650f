//! Trace file ingestion and emission.
//!
//! The canonical trace format is comma-separated text with a header row and
//! either one column (acceleration, at a rate declared in the manifest) or
//! two columns (time in seconds, acceleration). Values are m/s². Column
//! meaning is positional; header names are free-form.

use std::path::Path;

use simnoise::signal::Signal;

use crate::error::CliError;

/// Relative tolerance for timestamp uniformity and for agreement between a
/// declared rate and the rate recovered from timestamps: 1 part in 10^4.
pub const RATE_TOLERANCE: f64 = 1e-4;

/// Loads one trace file. `declared_rate_hz` is required for single-column
/// files; for two-column files it is cross-checked against the timestamps
/// and, when consistent, used verbatim (keeping the rate bit-identical
/// across trials).
pub fn load_trace(path: &Path, declared_rate_hz: Option<f64>) -> Result<Signal, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_open_error(path, e))?;

    let n_columns = reader
        .headers()
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?
        .len();
    if n_columns == 0 {
        return Err(CliError::validation(format!(
            "{}: empty trace file",
            path.display()
        )));
    }
    if n_columns > 2 {
        return Err(CliError::validation(format!(
            "{}: expected 1 column (acceleration) or 2 (time, acceleration), found {n_columns}",
            path.display()
        )));
    }

    let mut times: Vec<f64> = Vec::new();
    let mut samples: Vec<f64> = Vec::new();
    let mut lines: Vec<u64> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            CliError::validation(format!("{}: {e}", path.display()))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != n_columns {
            return Err(CliError::validation(format!(
                "{}: line {line}: expected {n_columns} fields, found {}",
                path.display(),
                record.len()
            )));
        }
        let parse = |idx: usize, what: &str| -> Result<f64, CliError> {
            let field = &record[idx];
            let value: f64 = field.parse().map_err(|_| {
                CliError::validation(format!(
                    "{}: line {line}: non-numeric {what} '{field}'",
                    path.display()
                ))
            })?;
            if !value.is_finite() {
                return Err(CliError::validation(format!(
                    "{}: line {line}: non-finite {what} '{field}'",
                    path.display()
                )));
            }
            Ok(value)
        };
        if n_columns == 2 {
            times.push(parse(0, "timestamp")?);
            samples.push(parse(1, "acceleration")?);
        } else {
            samples.push(parse(0, "acceleration")?);
        }
        lines.push(line);
    }
    if samples.is_empty() {
        return Err(CliError::validation(format!(
            "{}: no data rows",
            path.display()
        )));
    }

    let rate = if n_columns == 2 {
        rate_from_timestamps(path, &times, &lines, declared_rate_hz)?
    } else {
        declared_rate_hz.ok_or_else(|| {
            CliError::validation(format!(
                "{}: single-column trace needs a declared sample rate",
                path.display()
            ))
        })?
    };

    Signal::new(samples, rate)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

fn rate_from_timestamps(
    path: &Path,
    times: &[f64],
    lines: &[u64],
    declared_rate_hz: Option<f64>,
) -> Result<f64, CliError> {
    if times.len() < 2 {
        return declared_rate_hz.ok_or_else(|| {
            CliError::validation(format!(
                "{}: cannot infer a sample rate from a single row; declare one",
                path.display()
            ))
        });
    }
    let n = times.len();
    let span = times[n - 1] - times[0];
    if span <= 0.0 {
        return Err(CliError::validation(format!(
            "{}: timestamps do not increase",
            path.display()
        )));
    }
    let dt = span / (n - 1) as f64;
    for i in 1..n {
        let step = times[i] - times[i - 1];
        if (step - dt).abs() > RATE_TOLERANCE * dt {
            return Err(CliError::validation(format!(
                "{}: line {}: non-uniform timestamp (step {step} s, expected {dt} s)",
                path.display(),
                lines[i]
            )));
        }
    }
    let recovered = 1.0 / dt;
    match declared_rate_hz {
        Some(declared) => {
            if (recovered - declared).abs() > RATE_TOLERANCE * declared {
                return Err(CliError::validation(format!(
                    "{}: declared rate {declared} Hz disagrees with timestamps ({recovered} Hz)",
                    path.display()
                )));
            }
            Ok(declared)
        }
        None => Ok(recovered),
    }
}

/// Writes a trace in the two-column format, atomically (write then rename).
pub fn write_trace(path: &Path, signal: &Signal) -> Result<(), CliError> {
    let mut content =
        String::with_capacity(32 + signal.len() * 24);
    content.push_str("time_s,acceleration_mps2\n");
    let rate = signal.sample_rate_hz();
    for (k, v) in signal.samples().iter().enumerate() {
        let t = k as f64 / rate;
        content.push_str(&format!("{t},{v}\n"));
    }
    crate::export::write_atomic(path, content.as_bytes())
}


fn csv_open_error(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::validation(format!("{}: {other:?}", path.display())),
    }
}
