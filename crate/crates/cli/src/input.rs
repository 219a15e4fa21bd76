//! Point-set CSV files and measure specifications.

use std::fs;
use std::path::Path;

use falconer_core::geometry::{Mode, PointSet};
use falconer_core::spectral::{DiscreteMeasure, FourierMeasure, GridDensity};

use crate::error::{CliError, CliResult};

/// Weight sums within this distance of 1 are rescaled with a warning.
pub const WEIGHT_REPAIR_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct Loaded {
    pub points: PointSet,
    pub warnings: Vec<String>,
}

struct Header {
    dim: usize,
    mode: Mode,
    quantum: Option<f64>,
}

fn parse_header(line: &str, lineno: usize) -> CliResult<Header> {
    let body = line.trim_start_matches('#').trim();
    let (mut dim, mut mode, mut quantum) = (None, None, None);
    for token in body.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| CliError::bad_input(format!("line {lineno}: malformed header token {token:?}")))?;
        match key {
            "dim" => {
                dim = Some(value.parse::<usize>().ok().filter(|&d| d > 0).ok_or_else(|| {
                    CliError::bad_input(format!("line {lineno}: dim must be a positive integer, got {value:?}"))
                })?)
            }
            "mode" => mode = Some(value.parse::<Mode>().map_err(|e| CliError::bad_input(format!("line {lineno}: {e}")))?),
            "quantum" => {
                quantum = Some(value.parse::<f64>().map_err(|_| {
                    CliError::bad_input(format!("line {lineno}: quantum must be a number, got {value:?}"))
                })?)
            }
            other => return Err(CliError::bad_input(format!("line {lineno}: unknown header key {other:?}"))),
        }
    }
    match (dim, mode) {
        (Some(dim), Some(mode)) => Ok(Header { dim, mode, quantum }),
        _ => Err(CliError::bad_input(format!("line {lineno}: header must give dim= and mode="))),
    }
}

/// Reads a point set: a `# dim=d mode=exact|float` header, then one point
/// per row with an optional trailing weight column.
pub fn read_point_set(path: &Path) -> CliResult<Loaded> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_point_set(&text).map_err(|e| match e {
        CliError::BadInput(msg) => CliError::bad_input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_point_set(text: &str) -> CliResult<Loaded> {
    if text.trim().is_empty() {
        return Err(CliError::bad_input("input is empty"));
    }
    let (header_line, header) = text
        .lines()
        .enumerate()
        .find(|(_, l)| !l.trim().is_empty())
        .filter(|(_, l)| l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l))
        .ok_or_else(|| CliError::bad_input("missing `# dim=d mode=exact|float` header"))?;
    let header = parse_header(header, header_line)?;

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let d = header.dim;
    let mut exact: Vec<i64> = Vec::new();
    let mut float: Vec<f64> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut rows = 0usize;
    let mut weighted: Option<bool> = None;
    for record in reader.records() {
        let record = record.map_err(|e| CliError::bad_input(format!("malformed CSV: {e}")))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let has_weight = match record.len() {
            n if n == d => false,
            n if n == d + 1 => true,
            n => {
                return Err(CliError::bad_input(format!(
                    "row {line}: expected {d} or {} columns, found {n}",
                    d + 1
                )))
            }
        };
        if *weighted.get_or_insert(has_weight) != has_weight {
            return Err(CliError::bad_input(format!(
                "row {line}: weight column present on some rows but not others"
            )));
        }
        for field in record.iter().take(d) {
            match header.mode {
                Mode::Exact => exact.push(field.parse::<i64>().map_err(|_| {
                    CliError::bad_input(format!("row {line}: {field:?} is not an integer"))
                })?),
                Mode::Float => {
                    let v = field.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                        CliError::bad_input(format!("row {line}: {field:?} is not a finite number"))
                    })?;
                    float.push(v)
                }
            }
        }
        if has_weight {
            let field = &record[d];
            let w = field.parse::<f64>().ok().filter(|w| w.is_finite() && *w >= 0.0).ok_or_else(|| {
                CliError::bad_input(format!("row {line}: weight {field:?} must be a nonnegative number"))
            })?;
            weights.push(w);
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(CliError::bad_input("no points in input"));
    }
    let points = match header.mode {
        Mode::Exact => PointSet::exact_flat(d, exact)?,
        Mode::Float => PointSet::float_flat(d, float)?,
    };
    let points = match header.quantum {
        Some(q) => points.with_quantum(Some(q))?,
        None => points,
    };
    let mut warnings = Vec::new();
    let points = if weighted == Some(true) {
        let total: f64 = weights.iter().sum();
        let off = (total - 1.0).abs();
        if off >= WEIGHT_REPAIR_TOLERANCE {
            return Err(CliError::bad_input(format!(
                "weights sum to {total}, more than {WEIGHT_REPAIR_TOLERANCE} away from 1"
            )));
        }
        if off > 0.0 {
            warnings.push(format!("weights summed to {total}; rescaled to 1"));
            weights.iter_mut().for_each(|w| *w /= total);
        }
        points.with_weights(weights)?
    } else {
        points
    };
    Ok(Loaded { points, warnings })
}

/// A measure named on the command line.
#[derive(Debug, Clone)]
pub enum MeasureSource {
    Atoms(DiscreteMeasure),
    Cells(GridDensity),
}

impl MeasureSource {
    pub fn fourier(&self) -> &dyn FourierMeasure {
        match self {
            MeasureSource::Atoms(m) => m,
            MeasureSource::Cells(g) => g,
        }
    }

    pub fn atoms(&self, what: &str) -> CliResult<&DiscreteMeasure> {
        match self {
            MeasureSource::Atoms(m) => Ok(m),
            MeasureSource::Cells(_) => Err(CliError::bad_input(format!("{what} needs an atomic measure"))),
        }
    }
}

/// `delta`, `cantor:LEVEL`, `cantor-cells:LEVEL`, `grid:M`, or `file:PATH`.
pub fn parse_measure(spec: &str, dim: usize, warnings: &mut Vec<String>) -> CliResult<MeasureSource> {
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let count = || {
        arg.parse::<u32>()
            .map_err(|_| CliError::bad_input(format!("measure {spec:?}: expected a nonnegative integer after ':'")))
    };
    Ok(match name {
        "delta" => MeasureSource::Atoms(DiscreteMeasure::delta(dim)?),
        "cantor" => MeasureSource::Atoms(DiscreteMeasure::cantor_product(count()?, dim)?),
        "cantor-cells" => MeasureSource::Cells(GridDensity::cantor_product(count()?, dim)?),
        "grid" => {
            let m = count()?;
            if m == 0 {
                return Err(CliError::bad_input("grid side must be positive"));
            }
            MeasureSource::Atoms(DiscreteMeasure::full_grid(m as usize, dim)?)
        }
        "file" => {
            let loaded = read_point_set(Path::new(arg))?;
            warnings.extend(loaded.warnings);
            MeasureSource::Atoms(DiscreteMeasure::from_point_set(&loaded.points)?)
        }
        _ => return Err(CliError::bad_input(format!("unknown measure {spec:?}"))),
    })
}
