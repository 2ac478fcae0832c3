//! CSV ingestion and output.
//!
//! Input files are comma separated with an optional header row. A column
//! whose header is `label` holds ground-truth classes (any strings; they are
//! numbered in order of first appearance). All other cells must be numbers.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use ccd_core::PointSet64;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub points: PointSet64,
    pub labels: Option<Vec<usize>>,
    /// Original label strings, indexed by label id.
    pub label_names: Vec<String>,
    /// Feature column names (`x0`, `x1`, ... when the file has no header).
    pub columns: Vec<String>,
}

impl Dataset {
    /// Number of distinct ground-truth classes.
    pub fn k_true(&self) -> Option<usize> {
        self.labels.as_ref().map(|_| self.label_names.len())
    }
}

fn is_label_header(cell: &str) -> bool {
    cell.trim().eq_ignore_ascii_case("label")
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input)
}

/// Reads every record; the first is returned separately when it is a header
/// (contains a cell that does not parse as a number).
fn records<R: Read>(input: R) -> CliResult<Rows> {
    let mut rows = Vec::new();
    for (i, rec) in reader(input).records().enumerate() {
        let rec = rec.map_err(|e| CliError::Input(format!("line {}: {e}", i + 1)))?;
        if rec.iter().all(|c| c.is_empty()) {
            continue;
        }
        rows.push((i + 1, rec));
    }
    if rows.is_empty() {
        return Err(CliError::Input("file has no rows".into()));
    }
    let first = &rows[0].1;
    let header = if first.iter().any(|c| c.parse::<f64>().is_err()) {
        Some(first.iter().map(str::to_string).collect::<Vec<_>>())
    } else {
        None
    };
    if header.is_some() {
        rows.remove(0);
    }
    Ok((header, rows))
}

/// Optional header and the numbered non-blank records.
type Rows = (Option<Vec<String>>, Vec<(usize, csv::StringRecord)>);

struct Interner {
    ids: HashMap<String, usize>,
    names: Vec<String>,
}

impl Interner {
    fn new() -> Self {
        Self {
            ids: HashMap::new(),
            names: Vec::new(),
        }
    }

    fn id(&mut self, name: &str) -> usize {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = self.names.len();
        self.ids.insert(name.to_string(), id);
        self.names.push(name.to_string());
        id
    }
}

pub fn parse_dataset<R: Read>(input: R, normalize: bool) -> CliResult<Dataset> {
    let (header, rows) = records(input)?;
    if rows.is_empty() {
        return Err(CliError::Input("file has a header but no data rows".into()));
    }
    let width = header.as_ref().map_or(rows[0].1.len(), Vec::len);
    let label_col = header
        .as_ref()
        .and_then(|h| h.iter().position(|c| is_label_header(c)));
    let columns: Vec<String> = match &header {
        Some(h) => h
            .iter()
            .enumerate()
            .filter(|&(j, _)| Some(j) != label_col)
            .map(|(_, c)| c.clone())
            .collect(),
        None => (0..width).map(|j| format!("x{j}")).collect(),
    };
    if columns.is_empty() {
        return Err(CliError::Input("no feature columns".into()));
    }

    let mut coords = Vec::with_capacity(rows.len() * columns.len());
    let mut interner = Interner::new();
    let mut labels = Vec::new();
    for (line, rec) in &rows {
        if rec.len() != width {
            return Err(CliError::Input(format!(
                "line {line}: {} fields, expected {width}",
                rec.len()
            )));
        }
        for (j, cell) in rec.iter().enumerate() {
            if Some(j) == label_col {
                labels.push(interner.id(cell));
                continue;
            }
            let v: f64 = cell.parse().map_err(|_| {
                CliError::Input(format!(
                    "line {line}, column {}: not a number: {cell:?}",
                    j + 1
                ))
            })?;
            if !v.is_finite() {
                return Err(CliError::Input(format!(
                    "line {line}, column {}: non-finite value",
                    j + 1
                )));
            }
            coords.push(v);
        }
    }
    let mut points = PointSet64::new(coords, columns.len())?;
    if normalize {
        points = standardize(&points)?;
    }
    Ok(Dataset {
        points,
        labels: label_col.map(|_| labels),
        label_names: interner.names,
        columns,
    })
}

pub fn read_dataset(path: &Path, normalize: bool) -> CliResult<Dataset> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_dataset(file, normalize).map_err(|e| e.context(path.display()))
}

/// Z-scores every column (population standard deviation). Constant columns
/// are only centered.
pub fn standardize(ps: &PointSet64) -> CliResult<PointSet64> {
    let n = ps.len() as f64;
    let d = ps.dim();
    let mut mean = vec![0.0; d];
    for row in ps.rows() {
        for j in 0..d {
            mean[j] += row[j];
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut var = vec![0.0; d];
    for row in ps.rows() {
        for j in 0..d {
            var[j] += (row[j] - mean[j]).powi(2);
        }
    }
    let sd: Vec<f64> = var.iter().map(|v| (v / n).sqrt()).collect();
    Ok(ps.map_points(|row| {
        (0..d)
            .map(|j| {
                let centered = row[j] - mean[j];
                if sd[j] > 0.0 {
                    centered / sd[j]
                } else {
                    centered
                }
            })
            .collect()
    })?)
}

/// A single label column (or the `label` column of a wider file), interned
/// like dataset labels.
pub fn parse_labels<R: Read>(input: R) -> CliResult<Vec<usize>> {
    let (header, data) = label_records(input)?;
    let mut interner = Interner::new();
    let col = match &header {
        Some(h) if h.len() == 1 => 0,
        Some(h) => h.iter().position(|c| is_label_header(c)).ok_or_else(|| {
            CliError::Input("label file has several columns but none named `label`".into())
        })?,
        None => 0,
    };
    let mut out = Vec::with_capacity(data.len());
    for (line, rec) in &data {
        let cell = rec
            .get(col)
            .ok_or_else(|| CliError::Input(format!("line {line}: missing label field")))?;
        out.push(interner.id(cell));
    }
    Ok(out)
}

/// Label files may hold text labels, so a header is only recognized by the
/// name `label` (or, for one-column files, by a first cell equal to it).
fn label_records<R: Read>(input: R) -> CliResult<Rows> {
    let mut rows = Vec::new();
    for (i, rec) in reader(input).records().enumerate() {
        let rec = rec.map_err(|e| CliError::Input(format!("line {}: {e}", i + 1)))?;
        if rec.iter().all(|c| c.is_empty()) {
            continue;
        }
        rows.push((i + 1, rec));
    }
    if rows.is_empty() {
        return Err(CliError::Input("label file has no rows".into()));
    }
    let first = &rows[0].1;
    let has_header = first.iter().any(is_label_header)
        || (first.len() > 1 && first.iter().any(|c| c.parse::<f64>().is_err()));
    let header = has_header.then(|| first.iter().map(str::to_string).collect());
    if has_header {
        rows.remove(0);
    }
    Ok((header, rows))
}

pub fn read_labels(path: &Path) -> CliResult<Vec<usize>> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_labels(file).map_err(|e| e.context(path.display()))
}

/// Serializes points (and labels) with a `x0,..,label` header. Values use
/// the shortest representation that parses back to the same `f64`.
pub fn dataset_to_csv(ps: &PointSet64, labels: Option<&[usize]>) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (0..ps.dim()).map(|j| format!("x{j}")).collect();
    if labels.is_some() {
        header.push("label".into());
    }
    w.write_record(&header)?;
    for (i, row) in ps.rows().enumerate() {
        let mut rec: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        if let Some(l) = labels {
            rec.push(l[i].to_string());
        }
        w.write_record(&rec)?;
    }
    w.into_inner().map_err(|e| CliError::Input(e.to_string()))
}

pub fn labels_to_csv(labels: &[usize]) -> Vec<u8> {
    let mut out = String::from("label\n");
    for l in labels {
        out.push_str(&l.to_string());
        out.push('\n');
    }
    out.into_bytes()
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path)
        .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}
