//! Dataset CSV: `id,label,<view>:<col>,...`, UTF-8, LF line endings.
//!
//! Columns of one view must be contiguous. Reals are written with 17
//! significant digits (shortest `%.17g`-style form), which round-trips every
//! finite `f64` exactly.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Result, StormError};
use crate::model::{Dataset, Instance, OriginalClassSet, ViewSchema};

/// `%.17g`-style formatting: 17 significant digits, trailing zeros trimmed,
/// exponent form outside `[1e-5, 1e17)`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        trim_fraction(format!("{:.*}", (16 - exp) as usize, x))
    } else {
        format!("{}e{exp}", trim_fraction(mantissa.to_string()))
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn parse_header(header: &csv::StringRecord) -> Result<Vec<ViewSchema>> {
    let bad = |msg: String| Err(StormError::Csv(format!("header: {msg}")));
    if header.get(0) != Some("id") || header.get(1) != Some("label") {
        return bad("must start with `id,label`".into());
    }
    let mut schema: Vec<ViewSchema> = Vec::new();
    for (pos, name) in header.iter().enumerate().skip(2) {
        let Some((view, col)) = name.split_once(':') else {
            return bad(format!(
                "column {pos} `{name}` is not of the form `<view>:<column>`"
            ));
        };
        if view.is_empty() {
            return bad(format!("column {pos} `{name}` has an empty view name"));
        }
        match schema.last_mut() {
            Some(last) if last.name == view => last.columns.push(col.to_string()),
            _ => {
                if schema.iter().any(|v| v.name == view) {
                    return bad(format!("columns of view `{view}` are not contiguous"));
                }
                schema.push(ViewSchema::new(view, vec![col.to_string()]));
            }
        }
    }
    if schema.is_empty() {
        return bad("no view columns".into());
    }
    Ok(schema)
}

/// Parses a dataset. The rare class defaults to the least frequent label
/// (earliest first appearance on ties).
pub fn read_csv<R: Read>(reader: R) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| StormError::Csv(format!("header: {e}")))?
        .clone();
    let schema = parse_header(&header)?;
    let width = header.len();

    let mut instances = Vec::new();
    let mut classes: Vec<String> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (row, record) in rdr.records().enumerate() {
        let row = row + 1;
        let record = record.map_err(|e| StormError::Csv(format!("row {row}: {e}")))?;
        if record.len() != width {
            return Err(StormError::Csv(format!(
                "row {row}: {} fields, expected {width}",
                record.len()
            )));
        }
        let id = record[0].to_string();
        if id.is_empty() {
            return Err(StormError::Csv(format!("row {row}: empty id")));
        }
        if !seen.insert(id.clone()) {
            return Err(StormError::Csv(format!("row {row}: duplicate id `{id}`")));
        }
        let label = record[1].to_string();
        match classes.iter().position(|c| *c == label) {
            Some(ci) => counts[ci] += 1,
            None => {
                classes.push(label.clone());
                counts.push(1);
            }
        }
        let mut inst = Instance::new(id, label);
        let mut col = 2;
        for view in &schema {
            let mut values = Vec::with_capacity(view.dim());
            for c in &view.columns {
                let cell = &record[col];
                let value: f64 = cell.trim().parse().map_err(|_| {
                    StormError::Csv(format!(
                        "row {row}, column `{}:{c}`: `{cell}` is not a number",
                        view.name
                    ))
                })?;
                if !value.is_finite() {
                    return Err(StormError::Csv(format!(
                        "row {row}, column `{}:{c}`: `{cell}` is not finite",
                        view.name
                    )));
                }
                values.push(value);
                col += 1;
            }
            inst.views.insert(view.name.clone(), values);
        }
        instances.push(inst);
    }
    if instances.is_empty() {
        return Err(StormError::Csv("no data rows".into()));
    }
    let rare = counts
        .iter()
        .enumerate()
        .min_by_key(|(i, &c)| (c, *i))
        .map(|(i, _)| classes[i].clone())
        .expect("non-empty");
    let class_set = OriginalClassSet::new(classes, rare)?;
    Dataset::new(class_set, schema, instances)
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| {
        StormError::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    read_csv(file)
}

pub fn write_csv<W: Write>(dataset: &Dataset, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    let mut header = vec!["id".to_string(), "label".to_string()];
    for view in dataset.schema() {
        for c in &view.columns {
            header.push(format!("{}:{c}", view.name));
        }
    }
    w.write_record(&header).map_err(csv_err)?;
    for inst in dataset.instances() {
        if inst.synthetic {
            return Err(StormError::Csv(format!(
                "synthetic instance `{}` cannot be written",
                inst.id
            )));
        }
        let mut row = vec![inst.id.clone(), inst.label.clone()];
        for view in dataset.schema() {
            row.extend(inst.view(&view.name)?.iter().map(|&x| format_real(x)));
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> StormError {
    StormError::Csv(e.to_string())
}

pub fn save_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path)?;
    write_csv(dataset, std::io::BufWriter::new(file))
}
