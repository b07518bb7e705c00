//! Edge-list text format.
//!
//! ```text
//! # optional comments
//! 3
//! 0 1 1
//! 0 2 1
//! 1 2 1
//! ```
//!
//! The first data line is the vertex count; each further line is `i j w` with
//! 0-based indices. Pairs that never appear weigh zero.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::DissimilarityGraph;
use crate::error::{HcError, Result};

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(HcError::Parse {
        line,
        message: message.into(),
    })
}

pub fn read_graph(reader: impl Read) -> Result<DissimilarityGraph> {
    let mut n: Option<usize> = None;
    let mut seen: HashMap<(usize, usize), f64> = HashMap::new();
    let mut edges = Vec::new();

    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let data = line.split('#').next().unwrap_or("").trim();
        if data.is_empty() {
            continue;
        }
        let fields: Vec<&str> = data.split_whitespace().collect();
        let Some(n) = n else {
            if fields.len() != 1 {
                return parse_err(line_no, "expected the vertex count on its own line");
            }
            match fields[0].parse::<usize>() {
                Ok(v) if v > 0 => n = Some(v),
                _ => return parse_err(line_no, format!("invalid vertex count `{}`", fields[0])),
            }
            continue;
        };
        if fields.len() != 3 {
            return parse_err(
                line_no,
                format!("expected `i j w`, found {} fields", fields.len()),
            );
        }
        let i: usize = match fields[0].parse() {
            Ok(v) => v,
            Err(_) => return parse_err(line_no, format!("invalid vertex `{}`", fields[0])),
        };
        let j: usize = match fields[1].parse() {
            Ok(v) => v,
            Err(_) => return parse_err(line_no, format!("invalid vertex `{}`", fields[1])),
        };
        let w: f64 = match fields[2].parse() {
            Ok(v) => v,
            Err(_) => return parse_err(line_no, format!("invalid weight `{}`", fields[2])),
        };
        if i == j {
            return parse_err(line_no, format!("self-loop on vertex {i}"));
        }
        if i >= n || j >= n {
            return parse_err(line_no, format!("vertex out of range for n={n}"));
        }
        if !w.is_finite() || w < 0.0 {
            return parse_err(
                line_no,
                format!("weight must be finite and nonnegative, got {w}"),
            );
        }
        let key = (i.min(j), i.max(j));
        if let Some(&prev) = seen.get(&key) {
            if prev != w {
                return parse_err(
                    line_no,
                    format!(
                        "pair ({},{}) repeated with conflicting weight {prev} vs {w}",
                        key.0, key.1
                    ),
                );
            }
            continue;
        }
        seen.insert(key, w);
        edges.push((key.0, key.1, w));
    }

    match n {
        Some(n) => DissimilarityGraph::from_edges(n, edges),
        None => parse_err(1, "missing vertex count"),
    }
}

pub fn read_graph_file(path: impl AsRef<Path>) -> Result<DissimilarityGraph> {
    read_graph(std::fs::File::open(path)?)
}

/// Formats a weight with 17 significant digits, `%.17g` style.
pub fn format_weight(w: f64) -> String {
    if w == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{w:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        let fixed = format!("{w:.decimals$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    } else {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{exp}")
    }
}

/// Writes nonzero pairs in lexicographic order.
pub fn write_graph(g: &DissimilarityGraph, mut out: impl Write) -> Result<()> {
    writeln!(out, "{}", g.n())?;
    for (i, j, w) in g.pairs() {
        if w != 0.0 {
            writeln!(out, "{i} {j} {}", format_weight(w))?;
        }
    }
    Ok(())
}

pub fn write_graph_file(g: &DissimilarityGraph, path: impl AsRef<Path>) -> Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_graph(g, &mut file)?;
    file.flush()?;
    Ok(())
}
