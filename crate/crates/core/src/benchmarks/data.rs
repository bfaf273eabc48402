//! Plain-text shift/rotation data.
//!
//! Layout: whitespace-separated numbers: the shift vector (`dim` reals),
//! the rotation matrix (`dim²` reals, row-major), then optionally a
//! permutation (`dim` integers, 1-based).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::Transform;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CecData {
    pub transform: Transform,
    /// Zero-based.
    pub permutation: Option<Vec<usize>>,
}

/// Reads a data file for `function_id` at dimension `dim`. The rotation is
/// validated for orthogonality.
pub fn load_cec_data(path: impl AsRef<Path>, function_id: &str, dim: usize) -> Result<CecData> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_cec_data(&text, &format!("{} ({function_id})", path.display()), dim)
}

pub(crate) fn parse_cec_data(text: &str, origin: &str, dim: usize) -> Result<CecData> {
    if dim == 0 {
        return Err(Error::config("dimension must be positive"));
    }
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let base = dim + dim * dim;
    let with_perm = base + dim;
    if tokens.len() != base && tokens.len() != with_perm {
        let detail = if tokens.len() < base {
            format!(
                "shift {dim} + rotation {} ; short by {}",
                dim * dim,
                base - tokens.len()
            )
        } else {
            format!(
                "shift {dim} + rotation {} + optional permutation {dim}",
                dim * dim
            )
        };
        return Err(Error::Count {
            path: origin.to_string(),
            expected: base,
            found: tokens.len(),
            detail,
        });
    }
    let reals = tokens[..base]
        .iter()
        .enumerate()
        .map(|(k, t)| {
            t.parse::<f64>().map_err(|_| Error::Parse {
                path: origin.to_string(),
                message: format!("value {} (`{t}`) is not a number", k + 1),
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    let shift = reals[..dim].to_vec();
    let rotation = reals[dim..].to_vec();
    let transform = Transform::new(shift, Some(rotation), 1.0).map_err(|e| Error::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })?;
    let permutation = if tokens.len() == with_perm {
        Some(parse_permutation(&tokens[base..], origin, dim)?)
    } else {
        None
    };
    Ok(CecData {
        transform,
        permutation,
    })
}

fn parse_permutation(tokens: &[&str], origin: &str, dim: usize) -> Result<Vec<usize>> {
    let mut seen = vec![false; dim];
    let mut out = Vec::with_capacity(dim);
    for t in tokens {
        // some published files write integers as reals
        let v = t
            .parse::<usize>()
            .ok()
            .or_else(|| {
                t.parse::<f64>()
                    .ok()
                    .filter(|f| f.fract() == 0.0 && *f >= 1.0)
                    .map(|f| f as usize)
            })
            .filter(|v| (1..=dim).contains(v) && !seen[v - 1])
            .ok_or_else(|| Error::Parse {
                path: origin.to_string(),
                message: format!("permutation entry `{t}` is not a fresh index in 1..={dim}"),
            })?;
        seen[v - 1] = true;
        out.push(v - 1);
    }
    Ok(out)
}

/// Writes `data` in the layout [`load_cec_data`] reads; values use the
/// shortest representation that parses back exactly.
pub fn write_cec_data(path: impl AsRef<Path>, data: &CecData) -> Result<()> {
    let path = path.as_ref();
    let t = &data.transform;
    let dim = t.dim();
    let mut out = String::new();
    let line = |vals: &[f64]| {
        vals.iter()
            .map(|v| format!("{v:e}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(out, "{}", line(t.shift())).unwrap();
    let m = t.rotation_matrix();
    for row in m.chunks(dim) {
        writeln!(out, "{}", line(row)).unwrap();
    }
    if let Some(p) = &data.permutation {
        let ints: Vec<String> = p.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(out, "{}", ints.join(" ")).unwrap();
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}
