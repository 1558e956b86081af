//! ESRI ASCII grid (.asc) codec.
//!
//! Header carries `ncols, nrows, xllcorner, yllcorner, cellsize,
//! NODATA_value` in that order (keys case-insensitive), followed by
//! whitespace-separated data tokens, north row first. The writer emits data
//! values with 6 significant digits and header floats in full shortest
//! round-trip form, so `read(write(g))` reproduces the spec exactly and the
//! values to better than 1e-6 relative.

use super::{GeoGrid, GridError, GridSpec};

const HEADER_KEYS: [&str; 6] = [
    "ncols",
    "nrows",
    "xllcorner",
    "yllcorner",
    "cellsize",
    "nodata_value",
];

/// Format with `sig` significant digits, `%g`-style: fixed notation for
/// moderate exponents, scientific otherwise, trailing zeros trimmed.
pub(crate) fn fmt_sig(v: f64, sig: usize) -> String {
    debug_assert!(sig >= 1);
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent marker");
    let exponent: i32 = exponent.parse().expect("numeric exponent");
    if exponent < -4 || exponent >= sig as i32 {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    } else {
        let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
        let fixed = format!("{v:.decimals$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    }
}

/// Parse ESRI ASCII text into a grid.
pub fn read_esri_ascii(text: &str) -> Result<GeoGrid, GridError> {
    // (1-based line number, content) with blank lines kept for numbering.
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut header: Vec<f64> = Vec::with_capacity(6);
    for (slot, key) in HEADER_KEYS.iter().enumerate() {
        let (line_no, line) = *lines.get(slot).ok_or_else(|| GridError::Parse {
            line: lines.last().map_or(1, |(n, _)| *n),
            message: format!("missing header key `{key}`"),
        })?;
        let mut parts = line.split_whitespace();
        let found_key = parts.next().unwrap_or("");
        if !found_key.eq_ignore_ascii_case(key) {
            return Err(GridError::Parse {
                line: line_no,
                message: format!("expected header key `{key}`, found `{found_key}`"),
            });
        }
        let raw = parts.next().ok_or_else(|| GridError::Parse {
            line: line_no,
            message: format!("header key `{key}` has no value"),
        })?;
        let value: f64 = raw.parse().map_err(|_| GridError::Parse {
            line: line_no,
            message: format!("non-numeric value `{raw}` for header key `{key}`"),
        })?;
        if !value.is_finite() {
            return Err(GridError::Parse {
                line: line_no,
                message: format!("non-finite value for header key `{key}`"),
            });
        }
        header.push(value);
    }

    let n_cols = header[0] as usize;
    let n_rows = header[1] as usize;
    if header[0].fract() != 0.0 || header[1].fract() != 0.0 || n_cols == 0 || n_rows == 0 {
        return Err(GridError::Parse {
            line: lines[0].0,
            message: format!("ncols/nrows must be positive integers, got {} / {}", header[0], header[1]),
        });
    }
    let spec = GridSpec::with_nodata(n_rows, n_cols, header[4], header[2], header[3], header[5])
        .map_err(|e| GridError::Parse {
            line: lines[0].0,
            message: e.to_string(),
        })?;

    let data_lines = &lines[6..];
    let data_start_line = data_lines.first().map_or(lines.len() + 1, |(n, _)| *n);
    let expected = spec.len();
    let mut values = Vec::with_capacity(expected);
    for (line_no, line) in data_lines {
        for token in line.split_whitespace() {
            let v: f64 = token.parse().map_err(|_| GridError::Parse {
                line: *line_no,
                message: format!("non-numeric token `{token}`"),
            })?;
            if !v.is_finite() {
                return Err(GridError::Parse {
                    line: *line_no,
                    message: format!("non-finite token `{token}`"),
                });
            }
            values.push(v);
        }
    }
    if values.len() != expected {
        return Err(GridError::Parse {
            line: data_start_line,
            message: format!("expected {expected} values, found {}", values.len()),
        });
    }
    GeoGrid::new(spec, values)
}

/// Serialize a grid to ESRI ASCII text.
pub fn write_esri_ascii(grid: &GeoGrid) -> String {
    let spec = grid.spec();
    let mut out = String::new();
    out.push_str(&format!("ncols {}\n", spec.n_cols));
    out.push_str(&format!("nrows {}\n", spec.n_rows));
    out.push_str(&format!("xllcorner {}\n", spec.origin_lon));
    out.push_str(&format!("yllcorner {}\n", spec.origin_lat));
    out.push_str(&format!("cellsize {}\n", spec.cell_size_deg));
    out.push_str(&format!("NODATA_value {}\n", fmt_sig(spec.nodata, 6)));
    for row in 0..spec.n_rows {
        let mut first = true;
        for col in 0..spec.n_cols {
            if !first {
                out.push(' ');
            }
            first = false;
            match grid.get(row, col) {
                Some(v) => out.push_str(&fmt_sig(v, 6)),
                None => out.push_str(&fmt_sig(spec.nodata, 6)),
            }
        }
        out.push('\n');
    }
    out
}
