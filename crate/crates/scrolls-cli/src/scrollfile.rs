//! The scroll file format: line-oriented key/value text with one scroll
//! per file.
//!
//! ```text
//! # optional comments
//! name = twisted_cubic_tangent
//! base_vars = t
//! ambient_dim = 3
//! row = "1", "t", "t^2", "t^3"
//! row = "0", "1", "2*t", "3*t^2"
//! ```
//!
//! `base_vars` is a comma-separated identifier list (empty for a constant
//! scroll), `ambient_dim` is the projective ambient dimension `N`, and
//! each `row` gives `N+1` quoted polynomial expressions in the base
//! variables. Rows in order form the classifying matrix.

use scrolls::poly::MultiPoly;
use scrolls::{Ctx, Error, ParametricScroll, PolyMatrix};

/// A parse failure with its location in the file.
#[derive(Debug)]
pub struct FileError {
    pub line: usize,
    pub msg: String,
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

pub struct ScrollFile {
    pub name: Option<String>,
    pub base_vars: Vec<String>,
    pub ambient_dim: usize,
    pub rows: Vec<Vec<String>>,
}

pub fn parse(text: &str) -> Result<ScrollFile, FileError> {
    let mut name = None;
    let mut base_vars: Option<Vec<String>> = None;
    let mut ambient_dim: Option<usize> = None;
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(FileError {
                line: lineno,
                msg: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "name" => name = Some(value.to_string()),
            "base_vars" => {
                let vars: Vec<String> = value
                    .split(',')
                    .map(|v| v.trim().to_string())
                    .filter(|v| !v.is_empty())
                    .collect();
                for v in &vars {
                    let mut chars = v.chars();
                    let head_ok = chars.next().map(|c| c.is_ascii_alphabetic()).unwrap_or(false);
                    if !head_ok || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(FileError {
                            line: lineno,
                            msg: format!("invalid variable name `{v}`"),
                        });
                    }
                }
                base_vars = Some(vars);
            }
            "ambient_dim" => {
                ambient_dim = Some(value.parse().map_err(|_| FileError {
                    line: lineno,
                    msg: format!("invalid ambient dimension `{value}`"),
                })?);
            }
            "row" => {
                rows.push(parse_row(value, lineno)?);
            }
            other => {
                return Err(FileError {
                    line: lineno,
                    msg: format!("unknown key `{other}`"),
                });
            }
        }
    }
    let base_vars = base_vars.ok_or(FileError {
        line: 0,
        msg: "missing `base_vars`".into(),
    })?;
    let ambient_dim = ambient_dim.ok_or(FileError {
        line: 0,
        msg: "missing `ambient_dim`".into(),
    })?;
    if rows.is_empty() {
        return Err(FileError {
            line: 0,
            msg: "missing matrix rows".into(),
        });
    }
    Ok(ScrollFile {
        name,
        base_vars,
        ambient_dim,
        rows,
    })
}

fn parse_row(value: &str, lineno: usize) -> Result<Vec<String>, FileError> {
    let mut entries = Vec::new();
    let mut rest = value.trim_start();
    loop {
        if !rest.starts_with('"') {
            return Err(FileError {
                line: lineno,
                msg: format!("expected a quoted polynomial, got `{rest}`"),
            });
        }
        let Some(end) = rest[1..].find('"') else {
            return Err(FileError {
                line: lineno,
                msg: "unterminated string".into(),
            });
        };
        entries.push(rest[1..=end].to_string());
        rest = rest[end + 2..].trim_start();
        if rest.is_empty() {
            break;
        }
        if let Some(stripped) = rest.strip_prefix(',') {
            rest = stripped.trim_start();
        } else {
            return Err(FileError {
                line: lineno,
                msg: format!("expected `,` between entries, got `{rest}`"),
            });
        }
    }
    Ok(entries)
}

/// Line numbers of the `row` entries, for error reporting.
fn row_lines(text: &str) -> Vec<usize> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| l.trim().starts_with("row"))
        .map(|(i, _)| i + 1)
        .collect()
}

/// Parse a file into a validated scroll. Polynomial errors are reported
/// with the matrix row and column (1-based) and the file line.
pub fn to_scroll(text: &str, ctx: &Ctx) -> Result<ParametricScroll, FileError> {
    let file = parse(text)?;
    let lines = row_lines(text);
    let mut poly_rows: Vec<Vec<MultiPoly>> = Vec::new();
    for (r, row) in file.rows.iter().enumerate() {
        let lineno = lines.get(r).copied().unwrap_or(0);
        if row.len() != file.ambient_dim + 1 {
            return Err(FileError {
                line: lineno,
                msg: format!(
                    "row {} has {} entries, ambient dimension {} needs {}",
                    r + 1,
                    row.len(),
                    file.ambient_dim,
                    file.ambient_dim + 1
                ),
            });
        }
        let mut out = Vec::with_capacity(row.len());
        for (c, entry) in row.iter().enumerate() {
            match scrolls::parse::parse_poly(entry, &file.base_vars) {
                Ok(p) => out.push(p),
                Err(Error::Parse { offset, msg }) => {
                    return Err(FileError {
                        line: lineno,
                        msg: format!(
                            "matrix row {}, column {}: {} at offset {}",
                            r + 1,
                            c + 1,
                            msg,
                            offset
                        ),
                    });
                }
                Err(e) => {
                    return Err(FileError {
                        line: lineno,
                        msg: format!("matrix row {}, column {}: {}", r + 1, c + 1, e),
                    });
                }
            }
        }
        poly_rows.push(out);
    }
    let matrix = PolyMatrix::from_rows(poly_rows);
    ParametricScroll::new(file.base_vars, file.ambient_dim, matrix, file.name, ctx).map_err(|e| {
        FileError {
            line: 0,
            msg: format!("invalid scroll: {e}"),
        }
    })
}

/// Serialize a scroll in the file format.
pub fn to_text(x: &ParametricScroll) -> String {
    let mut out = String::new();
    if let Some(n) = x.name() {
        out.push_str(&format!("name = {n}\n"));
    }
    out.push_str(&format!("base_vars = {}\n", x.base_vars().join(", ")));
    out.push_str(&format!("ambient_dim = {}\n", x.ambient_dim()));
    let m = x.classifying();
    for i in 0..m.rows() {
        let entries: Vec<String> = m.row(i).iter().map(|p| format!("\"{p}\"")).collect();
        out.push_str(&format!("row = {}\n", entries.join(", ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
# tangent developable of the twisted cubic
name = tc_tangent
base_vars = t
ambient_dim = 3
row = "1", "t", "t^2", "t^3"
row = "0", "1", "2*t", "3*t^2"
"#;

    #[test]
    fn roundtrip() {
        let ctx = Ctx::default();
        let x = to_scroll(SAMPLE, &ctx).unwrap();
        assert_eq!(x.fibre_dim(), 1);
        assert_eq!(x.name(), Some("tc_tangent"));
        let text = to_text(&x);
        let y = to_scroll(&text, &ctx).unwrap();
        assert_eq!(x.classifying(), y.classifying());
    }

    #[test]
    fn error_carries_row_and_column() {
        let ctx = Ctx::default();
        let bad = SAMPLE.replace("\"2*t\"", "\"2*&\"");
        let err = to_scroll(&bad, &ctx).unwrap_err();
        assert!(err.msg.contains("row 2, column 3"), "{}", err.msg);
        assert_eq!(err.line, 7);
    }
}
