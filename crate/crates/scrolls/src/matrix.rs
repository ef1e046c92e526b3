//! Rectangular matrices of multivariate polynomials.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rat};
use crate::ratmat::RatMatrix;

/// Row-major matrix of polynomials; the workhorse of all linear algebra
/// over the rational function field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        PolyMatrix { rows, cols, entries }
    }

    pub fn zero(vars: &[String], rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MultiPoly::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &[String], n: usize) -> Self {
        let mut m = PolyMatrix::zero(vars, n, n);
        for i in 0..n {
            m[(i, i)] = MultiPoly::one(vars);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row);
        }
        PolyMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    /// Constant matrix over the given variables.
    pub fn from_rat(vars: &[String], m: &RatMatrix) -> Self {
        let entries = m
            .iter()
            .map(|c| MultiPoly::constant(vars, c.clone()))
            .collect();
        PolyMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[MultiPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<MultiPoly> {
        self.row(i).to_vec()
    }

    /// Single-row matrix view of row `i`.
    pub fn row_matrix(&self, i: usize) -> PolyMatrix {
        PolyMatrix::new(1, self.cols, self.row_vec(i))
    }

    pub fn take_rows(self) -> Vec<Vec<MultiPoly>> {
        let cols = self.cols;
        let mut out = Vec::with_capacity(self.rows);
        let mut it = self.entries.into_iter();
        for _ in 0..self.rows {
            out.push(it.by_ref().take(cols).collect());
        }
        out
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self[(i, j)].clone());
            }
        }
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Vertical stack; column counts must agree.
    pub fn vstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "vstack: {} vs {} columns",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(PolyMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Horizontal concatenation; row counts must agree.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "hstack: {} vs {} rows",
                self.rows, other.rows
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            entries,
        })
    }

    pub fn matmul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "matmul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let vars: Vec<String> = Vec::new();
        let mut out = PolyMatrix::zero(&vars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero(&vars);
                for k in 0..self.cols {
                    acc = &acc + &(&self[(i, k)] * &other[(k, j)]);
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Entrywise partial derivative.
    pub fn differentiate(&self, var: &str) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.differentiate(var))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Entrywise full evaluation at a rational point.
    pub fn evaluate_rat(&self, point: &[(String, Rat)]) -> Result<RatMatrix> {
        let vals = self
            .entries
            .iter()
            .map(|p| p.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(RatMatrix::new(self.rows, self.cols, vals))
    }

    /// Entrywise substitution; returns a constant-entry polynomial matrix
    /// over the original variables.
    pub fn evaluate(&self, point: &[(String, Rat)]) -> Result<PolyMatrix> {
        let vars = self.var_union();
        let entries = self
            .entries
            .iter()
            .map(|p| Ok(MultiPoly::constant(&vars, p.evaluate(point)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Substitute rational values for a subset of the variables.
    pub fn substitute_partial(&self, point: &[(String, Rat)]) -> PolyMatrix {
        self.map(|p| p.substitute_partial(point))
    }

    /// Substitute polynomials for all variables appearing.
    pub fn substitute(&self, images: &[(String, MultiPoly)]) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.substitute(images))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Union of all variables appearing in entries, in first-seen order.
    pub fn var_union(&self) -> Vec<String> {
        let mut vars: Vec<String> = Vec::new();
        for p in &self.entries {
            for v in p.vars() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        vars
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// True when every entry has total degree 0.
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|p| p.is_constant())
    }

    pub fn as_rat(&self) -> Option<RatMatrix> {
        let vals = self
            .entries
            .iter()
            .map(|p| p.as_constant())
            .collect::<Option<Vec<_>>>()?;
        Some(RatMatrix::new(self.rows, self.cols, vals))
    }

    pub fn max_total_degree(&self) -> u32 {
        self.entries
            .iter()
            .map(|p| p.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.entries
            .iter()
            .map(|p| p.max_coeff_bits())
            .max()
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiPoly> {
        self.entries.iter()
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = MultiPoly;
    fn index(&self, (i, j): (usize, usize)) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut MultiPoly {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Parse a matrix from rows of expression strings.
pub fn matrix_from_strs(vars: &[String], rows: &[&[&str]]) -> Result<PolyMatrix> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::with_capacity(row.len());
        for s in *row {
            r.push(crate::parse::parse_poly(s, vars)?);
        }
        out.push(r);
    }
    Ok(PolyMatrix::from_rows(out))
}
