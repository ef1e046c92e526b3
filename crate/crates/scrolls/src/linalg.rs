//! Fraction-free linear algebra over the rational function field.
//!
//! Matrices keep polynomial entries throughout: each elimination step
//! cross-multiplies rows, attempts the Bareiss exact division by the
//! previous pivot, and then strips the row's rational content and monomial
//! content. Pivots are chosen by lowest total degree (ties broken by column
//! then row index), which keeps degree growth down and is deterministic.
//!
//! Ranks computed this way are ranks over the fraction field `Q(t1..tg)`,
//! i.e. the rank at every base point outside a proper closed subset.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{MultiPoly, Rat};
use crate::ratmat::RatMatrix;

/// Echelon form of a matrix: nonzero rows sorted by pivot column.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// One row per pivot, sorted by pivot column.
    pub mat: PolyMatrix,
    /// Pivot column of each row of `mat`.
    pub pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn pivot_value(&self, row: usize) -> &MultiPoly {
        &self.mat[(row, self.pivot_cols[row])]
    }

    pub fn non_pivot_cols(&self) -> Vec<usize> {
        (0..self.mat.cols())
            .filter(|c| !self.pivot_cols.contains(c))
            .collect()
    }
}

fn check_caps(op: &str, rows: &[Vec<MultiPoly>], ctx: &Ctx) -> Result<()> {
    for row in rows {
        for p in row {
            if p.total_degree() > ctx.max_degree {
                return Err(Error::Resource {
                    op: op.to_string(),
                    what: format!(
                        "intermediate degree {} exceeds cap {}",
                        p.total_degree(),
                        ctx.max_degree
                    ),
                });
            }
            if p.max_coeff_bits() > ctx.max_bits {
                return Err(Error::Resource {
                    op: op.to_string(),
                    what: format!(
                        "coefficient size {} bits exceeds cap {}",
                        p.max_coeff_bits(),
                        ctx.max_bits
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Divide a row by its rational content and common monomial content.
fn normalize_row(row: &mut [MultiPoly]) {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    let mut any = false;
    for p in row.iter() {
        if p.is_zero() {
            continue;
        }
        any = true;
        let c = p.content();
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if !any {
        return;
    }
    let mut content = BigRational::new(num_gcd, den_lcm);
    // sign: make the first nonzero entry's content positive
    if let Some(p) = row.iter().find(|p| !p.is_zero()) {
        if p.content().is_negative() {
            content = -content;
        }
    }
    let inv = Rat::one() / content;
    for p in row.iter_mut() {
        *p = p.scale(&inv);
    }
    // common monomial content across the whole row
    let mono: Option<crate::poly::Monomial> = {
        let mut acc: Option<Vec<u32>> = None;
        for p in row.iter() {
            if p.is_zero() {
                continue;
            }
            let mc = p.monomial_content();
            acc = Some(match acc {
                None => mc.0,
                Some(prev) => prev.iter().zip(&mc.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        acc.map(crate::poly::Monomial)
    };
    if let Some(m) = mono {
        if m.total_degree() > 0 {
            let vars = row.iter().find(|p| !p.is_zero()).unwrap().vars().to_vec();
            let mut div = MultiPoly::one(&vars);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let v = MultiPoly::var(&vars, &vars[i]).unwrap();
                    div = &div * &v.pow(e);
                }
            }
            for p in row.iter_mut() {
                if !p.is_zero() {
                    *p = p.div_exact(&div).expect("monomial content divides");
                }
            }
        }
    }
}

fn try_div_row(row: &mut [MultiPoly], d: &MultiPoly) {
    if d.is_one() || d.is_zero() {
        return;
    }
    let quotients: Option<Vec<MultiPoly>> =
        row.iter().map(|p| p.div_exact(d)).collect();
    if let Some(q) = quotients {
        for (slot, v) in row.iter_mut().zip(q) {
            *slot = v;
        }
    }
}

struct Elim {
    rows: Vec<Vec<MultiPoly>>,
    /// (row index, pivot column) in choice order.
    pivots: Vec<(usize, usize)>,
}

/// Core fraction-free elimination. `reduced` additionally clears pivot
/// columns from the other pivot rows (Gauss-Jordan).
fn eliminate(m: &PolyMatrix, ctx: &Ctx, reduced: bool) -> Result<Elim> {
    let vars = m.var_union();
    let mut rows: Vec<Vec<MultiPoly>> = m.map(|p| p.remap(&vars)).take_rows();
    for row in rows.iter_mut() {
        normalize_row(row);
    }
    let ncols = m.cols();
    let mut active: Vec<usize> = (0..rows.len()).collect();
    let mut used_cols: Vec<bool> = vec![false; ncols];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = MultiPoly::one(&vars);

    loop {
        // lowest total-degree nonzero entry among active rows, unused cols
        let mut best: Option<(u32, usize, usize)> = None;
        for &i in &active {
            for (c, used) in used_cols.iter().enumerate() {
                if *used || rows[i][c].is_zero() {
                    continue;
                }
                let d = rows[i][c].total_degree();
                let cand = (d, c, i);
                if best.map(|b| cand < b).unwrap_or(true) {
                    best = Some(cand);
                }
            }
        }
        let Some((_, pc, pr)) = best else { break };
        let pivot_row = rows[pr].clone();
        let pivot_val = pivot_row[pc].clone();
        active.retain(|&i| i != pr);
        used_cols[pc] = true;
        for &i in &active {
            if rows[i][pc].is_zero() {
                continue;
            }
            let coef = rows[i][pc].clone();
            let mut new_row: Vec<MultiPoly> = rows[i]
                .iter()
                .zip(&pivot_row)
                .map(|(a, b)| &(&pivot_val * a) - &(&coef * b))
                .collect();
            try_div_row(&mut new_row, &prev);
            normalize_row(&mut new_row);
            rows[i] = new_row;
        }
        pivots.push((pr, pc));
        prev = pivot_val;
        check_caps("eliminate", &rows, ctx)?;
    }

    if reduced {
        // clear each pivot column from the other pivot rows, in reverse
        // choice order so previously cleared columns stay cleared
        for j in (0..pivots.len()).rev() {
            let (pr_j, pc_j) = pivots[j];
            let pivot_row = rows[pr_j].clone();
            let d_j = pivot_row[pc_j].clone();
            for &(pr_k, _) in pivots.iter() {
                if pr_k == pr_j || rows[pr_k][pc_j].is_zero() {
                    continue;
                }
                let coef = rows[pr_k][pc_j].clone();
                let mut new_row: Vec<MultiPoly> = rows[pr_k]
                    .iter()
                    .zip(&pivot_row)
                    .map(|(a, b)| &(&d_j * a) - &(&coef * b))
                    .collect();
                normalize_row(&mut new_row);
                rows[pr_k] = new_row;
            }
            check_caps("eliminate", &rows, ctx)?;
        }
    }

    Ok(Elim { rows, pivots })
}

/// Rank over the fraction field of the polynomial ring.
pub fn generic_rank(m: &PolyMatrix, ctx: &Ctx) -> Result<usize> {
    Ok(eliminate(m, ctx, false)?.pivots.len())
}

/// Reduced echelon form: pivot rows sorted by pivot column, each row
/// content-normalized with the pivot entry's leading coefficient positive.
pub fn rref(m: &PolyMatrix, ctx: &Ctx) -> Result<Echelon> {
    let elim = eliminate(m, ctx, true)?;
    let mut ordered: Vec<(usize, usize)> = elim.pivots.clone();
    ordered.sort_by_key(|&(_, c)| c);
    let mut out_rows = Vec::with_capacity(ordered.len());
    let mut pivot_cols = Vec::with_capacity(ordered.len());
    for &(r, c) in &ordered {
        let mut row = elim.rows[r].clone();
        if row[c].content().is_negative() {
            for p in row.iter_mut() {
                *p = -&*p;
            }
        }
        out_rows.push(row);
        pivot_cols.push(c);
    }
    let mat = if out_rows.is_empty() {
        PolyMatrix::zero(&m.var_union(), 0, m.cols())
    } else {
        PolyMatrix::from_rows(out_rows)
    };
    Ok(Echelon { mat, pivot_cols })
}

/// Rows spanning the right null space over the function field, with
/// denominators cleared so every entry is a polynomial.
/// `m · row^T = 0` holds identically for each returned row.
pub fn kernel_basis(m: &PolyMatrix, ctx: &Ctx) -> Result<PolyMatrix> {
    let e = rref(m, ctx)?;
    let vars = m.var_union();
    let free = e.non_pivot_cols();
    if free.is_empty() {
        return Ok(PolyMatrix::zero(&vars, 0, m.cols()));
    }
    let r = e.rank();
    // product of all pivot values, and products omitting one pivot
    let mut rows_out = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![MultiPoly::zero(&vars); m.cols()];
        let mut all = MultiPoly::one(&vars);
        for i in 0..r {
            all = &all * e.pivot_value(i);
        }
        v[f] = all;
        for i in 0..r {
            let mut others = MultiPoly::one(&vars);
            for j in 0..r {
                if j != i {
                    others = &others * e.pivot_value(j);
                }
            }
            v[e.pivot_cols[i]] = -&(&e.mat[(i, f)] * &others);
        }
        normalize_row(&mut v);
        rows_out.push(v);
    }
    let k = PolyMatrix::from_rows(rows_out);
    debug_assert!(m.matmul(&k.transpose())?.is_zero());
    Ok(k)
}

/// True iff the two matrices span the same row space over the function
/// field. Requires equal column counts.
pub fn rowspan_equal(a: &PolyMatrix, b: &PolyMatrix, ctx: &Ctx) -> Result<bool> {
    if a.cols() != b.cols() {
        return Err(Error::Shape(format!(
            "rowspan_equal: {} vs {} columns",
            a.cols(),
            b.cols()
        )));
    }
    let ra = generic_rank(a, ctx)?;
    let rb = generic_rank(b, ctx)?;
    if ra != rb {
        return Ok(false);
    }
    let stacked = a.vstack(b)?;
    Ok(generic_rank(&stacked, ctx)? == ra)
}

/// True iff every row of `b` lies in the row span of `a`.
pub fn rowspan_contains(a: &PolyMatrix, b: &PolyMatrix, ctx: &Ctx) -> Result<bool> {
    if a.cols() != b.cols() {
        return Err(Error::Shape(format!(
            "rowspan_contains: {} vs {} columns",
            a.cols(),
            b.cols()
        )));
    }
    let ra = generic_rank(a, ctx)?;
    let stacked = a.vstack(b)?;
    Ok(generic_rank(&stacked, ctx)? == ra)
}

/// Reduce each row of `m` modulo the row span described by a reduced
/// echelon form, using one uniform multiplier for every input row: each
/// output row equals `(product of all pivot values)` times the true
/// reduction. Entries in pivot columns come out identically zero.
pub fn reduce_rows_mod(e: &Echelon, m: &PolyMatrix) -> PolyMatrix {
    let mut rows = m.clone().take_rows();
    let mut out = Vec::with_capacity(rows.len());
    for row in rows.drain(..) {
        let mut v = row;
        for i in 0..e.rank() {
            let d = e.pivot_value(i);
            let c = e.pivot_cols[i];
            let coef = v[c].clone();
            v = v
                .iter()
                .zip(e.mat.row(i))
                .map(|(a, b)| &(d * a) - &(&coef * b))
                .collect();
        }
        out.push(v);
    }
    PolyMatrix::from_rows(out)
}

/// Delete the pivot columns, keeping only the complementary coordinates.
pub fn project_non_pivot(e: &Echelon, m: &PolyMatrix) -> PolyMatrix {
    let keep = e.non_pivot_cols();
    let rows = (0..m.rows())
        .map(|i| keep.iter().map(|&c| m[(i, c)].clone()).collect())
        .collect();
    PolyMatrix::from_rows(rows)
}

/// Determinant by cofactor expansion; intended for small matrices.
pub fn poly_det(m: &PolyMatrix) -> Result<MultiPoly> {
    if m.rows() != m.cols() {
        return Err(Error::Shape("determinant of non-square matrix".into()));
    }
    let vars = m.var_union();
    Ok(det_rec(m, &(0..m.rows()).collect::<Vec<_>>(), &vars))
}

fn det_rec(m: &PolyMatrix, cols: &[usize], vars: &[String]) -> MultiPoly {
    let row = m.rows() - cols.len();
    if cols.is_empty() {
        return MultiPoly::one(vars);
    }
    let mut acc = MultiPoly::zero(vars);
    for (k, &c) in cols.iter().enumerate() {
        if m[(row, c)].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&cc| cc != c)
            .collect();
        let sub = det_rec(m, &rest, vars);
        let term = &m[(row, c)] * &sub;
        if k % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

/// Maximum rank of `m` evaluated at `ctx.samples` random rational points.
/// This is the probabilistic rank oracle: it can only under-estimate, and
/// the maximum over samples equals the generic rank with high probability.
pub fn sampled_rank(m: &PolyMatrix, ctx: &Ctx, site: &str) -> Result<usize> {
    let vars = m.var_union();
    if vars.is_empty() {
        return Ok(m.as_rat().expect("constant matrix").rank());
    }
    let mut best = 0;
    for attempt in 0..ctx.samples {
        let mut rng = ctx.rng_for(site, attempt as u64);
        let point: Vec<(String, Rat)> = vars
            .iter()
            .map(|v| (v.clone(), Ctx::random_rational(&mut rng)))
            .collect();
        let r = m.evaluate_rat(&point)?.rank();
        best = best.max(r);
    }
    Ok(best)
}

/// Random rational point for the given variables, derived from the context.
pub fn sample_point(vars: &[String], ctx: &Ctx, site: &str, attempt: u64) -> Vec<(String, Rat)> {
    let mut rng = ctx.rng_for(site, attempt);
    vars.iter()
        .map(|v| (v.clone(), Ctx::random_rational(&mut rng)))
        .collect()
}

/// If the row span of `m` is constant (independent of all variables),
/// return a constant basis; otherwise `None`. Normative test: the span
/// equals the span of its evaluation at two independent generic points.
pub fn constant_rowspan(m: &PolyMatrix, ctx: &Ctx, site: &str) -> Result<Option<RatMatrix>> {
    let vars = m.var_union();
    if vars.is_empty() || m.is_constant() {
        let r = m.as_rat().expect("constant matrix");
        let (rr, pivots) = r.rref();
        let rows = (0..pivots.len()).map(|i| rr.row(i).to_vec()).collect();
        return Ok(Some(RatMatrix::from_rows(rows)));
    }
    let rank = generic_rank(m, ctx)?;
    let mut basis: Option<RatMatrix> = None;
    for attempt in 0..2u64 {
        let point = sample_point(&vars, ctx, site, attempt);
        let eval = m.evaluate(&point)?;
        if !rowspan_equal(m, &eval, ctx)? {
            return Ok(None);
        }
        if basis.is_none() {
            let r = eval.as_rat().expect("evaluated matrix is constant");
            let (rr, pivots) = r.rref();
            if pivots.len() != rank {
                // unlucky sample; try the next one
                continue;
            }
            let rows = (0..pivots.len()).map(|i| rr.row(i).to_vec()).collect();
            basis = Some(RatMatrix::from_rows(rows));
        }
    }
    match basis {
        Some(b) => Ok(Some(b)),
        None => Err(Error::Degenerate {
            op: format!("constant_rowspan[{site}]"),
            attempts: 2,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::matrix_from_strs;
    use crate::poly::{rat_int, vars};

    fn ctx() -> Ctx {
        Ctx::default()
    }

    #[test]
    fn rank_of_identity() {
        let vs = vars(&["t"]);
        let id = PolyMatrix::identity(&vs, 3);
        assert_eq!(generic_rank(&id, &ctx()).unwrap(), 3);
    }

    #[test]
    fn rank_drops_for_proportional_rows() {
        let vs = vars(&["t"]);
        let m = matrix_from_strs(&vs, &[&["1", "t"], &["t", "t^2"]]).unwrap();
        assert_eq!(generic_rank(&m, &ctx()).unwrap(), 1);
    }

    #[test]
    fn rank_of_jet_stack_matches_numeric_oracle() {
        let vs = vars(&["t"]);
        let m = matrix_from_strs(
            &vs,
            &[
                &["1", "t", "t^2", "t^3"],
                &["0", "1", "2*t", "3*t^2"],
                &["0", "0", "2", "6*t"],
            ],
        )
        .unwrap();
        // oracle: evaluate at t=2 and compute the exact numeric rank
        let at2 = m.evaluate_rat(&[("t".into(), rat_int(2))]).unwrap();
        assert_eq!(at2.rank(), 3);
        assert_eq!(generic_rank(&m, &ctx()).unwrap(), 3);
    }

    #[test]
    fn kernel_of_jet_matrix() {
        let vs = vars(&["t"]);
        let m = matrix_from_strs(
            &vs,
            &[&["1", "t", "t^2", "t^3"], &["0", "1", "2*t", "3*t^2"]],
        )
        .unwrap();
        let k = kernel_basis(&m, &ctx()).unwrap();
        assert_eq!(k.rows(), 2);
        // m · k^T = 0 identically
        assert!(m.matmul(&k.transpose()).unwrap().is_zero());
        // matches the expected spanning set
        let expected = matrix_from_strs(
            &vs,
            &[
                &["t^2", "-2*t", "1", "0"],
                &["2*t^3", "-3*t^2", "0", "1"],
            ],
        )
        .unwrap();
        assert!(rowspan_equal(&k, &expected, &ctx()).unwrap());
    }

    #[test]
    fn kernel_of_full_rank_square_is_empty() {
        let vs = vars(&["t"]);
        let id = PolyMatrix::identity(&vs, 2);
        let k = kernel_basis(&id, &ctx()).unwrap();
        assert_eq!(k.rows(), 0);
    }

    #[test]
    fn kernel_of_single_row() {
        let vs = vars(&["t"]);
        let m = matrix_from_strs(&vs, &[&["1", "t"]]).unwrap();
        let k = kernel_basis(&m, &ctx()).unwrap();
        let expected = matrix_from_strs(&vs, &[&["-t", "1"]]).unwrap();
        assert!(rowspan_equal(&k, &expected, &ctx()).unwrap());
    }

    #[test]
    fn rowspan_equality_cases() {
        let vs = vars(&["t"]);
        let a = matrix_from_strs(&vs, &[&["1", "t"]]).unwrap();
        let b = matrix_from_strs(&vs, &[&["2", "2*t"]]).unwrap();
        let c = matrix_from_strs(&vs, &[&["1", "t + 1"]]).unwrap();
        assert!(rowspan_equal(&a, &b, &ctx()).unwrap());
        assert!(!rowspan_equal(&a, &c, &ctx()).unwrap());
        // invertible constant left-multiplication preserves the span
        let p = matrix_from_strs(
            &vs,
            &[&["1", "t", "t^2", "t^3"], &["0", "1", "2*t", "3*t^2"]],
        )
        .unwrap();
        let q = matrix_from_strs(
            &vs,
            &[
                &["2", "2*t + 3", "2*t^2 + 6*t", "2*t^3 + 9*t^2"],
                &["1", "t + 1", "t^2 + 2*t", "t^3 + 3*t^2"],
            ],
        )
        .unwrap(); // rows: 2p + 3p', p + p'
        assert!(rowspan_equal(&p, &q, &ctx()).unwrap());
        // column-count mismatch is an error
        let wide = matrix_from_strs(&vs, &[&["1", "t", "0"]]).unwrap();
        assert!(rowspan_equal(&a, &wide, &ctx()).is_err());
    }

    #[test]
    fn sampled_rank_agrees_with_symbolic() {
        let vs = vars(&["t", "u"]);
        let m = matrix_from_strs(
            &vs,
            &[
                &["1", "t", "u"],
                &["t", "t^2", "t*u"],
                &["0", "1", "u^2"],
            ],
        )
        .unwrap();
        let sym = generic_rank(&m, &ctx()).unwrap();
        let smp = sampled_rank(&m, &ctx(), "test").unwrap();
        assert_eq!(sym, smp);
    }

    #[test]
    fn reduce_rows_zeroes_pivot_columns() {
        let vs = vars(&["t"]);
        let s = matrix_from_strs(
            &vs,
            &[&["1", "t", "t^2", "t^3"], &["0", "1", "2*t", "3*t^2"]],
        )
        .unwrap();
        let e = rref(&s, &ctx()).unwrap();
        let d2 = matrix_from_strs(&vs, &[&["0", "0", "2", "6*t"]]).unwrap();
        let red = reduce_rows_mod(&e, &d2);
        assert!(red[(0, 0)].is_zero());
        assert!(red[(0, 1)].is_zero());
        assert!(!red[(0, 2)].is_zero());
    }

    #[test]
    fn determinant_small() {
        let vs = vars(&["t"]);
        let m = matrix_from_strs(&vs, &[&["t", "1"], &["1", "t"]]).unwrap();
        let d = poly_det(&m).unwrap();
        assert_eq!(d, crate::parse::parse_poly("t^2 - 1", &vs).unwrap());
    }

    #[test]
    fn degree_cap_aborts() {
        let vs = vars(&["t"]);
        let m = matrix_from_strs(
            &vs,
            &[
                &["t^9 + 1", "t^7 + 2", "1"],
                &["t^8 + 3", "t^9 + t", "t"],
                &["t^7", "t^6 + 5", "t^9"],
            ],
        )
        .unwrap();
        let tight = Ctx {
            max_degree: 10,
            ..Ctx::default()
        };
        match generic_rank(&m, &tight) {
            Err(Error::Resource { .. }) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn constant_rowspan_detection() {
        let vs = vars(&["t"]);
        // rows scale with t but span a fixed plane
        let m = matrix_from_strs(&vs, &[&["t", "0", "t"], &["0", "t^2", "0"]]).unwrap();
        let b = constant_rowspan(&m, &ctx(), "test").unwrap().unwrap();
        assert_eq!(b.rows(), 2);
        let moving = matrix_from_strs(&vs, &[&["1", "t", "0"]]).unwrap();
        assert!(constant_rowspan(&moving, &ctx(), "test").unwrap().is_none());
    }
}
