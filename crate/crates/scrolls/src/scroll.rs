//! Parametric scrolls and the basic calculus on them.
//!
//! A scroll is stored as its classifying matrix `S`: a `(k+1) x (N+1)`
//! polynomial matrix over the base coordinates whose row span at a base
//! point `b` is the fibre, a linear `P^k` inside `P^N`. The spreading map
//! sends `(b, x)` to the point `x · S(b)`, where `x` ranges over fibre
//! coordinates `x0..xk`.
//!
//! Stationarity — the tangent space of the spread being constant along
//! each fibre — is decided exactly. The tangent span at a fibre point `x`
//! is `span{S, x·dS/dt_i}`, which is linear in `x`, so the span at any
//! particular `x` sits inside the span of all first-order jets
//! `{S, dS/dt_i}`, with equality at generic `x` iff the tangent space does
//! not move with `x`. Hence the scroll is stationary iff
//! `rank(tangent_span) = rank(jet_stack)` over the function field.

use num_traits::Zero;

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::linalg;
use crate::linalg::Echelon;
use crate::matrix::PolyMatrix;
use crate::poly::{MultiPoly, Rat};
use crate::ratmat::RatMatrix;

/// A projective-space bundle over a polynomial base chart, mapped linearly
/// on fibres into `P^N`.
#[derive(Debug, Clone)]
pub struct ParametricScroll {
    base_vars: Vec<String>,
    fibre_dim: usize,
    ambient_dim: usize,
    classifying: PolyMatrix,
    name: Option<String>,
}

fn is_reserved_fibre_name(v: &str) -> bool {
    let mut chars = v.chars();
    chars.next() == Some('x') && !v[1..].is_empty() && v[1..].chars().all(|c| c.is_ascii_digit())
}

impl ParametricScroll {
    /// Validating constructor: requires generic rank `k+1` and a classifying
    /// map that is generically finite to its image (the rank of its Plucker
    /// Jacobian at a generic base point equals the base dimension).
    pub fn new(
        base_vars: Vec<String>,
        ambient_dim: usize,
        classifying: PolyMatrix,
        name: Option<String>,
        ctx: &Ctx,
    ) -> Result<Self> {
        let s = Self::with_rank_check(base_vars, ambient_dim, classifying, name, ctx)?;
        let g = s.base_dim();
        let jac = plucker_jacobian_rank(&s.classifying, &s.base_vars, ctx, "scroll_new")?;
        if jac != g {
            return Err(Error::Precondition {
                op: "ParametricScroll::new".into(),
                msg: format!(
                    "classifying map is not generically finite to its image \
                     (Plucker Jacobian rank {jac}, base dimension {g})"
                ),
            });
        }
        Ok(s)
    }

    /// Constructor that checks shape and rank but not generic finiteness.
    /// Flag members produced by derivation can be constant over a positive
    /// dimensional base (a cone's vertex, a filling top member), which is
    /// fine internally but would fail the finiteness validation.
    pub fn with_rank_check(
        base_vars: Vec<String>,
        ambient_dim: usize,
        classifying: PolyMatrix,
        name: Option<String>,
        ctx: &Ctx,
    ) -> Result<Self> {
        if classifying.cols() != ambient_dim + 1 {
            return Err(Error::Shape(format!(
                "classifying matrix has {} columns, ambient dimension {} needs {}",
                classifying.cols(),
                ambient_dim,
                ambient_dim + 1
            )));
        }
        if classifying.rows() == 0 || classifying.rows() > ambient_dim + 1 {
            return Err(Error::Shape(format!(
                "classifying matrix has {} rows for ambient dimension {}",
                classifying.rows(),
                ambient_dim
            )));
        }
        for v in &base_vars {
            if is_reserved_fibre_name(v) {
                return Err(Error::Precondition {
                    op: "ParametricScroll".into(),
                    msg: format!("base variable `{v}` collides with fibre coordinate names"),
                });
            }
        }
        let mut seen: Vec<&String> = Vec::new();
        for v in &base_vars {
            if seen.contains(&v) {
                return Err(Error::Precondition {
                    op: "ParametricScroll".into(),
                    msg: format!("duplicate base variable `{v}`"),
                });
            }
            seen.push(v);
        }
        for p in classifying.iter() {
            for v in p.vars() {
                if p.degree_in(std::slice::from_ref(v)) > 0 && !base_vars.contains(v) {
                    return Err(Error::UnknownVariable(v.clone()));
                }
            }
        }
        let classifying = classifying.map(|p| p.remap_superset(&base_vars));
        let rank = linalg::generic_rank(&classifying, ctx)?;
        if rank != classifying.rows() {
            return Err(Error::RankCollapse {
                op: "ParametricScroll".into(),
                achieved: rank,
                required: classifying.rows(),
            });
        }
        Ok(ParametricScroll {
            base_vars,
            fibre_dim: classifying.rows() - 1,
            ambient_dim,
            classifying,
            name,
        })
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    pub fn base_dim(&self) -> usize {
        self.base_vars.len()
    }

    pub fn fibre_dim(&self) -> usize {
        self.fibre_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn classifying(&self) -> &PolyMatrix {
        &self.classifying
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Fibre coordinate names `x0..xk`.
    pub fn fibre_vars(&self) -> Vec<String> {
        (0..=self.fibre_dim).map(|i| format!("x{i}")).collect()
    }

    /// Variables of the total space: base then fibre.
    pub fn total_vars(&self) -> Vec<String> {
        let mut vs = self.base_vars.clone();
        vs.extend(self.fibre_vars());
        vs
    }

    fn sibling(&self, matrix: PolyMatrix, name: Option<String>, ctx: &Ctx) -> Result<Self> {
        ParametricScroll::with_rank_check(
            self.base_vars.clone(),
            self.ambient_dim,
            matrix,
            name,
            ctx,
        )
    }

    /// The evaluated fibre at a base point; errors when the rank drops
    /// there, signalling the caller to resample.
    pub fn fibre_at(&self, point: &[(String, Rat)]) -> Result<RatMatrix> {
        let m = self.classifying.evaluate_rat(point)?;
        if m.rank() != self.fibre_dim + 1 {
            return Err(Error::RankDrop(format!(
                "fibre rank {} < {} at the given base point",
                m.rank(),
                self.fibre_dim + 1
            )));
        }
        Ok(m)
    }

    /// A base point where the fibre has full rank.
    pub fn generic_base_point(&self, ctx: &Ctx, site: &str) -> Result<Vec<(String, Rat)>> {
        if self.base_vars.is_empty() {
            return Ok(Vec::new());
        }
        for attempt in 0..ctx.samples {
            let point = linalg::sample_point(&self.base_vars, ctx, site, attempt as u64);
            if self.fibre_at(&point).is_ok() {
                return Ok(point);
            }
        }
        Err(Error::Degenerate {
            op: format!("generic_base_point[{site}]"),
            attempts: ctx.samples,
        })
    }

    /// Rows of `S` together with the `g` rows `x · dS/dt_i`: the affine
    /// cone over the embedded tangent space of the spread at `(t, x)`.
    pub fn tangent_span(&self) -> Result<PolyMatrix> {
        let vars = self.total_vars();
        let fibre_vars = self.fibre_vars();
        let mut rows: Vec<Vec<MultiPoly>> = self
            .classifying
            .map(|p| p.remap_superset(&vars))
            .clone()
            .take_rows();
        for tv in &self.base_vars {
            let ds = self.classifying.differentiate(tv)?;
            let mut row = vec![MultiPoly::zero(&vars); self.ambient_dim + 1];
            for (m, xv) in fibre_vars.iter().enumerate() {
                let x = MultiPoly::var(&vars, xv)?;
                for (c, slot) in row.iter_mut().enumerate() {
                    let term = &x * &ds[(m, c)].remap_superset(&vars);
                    *slot = &*slot + &term;
                }
            }
            rows.push(row);
        }
        Ok(PolyMatrix::from_rows(rows))
    }

    /// Rows of `S` and of every `dS/dt_i`: the first-order jet span.
    pub fn jet_stack(&self) -> Result<PolyMatrix> {
        let mut out = self.classifying.clone();
        for tv in &self.base_vars {
            out = out.vstack(&self.classifying.differentiate(tv)?)?;
        }
        Ok(out)
    }

    /// True iff the embedded tangent space of the spread is the same at
    /// every generic point of a fibre.
    pub fn is_stationary(&self, ctx: &Ctx) -> Result<bool> {
        let t_rank = linalg::generic_rank(&self.tangent_span()?, ctx)?;
        let j_rank = linalg::generic_rank(&self.jet_stack()?, ctx)?;
        Ok(t_rank == j_rank)
    }

    /// Row-reduced first-order jet span (the derived scroll's matrix),
    /// without the stationarity gate. Flag construction uses this.
    pub fn derived_matrix(&self, ctx: &Ctx) -> Result<PolyMatrix> {
        Ok(linalg::rref(&self.jet_stack()?, ctx)?.mat)
    }

    /// The derived (tangential) scroll: fibres are the embedded tangent
    /// spaces of the spread along rulings.
    pub fn derived(&self, ctx: &Ctx) -> Result<ParametricScroll> {
        if !self.is_stationary(ctx)? {
            return Err(Error::NonStationary {
                op: "derived".into(),
            });
        }
        let m = self.derived_matrix(ctx)?;
        if m.rows() == self.fibre_dim + 1 {
            return Err(Error::Fixpoint {
                op: "derived".into(),
            });
        }
        self.sibling(m, self.name.as_ref().map(|n| format!("{n}^(1)")), ctx)
    }

    /// Reduced fibre-motion matrices: for each base direction `t_a`, the
    /// rows of `dS/dt_a` reduced modulo the row span of `S` and projected
    /// onto the complementary (non-pivot) coordinates. The reduction uses
    /// one uniform multiplier per matrix so x-linear structure survives.
    /// Returns per-direction `(k+1) x (N-k)` matrices, the ambient columns
    /// kept, and the echelon form of `S`.
    pub fn fibre_motion(&self, ctx: &Ctx) -> Result<(Vec<PolyMatrix>, Vec<usize>, Echelon)> {
        let e = linalg::rref(&self.classifying, ctx)?;
        let keep = e.non_pivot_cols();
        let mut mats = Vec::with_capacity(self.base_dim());
        for tv in &self.base_vars {
            let ds = self.classifying.differentiate(tv)?;
            let red = linalg::reduce_rows_mod(&e, &ds);
            mats.push(linalg::project_non_pivot(&e, &red));
        }
        Ok((mats, keep, e))
    }

    /// Kernel of the fibre-motion system: rows are the fibre coefficient
    /// vectors `x` (denominators cleared) with `x · dS/dt_a` in the row
    /// span of `S` for every direction `a`.
    pub fn antiderived_kernel(&self, ctx: &Ctx) -> Result<PolyMatrix> {
        let (mats, _, _) = self.fibre_motion(ctx)?;
        let mut system = PolyMatrix::zero(&self.base_vars, self.fibre_dim + 1, 0);
        for d in &mats {
            system = system.hstack(d)?;
        }
        linalg::kernel_basis(&system.transpose(), ctx)
    }

    /// Antiderived matrix without the stationarity gate; `None` when the
    /// kernel is zero.
    pub fn antiderived_matrix(&self, ctx: &Ctx) -> Result<Option<PolyMatrix>> {
        let k = self.antiderived_kernel(ctx)?;
        if k.rows() == 0 {
            return Ok(None);
        }
        let m = k.matmul(&self.classifying)?;
        Ok(Some(linalg::rref(&m, ctx)?.mat))
    }

    /// The antiderived (co-osculating, leading edge) scroll: the subscroll
    /// of fibre points whose first-order motion stays inside the fibre.
    pub fn antiderived(&self, ctx: &Ctx) -> Result<Option<ParametricScroll>> {
        if !self.is_stationary(ctx)? {
            return Err(Error::NonStationary {
                op: "antiderived".into(),
            });
        }
        match self.antiderived_matrix(ctx)? {
            None => Ok(None),
            Some(m) => Ok(Some(self.sibling(
                m,
                self.name.as_ref().map(|n| format!("{n}^(-1)")),
                ctx,
            )?)),
        }
    }

    /// Fibrewise annihilator with respect to the standard pairing
    /// `sum_i y_i x_i`: a scroll in the dual projective space.
    pub fn dual(&self, ctx: &Ctx) -> Result<ParametricScroll> {
        if self.fibre_dim == self.ambient_dim {
            return Err(Error::Precondition {
                op: "dual".into(),
                msg: "fibre fills the ambient space; the dual scroll is empty".into(),
            });
        }
        let k = linalg::kernel_basis(&self.classifying, ctx)?;
        debug_assert_eq!(k.rows(), self.ambient_dim - self.fibre_dim);
        let e = linalg::rref(&k, ctx)?;
        self.sibling(e.mat, self.name.as_ref().map(|n| format!("{n}^perp")), ctx)
    }

    /// Dimension of the spread `f(X)` in `P^N`.
    pub fn spread_dim(&self, ctx: &Ctx) -> Result<usize> {
        Ok(linalg::generic_rank(&self.tangent_span()?, ctx)? - 1)
    }

    pub fn is_filling(&self, ctx: &Ctx) -> Result<bool> {
        Ok(self.spread_dim(ctx)? == self.ambient_dim)
    }

    pub fn is_overfilling(&self, ctx: &Ctx) -> Result<bool> {
        Ok(self.is_filling(ctx)? && self.base_dim() + self.fibre_dim > self.ambient_dim)
    }

    /// Constant basis of the affine cone over the linear span of the
    /// spread: iterate first-order jets until the row span stabilizes; the
    /// stable span is derivative-closed, hence constant.
    pub fn linear_span(&self, ctx: &Ctx) -> Result<RatMatrix> {
        let mut m = self.classifying.clone();
        let mut rank = linalg::generic_rank(&m, ctx)?;
        loop {
            let mut stacked = m.clone();
            for tv in &self.base_vars {
                stacked = stacked.vstack(&m.differentiate(tv)?)?;
            }
            let e = linalg::rref(&stacked, ctx)?;
            let new_rank = e.rank();
            m = e.mat;
            if new_rank == rank {
                break;
            }
            rank = new_rank;
        }
        match linalg::constant_rowspan(&m, ctx, "linear_span")? {
            Some(b) => Ok(b),
            None => Err(Error::internal(
                "linear_span",
                "derivative-closed span failed the constant-span test",
            )),
        }
    }

    /// True when the spread does not span all of `P^N`.
    pub fn is_degenerate(&self, ctx: &Ctx) -> Result<bool> {
        Ok(self.linear_span(ctx)?.rows() < self.ambient_dim + 1)
    }

    /// Dimension of the image of the Gauss map of the spread: the exact
    /// rank of the Jacobian of the Plucker chart of the tangent span at a
    /// generic sample point (maximum over `ctx.samples` seeded attempts).
    pub fn gauss_dimension(&self, ctx: &Ctx) -> Result<usize> {
        let span = self.tangent_span()?;
        let n1 = linalg::generic_rank(&span, ctx)?;
        // greedy basis of the tangent span over the function field
        let mut count = 0usize;
        let mut current = PolyMatrix::zero(&span.var_union(), 0, span.cols());
        for i in 0..span.rows() {
            if count == n1 {
                break;
            }
            let cand = current.vstack(&span.row_matrix(i))?;
            if linalg::generic_rank(&cand, ctx)? > count {
                count += 1;
                current = cand;
            }
        }
        plucker_jacobian_rank(&current, &self.total_vars(), ctx, "gauss_dimension")
    }

    /// Gauss deficiency of the spread.
    pub fn gauss_deficiency(&self, ctx: &Ctx) -> Result<usize> {
        Ok(self.spread_dim(ctx)? - self.gauss_dimension(ctx)?)
    }

    /// Intersect every fibre with a constant hyperplane (covector of
    /// length `N+1`). Requires `k >= 1` and that the hyperplane does not
    /// contain the generic fibre.
    pub fn hyperplane_section(&self, h: &[Rat], ctx: &Ctx) -> Result<ParametricScroll> {
        if self.fibre_dim == 0 {
            return Err(Error::precondition(
                "hyperplane_section",
                "fibre dimension must be at least 1",
            ));
        }
        if h.len() != self.ambient_dim + 1 {
            return Err(Error::Shape(format!(
                "hyperplane covector has length {}, expected {}",
                h.len(),
                self.ambient_dim + 1
            )));
        }
        let hmat = PolyMatrix::from_rows(vec![h
            .iter()
            .map(|c| MultiPoly::constant(&self.base_vars, c.clone()))
            .collect()]);
        let sh = self.classifying.matmul(&hmat.transpose())?;
        if sh.is_zero() {
            return Err(Error::precondition(
                "hyperplane_section",
                "the hyperplane contains every fibre",
            ));
        }
        let kernel = linalg::kernel_basis(&sh.transpose(), ctx)?;
        debug_assert_eq!(kernel.rows(), self.fibre_dim);
        let m = kernel.matmul(&self.classifying)?;
        let e = linalg::rref(&m, ctx)?;
        self.sibling(e.mat, self.name.as_ref().map(|n| format!("{n}_cap_H")), ctx)
    }

    /// Substitute polynomials for the base variables, producing a scroll
    /// over a new base chart. Shape and rank checks only; the validated
    /// operation lives in `construct::base_change`.
    pub fn substituted(
        &self,
        new_vars: Vec<String>,
        images: &[(String, MultiPoly)],
        ctx: &Ctx,
    ) -> Result<ParametricScroll> {
        let m = self.classifying.substitute(images)?;
        let m = m.map(|p| p.remap_superset(&new_vars));
        ParametricScroll::with_rank_check(new_vars, self.ambient_dim, m, self.name.clone(), ctx)
    }
}

/// Rank of the Jacobian of the Plucker chart of `m` (all maximal minors,
/// dehomogenized by one that is nonzero at the sample), evaluated exactly
/// at seeded random points of the listed variables. Maximum over attempts;
/// errors if every attempt hits a degenerate sample.
pub fn plucker_jacobian_rank(
    m: &PolyMatrix,
    vars: &[String],
    ctx: &Ctx,
    site: &str,
) -> Result<usize> {
    if vars.is_empty() {
        return Ok(0);
    }
    let r = m.rows();
    let cols = m.cols();
    let col_subsets = subsets(cols, r);
    let mut best: Option<usize> = None;
    for attempt in 0..ctx.samples {
        let point = linalg::sample_point(vars, ctx, site, attempt as u64);
        let m0 = match m.evaluate_rat(&point) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if m0.rank() != r {
            continue;
        }
        let derivs: Vec<RatMatrix> = vars
            .iter()
            .map(|v| m.differentiate(v)?.evaluate_rat(&point))
            .collect::<Result<_>>()?;
        let minor_deriv = |cs: &[usize], dv: &RatMatrix| -> Rat {
            // d(det) = sum over rows of det with that row differentiated
            let mut acc = Rat::zero();
            for row in 0..r {
                let mut sub = submatrix(&m0, cs);
                for (j, &c) in cs.iter().enumerate() {
                    sub[(row, j)] = dv[(row, c)].clone();
                }
                acc += sub.det();
            }
            acc
        };
        let values: Vec<Rat> = col_subsets.iter().map(|cs| submatrix(&m0, cs).det()).collect();
        let Some(i0) = values.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let m_i0 = values[i0].clone();
        let d_i0: Vec<Rat> = derivs
            .iter()
            .map(|dv| minor_deriv(&col_subsets[i0], dv))
            .collect();
        let mut jac_rows = Vec::new();
        for (i, cs) in col_subsets.iter().enumerate() {
            if i == i0 {
                continue;
            }
            let row: Vec<Rat> = derivs
                .iter()
                .enumerate()
                .map(|(vi, dv)| &(&minor_deriv(cs, dv) * &m_i0) - &(&values[i] * &d_i0[vi]))
                .collect();
            jac_rows.push(row);
        }
        let rank = if jac_rows.is_empty() {
            0
        } else {
            RatMatrix::from_rows(jac_rows).rank()
        };
        best = Some(best.map_or(rank, |b: usize| b.max(rank)));
    }
    best.ok_or(Error::Degenerate {
        op: format!("plucker_jacobian_rank[{site}]"),
        attempts: ctx.samples,
    })
}

fn submatrix(m: &RatMatrix, cols: &[usize]) -> RatMatrix {
    let rows = (0..m.rows())
        .map(|i| cols.iter().map(|&c| m[(i, c)].clone()).collect())
        .collect();
    RatMatrix::from_rows(rows)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
pub(crate) mod test_fixtures {
    use super::*;
    use crate::matrix::matrix_from_strs;
    use crate::poly::vars;

    pub fn twisted_cubic_tangent(ctx: &Ctx) -> ParametricScroll {
        let vs = vars(&["t"]);
        let m = matrix_from_strs(
            &vs,
            &[&["1", "t", "t^2", "t^3"], &["0", "1", "2*t", "3*t^2"]],
        )
        .unwrap();
        ParametricScroll::new(vs, 3, m, Some("twisted_cubic_tangent".into()), ctx).unwrap()
    }

    pub fn twisted_cubic_curve(ctx: &Ctx) -> ParametricScroll {
        let vs = vars(&["t"]);
        let m = matrix_from_strs(&vs, &[&["1", "t", "t^2", "t^3"]]).unwrap();
        ParametricScroll::new(vs, 3, m, Some("twisted_cubic".into()), ctx).unwrap()
    }

    pub fn quadric_ruling(ctx: &Ctx) -> ParametricScroll {
        let vs = vars(&["t"]);
        let m = matrix_from_strs(&vs, &[&["1", "0", "t", "0"], &["0", "1", "0", "t"]]).unwrap();
        ParametricScroll::new(vs, 3, m, Some("quadric_ruling".into()), ctx).unwrap()
    }

    pub fn cone_over_twisted_cubic(ctx: &Ctx) -> ParametricScroll {
        let vs = vars(&["t"]);
        let m = matrix_from_strs(
            &vs,
            &[&["0", "0", "0", "0", "1"], &["1", "t", "t^2", "t^3", "0"]],
        )
        .unwrap();
        ParametricScroll::new(vs, 4, m, Some("cone".into()), ctx).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_fixtures::*;
    use super::*;
    use crate::matrix::matrix_from_strs;
    use crate::poly::{rat_int, vars};

    fn ctx() -> Ctx {
        Ctx::default()
    }

    #[test]
    fn fibre_at_samples() {
        let c = ctx();
        let x = twisted_cubic_tangent(&c);
        let f = x.fibre_at(&[("t".into(), rat_int(1))]).unwrap();
        let expected = RatMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(1), rat_int(1), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(2), rat_int(3)],
        ]);
        assert_eq!(f.vstack(&expected).rank(), 2);
        let f0 = x.fibre_at(&[("t".into(), rat_int(0))]).unwrap();
        assert_eq!(f0.rank(), 2);
    }

    #[test]
    fn fibre_rank_drop_is_reported() {
        let c = ctx();
        let vs = vars(&["t"]);
        // first row vanishes at t = 0
        let m = matrix_from_strs(&vs, &[&["t", "0", "t", "0"], &["0", "t", "0", "1"]]).unwrap();
        let x = ParametricScroll::new(vs, 3, m, None, &c).unwrap();
        assert!(matches!(
            x.fibre_at(&[("t".into(), rat_int(0))]),
            Err(Error::RankDrop(_))
        ));
    }

    #[test]
    fn stationarity_of_basic_examples() {
        let c = ctx();
        assert!(twisted_cubic_tangent(&c).is_stationary(&c).unwrap());
        assert!(!quadric_ruling(&c).is_stationary(&c).unwrap());
        // k = 0 scrolls are always stationary
        assert!(twisted_cubic_curve(&c).is_stationary(&c).unwrap());
        // cones are stationary even though the vertex is a special fibre point
        assert!(cone_over_twisted_cubic(&c).is_stationary(&c).unwrap());
    }

    #[test]
    fn tangent_span_of_tangent_scroll() {
        let c = ctx();
        let x = twisted_cubic_tangent(&c);
        let span = x.tangent_span().unwrap();
        assert_eq!(span.rows(), 3);
        // generically (x1 != 0) the span equals {p, p', p''}
        let vs = vars(&["t"]);
        let osc = matrix_from_strs(
            &vs,
            &[
                &["1", "t", "t^2", "t^3"],
                &["0", "1", "2*t", "3*t^2"],
                &["0", "0", "2", "6*t"],
            ],
        )
        .unwrap();
        let lifted = osc.map(|p| p.remap_superset(&span.var_union()));
        assert!(linalg::rowspan_equal(&span, &lifted, &c).unwrap());
    }

    #[test]
    fn derived_of_tangent_scroll_is_osculating() {
        let c = ctx();
        let x = twisted_cubic_tangent(&c);
        let d = x.derived(&c).unwrap();
        assert_eq!(d.fibre_dim(), 2);
        let vs = vars(&["t"]);
        let osc = matrix_from_strs(
            &vs,
            &[
                &["1", "t", "t^2", "t^3"],
                &["0", "1", "2*t", "3*t^2"],
                &["0", "0", "1", "3*t"],
            ],
        )
        .unwrap();
        assert!(linalg::rowspan_equal(d.classifying(), &osc, &c).unwrap());
    }

    #[test]
    fn derived_of_curve_is_tangent_scroll() {
        let c = ctx();
        let d = twisted_cubic_curve(&c).derived(&c).unwrap();
        assert!(linalg::rowspan_equal(
            d.classifying(),
            twisted_cubic_tangent(&c).classifying(),
            &c
        )
        .unwrap());
    }

    #[test]
    fn derived_rejects_non_stationary() {
        let c = ctx();
        assert!(matches!(
            quadric_ruling(&c).derived(&c),
            Err(Error::NonStationary { .. })
        ));
    }

    #[test]
    fn derived_fixpoint_is_an_error() {
        let c = ctx();
        // constant 3-space inside P^4: derivation adds nothing
        let vs = vars(&["t"]);
        let m = matrix_from_strs(
            &vs,
            &[
                &["1", "0", "0", "0", "0"],
                &["0", "1", "0", "0", "0"],
                &["0", "0", "1", "0", "0"],
                &["0", "0", "0", "1", "0"],
            ],
        )
        .unwrap();
        let x = ParametricScroll::with_rank_check(vs, 4, m, None, &c).unwrap();
        assert!(matches!(x.derived(&c), Err(Error::Fixpoint { .. })));
    }

    #[test]
    fn antiderived_of_tangent_scroll_is_the_curve() {
        let c = ctx();
        let x = twisted_cubic_tangent(&c);
        let a = x.antiderived(&c).unwrap().expect("nonempty");
        assert_eq!(a.fibre_dim(), 0);
        assert!(linalg::rowspan_equal(
            a.classifying(),
            twisted_cubic_curve(&c).classifying(),
            &c
        )
        .unwrap());
    }

    #[test]
    fn antiderived_of_curve_is_empty() {
        let c = ctx();
        assert!(twisted_cubic_curve(&c).antiderived(&c).unwrap().is_none());
    }

    #[test]
    fn antiderived_of_cone_is_the_vertex() {
        let c = ctx();
        let x = cone_over_twisted_cubic(&c);
        let a = x.antiderived(&c).unwrap().expect("nonempty");
        assert_eq!(a.fibre_dim(), 0);
        assert!(a.classifying().is_constant());
        let vs = vars(&["t"]);
        let v = matrix_from_strs(&vs, &[&["0", "0", "0", "0", "1"]]).unwrap();
        assert!(linalg::rowspan_equal(a.classifying(), &v, &c).unwrap());
    }

    #[test]
    fn dual_of_tangent_scroll() {
        let c = ctx();
        let x = twisted_cubic_tangent(&c);
        let d = x.dual(&c).unwrap();
        assert_eq!(d.fibre_dim(), 1);
        let vs = vars(&["t"]);
        let expected = matrix_from_strs(
            &vs,
            &[&["t^2", "-2*t", "1", "0"], &["2*t^3", "-3*t^2", "0", "1"]],
        )
        .unwrap();
        assert!(linalg::rowspan_equal(d.classifying(), &expected, &c).unwrap());
        // S y^T = 0 for each dual row
        assert!(x
            .classifying()
            .matmul(&d.classifying().transpose())
            .unwrap()
            .is_zero());
        // involution
        let dd = d.dual(&c).unwrap();
        assert!(linalg::rowspan_equal(dd.classifying(), x.classifying(), &c).unwrap());
    }

    #[test]
    fn dual_of_constant_space() {
        let c = ctx();
        let vs = vars(&["t"]);
        let m = matrix_from_strs(&vs, &[&["1", "0", "0", "0"], &["0", "1", "0", "0"]]).unwrap();
        let x = ParametricScroll::with_rank_check(vs.clone(), 3, m, None, &c).unwrap();
        let d = x.dual(&c).unwrap();
        assert!(d.classifying().is_constant());
        let expected =
            matrix_from_strs(&vs, &[&["0", "0", "1", "0"], &["0", "0", "0", "1"]]).unwrap();
        assert!(linalg::rowspan_equal(d.classifying(), &expected, &c).unwrap());
        // full-space fibre has no dual
        let full = ParametricScroll::with_rank_check(
            vars(&["t"]),
            1,
            matrix_from_strs(&vars(&["t"]), &[&["1", "0"], &["0", "1"]]).unwrap(),
            None,
            &c,
        )
        .unwrap();
        assert!(full.dual(&c).is_err());
    }

    #[test]
    fn spread_and_filling() {
        let c = ctx();
        assert_eq!(twisted_cubic_tangent(&c).spread_dim(&c).unwrap(), 2);
        assert!(!twisted_cubic_tangent(&c).is_filling(&c).unwrap());
        assert_eq!(quadric_ruling(&c).spread_dim(&c).unwrap(), 2);
        // osculating-plane scroll of the twisted cubic fills P^3
        let x = twisted_cubic_tangent(&c).derived(&c).unwrap();
        assert_eq!(x.spread_dim(&c).unwrap(), 3);
        assert!(x.is_filling(&c).unwrap());
        assert!(!x.is_overfilling(&c).unwrap());
    }

    #[test]
    fn linear_span_cases() {
        let c = ctx();
        let cubic = twisted_cubic_curve(&c);
        assert_eq!(cubic.linear_span(&c).unwrap().rows(), 4);
        assert!(!cubic.is_degenerate(&c).unwrap());
        let vs = vars(&["t"]);
        let plane_curve = ParametricScroll::new(
            vs.clone(),
            3,
            matrix_from_strs(&vs, &[&["1", "t", "t^2", "0"]]).unwrap(),
            None,
            &c,
        )
        .unwrap();
        let span = plane_curve.linear_span(&c).unwrap();
        assert_eq!(span.rows(), 3);
        assert!(plane_curve.is_degenerate(&c).unwrap());
        // last coordinate identically zero on the span
        for i in 0..span.rows() {
            assert!(span[(i, 3)].is_zero());
        }
    }

    #[test]
    fn gauss_dimension_spot_checks() {
        let c = ctx();
        // tangent developable: 1-dimensional Gauss image
        assert_eq!(twisted_cubic_tangent(&c).gauss_dimension(&c).unwrap(), 1);
        assert_eq!(twisted_cubic_tangent(&c).gauss_deficiency(&c).unwrap(), 1);
        // smooth quadric: finite Gauss map
        assert_eq!(quadric_ruling(&c).gauss_dimension(&c).unwrap(), 2);
        // constant linear space: constant Gauss map
        let vs: Vec<String> = Vec::new();
        let m = matrix_from_strs(&vs, &[&["1", "0", "0"], &["0", "1", "0"]]).unwrap();
        let flat = ParametricScroll::new(vs, 2, m, None, &c).unwrap();
        assert_eq!(flat.gauss_dimension(&c).unwrap(), 0);
    }

    #[test]
    fn hyperplane_section_of_tangent_scroll() {
        let c = ctx();
        let x = twisted_cubic_tangent(&c);
        let h = vec![rat_int(1), rat_int(2), rat_int(-1), rat_int(3)];
        let s = x.hyperplane_section(&h, &c).unwrap();
        assert_eq!(s.fibre_dim(), 0);
        // the section stays inside the hyperplane
        let hm = PolyMatrix::from_rows(vec![h
            .iter()
            .map(|v| MultiPoly::constant(&vars(&["t"]), v.clone()))
            .collect()]);
        assert!(s.classifying().matmul(&hm.transpose()).unwrap().is_zero());
        // a curve section of a developable has finite Gauss map
        assert_eq!(s.gauss_dimension(&c).unwrap(), 1);
        assert_eq!(s.spread_dim(&c).unwrap(), 1);
    }

    #[test]
    fn hyperplane_containing_all_fibres_is_rejected() {
        let c = ctx();
        let vs = vars(&["t"]);
        let m = matrix_from_strs(&vs, &[&["1", "t", "0"], &["0", "1", "0"]]).unwrap();
        let x = ParametricScroll::with_rank_check(vs, 2, m, None, &c).unwrap();
        let h = vec![rat_int(0), rat_int(0), rat_int(1)];
        assert!(matches!(
            x.hyperplane_section(&h, &c),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn generic_finiteness_is_validated() {
        let c = ctx();
        let vs = vars(&["t"]);
        // constant fibre over a 1-dim base: not generically finite
        let m = matrix_from_strs(&vs, &[&["1", "0", "0"], &["0", "1", "0"]]).unwrap();
        assert!(matches!(
            ParametricScroll::new(vs, 2, m, None, &c),
            Err(Error::Precondition { .. })
        ));
    }
}
