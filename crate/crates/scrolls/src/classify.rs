//! Structure classification of stationary scrolls: cones, inflated
//! tangent scrolls in the small-Gauss-dimension range, and the complete
//! decomposition over one-dimensional bases into a curve's derivative
//! jets plus a constant span.

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::flag;
use crate::linalg;
use crate::matrix::PolyMatrix;
use crate::ratmat::RatMatrix;
use crate::scroll::ParametricScroll;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Cone,
    InflatedTangentScroll,
    CurveOsculating,
    DualOfDevelopable,
    Unclassified,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Cone => "Cone",
            Verdict::InflatedTangentScroll => "InflatedTangentScroll",
            Verdict::CurveOsculating => "CurveOsculating",
            Verdict::DualOfDevelopable => "DualOfDevelopable",
            Verdict::Unclassified => "Unclassified",
        };
        f.write_str(s)
    }
}

/// Numeric profile of a scroll, as carried by reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrollParams {
    pub base_dim: usize,
    pub fibre_dim: usize,
    pub ambient_dim: usize,
    pub spread_dim: usize,
    pub gauss_dim: usize,
    pub stationary: bool,
    pub index_m: Option<usize>,
    pub coindex_l: Option<usize>,
    pub filling: bool,
    pub overfilling: bool,
    pub degenerate: bool,
}

impl ScrollParams {
    pub fn compute(x: &ParametricScroll, ctx: &Ctx) -> Result<Self> {
        let stationary = x.is_stationary(ctx)?;
        let (index_m, coindex_l) = match flag::maximal_flag(x, ctx) {
            Ok(f) => (Some(f.index_m), Some(f.coindex_l)),
            Err(_) => (None, None),
        };
        Ok(ScrollParams {
            base_dim: x.base_dim(),
            fibre_dim: x.fibre_dim(),
            ambient_dim: x.ambient_dim(),
            spread_dim: x.spread_dim(ctx)?,
            gauss_dim: x.gauss_dimension(ctx)?,
            stationary,
            index_m,
            coindex_l,
            filling: x.is_filling(ctx)?,
            overfilling: x.is_overfilling(ctx)?,
            degenerate: x.is_degenerate(ctx)?,
        })
    }

    pub fn gauss_deficiency(&self) -> usize {
        self.spread_dim - self.gauss_dim
    }
}

/// Result of a structure classification.
///
/// The witness is a row span inside the scroll's fibres for the `Cone`,
/// `InflatedTangentScroll` and `CurveOsculating` verdicts (vertex span,
/// witness section, curve row). For `DualOfDevelopable` the witness is
/// the antiderived scroll of the linear dual and lives in the dual space.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub witness: Option<PolyMatrix>,
    /// Derivative order of the witness curve (`CurveOsculating` only).
    pub curve_order: Option<usize>,
    /// Constant spans accompanying the curve (`CurveOsculating` only).
    pub constants: Option<PolyMatrix>,
    pub params: ScrollParams,
}

/// Constant basis as a polynomial matrix over the given variables.
pub fn constant_to_matrix(vars: &[String], b: &RatMatrix) -> PolyMatrix {
    PolyMatrix::from_rat(vars, b)
}

/// Classification in the small Gauss dimension range `g'(g'+1) <= n`:
/// the scroll is a cone or an inflated tangent scroll, and the antiderived
/// scroll is necessarily nonempty.
pub fn classify_small(x: &ParametricScroll, ctx: &Ctx) -> Result<ClassificationReport> {
    let params = ScrollParams::compute(x, ctx)?;
    if !params.stationary {
        return Err(Error::NonStationary {
            op: "classify_small".into(),
        });
    }
    let gp = params.gauss_dim;
    let n = params.spread_dim;
    if gp * (gp + 1) > n {
        return Err(Error::precondition(
            "classify_small",
            format!("hypothesis g'（g'+1) <= n fails: g' = {gp}, n = {n}"),
        ));
    }
    if let Some(vertex) = flag::cone_vertex(x, ctx)? {
        return Ok(ClassificationReport {
            verdict: Verdict::Cone,
            witness: Some(constant_to_matrix(x.base_vars(), &vertex)),
            curve_order: None,
            constants: None,
            params,
        });
    }
    let anti = x.antiderived_matrix(ctx)?.ok_or_else(|| {
        Error::internal(
            "classify_small",
            "antiderived scroll is empty under the small-dimension hypothesis",
        )
    })?;
    // witness section: a moving row of the antiderived matrix whose
    // first-order jets stay inside the fibre
    let witness = pick_moving_row(&anti, ctx)?.ok_or_else(|| {
        Error::internal("classify_small", "no moving row in a non-cone antiderived scroll")
    })?;
    let mut jets = witness.clone();
    for tv in x.base_vars() {
        jets = jets.vstack(&witness.differentiate(tv)?)?;
    }
    if !linalg::rowspan_contains(x.classifying(), &jets, ctx)? {
        return Err(Error::internal(
            "classify_small",
            "witness section jets leave the fibre",
        ));
    }
    Ok(ClassificationReport {
        verdict: Verdict::InflatedTangentScroll,
        witness: Some(witness),
        curve_order: None,
        constants: None,
        params,
    })
}

fn pick_moving_row(m: &PolyMatrix, ctx: &Ctx) -> Result<Option<PolyMatrix>> {
    for i in 0..m.rows() {
        let row = m.row_matrix(i);
        if linalg::constant_rowspan(&row, ctx, "moving_row")?.is_none() {
            return Ok(Some(row));
        }
    }
    Ok(None)
}

/// The maximal constant subspace contained in the row span of the
/// classifying matrix over the function field, found by expanding the
/// annihilator conditions in base monomials over the rationals.
pub fn constant_subfibre(x: &ParametricScroll, ctx: &Ctx) -> Result<RatMatrix> {
    let n1 = x.ambient_dim() + 1;
    let dual = linalg::kernel_basis(x.classifying(), ctx)?;
    if dual.rows() == 0 {
        return Ok(RatMatrix::identity(n1));
    }
    // y constant with dual · y^T = 0: one linear condition per
    // (dual row, base monomial) pair
    let mut rows: Vec<Vec<crate::poly::Rat>> = Vec::new();
    for r in 0..dual.rows() {
        let mut monomials: Vec<crate::poly::Monomial> = Vec::new();
        for p in dual.row(r) {
            for (m, _) in p.terms() {
                if !monomials.contains(m) {
                    monomials.push(m.clone());
                }
            }
        }
        for mono in &monomials {
            let mut cond = Vec::with_capacity(n1);
            for c in 0..n1 {
                let coeff = dual[(r, c)]
                    .terms()
                    .find(|(m, _)| *m == mono)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(|| crate::poly::rat_int(0).clone());
                cond.push(coeff);
            }
            rows.push(cond);
        }
    }
    let system = RatMatrix::from_rows(rows);
    Ok(system.kernel())
}

/// Full decomposition over a one-dimensional base: a stationary scroll
/// with one-dimensional Gauss image is an osculating scroll of a curve,
/// possibly coned over constant spans. Returns the curve, its derivative
/// order `k'`, and the constant spans, with the reassembly identity
/// `rowspan(S) = rowspan{p, p', ..., p^(k'), constants}` verified exactly.
pub fn decompose_g1(x: &ParametricScroll, ctx: &Ctx) -> Result<ClassificationReport> {
    let params = ScrollParams::compute(x, ctx)?;
    if !params.stationary {
        return Err(Error::NonStationary {
            op: "decompose_g1".into(),
        });
    }
    if x.base_dim() != 1 {
        return Err(Error::precondition(
            "decompose_g1",
            format!("base must be one-dimensional, got {}", x.base_dim()),
        ));
    }
    if params.gauss_dim != 1 {
        return Err(Error::precondition(
            "decompose_g1",
            format!("Gauss dimension must be 1, got {}", params.gauss_dim),
        ));
    }
    let constants = constant_subfibre(x, ctx)?;
    let cdim = constants.rows();
    let cmat = constant_to_matrix(x.base_vars(), &constants);
    let k = x.fibre_dim();

    // all-constant fibre: a pure cone over nothing
    if cdim == k + 1 {
        return Ok(ClassificationReport {
            verdict: Verdict::Cone,
            witness: Some(cmat.clone()),
            curve_order: None,
            constants: Some(cmat),
            params,
        });
    }

    // walk the antiderived chain down to the member of rank cdim + 1
    let mut cur = x.clone();
    loop {
        let rank = cur.fibre_dim() + 1;
        if rank == cdim + 1 {
            break;
        }
        let m = cur.antiderived_matrix(ctx)?.ok_or_else(|| {
            Error::internal(
                "decompose_g1",
                "antiderived chain emptied before reaching the curve member",
            )
        })?;
        if m.rows() >= rank {
            return Err(Error::internal(
                "decompose_g1",
                "antiderived chain stalled above the constant subspace",
            ));
        }
        cur = ParametricScroll::with_rank_check(
            x.base_vars().to_vec(),
            x.ambient_dim(),
            m,
            None,
            ctx,
        )?;
    }

    let k_prime = k - cdim;
    let tvar = &x.base_vars()[0];
    // extract a moving row of the bottom moving member and verify the
    // reassembly identity
    let mut last_err = None;
    for i in 0..cur.classifying().rows() {
        let p = cur.classifying().row_matrix(i);
        if linalg::constant_rowspan(&p, ctx, "decompose_row")?.is_some() {
            continue;
        }
        let mut stack = cmat.clone();
        let mut jet = p.clone();
        stack = stack.vstack(&jet)?;
        for _ in 0..k_prime {
            jet = jet.differentiate(tvar)?;
            stack = stack.vstack(&jet)?;
        }
        if linalg::rowspan_equal(&stack, x.classifying(), ctx)? {
            return Ok(ClassificationReport {
                verdict: Verdict::CurveOsculating,
                witness: Some(p),
                curve_order: Some(k_prime),
                constants: Some(cmat),
                params,
            });
        }
        last_err = Some(Error::internal(
            "decompose_g1",
            "jet reassembly of the candidate curve does not recover the scroll",
        ));
    }
    Err(last_err.unwrap_or_else(|| {
        Error::internal("decompose_g1", "no moving row found below the constants")
    }))
}

/// Umbrella classification used by the command-line `classify`:
/// cones first, the small-Gauss-dimension theorem when its hypothesis
/// holds, the one-dimensional decomposition when the base is a curve,
/// and otherwise the duality verdict for non-filling nondegenerate
/// scrolls.
pub fn classify(x: &ParametricScroll, ctx: &Ctx) -> Result<ClassificationReport> {
    let params = ScrollParams::compute(x, ctx)?;
    if !params.stationary {
        return Ok(ClassificationReport {
            verdict: Verdict::Unclassified,
            witness: None,
            curve_order: None,
            constants: None,
            params,
        });
    }
    if let Some(vertex) = flag::cone_vertex(x, ctx)? {
        return Ok(ClassificationReport {
            verdict: Verdict::Cone,
            witness: Some(constant_to_matrix(x.base_vars(), &vertex)),
            curve_order: None,
            constants: None,
            params,
        });
    }
    let gp = params.gauss_dim;
    if gp * (gp + 1) <= params.spread_dim {
        return classify_small(x, ctx);
    }
    if x.base_dim() == 1 && gp == 1 {
        return decompose_g1(x, ctx);
    }
    if !params.degenerate && !params.filling && x.fibre_dim() < x.ambient_dim() {
        let dual = x.dual(ctx)?;
        if let Some(edge) = dual.antiderived_matrix(ctx)? {
            return Ok(ClassificationReport {
                verdict: Verdict::DualOfDevelopable,
                witness: Some(edge),
                curve_order: None,
                constants: None,
                params,
            });
        }
    }
    Ok(ClassificationReport {
        verdict: Verdict::Unclassified,
        witness: None,
        curve_order: None,
        constants: None,
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::matrix_from_strs;
    use crate::poly::vars;
    use crate::scroll::test_fixtures::*;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    #[test]
    fn classify_small_on_cone() {
        let c = ctx();
        let x = cone_over_twisted_cubic(&c);
        let r = classify_small(&x, &c).unwrap();
        assert_eq!(r.verdict, Verdict::Cone);
        let w = r.witness.unwrap();
        assert_eq!(w.rows(), 1);
        // vertex e4 recovered
        let vs = vars(&["t"]);
        let e4 = matrix_from_strs(&vs, &[&["0", "0", "0", "0", "1"]]).unwrap();
        assert!(linalg::rowspan_equal(&w, &e4, &c).unwrap());
    }

    #[test]
    fn classify_small_on_tangent_scroll() {
        let c = ctx();
        // g' = 1, n = 2, hypothesis 1*2 <= 2 holds; the degenerate case of
        // an inflated tangent scroll is the plain tangent scroll
        let x = twisted_cubic_tangent(&c);
        let r = classify_small(&x, &c).unwrap();
        assert_eq!(r.verdict, Verdict::InflatedTangentScroll);
        let w = r.witness.unwrap();
        assert!(linalg::rowspan_contains(x.classifying(), &w, &c).unwrap());
    }

    #[test]
    fn classify_small_hypothesis_violation() {
        let c = ctx();
        // quadric ruling: not stationary, and would fail the hypothesis
        let x = quadric_ruling(&c);
        assert!(classify_small(&x, &c).is_err());
    }

    #[test]
    fn decompose_tangent_scroll() {
        let c = ctx();
        let x = twisted_cubic_tangent(&c);
        let r = decompose_g1(&x, &c).unwrap();
        assert_eq!(r.verdict, Verdict::CurveOsculating);
        assert_eq!(r.curve_order, Some(1));
        assert_eq!(r.constants.unwrap().rows(), 0);
        let p = r.witness.unwrap();
        assert!(linalg::rowspan_equal(
            &p,
            twisted_cubic_curve(&c).classifying(),
            &c
        )
        .unwrap());
    }

    #[test]
    fn decompose_cone_over_tangent_lines() {
        let c = ctx();
        // {c, p, p'} over t for a quintic in P^5: order 1 plus one constant
        let vs = vars(&["t"]);
        let m = matrix_from_strs(
            &vs,
            &[
                &["0", "0", "0", "0", "0", "1"],
                &["1", "t", "t^2", "t^3", "t^4", "0"],
                &["0", "1", "2*t", "3*t^2", "4*t^3", "0"],
            ],
        )
        .unwrap();
        let x = ParametricScroll::new(vs, 5, m, None, &c).unwrap();
        let r = decompose_g1(&x, &c).unwrap();
        assert_eq!(r.verdict, Verdict::CurveOsculating);
        assert_eq!(r.curve_order, Some(1));
        assert_eq!(r.constants.as_ref().unwrap().rows(), 1);
    }

    #[test]
    fn decompose_osculating_scroll() {
        let c = ctx();
        // order-2 osculating scroll of the rational normal quintic
        let vs = vars(&["t"]);
        let m = matrix_from_strs(
            &vs,
            &[
                &["1", "t", "t^2", "t^3", "t^4", "t^5"],
                &["0", "1", "2*t", "3*t^2", "4*t^3", "5*t^4"],
                &["0", "0", "2", "6*t", "12*t^2", "20*t^3"],
            ],
        )
        .unwrap();
        let x = ParametricScroll::new(vs, 5, m, None, &c).unwrap();
        let r = decompose_g1(&x, &c).unwrap();
        assert_eq!(r.verdict, Verdict::CurveOsculating);
        assert_eq!(r.curve_order, Some(2));
        assert_eq!(r.constants.unwrap().rows(), 0);
    }

    #[test]
    fn umbrella_classify() {
        let c = ctx();
        assert_eq!(
            classify(&quadric_ruling(&c), &c).unwrap().verdict,
            Verdict::Unclassified
        );
        assert_eq!(
            classify(&cone_over_twisted_cubic(&c), &c).unwrap().verdict,
            Verdict::Cone
        );
        assert_eq!(
            classify(&twisted_cubic_tangent(&c), &c).unwrap().verdict,
            Verdict::InflatedTangentScroll
        );
    }
}
