//! Builders for stationary scrolls: osculating scrolls of parametrized
//! varieties, joins and cones, inflation by extra sections, base change
//! along a curve, and the conjugate-direction (eigenscroll) diagram for
//! surfaces in `P^4`.

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::PolyMatrix;
use crate::poly::MultiPoly;
use crate::scroll::ParametricScroll;

/// A parametrized variety is just a scroll; `k = 0` is the curve/surface
/// case where the classifying matrix is a single row.
pub type VarietyParametrization = ParametricScroll;

/// Scroll of order-`r` osculating spaces: the row span of all partial
/// derivatives of the parametrization up to order `r`. The rank must grow
/// strictly with each order up to `r`.
pub fn osculating_scroll(
    y: &VarietyParametrization,
    order: usize,
    ctx: &Ctx,
) -> Result<ParametricScroll> {
    let mut stack = y.classifying().clone();
    let mut frontier = y.classifying().clone();
    let mut rank = linalg::generic_rank(&stack, ctx)?;
    for ord in 1..=order {
        let mut next_frontier: Option<PolyMatrix> = None;
        for tv in y.base_vars() {
            let d = frontier.differentiate(tv)?;
            next_frontier = Some(match next_frontier {
                None => d,
                Some(m) => m.vstack(&d)?,
            });
        }
        let nf = next_frontier.expect("positive base dimension");
        stack = stack.vstack(&nf)?;
        let new_rank = linalg::generic_rank(&stack, ctx)?;
        if new_rank == rank {
            return Err(Error::precondition(
                "osculating_scroll",
                format!("osculation saturates at order {} (below {order})", ord - 1),
            ));
        }
        rank = new_rank;
        frontier = nf;
    }
    let reduced = linalg::rref(&stack, ctx)?.mat;
    ParametricScroll::new(
        y.base_vars().to_vec(),
        y.ambient_dim(),
        reduced,
        y.name().map(|n| format!("osc{order}({n})")),
        ctx,
    )
}

/// Join of two scrolls: fibres are spanned by one fibre of each factor,
/// over the product base. Base variables are renamed apart when they
/// collide (suffix `_1` / `_2`).
pub fn join(
    x1: &ParametricScroll,
    x2: &ParametricScroll,
    ctx: &Ctx,
) -> Result<ParametricScroll> {
    if x1.ambient_dim() != x2.ambient_dim() {
        return Err(Error::precondition(
            "join",
            format!(
                "ambient dimensions differ: {} vs {}",
                x1.ambient_dim(),
                x2.ambient_dim()
            ),
        ));
    }
    let collide = x1.base_vars().iter().any(|v| x2.base_vars().contains(v));
    let (m1, vars1) = if collide {
        rename_suffix(x1, "_1")?
    } else {
        (x1.classifying().clone(), x1.base_vars().to_vec())
    };
    let (m2, vars2) = if collide {
        rename_suffix(x2, "_2")?
    } else {
        (x2.classifying().clone(), x2.base_vars().to_vec())
    };
    let mut base = vars1;
    base.extend(vars2);
    let m1 = m1.map(|p| p.remap_superset(&base));
    let m2 = m2.map(|p| p.remap_superset(&base));
    let stacked = m1.vstack(&m2)?;
    let required = x1.fibre_dim() + x2.fibre_dim() + 2;
    let rank = linalg::generic_rank(&stacked, ctx)?;
    if rank < required {
        return Err(Error::RankCollapse {
            op: "join".into(),
            achieved: rank,
            required,
        });
    }
    ParametricScroll::new(base, x1.ambient_dim(), stacked, None, ctx)
}

fn rename_suffix(x: &ParametricScroll, suffix: &str) -> Result<(PolyMatrix, Vec<String>)> {
    let new_vars: Vec<String> = x
        .base_vars()
        .iter()
        .map(|v| format!("{v}{suffix}"))
        .collect();
    let images: Vec<(String, MultiPoly)> = x
        .base_vars()
        .iter()
        .zip(&new_vars)
        .map(|(old, new)| Ok((old.clone(), MultiPoly::var(&new_vars, new)?)))
        .collect::<Result<_>>()?;
    Ok((x.classifying().substitute(&images)?, new_vars))
}

/// Cone: join with a constant vertex span.
pub fn cone(
    vertex: &PolyMatrix,
    x: &ParametricScroll,
    ctx: &Ctx,
) -> Result<ParametricScroll> {
    if !vertex.is_constant() {
        return Err(Error::precondition("cone", "vertex span must be constant"));
    }
    if vertex.cols() != x.ambient_dim() + 1 {
        return Err(Error::Shape(format!(
            "vertex has {} columns, ambient needs {}",
            vertex.cols(),
            x.ambient_dim() + 1
        )));
    }
    let v = vertex.map(|p| p.remap_superset(x.base_vars()));
    let stacked = v.vstack(x.classifying())?;
    let required = vertex.rows() + x.fibre_dim() + 1;
    let rank = linalg::generic_rank(&stacked, ctx)?;
    if rank < required {
        return Err(Error::RankCollapse {
            op: "cone".into(),
            achieved: rank,
            required,
        });
    }
    ParametricScroll::new(
        x.base_vars().to_vec(),
        x.ambient_dim(),
        stacked,
        x.name().map(|n| format!("cone({n})")),
        ctx,
    )
}

/// Inflate a stationary scroll by extra sections (each a `1 x (N+1)` row
/// over the same base). The Gauss deficiency of the result is verified to
/// be at least the fibre dimension of the input.
pub fn inflate(
    x0: &ParametricScroll,
    sections: &[PolyMatrix],
    ctx: &Ctx,
) -> Result<ParametricScroll> {
    if !x0.is_stationary(ctx)? {
        return Err(Error::NonStationary { op: "inflate".into() });
    }
    let mut stacked = x0.classifying().clone();
    for s in sections {
        if s.rows() != 1 || s.cols() != x0.ambient_dim() + 1 {
            return Err(Error::Shape(format!(
                "section must be 1 x {}, got {} x {}",
                x0.ambient_dim() + 1,
                s.rows(),
                s.cols()
            )));
        }
        stacked = stacked.vstack(&s.map(|p| p.remap_superset(x0.base_vars())))?;
    }
    let required = x0.fibre_dim() + 1 + sections.len();
    let rank = linalg::generic_rank(&stacked, ctx)?;
    if rank < required {
        return Err(Error::RankCollapse {
            op: "inflate".into(),
            achieved: rank,
            required,
        });
    }
    let out = ParametricScroll::new(
        x0.base_vars().to_vec(),
        x0.ambient_dim(),
        stacked,
        x0.name().map(|n| format!("inflate({n})")),
        ctx,
    )?;
    let deficiency = out.gauss_deficiency(ctx)?;
    if deficiency < x0.fibre_dim() {
        return Err(Error::internal(
            "inflate",
            format!(
                "Gauss deficiency {} dropped below the input fibre dimension {}",
                deficiency,
                x0.fibre_dim()
            ),
        ));
    }
    Ok(out)
}

/// Base change along a curve: substitute `t_i := gamma_i(u)`. The
/// substitution tuple must be nonconstant and the fibre rank must survive.
pub fn base_change(
    x: &ParametricScroll,
    new_var: &str,
    gammas: &[MultiPoly],
    ctx: &Ctx,
) -> Result<ParametricScroll> {
    if gammas.len() != x.base_dim() {
        return Err(Error::Shape(format!(
            "{} substitution polynomials for {} base variables",
            gammas.len(),
            x.base_dim()
        )));
    }
    if gammas.iter().all(|p| p.is_constant()) {
        return Err(Error::precondition(
            "base_change",
            "substitution by constants",
        ));
    }
    let new_vars = vec![new_var.to_string()];
    let images: Vec<(String, MultiPoly)> = x
        .base_vars()
        .iter()
        .zip(gammas)
        .map(|(v, g)| (v.clone(), g.remap_superset(&new_vars)))
        .collect();
    let m = x.classifying().substitute(&images)?;
    let m = m.map(|p| p.remap_superset(&new_vars));
    let rank = linalg::generic_rank(&m, ctx)?;
    if rank < x.fibre_dim() + 1 {
        return Err(Error::RankCollapse {
            op: "base_change".into(),
            achieved: rank,
            required: x.fibre_dim() + 1,
        });
    }
    ParametricScroll::new(new_vars, x.ambient_dim(), m, x.name().map(String::from), ctx)
}

/// True when the surface parametrization is in conjugate (Darboux)
/// coordinates: the mixed second partial lies in the tangent span.
pub fn is_conjugate(phi: &VarietyParametrization, ctx: &Ctx) -> Result<bool> {
    surface_checks(phi)?;
    let (t1, t2) = (&phi.base_vars()[0].clone(), &phi.base_vars()[1].clone());
    let m = phi.classifying();
    let tangent = m
        .vstack(&m.differentiate(t1)?)?
        .vstack(&m.differentiate(t2)?)?;
    let mixed = m.differentiate(t1)?.differentiate(t2)?;
    linalg::rowspan_contains(&tangent, &mixed, ctx)
}

fn surface_checks(phi: &VarietyParametrization) -> Result<()> {
    if phi.base_dim() != 2 || phi.fibre_dim() != 0 {
        return Err(Error::precondition(
            "eigenscroll",
            "expected a surface parametrization (base dimension 2, single row)",
        ));
    }
    if phi.ambient_dim() != 4 {
        return Err(Error::precondition(
            "eigenscroll",
            "expected ambient dimension 4",
        ));
    }
    Ok(())
}

/// The four scrolls attached to a surface in `P^4` in conjugate
/// coordinates: the two conjugate-direction line scrolls and the two
/// second-order span scrolls.
#[derive(Debug, Clone)]
pub struct EigenscrollDiagram {
    /// Line scroll in the second conjugate direction: `{phi, phi_t2}`.
    pub x1: ParametricScroll,
    /// Line scroll in the first conjugate direction: `{phi, phi_t1}`.
    pub x2: ParametricScroll,
    /// `{phi, phi_t1, phi_t2, phi_t1t1}`.
    pub y1: ParametricScroll,
    /// `{phi, phi_t1, phi_t2, phi_t2t2}`.
    pub y2: ParametricScroll,
}

/// Build the eigenscroll diagram of a conjugate surface parametrization,
/// verifying exactly that the tangent scroll of each line scroll is the
/// matching second-order scroll.
pub fn eigenscroll_diagram(
    phi: &VarietyParametrization,
    ctx: &Ctx,
) -> Result<EigenscrollDiagram> {
    surface_checks(phi)?;
    if !is_conjugate(phi, ctx)? {
        return Err(Error::precondition(
            "eigenscroll_diagram",
            "supply a conjugate (Darboux) parametrization: the mixed second \
             partial must lie in the tangent span",
        ));
    }
    let (t1, t2) = (&phi.base_vars()[0].clone(), &phi.base_vars()[1].clone());
    let m = phi.classifying();
    let d1 = m.differentiate(t1)?;
    let d2 = m.differentiate(t2)?;
    let d11 = d1.differentiate(t1)?;
    let d22 = d2.differentiate(t2)?;
    let tangent = m.vstack(&d1)?.vstack(&d2)?;
    let y1m = tangent.vstack(&d11)?;
    let y2m = tangent.vstack(&d22)?;
    for (label, ym) in [("phi_t1t1", &y1m), ("phi_t2t2", &y2m)] {
        if linalg::generic_rank(ym, ctx)? != 4 {
            return Err(Error::precondition(
                "eigenscroll_diagram",
                format!("second-order independence fails for {label}"),
            ));
        }
    }
    let base = phi.base_vars().to_vec();
    let nm = |s: &str| phi.name().map(|n| format!("{s}({n})"));
    let x1 = ParametricScroll::new(base.clone(), 4, m.vstack(&d2)?, nm("X1"), ctx)?;
    let x2 = ParametricScroll::new(base.clone(), 4, m.vstack(&d1)?, nm("X2"), ctx)?;
    // the second-order scrolls factor through a curve in the base (their
    // hyperplane depends on one conjugate coordinate only), so they skip
    // the generic-finiteness validation like flag members do
    let y1 = ParametricScroll::with_rank_check(
        base.clone(),
        4,
        linalg::rref(&y1m, ctx)?.mat,
        nm("Y1"),
        ctx,
    )?;
    let y2 = ParametricScroll::with_rank_check(base, 4, linalg::rref(&y2m, ctx)?.mat, nm("Y2"), ctx)?;
    // the defining relations: tangent scrolls swap the two directions
    let dx2 = x2.derived(ctx)?;
    if !linalg::rowspan_equal(dx2.classifying(), y1.classifying(), ctx)? {
        return Err(Error::internal(
            "eigenscroll_diagram",
            "tangent scroll of X2 is not Y1",
        ));
    }
    let dx1 = x1.derived(ctx)?;
    if !linalg::rowspan_equal(dx1.classifying(), y2.classifying(), ctx)? {
        return Err(Error::internal(
            "eigenscroll_diagram",
            "tangent scroll of X1 is not Y2",
        ));
    }
    Ok(EigenscrollDiagram { x1, x2, y1, y2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::matrix_from_strs;
    use crate::poly::{rat_int, vars};
    use crate::scroll::test_fixtures::*;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    fn curve_in(n: usize, coords: &[&str], c: &Ctx) -> ParametricScroll {
        let vs = vars(&["t"]);
        ParametricScroll::new(vs.clone(), n, matrix_from_strs(&vs, &[coords]).unwrap(), None, c)
            .unwrap()
    }

    #[test]
    fn osculating_orders_of_curves() {
        let c = ctx();
        let curve = twisted_cubic_curve(&c);
        let t1 = osculating_scroll(&curve, 1, &c).unwrap();
        assert!(linalg::rowspan_equal(
            t1.classifying(),
            twisted_cubic_tangent(&c).classifying(),
            &c
        )
        .unwrap());
        // order-2 scroll of the rational normal quintic has fibre dim 2
        let quintic = curve_in(5, &["1", "t", "t^2", "t^3", "t^4", "t^5"], &c);
        let o2 = osculating_scroll(&quintic, 2, &c).unwrap();
        assert_eq!(o2.fibre_dim(), 2);
        // saturation: the twisted cubic fills P^3 at order 3
        assert!(matches!(
            osculating_scroll(&curve, 4, &c),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn osculating_veronese_surface() {
        let c = ctx();
        let vs = vars(&["s", "u"]);
        let phi = ParametricScroll::new(
            vs.clone(),
            5,
            matrix_from_strs(&vs, &[&["1", "s", "u", "s^2", "s*u", "u^2"]]).unwrap(),
            None,
            &c,
        )
        .unwrap();
        let t = osculating_scroll(&phi, 1, &c).unwrap();
        assert_eq!(t.fibre_dim(), 2);
        assert_eq!(t.base_dim(), 2);
    }

    #[test]
    fn osculating_step_is_derivation() {
        let c = ctx();
        let curve = twisted_cubic_curve(&c);
        let o1 = osculating_scroll(&curve, 1, &c).unwrap();
        let o2 = osculating_scroll(&curve, 2, &c).unwrap();
        let d = o1.derived(&c).unwrap();
        assert!(linalg::rowspan_equal(o2.classifying(), d.classifying(), &c).unwrap());
    }

    #[test]
    fn join_of_disjoint_conics() {
        let c = ctx();
        let c1 = curve_in(5, &["1", "t", "t^2", "0", "0", "0"], &c);
        let c2 = curve_in(5, &["0", "0", "0", "1", "t", "t^2"], &c);
        let j = join(&c1, &c2, &c).unwrap();
        assert_eq!(j.base_dim(), 2);
        assert_eq!(j.fibre_dim(), 1);
        assert!(j.is_stationary(&c).unwrap());
    }

    #[test]
    fn join_with_point_is_cone() {
        let c = ctx();
        let point = ParametricScroll::new(
            Vec::new(),
            4,
            matrix_from_strs(&Vec::new(), &[&["0", "0", "0", "0", "1"]]).unwrap(),
            None,
            &c,
        )
        .unwrap();
        let curve = curve_in(4, &["1", "t", "t^2", "t^3", "0"], &c);
        let j = join(&curve, &point, &c).unwrap();
        assert!(crate::flag::is_cone(&j, &c).unwrap().is_some());
    }

    #[test]
    fn join_of_spanning_lines_is_constant() {
        let c = ctx();
        let vs: Vec<String> = Vec::new();
        let l1 = ParametricScroll::new(
            vs.clone(),
            3,
            matrix_from_strs(&vs, &[&["1", "0", "0", "0"], &["0", "1", "0", "0"]]).unwrap(),
            None,
            &c,
        )
        .unwrap();
        let l2 = ParametricScroll::new(
            vs.clone(),
            3,
            matrix_from_strs(&vs, &[&["0", "0", "1", "0"], &["0", "0", "0", "1"]]).unwrap(),
            None,
            &c,
        )
        .unwrap();
        let j = join(&l1, &l2, &c).unwrap();
        assert_eq!(j.fibre_dim(), 3);
        assert!(j.classifying().is_constant());
        // overlapping spans collapse
        assert!(matches!(join(&l1, &l1, &c), Err(Error::RankCollapse { .. })));
    }

    #[test]
    fn join_ambient_mismatch() {
        let c = ctx();
        let a = curve_in(3, &["1", "t", "t^2", "t^3"], &c);
        let b = curve_in(2, &["1", "t", "t^2"], &c);
        assert!(join(&a, &b, &c).is_err());
    }

    #[test]
    fn cone_constructions() {
        let c = ctx();
        let vs = vars(&["t"]);
        let curve = curve_in(4, &["1", "t", "t^2", "t^3", "0"], &c);
        let e4 = matrix_from_strs(&vs, &[&["0", "0", "0", "0", "1"]]).unwrap();
        let k = cone(&e4, &curve, &c).unwrap();
        assert!(crate::flag::is_cone(&k, &c).unwrap().is_some());
        // cone over a tangent scroll: the vertex is the flag bottom
        let tangent5 = ParametricScroll::new(
            vs.clone(),
            5,
            matrix_from_strs(
                &vs,
                &[
                    &["1", "t", "t^2", "t^3", "t^4", "0"],
                    &["0", "1", "2*t", "3*t^2", "4*t^3", "0"],
                ],
            )
            .unwrap(),
            None,
            &c,
        )
        .unwrap();
        let e5 = matrix_from_strs(&vs, &[&["0", "0", "0", "0", "0", "1"]]).unwrap();
        let k2 = cone(&e5, &tangent5, &c).unwrap();
        let vertex = crate::flag::is_cone(&k2, &c).unwrap().expect("cone");
        assert_eq!(vertex.rows(), 1);
        assert_eq!(vertex[(0, 5)], rat_int(1));
        // vertex inside a constant fibre span collapses
        let line = ParametricScroll::new(
            Vec::new(),
            4,
            matrix_from_strs(
                &Vec::new(),
                &[&["1", "0", "0", "0", "0"], &["0", "1", "0", "0", "0"]],
            )
            .unwrap(),
            None,
            &c,
        )
        .unwrap();
        let bad_vertex =
            matrix_from_strs(&Vec::new(), &[&["1", "0", "0", "0", "0"]]).unwrap();
        assert!(matches!(
            cone(&bad_vertex, &line, &c),
            Err(Error::RankCollapse { .. })
        ));
    }

    #[test]
    fn inflate_by_constant_section() {
        let c = ctx();
        let vs = vars(&["t"]);
        let quintic = curve_in(5, &["1", "t", "t^2", "t^3", "t^4", "t^5"], &c);
        let tangent = osculating_scroll(&quintic, 1, &c).unwrap();
        let section = matrix_from_strs(&vs, &[&["1", "2", "-1", "3", "1", "4"]]).unwrap();
        let inflated = inflate(&tangent, &[section], &c).unwrap();
        assert_eq!(inflated.fibre_dim(), 2);
        assert_eq!(inflated.spread_dim(&c).unwrap(), 3);
        assert!(inflated.gauss_deficiency(&c).unwrap() >= 1);
        // a section inside the fibre collapses the rank
        let inside = matrix_from_strs(&vs, &[&["1", "t", "t^2", "t^3", "t^4", "t^5"]]).unwrap();
        assert!(matches!(
            inflate(&tangent, &[inside], &c),
            Err(Error::RankCollapse { .. })
        ));
    }

    #[test]
    fn inflate_curve_by_point_is_cone() {
        let c = ctx();
        let vs = vars(&["t"]);
        let curve = curve_in(4, &["1", "t", "t^2", "t^3", "0"], &c);
        let point = matrix_from_strs(&vs, &[&["0", "0", "0", "0", "1"]]).unwrap();
        let inflated = inflate(&curve, &[point], &c).unwrap();
        assert!(crate::flag::is_cone(&inflated, &c).unwrap().is_some());
    }

    #[test]
    fn base_change_identity_and_errors() {
        let c = ctx();
        let x = twisted_cubic_tangent(&c);
        // identity substitution on the scroll's own variable
        let t = MultiPoly::var(&vars(&["t"]), "t").unwrap();
        let same = base_change(&x, "t", &[t], &c).unwrap();
        assert!(linalg::rowspan_equal(same.classifying(), x.classifying(), &c).unwrap());
        // constants are rejected
        let konst = MultiPoly::int(&vars(&["u"]), 3);
        assert!(matches!(
            base_change(&x, "u", &[konst], &c),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn base_change_along_focal_direction_stays_stationary() {
        let c = ctx();
        // split-focus instance: the coordinate directions are focal, so
        // freezing t2 gives a stationary scroll over a curve
        let base = vars(&["t1", "t2"]);
        let xv = vars(&["x0", "x1"]);
        let forms = vec![
            MultiPoly::var(&xv, "x0").unwrap(),
            MultiPoly::var(&xv, "x1").unwrap(),
        ];
        let cmat = matrix_from_strs(
            &base,
            &[&["2*t1", "t2"], &["t1^2", "3*t2"], &["-t1^3", "t2"]],
        )
        .unwrap();
        let z = crate::focal::z_construct(base, 1, 4, &forms, &cmat, &c).unwrap();
        let uv = vars(&["u"]);
        let u = MultiPoly::var(&uv, "u").unwrap();
        let two = MultiPoly::int(&uv, 2);
        let restricted = base_change(&z, "u", &[u, two], &c).unwrap();
        assert_eq!(restricted.base_dim(), 1);
        assert!(restricted.is_stationary(&c).unwrap());
        let r = crate::classify::decompose_g1(&restricted, &c).unwrap();
        assert!(matches!(
            r.verdict,
            crate::classify::Verdict::CurveOsculating | crate::classify::Verdict::Cone
        ));
    }

    #[test]
    fn eigenscroll_on_darboux_surface() {
        let c = ctx();
        let vs = vars(&["t1", "t2"]);
        let phi = ParametricScroll::new(
            vs.clone(),
            4,
            matrix_from_strs(&vs, &[&["1", "t1", "t2", "t1^2", "t2^2"]]).unwrap(),
            None,
            &c,
        )
        .unwrap();
        assert!(is_conjugate(&phi, &c).unwrap());
        let d = eigenscroll_diagram(&phi, &c).unwrap();
        assert_eq!(d.x1.fibre_dim(), 1);
        assert_eq!(d.x2.fibre_dim(), 1);
        assert_eq!(d.y1.fibre_dim(), 3);
        assert_eq!(d.y2.fibre_dim(), 3);
    }

    #[test]
    fn eigenscroll_rejects_non_conjugate() {
        let c = ctx();
        let vs = vars(&["t1", "t2"]);
        let phi = ParametricScroll::new(
            vs.clone(),
            4,
            matrix_from_strs(&vs, &[&["1", "t1", "t2", "t1^2", "t1*t2"]]).unwrap(),
            None,
            &c,
        )
        .unwrap();
        assert!(!is_conjugate(&phi, &c).unwrap());
        assert!(matches!(
            eigenscroll_diagram(&phi, &c),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn eigenscroll_on_cubic_perturbed_surface() {
        let c = ctx();
        let vs = vars(&["t1", "t2"]);
        let phi = ParametricScroll::new(
            vs.clone(),
            4,
            matrix_from_strs(&vs, &[&["1", "t1", "t2", "t1^2 + t2^3", "t2^2"]]).unwrap(),
            None,
            &c,
        )
        .unwrap();
        let d = eigenscroll_diagram(&phi, &c).unwrap();
        // the two second-order scrolls differ
        assert!(!linalg::rowspan_equal(d.y1.classifying(), d.y2.classifying(), &c).unwrap());
    }
}
