//! Built-in example scrolls with independently recomputed invariants.
//!
//! Every entry carries its expected profile; `get` rebuilds the scroll and
//! recomputes each expected field with the library, failing loudly on any
//! mismatch. That check is the catalog's loading contract, so a catalog
//! entry in hand is always consistent with the code that produced it.

use crate::classify;
use crate::construct;
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::flag;
use crate::focal::{self, SplitVerdict};
use crate::linalg;
use crate::matrix::{matrix_from_strs, PolyMatrix};
use crate::poly::{vars, MultiPoly};
use crate::scroll::ParametricScroll;

/// What split-focus detection is expected to report for an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitExpect {
    /// Split with these forms (canonical order, display syntax).
    Split(Vec<&'static str>),
    /// Certified not split.
    NonSplit,
    /// Not applicable (no focal hypersurface or not stationary).
    NotChecked,
}

/// Expected profile of a catalog entry; every field is re-derivable.
#[derive(Debug, Clone)]
pub struct Expected {
    pub stationary: bool,
    pub base_dim: usize,
    pub fibre_dim: usize,
    pub ambient_dim: usize,
    pub spread_dim: usize,
    pub gauss_dim: usize,
    pub index_m: usize,
    pub coindex_l: usize,
    /// `None` for non-stationary entries, where the cone test is gated.
    pub is_cone: Option<bool>,
    pub focal_hypersurface: bool,
    /// Degree of the focal divisor; 0 when there is no hypersurface.
    pub focal_degree: usize,
    pub split: SplitExpect,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub scroll: ParametricScroll,
    pub expected: Expected,
}

pub const NAMES: [&str; 8] = [
    "twisted_cubic_tangent",
    "veronese_tangent",
    "segre_linepairs",
    "quadric_ruling",
    "cone_twisted_cubic",
    "darboux_surface_p4",
    "z_split_p4",
    "rnc5_osc2",
];

pub fn names() -> Vec<&'static str> {
    NAMES.to_vec()
}

/// Load an entry and run its full self-check.
pub fn get(name: &str, ctx: &Ctx) -> Result<CatalogEntry> {
    let entry = build(name, ctx)?;
    self_check(&entry, ctx)?;
    Ok(entry)
}

/// Build an entry without the self-check (used by the check itself).
pub fn build(name: &str, ctx: &Ctx) -> Result<CatalogEntry> {
    let (scroll, expected) = match name {
        "twisted_cubic_tangent" => {
            let vs = vars(&["t"]);
            let m = matrix_from_strs(
                &vs,
                &[&["1", "t", "t^2", "t^3"], &["0", "1", "2*t", "3*t^2"]],
            )?;
            let scroll = ParametricScroll::new(vs, 3, m, Some(name.into()), ctx)?;
            (
                scroll,
                Expected {
                    stationary: true,
                    base_dim: 1,
                    fibre_dim: 1,
                    ambient_dim: 3,
                    spread_dim: 2,
                    gauss_dim: 1,
                    index_m: 1,
                    coindex_l: 1,
                    is_cone: Some(false),
                    focal_hypersurface: true,
                    focal_degree: 1,
                    split: SplitExpect::Split(vec!["x1"]),
                },
            )
        }
        "veronese_tangent" => {
            // tangent-plane scroll of the Veronese surface; its ruling is
            // not the Gauss ruling of the spread, so the scroll is not
            // stationary even though the spread is Gauss-deficient
            let vs = vars(&["s", "u"]);
            let m = matrix_from_strs(
                &vs,
                &[
                    &["1", "s", "u", "s^2", "s*u", "u^2"],
                    &["0", "1", "0", "2*s", "u", "0"],
                    &["0", "0", "1", "0", "s", "2*u"],
                ],
            )?;
            let scroll = ParametricScroll::new(vs, 5, m, Some(name.into()), ctx)?;
            (
                scroll,
                Expected {
                    stationary: false,
                    base_dim: 2,
                    fibre_dim: 2,
                    ambient_dim: 5,
                    spread_dim: 4,
                    gauss_dim: 2,
                    index_m: 1,
                    coindex_l: 1,
                    is_cone: None,
                    focal_hypersurface: false,
                    focal_degree: 0,
                    split: SplitExpect::NotChecked,
                },
            )
        }
        "segre_linepairs" => {
            // conics singular at (a, b): the Gauss ruling of the cubic of
            // line pairs, in the conic-coefficient basis
            // (z^2, xz, yz, x^2, xy, y^2)
            let vs = vars(&["a", "b"]);
            let m = matrix_from_strs(
                &vs,
                &[
                    &["a^2", "-2*a", "0", "1", "0", "0"],
                    &["a*b", "-b", "-a", "0", "1", "0"],
                    &["b^2", "0", "-2*b", "0", "0", "1"],
                ],
            )?;
            let scroll = ParametricScroll::new(vs, 5, m, Some(name.into()), ctx)?;
            (
                scroll,
                Expected {
                    stationary: true,
                    base_dim: 2,
                    fibre_dim: 2,
                    ambient_dim: 5,
                    spread_dim: 4,
                    gauss_dim: 2,
                    index_m: 0,
                    coindex_l: 1,
                    is_cone: Some(false),
                    focal_hypersurface: true,
                    focal_degree: 2,
                    split: SplitExpect::NonSplit,
                },
            )
        }
        "quadric_ruling" => {
            let vs = vars(&["t"]);
            let m = matrix_from_strs(&vs, &[&["1", "0", "t", "0"], &["0", "1", "0", "t"]])?;
            let scroll = ParametricScroll::new(vs, 3, m, Some(name.into()), ctx)?;
            (
                scroll,
                Expected {
                    stationary: false,
                    base_dim: 1,
                    fibre_dim: 1,
                    ambient_dim: 3,
                    spread_dim: 2,
                    gauss_dim: 2,
                    index_m: 0,
                    coindex_l: 1,
                    is_cone: None,
                    focal_hypersurface: false,
                    focal_degree: 0,
                    split: SplitExpect::NotChecked,
                },
            )
        }
        "cone_twisted_cubic" => {
            let vs = vars(&["t"]);
            let curve = ParametricScroll::new(
                vs.clone(),
                4,
                matrix_from_strs(&vs, &[&["1", "t", "t^2", "t^3", "0"]])?,
                Some("twisted_cubic".into()),
                ctx,
            )?;
            let vertex = matrix_from_strs(&vs, &[&["0", "0", "0", "0", "1"]])?;
            let scroll = construct::cone(&vertex, &curve, ctx)?.with_name(name);
            (
                scroll,
                Expected {
                    stationary: true,
                    base_dim: 1,
                    fibre_dim: 1,
                    ambient_dim: 4,
                    spread_dim: 2,
                    gauss_dim: 1,
                    index_m: 1,
                    coindex_l: 2,
                    is_cone: Some(true),
                    focal_hypersurface: true,
                    focal_degree: 1,
                    split: SplitExpect::Split(vec!["x1"]),
                },
            )
        }
        "darboux_surface_p4" => {
            let vs = vars(&["t1", "t2"]);
            let m = matrix_from_strs(&vs, &[&["1", "t1", "t2", "t1^2", "t2^2"]])?;
            let scroll = ParametricScroll::new(vs, 4, m, Some(name.into()), ctx)?;
            (
                scroll,
                Expected {
                    stationary: true,
                    base_dim: 2,
                    fibre_dim: 0,
                    ambient_dim: 4,
                    spread_dim: 2,
                    gauss_dim: 2,
                    index_m: 0,
                    coindex_l: 1,
                    is_cone: Some(false),
                    focal_hypersurface: true,
                    focal_degree: 2,
                    split: SplitExpect::NonSplit,
                },
            )
        }
        "z_split_p4" => {
            let base = vars(&["t1", "t2"]);
            let xv = vars(&["x0", "x1"]);
            let forms = vec![
                MultiPoly::var(&xv, "x0")?,
                MultiPoly::var(&xv, "x1")?,
            ];
            // quadratic graph coefficients keep the instance generic: a
            // column linear in t_a would freeze the tangent span
            let cmat = matrix_from_strs(
                &base,
                &[&["2*t1", "t2"], &["t1^2", "3*t2"], &["-t1", "t2^2"]],
            )?;
            let scroll = focal::z_construct(base, 1, 4, &forms, &cmat, ctx)?.with_name(name);
            (
                scroll,
                Expected {
                    stationary: true,
                    base_dim: 2,
                    fibre_dim: 1,
                    ambient_dim: 4,
                    spread_dim: 3,
                    gauss_dim: 2,
                    index_m: 0,
                    coindex_l: 1,
                    is_cone: Some(false),
                    focal_hypersurface: true,
                    focal_degree: 2,
                    split: SplitExpect::Split(vec!["x0", "x1"]),
                },
            )
        }
        "rnc5_osc2" => {
            // order-2 osculating scroll of the rational normal quintic,
            // presented in the jet frame {p, p', p''} so that fibre
            // coordinates match the derivative order
            let vs = vars(&["t"]);
            let m = matrix_from_strs(
                &vs,
                &[
                    &["1", "t", "t^2", "t^3", "t^4", "t^5"],
                    &["0", "1", "2*t", "3*t^2", "4*t^3", "5*t^4"],
                    &["0", "0", "2", "6*t", "12*t^2", "20*t^3"],
                ],
            )?;
            let scroll = ParametricScroll::new(vs, 5, m, Some(name.into()), ctx)?;
            (
                scroll,
                Expected {
                    stationary: true,
                    base_dim: 1,
                    fibre_dim: 2,
                    ambient_dim: 5,
                    spread_dim: 3,
                    gauss_dim: 1,
                    index_m: 2,
                    coindex_l: 2,
                    is_cone: Some(false),
                    focal_hypersurface: true,
                    focal_degree: 1,
                    split: SplitExpect::Split(vec!["x2"]),
                },
            )
        }
        other => {
            return Err(Error::precondition(
                "catalog",
                format!("unknown catalog entry `{other}`"),
            ))
        }
    };
    let name_static = NAMES
        .iter()
        .find(|n| **n == name)
        .expect("name checked above");
    Ok(CatalogEntry {
        name: name_static,
        scroll,
        expected,
    })
}

/// Recompute every expected field and compare. Any mismatch is an error
/// naming the entry and the field.
pub fn self_check(entry: &CatalogEntry, ctx: &Ctx) -> Result<()> {
    let x = &entry.scroll;
    let e = &entry.expected;
    let mut fail = |field: &str, got: String, want: String| -> Result<()> {
        Err(Error::internal(
            "catalog",
            format!(
                "entry `{}`: {} mismatch (computed {}, stored {})",
                entry.name, field, got, want
            ),
        ))
    };
    if x.base_dim() != e.base_dim {
        return fail("base_dim", x.base_dim().to_string(), e.base_dim.to_string());
    }
    if x.fibre_dim() != e.fibre_dim {
        return fail(
            "fibre_dim",
            x.fibre_dim().to_string(),
            e.fibre_dim.to_string(),
        );
    }
    if x.ambient_dim() != e.ambient_dim {
        return fail(
            "ambient_dim",
            x.ambient_dim().to_string(),
            e.ambient_dim.to_string(),
        );
    }
    let st = x.is_stationary(ctx)?;
    if st != e.stationary {
        return fail("stationary", st.to_string(), e.stationary.to_string());
    }
    let sd = x.spread_dim(ctx)?;
    if sd != e.spread_dim {
        return fail("spread_dim", sd.to_string(), e.spread_dim.to_string());
    }
    let gd = x.gauss_dimension(ctx)?;
    if gd != e.gauss_dim {
        return fail("gauss_dim", gd.to_string(), e.gauss_dim.to_string());
    }
    let f = flag::maximal_flag(x, ctx)?;
    if f.index_m != e.index_m {
        return fail("index_m", f.index_m.to_string(), e.index_m.to_string());
    }
    if f.coindex_l != e.coindex_l {
        return fail("coindex_l", f.coindex_l.to_string(), e.coindex_l.to_string());
    }
    if let Some(want_cone) = e.is_cone {
        let got = flag::is_cone(x, ctx)?.is_some();
        if got != want_cone {
            return fail("is_cone", got.to_string(), want_cone.to_string());
        }
    }
    let fd = focal::focal_data(x, ctx)?;
    if fd.hypersurface != e.focal_hypersurface {
        return fail(
            "focal_hypersurface",
            fd.hypersurface.to_string(),
            e.focal_hypersurface.to_string(),
        );
    }
    if fd.degree_in_x != e.focal_degree {
        return fail(
            "focal_degree",
            fd.degree_in_x.to_string(),
            e.focal_degree.to_string(),
        );
    }
    match &e.split {
        SplitExpect::NotChecked => {}
        SplitExpect::Split(want_forms) => match focal::split_focus_detect(x, ctx)? {
            SplitVerdict::Split(data) => {
                let got: Vec<String> = data.forms.iter().map(|f| f.to_string()).collect();
                let want: Vec<String> = want_forms.iter().map(|s| s.to_string()).collect();
                if got != want {
                    return fail("split_forms", format!("{got:?}"), format!("{want:?}"));
                }
            }
            other => {
                return fail("split", format!("{other:?}"), "Split".into());
            }
        },
        SplitExpect::NonSplit => match focal::split_focus_detect(x, ctx)? {
            SplitVerdict::NonSplit { .. } => {}
            other => {
                return fail("split", format!("{other:?}"), "NonSplit".into());
            }
        },
    }
    // cross identities tying entries together
    if entry.name == "segre_linepairs" {
        let ver = build("veronese_tangent", ctx)?.scroll;
        let dual = ver.dual(ctx)?;
        let identified = rename_base(x, &["s", "u"])?;
        if !linalg::rowspan_equal(identified.classifying(), dual.classifying(), ctx)? {
            return Err(Error::internal(
                "catalog",
                "segre_linepairs is not the dual of veronese_tangent under (a,b) = (s,u)",
            ));
        }
    }
    if entry.name == "darboux_surface_p4" {
        construct::eigenscroll_diagram(x, ctx)?;
    }
    if entry.name == "rnc5_osc2" {
        let r = classify::decompose_g1(x, ctx)?;
        if r.verdict != classify::Verdict::CurveOsculating
            || r.curve_order != Some(2)
            || r.constants.map(|c| c.rows()) != Some(0)
        {
            return Err(Error::internal(
                "catalog",
                "rnc5_osc2 does not decompose as a pure order-2 osculating scroll",
            ));
        }
    }
    Ok(())
}

/// Rename the base variables of a scroll (order-preserving bijection).
pub fn rename_base(x: &ParametricScroll, new_names: &[&str]) -> Result<ParametricScroll> {
    let new_vars: Vec<String> = new_names.iter().map(|s| s.to_string()).collect();
    if new_vars.len() != x.base_dim() {
        return Err(Error::Shape("rename_base: variable count mismatch".into()));
    }
    let images: Vec<(String, MultiPoly)> = x
        .base_vars()
        .iter()
        .zip(&new_vars)
        .map(|(old, new)| Ok((old.clone(), MultiPoly::var(&new_vars, new)?)))
        .collect::<Result<_>>()?;
    let m: PolyMatrix = x.classifying().substitute(&images)?;
    let m = m.map(|p| p.remap_superset(&new_vars));
    ParametricScroll::with_rank_check(
        new_vars,
        x.ambient_dim(),
        m,
        x.name().map(String::from),
        &Ctx::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_pass_their_self_check() {
        let ctx = Ctx::default();
        for name in names() {
            let entry = get(name, &ctx);
            assert!(entry.is_ok(), "entry {name} failed: {:?}", entry.err());
        }
    }

    #[test]
    fn unknown_name_is_an_error() {
        let ctx = Ctx::default();
        assert!(get("no_such_scroll", &ctx).is_err());
    }

    #[test]
    fn segre_is_dual_to_veronese_tangent() {
        let ctx = Ctx::default();
        let segre = build("segre_linepairs", &ctx).unwrap().scroll;
        let ver = build("veronese_tangent", &ctx).unwrap().scroll;
        let dual = ver.dual(&ctx).unwrap();
        let identified = rename_base(&segre, &["s", "u"]).unwrap();
        assert!(
            linalg::rowspan_equal(identified.classifying(), dual.classifying(), &ctx).unwrap()
        );
    }
}
