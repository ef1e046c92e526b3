//! Gaussian flags: the nested chains obtained by iterating the derived
//! scroll upward and the antiderived scroll downward from a given scroll.
//!
//! The downward iteration stops at the empty scroll or at a constant
//! (linear-subspace) bottom, which is the cone case. The upward iteration
//! stops at the first member whose spread is a linear subspace — that
//! member still belongs to the flag; the constant scroll of the span
//! itself does not, unless it is that first member.

use crate::classify::constant_to_matrix;
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::linalg;
use crate::ratmat::RatMatrix;
use crate::scroll::ParametricScroll;

/// A maximal Gaussian flag over a fixed base chart.
#[derive(Debug, Clone)]
pub struct GaussianFlag {
    /// Strictly nested members, smallest fibre first.
    pub members: Vec<ParametricScroll>,
    /// Position of the scroll the flag was grown from.
    pub pivot_index: usize,
    /// Number of antiderived steps below the pivot.
    pub index_m: usize,
    /// Steps from the pivot to the first member whose spread is linear.
    pub coindex_l: usize,
    /// Fibre dimension of each member. The spread dimension of a member
    /// equals the fibre dimension of the next, so this sequence carries
    /// the osculating dimension data of the flag.
    pub osc_dims: Vec<usize>,
}

impl GaussianFlag {
    pub fn bottom(&self) -> &ParametricScroll {
        &self.members[0]
    }

    pub fn top(&self) -> &ParametricScroll {
        self.members.last().unwrap()
    }
}

/// Extend a scroll both ways to its uniquely determined maximal flag.
///
/// The construction is pure linear algebra (jet spans upward, fibre-motion
/// kernels downward); for stationary scrolls the members are exactly the
/// derived and antiderived iterates.
pub fn maximal_flag(x: &ParametricScroll, ctx: &Ctx) -> Result<GaussianFlag> {
    let span_rank = x.linear_span(ctx)?.rows();

    // downward: antiderived iterates until empty or a constant fixpoint
    let mut below: Vec<ParametricScroll> = Vec::new();
    let mut cur = x.clone();
    loop {
        match cur.antiderived_matrix(ctx)? {
            None => break,
            Some(m) => {
                if m.rows() >= cur.fibre_dim() + 1 {
                    // fixpoint: every fibre point is first-order immobile,
                    // i.e. the span is constant; the chain stops here
                    break;
                }
                let member = ParametricScroll::with_rank_check(
                    x.base_vars().to_vec(),
                    x.ambient_dim(),
                    m,
                    None,
                    ctx,
                )?;
                below.push(member.clone());
                cur = member;
            }
        }
    }
    below.reverse();

    // upward: jet spans until the spread is a linear subspace
    let mut above: Vec<ParametricScroll> = Vec::new();
    let mut cur = x.clone();
    loop {
        if cur.spread_dim(ctx)? + 1 == span_rank {
            break;
        }
        let m = cur.derived_matrix(ctx)?;
        if m.rows() == cur.fibre_dim() + 1 {
            return Err(Error::internal(
                "maximal_flag",
                "derivation stalled before reaching the linear span",
            ));
        }
        let member = ParametricScroll::with_rank_check(
            x.base_vars().to_vec(),
            x.ambient_dim(),
            m,
            None,
            ctx,
        )?;
        above.push(member.clone());
        cur = member;
    }

    let mut members = below;
    let pivot_index = members.len();
    members.push(x.clone());
    let coindex_l = above.len();
    members.extend(above);
    let index_m = pivot_index;

    // invariants: strict nesting and jet containment
    for w in members.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.fibre_dim() >= b.fibre_dim() {
            return Err(Error::internal(
                "maximal_flag",
                "members are not strictly nested",
            ));
        }
        if !linalg::rowspan_contains(b.classifying(), a.classifying(), ctx)? {
            return Err(Error::internal(
                "maximal_flag",
                "member not contained in successor",
            ));
        }
        if !linalg::rowspan_contains(b.classifying(), &a.jet_stack()?, ctx)? {
            return Err(Error::internal(
                "maximal_flag",
                "first-order jets of a member leave the next member",
            ));
        }
    }

    let osc_dims = members.iter().map(|m| m.fibre_dim()).collect();
    Ok(GaussianFlag {
        members,
        pivot_index,
        index_m,
        coindex_l,
        osc_dims,
    })
}

/// Cone test: a stationary scroll is a cone iff the bottom member of its
/// maximal flag is a constant linear subspace; the witness is the vertex
/// span. A constant scroll counts as a cone with itself as vertex.
pub fn is_cone(x: &ParametricScroll, ctx: &Ctx) -> Result<Option<RatMatrix>> {
    if !x.is_stationary(ctx)? {
        return Err(Error::NonStationary {
            op: "is_cone".into(),
        });
    }
    cone_vertex(x, ctx)
}

/// The cone test without the stationarity gate, for internal use.
pub fn cone_vertex(x: &ParametricScroll, ctx: &Ctx) -> Result<Option<RatMatrix>> {
    let mut cur = x.classifying().clone();
    loop {
        if let Some(basis) = linalg::constant_rowspan(&cur, ctx, "cone_vertex")? {
            return Ok(Some(basis));
        }
        let scroll = ParametricScroll::with_rank_check(
            x.base_vars().to_vec(),
            x.ambient_dim(),
            cur.clone(),
            None,
            ctx,
        )?;
        match scroll.antiderived_matrix(ctx)? {
            None => return Ok(None),
            Some(m) => {
                if m.rows() >= cur.rows() {
                    // a full fibre-motion kernel means a constant span,
                    // which the constant test above would have caught
                    return Err(Error::internal(
                        "cone_vertex",
                        "antiderived fixpoint with non-constant span",
                    ));
                }
                cur = m;
            }
        }
    }
}

/// Vertex as a constant polynomial matrix over the base variables.
pub fn cone_vertex_matrix(
    x: &ParametricScroll,
    ctx: &Ctx,
) -> Result<Option<crate::matrix::PolyMatrix>> {
    Ok(cone_vertex(x, ctx)?.map(|b| constant_to_matrix(x.base_vars(), &b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;
    use crate::scroll::test_fixtures::*;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    #[test]
    fn flag_of_twisted_cubic_tangent() {
        let c = ctx();
        let x = twisted_cubic_tangent(&c);
        let f = maximal_flag(&x, &c).unwrap();
        assert_eq!(f.members.len(), 3);
        assert_eq!(f.pivot_index, 1);
        assert_eq!(f.index_m, 1);
        assert_eq!(f.coindex_l, 1);
        assert_eq!(f.osc_dims, vec![0, 1, 2]);
        // bottom is the curve, top the osculating-plane scroll
        assert!(linalg::rowspan_equal(
            f.bottom().classifying(),
            twisted_cubic_curve(&c).classifying(),
            &c
        )
        .unwrap());
        assert_eq!(f.top().fibre_dim(), 2);
    }

    #[test]
    fn flag_of_curve_is_pure_upward() {
        let c = ctx();
        let x = twisted_cubic_curve(&c);
        let f = maximal_flag(&x, &c).unwrap();
        assert_eq!(f.index_m, 0);
        assert_eq!(f.pivot_index, 0);
        assert_eq!(f.coindex_l, 2);
        assert_eq!(f.osc_dims, vec![0, 1, 2]);
    }

    #[test]
    fn flag_of_cone_has_constant_bottom() {
        let c = ctx();
        let x = cone_over_twisted_cubic(&c);
        let f = maximal_flag(&x, &c).unwrap();
        assert_eq!(f.index_m, 1);
        assert!(f.bottom().classifying().is_constant());
        assert_eq!(f.coindex_l, 2);
    }

    #[test]
    fn cone_detection() {
        let c = ctx();
        let x = cone_over_twisted_cubic(&c);
        let vertex = is_cone(&x, &c).unwrap().expect("is a cone");
        assert_eq!(vertex.rows(), 1);
        // vertex is e4
        assert_eq!(vertex[(0, 4)], rat_int(1));
        for j in 0..4 {
            assert_eq!(vertex[(0, j)], rat_int(0));
        }
        assert!(is_cone(&twisted_cubic_tangent(&c), &c).unwrap().is_none());
    }

    #[test]
    fn constant_scroll_is_a_cone_by_convention() {
        let c = ctx();
        let vs: Vec<String> = Vec::new();
        let m =
            crate::matrix::matrix_from_strs(&vs, &[&["1", "0", "0"], &["0", "1", "0"]]).unwrap();
        let x = ParametricScroll::new(vs, 2, m, None, &c).unwrap();
        let vertex = is_cone(&x, &c).unwrap().expect("cone by convention");
        assert_eq!(vertex.rows(), 2);
    }
}
