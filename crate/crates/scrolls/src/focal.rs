//! Focal loci of scrolls.
//!
//! Moving a fibre in a base direction `t_a` displaces each fibre point
//! `x · S` by `x · dS/dt_a`; reducing modulo the fibre gives the normal
//! displacement. The focal matrix collects these displacements: one row
//! per base direction, entries linear in the fibre coordinates, written
//! on the coordinates complementary to the echelon pivots of `S`. Its
//! rank-drop locus on a fibre is the focal locus; for a stationary scroll
//! the row images all lie in one `g`-dimensional constant subbundle, the
//! matrix condenses to a square one, and the focal polynomial is its
//! determinant — a hypersurface of degree exactly `g` on the fibre.
//!
//! A scroll has split focus when that hypersurface is a union of distinct
//! relative hyperplanes `f_a = 0`. Detection follows the focal-direction
//! criterion: a base direction `v` is focal iff the entries of `v · F`
//! are all proportional to a single linear form. Candidate directions are
//! left eigenvectors of `F(xi_1) · F(xi_2)^{-1}` at two generic fibre
//! points, found exactly over the rationals; irrational eigenvalues yield
//! an honest "unknown" with a floating-point advisory.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::PolyMatrix;
use crate::poly::{rat_int, MultiPoly, Rat};
use crate::ratmat::RatMatrix;
use crate::scroll::ParametricScroll;

/// Focal matrix, focal polynomial and the derived classification data.
#[derive(Debug, Clone)]
pub struct FocalData {
    /// `g x (N-k)` matrix; row `a` is the reduced normal displacement in
    /// direction `t_a`, entries homogeneous linear in `x0..xk`.
    pub matrix: PolyMatrix,
    /// Ambient columns the matrix entries live on (non-pivot columns of
    /// the classifying echelon).
    pub kept_cols: Vec<usize>,
    /// Rank of the span of the displacement rows over all fibre points.
    pub image_rank: usize,
    /// Basis of that span when it is `g`-dimensional.
    pub image_basis: Option<PolyMatrix>,
    /// The condensed `g x g` matrix, when the image is `g`-dimensional.
    pub condensed: Option<PolyMatrix>,
    /// Focal polynomial: determinant of the condensed matrix when the
    /// focal locus is a fibre hypersurface; otherwise the normalized
    /// product of the nonzero maximal minors, kept for diagnostics.
    pub polynomial: MultiPoly,
    /// Whether the focal locus meets a general fibre in a hypersurface.
    pub hypersurface: bool,
    /// Degree of the focal divisor on a general fibre; 0 when the focal
    /// locus is not a hypersurface.
    pub degree_in_x: usize,
}

/// Compute the focal data of a scroll with positive-dimensional base.
pub fn focal_data(x: &ParametricScroll, ctx: &Ctx) -> Result<FocalData> {
    let g = x.base_dim();
    if g == 0 {
        return Err(Error::precondition(
            "focal_data",
            "base dimension must be positive",
        ));
    }
    let (mats, kept_cols, _) = x.fibre_motion(ctx)?;
    let total_vars = x.total_vars();
    let fvars = x.fibre_vars();
    let width = kept_cols.len();
    let mut rows = Vec::with_capacity(g);
    for d in &mats {
        let mut row = vec![MultiPoly::zero(&total_vars); width];
        for (m, xv) in fvars.iter().enumerate() {
            let xpoly = MultiPoly::var(&total_vars, xv)?;
            for (j, slot) in row.iter_mut().enumerate() {
                let term = &xpoly * &d[(m, j)].remap_superset(&total_vars);
                *slot = &*slot + &term;
            }
        }
        rows.push(row);
    }
    let matrix = PolyMatrix::from_rows(rows);

    // span of the displacement rows over all fibre points: evaluate at the
    // coordinate frame and the all-ones point and stack
    let mut stack: Option<PolyMatrix> = None;
    let mut frame: Vec<Vec<(String, Rat)>> = Vec::new();
    for j in 0..=x.fibre_dim() {
        frame.push(
            fvars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), if i == j { Rat::one() } else { Rat::zero() }))
                .collect(),
        );
    }
    frame.push(fvars.iter().map(|v| (v.clone(), Rat::one())).collect());
    for point in &frame {
        let eval = matrix.substitute_partial(point);
        stack = Some(match stack {
            None => eval,
            Some(s) => s.vstack(&eval)?,
        });
    }
    let stack = stack.unwrap();
    let image_rank = linalg::generic_rank(&stack, ctx)?;

    if image_rank == g {
        let basis = linalg::rref(&stack, ctx)?;
        // every displacement row must lie in the constant-rank image span
        for a in 0..g {
            if !linalg::rowspan_contains(&basis.mat, &matrix.row_matrix(a), ctx)? {
                return Err(Error::internal(
                    "focal_data",
                    "displacement row escapes the image span",
                ));
            }
        }
        let mut cond_rows = Vec::with_capacity(g);
        for a in 0..g {
            let row: Vec<MultiPoly> = basis
                .pivot_cols
                .iter()
                .map(|&c| matrix[(a, c)].clone())
                .collect();
            cond_rows.push(row);
        }
        let condensed = PolyMatrix::from_rows(cond_rows);
        let det = linalg::poly_det(&condensed)?.normalized_units(x.base_vars());
        let hypersurface = !det.is_zero();
        let degree_in_x = if hypersurface {
            det.degree_in(&fvars) as usize
        } else {
            0
        };
        Ok(FocalData {
            matrix,
            kept_cols,
            image_rank,
            image_basis: Some(basis.mat),
            condensed: Some(condensed),
            polynomial: det,
            hypersurface,
            degree_in_x,
        })
    } else {
        // degeneracy locus has codimension > 1 (or the image is thin):
        // no focal hypersurface; report the minor product for diagnostics
        let s = g.min(width);
        let row_sets = subsets(g, s);
        let col_sets = subsets(width, s);
        let mut product = MultiPoly::one(&total_vars);
        let mut any = false;
        for rs in &row_sets {
            for cs in &col_sets {
                let sub_rows: Vec<Vec<MultiPoly>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| matrix[(r, c)].clone()).collect())
                    .collect();
                let d = linalg::poly_det(&PolyMatrix::from_rows(sub_rows))?;
                if !d.is_zero() {
                    product = &product * &d;
                    any = true;
                }
            }
        }
        let polynomial = if any {
            product.normalized_units(x.base_vars())
        } else {
            MultiPoly::zero(&total_vars)
        };
        Ok(FocalData {
            matrix,
            kept_cols,
            image_rank,
            image_basis: None,
            condensed: None,
            polynomial,
            hypersurface: false,
            degree_in_x: 0,
        })
    }
}

/// The focal criterion for stationarity: when the focal locus meets a
/// general fibre in a hypersurface, its degree is at most `dim B`, with
/// equality iff the scroll is stationary. Cross-checked against the
/// direct tangent-space test; disagreement is an internal error.
pub fn stationarity_by_focus(x: &ParametricScroll, ctx: &Ctx) -> Result<bool> {
    let f = focal_data(x, ctx)?;
    if !f.hypersurface {
        return Err(Error::precondition(
            "stationarity_by_focus",
            "focal locus is not a hypersurface on the general fibre",
        ));
    }
    let by_focus = f.degree_in_x == x.base_dim();
    let direct = x.is_stationary(ctx)?;
    if by_focus != direct {
        return Err(Error::internal(
            "stationarity_by_focus",
            format!("focal degree test ({by_focus}) disagrees with the tangent test ({direct})"),
        ));
    }
    Ok(by_focus)
}

/// Build the graph scroll with fibre coordinates `x = (x0..xk)` and
/// ambient coordinates `(x, sum_a c[0][a] f_a(x), ..., sum_a c[N-k-1][a] f_a(x))`.
///
/// `forms` are `m` linear forms in `x0..xk` with polynomial coefficients
/// in the base variables, pairwise non-proportional; `c` is the
/// `(N-k) x m` matrix of graph coefficients. With `c[j][a]` depending on
/// `t_a` only and `forms` constant, direction `t_a` is focal with focal
/// hyperplane `f_a = 0`, and the scroll is stationary with focal
/// polynomial `prod_a f_a`.
pub fn z_construct(
    base_vars: Vec<String>,
    fibre_dim: usize,
    ambient_dim: usize,
    forms: &[MultiPoly],
    c: &PolyMatrix,
    ctx: &Ctx,
) -> Result<ParametricScroll> {
    let m = forms.len();
    let g = base_vars.len();
    let k = fibre_dim;
    if m != g {
        return Err(Error::precondition(
            "z_construct",
            format!("{m} forms for a {g}-dimensional base"),
        ));
    }
    if ambient_dim <= k {
        return Err(Error::precondition(
            "z_construct",
            "ambient dimension must exceed the fibre dimension",
        ));
    }
    let width = ambient_dim - k;
    if c.rows() != width || c.cols() != m {
        return Err(Error::Shape(format!(
            "coefficient matrix is {}x{}, expected {}x{}",
            c.rows(),
            c.cols(),
            width,
            m
        )));
    }
    let xvars: Vec<String> = (0..=k).map(|i| format!("x{i}")).collect();
    let mut coeff_rows = Vec::with_capacity(m);
    for f in forms {
        let coeffs = f.decompose_linear(&xvars).ok_or_else(|| {
            Error::precondition("z_construct", format!("`{f}` is not linear in x0..x{k}"))
        })?;
        coeff_rows.push(
            coeffs
                .into_iter()
                .map(|p| p.remap_superset(&base_vars))
                .collect::<Vec<_>>(),
        );
    }
    // pairwise non-proportional forms
    for a in 0..m {
        for b in a + 1..m {
            let pair = PolyMatrix::from_rows(vec![coeff_rows[a].clone(), coeff_rows[b].clone()]);
            if linalg::generic_rank(&pair, ctx)? < 2 {
                return Err(Error::precondition(
                    "z_construct",
                    format!("forms {a} and {b} are proportional"),
                ));
            }
        }
    }
    // classifying matrix [ I | W^T ], W[j][i] = sum_a c[j][a] * B[a][i]
    let mut rows = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let mut row = Vec::with_capacity(ambient_dim + 1);
        for j in 0..=k {
            row.push(MultiPoly::constant(
                &base_vars,
                if i == j { Rat::one() } else { Rat::zero() },
            ));
        }
        for j in 0..width {
            let mut acc = MultiPoly::zero(&base_vars);
            for a in 0..m {
                acc = &acc + &(&c[(j, a)].remap_superset(&base_vars) * &coeff_rows[a][i]);
            }
            row.push(acc);
        }
        rows.push(row);
    }
    ParametricScroll::new(
        base_vars,
        ambient_dim,
        PolyMatrix::from_rows(rows),
        None,
        ctx,
    )
}

/// Exact split-focus verdict at a generic base point.
#[derive(Debug, Clone)]
pub enum SplitVerdict {
    Split(SplitData),
    /// Certified not a union of distinct hyperplanes over the rationals.
    NonSplit { reason: String },
    /// Could not be decided exactly (irrational eigen-directions or
    /// infeasible coefficient factorization); advisory lines carry the
    /// floating-point picture at tolerance 1e-9.
    Unknown { reason: String, advisory: Vec<String> },
}

/// Witness data for a split focus, all at one sampled base point.
#[derive(Debug, Clone)]
pub struct SplitData {
    /// The focal hyperplane forms, primitive and canonically ordered.
    pub forms: Vec<MultiPoly>,
    /// Focal base directions, matched to `forms`.
    pub directions: Vec<Vec<Rat>>,
    /// Kept-column profiles (the `c`-columns), matched to `forms`.
    pub column_profiles: Vec<Vec<Rat>>,
    /// The base point everything was computed at.
    pub base_point: Vec<(String, Rat)>,
}

/// Detect whether the focal hypersurface splits into distinct relative
/// hyperplanes, working at a seeded generic base point.
pub fn split_focus_detect(x: &ParametricScroll, ctx: &Ctx) -> Result<SplitVerdict> {
    split_focus_detect_at(x, ctx, None)
}

/// As `split_focus_detect`, optionally at a caller-fixed base point.
pub fn split_focus_detect_at(
    x: &ParametricScroll,
    ctx: &Ctx,
    base_point: Option<&[(String, Rat)]>,
) -> Result<SplitVerdict> {
    if !x.is_stationary(ctx)? {
        return Err(Error::NonStationary {
            op: "split_focus_detect".into(),
        });
    }
    let focal = focal_data(x, ctx)?;
    if !focal.hypersurface {
        return Err(Error::precondition(
            "split_focus_detect",
            "focal locus is not a hypersurface on the general fibre",
        ));
    }
    let g = x.base_dim();
    let fvars = x.fibre_vars();

    // base point where the focal polynomial stays a nonzero form in x
    let t0: Vec<(String, Rat)> = match base_point {
        Some(p) => {
            let spec = focal.polynomial.substitute_partial(p);
            if spec.is_zero() {
                return Err(Error::precondition(
                    "split_focus_detect",
                    "focal polynomial vanishes at the supplied base point",
                ));
            }
            p.to_vec()
        }
        None => {
            let mut found = None;
            for attempt in 0..ctx.samples {
                let p = linalg::sample_point(x.base_vars(), ctx, "split_detect", attempt as u64);
                if !focal.polynomial.substitute_partial(&p).is_zero()
                    && x.fibre_at(&p).is_ok()
                {
                    found = Some(p);
                    break;
                }
            }
            found.ok_or(Error::Degenerate {
                op: "split_focus_detect".into(),
                attempts: ctx.samples,
            })?
        }
    };

    let f0 = focal.matrix.substitute_partial(&t0);
    let poly0 = focal.polynomial.substitute_partial(&t0).normalized_units(&[]);

    if g == 1 {
        let (gamma, fvec) = match rank_one_split(&coefficient_matrix(&f0.row_matrix(0), &fvars)?) {
            Some(v) => v,
            None => {
                return Err(Error::internal(
                    "split_focus_detect",
                    "single-direction focal row is not rank one",
                ))
            }
        };
        let form = form_from_coeffs(&fvars, &fvec);
        return Ok(SplitVerdict::Split(SplitData {
            forms: vec![form],
            directions: vec![vec![Rat::one()]],
            column_profiles: vec![gamma],
            base_point: t0,
        }));
    }

    let condensed = focal
        .condensed
        .as_ref()
        .expect("hypersurface implies condensed")
        .substitute_partial(&t0);

    // two generic fibre samples with invertible specializations
    let mut pair = None;
    for attempt in 0..ctx.samples * 4 {
        let mut rng = ctx.rng_for("split_fibre_samples", attempt as u64);
        let xi1: Vec<(String, Rat)> = fvars
            .iter()
            .map(|v| (v.clone(), Ctx::random_small_int(&mut rng, 9)))
            .collect();
        let xi2: Vec<(String, Rat)> = fvars
            .iter()
            .map(|v| (v.clone(), Ctx::random_small_int(&mut rng, 9)))
            .collect();
        let a1 = condensed.evaluate_rat(&xi1)?;
        let a2 = condensed.evaluate_rat(&xi2)?;
        if !a1.det().is_zero() && !a2.det().is_zero() {
            pair = Some((a1, a2));
            break;
        }
    }
    let Some((a1, a2)) = pair else {
        return Err(Error::Degenerate {
            op: "split_focus_detect".into(),
            attempts: ctx.samples * 4,
        });
    };

    let w = a1.matmul(&inverse(&a2).expect("nonzero determinant"));
    let charpoly = w.charpoly();
    let (roots, complete) = rational_roots(&charpoly);

    let mut directions: Vec<Vec<Rat>> = Vec::new();
    for (lambda, _mult) in &roots {
        // left eigenvectors: kernel of (W - lambda I)^T
        let mut shifted = w.clone();
        for i in 0..g {
            let v = &shifted[(i, i)] - lambda;
            shifted[(i, i)] = v;
        }
        let kern = shifted.transpose().kernel();
        for r in 0..kern.rows() {
            directions.push(kern.row(r).to_vec());
        }
    }

    if directions.len() < g {
        // not enough rational eigen-directions: certify or admit defeat
        return Ok(non_split_certificate(&poly0, &fvars, &charpoly, complete));
    }
    if directions.len() > g || RatMatrix::from_rows(directions.clone()).rank() != g {
        return Ok(SplitVerdict::Unknown {
            reason: "rational eigen-directions do not form a basis".into(),
            advisory: charpoly_advisory(&charpoly),
        });
    }

    // verify each direction is focal: v·F has rank-one coefficients
    let mut forms = Vec::with_capacity(g);
    let mut profiles = Vec::with_capacity(g);
    for v in &directions {
        let mut row = PolyMatrix::zero(&fvars, 1, f0.cols());
        for (a, coef) in v.iter().enumerate() {
            for j in 0..f0.cols() {
                let term = f0[(a, j)].scale(coef);
                row[(0, j)] = &row[(0, j)] + &term;
            }
        }
        let cmat = coefficient_matrix(&row, &fvars)?;
        match rank_one_split(&cmat) {
            Some((gamma, fvec)) => {
                forms.push(form_from_coeffs(&fvars, &fvec));
                profiles.push(gamma);
            }
            None => {
                return Ok(SplitVerdict::Unknown {
                    reason: "an eigen-direction failed the rank-one verification".into(),
                    advisory: charpoly_advisory(&charpoly),
                });
            }
        }
    }

    // distinctness of the hyperplanes
    for a in 0..g {
        for b in a + 1..g {
            let pair = PolyMatrix::from_rows(vec![
                vec![forms[a].clone()],
                vec![forms[b].clone()],
            ]);
            let stack = coefficient_matrix(&pair.row_matrix(0), &fvars)?
                .vstack(&coefficient_matrix(&pair.row_matrix(1), &fvars)?);
            if stack.rank() < 2 {
                return Ok(SplitVerdict::NonSplit {
                    reason: "focal hyperplanes are not distinct".into(),
                });
            }
        }
    }

    // the product of the detected forms must be the focal polynomial
    let mut product = MultiPoly::one(&fvars);
    for f in &forms {
        product = &product * f;
    }
    if product.normalized_units(&[]) != poly0 {
        return Err(Error::internal(
            "split_focus_detect",
            "product of detected forms differs from the focal polynomial",
        ));
    }

    // canonical order
    let mut paired: Vec<(MultiPoly, Vec<Rat>, Vec<Rat>)> = forms
        .into_iter()
        .zip(directions)
        .zip(profiles)
        .map(|((f, d), p)| (f, d, p))
        .collect();
    paired.sort_by_key(|(f, _, _)| f.to_string());
    let (forms, directions, profiles) = paired.into_iter().fold(
        (Vec::new(), Vec::new(), Vec::new()),
        |(mut fs, mut ds, mut ps), (f, d, p)| {
            fs.push(f);
            ds.push(d);
            ps.push(p);
            (fs, ds, ps)
        },
    );
    Ok(SplitVerdict::Split(SplitData {
        forms,
        directions,
        column_profiles: profiles,
        base_point: t0,
    }))
}

/// Dual split check: the linear dual of a split-focus stationary scroll
/// is split-focus with the same number of hyperplanes, and its forms cut
/// the hyperplanes determined by the primal column profiles. All checks
/// run at one shared base point.
pub fn dual_split_check(x: &ParametricScroll, ctx: &Ctx) -> Result<bool> {
    if x.fibre_dim() >= x.ambient_dim() {
        return Err(Error::precondition("dual_split_check", "requires k < N"));
    }
    let dual = x.dual(ctx)?;
    // one base point valid for both focal polynomials
    let fx = focal_data(x, ctx)?;
    let fd = focal_data(&dual, ctx)?;
    if !fx.hypersurface || !fd.hypersurface {
        return Err(Error::precondition(
            "dual_split_check",
            "both focal loci must be hypersurfaces",
        ));
    }
    let mut t0 = None;
    for attempt in 0..ctx.samples {
        let p = linalg::sample_point(x.base_vars(), ctx, "dual_split_point", attempt as u64);
        if !fx.polynomial.substitute_partial(&p).is_zero()
            && !fd.polynomial.substitute_partial(&p).is_zero()
            && x.fibre_at(&p).is_ok()
        {
            t0 = Some(p);
            break;
        }
    }
    let Some(t0) = t0 else {
        return Err(Error::Degenerate {
            op: "dual_split_check".into(),
            attempts: ctx.samples,
        });
    };

    let sx = match split_focus_detect_at(x, ctx, Some(&t0))? {
        SplitVerdict::Split(d) => d,
        _ => {
            return Err(Error::precondition(
                "dual_split_check",
                "input scroll is not split-focus",
            ))
        }
    };
    let sd = match split_focus_detect_at(&dual, ctx, Some(&t0))? {
        SplitVerdict::Split(d) => d,
        _ => return Ok(false),
    };
    if sd.forms.len() != sx.forms.len() {
        return Ok(false);
    }

    // column correspondence: each primal column profile determines the
    // hyperplane {y in F^perp : sum_j gamma_j y_kept_j = 0}; the dual
    // forms must cut exactly these hyperplanes
    let k_dual = dual.classifying().evaluate_rat(&t0)?;
    let n1 = x.ambient_dim() + 1;
    let mut expected: Vec<RatMatrix> = Vec::new();
    for gamma in &sx.column_profiles {
        let mut cov = vec![Rat::zero(); n1];
        for (j, &col) in fx.kept_cols.iter().enumerate() {
            cov[col] = gamma[j].clone();
        }
        // kernel of K(t0) · cov^T inside u-space, pushed into P^N
        let kc = k_dual.matmul(&RatMatrix::from_rows(vec![cov]).transpose());
        let kern = kc.transpose().kernel();
        expected.push(kern.matmul(&k_dual));
    }
    let dual_fvars = dual.fibre_vars();
    let mut detected: Vec<RatMatrix> = Vec::new();
    for phi in &sd.forms {
        let coeffs = phi
            .decompose_linear(&dual_fvars)
            .expect("detected dual form is linear");
        let row: Vec<Rat> = coeffs
            .iter()
            .map(|p| p.as_constant().expect("constant coefficients at a point"))
            .collect();
        let kern = RatMatrix::from_rows(vec![row]).kernel();
        detected.push(kern.matmul(&k_dual));
    }
    // perfect matching between expected and detected hyperplanes
    let mut used = vec![false; detected.len()];
    for e in &expected {
        let mut hit = false;
        for (i, d) in detected.iter().enumerate() {
            if used[i] {
                continue;
            }
            if rat_rowspan_equal(e, d) {
                used[i] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rat_rowspan_equal(a: &RatMatrix, b: &RatMatrix) -> bool {
    let ra = a.rank();
    if ra != b.rank() {
        return false;
    }
    a.vstack(b).rank() == ra
}

/// Coefficient matrix of a row of x-linear entries: `(cols x x-vars)`,
/// entries rational (the row must have constant coefficients).
fn coefficient_matrix(row: &PolyMatrix, xvars: &[String]) -> Result<RatMatrix> {
    let mut rows = Vec::with_capacity(row.cols());
    for j in 0..row.cols() {
        let p = &row[(0, j)];
        if p.is_zero() {
            rows.push(vec![Rat::zero(); xvars.len()]);
            continue;
        }
        let coeffs = p.decompose_linear(xvars).ok_or_else(|| {
            Error::internal("coefficient_matrix", "entry is not linear in the fibre variables")
        })?;
        rows.push(
            coeffs
                .iter()
                .map(|c| {
                    c.as_constant().ok_or_else(|| {
                        Error::internal("coefficient_matrix", "coefficient is not constant")
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(RatMatrix::from_rows(rows))
}

/// Split a rank-one rational matrix `C = gamma · f^T` into its column
/// profile `gamma` (length rows) and row profile `f` (length cols), both
/// primitive with positive leading entry. `None` if the rank is not 1.
fn rank_one_split(c: &RatMatrix) -> Option<(Vec<Rat>, Vec<Rat>)> {
    if c.rank() != 1 {
        return None;
    }
    let r0 = (0..c.rows()).find(|&i| c.row(i).iter().any(|v| !v.is_zero()))?;
    let f = primitive(c.row(r0));
    let i0 = f.iter().position(|v| !v.is_zero())?;
    let gamma: Vec<Rat> = (0..c.rows()).map(|i| &c[(i, i0)] / &f[i0]).collect();
    Some((primitive(&gamma), f))
}

/// Scale a rational vector to a primitive integer vector with positive
/// first nonzero entry.
fn primitive(v: &[Rat]) -> Vec<Rat> {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in v {
        if !c.is_zero() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    if num_gcd.is_zero() {
        return v.to_vec();
    }
    let mut scale = Rat::new(den_lcm, num_gcd);
    if let Some(first) = v.iter().find(|c| !c.is_zero()) {
        if (first * &scale).is_negative() {
            scale = -scale;
        }
    }
    v.iter().map(|c| c * &scale).collect()
}

fn form_from_coeffs(xvars: &[String], coeffs: &[Rat]) -> MultiPoly {
    let mut acc = MultiPoly::zero(xvars);
    for (i, c) in coeffs.iter().enumerate() {
        let term = MultiPoly::var(xvars, &xvars[i]).unwrap().scale(c);
        acc = &acc + &term;
    }
    acc
}

fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows();
    let mut aug_rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = m.row(i).to_vec();
        for j in 0..n {
            row.push(if i == j { Rat::one() } else { Rat::zero() });
        }
        aug_rows.push(row);
    }
    let (rr, pivots) = RatMatrix::from_rows(aug_rows).rref();
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    let rows = (0..n).map(|i| rr.row(i)[n..].to_vec()).collect();
    Some(RatMatrix::from_rows(rows))
}

/// All rational roots of the polynomial with the given coefficients
/// (constant term first), with multiplicities. The boolean is true when
/// the divisor enumeration was exhaustive, so the list is provably all
/// rational roots.
fn rational_roots(coeffs: &[Rat]) -> (Vec<(Rat, usize)>, bool) {
    // clear to a primitive integer polynomial
    let mut den_lcm = BigInt::one();
    for c in coeffs {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    while ints.last().map(|c| c.is_zero()).unwrap_or(false) {
        ints.pop();
    }
    if ints.len() <= 1 {
        return (Vec::new(), true);
    }
    let mut roots: Vec<(Rat, usize)> = Vec::new();
    // zero roots
    let mut zero_mult = 0;
    while ints.first().map(|c| c.is_zero()).unwrap_or(false) {
        ints.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
    }
    if ints.len() <= 1 {
        return (roots, true);
    }
    let (p_divs, p_complete) = divisors(&ints[0].abs());
    let (q_divs, q_complete) = divisors(&ints[ints.len() - 1].abs());
    let complete = p_complete && q_complete;
    let eval = |poly: &[Rat], r: &Rat| -> Rat {
        let mut acc = Rat::zero();
        for c in poly.iter().rev() {
            acc = &acc * r + c;
        }
        acc
    };
    let mut poly: Vec<Rat> = ints.iter().map(|c| Rat::from_integer(c.clone())).collect();
    'outer: for p in &p_divs {
        for q in &q_divs {
            for sign in [1i64, -1] {
                if poly.len() <= 1 {
                    break 'outer;
                }
                let cand = Rat::new(p * BigInt::from(sign), q.clone());
                let mut mult = 0;
                while poly.len() > 1 && eval(&poly, &cand).is_zero() {
                    poly = deflate(&poly, &cand);
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((cand, mult));
                }
            }
        }
    }
    (roots, complete)
}

/// Divide by `(x - r)`, assuming `r` is a root.
fn deflate(poly: &[Rat], r: &Rat) -> Vec<Rat> {
    let n = poly.len();
    let mut out = vec![Rat::zero(); n - 1];
    let mut carry = poly[n - 1].clone();
    for i in (1..n).rev() {
        out[i - 1] = carry.clone();
        if i >= 2 {
            carry = &poly[i - 1] + &(&carry * r);
        }
    }
    out
}

/// Positive divisors via trial division up to a fixed bound; the boolean
/// reports whether the factorization was complete.
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    if n.is_zero() {
        return (vec![BigInt::one()], true);
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut d = BigInt::from(2u32);
    let bound = BigInt::from(1_000_000u64);
    while &d * &d <= m && d <= bound {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += 1u32;
    }
    let mut complete = true;
    if m > BigInt::one() {
        if m <= &bound * &bound {
            // remaining cofactor is prime (no factor below its square root)
            factors.push((m.clone(), 1));
        } else {
            factors.push((m.clone(), 1));
            complete = false;
        }
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in &factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d0 in &divs {
            let mut pe = BigInt::one();
            for _ in 0..=*e {
                next.push(d0 * &pe);
                pe *= p;
                if next.len() > 4096 {
                    return (next, false);
                }
            }
        }
        divs = next;
    }
    (divs, complete)
}

/// Certify non-splitness of a degree-two focal polynomial over the
/// rationals, or return the honest unknown verdict.
fn non_split_certificate(
    poly0: &MultiPoly,
    xvars: &[String],
    charpoly: &[Rat],
    factoring_complete: bool,
) -> SplitVerdict {
    let advisory = charpoly_advisory(charpoly);
    if !factoring_complete {
        return SplitVerdict::Unknown {
            reason: "coefficient factorization infeasible for the eigenvalue search".into(),
            advisory,
        };
    }
    let deg = poly0.degree_in(xvars);
    if deg == 2 {
        if let Some(q) = quadratic_form_matrix(poly0, xvars) {
            let rank = q.rank();
            if rank >= 3 {
                return SplitVerdict::NonSplit {
                    reason: "focal polynomial is an irreducible quadric of rank >= 3".into(),
                };
            }
            if rank == 1 {
                return SplitVerdict::NonSplit {
                    reason: "focal polynomial is a repeated hyperplane (non-reduced focus)".into(),
                };
            }
            if rank == 2 {
                if let Some(disc) = rank_two_discriminant(&q) {
                    if rat_sqrt(&disc).is_none() {
                        return SplitVerdict::NonSplit {
                            reason: "focal polynomial is irreducible over Q \
                                     (splits only over a quadratic extension)"
                                .into(),
                        };
                    }
                }
            }
        }
    }
    SplitVerdict::Unknown {
        reason: "eigen-directions are irrational at the sample".into(),
        advisory,
    }
}

/// Symmetric matrix of a quadratic form with rational coefficients.
fn quadratic_form_matrix(p: &MultiPoly, xvars: &[String]) -> Option<RatMatrix> {
    let n = xvars.len();
    let mut q = RatMatrix::zero(n, n);
    let idx: Vec<usize> = (0..n).collect();
    for (mono, coef) in p.terms() {
        let mut support: Vec<(usize, u32)> = Vec::new();
        for (i, &e) in mono.0.iter().enumerate() {
            if e > 0 {
                let pos = p.vars().get(i)?;
                let j = xvars.iter().position(|v| v == pos)?;
                support.push((idx[j], e));
            }
        }
        match support.as_slice() {
            [(i, 2)] => {
                let v = &q[(*i, *i)] + coef;
                q[(*i, *i)] = v;
            }
            [(i, 1), (j, 1)] => {
                let half = coef / rat_int(2);
                let v = &q[(*i, *j)] + &half;
                q[(*i, *j)] = v;
                let w = &q[(*j, *i)] + &half;
                q[(*j, *i)] = w;
            }
            _ => return None,
        }
    }
    Some(q)
}

/// `-det` of a nonsingular 2x2 principal submatrix of a rank-2 symmetric
/// matrix; the form splits over Q iff this is a rational square.
fn rank_two_discriminant(q: &RatMatrix) -> Option<Rat> {
    let n = q.rows();
    for i in 0..n {
        for j in i + 1..n {
            let det = &(&q[(i, i)] * &q[(j, j)]) - &(&q[(i, j)] * &q[(j, i)]);
            if !det.is_zero() {
                return Some(-det);
            }
        }
    }
    None
}

/// Exact square root of a nonnegative rational, if it is a square.
fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Approximate roots of the characteristic polynomial (Durand-Kerner),
/// reported to advisory precision 1e-9. Never used for exact claims.
fn charpoly_advisory(coeffs: &[Rat]) -> Vec<String> {
    let to_f64 = |r: &Rat| -> f64 {
        let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
        n / d
    };
    let c: Vec<f64> = coeffs.iter().map(to_f64).collect();
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|v| v / lead).collect();
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0f64, 0.0f64);
        for k in (0..=n).rev() {
            let re = acc.0 * z.0 - acc.1 * z.1 + monic[k];
            let im = acc.0 * z.1 + acc.1 * z.0;
            acc = (re, im);
        }
        acc
    };
    let mut roots: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            (1.2 * ang.cos(), 1.2 * ang.sin())
        })
        .collect();
    for _ in 0..200 {
        let prev = roots.clone();
        for i in 0..n {
            let mut denom = (1.0f64, 0.0f64);
            for j in 0..n {
                if i != j {
                    let d = (prev[i].0 - prev[j].0, prev[i].1 - prev[j].1);
                    denom = (
                        denom.0 * d.0 - denom.1 * d.1,
                        denom.0 * d.1 + denom.1 * d.0,
                    );
                }
            }
            let v = eval(prev[i]);
            let norm = denom.0 * denom.0 + denom.1 * denom.1;
            if norm > 0.0 {
                roots[i] = (
                    prev[i].0 - (v.0 * denom.0 + v.1 * denom.1) / norm,
                    prev[i].1 - (v.1 * denom.0 - v.0 * denom.1) / norm,
                );
            }
        }
    }
    roots
        .iter()
        .map(|(re, im)| {
            if im.abs() < 1e-9 {
                format!("approx eigenvalue {re:.9}")
            } else {
                format!("approx eigenvalue {re:.9} + {im:.9}i")
            }
        })
        .collect()
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
mod tests {
    use super::*;
    use crate::matrix::matrix_from_strs;
    use crate::poly::vars;
    use crate::scroll::test_fixtures::*;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    fn z_standard_split(c: &Ctx) -> ParametricScroll {
        // m = 2, k = 1, N = 4, forms x0 and x1, graph coefficients
        // c[j][a] = integer * t_a
        let base = vars(&["t1", "t2"]);
        let xv = vars(&["x0", "x1"]);
        let forms = vec![
            MultiPoly::var(&xv, "x0").unwrap(),
            MultiPoly::var(&xv, "x1").unwrap(),
        ];
        let cmat = matrix_from_strs(
            &base,
            &[&["2*t1", "t2"], &["t1", "3*t2"], &["-t1", "t2"]],
        )
        .unwrap();
        z_construct(base, 1, 4, &forms, &cmat, c).unwrap()
    }

    #[test]
    fn focal_of_twisted_cubic_tangent() {
        let c = ctx();
        let f = focal_data(&twisted_cubic_tangent(&c), &c).unwrap();
        assert!(f.hypersurface);
        assert_eq!(f.image_rank, 1);
        assert_eq!(f.degree_in_x, 1);
        let xv = vars(&["x1"]);
        let x1 = MultiPoly::var(&xv, "x1").unwrap();
        assert_eq!(f.polynomial, x1);
    }

    #[test]
    fn focal_of_quadric_ruling_is_not_a_hypersurface() {
        let c = ctx();
        let f = focal_data(&quadric_ruling(&c), &c).unwrap();
        assert!(!f.hypersurface);
        assert_eq!(f.degree_in_x, 0);
        assert_eq!(f.image_rank, 2);
    }

    #[test]
    fn focal_of_cone() {
        let c = ctx();
        let f = focal_data(&cone_over_twisted_cubic(&c), &c).unwrap();
        assert!(f.hypersurface);
        assert_eq!(f.degree_in_x, 1);
    }

    #[test]
    fn focal_zero_locus_is_the_antiderived_fibre() {
        let c = ctx();
        let x = twisted_cubic_tangent(&c);
        let f = focal_data(&x, &c).unwrap();
        let kern = x.antiderived_kernel(&c).unwrap();
        assert_eq!(kern.rows(), 1);
        // substitute the kernel section into the focal matrix: identically 0
        let fvars = x.fibre_vars();
        let subs: Vec<(String, MultiPoly)> = fvars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), kern[(0, i)].clone()))
            .chain(
                x.base_vars()
                    .iter()
                    .map(|v| (v.clone(), MultiPoly::var(x.base_vars(), v).unwrap())),
            )
            .collect();
        let plugged = f.matrix.substitute(&subs).unwrap();
        assert!(plugged.is_zero());
    }

    #[test]
    fn stationarity_by_focus_matches_direct_test() {
        let c = ctx();
        assert!(stationarity_by_focus(&twisted_cubic_tangent(&c), &c).unwrap());
        assert!(stationarity_by_focus(&cone_over_twisted_cubic(&c), &c).unwrap());
        // quadric ruling: focal locus empty on the general fibre
        assert!(matches!(
            stationarity_by_focus(&quadric_ruling(&c), &c),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn z_construct_split_instance() {
        let c = ctx();
        let z = z_standard_split(&c);
        assert_eq!(z.base_dim(), 2);
        assert_eq!(z.fibre_dim(), 1);
        assert_eq!(z.ambient_dim(), 4);
        assert!(z.is_stationary(&c).unwrap());
        let f = focal_data(&z, &c).unwrap();
        assert!(f.hypersurface);
        assert_eq!(f.degree_in_x, 2);
        let xv = vars(&["x0", "x1"]);
        let expected = &MultiPoly::var(&xv, "x0").unwrap() * &MultiPoly::var(&xv, "x1").unwrap();
        assert_eq!(f.polynomial.normalized_units(&[]), expected);
    }

    #[test]
    fn z_construct_surface_example() {
        let c = ctx();
        // m = 1, k = 1, N = 3, f = x1, graph coefficients (t, t^2)
        let base = vars(&["t"]);
        let xv = vars(&["x0", "x1"]);
        let forms = vec![MultiPoly::var(&xv, "x1").unwrap()];
        let cmat = matrix_from_strs(&base, &[&["t"], &["t^2"]]).unwrap();
        let z = z_construct(base, 1, 3, &forms, &cmat, &c).unwrap();
        assert!(z.is_stationary(&c).unwrap());
        let f = focal_data(&z, &c).unwrap();
        assert_eq!(f.degree_in_x, 1);
        assert_eq!(
            f.polynomial,
            MultiPoly::var(&vars(&["x1"]), "x1").unwrap()
        );
    }

    #[test]
    fn z_construct_rejects_degenerate_data() {
        let c = ctx();
        let base = vars(&["t1", "t2"]);
        let xv = vars(&["x0", "x1"]);
        let forms = vec![
            MultiPoly::var(&xv, "x0").unwrap(),
            MultiPoly::var(&xv, "x1").unwrap(),
        ];
        let zeros = matrix_from_strs(&base, &[&["0", "0"], &["0", "0"], &["0", "0"]]).unwrap();
        assert!(z_construct(base.clone(), 1, 4, &forms, &zeros, &c).is_err());
        // proportional forms
        let cmat =
            matrix_from_strs(&base, &[&["t1", "t2"], &["t1", "t2"], &["t1", "t2"]]).unwrap();
        let same = vec![
            MultiPoly::var(&xv, "x0").unwrap(),
            MultiPoly::var(&xv, "x0").unwrap().scale(&rat_int(2)),
        ];
        assert!(z_construct(base, 1, 4, &same, &cmat, &c).is_err());
    }

    #[test]
    fn split_detection_roundtrip() {
        let c = ctx();
        let z = z_standard_split(&c);
        match split_focus_detect(&z, &c).unwrap() {
            SplitVerdict::Split(data) => {
                assert_eq!(data.forms.len(), 2);
                let strs: Vec<String> = data.forms.iter().map(|f| f.to_string()).collect();
                assert_eq!(strs, vec!["x0".to_string(), "x1".to_string()]);
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn split_detection_single_direction() {
        let c = ctx();
        match split_focus_detect(&twisted_cubic_tangent(&c), &c).unwrap() {
            SplitVerdict::Split(data) => {
                assert_eq!(data.forms.len(), 1);
                assert_eq!(data.forms[0].to_string(), "x1");
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn repeated_hyperplane_is_not_split() {
        let c = ctx();
        // tangent scroll of a planar-profile surface: focus x0^2
        let vs = vars(&["t1", "t2"]);
        let m = matrix_from_strs(&vs, &[&["1", "t1", "t2", "t1^2", "t2^2"]]).unwrap();
        let surf = ParametricScroll::new(vs, 4, m, None, &c).unwrap();
        match split_focus_detect(&surf, &c).unwrap() {
            SplitVerdict::NonSplit { reason } => {
                assert!(reason.contains("distinct") || reason.contains("repeated"));
            }
            other => panic!("expected non-split, got {other:?}"),
        }
    }

    #[test]
    fn irreducible_conic_focus_is_non_split() {
        let c = ctx();
        // general filling scroll {(t, [x, sum t_i f_i, sum t_i f'_i])}:
        // its focal conic f1 f2' - f2 f1' is irreducible for generic forms
        let base = vars(&["t1", "t2"]);
        let xv = vars(&["x0", "x1"]);
        let x0 = MultiPoly::var(&xv, "x0").unwrap();
        let x1 = MultiPoly::var(&xv, "x1").unwrap();
        let f1 = &x0 + &x1;
        let f2 = &x0 - &x1.scale(&rat_int(2));
        let f1p = &x0.scale(&rat_int(3)) + &x1;
        let f2p = &x0 + &x1.scale(&rat_int(5));
        let cmat = matrix_from_strs(&base, &[&["t1", "t2"], &["t1", "t2"]]).unwrap();
        // build the graph scroll row by row: W[j][i] = sum_a c[j][a] B[a][i]
        // with B rows the coefficient vectors of (f1, f2) for j = 0 and
        // (f1', f2') for j = 1
        let forms_by_col = [[&f1, &f2], [&f1p, &f2p]];
        let mut rows = Vec::new();
        for i in 0..2usize {
            let mut row = vec![
                MultiPoly::zero(&base),
                MultiPoly::zero(&base),
                MultiPoly::zero(&base),
                MultiPoly::zero(&base),
            ];
            row[i] = MultiPoly::one(&base);
            for j in 0..2usize {
                let mut acc = MultiPoly::zero(&base);
                for a in 0..2usize {
                    let coeff = forms_by_col[j][a]
                        .decompose_linear(&xv)
                        .unwrap()
                        .remove(i);
                    acc = &acc + &(&cmat[(j, a)] * &coeff.remap_superset(&base));
                }
                row[2 + j] = acc;
            }
            rows.push(row);
        }
        let z = ParametricScroll::new(base, 3, PolyMatrix::from_rows(rows), None, &c).unwrap();
        assert!(z.is_stationary(&c).unwrap());
        let f = focal_data(&z, &c).unwrap();
        assert!(f.hypersurface);
        assert_eq!(f.degree_in_x, 2);
        match split_focus_detect(&z, &c).unwrap() {
            SplitVerdict::NonSplit { .. } => {}
            other => panic!("expected non-split, got {other:?}"),
        }
    }

    #[test]
    fn dual_split_checks() {
        let c = ctx();
        assert!(dual_split_check(&z_standard_split(&c), &c).unwrap());
        assert!(dual_split_check(&twisted_cubic_tangent(&c), &c).unwrap());
        // non-split input is a precondition error
        let vs = vars(&["t1", "t2"]);
        let m = matrix_from_strs(&vs, &[&["1", "t1", "t2", "t1^2", "t2^2"]]).unwrap();
        let surf = ParametricScroll::new(vs, 4, m, None, &c).unwrap();
        assert!(matches!(
            dual_split_check(&surf, &c),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn rational_root_extraction() {
        // (x - 2)(x + 3/2)(x - 1/5): roots 2, -3/2, 1/5
        let coeffs = vec![
            crate::poly::rat(3, 5),
            crate::poly::rat(-29, 10),
            crate::poly::rat(-7, 10),
            rat_int(1),
        ];
        let (roots, complete) = rational_roots(&coeffs);
        assert!(complete);
        let mut vals: Vec<Rat> = roots.iter().map(|(r, _)| r.clone()).collect();
        vals.sort();
        assert_eq!(
            vals,
            vec![crate::poly::rat(-3, 2), crate::poly::rat(1, 5), rat_int(2)]
        );
    }
}
