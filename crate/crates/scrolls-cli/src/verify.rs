//! The verification suite: duality involution, biduality, the focal
//! degree criterion, and the split-focus round trip, run against a single
//! scroll or the whole catalog.

use serde::Serialize;

use scrolls::focal::{self, SplitVerdict};
use scrolls::{catalog, flag, linalg, Ctx, ParametricScroll, Result};

#[derive(Serialize, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize, Clone)]
pub struct VerifyReport {
    pub entry: Option<String>,
    pub seed: u64,
    pub samples: u32,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn push(checks: &mut Vec<Check>, name: &str, outcome: Result<(bool, String)>) {
    match outcome {
        Ok((pass, detail)) => checks.push(Check {
            name: name.into(),
            pass,
            detail,
        }),
        Err(e) => checks.push(Check {
            name: name.into(),
            pass: false,
            detail: format!("error: {e}"),
        }),
    }
}

fn skip(checks: &mut Vec<Check>, name: &str, why: &str) {
    checks.push(Check {
        name: name.into(),
        pass: true,
        detail: format!("skipped: {why}"),
    });
}

/// Run every applicable invariant on one scroll.
pub fn verify_scroll(x: &ParametricScroll, ctx: &Ctx) -> VerifyReport {
    let mut checks = Vec::new();

    // duality involution
    if x.fibre_dim() < x.ambient_dim() {
        push(&mut checks, "dual_involution", (|| {
            let d = x.dual(ctx)?;
            let dd = d.dual(ctx)?;
            let ok = linalg::rowspan_equal(dd.classifying(), x.classifying(), ctx)?;
            Ok((ok, "dual(dual(X)) spans X".into()))
        })());
    } else {
        skip(&mut checks, "dual_involution", "fibre fills the ambient space");
    }

    let stationary = match x.is_stationary(ctx) {
        Ok(v) => v,
        Err(e) => {
            push(&mut checks, "stationary", Err(e));
            return VerifyReport {
                entry: x.name().map(String::from),
                seed: ctx.seed,
                samples: ctx.samples,
                checks,
            };
        }
    };

    // biduality, on stationary nondegenerate non-cone scrolls
    let mut biduality_applicable = false;
    if stationary {
        let nondegenerate = x.is_degenerate(ctx).map(|d| !d).unwrap_or(false);
        let non_cone = flag::is_cone(x, ctx).map(|c| c.is_none()).unwrap_or(false);
        biduality_applicable = nondegenerate && non_cone;
    }
    if biduality_applicable {
        push(&mut checks, "biduality_up_down", (|| {
            match x.derived(ctx) {
                Err(scrolls::Error::Fixpoint { .. }) => {
                    Ok((true, "skipped: derived is a fixpoint".into()))
                }
                Err(e) => Err(e),
                Ok(d) => match d.antiderived(ctx)? {
                    None => Ok((false, "antiderived(derived(X)) is empty".into())),
                    Some(a) => {
                        let ok =
                            linalg::rowspan_equal(a.classifying(), x.classifying(), ctx)?;
                        Ok((ok, "antiderived(derived(X)) spans X".into()))
                    }
                },
            }
        })());
        push(&mut checks, "biduality_down_up", (|| {
            match x.antiderived(ctx)? {
                None => Ok((true, "skipped: antiderived is empty".into())),
                Some(a) => {
                    let d = a.derived(ctx)?;
                    let ok = linalg::rowspan_equal(d.classifying(), x.classifying(), ctx)?;
                    Ok((ok, "derived(antiderived(X)) spans X".into()))
                }
            }
        })());
    } else {
        skip(
            &mut checks,
            "biduality",
            "requires a stationary, nondegenerate, non-cone scroll",
        );
    }

    // focal degree criterion
    if x.base_dim() > 0 {
        push(&mut checks, "focal_degree", (|| {
            let fd = focal::focal_data(x, ctx)?;
            if !fd.hypersurface {
                if stationary {
                    return Ok((
                        true,
                        "no focal hypersurface (criterion not applicable)".into(),
                    ));
                }
                return Ok((true, "no focal hypersurface, non-stationary".into()));
            }
            let g = x.base_dim();
            if fd.degree_in_x > g {
                return Ok((
                    false,
                    format!("focal degree {} exceeds base dimension {g}", fd.degree_in_x),
                ));
            }
            let ok = (fd.degree_in_x == g) == stationary;
            Ok((
                ok,
                format!(
                    "degree {} vs base dimension {g}, stationary {stationary}",
                    fd.degree_in_x
                ),
            ))
        })());
    }

    // split-focus round trip
    if stationary && x.base_dim() > 0 && x.fibre_dim() < x.ambient_dim() {
        let fd = focal::focal_data(x, ctx);
        match fd {
            Ok(fd) if fd.hypersurface => {
                match focal::split_focus_detect(x, ctx) {
                    Ok(SplitVerdict::Split(data)) => {
                        push(&mut checks, "split_product", (|| {
                            // the product identity is verified inside the
                            // detector; reaching Split certifies it
                            Ok((true, format!("{} focal hyperplanes", data.forms.len())))
                        })());
                        push(&mut checks, "dual_split", (|| {
                            let ok = focal::dual_split_check(x, ctx)?;
                            Ok((ok, "dual is split with matching hyperplanes".into()))
                        })());
                    }
                    Ok(_) => skip(&mut checks, "split_roundtrip", "focus does not split"),
                    Err(e) => push(&mut checks, "split_roundtrip", Err(e)),
                }
            }
            _ => skip(&mut checks, "split_roundtrip", "no focal hypersurface"),
        }
    }

    VerifyReport {
        entry: x.name().map(String::from),
        seed: ctx.seed,
        samples: ctx.samples,
        checks,
    }
}

/// Verify one catalog entry: its stored profile plus the invariant suite.
pub fn verify_catalog_entry(name: &str, ctx: &Ctx) -> VerifyReport {
    let mut checks = Vec::new();
    match catalog::get(name, ctx) {
        Err(e) => {
            checks.push(Check {
                name: "catalog_self_check".into(),
                pass: false,
                detail: format!("{e}"),
            });
            VerifyReport {
                entry: Some(name.to_string()),
                seed: ctx.seed,
                samples: ctx.samples,
                checks,
            }
        }
        Ok(entry) => {
            checks.push(Check {
                name: "catalog_self_check".into(),
                pass: true,
                detail: "stored profile reproduced".into(),
            });
            let mut rep = verify_scroll(&entry.scroll, ctx);
            checks.extend(rep.checks.drain(..));
            VerifyReport {
                entry: Some(name.to_string()),
                seed: ctx.seed,
                samples: ctx.samples,
                checks,
            }
        }
    }
}

/// Verify every catalog entry, in catalog order.
pub fn verify_all_catalog(ctx: &Ctx) -> Vec<VerifyReport> {
    catalog::names()
        .iter()
        .map(|n| verify_catalog_entry(n, ctx))
        .collect()
}
