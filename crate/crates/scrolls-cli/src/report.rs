//! Analysis reports: one struct, serialized to JSON for machines and
//! pretty-printed for humans. Field order is fixed by the struct, so
//! identical inputs give byte-identical JSON; the timing field is always
//! `null` in JSON and only shown in the human rendering.

use serde::Serialize;

use scrolls::classify::{self, Verdict};
use scrolls::flag;
use scrolls::focal::{self, SplitVerdict};
use scrolls::{Ctx, ParametricScroll, Result};

#[derive(Serialize, Clone)]
pub struct Report {
    pub name: Option<String>,
    pub seed: u64,
    pub samples: u32,
    pub base_dim: usize,
    pub fibre_dim: usize,
    pub ambient_dim: usize,
    pub stationary: bool,
    pub spread_dim: usize,
    pub gauss_dim: usize,
    pub gauss_deficiency: usize,
    pub filling: bool,
    pub overfilling: bool,
    pub degenerate: bool,
    pub flag: Option<FlagSummary>,
    pub focal: FocalSummary,
    pub dual: Option<DualSummary>,
    pub classification: ClassificationSummary,
    /// Milliseconds; omitted from the JSON form (always null) so reports
    /// are byte-identical across runs.
    pub timing_ms: Option<u64>,
}

#[derive(Serialize, Clone)]
pub struct FlagSummary {
    pub member_fibre_dims: Vec<usize>,
    pub osc_dims: Vec<usize>,
    pub index_m: usize,
    pub coindex_l: usize,
    pub pivot_index: usize,
}

#[derive(Serialize, Clone)]
pub struct FocalSummary {
    pub hypersurface: bool,
    pub degree_in_x: usize,
    pub polynomial: Option<String>,
    pub split: SplitSummary,
}

#[derive(Serialize, Clone)]
pub struct SplitSummary {
    /// "split", "non-split", "unknown" or "not-checked".
    pub verdict: String,
    pub forms: Vec<String>,
    pub reason: Option<String>,
    pub advisory: Vec<String>,
}

#[derive(Serialize, Clone)]
pub struct DualSummary {
    pub fibre_dim: usize,
    pub involution_ok: bool,
}

#[derive(Serialize, Clone)]
pub struct ClassificationSummary {
    pub verdict: String,
    pub witness: Option<Vec<String>>,
    pub curve_order: Option<usize>,
    pub constant_count: Option<usize>,
}

pub fn split_summary(x: &ParametricScroll, ctx: &Ctx) -> Result<SplitSummary> {
    let stationary = x.is_stationary(ctx)?;
    if !stationary || x.base_dim() == 0 {
        return Ok(SplitSummary {
            verdict: "not-checked".into(),
            forms: Vec::new(),
            reason: None,
            advisory: Vec::new(),
        });
    }
    let fd = focal::focal_data(x, ctx)?;
    if !fd.hypersurface {
        return Ok(SplitSummary {
            verdict: "not-checked".into(),
            forms: Vec::new(),
            reason: Some("focal locus is not a hypersurface".into()),
            advisory: Vec::new(),
        });
    }
    Ok(match focal::split_focus_detect(x, ctx)? {
        SplitVerdict::Split(data) => SplitSummary {
            verdict: "split".into(),
            forms: data.forms.iter().map(|f| f.to_string()).collect(),
            reason: None,
            advisory: Vec::new(),
        },
        SplitVerdict::NonSplit { reason } => SplitSummary {
            verdict: "non-split".into(),
            forms: Vec::new(),
            reason: Some(reason),
            advisory: Vec::new(),
        },
        SplitVerdict::Unknown { reason, advisory } => SplitSummary {
            verdict: "unknown".into(),
            forms: Vec::new(),
            reason: Some(reason),
            advisory,
        },
    })
}

pub fn build(x: &ParametricScroll, ctx: &Ctx, timing_ms: Option<u64>) -> Result<Report> {
    let params = classify::ScrollParams::compute(x, ctx)?;
    let flag_summary = flag::maximal_flag(x, ctx).ok().map(|f| FlagSummary {
        member_fibre_dims: f.members.iter().map(|m| m.fibre_dim()).collect(),
        osc_dims: f.osc_dims.clone(),
        index_m: f.index_m,
        coindex_l: f.coindex_l,
        pivot_index: f.pivot_index,
    });
    let focal_summary = if x.base_dim() > 0 {
        let fd = focal::focal_data(x, ctx)?;
        FocalSummary {
            hypersurface: fd.hypersurface,
            degree_in_x: fd.degree_in_x,
            polynomial: if fd.polynomial.is_zero() {
                None
            } else {
                Some(fd.polynomial.to_string())
            },
            split: split_summary(x, ctx)?,
        }
    } else {
        FocalSummary {
            hypersurface: false,
            degree_in_x: 0,
            polynomial: None,
            split: SplitSummary {
                verdict: "not-checked".into(),
                forms: Vec::new(),
                reason: Some("zero-dimensional base".into()),
                advisory: Vec::new(),
            },
        }
    };
    let dual_summary = if x.fibre_dim() < x.ambient_dim() {
        let d = x.dual(ctx)?;
        let dd = d.dual(ctx)?;
        Some(DualSummary {
            fibre_dim: d.fibre_dim(),
            involution_ok: scrolls::linalg::rowspan_equal(
                dd.classifying(),
                x.classifying(),
                ctx,
            )?,
        })
    } else {
        None
    };
    let cls = classify::classify(x, ctx)?;
    let classification = ClassificationSummary {
        verdict: cls.verdict.to_string(),
        witness: cls.witness.as_ref().map(|w| {
            (0..w.rows())
                .map(|i| {
                    w.row(i)
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                })
                .collect()
        }),
        curve_order: cls.curve_order,
        constant_count: if cls.verdict == Verdict::CurveOsculating {
            cls.constants.as_ref().map(|c| c.rows())
        } else {
            None
        },
    };
    Ok(Report {
        name: x.name().map(String::from),
        seed: ctx.seed,
        samples: ctx.samples,
        base_dim: params.base_dim,
        fibre_dim: params.fibre_dim,
        ambient_dim: params.ambient_dim,
        stationary: params.stationary,
        spread_dim: params.spread_dim,
        gauss_dim: params.gauss_dim,
        gauss_deficiency: params.gauss_deficiency(),
        filling: params.filling,
        overfilling: params.overfilling,
        degenerate: params.degenerate,
        flag: flag_summary,
        focal: focal_summary,
        dual: dual_summary,
        classification,
        timing_ms,
    })
}

pub fn to_json(report: &Report) -> String {
    let mut r = report.clone();
    r.timing_ms = None;
    serde_json::to_string_pretty(&r).expect("report serializes")
}

pub fn print_human(report: &Report) {
    if let Some(n) = &report.name {
        println!("scroll: {n}");
    }
    println!(
        "base dim {} | fibre dim {} | ambient P^{}",
        report.base_dim, report.fibre_dim, report.ambient_dim
    );
    println!(
        "stationary: {} | spread dim {} | Gauss dim {} (deficiency {})",
        report.stationary, report.spread_dim, report.gauss_dim, report.gauss_deficiency
    );
    println!(
        "filling: {} | overfilling: {} | degenerate: {}",
        report.filling, report.overfilling, report.degenerate
    );
    if let Some(f) = &report.flag {
        println!(
            "flag: fibre dims {:?}, index m = {}, coindex l = {} (pivot at {})",
            f.member_fibre_dims, f.index_m, f.coindex_l, f.pivot_index
        );
    }
    if report.focal.hypersurface {
        println!(
            "focal: hypersurface of degree {}{}",
            report.focal.degree_in_x,
            report
                .focal
                .polynomial
                .as_ref()
                .map(|p| format!(", polynomial {p}"))
                .unwrap_or_default()
        );
    } else {
        println!("focal: no hypersurface on the general fibre");
    }
    match report.focal.split.verdict.as_str() {
        "split" => println!("split focus: yes, forms {:?}", report.focal.split.forms),
        "non-split" => println!(
            "split focus: no ({})",
            report.focal.split.reason.as_deref().unwrap_or("")
        ),
        "unknown" => {
            println!(
                "split focus: unknown ({})",
                report.focal.split.reason.as_deref().unwrap_or("")
            );
            for a in &report.focal.split.advisory {
                println!("  advisory: {a}");
            }
        }
        _ => {}
    }
    if let Some(d) = &report.dual {
        println!(
            "dual: fibre dim {}, involution ok: {}",
            d.fibre_dim, d.involution_ok
        );
    }
    println!("classification: {}", report.classification.verdict);
    if let Some(w) = &report.classification.witness {
        for row in w {
            println!("  witness row: [{row}]");
        }
    }
    if let Some(k) = report.classification.curve_order {
        println!("  curve derivative order: {k}");
    }
    if let Some(c) = report.classification.constant_count {
        println!("  constant spans: {c}");
    }
    if let Some(t) = report.timing_ms {
        println!("elapsed: {t} ms");
    }
    println!("seed {} | samples {}", report.seed, report.samples);
}
