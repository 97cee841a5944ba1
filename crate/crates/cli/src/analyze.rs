use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;

use matroid_theta::bits::{self, ElementSet};
use matroid_theta::certificates::{psd_minimality, theta_rank_report, PsdCertificate, SosOptions, ThetaEstimate};
use matroid_theta::constructions::{decompose, DecompositionTree};
use matroid_theta::enumeration::{excluded_minors_present, two_level_verdicts, TwoLevelVerdicts};
use matroid_theta::geometry::{self, base_configuration, FacetKind};
use matroid_theta::ideals::{generation_degree, vanishing_ideal};
use matroid_theta::{Matroid, Result};

use crate::input::InputKind;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone)]
pub struct AnalyzeFlags {
    pub slack: bool,
    pub ideal: bool,
    pub hrk: bool,
    pub budget: u64,
    pub sos: bool,
    pub max_k: usize,
    pub tol: f64,
    pub gram_dir: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct InputInfo {
    pub source: String,
    pub kind: InputKind,
}

#[derive(Debug, Serialize)]
pub struct MatroidInfo {
    pub n: usize,
    pub rank: usize,
    pub basis_count: usize,
    pub bases: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize)]
pub struct Connectivity {
    pub connected: bool,
    pub components: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize)]
pub struct FacetRow {
    pub subset: Vec<usize>,
    pub kind: FacetKind,
    pub rank: usize,
    pub level_values: Vec<usize>,
    pub levelness: usize,
}

#[derive(Debug, Serialize)]
pub struct LevelnessInfo {
    pub value: usize,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Serialize)]
pub struct TwoLevelInfo {
    #[serde(flatten)]
    pub verdicts: TwoLevelVerdicts,
    pub agree: bool,
    pub excluded_minors_found: Vec<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct ThetaInfo {
    #[serde(flatten)]
    pub estimate: ThetaEstimate,
    pub numerical: bool,
    pub tol: f64,
    pub max_k: usize,
    pub max_iterations: usize,
}

#[derive(Debug, Serialize)]
pub struct SlackInfo {
    pub rows: Vec<Vec<usize>>,
    pub cols: Vec<Vec<usize>>,
    pub entries: Vec<Vec<usize>>,
    pub zero_one: bool,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Section<T> {
    Ok(T),
    Err { error: String },
}

impl<T> From<Result<T>> for Section<T> {
    fn from(r: Result<T>) -> Self {
        match r {
            Ok(v) => Section::Ok(v),
            Err(e) => Section::Err { error: e.to_string() },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: InputInfo,
    pub matroid: MatroidInfo,
    pub connectivity: Connectivity,
    pub flacets: Vec<FacetRow>,
    pub levelness: LevelnessInfo,
    pub two_level: TwoLevelInfo,
    pub theta: ThetaInfo,
    pub decomposition: DecompositionTree,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<Section<SlackInfo>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Section<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hrk: Option<Section<PsdCertificate>>,
}

impl AnalysisReport {
    pub fn consistent(&self) -> bool {
        self.two_level.agree
    }
}

/// Facets of every component, on the original labels.
fn facet_rows(m: &Matroid) -> Result<Vec<FacetRow>> {
    let mut rows = Vec::new();
    for c in m.components() {
        let part = m.restrict(c);
        if part.ground_size() <= 1 {
            continue;
        }
        for f in geometry::flacets(&part)? {
            rows.push(FacetRow {
                subset: bits::to_vec(bits::expand(f.subset, c)),
                kind: f.kind,
                rank: f.rank_s,
                level_values: f.level_values,
                levelness: f.levelness,
            });
        }
    }
    Ok(rows)
}

fn sets(v: &[ElementSet]) -> Vec<Vec<usize>> {
    v.iter().map(|&s| bits::to_vec(s)).collect()
}

pub fn analyze(m: &Matroid, input: InputInfo, flags: &AnalyzeFlags) -> Result<AnalysisReport> {
    let (lev, witness) = geometry::levelness(m);
    let verdicts = two_level_verdicts(m)?;
    let opts = SosOptions { tol: flags.tol, ..SosOptions::default() };
    let estimate = theta_rank_report(m, flags.max_k, flags.sos.then_some(&opts))?;

    if let Some(dir) = &flags.gram_dir {
        std::fs::create_dir_all(dir).map_err(|e| matroid_theta::Error::Parse(e.to_string()))?;
        for f in &estimate.flacets {
            if let Some(csv) = &f.gram_csv {
                let name = format!("gram_{}.csv", bits::to_vec(f.subset).iter().map(|e| e.to_string()).collect::<Vec<_>>().join("_"));
                std::fs::write(dir.join(name), csv).map_err(|e| matroid_theta::Error::Parse(e.to_string()))?;
            }
        }
    }

    let slack = flags.slack.then(|| {
        Section::from(geometry::slack_matrix(m).map(|s| SlackInfo {
            rows: sets(&s.rows),
            cols: s.cols.iter().map(|f| bits::to_vec(f.subset)).collect(),
            zero_one: s.is_zero_one(),
            entries: s.entries,
        }))
    });
    let ideal = flags.ideal.then(|| {
        let v = base_configuration(m);
        Section::from(vanishing_ideal(&v).and_then(|g| {
            let mut json = g.to_json();
            json["generation_degree"] = Value::from(generation_degree(&v)?);
            Ok(json)
        }))
    });
    let hrk = flags.hrk.then(|| Section::from(psd_minimality(m, flags.budget)));

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        input,
        matroid: MatroidInfo { n: m.ground_size(), rank: m.rank(), basis_count: m.bases().len(), bases: m.basis_lists() },
        connectivity: Connectivity { connected: m.is_connected(), components: sets(&m.components()) },
        flacets: facet_rows(m)?,
        levelness: LevelnessInfo { value: lev, witness: witness.map(|w| bits::to_vec(w.subset)) },
        two_level: TwoLevelInfo { verdicts, agree: verdicts.agree(), excluded_minors_found: excluded_minors_present(m) },
        theta: ThetaInfo {
            estimate,
            numerical: flags.sos,
            tol: flags.tol,
            max_k: flags.max_k,
            max_iterations: opts.max_iterations,
        },
        decomposition: decompose(m),
        slack,
        ideal,
        hrk,
    })
}

fn set_text(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
}

pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let m = &r.matroid;
    let _ = writeln!(out, "input: {} ({:?})", r.input.source, r.input.kind);
    let _ = writeln!(out, "ground set {} elements, rank {}, {} bases", m.n, m.rank, m.basis_count);
    let comps: Vec<String> = r.connectivity.components.iter().map(|c| set_text(c)).collect();
    let _ = writeln!(out, "components: {}", comps.join(" "));
    let _ = writeln!(out, "facets:");
    for f in &r.flacets {
        let kind = match f.kind {
            FacetKind::Flacet => "flacet",
            FacetKind::ComplementSingleton => "complement",
        };
        let _ = writeln!(out, "  {:<10} {:<16} rank {} levels {:?}", kind, set_text(&f.subset), f.rank, f.level_values);
    }
    let witness = r.levelness.witness.as_deref().map(set_text).unwrap_or_else(|| "-".into());
    let _ = writeln!(out, "levelness: {} (witness {witness})", r.levelness.value);
    let v = &r.two_level.verdicts;
    let _ = writeln!(
        out,
        "two-level: levelness={} excluded_minors={} decomposition={} generation_degree={} agree={}",
        v.levelness, v.excluded_minors, v.decomposition, v.generation_degree, r.two_level.agree
    );
    if !r.two_level.excluded_minors_found.is_empty() {
        let _ = writeln!(out, "excluded minors: {}", r.two_level.excluded_minors_found.join(", "));
    }
    let upper = r.theta.estimate.upper.map_or("unknown".to_string(), |u| u.to_string());
    let mode = if r.theta.numerical { format!("numerical, tol {:e}", r.theta.tol) } else { "levelness only".to_string() };
    let _ = writeln!(out, "theta: lower {} upper {} ({mode})", r.theta.estimate.lower, upper);
    if let Some(sep) = r.theta.estimate.separation_degree {
        let _ = writeln!(out, "separation degree: {sep}");
    }
    if let Some(Section::Ok(s)) = &r.slack {
        let _ = writeln!(out, "slack matrix: {}x{}, 0/1: {}", s.rows.len(), s.cols.len(), s.zero_one);
    }
    match &r.ideal {
        Some(Section::Ok(g)) => {
            let _ = writeln!(out, "generation degree: {}", g["generation_degree"]);
        }
        Some(Section::Err { error }) => {
            let _ = writeln!(out, "ideal: {error}");
        }
        None => {}
    }
    match &r.hrk {
        Some(Section::Ok(c)) => {
            let _ = writeln!(out, "psd-minimal: {} (dim {}, {:?})", c.psd_minimal, c.dim, c.method);
        }
        Some(Section::Err { error }) => {
            let _ = writeln!(out, "psd-minimal: {error}");
        }
        None => {}
    }
    out
}
