//! Theta-rank bounds and psd-minimality certificates.

pub mod hadamard;
pub mod qroot2;
pub mod sos;

pub use hadamard::{hadamard_min_rank, HrkOutcome, DEFAULT_BUDGET};
pub use qroot2::QRoot2;
pub use sos::{linear_functional, sos_feasible, verify_identity_w4, SosOptions, SosOutcome, SosVerdict};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, ElementSet};
use crate::catalog;
use crate::error::{Error, Result};
use crate::geometry::{base_configuration, flacets, projection_to, slack_matrix, FacetDescriptor, FacetKind};
use crate::ideals::{indicator, theta_lower_bound_from_separation};
use crate::iso::{automorphisms, is_isomorphic};
use crate::matroid::Matroid;

/// How the sos degree of one flacet functional was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeSource {
    /// `L` levels make the functional `(L-1)`-sos by interpolation.
    Levelness,
    /// Gram matrix found numerically.
    Numerical,
    /// Same orbit under automorphisms as an earlier flacet.
    Orbit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlacetTheta {
    pub subset: ElementSet,
    pub levelness: usize,
    pub degree: usize,
    pub source: DegreeSource,
    /// Gram matrix CSV when the degree was found numerically.
    #[serde(skip)]
    pub gram_csv: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaEstimate {
    pub lower: usize,
    /// `None` when some flacet needs a degree above `max_k`.
    pub upper: Option<usize>,
    /// Largest separation degree found among dependent flacet indicators.
    pub separation_degree: Option<u32>,
    pub flacets: Vec<FlacetTheta>,
}

/// `(lower, upper)` bounds on the Theta rank of the base configuration.
pub fn theta_rank_estimate(m: &Matroid, max_k: usize) -> Result<(usize, Option<usize>)> {
    let e = theta_rank_report(m, max_k, Some(&SosOptions::default()))?;
    Ok((e.lower, e.upper))
}

/// Theta bounds with per-flacet detail. A disconnected matroid gets the
/// maximum over its components. Without `opts` no numerical solves are run
/// and each flacet is charged its exact `L-1`.
pub fn theta_rank_report(m: &Matroid, max_k: usize, opts: Option<&SosOptions>) -> Result<ThetaEstimate> {
    let comps = m.components();
    if comps.len() <= 1 {
        return connected_estimate(m, max_k, opts);
    }
    let mut total = ThetaEstimate { lower: 0, upper: Some(0), separation_degree: None, flacets: Vec::new() };
    for c in comps {
        let part = connected_estimate(&m.restrict(c), max_k, opts)?;
        total.lower = total.lower.max(part.lower);
        total.upper = match (total.upper, part.upper) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        total.separation_degree = total.separation_degree.max(part.separation_degree);
        total.flacets.extend(part.flacets.into_iter().map(|f| FlacetTheta { subset: bits::expand(f.subset, c), ..f }));
    }
    Ok(total)
}

fn connected_estimate(m: &Matroid, max_k: usize, opts: Option<&SosOptions>) -> Result<ThetaEstimate> {
    if m.ground_size() <= 1 {
        return Ok(ThetaEstimate { lower: 0, upper: Some(0), separation_degree: None, flacets: Vec::new() });
    }
    let all = flacets(m)?;
    let lev = all.iter().map(|f| f.levelness).max().unwrap_or(1);
    // complement-singleton facets are always 2-level, hence 1-sos
    let facets: Vec<FacetDescriptor> = all.into_iter().filter(|f| f.kind == FacetKind::Flacet).collect();
    if lev <= 1 {
        return Ok(ThetaEstimate { lower: 0, upper: Some(0), separation_degree: None, flacets: Vec::new() });
    }
    let mut lower = if lev >= 3 { 2 } else { 1 };

    // separation degree is at most the number of levels, so only L >= 5 can beat 2
    let mut separation_degree = None;
    let mut seen: Vec<ElementSet> = Vec::new();
    let autos = if facets.iter().any(|f| f.levelness >= 5) { automorphisms(m) } else { Vec::new() };
    for f in facets.iter().filter(|f| f.levelness >= 5 && f.rank_s < bits::size(f.subset)) {
        if seen.contains(&f.subset) {
            continue;
        }
        seen.extend(autos.iter().map(|p| bits::permute(f.subset, p)));
        let bound = theta_lower_bound_from_separation(m, f, &indicator(m.ground_size(), f.subset))?;
        separation_degree = separation_degree.max(Some(bound.separation_degree));
        lower = lower.max(bound.theta_at_least as usize);
    }

    // flacets whose level count already pins their degree to at most `lower`
    let mut results: Vec<Option<FlacetTheta>> = facets
        .iter()
        .map(|f| {
            (f.levelness - 1 <= lower.max(1)).then(|| FlacetTheta {
                subset: f.subset,
                levelness: f.levelness,
                degree: f.levelness - 1,
                source: DegreeSource::Levelness,
                gram_csv: None,
            })
        })
        .collect();

    let pending: Vec<usize> = (0..facets.len()).filter(|&i| results[i].is_none()).collect();
    let orbit_autos = if pending.len() > 1 { automorphisms(m) } else { Vec::new() };
    let mut representatives: Vec<usize> = Vec::new();
    let mut rep_of: Vec<(usize, usize)> = Vec::new();
    for &i in &pending {
        let image = |p: &Vec<usize>| bits::permute(facets[i].subset, p);
        match representatives.iter().find(|&&r| orbit_autos.iter().any(|p| image(p) == facets[r].subset)) {
            Some(&r) => rep_of.push((i, r)),
            None => representatives.push(i),
        }
    }

    let start = lower.max(1);
    let solved: Vec<(usize, Result<FlacetTheta>)> = representatives
        .par_iter()
        .map(|&i| (i, flacet_degree(m, &facets[i], start, max_k, opts)))
        .collect();
    for (i, r) in solved {
        results[i] = Some(r?);
    }
    for (i, r) in rep_of {
        let d = results[r].as_ref().expect("representative solved").degree;
        results[i] = Some(FlacetTheta { subset: facets[i].subset, levelness: facets[i].levelness, degree: d, source: DegreeSource::Orbit, gram_csv: None });
    }

    let flacets: Vec<FlacetTheta> = results.into_iter().map(|r| r.expect("every flacet settled")).collect();
    let need = flacets.iter().map(|f| f.degree).max().unwrap_or(1).max(lower);
    Ok(ThetaEstimate { lower, upper: (need <= max_k).then_some(need), separation_degree, flacets })
}

/// Smallest `k` in `start..=L-2` (capped by `max_k`) for which the flacet
/// functional is numerically `k`-sos on a coordinate projection, else `L-1`.
fn flacet_degree(m: &Matroid, f: &FacetDescriptor, start: usize, max_k: usize, opts: Option<&SosOptions>) -> Result<FlacetTheta> {
    let n = m.ground_size();
    let inside = bits::size(f.subset);
    let outside = n - inside;
    let config = base_configuration(m);
    // the functional only depends on F, or equally on its complement
    let (coords, ell) = if inside <= outside {
        let coords = bits::to_vec(f.subset);
        let ell = linear_functional(coords.len(), f.rank_s as i64, &vec![-1; coords.len()]);
        (coords, ell)
    } else {
        let coords = bits::to_vec(m.ground_set() & !f.subset);
        let offset = m.rank() as i64 - f.rank_s as i64;
        let ell = linear_functional(coords.len(), -offset, &vec![1; coords.len()]);
        (coords, ell)
    };
    let projected = projection_to(&config, &coords);
    let top = f.levelness - 1;
    if let Some(opts) = opts {
        for k in start..top.min(max_k + 1) {
            let out = sos_feasible(&projected, &ell, k as u32, opts)?;
            if out.is_feasible() {
                let gram_csv = out.gram_csv();
                return Ok(FlacetTheta { subset: f.subset, levelness: f.levelness, degree: k, source: DegreeSource::Numerical, gram_csv });
            }
        }
    }
    Ok(FlacetTheta { subset: f.subset, levelness: f.levelness, degree: top, source: DegreeSource::Levelness, gram_csv: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsdMethod {
    /// 0/1 slack matrix of rank `d+1` is its own root.
    ZeroOneSlack,
    /// Submatrix found by the zero-pattern search.
    SearchedSubmatrix,
    /// The fixed basis and flacet lists for the excluded minors.
    ExcludedMinorSubmatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsdCertificate {
    pub psd_minimal: bool,
    /// Dimension `|E| - c(M)` of the base polytope.
    pub dim: usize,
    pub method: PsdMethod,
    /// Rows (bases) and columns (facet subsets) of the certifying matrix.
    pub rows: Vec<ElementSet>,
    pub cols: Vec<ElementSet>,
    pub hadamard: Option<HrkOutcome>,
}

/// Rows are basis lists and columns facet subsets of `MK4` on elements
/// `0..6`; the same pair works for `W3_whirl`, `Q6` and `P6`.
pub fn excluded_minor_submatrix() -> (Vec<ElementSet>, Vec<ElementSet>) {
    let rows = [[0, 1, 3], [0, 1, 4], [0, 1, 5], [0, 2, 5], [0, 3, 5], [0, 4, 5], [1, 3, 5]];
    let rows = rows.iter().map(|r| bits::from_slice(r)).collect();
    let mut cols: Vec<ElementSet> = (0..6).map(bits::singleton).collect();
    cols.push(bits::from_slice(&[2, 3, 5]));
    (rows, cols)
}

fn to_i64(sub: Vec<Vec<usize>>) -> Vec<Vec<i64>> {
    sub.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()
}

fn exact_rank(s: &[Vec<i64>]) -> usize {
    qroot2::rank(s.iter().map(|r| r.iter().map(|&x| QRoot2::from_ints(x, 0)).collect()).collect())
}

/// Psd-minimality of the base polytope with a certificate.
pub fn psd_minimality(m: &Matroid, budget: u64) -> Result<PsdCertificate> {
    if !m.is_connected() {
        return Err(Error::NotConnected);
    }
    let dim = m.ground_size() - m.component_count();
    let slack = slack_matrix(m)?;
    let cols: Vec<ElementSet> = slack.cols.iter().map(|f| f.subset).collect();
    if slack.is_zero_one() {
        let entries = to_i64(slack.entries.clone());
        let r = exact_rank(&entries);
        if r != dim + 1 {
            return Err(Error::Inconclusive(format!("slack matrix has rank {r}, expected {}", dim + 1)));
        }
        return Ok(PsdCertificate { psd_minimal: true, dim, method: PsdMethod::ZeroOneSlack, rows: slack.rows, cols, hadamard: None });
    }

    let t = dim + 2;
    if let Some((rows, sub_cols, out)) = search_refutation(&slack.entries, t, budget) {
        return Ok(PsdCertificate {
            psd_minimal: false,
            dim,
            method: PsdMethod::SearchedSubmatrix,
            rows: rows.iter().map(|&i| slack.rows[i]).collect(),
            cols: sub_cols.iter().map(|&j| cols[j]).collect(),
            hadamard: Some(out),
        });
    }

    let (fixed_rows, fixed_cols) = excluded_minor_submatrix();
    for (_, minor) in catalog::excluded_minors() {
        let Some(perm) = is_isomorphic(&minor, m) else { continue };
        let rows: Vec<ElementSet> = fixed_rows.iter().map(|&r| bits::permute(r, &perm)).collect();
        let sub_cols: Vec<ElementSet> = fixed_cols.iter().map(|&c| bits::permute(c, &perm)).collect();
        let Some(sub) = slack.submatrix(&rows, &sub_cols) else { continue };
        let out = hadamard_min_rank(&to_i64(sub), Some(t - 1), budget)?;
        if out.exhaustive && out.min_rank_found >= t {
            return Ok(PsdCertificate {
                psd_minimal: false,
                dim,
                method: PsdMethod::ExcludedMinorSubmatrix,
                rows,
                cols: sub_cols,
                hadamard: Some(out),
            });
        }
    }
    Err(Error::Inconclusive("no certifying submatrix found".into()))
}

/// `true` iff the base polytope is psd-minimal.
pub fn psd_minimality_verdict(m: &Matroid) -> Result<bool> {
    psd_minimality(m, DEFAULT_BUDGET).map(|c| c.psd_minimal)
}

const SEARCH_ATTEMPTS: usize = 48;
const LOCAL_STEPS: usize = 200;
const MAX_FREE_SIGNS: usize = 18;

/// Looks for a `t x t` submatrix all of whose Hadamard roots have rank `t`.
/// Starts from random row and column sets containing a non-0/1 column and
/// greedily swaps in rows and columns that add zeros, since every zero
/// removes a sign to enumerate.
fn search_refutation(s: &[Vec<usize>], t: usize, budget: u64) -> Option<(Vec<usize>, Vec<usize>, HrkOutcome)> {
    let rows = s.len();
    let cols = s.first().map_or(0, Vec::len);
    if rows < t || cols < t {
        return None;
    }
    let heavy: Vec<usize> = (0..cols).filter(|&j| s.iter().any(|r| r[j] > 1)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a5d);
    let nonzeros = |r: &[usize], c: &[usize]| r.iter().map(|&i| c.iter().filter(|&&j| s[i][j] != 0).count()).sum::<usize>();
    let extract = |r: &[usize], c: &[usize]| -> Vec<Vec<i64>> { r.iter().map(|&i| c.iter().map(|&j| s[i][j] as i64).collect()).collect() };
    let mut tried: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();

    for _ in 0..SEARCH_ATTEMPTS {
        let anchor = *heavy.choose(&mut rng)?;
        let mut c: Vec<usize> = (0..cols).filter(|&j| j != anchor).collect::<Vec<_>>().choose_multiple(&mut rng, t - 1).cloned().collect();
        c.push(anchor);
        let mut r: Vec<usize> = (0..rows).collect::<Vec<_>>().choose_multiple(&mut rng, t).cloned().collect();
        let mut score = nonzeros(&r, &c);
        for _ in 0..LOCAL_STEPS {
            let (mut r2, mut c2) = (r.clone(), c.clone());
            if rng.gen_bool(0.5) {
                let slot = rng.gen_range(0..t);
                let cand = rng.gen_range(0..rows);
                if r2.contains(&cand) {
                    continue;
                }
                r2[slot] = cand;
            } else {
                let slot = rng.gen_range(0..t - 1);
                let cand = rng.gen_range(0..cols);
                if c2.contains(&cand) {
                    continue;
                }
                c2[slot] = cand;
            }
            let sub = extract(&r2, &c2);
            let s2 = nonzeros(&r2, &c2);
            // the plain nonnegative root must already have full rank
            if s2 <= score && exact_rank(&sub) == t {
                r = r2;
                c = c2;
                score = s2;
            }
        }
        let mut key = (r.clone(), c.clone());
        key.0.sort_unstable();
        key.1.sort_unstable();
        if tried.contains(&key) {
            continue;
        }
        tried.push(key);
        let sub = extract(&r, &c);
        if exact_rank(&sub) < t || (score + 1).saturating_sub(2 * t) > MAX_FREE_SIGNS {
            continue;
        }
        let out = hadamard_min_rank(&sub, Some(t - 1), budget).ok()?;
        if out.exhaustive && out.min_rank_found >= t {
            r.sort_unstable();
            let order: Vec<usize> = r.clone();
            return Some((order, c, out));
        }
    }
    None
}
