//! Base configurations and the facets of base polytopes.
//!
//! For a connected matroid the facets of `P_M` come from flacets (flats `S`
//! with `M|S` and `M/S` connected) and from the sets `E - e` for which
//! `M\e` is connected. Each facet is described by the subset `S`; its
//! functional is `rk(S) - |B n S|` on bases `B`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, ElementSet};
use crate::constructions::direct_sum;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    pub dim: usize,
    pub points: Vec<Vec<BigRational>>,
}

impl PointConfig {
    pub fn new(dim: usize, points: Vec<Vec<BigRational>>) -> Self {
        debug_assert!(points.iter().all(|p| p.len() == dim));
        PointConfig { dim, points }
    }

    pub fn from_integer_points(dim: usize, points: &[Vec<i64>]) -> Self {
        let points = points
            .iter()
            .map(|p| p.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        PointConfig::new(dim, points)
    }

    /// Points of `{0,1}^dim` given as bit masks.
    pub fn from_masks(dim: usize, masks: &[ElementSet]) -> Self {
        let points = masks
            .iter()
            .map(|&m| (0..dim).map(|i| BigRational::from_integer(BigInt::from((m >> i & 1) as i64))).collect())
            .collect();
        PointConfig::new(dim, points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[BigRational]) -> bool {
        self.points.iter().any(|q| q.as_slice() == p)
    }

    /// JSON array of coordinate vectors; integers stay numbers, other rationals become `"a/b"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let coord = |x: &BigRational| -> serde_json::Value {
            if x.is_integer() {
                if let Ok(v) = x.to_integer().to_string().parse::<i64>() {
                    return serde_json::Value::from(v);
                }
            }
            serde_json::Value::from(x.to_string())
        };
        serde_json::Value::Array(
            self.points
                .iter()
                .map(|p| serde_json::Value::Array(p.iter().map(coord).collect()))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetKind {
    Flacet,
    ComplementSingleton,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetDescriptor {
    pub kind: FacetKind,
    pub subset: ElementSet,
    pub rank_s: usize,
    pub level_values: Vec<usize>,
    pub levelness: usize,
}

impl FacetDescriptor {
    pub fn new(m: &Matroid, kind: FacetKind, subset: ElementSet) -> Self {
        let level_values = level_values(m, subset);
        FacetDescriptor {
            kind,
            subset,
            rank_s: m.rank_of(subset),
            levelness: level_values.len(),
            level_values,
        }
    }

    /// Slack of basis `b`: `rk(S) - |B n S|`.
    pub fn slack(&self, b: ElementSet) -> usize {
        self.rank_s - bits::size(b & self.subset)
    }
}

/// Sorted distinct values of `|B n S|` over the bases of `m`.
pub fn level_values(m: &Matroid, s: ElementSet) -> Vec<usize> {
    let mut seen = [false; 33];
    for &b in m.bases() {
        seen[bits::size(b & s)] = true;
    }
    (0..33).filter(|&i| seen[i]).collect()
}

pub fn base_configuration(m: &Matroid) -> PointConfig {
    PointConfig::from_masks(m.ground_size(), m.bases())
}

/// A proper nonempty flat `S` with `M|S` and `M/S` connected.
pub fn is_flacet(m: &Matroid, s: ElementSet) -> bool {
    s != 0
        && s != m.ground_set()
        && m.is_flat(s)
        && m.restrict(s).is_connected()
        && m.contract(s).is_connected()
}

/// All facets of the base polytope of a connected matroid: flacets, then the
/// complement sets, each group in canonical subset order.
pub fn flacets(m: &Matroid) -> Result<Vec<FacetDescriptor>> {
    if !m.is_connected() {
        return Err(Error::NotConnected);
    }
    let full = m.ground_set();
    let found: Vec<ElementSet> = (1..full).into_par_iter().filter(|&s| is_flacet(m, s)).collect();
    let mut out: Vec<FacetDescriptor> = found
        .into_iter()
        .map(|s| FacetDescriptor::new(m, FacetKind::Flacet, s))
        .collect();
    out.sort_by(|a, b| bits::canonical_cmp(a.subset, b.subset));
    if m.ground_size() >= 2 {
        let mut rest: Vec<FacetDescriptor> = (0..m.ground_size())
            .filter(|&e| m.delete(bits::singleton(e)).is_connected())
            .map(|e| FacetDescriptor::new(m, FacetKind::ComplementSingleton, full & !bits::singleton(e)))
            .collect();
        rest.sort_by(|a, b| bits::canonical_cmp(a.subset, b.subset));
        out.extend(rest);
    }
    Ok(out)
}

/// Largest levelness over all facets with an argmax witness. Disconnected
/// matroids take the maximum over their components; a point has levelness 1.
pub fn levelness(m: &Matroid) -> (usize, Option<FacetDescriptor>) {
    let mut best: (usize, Option<FacetDescriptor>) = (1, None);
    for comp in m.components() {
        let sub = m.restrict(comp);
        let facets = flacets(&sub).expect("components are connected");
        for f in facets {
            if f.levelness > best.0 {
                let subset = bits::expand(f.subset, comp);
                best = (f.levelness, Some(FacetDescriptor { subset, ..f }));
            }
        }
    }
    best
}

/// A chain of bases `B_1..B_k` for the facet set `s`: `|S n B_1|` minimal,
/// each step adds one element of `S` to a growing intersection, and
/// `|S n B_k| = rk(S)`. With `keep = Some(e)` every basis contains `e`.
pub fn k_sequence_with(m: &Matroid, s: ElementSet, keep: Option<usize>) -> Option<Vec<ElementSet>> {
    let must = keep.map_or(0, bits::singleton);
    let lo = m.bases().iter().map(|&b| bits::size(b & s)).min()?;
    let hi = m.rank_of(s);
    let starts: Vec<ElementSet> = m
        .bases()
        .iter()
        .copied()
        .filter(|&b| b & must == must && bits::size(b & s) == lo)
        .collect();

    fn extend(m: &Matroid, s: ElementSet, must: ElementSet, hi: usize, chain: &mut Vec<ElementSet>) -> bool {
        let b = *chain.last().unwrap();
        if bits::size(b & s) == hi {
            return true;
        }
        for g in bits::elements(s & !b) {
            for f in bits::elements(b & !s & !must) {
                let next = (b & !bits::singleton(f)) | bits::singleton(g);
                if m.is_basis(next) {
                    chain.push(next);
                    if extend(m, s, must, hi, chain) {
                        return true;
                    }
                    chain.pop();
                }
            }
        }
        false
    }

    for b in starts {
        let mut chain = vec![b];
        if extend(m, s, must, hi, &mut chain) {
            return Some(chain);
        }
    }
    None
}

pub fn k_sequence(m: &Matroid, s: ElementSet) -> Option<Vec<ElementSet>> {
    k_sequence_with(m, s, None)
}

/// Checks the four defining conditions of a k-sequence for `s`.
pub fn is_k_sequence(m: &Matroid, s: ElementSet, seq: &[ElementSet]) -> bool {
    let Some(&first) = seq.first() else { return false };
    let lo = m.bases().iter().map(|&b| bits::size(b & s)).min().unwrap();
    seq.iter().all(|&b| m.is_basis(b))
        && bits::size(first & s) == lo
        && seq.windows(2).all(|w| {
            let (a, b) = (w[0] & s, w[1] & s);
            bits::size(b) == bits::size(a) + 1 && a & !b == 0
        })
        && bits::size(seq[seq.len() - 1] & s) == m.rank_of(s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackMatrix {
    pub rows: Vec<ElementSet>,
    pub cols: Vec<FacetDescriptor>,
    pub entries: Vec<Vec<usize>>,
}

impl SlackMatrix {
    pub fn build(rows: Vec<ElementSet>, cols: Vec<FacetDescriptor>) -> Self {
        let entries = rows
            .iter()
            .map(|&b| cols.iter().map(|f| f.slack(b)).collect())
            .collect();
        SlackMatrix { rows, cols, entries }
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x <= 1)
    }

    /// Submatrix on the given row and column subsets (matched by set).
    pub fn submatrix(&self, rows: &[ElementSet], cols: &[ElementSet]) -> Option<Vec<Vec<usize>>> {
        let ri: Option<Vec<usize>> = rows.iter().map(|r| self.rows.iter().position(|x| x == r)).collect();
        let ci: Option<Vec<usize>> =
            cols.iter().map(|c| self.cols.iter().position(|f| f.subset == *c)).collect();
        let (ri, ci) = (ri?, ci?);
        Some(ri.iter().map(|&i| ci.iter().map(|&j| self.entries[i][j]).collect()).collect())
    }

    /// CSV with a header naming the facet subsets and one row per basis.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["basis".to_string()];
        header.extend(self.cols.iter().map(|f| bits::format_set(f.subset)));
        w.write_record(&header).expect("in-memory write");
        for (b, row) in self.rows.iter().zip(&self.entries) {
            let mut rec = vec![bits::format_set(*b)];
            rec.extend(row.iter().map(|x| x.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

/// Slack matrix over all bases and all facets of a connected matroid.
pub fn slack_matrix(m: &Matroid) -> Result<SlackMatrix> {
    Ok(SlackMatrix::build(m.bases().to_vec(), flacets(m)?))
}

/// `M|X (+) M/X`, kept on the original element labels.
pub fn face_restriction(m: &Matroid, x: ElementSet) -> Matroid {
    let rest = m.ground_set() & !x;
    let sum = direct_sum(&m.restrict(x), &m.contract(x));
    let labels: Vec<usize> = bits::elements(x).chain(bits::elements(rest)).collect();
    sum.permute(&labels)
}

/// Coordinate projection onto `coords` (in the given order), without duplicates.
pub fn projection_to(v: &PointConfig, coords: &[usize]) -> PointConfig {
    let mut points: Vec<Vec<BigRational>> = Vec::new();
    for p in &v.points {
        let q: Vec<BigRational> = coords.iter().map(|&i| p[i].clone()).collect();
        if !points.contains(&q) {
            points.push(q);
        }
    }
    PointConfig::new(coords.len(), points)
}
