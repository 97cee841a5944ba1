//! Minor containment, isomorphism-class enumeration of small matroids, and
//! excluded-minor searches.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, ElementSet};
use crate::catalog;
use crate::constructions::decompose;
use crate::error::{Error, Result};
use crate::geometry::{self, FacetKind};
use crate::graph::{self, Graph};
use crate::iso::{automorphisms, canonical_form, invariant_key, is_isomorphic};
use crate::matroid::Matroid;

/// Largest ground set handled by the class enumeration.
pub const MAX_ENUMERATION_SIZE: usize = 7;
/// Largest ground set handled by the labeled power-set scan.
pub const MAX_LABELED_SCAN_SIZE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub deleted: Vec<usize>,
    pub contracted: Vec<usize>,
    /// Pairs `(element of M, element of N)` covering the surviving elements.
    pub iso: Vec<(usize, usize)>,
}

impl MinorWitness {
    /// Re-applies the witness and checks that it lands exactly on `n`.
    pub fn verify(&self, m: &Matroid, n: &Matroid) -> bool {
        let d = bits::from_slice(&self.deleted);
        let c = bits::from_slice(&self.contracted);
        if d & c != 0 {
            return false;
        }
        let kept = m.ground_set() & !d & !c;
        let minor = m.minor(d, c);
        if self.iso.len() != minor.ground_size() {
            return false;
        }
        let mut perm = vec![usize::MAX; minor.ground_size()];
        for &(e, f) in &self.iso {
            if !bits::contains(kept, e) || f >= n.ground_size() {
                return false;
            }
            perm[bits::size(kept & (bits::singleton(e) - 1))] = f;
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == perm.len() && perm.iter().all(|&f| f != usize::MAX) && minor.permute(&perm) == *n
    }
}

/// Searches for `N` as a minor `M/C\D` with `C` independent and `D`
/// coindependent, so `|C| = rk(M) - rk(N)` and the kept set spans `M/C`.
pub fn has_minor(m: &Matroid, n: &Matroid) -> Option<MinorWitness> {
    let (size, rank) = (m.ground_size(), m.rank());
    let (nsize, nrank) = (n.ground_size(), n.rank());
    if nsize > size || nrank > rank || nsize - nrank > size - rank {
        return None;
    }
    let c_size = rank - nrank;
    let full = m.ground_set();
    for kept in bits::k_subsets(size, nsize) {
        let rest = full & !kept;
        for c_local in bits::k_subsets(bits::size(rest), c_size) {
            let c = bits::expand(c_local, rest);
            if !m.is_independent(c) || m.rank_of(kept | c) != rank {
                continue;
            }
            let d = rest & !c;
            let minor = m.minor(d, c);
            if minor.bases().len() != n.bases().len() {
                continue;
            }
            let perm = if minor == *n {
                Some((0..nsize).collect())
            } else {
                is_isomorphic(&minor, n)
            };
            if let Some(perm) = perm {
                return Some(MinorWitness {
                    deleted: bits::to_vec(d),
                    contracted: bits::to_vec(c),
                    iso: bits::elements(kept).zip(perm).collect(),
                });
            }
        }
    }
    None
}

/// Names of the excluded minors for 2-level matroids found in `m`.
pub fn excluded_minors_present(m: &Matroid) -> Vec<&'static str> {
    if m.ground_size() < 6 || m.rank() < 3 || m.ground_size() - m.rank() < 3 {
        return Vec::new();
    }
    catalog::excluded_minors()
        .into_iter()
        .filter(|(_, n)| has_minor(m, n).is_some())
        .map(|(name, _)| name)
        .collect()
}

pub fn is_two_level_by_minors(m: &Matroid) -> bool {
    excluded_minors_present(m).is_empty()
}

/// The four independent answers to "is `m` 2-level?".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoLevelVerdicts {
    pub levelness: bool,
    pub excluded_minors: bool,
    pub decomposition: bool,
    /// Vanishing ideal of the base configuration generated in degree <= 2.
    pub generation_degree: bool,
}

impl TwoLevelVerdicts {
    pub fn agree(&self) -> bool {
        let v = self.levelness;
        self.excluded_minors == v && self.decomposition == v && self.generation_degree == v
    }
}

pub fn two_level_verdicts(m: &Matroid) -> Result<TwoLevelVerdicts> {
    Ok(TwoLevelVerdicts {
        levelness: lev(m) <= 2,
        excluded_minors: is_two_level_by_minors(m),
        decomposition: crate::constructions::is_two_level_by_decomposition(m),
        generation_degree: crate::ideals::generation_degree_at_most(&geometry::base_configuration(m), 2)?,
    })
}

/// Isomorphism-class representatives, bucketed by an invariant key.
#[derive(Default)]
struct ClassSet {
    buckets: HashMap<Vec<usize>, Vec<Matroid>>,
}

impl ClassSet {
    fn into_sorted(self) -> Vec<Matroid> {
        let mut all: Vec<(Vec<ElementSet>, Matroid)> = self
            .buckets
            .into_values()
            .flatten()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|m| (canonical_form(&m), m))
            .collect();
        all.sort_by(|a, b| (a.1.rank(), &a.0).cmp(&(b.1.rank(), &b.0)));
        all.into_iter()
            .map(|(c, m)| Matroid::from_bases_unchecked(m.ground_size(), c))
            .collect()
    }
}

/// Reduces a list of matroids to one representative per isomorphism class,
/// each in canonical labeling, sorted by rank then canonical basis family.
pub fn isomorphism_classes(ms: Vec<Matroid>) -> Vec<Matroid> {
    let keyed: Vec<(Vec<usize>, Matroid)> = ms.into_par_iter().map(|m| (invariant_key(&m), m)).collect();
    let mut grouped: HashMap<Vec<usize>, Vec<Matroid>> = HashMap::new();
    for (k, m) in keyed {
        grouped.entry(k).or_default().push(m);
    }
    let reps: Vec<(Vec<usize>, Vec<Matroid>)> = grouped
        .into_par_iter()
        .map(|(k, group)| {
            let mut reps: Vec<Matroid> = Vec::new();
            for m in group {
                if !reps.iter().any(|r| is_isomorphic(r, &m).is_some()) {
                    reps.push(m);
                }
            }
            (k, reps)
        })
        .collect();
    let mut set = ClassSet::default();
    for (k, group) in reps {
        set.buckets.insert(k, group);
    }
    set.into_sorted()
}

/// Flats of `m` of rank `k`.
fn flats_of_rank(m: &Matroid, k: usize) -> Vec<ElementSet> {
    (0..=m.ground_set())
        .filter(|&s| m.rank_of(s) == k && m.is_flat(s))
        .collect()
}

/// All single-element extensions of `m` in which the new element (labeled
/// `n`) is not a coloop. They correspond to linear subclasses of hyperplanes:
/// sets `H` such that two members meeting in a coline force every hyperplane
/// through that coline into `H`. Then `I + e` is a basis iff `cl(I)` lies
/// outside `H`.
fn extensions(m: &Matroid) -> Vec<Matroid> {
    let n = m.ground_size();
    let r = m.rank();
    if r == 0 {
        return vec![Matroid::from_bases_unchecked(n + 1, m.bases().to_vec())];
    }
    let hyperplanes = flats_of_rank(m, r - 1);
    let colines = if r >= 2 { flats_of_rank(m, r - 2) } else { Vec::new() };
    let through: Vec<u64> = colines
        .iter()
        .map(|&l| {
            hyperplanes
                .iter()
                .enumerate()
                .filter(|(_, &h)| h & l == l)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    assert!(hyperplanes.len() <= 24, "too many hyperplanes for subclass scan");
    let independent: Vec<(ElementSet, usize)> = bits::k_subsets(n, r - 1)
        .into_iter()
        .filter(|&i| m.is_independent(i))
        .map(|i| {
            let cl = m.closure(i);
            (i, hyperplanes.iter().position(|&h| h == cl).unwrap())
        })
        .collect();
    let e = bits::singleton(n);
    let mut out = Vec::new();
    for subclass in 0u64..(1 << hyperplanes.len()) {
        let linear = through.iter().all(|&t| {
            let hit = (subclass & t).count_ones();
            hit <= 1 || subclass & t == t
        });
        if !linear {
            continue;
        }
        let mut bases = m.bases().to_vec();
        bases.extend(independent.iter().filter(|(_, h)| subclass >> h & 1 == 0).map(|(i, _)| i | e));
        out.push(Matroid::from_bases_unchecked(n + 1, bases));
    }
    out
}

fn with_coloop(m: &Matroid) -> Matroid {
    let e = bits::singleton(m.ground_size());
    Matroid::from_bases_unchecked(m.ground_size() + 1, m.bases().iter().map(|&b| b | e).collect())
}

static CLASS_CACHE: Mutex<Vec<Vec<Matroid>>> = Mutex::new(Vec::new());

/// Isomorphism classes of all matroids on exactly `n` elements (all ranks).
pub fn all_classes(n: usize) -> Result<Vec<Matroid>> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeLimit(format!("enumeration supports at most {MAX_ENUMERATION_SIZE} elements, got {n}")));
    }
    let mut cache = CLASS_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(vec![Matroid::from_bases_unchecked(0, vec![0])]);
    }
    while cache.len() <= n {
        let size = cache.len();
        let prev = &cache[size - 1];
        // Ranks up to size/2 come from extensions; the rest are duals.
        let low: Vec<Matroid> = prev
            .par_iter()
            .flat_map_iter(|m| {
                let mut v = Vec::new();
                if m.rank() <= size / 2 {
                    v.extend(extensions(m));
                }
                if m.rank() < size / 2 {
                    v.push(with_coloop(m));
                }
                v
            })
            .filter(|m| m.rank() <= size / 2)
            .collect();
        let mut classes = isomorphism_classes(low);
        let high: Vec<Matroid> = classes
            .iter()
            .filter(|m| 2 * m.rank() < size)
            .map(Matroid::dual)
            .collect();
        classes.extend(high);
        let classes = isomorphism_classes(classes);
        cache.push(classes);
    }
    Ok(cache[n].clone())
}

/// Isomorphism-class representatives of rank-`r` matroids on `n` elements.
pub fn enumerate_matroids(n: usize, r: usize) -> Result<Vec<Matroid>> {
    Ok(all_classes(n)?.into_iter().filter(|m| m.rank() == r).collect())
}

/// Exchange-axiom check on a membership table indexed by subset mask.
fn family_is_matroid(members: &[bool], family: &[ElementSet]) -> bool {
    for &b1 in family {
        for &b2 in family {
            for x in bits::elements(b1 & !b2) {
                let without = b1 & !bits::singleton(x);
                if !bits::elements(b2 & !b1).any(|y| members[(without | bits::singleton(y)) as usize]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every labeled matroid of rank `r` on `n <= 6` elements, found by scanning
/// all nonempty families of `r`-subsets.
pub fn labeled_scan(n: usize, r: usize) -> Result<Vec<Matroid>> {
    if n > MAX_LABELED_SCAN_SIZE {
        return Err(Error::SizeLimit(format!("labeled scan supports at most {MAX_LABELED_SCAN_SIZE} elements, got {n}")));
    }
    let subsets = bits::k_subsets(n, r);
    let total: u64 = 1 << subsets.len();
    Ok((1..total)
        .into_par_iter()
        .filter_map(|f| {
            let family: Vec<ElementSet> = (0..subsets.len()).filter(|i| f >> i & 1 == 1).map(|i| subsets[i]).collect();
            let mut members = vec![false; 1 << n];
            for &b in &family {
                members[b as usize] = true;
            }
            family_is_matroid(&members, &family).then(|| Matroid::from_bases_unchecked(n, family))
        })
        .collect())
}

/// Number of labelings of a matroid: `n! / |Aut(M)|`.
pub fn labeling_count(m: &Matroid) -> usize {
    let fact: usize = (1..=m.ground_size()).product();
    fact / automorphisms(m).len()
}

/// Levelness of a matroid (component maximum, 1 for a point).
pub fn lev(m: &Matroid) -> usize {
    geometry::levelness(m).0
}

fn single_element_minors(m: &Matroid) -> Vec<Matroid> {
    (0..m.ground_size())
        .flat_map(|e| {
            let s = bits::singleton(e);
            [m.delete(s), m.contract(s)]
        })
        .collect()
}

/// `Lev(M) = k` and every single-element deletion and contraction has smaller levelness.
pub fn is_minimally_k_level(m: &Matroid, k: usize) -> bool {
    lev(m) == k && single_element_minors(m).iter().all(|n| lev(n) < k)
}

/// Minimally `k`-level classes on at most `n_max` elements.
pub fn minimally_k_level(k: usize, n_max: usize) -> Result<Vec<Matroid>> {
    if n_max > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeLimit(format!("minimally k-level search supports at most {MAX_ENUMERATION_SIZE} elements")));
    }
    let mut out = Vec::new();
    for n in 0..=n_max {
        let found: Vec<Matroid> = all_classes(n)?
            .into_par_iter()
            .filter(|m| is_minimally_k_level(m, k))
            .collect();
        for m in &found {
            assert!(m.ground_size() <= 3 || m.is_three_connected(), "minimally k-level matroid must be 3-connected");
        }
        out.extend(found);
    }
    Ok(out)
}

/// Connected, and no single-element deletion is connected.
pub fn is_minimally_connected(m: &Matroid) -> bool {
    m.is_connected() && (0..m.ground_size()).all(|e| !m.delete(bits::singleton(e)).is_connected())
}

/// Parallel classes (of non-loops) with at least two elements.
pub fn nontrivial_parallel_classes(m: &Matroid) -> Vec<ElementSet> {
    let loops = m.loops();
    let mut seen: ElementSet = 0;
    let mut out = Vec::new();
    for e in bits::elements(m.ground_set() & !loops) {
        if bits::contains(seen, e) {
            continue;
        }
        let class = m.closure(bits::singleton(e)) & !loops;
        seen |= class;
        if bits::size(class) >= 2 {
            out.push(class);
        }
    }
    out
}

/// Structural facts every minimally `k`-level matroid satisfies for each
/// `k`-level flacet `F`: `rk(F) = k-1`, `E-F` independent, `M|F` and
/// `(M/F)*` minimally connected.
pub fn minimal_flacet_properties_hold(m: &Matroid, k: usize) -> bool {
    let Ok(facets) = geometry::flacets(m) else { return false };
    facets
        .iter()
        .filter(|f| f.kind == FacetKind::Flacet && f.levelness == k)
        .all(|f| {
            let rest = m.ground_set() & !f.subset;
            f.rank_s == k - 1
                && m.is_independent(rest)
                && is_minimally_connected(&m.restrict(f.subset))
                && is_minimally_connected(&m.contract(f.subset).dual())
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBoundReport {
    pub k: usize,
    pub bound: usize,
    pub sizes_found: Vec<usize>,
    pub none_above_bound: bool,
    pub minimally_connected_bound: bool,
    pub parallel_class_bound: bool,
}

impl SizeBoundReport {
    pub fn passed(&self) -> bool {
        self.sizes_found.iter().all(|&s| s <= self.bound)
            && self.none_above_bound
            && self.minimally_connected_bound
            && self.parallel_class_bound
    }
}

/// Size bound for minimally `k`-level matroids. The generic bound is
/// `max(3k-4, 4k-8)`; for `k = 3` a rank-2 flacet restricts to `U(3,2)`, so
/// `|F| = 3` and the effective bound is 6. Only `k = 3` fits the enumeration.
pub fn verify_size_bound_report(k: usize) -> Result<SizeBoundReport> {
    if k != 3 {
        return Err(Error::SizeLimit(format!("size bound check needs enumeration beyond {MAX_ENUMERATION_SIZE} elements for k = {k}")));
    }
    let bound = 6;
    let found = minimally_k_level(k, MAX_ENUMERATION_SIZE)?;
    let sizes_found: Vec<usize> = found.iter().map(Matroid::ground_size).collect();
    let none_above_bound = sizes_found.iter().all(|&s| s <= bound);

    let mut minimally_connected_bound = true;
    let mut parallel_class_bound = true;
    for n in 0..=MAX_ENUMERATION_SIZE {
        for m in all_classes(n)? {
            let r = m.rank();
            if r >= 3 && is_minimally_connected(&m) {
                let k2 = graph::Graph::complete_bipartite(2, r - 1).graphic_matroid();
                let extremal = is_isomorphic(&m, &k2).is_some();
                let ok = n <= 2 * r - 2 && ((n == 2 * r - 2) == extremal);
                minimally_connected_bound &= ok;
            }
            if n >= 1 && is_minimally_connected(&m.dual()) {
                let uniform_line = r == 1 && n >= 3 && m.is_uniform();
                parallel_class_bound &= uniform_line || nontrivial_parallel_classes(&m).len() > r;
            }
        }
    }
    Ok(SizeBoundReport {
        k,
        bound,
        sizes_found,
        none_above_bound,
        minimally_connected_bound,
        parallel_class_bound,
    })
}

pub fn verify_size_bound(k: usize) -> Result<bool> {
    Ok(verify_size_bound_report(k)?.passed())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMinorReport {
    pub k: usize,
    /// Edge counts of the cones `cone(H)` used as excluded minors.
    pub excluded_minor_sizes: Vec<usize>,
    pub graphs_checked: usize,
    pub mismatches: Vec<Vec<(usize, usize)>>,
    /// For `k = 3`: every 3-level graph decomposes into `C2`, `C3`, `C3*` and `K4`.
    pub decomposition_ok: Option<bool>,
}

impl GraphMinorReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.decomposition_ok.unwrap_or(true)
    }
}

/// Simple biconnected graphs with `edges` edges on at most `edges` vertices,
/// drawn with a fixed seed.
pub fn random_biconnected_graphs(count: usize, edges: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let v = rng.gen_range(3..=edges.min(8));
        let mut pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
        if pairs.len() < edges {
            continue;
        }
        pairs.shuffle(&mut rng);
        pairs.truncate(edges);
        let g = Graph::new(v, pairs).expect("valid edges");
        if g.is_biconnected() && (0..v).all(|x| g.degree(x) > 0) {
            out.push(g);
        }
    }
    out
}

/// Leaves allowed in the decomposition of a 3-level graph.
fn is_three_level_building_block(m: &Matroid) -> bool {
    let blocks = [
        Matroid::uniform(2, 1),
        Matroid::uniform(3, 2),
        Matroid::uniform(3, 1),
        catalog::mk4(),
    ];
    m.ground_size() <= 1 || blocks.iter().any(|b| is_isomorphic(m, b).is_some())
}

/// Checks `Lev(G) <= k` against the absence of `cone(H)` minors, `H`
/// minimally biconnected on `k+1` vertices, over all biconnected simple
/// graphs with at most 6 edges, plus targeted larger graphs for `k = 4`.
pub fn graph_excluded_minor_report(k: usize) -> Result<GraphMinorReport> {
    if !(2..=4).contains(&k) {
        return Err(Error::SizeLimit(format!("graph excluded-minor check supports k in 2..=4, got {k}")));
    }
    let cones: Vec<Matroid> = graph::minimally_biconnected_graphs(k + 1)?
        .iter()
        .map(|h| h.cone().graphic_matroid())
        .collect();
    let mut graphs = graph::biconnected_simple_graphs(6);
    if k == 4 {
        graphs.push(Graph::wheel(5));
        graphs.push(Graph::complete_bipartite(2, 3).cone());
        graphs.extend(random_biconnected_graphs(10, 7, 0x5eed));
    }
    let results: Vec<(Vec<(usize, usize)>, bool, bool)> = graphs
        .par_iter()
        .map(|g| {
            let m = g.graphic_matroid();
            let level = lev(&m);
            let has_cone = cones.iter().any(|c| has_minor(&m, c).is_some());
            let agree = (level <= k) == !has_cone;
            let decomposes = k != 3
                || level > 3
                || decompose(&m).leaves().iter().all(is_three_level_building_block);
            (g.edges().to_vec(), agree, decomposes)
        })
        .collect();
    Ok(GraphMinorReport {
        k,
        excluded_minor_sizes: cones.iter().map(Matroid::ground_size).collect(),
        graphs_checked: results.len(),
        mismatches: results.iter().filter(|r| !r.1).map(|r| r.0.clone()).collect(),
        decomposition_ok: (k == 3).then(|| results.iter().all(|r| r.2)),
    })
}

pub fn graph_excluded_minor_check(k: usize) -> Result<bool> {
    Ok(graph_excluded_minor_report(k)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::is_two_level_by_decomposition;

    #[test]
    fn wheel4_has_mk4_minor() {
        let w4 = catalog::wheel(4);
        let mk4 = catalog::mk4();
        let w = has_minor(&w4, &mk4).unwrap();
        assert!(w.verify(&w4, &mk4));
        assert_eq!(w.contracted.len(), 1);
        assert!(w.contracted[0] < 4, "contracts a rim edge");
    }

    #[test]
    fn uniform_has_no_mk4_minor() {
        for (n, k) in [(6, 3), (7, 3), (7, 4)] {
            assert!(has_minor(&Matroid::uniform(n, k), &catalog::mk4()).is_none());
        }
    }

    #[test]
    fn self_minor_is_identity() {
        let m = catalog::q6();
        let w = has_minor(&m, &m).unwrap();
        assert!(w.deleted.is_empty() && w.contracted.is_empty());
        assert!(w.iso.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn two_level_by_minors_examples() {
        assert!(is_two_level_by_minors(&Graph::complete_bipartite(2, 3).graphic_matroid()));
        for n in 3..=5 {
            assert!(!is_two_level_by_minors(&catalog::wheel(n)));
        }
        assert_eq!(excluded_minors_present(&catalog::whirl3()), vec!["W3_whirl"]);
        assert_eq!(excluded_minors_present(&catalog::wheel(4)), vec!["MK4"]);
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| all_classes(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 8, 17, 38, 98]);
        assert_eq!(enumerate_matroids(2, 1).unwrap().len(), 2);
        assert!(matches!(all_classes(8), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn n4_rank2_contains_expected_classes() {
        let classes = enumerate_matroids(4, 2).unwrap();
        let running =
            Matroid::from_basis_lists(4, &[vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).unwrap();
        for target in [Matroid::uniform(4, 2), running] {
            assert!(classes.iter().any(|m| is_isomorphic(m, &target).is_some()));
        }
    }

    #[test]
    fn labeled_scan_recounts_classes() {
        for n in 0..=5 {
            let mut labeled = Vec::new();
            for r in 0..=n {
                labeled.extend(labeled_scan(n, r).unwrap());
            }
            let classes = all_classes(n).unwrap();
            assert_eq!(isomorphism_classes(labeled.clone()).len(), classes.len());
            let total: usize = classes.iter().map(labeling_count).sum();
            assert_eq!(total, labeled.len());
        }
    }

    #[test]
    fn extensions_are_matroids() {
        for m in all_classes(5).unwrap() {
            for e in extensions(&m) {
                assert!(Matroid::from_bases(e.ground_size(), e.bases().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn minimally_three_level_up_to_six() {
        let found = minimally_k_level(3, 6).unwrap();
        assert_eq!(found.len(), 4);
        for (name, m) in catalog::excluded_minors() {
            assert!(found.iter().any(|f| is_isomorphic(f, &m).is_some()), "{name}");
        }
        for m in &found {
            assert!(minimal_flacet_properties_hold(m, 3));
        }
        assert!(minimally_k_level(3, 5).unwrap().is_empty());
    }

    #[test]
    fn minimally_two_level_is_trivial() {
        let found = minimally_k_level(2, 6).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0], Matroid::uniform(2, 1));
    }

    #[test]
    fn four_way_agreement_up_to_five() {
        for n in 0..=5 {
            for m in all_classes(n).unwrap() {
                let by_lev = lev(&m) <= 2;
                assert_eq!(by_lev, is_two_level_by_minors(&m));
                assert_eq!(by_lev, is_two_level_by_decomposition(&m));
                let v = two_level_verdicts(&m).unwrap();
                assert!(v.agree() && v.levelness, "{:?}", m.basis_lists());
            }
        }
    }

    #[test]
    fn parallel_classes() {
        let m = Matroid::uniform(3, 1);
        assert_eq!(nontrivial_parallel_classes(&m), vec![0b111]);
        assert!(is_minimally_connected(&Matroid::uniform(4, 3)));
        assert!(!is_minimally_connected(&catalog::mk4()));
    }

    #[test]
    fn graph_k2_is_series_parallel() {
        let r = graph_excluded_minor_report(2).unwrap();
        assert_eq!(r.excluded_minor_sizes, vec![6]);
        assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn graph_k3_excludes_w4() {
        let r = graph_excluded_minor_report(3).unwrap();
        assert_eq!(r.excluded_minor_sizes, vec![8]);
        assert!(r.passed());
        assert_eq!(r.decomposition_ok, Some(true));
    }
}
