//! Oracles and property checks shared by the integration tests. Everything
//! here is computed directly from definitions, without the library's
//! geometry or certificate code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};
use rand::seq::SliceRandom;
use rand::SeedableRng;

use matroid_theta::bits::{self, ElementSet};
use matroid_theta::certificates::theta_rank_estimate;
use matroid_theta::constructions::series_connection;
use matroid_theta::enumeration::all_classes;
use matroid_theta::geometry::{self, flacets, is_k_sequence, k_sequence, k_sequence_with, levelness};
use matroid_theta::Matroid;

pub fn config(cases: u32, seed: u64) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn int_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c] == 0 {
                continue;
            }
            let (a, b) = (rows[r][c], rows[i][c]);
            for j in 0..cols {
                rows[i][j] = rows[i][j] * a - rows[r][j] * b;
            }
            let g = rows[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                rows[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn brute_exchange(family: &[ElementSet]) -> bool {
    let set: BTreeSet<ElementSet> = family.iter().copied().collect();
    set.iter().all(|&b1| {
        set.iter().all(|&b2| {
            bits::elements(b1 & !b2).all(|x| bits::elements(b2 & !b1).any(|y| set.contains(&((b1 & !(1 << x)) | (1 << y)))))
        })
    })
}

/// Facets of the base polytope of a connected matroid, keyed by their sets of
/// tight bases, found among all rank inequalities `x(S) <= rk(S)` by the
/// affine dimension of the tight set. The value is the number of distinct
/// `|B n S|` over all bases.
pub fn hull_facet_levels(m: &Matroid) -> BTreeMap<Vec<ElementSet>, usize> {
    let n = m.ground_size();
    let all = m.bases();
    let dim = n - 1;
    let affine_rank = |t: &[ElementSet]| -> usize {
        int_rank(t.iter().map(|&b| std::iter::once(1).chain((0..n).map(|e| i128::from(b >> e & 1 == 1))).collect()).collect())
    };
    let mut out = BTreeMap::new();
    for s in 1..bits::full(n) {
        let values: BTreeSet<usize> = all.iter().map(|&b| bits::size(b & s)).collect();
        let rk = *values.last().unwrap();
        let tight: Vec<ElementSet> = all.iter().copied().filter(|&b| bits::size(b & s) == rk).collect();
        if tight.len() < all.len() && affine_rank(&tight) == dim {
            out.insert(tight, values.len());
        }
    }
    out
}

pub fn hull_facets(m: &Matroid) -> BTreeSet<Vec<ElementSet>> {
    hull_facet_levels(m).into_keys().collect()
}

pub fn library_facets(m: &Matroid) -> BTreeSet<Vec<ElementSet>> {
    flacets(m)
        .unwrap()
        .iter()
        .map(|f| m.bases().iter().copied().filter(|&b| f.slack(b) == 0).collect())
        .collect()
}

/// Levelness from the brute-force facets, maximized over components.
pub fn brute_levelness(m: &Matroid) -> usize {
    m.components()
        .into_iter()
        .map(|c| hull_facet_levels(&m.restrict(c)).into_values().max().unwrap_or(1))
        .max()
        .unwrap_or(1)
}

/// A random isomorphism class on `1..=max_n` elements under a random labeling.
pub fn any_matroid(max_n: usize) -> impl Strategy<Value = Matroid> {
    (1..=max_n, any::<usize>(), any::<u64>()).prop_map(|(n, idx, seed)| {
        let classes = all_classes(n).unwrap();
        let m = &classes[idx % classes.len()];
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        m.permute(&perm)
    })
}

pub fn connected_matroid(max_n: usize) -> impl Strategy<Value = Matroid> {
    any_matroid(max_n).prop_filter("connected with at least two elements", |m| m.ground_size() >= 2 && m.is_connected())
}

fn run<S: Strategy>(cfg: Config, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    TestRunner::new(cfg).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn prop_exchange_axiom() -> Result<(), String> {
    let family = (1usize..=5).prop_flat_map(|n| {
        (Just(n), 0..=n).prop_flat_map(|(n, k)| {
            let subsets = bits::k_subsets(n, k);
            let len = subsets.len();
            (Just(n), proptest::sample::subsequence(subsets, 1..=len))
        })
    });
    run(config(400, 0xe1), family, |(n, fam)| {
        let verdict = Matroid::from_bases(n, fam.iter().copied()).is_ok();
        prop_assert_eq!(verdict, brute_exchange(&fam));
        Ok(())
    })?;
    // every enumerated class must pass
    run(config(100, 0xe2), any_matroid(6), |m| {
        prop_assert!(Matroid::from_bases(m.ground_size(), m.bases().iter().copied()).is_ok());
        prop_assert!(brute_exchange(m.bases()));
        Ok(())
    })
}

pub fn prop_dual_involution() -> Result<(), String> {
    run(config(200, 0xd1), any_matroid(7), |m| {
        let d = m.dual();
        prop_assert_eq!(d.dual(), m.clone());
        prop_assert_eq!(d.rank(), m.ground_size() - m.rank());
        for &b in d.bases() {
            prop_assert!(m.is_basis(m.ground_set() & !b));
        }
        Ok(())
    })
}

pub fn prop_delete_contract_duality() -> Result<(), String> {
    run(config(200, 0xd2), (any_matroid(7), any::<u32>()), |(m, x)| {
        let x = x & m.ground_set();
        prop_assert_eq!(m.delete(x).dual(), m.dual().contract(x));
        prop_assert_eq!(m.contract(x).dual(), m.dual().delete(x));
        Ok(())
    })
}

pub fn prop_minor_monotone_levelness() -> Result<(), String> {
    run(config(150, 0x11), (any_matroid(7), any::<u32>(), any::<u32>()), |(m, d, c)| {
        let d = d & m.ground_set();
        let c = c & m.ground_set() & !d;
        let minor = m.minor(d, c);
        prop_assert!(levelness(&minor).0 <= levelness(&m).0);
        prop_assert!(brute_levelness(&minor) <= brute_levelness(&m));
        Ok(())
    })
}

pub fn prop_facets_match_hull() -> Result<(), String> {
    run(config(120, 0xfa), connected_matroid(7), |m| {
        prop_assert_eq!(library_facets(&m), hull_facets(&m));
        Ok(())
    })
}

/// Picks a base point of `m` that is neither a loop nor a coloop.
fn base_point(m: &Matroid, pick: usize) -> Option<usize> {
    let ok: Vec<usize> = (0..m.ground_size()).filter(|&e| !m.is_loop(e) && !m.is_coloop(e)).collect();
    (!ok.is_empty()).then(|| ok[pick % ok.len()])
}

fn series_pair() -> impl Strategy<Value = (Matroid, usize, Matroid, usize)> {
    (connected_matroid(5), connected_matroid(5), any::<usize>(), any::<usize>()).prop_filter_map("base points", |(a, b, i, j)| {
        Some((a.clone(), base_point(&a, i)?, b.clone(), base_point(&b, j)?))
    })
}

/// The section `x -> (x|E1 + slack at p1, x|E2 + slack at p2)` maps the bases
/// of the series connection bijectively onto pairs of bases that do not both
/// contain their base point.
pub fn prop_series_vertex_isomorphism() -> Result<(), String> {
    run(config(150, 0x38), series_pair(), |(m1, p1, m2, p2)| {
        let s = series_connection(&m1, p1, &m2, p2).unwrap();
        let (n1, n2) = (m1.ground_size(), m2.ground_size());
        prop_assert_eq!(s.ground_size(), n1 + n2 - 1);
        // labels of S: M1's labels, then M2's elements other than p2 in order
        let m2_labels: Vec<usize> = (0..n2).filter(|&e| e != p2).collect();
        let mut image = BTreeSet::new();
        for &b in s.bases() {
            let part1 = b & bits::full(n1) & !(1 << p1);
            let mut part2: ElementSet = 0;
            for (i, &e) in m2_labels.iter().enumerate() {
                if b >> (n1 + i) & 1 == 1 {
                    part2 |= 1 << e;
                }
            }
            let slack1 = m1.rank() as i64 - bits::size(part1) as i64;
            let slack2 = m2.rank() as i64 - bits::size(part2) as i64;
            prop_assert!((0..=1).contains(&slack1) && (0..=1).contains(&slack2));
            let b1 = part1 | if slack1 == 1 { 1 << p1 } else { 0 };
            let b2 = part2 | if slack2 == 1 { 1 << p2 } else { 0 };
            image.insert((b1, b2));
        }
        prop_assert_eq!(image.len(), s.bases().len());
        let target: BTreeSet<(ElementSet, ElementSet)> = m1
            .bases()
            .iter()
            .flat_map(|&b1| m2.bases().iter().map(move |&b2| (b1, b2)))
            .filter(|&(b1, b2)| (b1 >> p1 & 1) + (b2 >> p2 & 1) <= 1)
            .collect();
        prop_assert_eq!(image, target);
        Ok(())
    })
}

pub fn prop_series_max_rule() -> Result<(), String> {
    run(config(100, 0x39), series_pair(), |(m1, p1, m2, p2)| {
        let s = series_connection(&m1, p1, &m2, p2).unwrap();
        let (l1, l2, ls) = (brute_levelness(&m1), brute_levelness(&m2), brute_levelness(&s));
        prop_assert_eq!(ls, l1.max(l2));
        prop_assert_eq!(levelness(&s).0, ls);
        Ok(())
    })?;
    run(config(12, 0x3a), series_pair(), |(m1, p1, m2, p2)| {
        let s = series_connection(&m1, p1, &m2, p2).unwrap();
        let (lo1, up1) = theta_rank_estimate(&m1, 3).unwrap();
        let (lo2, up2) = theta_rank_estimate(&m2, 3).unwrap();
        let (los, ups) = theta_rank_estimate(&s, 3).unwrap();
        prop_assert_eq!(los, lo1.max(lo2));
        prop_assert!(ups.unwrap() <= up1.unwrap().max(up2.unwrap()));
        Ok(())
    })
}

pub fn prop_k_sequences() -> Result<(), String> {
    run(config(120, 0x6e), connected_matroid(7), |m| {
        for f in flacets(&m).unwrap().into_iter().filter(|f| f.kind == geometry::FacetKind::Flacet) {
            let seq = k_sequence(&m, f.subset).expect("every flacet has a k-sequence");
            prop_assert!(is_k_sequence(&m, f.subset, &seq));
            let values: Vec<usize> = seq.iter().map(|&b| bits::size(b & f.subset)).collect();
            prop_assert_eq!(&values, &f.level_values);
            for w in seq.windows(2) {
                prop_assert_eq!(bits::size(w[0] ^ w[1]), 2);
            }
            for e in bits::elements(m.ground_set() & !f.subset) {
                let kept = k_sequence_with(&m, f.subset, Some(e)).expect("a k-sequence through e");
                prop_assert!(is_k_sequence(&m, f.subset, &kept));
                prop_assert!(kept.iter().all(|&b| b >> e & 1 == 1));
            }
        }
        Ok(())
    })
}

/// Every property check, by name.
pub fn all_properties() -> Vec<(&'static str, fn() -> Result<(), String>)> {
    vec![
        ("exchange axiom", prop_exchange_axiom),
        ("dual involution", prop_dual_involution),
        ("(M\\X)* = M*/X", prop_delete_contract_duality),
        ("minor-monotone levelness", prop_minor_monotone_levelness),
        ("facets vs brute-force hull", prop_facets_match_hull),
        ("series vertex isomorphism", prop_series_vertex_isomorphism),
        ("series max rule", prop_series_max_rule),
        ("k-sequences", prop_k_sequences),
    ]
}
