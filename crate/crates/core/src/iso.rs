//! Matroid isomorphism by backtracking over element bijections.
//!
//! Candidates are pruned with cheap invariants: basis counts, per-element
//! basis incidence, pairwise co-occurrence counts, and the circuit size
//! multiset.

use crate::bits::{self, ElementSet};
use crate::matroid::Matroid;

struct Profile {
    /// `pair[e][f]` = number of bases containing both `e` and `f` (`pair[e][e]` = incidence of `e`).
    pair: Vec<Vec<usize>>,
    /// Element signature: own incidence followed by its sorted pair row.
    signature: Vec<Vec<usize>>,
}

impl Profile {
    fn new(m: &Matroid) -> Self {
        let n = m.ground_size();
        let mut pair = vec![vec![0usize; n]; n];
        for &b in m.bases() {
            let es = bits::to_vec(b);
            for &e in &es {
                for &f in &es {
                    pair[e][f] += 1;
                }
            }
        }
        let signature = (0..n)
            .map(|e| {
                let mut row: Vec<usize> = (0..n).filter(|&f| f != e).map(|f| pair[e][f]).collect();
                row.sort_unstable();
                let mut sig = vec![pair[e][e]];
                sig.extend(row);
                sig
            })
            .collect();
        Profile { pair, signature }
    }
}

fn circuit_sizes(m: &Matroid) -> Vec<usize> {
    let mut v: Vec<usize> = m.circuits().into_iter().map(bits::size).collect();
    v.sort_unstable();
    v
}

fn quick_reject(m: &Matroid, n: &Matroid) -> bool {
    m.ground_size() != n.ground_size() || m.rank() != n.rank() || m.bases().len() != n.bases().len()
}

/// Searches bijections `perm` with `perm[e_m] = e_n`. Calls `visit` for each
/// valid isomorphism; stops when `visit` returns `false`.
fn search(m: &Matroid, n: &Matroid, mut visit: impl FnMut(&[usize]) -> bool) {
    if quick_reject(m, n) {
        return;
    }
    let pm = Profile::new(m);
    let pn = Profile::new(n);
    let mut sm = pm.signature.clone();
    let mut sn = pn.signature.clone();
    sm.sort();
    sn.sort();
    if sm != sn {
        return;
    }
    if m.ground_size() <= 12 && circuit_sizes(m) != circuit_sizes(n) {
        return;
    }
    let size = m.ground_size();
    // Assign the most constrained elements of M first.
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&e| pm.signature.iter().filter(|s| **s == pm.signature[e]).count());
    let target: Vec<ElementSet> = n.bases().to_vec();
    let mut perm = vec![usize::MAX; size];
    let mut used = vec![false; size];

    fn rec(
        depth: usize,
        order: &[usize],
        pm: &Profile,
        pn: &Profile,
        m: &Matroid,
        target: &[ElementSet],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            let mut mapped: Vec<ElementSet> = m.bases().iter().map(|&b| bits::permute(b, perm)).collect();
            mapped.sort_unstable();
            if mapped == target {
                return visit(perm);
            }
            return true;
        }
        let e = order[depth];
        for f in 0..perm.len() {
            if used[f] || pm.signature[e] != pn.signature[f] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&g| pm.pair[e][g] == pn.pair[f][perm[g]]);
            if !consistent {
                continue;
            }
            perm[e] = f;
            used[f] = true;
            let keep_going = rec(depth + 1, order, pm, pn, m, target, perm, used, visit);
            used[f] = false;
            perm[e] = usize::MAX;
            if !keep_going {
                return false;
            }
        }
        true
    }

    rec(0, &order, &pm, &pn, m, &target, &mut perm, &mut used, &mut visit);
}

/// Isomorphism-invariant key used to bucket matroids before exact comparison.
pub(crate) fn invariant_key(m: &Matroid) -> Vec<usize> {
    let mut key = vec![m.ground_size(), m.rank(), m.bases().len()];
    let mut sigs = Profile::new(m).signature;
    sigs.sort();
    for s in sigs {
        key.extend(s);
    }
    if m.ground_size() <= 12 {
        key.push(usize::MAX);
        key.extend(circuit_sizes(m));
    }
    key
}

/// Returns an element bijection mapping the bases of `m` onto those of `n`.
pub fn is_isomorphic(m: &Matroid, n: &Matroid) -> Option<Vec<usize>> {
    let mut found = None;
    search(m, n, |p| {
        found = Some(p.to_vec());
        false
    });
    found
}

/// All automorphisms of `m` as element permutations.
pub fn automorphisms(m: &Matroid) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search(m, m, |p| {
        out.push(p.to_vec());
        true
    });
    out
}

/// Canonical form: the lexicographically least sorted basis family over all
/// relabelings that order elements by an isomorphism-invariant signature.
pub fn canonical_form(m: &Matroid) -> Vec<ElementSet> {
    let n = m.ground_size();
    let prof = Profile::new(m);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut sigs: Vec<(Vec<usize>, usize)> = (0..n).map(|e| (prof.signature[e].clone(), e)).collect();
    sigs.sort();
    let mut slots: Vec<Vec<usize>> = Vec::new();
    for (i, (sig, e)) in sigs.iter().enumerate() {
        if i > 0 && sigs[i - 1].0 == *sig {
            classes.last_mut().unwrap().push(*e);
            slots.last_mut().unwrap().push(i);
        } else {
            classes.push(vec![*e]);
            slots.push(vec![i]);
        }
    }
    let mut best: Option<Vec<ElementSet>> = None;
    let mut perm = vec![0usize; n];
    fn rec(
        ci: usize,
        classes: &[Vec<usize>],
        slots: &[Vec<usize>],
        perm: &mut Vec<usize>,
        m: &Matroid,
        best: &mut Option<Vec<ElementSet>>,
    ) {
        if ci == classes.len() {
            let mut mapped: Vec<ElementSet> = m.bases().iter().map(|&b| bits::permute(b, perm)).collect();
            mapped.sort_unstable();
            if best.as_ref().map_or(true, |b| mapped < *b) {
                *best = Some(mapped);
            }
            return;
        }
        let elems = &classes[ci];
        let mut order: Vec<usize> = slots[ci].clone();
        permute_all(&mut order, 0, &mut |o| {
            for (e, &s) in elems.iter().zip(o.iter()) {
                perm[*e] = s;
            }
            rec(ci + 1, classes, slots, perm, m, best);
        });
    }
    rec(0, &classes, &slots, &mut perm, m, &mut best);
    best.unwrap()
}

/// Heap-style recursive enumeration of all orderings of `v`.
pub(crate) fn permute_all(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute_all(v, k + 1, f);
        v.swap(k, i);
    }
}
