//! Matroids stored as explicit basis families.
//!
//! Elements are the indices `0..n` with `n <= 32`, and every basis is a `u32`
//! bit mask. All operations are pure and return new matroids; minors relabel
//! the surviving elements to `0..n'` preserving their relative order.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bits::{self, ElementSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    ground_size: usize,
    rank: usize,
    /// Sorted ascending by mask value, without duplicates.
    bases: Vec<ElementSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetRankReport {
    pub subset: Vec<usize>,
    pub rank: usize,
    pub is_flat: bool,
    pub is_circuit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    /// Components as sorted element lists, ordered by their least element.
    pub components: Vec<Vec<usize>>,
    pub count: usize,
}

impl Matroid {
    /// Builds a matroid from an explicit basis list, validating the exchange axiom.
    pub fn from_bases<I>(ground_size: usize, basis_list: I) -> Result<Self>
    where
        I: IntoIterator<Item = ElementSet>,
    {
        if ground_size > 32 {
            return Err(Error::GroundSetTooLarge(ground_size));
        }
        let mut bases: Vec<ElementSet> = basis_list.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(Error::EmptyBasisFamily);
        };
        let mask = bits::full(ground_size);
        for &b in &bases {
            if b & !mask != 0 {
                let element = bits::elements(b & !mask).next().unwrap();
                return Err(Error::ElementOutOfRange { element, ground_size });
            }
        }
        let rank = bits::size(first);
        if let Some(&b) = bases.iter().find(|&&b| bits::size(b) != rank) {
            return Err(Error::MixedCardinality(rank, bits::size(b)));
        }
        let m = Matroid { ground_size, rank, bases };
        if let Some((b1, b2, x)) = m.exchange_violation() {
            return Err(Error::ExchangeViolation {
                b1: bits::to_vec(b1),
                b2: bits::to_vec(b2),
                x,
            });
        }
        Ok(m)
    }

    /// Builds a matroid from element lists, e.g. parsed JSON.
    pub fn from_basis_lists(ground_size: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let mut sets = Vec::with_capacity(lists.len());
        for l in lists {
            for &e in l {
                if e >= ground_size || e >= 32 {
                    return Err(Error::ElementOutOfRange { element: e, ground_size });
                }
            }
            let s = bits::from_slice(l);
            if bits::size(s) != l.len() {
                return Err(Error::Parse(format!("repeated element in basis {l:?}")));
            }
            sets.push(s);
        }
        Self::from_bases(ground_size, sets)
    }

    /// Trusted constructor for families produced by operations that preserve
    /// the matroid axioms.
    pub(crate) fn from_bases_unchecked(ground_size: usize, mut bases: Vec<ElementSet>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        debug_assert!(!bases.is_empty());
        let rank = bits::size(bases[0]);
        Matroid { ground_size, rank, bases }
    }

    pub fn uniform(n: usize, k: usize) -> Self {
        assert!(k <= n && n <= 32);
        Self::from_bases_unchecked(n, bits::k_subsets(n, k))
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    pub fn ground_set(&self) -> ElementSet {
        bits::full(self.ground_size)
    }

    pub fn is_basis(&self, s: ElementSet) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    fn exchange_violation(&self) -> Option<(ElementSet, ElementSet, usize)> {
        let lookup: HashSet<ElementSet> = self.bases.iter().copied().collect();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                let only2 = b2 & !b1;
                for x in bits::elements(b1 & !b2) {
                    let base = b1 & !bits::singleton(x);
                    let ok = bits::elements(only2).any(|y| lookup.contains(&(base | bits::singleton(y))));
                    if !ok {
                        return Some((b1, b2, x));
                    }
                }
            }
        }
        None
    }

    /// `rk(X)`: the largest intersection of `X` with a basis.
    pub fn rank_of(&self, x: ElementSet) -> usize {
        self.bases.iter().map(|&b| bits::size(b & x)).max().unwrap_or(0)
    }

    pub fn is_independent(&self, x: ElementSet) -> bool {
        self.bases.iter().any(|&b| b & x == x)
    }

    pub fn is_flat(&self, x: ElementSet) -> bool {
        let r = self.rank_of(x);
        bits::elements(self.ground_set() & !x).all(|e| self.rank_of(x | bits::singleton(e)) > r)
    }

    pub fn closure(&self, x: ElementSet) -> ElementSet {
        let r = self.rank_of(x);
        bits::elements(self.ground_set() & !x)
            .filter(|&e| self.rank_of(x | bits::singleton(e)) == r)
            .fold(x, |acc, e| acc | bits::singleton(e))
    }

    pub fn is_circuit(&self, x: ElementSet) -> bool {
        x != 0
            && !self.is_independent(x)
            && bits::elements(x).all(|e| self.is_independent(x & !bits::singleton(e)))
    }

    pub fn subset_rank(&self, x: ElementSet) -> SubsetRankReport {
        SubsetRankReport {
            subset: bits::to_vec(x),
            rank: self.rank_of(x),
            is_flat: self.is_flat(x),
            is_circuit: self.is_circuit(x),
        }
    }

    pub fn loops(&self) -> ElementSet {
        let union = self.bases.iter().fold(0, |acc, &b| acc | b);
        self.ground_set() & !union
    }

    pub fn coloops(&self) -> ElementSet {
        self.bases.iter().fold(self.ground_set(), |acc, &b| acc & b)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        bits::contains(self.loops(), e)
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        bits::contains(self.coloops(), e)
    }

    /// All circuits, sorted by size and then lexicographically.
    pub fn circuits(&self) -> Vec<ElementSet> {
        let n = self.ground_size;
        let mut out: Vec<ElementSet> = Vec::new();
        for k in 1..=(self.rank + 1).min(n) {
            for s in bits::k_subsets(n, k) {
                if out.iter().any(|&c| c & s == c) {
                    continue;
                }
                if !self.is_independent(s) {
                    out.push(s);
                }
            }
        }
        out.sort_by(|a, b| bits::canonical_cmp(*a, *b));
        out
    }

    /// The unique circuit in `basis + e` for `e` outside the basis.
    pub fn fundamental_circuit(&self, basis: ElementSet, e: usize) -> ElementSet {
        debug_assert!(!bits::contains(basis, e));
        let with_e = basis | bits::singleton(e);
        bits::elements(basis)
            .filter(|&f| self.is_basis(with_e & !bits::singleton(f)))
            .fold(bits::singleton(e), |acc, f| acc | bits::singleton(f))
    }

    pub fn dual(&self) -> Matroid {
        let full = self.ground_set();
        Matroid::from_bases_unchecked(self.ground_size, self.bases.iter().map(|&b| full & !b).collect())
    }

    /// `M \ X`, with surviving elements relabeled to `0..n-|X|`.
    pub fn delete(&self, x: ElementSet) -> Matroid {
        let x = x & self.ground_set();
        let keep = self.ground_set() & !x;
        let min = self.bases.iter().map(|&b| bits::size(b & x)).min().unwrap_or(0);
        let bases = self
            .bases
            .iter()
            .filter(|&&b| bits::size(b & x) == min)
            .map(|&b| bits::compress(b, keep))
            .collect();
        Matroid::from_bases_unchecked(bits::size(keep), bases)
    }

    /// `M / X`, with surviving elements relabeled to `0..n-|X|`.
    pub fn contract(&self, x: ElementSet) -> Matroid {
        let x = x & self.ground_set();
        let keep = self.ground_set() & !x;
        let max = self.rank_of(x);
        let bases = self
            .bases
            .iter()
            .filter(|&&b| bits::size(b & x) == max)
            .map(|&b| bits::compress(b, keep))
            .collect();
        Matroid::from_bases_unchecked(bits::size(keep), bases)
    }

    /// `M|_X = M \ (E - X)`.
    pub fn restrict(&self, x: ElementSet) -> Matroid {
        self.delete(self.ground_set() & !x)
    }

    /// `M / C \ D` for disjoint `C`, `D` given in this matroid's labels.
    pub fn minor(&self, deleted: ElementSet, contracted: ElementSet) -> Matroid {
        assert_eq!(deleted & contracted, 0, "deletion and contraction sets must be disjoint");
        let keep_after_c = self.ground_set() & !contracted;
        self.contract(contracted).delete(bits::compress(deleted, keep_after_c))
    }

    pub fn connectivity(&self) -> ConnectivityReport {
        let labels = self.component_labels();
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<Option<usize>> = vec![None; self.ground_size];
        for e in 0..self.ground_size {
            let root = labels[e];
            match seen[root] {
                Some(i) => components[i].push(e),
                None => {
                    seen[root] = Some(components.len());
                    components.push(vec![e]);
                }
            }
        }
        let count = components.len();
        ConnectivityReport { components, count }
    }

    pub fn components(&self) -> Vec<ElementSet> {
        self.connectivity().components.iter().map(|c| bits::from_slice(c)).collect()
    }

    pub fn component_count(&self) -> usize {
        self.connectivity().count
    }

    pub fn is_connected(&self) -> bool {
        self.ground_size <= 1 || self.component_count() == 1
    }

    /// Union-find over fundamental circuits with respect to the first basis.
    /// Two elements share a circuit exactly when they are joined here.
    fn component_labels(&self) -> Vec<usize> {
        let n = self.ground_size;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let basis = self.bases[0];
        for e in bits::elements(self.ground_set() & !basis) {
            let c = self.fundamental_circuit(basis, e);
            for f in bits::elements(c) {
                let (a, b) = (find(&mut parent, e), find(&mut parent, f));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|e| find(&mut parent, e)).collect()
    }

    /// True when `M` is connected and has no exact 2-separation.
    pub fn is_three_connected(&self) -> bool {
        self.is_connected() && self.two_separation().is_none()
    }

    /// Lexicographically least `A` (by mask) with `|A|, |E-A| >= 2` and
    /// `rk(A) + rk(E-A) = rk(E) + 1`. Only meaningful for connected matroids.
    pub fn two_separation(&self) -> Option<ElementSet> {
        let n = self.ground_size;
        if n < 4 {
            return None;
        }
        let full = self.ground_set();
        // A always contains element 0 so each split is visited once.
        (1..full)
            .filter(|&a| a & 1 == 1)
            .filter(|&a| bits::size(a) >= 2 && bits::size(full & !a) >= 2)
            .find(|&a| self.rank_of(a) + self.rank_of(full & !a) == self.rank + 1)
    }

    pub fn is_uniform(&self) -> bool {
        self.bases.len() == bits::binomial(self.ground_size, self.rank)
    }

    /// Relabels elements so that element `e` becomes `perm[e]`.
    pub fn permute(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.ground_size);
        Matroid::from_bases_unchecked(
            self.ground_size,
            self.bases.iter().map(|&b| bits::permute(b, perm)).collect(),
        )
    }

    pub fn basis_lists(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<ElementSet> = self.bases.clone();
        v.sort_by(|a, b| bits::canonical_cmp(*a, *b));
        v.into_iter().map(bits::to_vec).collect()
    }
}
