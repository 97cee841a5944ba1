//! Helpers for element subsets stored as `u32` bit masks.

/// An element subset of a ground set with at most 32 elements.
pub type ElementSet = u32;

#[inline]
pub fn full(n: usize) -> ElementSet {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn size(s: ElementSet) -> usize {
    s.count_ones() as usize
}

#[inline]
pub fn contains(s: ElementSet, e: usize) -> bool {
    s >> e & 1 == 1
}

#[inline]
pub fn singleton(e: usize) -> ElementSet {
    1u32 << e
}

/// Iterates the elements of `s` in increasing order.
pub fn elements(mut s: ElementSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let e = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(e)
        }
    })
}

pub fn to_vec(s: ElementSet) -> Vec<usize> {
    elements(s).collect()
}

pub fn from_slice(elems: &[usize]) -> ElementSet {
    elems.iter().fold(0, |acc, &e| acc | singleton(e))
}

/// Packs the bits of `s` that lie in `keep` into the low positions,
/// preserving their relative order.
pub fn compress(s: ElementSet, keep: ElementSet) -> ElementSet {
    let mut out = 0;
    for (i, e) in elements(keep).enumerate() {
        if contains(s, e) {
            out |= 1 << i;
        }
    }
    out
}

/// Inverse of [`compress`]: spreads the low bits of `s` onto the positions of `keep`.
pub fn expand(s: ElementSet, keep: ElementSet) -> ElementSet {
    let mut out = 0;
    for (i, e) in elements(keep).enumerate() {
        if contains(s, i) {
            out |= 1 << e;
        }
    }
    out
}

/// Applies an element map (`perm[old] = new`) to a subset.
pub fn permute(s: ElementSet, perm: &[usize]) -> ElementSet {
    elements(s).fold(0, |acc, e| acc | singleton(perm[e]))
}

/// All `k`-subsets of `{0..n-1}` in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> Vec<ElementSet> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    // Gosper's hack
    let mut s: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while s < limit {
        out.push(s as u32);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

/// Orders subsets by cardinality, then lexicographically by their sorted elements.
pub fn canonical_cmp(a: ElementSet, b: ElementSet) -> std::cmp::Ordering {
    size(a)
        .cmp(&size(b))
        .then_with(|| elements(a).cmp(elements(b)))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn format_set(s: ElementSet) -> String {
    let parts: Vec<String> = elements(s).map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compress_expand_roundtrip() {
        let keep = 0b1011_0110;
        for s in 0..32u32 {
            assert_eq!(compress(expand(s, keep), keep), s);
        }
    }

    #[test]
    fn k_subsets_counts() {
        for n in 0..8 {
            for k in 0..=n {
                let subs = k_subsets(n, k);
                assert_eq!(subs.len(), binomial(n, k));
                assert!(subs.iter().all(|&s| size(s) == k && s < 1 << n));
            }
        }
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut v = vec![from_slice(&[0, 1, 3]), from_slice(&[2, 3]), from_slice(&[0, 1, 2])];
        v.sort_by(|a, b| canonical_cmp(*a, *b));
        assert_eq!(v, vec![from_slice(&[2, 3]), from_slice(&[0, 1, 2]), from_slice(&[0, 1, 3])]);
    }
}
