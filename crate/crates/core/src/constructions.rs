//! Gluing operations on matroids and the decomposition of a matroid into
//! 3-connected pieces by direct sums and 2-sums.
//!
//! Labeling conventions for the glued ground sets:
//! * `direct_sum(M1, M2)`: elements of `M1`, then elements of `M2` shifted by `|E1|`.
//! * `series_connection` / `parallel_connection`: elements of `M1` (with `p1`
//!   standing for the identified base point), then elements of `M2` other than `p2`.
//! * `two_sum`: elements of `M1` other than `p1`, then elements of `M2` other than `p2`.

use serde::{Deserialize, Serialize};

use crate::bits::{self, ElementSet};
use crate::catalog;
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::matroid::Matroid;

pub fn direct_sum(m1: &Matroid, m2: &Matroid) -> Matroid {
    let shift = m1.ground_size();
    assert!(shift + m2.ground_size() <= 32);
    let mut bases = Vec::with_capacity(m1.bases().len() * m2.bases().len());
    for &b1 in m1.bases() {
        for &b2 in m2.bases() {
            bases.push(b1 | (b2 << shift));
        }
    }
    Matroid::from_bases_unchecked(shift + m2.ground_size(), bases)
}

/// Position of each `M2` element in the glued ground set (`p2` maps to `p1`).
fn glue_map(n1: usize, p1: usize, n2: usize, p2: usize) -> Vec<usize> {
    let mut map = vec![0; n2];
    let mut next = n1;
    for (e, slot) in map.iter_mut().enumerate() {
        if e == p2 {
            *slot = p1;
        } else {
            *slot = next;
            next += 1;
        }
    }
    map
}

pub fn series_connection(m1: &Matroid, p1: usize, m2: &Matroid, p2: usize) -> Result<Matroid> {
    assert!(p1 < m1.ground_size() && p2 < m2.ground_size());
    if m1.is_coloop(p1) && m2.is_coloop(p2) {
        return Err(Error::BasePointColoop);
    }
    let n = m1.ground_size() + m2.ground_size() - 1;
    assert!(n <= 32);
    let map = glue_map(m1.ground_size(), p1, m2.ground_size(), p2);
    let mapped2: Vec<ElementSet> = m2.bases().iter().map(|&b| bits::permute(b, &map)).collect();
    let mut bases = Vec::new();
    for &b1 in m1.bases() {
        for &b2 in &mapped2 {
            if b1 & b2 == 0 {
                bases.push(b1 | b2);
            }
        }
    }
    Ok(Matroid::from_bases_unchecked(n, bases))
}

/// `P(M1, M2) = S(M1*, M2*)*`.
pub fn parallel_connection(m1: &Matroid, p1: usize, m2: &Matroid, p2: usize) -> Result<Matroid> {
    if m1.is_loop(p1) && m2.is_loop(p2) {
        return Err(Error::BasePointLoop);
    }
    Ok(series_connection(&m1.dual(), p1, &m2.dual(), p2)?.dual())
}

/// `M1 (+)_2 M2`, with bases `B1 u B2 - p` over pairs where `p` lies in exactly one of them.
pub fn two_sum(m1: &Matroid, p1: usize, m2: &Matroid, p2: usize) -> Result<Matroid> {
    if m1.is_loop(p1) || m1.is_coloop(p1) || m2.is_loop(p2) || m2.is_coloop(p2) {
        return Err(Error::BasePointDegenerate);
    }
    let n1 = m1.ground_size();
    let map = glue_map(n1, p1, m2.ground_size(), p2);
    let mapped2: Vec<ElementSet> = m2.bases().iter().map(|&b| bits::permute(b, &map)).collect();
    let p = bits::singleton(p1);
    let keep = bits::full(n1 + m2.ground_size() - 1) & !p;
    let mut bases = Vec::new();
    for &b1 in m1.bases() {
        for &b2 in &mapped2 {
            if (b1 ^ b2) & p != 0 {
                bases.push(bits::compress((b1 | b2) & !p, keep));
            }
        }
    }
    Ok(Matroid::from_bases_unchecked(n1 + m2.ground_size() - 2, bases))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionTree {
    /// A 3-connected piece (or one with at most three elements). `labels[i]`
    /// is the global label of local element `i`; labels `>= n` are base points.
    Leaf {
        #[serde(skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        n: usize,
        bases: Vec<Vec<usize>>,
        labels: Vec<usize>,
    },
    DirectSum { children: Vec<DecompositionTree> },
    TwoSum { basepoint: usize, children: Vec<DecompositionTree> },
}

/// Catalog name of a matroid if it is uniform or one of the named excluded minors.
pub fn recognize(m: &Matroid) -> Option<String> {
    if m.is_uniform() {
        return Some(format!("U({},{})", m.ground_size(), m.rank()));
    }
    if m.ground_size() == 6 && m.rank() == 3 {
        for (name, n) in catalog::excluded_minors() {
            if is_isomorphic(m, &n).is_some() {
                return Some(name.to_string());
            }
        }
    }
    None
}

impl DecompositionTree {
    pub fn leaves(&self) -> Vec<Matroid> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Matroid>) {
        match self {
            DecompositionTree::Leaf { n, bases, .. } => {
                out.push(Matroid::from_basis_lists(*n, bases).expect("leaf bases are valid"))
            }
            DecompositionTree::DirectSum { children } | DecompositionTree::TwoSum { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    /// Applies the sums bottom-up; returns the matroid with its element labels.
    fn recompose_labeled(&self) -> Result<(Matroid, Vec<usize>)> {
        match self {
            DecompositionTree::Leaf { n, bases, labels, .. } => {
                Ok((Matroid::from_basis_lists(*n, bases)?, labels.clone()))
            }
            DecompositionTree::DirectSum { children } => {
                let mut acc: Option<(Matroid, Vec<usize>)> = None;
                for c in children {
                    let (m, l) = c.recompose_labeled()?;
                    acc = Some(match acc {
                        None => (m, l),
                        Some((am, mut al)) => {
                            al.extend(l);
                            (direct_sum(&am, &m), al)
                        }
                    });
                }
                acc.ok_or_else(|| Error::Parse("empty direct sum".into()))
            }
            DecompositionTree::TwoSum { basepoint, children } => {
                let [left, right] = children.as_slice() else {
                    return Err(Error::Parse("two-sum node needs two children".into()));
                };
                let (m1, l1) = left.recompose_labeled()?;
                let (m2, l2) = right.recompose_labeled()?;
                let find = |l: &[usize]| {
                    l.iter().position(|x| x == basepoint).ok_or_else(|| Error::Parse("missing base point".into()))
                };
                let (p1, p2) = (find(&l1)?, find(&l2)?);
                let m = two_sum(&m1, p1, &m2, p2)?;
                let labels = l1.iter().chain(l2.iter()).copied().filter(|x| x != basepoint).collect();
                Ok((m, labels))
            }
        }
    }

    /// Rebuilds the matroid on labels `0..n`.
    pub fn recompose(&self) -> Result<Matroid> {
        let (m, labels) = self.recompose_labeled()?;
        let n = m.ground_size();
        if labels.iter().any(|&l| l >= n) {
            return Err(Error::Parse("unresolved base point label".into()));
        }
        Ok(m.permute(&labels))
    }
}

/// Splits `m` into direct sums over components and 2-sums along exact
/// 2-separations until every leaf is 3-connected.
pub fn decompose(m: &Matroid) -> DecompositionTree {
    let labels: Vec<usize> = (0..m.ground_size()).collect();
    let mut next_label = m.ground_size();
    decompose_labeled(m, labels, &mut next_label)
}

fn leaf(m: &Matroid, labels: Vec<usize>) -> DecompositionTree {
    DecompositionTree::Leaf {
        name: recognize(m),
        n: m.ground_size(),
        bases: m.basis_lists(),
        labels,
    }
}

fn decompose_labeled(m: &Matroid, labels: Vec<usize>, next_label: &mut usize) -> DecompositionTree {
    let comps = m.components();
    if comps.len() > 1 {
        let children = comps
            .iter()
            .map(|&c| {
                let sub_labels = bits::elements(c).map(|e| labels[e]).collect();
                decompose_labeled(&m.restrict(c), sub_labels, next_label)
            })
            .collect();
        return DecompositionTree::DirectSum { children };
    }
    let Some(a) = m.two_separation() else {
        return leaf(m, labels);
    };
    let b = m.ground_set() & !a;
    let p = *next_label;
    *next_label += 1;
    let (m1, l1) = split_piece(m, a, b, &labels, p);
    let (m2, l2) = split_piece(m, b, a, &labels, p);
    let t1 = decompose_labeled(&m1, l1, next_label);
    let t2 = decompose_labeled(&m2, l2, next_label);
    DecompositionTree::TwoSum { basepoint: p, children: vec![t1, t2] }
}

/// The part of an exact 2-separation `(side, other)` living on `side + p`.
/// Its bases are the bases of `M|side` together with `I + p` for each basis
/// `I` of `(M/other)|side`. `p` is the last local element.
fn split_piece(m: &Matroid, side: ElementSet, other: ElementSet, labels: &[usize], p: usize) -> (Matroid, Vec<usize>) {
    let k = bits::size(side);
    let mut bases: Vec<ElementSet> = m.restrict(side).bases().to_vec();
    bases.extend(m.contract(other).bases().iter().map(|&b| b | (1 << k)));
    let mut l: Vec<usize> = bits::elements(side).map(|e| labels[e]).collect();
    l.push(p);
    (Matroid::from_bases_unchecked(k + 1, bases), l)
}

/// True iff every leaf of the decomposition is uniform.
pub fn is_two_level_by_decomposition(m: &Matroid) -> bool {
    decompose(m).leaves().iter().all(Matroid::is_uniform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn direct_sum_examples() {
        let f = direct_sum(&Matroid::uniform(1, 1), &Matroid::uniform(1, 1));
        assert_eq!(f, Matroid::uniform(2, 2));
        let d = direct_sum(&Matroid::uniform(2, 1), &Matroid::uniform(2, 1));
        assert_eq!(d.bases().len(), 4);
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn series_of_two_parallel_pairs_is_a_triangle() {
        let u21 = Matroid::uniform(2, 1);
        for p1 in 0..2 {
            for p2 in 0..2 {
                assert_eq!(series_connection(&u21, p1, &u21, p2).unwrap(), Matroid::uniform(3, 2));
            }
        }
        let coloop = Matroid::uniform(1, 1);
        assert_eq!(series_connection(&coloop, 0, &coloop, 0).unwrap_err(), Error::BasePointColoop);
    }

    #[test]
    fn series_with_k4_is_the_eight_edge_graph() {
        // triangle {a, b, p} in series with K4 along edge p = (0, 1)
        let s = series_connection(&Matroid::uniform(3, 2), 2, &catalog::mk4(), 0).unwrap();
        assert_eq!(s.ground_size(), 8);
        // K4 with edge 01 replaced by a path of length three (p, a, b)
        let g = Graph::new(
            6,
            vec![(0, 4), (4, 5), (5, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert!(is_isomorphic(&s, &g.graphic_matroid()).is_some());
    }

    #[test]
    fn parallel_connection_examples() {
        let u21 = Matroid::uniform(2, 1);
        assert_eq!(parallel_connection(&u21, 0, &u21, 0).unwrap(), Matroid::uniform(3, 1));
        let tri = Matroid::uniform(3, 2);
        let p = parallel_connection(&tri, 0, &tri, 0).unwrap();
        let k4_minus_e = Graph::new(4, vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        assert!(is_isomorphic(&p, &k4_minus_e.graphic_matroid()).is_some());
        let lp = Matroid::from_bases(1, [0]).unwrap();
        assert_eq!(parallel_connection(&lp, 0, &lp, 0).unwrap_err(), Error::BasePointLoop);
    }

    #[test]
    fn two_sum_examples() {
        let m = two_sum(&Matroid::uniform(3, 2), 2, &catalog::mk4(), 0).unwrap();
        let k4_subdivided =
            Graph::new(5, vec![(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_isomorphic(&m, &k4_subdivided.graphic_matroid()).is_some());
        let q = catalog::q6();
        let with_pair = two_sum(&Matroid::uniform(2, 1), 0, &q, 4).unwrap();
        assert!(is_isomorphic(&with_pair, &q).is_some());
        let s = series_connection(&Matroid::uniform(3, 2), 2, &catalog::mk4(), 0).unwrap();
        assert_eq!(s.contract(bits::singleton(2)), m);
        assert_eq!(
            two_sum(&Matroid::uniform(1, 1), 0, &q, 0).unwrap_err(),
            Error::BasePointDegenerate
        );
    }

    #[test]
    fn decomposition_examples() {
        let m = two_sum(&Matroid::uniform(3, 2), 2, &catalog::mk4(), 0).unwrap();
        let t = decompose(&m);
        assert_eq!(t.recompose().unwrap(), m);
        let leaves = t.leaves();
        assert_eq!(leaves.len(), 2);
        assert!(leaves.iter().any(|l| is_isomorphic(l, &Matroid::uniform(3, 2)).is_some()));
        assert!(leaves.iter().any(|l| is_isomorphic(l, &catalog::mk4()).is_some()));

        assert!(matches!(decompose(&catalog::mk4()), DecompositionTree::Leaf { .. }));
        let disc = direct_sum(&Matroid::uniform(2, 1), &Matroid::uniform(3, 1));
        assert!(matches!(decompose(&disc), DecompositionTree::DirectSum { .. }));
    }

    #[test]
    fn two_level_by_decomposition_examples() {
        for (n, k) in [(4, 2), (5, 2), (6, 3), (3, 1)] {
            assert!(is_two_level_by_decomposition(&Matroid::uniform(n, k)));
        }
        assert!(!is_two_level_by_decomposition(&catalog::mk4()));
        assert!(is_two_level_by_decomposition(&Graph::complete_bipartite(2, 3).graphic_matroid()));
        assert!(!is_two_level_by_decomposition(&catalog::wheel(4)));
    }

    #[test]
    fn tree_serializes_with_names() {
        let m = two_sum(&Matroid::uniform(3, 2), 2, &catalog::mk4(), 0).unwrap();
        let json = serde_json::to_string(&decompose(&m)).unwrap();
        assert!(json.contains("\"MK4\"") && json.contains("\"U(3,2)\""));
        let back: DecompositionTree = serde_json::from_str(&json).unwrap();
        assert_eq!(back.recompose().unwrap(), m);
    }
}
