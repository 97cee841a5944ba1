//! Named matroids.
//!
//! `MK4`, `W3_whirl`, `Q6` and `P6` are built from the rank-3 geometric
//! representation on elements `0..6`: every 3-subset is a basis except the
//! depicted lines. `MK4` has the four lines
//!
//! ```text
//! L0 = {0,1,2}   L1 = {0,3,4}   L2 = {1,4,5}   L3 = {2,3,5}
//! ```
//!
//! `W3_whirl` drops `L2`, `Q6` drops `L2` and `L1`, and `P6` drops `L2`, `L1`
//! and `L0`, so `L3 = {2,3,5}` is a line of all four matroids.

use crate::bits::{self, ElementSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matroid::Matroid;

pub const MK4_LINES: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 4], [1, 4, 5], [2, 3, 5]];

/// Rank-3 matroid on six elements whose non-bases are exactly the given lines of `MK4`.
pub fn from_mk4_lines(kept: &[usize]) -> Matroid {
    let lines: Vec<ElementSet> = kept.iter().map(|&i| bits::from_slice(&MK4_LINES[i])).collect();
    let bases = bits::k_subsets(6, 3).into_iter().filter(|s| !lines.contains(s)).collect();
    Matroid::from_bases_unchecked(6, bases)
}

pub fn mk4() -> Matroid {
    from_mk4_lines(&[0, 1, 2, 3])
}

pub fn whirl3() -> Matroid {
    from_mk4_lines(&[0, 1, 3])
}

pub fn q6() -> Matroid {
    from_mk4_lines(&[0, 3])
}

pub fn p6() -> Matroid {
    from_mk4_lines(&[3])
}

/// Graphic matroid of `cone(C_n)`: rim elements `0..n`, spokes `n..2n`.
pub fn wheel(n: usize) -> Matroid {
    Graph::wheel(n).graphic_matroid()
}

/// The wheel with the rim added as a basis.
pub fn whirl(n: usize) -> Matroid {
    let w = wheel(n);
    let mut bases = w.bases().to_vec();
    bases.push(bits::full(n));
    Matroid::from_bases_unchecked(2 * n, bases)
}

pub fn mk5() -> Matroid {
    Graph::complete(5).graphic_matroid()
}

pub fn mk33() -> Matroid {
    Graph::complete_bipartite(3, 3).graphic_matroid()
}

/// `cone(K_{2,3})`; rim edges `0..6`, spokes `6..11`.
pub fn cone_k23() -> Matroid {
    Graph::complete_bipartite(2, 3).cone().graphic_matroid()
}

/// The four excluded minors for 2-level matroids with their catalog names.
pub fn excluded_minors() -> Vec<(&'static str, Matroid)> {
    vec![("MK4", mk4()), ("W3_whirl", whirl3()), ("Q6", q6()), ("P6", p6())]
}

fn parse_args(s: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

/// Looks up a catalog name such as `U(4,2)`, `MK4`, `W3_whirl`, `Q6`, `P6`,
/// `wheel(5)`/`wheel5`, `whirl(4)`/`whirl4`, `MK5`, `MK33` or `cone_K23`.
pub fn catalog(name: &str) -> Result<Matroid> {
    let unknown = || Error::UnknownName(name.to_string());
    let trimmed = name.trim();
    match trimmed {
        "MK4" | "M(K4)" => return Ok(mk4()),
        "W3_whirl" | "W3" => return Ok(whirl3()),
        "Q6" => return Ok(q6()),
        "P6" => return Ok(p6()),
        "MK5" | "M(K5)" => return Ok(mk5()),
        "MK33" | "M(K33)" => return Ok(mk33()),
        "cone_K23" | "A3x" => return Ok(cone_k23()),
        _ => {}
    }
    if let Some(rest) = trimmed.strip_prefix('U') {
        let args = parse_args(rest).ok_or_else(unknown)?;
        return match args[..] {
            [n, k] if k <= n && n <= 32 => Ok(Matroid::uniform(n, k)),
            _ => Err(unknown()),
        };
    }
    for (prefix, build) in [("wheel", wheel as fn(usize) -> Matroid), ("whirl", whirl)] {
        if let Some(rest) = trimmed.strip_prefix(prefix) {
            let n = if rest.starts_with('(') {
                match parse_args(rest).as_deref() {
                    Some([n]) => *n,
                    _ => return Err(unknown()),
                }
            } else {
                rest.parse().map_err(|_| unknown())?
            };
            if !(2..=16).contains(&n) {
                return Err(unknown());
            }
            return Ok(build(n));
        }
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    #[test]
    fn catalog_lookups() {
        assert_eq!(catalog("U(3,2)").unwrap().basis_lists(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let m = catalog("MK4").unwrap();
        assert_eq!((m.bases().len(), m.rank(), m.ground_size()), (16, 3, 6));
        let p6 = catalog("P6").unwrap();
        assert_eq!(p6.bases().len(), 19);
        assert!(matches!(catalog("K7"), Err(Error::UnknownName(_))));
        assert!(matches!(catalog("U(2,5)"), Err(Error::UnknownName(_))));
        assert_eq!(catalog("wheel5").unwrap(), catalog("wheel(5)").unwrap());
    }

    #[test]
    fn whirl3_matches_line_construction() {
        assert!(is_isomorphic(&whirl(3), &whirl3()).is_some());
        assert!(is_isomorphic(&wheel(3), &mk4()).is_some());
        assert_eq!(whirl3().bases().len(), 17);
    }

    #[test]
    fn every_choice_of_removed_lines_is_isomorphic() {
        for (keep, reference) in [(3usize, whirl3()), (2, q6()), (1, p6())] {
            for kept in bits::k_subsets(4, keep) {
                let m = from_mk4_lines(&bits::to_vec(kept));
                assert!(is_isomorphic(&m, &reference).is_some(), "kept lines {kept:b}");
            }
        }
    }

    #[test]
    fn excluded_minors_pairwise_distinct() {
        let ms = excluded_minors();
        for (i, (_, a)) in ms.iter().enumerate() {
            assert_eq!((a.rank(), a.ground_size()), (3, 6));
            for (_, b) in &ms[i + 1..] {
                assert!(is_isomorphic(a, b).is_none());
            }
        }
    }
}
