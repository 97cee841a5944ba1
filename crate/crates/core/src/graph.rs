//! Undirected multigraphs and their graphic matroids.
//!
//! Edge `i` of a [`Graph`] is element `i` of its graphic matroid, so the edge
//! order fixes the matroid labeling.

use std::collections::HashMap;

use crate::bits::{self, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            let bad = u.max(v);
            if bad >= vertex_count {
                return Err(Error::Parse(format!("edge endpoint {bad} >= vertex count {vertex_count}")));
            }
        }
        if edges.len() > 32 {
            return Err(Error::GroundSetTooLarge(edges.len()));
        }
        Ok(Graph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 1);
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph { vertex_count: n, edges }
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph { vertex_count: n, edges }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph { vertex_count: a + b, edges }
    }

    /// `cone(C_n)`: rim edges `0..n`, then spokes `n..2n`.
    pub fn wheel(n: usize) -> Graph {
        Graph::cycle(n).cone()
    }

    /// Adds an apex adjacent to every vertex. The apex is the last vertex and
    /// the new spokes follow the original edges in vertex order.
    pub fn cone(&self) -> Graph {
        let apex = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend((0..self.vertex_count).map(|v| (v, apex)));
        Graph { vertex_count: apex + 1, edges }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    fn components_with(&self, edge_mask: ElementSet, removed_vertex: Option<usize>) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in bits::elements(edge_mask) {
            let (u, v) = self.edges[e];
            if Some(u) == removed_vertex || Some(v) == removed_vertex {
                continue;
            }
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.vertex_count)
            .filter(|&v| Some(v) != removed_vertex)
            .filter(|&v| find(&mut parent, v) == v)
            .count()
    }

    fn all_edges(&self) -> ElementSet {
        bits::full(self.edges.len())
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.components_with(self.all_edges(), None) == 1
    }

    fn is_acyclic(&self, edge_mask: ElementSet) -> bool {
        let comps = self.components_with(edge_mask, None);
        bits::size(edge_mask) == self.vertex_count - comps
    }

    /// Bases are the maximal spanning forests.
    pub fn graphic_matroid(&self) -> Matroid {
        let rank = self.vertex_count - self.components_with(self.all_edges(), None);
        let bases: Vec<ElementSet> = bits::k_subsets(self.edges.len(), rank)
            .into_iter()
            .filter(|&s| self.is_acyclic(s))
            .collect();
        Matroid::from_bases_unchecked(self.edges.len(), bases)
    }

    fn biconnected_with(&self, edge_mask: ElementSet) -> bool {
        if self.vertex_count < 2 {
            return false;
        }
        if self.components_with(edge_mask, None) != 1 {
            return false;
        }
        if bits::size(edge_mask) >= 2
            && bits::elements(edge_mask).any(|e| self.edges[e].0 == self.edges[e].1)
        {
            return false;
        }
        if self.vertex_count >= 3 {
            return (0..self.vertex_count).all(|v| self.components_with(edge_mask, Some(v)) == 1);
        }
        true
    }

    /// 2-vertex-connectivity; `K2` and parallel pairs on two vertices count as biconnected.
    pub fn is_biconnected(&self) -> bool {
        self.biconnected_with(self.all_edges())
    }

    pub fn is_minimally_biconnected(&self) -> bool {
        let all = self.all_edges();
        self.biconnected_with(all)
            && bits::elements(all).all(|e| !self.biconnected_with(all & !bits::singleton(e)))
    }

    /// Keeps only the edges in `mask`, preserving their order.
    pub fn edge_subgraph(&self, mask: ElementSet) -> Graph {
        Graph {
            vertex_count: self.vertex_count,
            edges: bits::elements(mask).map(|e| self.edges[e]).collect(),
        }
    }

    /// True when `self` has no `K4` minor. Expects a biconnected graph.
    pub fn is_series_parallel(&self) -> bool {
        crate::enumeration::has_minor(&self.graphic_matroid(), &crate::catalog::mk4()).is_none()
    }
}

/// Simple-graph isomorphism by backtracking on vertex maps.
pub fn graphs_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.vertex_count != h.vertex_count || g.edges.len() != h.edges.len() {
        return false;
    }
    let n = g.vertex_count;
    let adj = |gr: &Graph| {
        let mut a = vec![vec![0usize; n]; n];
        for &(u, v) in &gr.edges {
            a[u][v] += 1;
            if u != v {
                a[v][u] += 1;
            }
        }
        a
    };
    let (ag, ah) = (adj(g), adj(h));
    let dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut sg = dg.clone();
    let mut sh = dh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return false;
    }
    fn rec(i: usize, n: usize, ag: &[Vec<usize>], ah: &[Vec<usize>], dg: &[usize], dh: &[usize], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if i == n {
            return true;
        }
        for j in 0..n {
            if used[j] || dg[i] != dh[j] || ag[i][i] != ah[j][j] {
                continue;
            }
            if (0..i).all(|k| ag[i][k] == ah[j][map[k]]) {
                map[i] = j;
                used[j] = true;
                if rec(i + 1, n, ag, ah, dg, dh, map, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    let mut map = vec![0; n];
    let mut used = vec![false; n];
    rec(0, n, &ag, &ah, &dg, &dh, &mut map, &mut used)
}

fn degree_key(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.vertex_count).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Adds `g` to `reps` unless an isomorphic graph is already present.
pub(crate) fn insert_up_to_iso(reps: &mut HashMap<Vec<usize>, Vec<Graph>>, g: Graph) -> bool {
    let bucket = reps.entry(degree_key(&g)).or_default();
    if bucket.iter().any(|h| graphs_isomorphic(h, &g)) {
        return false;
    }
    bucket.push(g);
    true
}

/// All minimally biconnected simple graphs on `k` vertices, up to isomorphism.
///
/// Edge subsets of `K_k` are scanned depth-first with two prunings: every
/// vertex needs degree at least two, and a minimally biconnected graph on
/// `k >= 4` vertices has at most `2k - 4` edges.
pub fn minimally_biconnected_graphs(k: usize) -> Result<Vec<Graph>> {
    if k > 8 {
        return Err(Error::SizeLimit(format!("minimally biconnected graphs need k <= 8, got {k}")));
    }
    if k < 2 {
        return Ok(Vec::new());
    }
    if k == 2 {
        return Ok(vec![Graph { vertex_count: 2, edges: vec![(0, 1)] }]);
    }
    let kn = Graph::complete(k);
    let all: Vec<(usize, usize)> = kn.edges.clone();
    let max_edges = if k >= 4 { 2 * k - 4 } else { 3 };
    // last_edge_of[v]: index of the last edge in `all` touching v
    let mut last_edge_of = vec![0usize; k];
    for (i, &(u, v)) in all.iter().enumerate() {
        last_edge_of[u] = i;
        last_edge_of[v] = i;
    }
    let mut reps: HashMap<Vec<usize>, Vec<Graph>> = HashMap::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut deg = vec![0usize; k];

    fn dfs(
        i: usize,
        all: &[(usize, usize)],
        k: usize,
        max_edges: usize,
        last_edge_of: &[usize],
        chosen: &mut Vec<usize>,
        deg: &mut Vec<usize>,
        reps: &mut HashMap<Vec<usize>, Vec<Graph>>,
    ) {
        // Vertices whose last chance has passed must already have degree >= 2.
        if i > 0 {
            let (u, v) = all[i - 1];
            for w in [u, v] {
                if last_edge_of[w] == i - 1 && deg[w] < 2 {
                    return;
                }
            }
        }
        if i == all.len() {
            let g = Graph { vertex_count: k, edges: chosen.iter().map(|&e| all[e]).collect() };
            if g.is_minimally_biconnected() {
                insert_up_to_iso(reps, g);
            }
            return;
        }
        if chosen.len() < max_edges {
            let (u, v) = all[i];
            chosen.push(i);
            deg[u] += 1;
            deg[v] += 1;
            dfs(i + 1, all, k, max_edges, last_edge_of, chosen, deg, reps);
            deg[u] -= 1;
            deg[v] -= 1;
            chosen.pop();
        }
        dfs(i + 1, all, k, max_edges, last_edge_of, chosen, deg, reps);
    }
    dfs(0, &all, k, max_edges, &last_edge_of, &mut chosen, &mut deg, &mut reps);
    let mut out: Vec<Graph> = reps.into_values().flatten().collect();
    out.sort_by_key(|g| (g.edges.len(), degree_key(g)));
    Ok(out)
}

/// All simple biconnected graphs with at most `max_edges` edges, up to isomorphism.
pub fn biconnected_simple_graphs(max_edges: usize) -> Vec<Graph> {
    let mut reps: HashMap<Vec<usize>, Vec<Graph>> = HashMap::new();
    for n in 2..=max_edges.max(2) {
        let kn = Graph::complete(n);
        let m = kn.edges.len();
        for size in n.min(m)..=max_edges.min(m) {
            for mask in bits::k_subsets(m, size) {
                let g = kn.edge_subgraph(mask);
                if g.is_biconnected() {
                    insert_up_to_iso(&mut reps, g);
                }
            }
        }
    }
    let mut out: Vec<Graph> = reps.into_values().flatten().collect();
    out.sort_by_key(|g| (g.edges.len(), g.vertex_count, degree_key(g)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::iso::is_isomorphic;

    #[test]
    fn k4_is_mk4() {
        assert!(is_isomorphic(&Graph::complete(4).graphic_matroid(), &catalog::mk4()).is_some());
    }

    #[test]
    fn cycles_are_circuits() {
        for n in 2..7 {
            assert_eq!(Graph::cycle(n).graphic_matroid(), Matroid::uniform(n, n - 1));
        }
    }

    #[test]
    fn running_example_graph() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0), (2, 0)]).unwrap();
        let m = g.graphic_matroid();
        let expected = crate::matroid::Matroid::from_basis_lists(
            4,
            &[vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
        )
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn cone_examples() {
        assert!(graphs_isomorphic(&Graph::cycle(3).cone(), &Graph::complete(4)));
        let w4 = Graph::cycle(4).cone();
        assert_eq!(w4.edge_count(), 8);
        assert_eq!(w4.degree(4), 4);
        let single = Graph::new(1, vec![]).unwrap().cone();
        assert!(graphs_isomorphic(&single, &Graph::complete(2)));
    }

    #[test]
    fn biconnectivity_examples() {
        assert!(Graph::cycle(5).is_minimally_biconnected());
        let k4 = Graph::complete(4);
        assert!(k4.is_biconnected() && !k4.is_minimally_biconnected());
        assert!(Graph::complete_bipartite(2, 3).is_minimally_biconnected());
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_biconnected());
    }

    #[test]
    fn minimally_biconnected_small() {
        let g3 = minimally_biconnected_graphs(3).unwrap();
        assert_eq!(g3.len(), 1);
        assert!(graphs_isomorphic(&g3[0], &Graph::cycle(3)));
        let g4 = minimally_biconnected_graphs(4).unwrap();
        assert_eq!(g4.len(), 1);
        assert!(graphs_isomorphic(&g4[0], &Graph::cycle(4)));
        let g5 = minimally_biconnected_graphs(5).unwrap();
        assert_eq!(g5.len(), 2);
        assert!(g5.iter().any(|g| graphs_isomorphic(g, &Graph::cycle(5))));
        assert!(g5.iter().any(|g| graphs_isomorphic(g, &Graph::complete_bipartite(2, 3))));
        assert!(matches!(minimally_biconnected_graphs(9), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn series_parallel_examples() {
        assert!(!Graph::complete(4).is_series_parallel());
        assert!(Graph::cycle(6).is_series_parallel());
        assert!(!Graph::wheel(4).is_series_parallel());
        assert!(Graph::complete_bipartite(2, 3).is_series_parallel());
    }
}
