//! Finite simple undirected graphs.

mod circuits;
mod like;

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

pub use circuits::{circuits_upto, is_minimal_circuit, Circuit};
pub use like::{is_mediatic, like_partition, like_related, LikePartition, MediaticReport, NonTransitive};

/// A directed arc `source -> target` along an edge; arcs order
/// lexicographically by `(source, target)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub source: usize,
    pub target: usize,
}

impl Arc {
    pub fn new(source: usize, target: usize) -> Self {
        Arc { source, target }
    }

    pub fn reversed(self) -> Self {
        Arc::new(self.target, self.source)
    }
}

/// A finite simple undirected graph. Vertices are kept in lexicographic
/// order of their names.
#[derive(Debug)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    distances: OnceLock<DistanceTable>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            names: self.names.clone(),
            index: self.index.clone(),
            adj: self.adj.clone(),
            edges: self.edges.clone(),
            distances: OnceLock::new(),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if let Some(i) = names.iter().position(String::is_empty) {
            return Err(Error::input(format!("vertices[{i}]"), "vertex names must be nonempty"));
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input("vertices", format!("duplicate vertex `{}`", w[0])));
        }
        if names.len() < 2 {
            return Err(Error::input("vertices", "a graph needs at least two vertices"));
        }
        let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut edge_list = Vec::new();
        for (j, (a, b)) in edges.into_iter().enumerate() {
            let (a, b): (String, String) = (a.into(), b.into());
            let field = format!("edges[{j}]");
            let ia = *index
                .get(&a)
                .ok_or_else(|| Error::input(&field, format!("unknown vertex `{a}`")))?;
            let ib = *index
                .get(&b)
                .ok_or_else(|| Error::input(&field, format!("unknown vertex `{b}`")))?;
            if ia == ib {
                return Err(Error::input(&field, format!("loop at `{a}`")));
            }
            edge_list.push((ia.min(ib), ia.max(ib)));
        }
        Self::from_indices(names, index, edge_list)
    }

    fn from_indices(names: Vec<String>, index: HashMap<String, usize>, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            let (a, b) = w[0];
            return Err(Error::input(
                "edges",
                format!("duplicate edge {{{}, {}}}", names[a], names[b]),
            ));
        }
        let mut adj = vec![Vec::new(); names.len()];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            names,
            index,
            adj,
            edges,
            distances: OnceLock::new(),
        })
    }

    /// Builds a graph on already-sorted vertex names from index pairs.
    pub(crate) fn from_sorted_names(names: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let edges = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        Self::from_indices(names, index, edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(low, high)` index pairs, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<Arc> {
        (0..self.names.len())
            .flat_map(|u| self.adj[u].iter().map(move |&v| Arc::new(u, v)))
            .collect()
    }

    pub fn arc(&self, source: &str, target: &str) -> Result<Arc> {
        let a = Arc::new(self.vertex(source)?, self.vertex(target)?);
        if !self.has_edge(a.source, a.target) {
            return Err(Error::input("arc", format!("{{{source}, {target}}} is not an edge")));
        }
        Ok(a)
    }

    pub fn arc_name(&self, a: Arc) -> (String, String) {
        (self.names[a.source].clone(), self.names[a.target].clone())
    }

    /// Hop distances between all vertex pairs, computed once per graph.
    pub fn distances(&self) -> &DistanceTable {
        self.distances.get_or_init(|| DistanceTable::compute(self))
    }

    /// Breadth-first search from `s`, visiting neighbors in index order.
    /// Returns the parent of every reached vertex (`s` is its own parent).
    pub fn bfs_parents(&self, s: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.names.len()];
        parent[s] = Some(s);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if parent[v].is_none() {
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    /// The BFS shortest path from `s` to `t` with lexicographic tie-breaking.
    pub fn shortest_path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let parent = self.bfs_parents(s);
        parent[t]?;
        let mut path = vec![t];
        let mut cur = t;
        while cur != s {
            cur = parent[cur]?;
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Every shortest path from `s` to `t`, in lexicographic order.
    pub fn all_shortest_paths(&self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let d = self.distances();
        let Some(total) = d.get(s, t) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut path = vec![s];
        self.extend_geodesics(t, total, &mut path, &mut out);
        out
    }

    fn extend_geodesics(&self, t: usize, total: u32, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let u = *path.last().expect("path starts nonempty");
        if u == t {
            out.push(path.clone());
            return;
        }
        let d = self.distances();
        let step = path.len() as u32;
        for &v in &self.adj[u] {
            if d.get(v, t) == Some(total - step) {
                path.push(v);
                self.extend_geodesics(t, total, path, out);
                path.pop();
            }
        }
    }

    /// Connected components as lists of vertices, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.names.len()];
        let mut comps = Vec::new();
        for s in 0..self.names.len() {
            if seen[s] {
                continue;
            }
            let parent = self.bfs_parents(s);
            let comp: Vec<usize> = (0..self.names.len()).filter(|&v| parent[v].is_some()).collect();
            for &v in &comp {
                seen[v] = true;
            }
            comps.push(comp);
        }
        comps
    }

    /// `Ok(())` when connected, otherwise two vertices in distinct components.
    pub fn is_connected(&self) -> Result<(), (usize, usize)> {
        let comps = self.components();
        if comps.len() == 1 {
            Ok(())
        } else {
            Err((comps[0][0], comps[1][0]))
        }
    }

    /// Two-colors the graph; on failure returns an odd cycle as a vertex
    /// sequence (first vertex not repeated).
    pub fn is_bipartite(&self) -> Result<Vec<bool>, Vec<usize>> {
        let n = self.names.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            parent[root] = root;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!color[u].unwrap());
                            parent[v] = u;
                            depth[v] = depth[u] + 1;
                            queue.push_back(v);
                        }
                        Some(c) if c == color[u].unwrap() => {
                            return Err(odd_cycle(u, v, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(Option::unwrap).collect())
    }
}

/// Joins the BFS tree paths of the two endpoints of a monochromatic edge.
fn odd_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// All-pairs hop distances; `None` across components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceTable {
    n: usize,
    d: Vec<u32>,
}

impl DistanceTable {
    const INF: u32 = u32::MAX;

    fn compute(g: &Graph) -> Self {
        let n = g.num_vertices();
        let mut d = vec![Self::INF; n * n];
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in g.neighbors(u) {
                    if row[v] == Self::INF {
                        row[v] = row[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        DistanceTable { n, d }
    }

    pub fn get(&self, a: usize, b: usize) -> Option<u32> {
        let x = self.d[a * self.n + b];
        (x != Self::INF).then_some(x)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn c6_antipodal_distance() {
        let g = fixtures::cycle(6);
        let d = g.distances();
        assert_eq!(d.get(g.vertex("0").unwrap(), g.vertex("3").unwrap()), Some(3));
    }

    #[test]
    fn k2_distance() {
        let g = fixtures::path(2);
        assert_eq!(g.distances().get(0, 1), Some(1));
    }

    #[test]
    fn disjoint_edges_are_infinitely_far() {
        let g = fixtures::two_k2();
        let d = g.distances();
        assert_eq!(d.get(g.vertex("a").unwrap(), g.vertex("c").unwrap()), None);
        let (x, y) = g.is_connected().unwrap_err();
        assert_eq!(d.get(x, y), None);
    }

    #[test]
    fn connectivity_of_fixtures() {
        assert!(fixtures::cycle(6).is_connected().is_ok());
        assert!(fixtures::hypercube(3).is_connected().is_ok());
    }

    #[test]
    fn bipartite_fixtures() {
        assert!(fixtures::cycle(6).is_bipartite().is_ok());
        let coloring = fixtures::complete_bipartite(2, 3).is_bipartite().unwrap();
        let g = fixtures::complete_bipartite(2, 3);
        for &(a, b) in g.edges() {
            assert_ne!(coloring[a], coloring[b]);
        }
    }

    #[test]
    fn c5_odd_cycle_witness() {
        let g = fixtures::cycle(5);
        let cyc = g.is_bipartite().unwrap_err();
        assert_eq!(cyc.len(), 5);
        for i in 0..cyc.len() {
            assert!(g.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]));
        }
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::new(["a", "b"], [("a", "a")]).is_err());
        let err = Graph::new(["a", "b"], [("a", "b"), ("b", "a")]).unwrap_err();
        assert!(err.to_string().contains("duplicate edge"), "{err}");
        let err = Graph::new(["a", "b"], [("a", "z")]).unwrap_err();
        assert!(err.to_string().contains("edges[0]"), "{err}");
        assert!(Graph::new(["a"], []).is_err());
    }

    #[test]
    fn shortest_path_tie_break_is_lexicographic() {
        let g = fixtures::cycle(6);
        let p = g.shortest_path(g.vertex("0").unwrap(), g.vertex("3").unwrap()).unwrap();
        let names: Vec<&str> = p.iter().map(|&v| g.name(v)).collect();
        assert_eq!(names, ["0", "1", "2", "3"]);
        assert_eq!(g.all_shortest_paths(0, 3).len(), 2);
    }
}
