//! Named graphs and media used throughout the tests, benches and CLI.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convert::graph_to_medium;
use crate::graph::Graph;
use crate::token::{StateId, TokenSpec, TokenSystem};

fn numbered(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let width = (n - 1).to_string().len();
    let name = |i: usize| format!("{i:0width$}");
    Graph::new((0..n).map(name), edges.into_iter().map(|(a, b)| (name(a), name(b)))).expect("fixture graphs are valid")
}

/// The path on `n >= 2` vertices `0, 1, ..., n-1`.
pub fn path(n: usize) -> Graph {
    numbered(n, (1..n).map(|i| (i - 1, i)))
}

/// The cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    numbered(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The star `K(1,k)` centered at `0`.
pub fn star(k: usize) -> Graph {
    numbered(k + 1, (1..=k).map(|i| (0, i)))
}

/// `K(a,b)` on vertices `l0.. ` and `r0..`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let left: Vec<String> = (0..a).map(|i| format!("l{i}")).collect();
    let right: Vec<String> = (0..b).map(|i| format!("r{i}")).collect();
    let edges: Vec<(String, String)> = left
        .iter()
        .flat_map(|l| right.iter().map(move |r| (l.clone(), r.clone())))
        .collect();
    Graph::new(left.into_iter().chain(right), edges).expect("fixture graphs are valid")
}

/// `C6` with the chord `0 - 3`: two squares sharing an edge.
pub fn domino() -> Graph {
    numbered(6, (0..6).map(|i| (i, (i + 1) % 6)).chain([(0, 3)]))
}

/// Two disjoint edges `a - b` and `c - d`.
pub fn two_k2() -> Graph {
    Graph::new(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]).expect("fixture graphs are valid")
}

/// The complete binary tree on 15 vertices, `01` to `15` in heap order.
pub fn tree15() -> Graph {
    Graph::new(
        (1..=15).map(|i| format!("{i:02}")),
        (2..=15).map(|i| (format!("{:02}", i / 2), format!("{i:02}"))),
    )
    .expect("fixture graphs are valid")
}

/// `{1,2}` style name of a subset.
pub fn subset_name(s: &BTreeSet<usize>) -> String {
    let inner: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn parse_subset(name: &str) -> BTreeSet<usize> {
    name.trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().expect("subset names hold numbers"))
        .collect()
}

fn subsets(d: usize) -> Vec<BTreeSet<usize>> {
    (0..1usize << d)
        .map(|mask| (1..=d).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

/// The hypercube on the subsets of `{1, ..., d}`.
pub fn hypercube(d: usize) -> Graph {
    let sets = subsets(d);
    let mut edges = Vec::new();
    for s in &sets {
        for i in 1..=d {
            if !s.contains(&i) {
                let mut t = s.clone();
                t.insert(i);
                edges.push((subset_name(s), subset_name(&t)));
            }
        }
    }
    Graph::new(sets.iter().map(subset_name), edges).expect("fixture graphs are valid")
}

/// The medium on the subsets of `{1, ..., d}` with tokens `add<i>` and
/// `remove<i>`.
pub fn hypercube_medium(d: usize) -> TokenSystem {
    let sets = subsets(d);
    let mut specs = Vec::new();
    for i in 1..=d {
        let moves: Vec<(String, String)> = sets
            .iter()
            .filter(|s| !s.contains(&i))
            .map(|s| {
                let mut t = s.clone();
                t.insert(i);
                (subset_name(s), subset_name(&t))
            })
            .collect();
        specs.push(TokenSpec::new(format!("add{i}"), moves.clone()));
        specs.push(TokenSpec::new(
            format!("remove{i}"),
            moves.into_iter().map(|(a, b)| (b, a)),
        ));
    }
    TokenSystem::new(sets.iter().map(subset_name), specs).expect("hypercube media are valid")
}

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 7;

const CUBE_DIM: usize = 5;
const TARGET: usize = 10;

fn isometric(vs: &[usize]) -> bool {
    let g = induced(vs);
    let d = g.distances();
    (0..vs.len()).all(|i| (0..vs.len()).all(|j| d.get(i, j) == Some((vs[i] ^ vs[j]).count_ones())))
}

fn induced(vs: &[usize]) -> Graph {
    let names: Vec<String> = vs.iter().map(|&v| format!("{v:0CUBE_DIM$b}")).collect();
    let mut edges = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if (vs[i] ^ vs[j]).count_ones() == 1 {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Graph::new(names.clone(), edges).expect("induced subgraphs are valid")
}

/// A 10-vertex partial cube: random subsets of the 5-cube's vertices, keeping
/// the largest isometric component, retried until it has 10 vertices.
/// Vertices are named by their bit strings.
pub fn random_partial_cube(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let picked: Vec<usize> = (0..1usize << CUBE_DIM).filter(|_| rng.random_bool(0.5)).collect();
        if picked.len() < 2 {
            continue;
        }
        let g = induced(&picked);
        let best = g
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| picked[i]).collect::<Vec<usize>>())
            .filter(|c| c.len() >= 2 && isometric(c))
            .max_by_key(Vec::len);
        if let Some(c) = best.filter(|c| c.len() == TARGET) {
            return induced(&c);
        }
    }
}

/// `g` with vertex `i` renamed to `names[i]`.
pub fn renamed_graph<S: AsRef<str>>(g: &Graph, names: &[S]) -> Graph {
    let name = |i: usize| names[i].as_ref().to_string();
    Graph::new(
        (0..g.num_vertices()).map(name),
        g.edges().iter().map(|&(a, b)| (name(a), name(b))),
    )
    .expect("renaming keeps a graph valid")
}

/// `sys` with state `i` renamed to `states[i]` and token `j` to `tokens[j]`.
pub fn renamed<S: AsRef<str>>(sys: &TokenSystem, states: &[S], tokens: &[S]) -> crate::Result<TokenSystem> {
    let state = |s: StateId| states[s.0].as_ref().to_string();
    let specs = sys
        .token_ids()
        .map(|t| {
            TokenSpec::new(
                tokens[t.0].as_ref(),
                sys.token(t).moves().map(|(a, b)| (state(a), state(b))),
            )
        })
        .collect();
    TokenSystem::new(states.iter().map(|s| s.as_ref().to_string()), specs)
}

/// Every named fixture, graph or medium.
#[derive(Clone, Debug)]
pub enum Fixture {
    Graph(Graph),
    Medium(TokenSystem),
}

pub const GRAPH_NAMES: &[&str] = &[
    "k2",
    "p3",
    "p6",
    "k13",
    "c4",
    "c5",
    "c6",
    "c8",
    "k23",
    "q3",
    "q4",
    "domino",
    "two-k2",
    "tree15",
    "random-pc",
];

pub const MEDIUM_NAMES: &[&str] = &["q3-medium", "q4-medium"];

pub fn graph(name: &str, seed: u64) -> Option<Graph> {
    Some(match name {
        "k2" => path(2),
        "p3" => path(3),
        "p6" => path(6),
        "k13" => star(3),
        "c4" => cycle(4),
        "c5" => cycle(5),
        "c6" => cycle(6),
        "c8" => cycle(8),
        "k23" => complete_bipartite(2, 3),
        "q3" => hypercube(3),
        "q4" => hypercube(4),
        "domino" => domino(),
        "two-k2" => two_k2(),
        "tree15" => tree15(),
        "random-pc" => random_partial_cube(seed),
        _ => return None,
    })
}

pub fn by_name(name: &str, seed: u64) -> Option<Fixture> {
    match name {
        "q3-medium" => Some(Fixture::Medium(hypercube_medium(3))),
        "q4-medium" => Some(Fixture::Medium(hypercube_medium(4))),
        _ => graph(name, seed).map(Fixture::Graph),
    }
}

/// The mediatic graph fixtures.
pub fn mediatic_graphs() -> Vec<(&'static str, Graph)> {
    [
        "k2",
        "p3",
        "k13",
        "c4",
        "c6",
        "q3",
        "q4",
        "c8",
        "tree15",
        "random-pc",
        "domino",
        "p6",
    ]
    .into_iter()
    .map(|n| (n, graph(n, DEFAULT_SEED).unwrap()))
    .collect()
}

/// Explicit hypercube media plus the induced medium of every mediatic graph
/// fixture.
pub fn media() -> Vec<(String, TokenSystem)> {
    let mut out = vec![
        ("q3-medium".to_string(), hypercube_medium(3)),
        ("q4-medium".to_string(), hypercube_medium(4)),
    ];
    for (name, g) in mediatic_graphs() {
        out.push((
            format!("{name}-induced"),
            graph_to_medium(&g).expect("fixture is mediatic"),
        ));
    }
    out
}

fn rebuild(sys: &TokenSystem, specs: Vec<TokenSpec>) -> Option<TokenSystem> {
    TokenSystem::new(sys.state_names().iter().cloned(), specs).ok()
}

/// One token per arc.
fn arc_tokens(g: &Graph) -> TokenSystem {
    let specs = g
        .arcs()
        .into_iter()
        .map(|a| {
            let (s, t) = g.arc_name(a);
            TokenSpec::new(format!("{s}>{t}"), [(s, t)])
        })
        .collect();
    TokenSystem::new(g.names().iter().cloned(), specs).expect("arc tokens are valid")
}

/// Token systems that are not media: deleted tokens, tokens split or
/// truncated away from their like classes, and arc tokens on non-mediatic
/// graphs.
pub fn mutations() -> Vec<(String, TokenSystem)> {
    let bases = vec![
        ("q3-medium".to_string(), hypercube_medium(3)),
        ("c4-induced".to_string(), graph_to_medium(&cycle(4)).unwrap()),
        ("c6-induced".to_string(), graph_to_medium(&cycle(6)).unwrap()),
        ("p3-induced".to_string(), graph_to_medium(&path(3)).unwrap()),
    ];
    let mut out = Vec::new();
    for (base, sys) in &bases {
        let specs = sys.to_specs();
        for (i, spec) in specs.iter().enumerate() {
            let mut deleted = specs.clone();
            deleted.remove(i);
            if let Some(m) = rebuild(sys, deleted) {
                out.push((format!("{base}/delete-{}", spec.id), m));
            }
        }
        for (i, spec) in specs.iter().enumerate() {
            if spec.moves.len() < 2 {
                continue;
            }
            let mut truncated = specs.clone();
            truncated[i].moves.pop();
            if let Some(m) = rebuild(sys, truncated) {
                out.push((format!("{base}/truncate-{}", spec.id), m));
            }
            // Split the token and its reverse move by move, keeping reverses.
            let t = sys.token_id(&spec.id).unwrap();
            let r = sys.reverse(t).unwrap();
            if r < t {
                continue;
            }
            let mut split: Vec<TokenSpec> = specs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != t.0 && j != r.0)
                .map(|(_, s)| s.clone())
                .collect();
            for (k, (a, b)) in spec.moves.iter().enumerate() {
                split.push(TokenSpec::new(format!("{}.{k}", spec.id), [(a.clone(), b.clone())]));
                split.push(TokenSpec::new(
                    format!("{}.{k}", specs[r.0].id),
                    [(b.clone(), a.clone())],
                ));
            }
            if let Some(m) = rebuild(sys, split) {
                out.push((format!("{base}/split-{}", spec.id), m));
            }
        }
    }
    for (name, g) in [
        ("k23", complete_bipartite(2, 3)),
        ("c5", cycle(5)),
        ("c4", cycle(4)),
        ("two-k2", two_k2()),
    ] {
        out.push((format!("{name}/arc-tokens"), arc_tokens(&g)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!((hypercube(3).num_vertices(), hypercube(3).num_edges()), (8, 12));
        assert_eq!((hypercube(4).num_vertices(), hypercube(4).num_edges()), (16, 32));
        assert_eq!(tree15().num_edges(), 14);
        assert_eq!(domino().num_edges(), 7);
        assert_eq!(star(3).degree(0), 3);
    }

    #[test]
    fn random_partial_cube_is_deterministic() {
        let a = random_partial_cube(DEFAULT_SEED);
        assert_eq!(a, random_partial_cube(DEFAULT_SEED));
        assert_eq!(a.num_vertices(), 10);
        assert!(a.is_connected().is_ok());
        // Isometric: graph distance equals Hamming distance of the names.
        let d = a.distances();
        for i in 0..10 {
            for j in 0..10 {
                let h = a.name(i).chars().zip(a.name(j).chars()).filter(|(x, y)| x != y).count() as u32;
                assert_eq!(d.get(i, j), Some(h));
            }
        }
    }

    #[test]
    fn enough_mutations() {
        assert!(mutations().len() >= 20);
    }

    #[test]
    fn subset_names_round_trip() {
        let s: BTreeSet<usize> = [1, 3].into();
        assert_eq!(subset_name(&s), "{1,3}");
        assert_eq!(parse_subset("{1,3}"), s);
        assert!(parse_subset("{}").is_empty());
    }
}
