//! Media to graphs and back.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_mediatic, like_partition, Graph};
use crate::medium::Medium;
use crate::token::{Message, StateId, TokenSpec, TokenSystem};

/// Vertices are the states; `{S, V}` is an edge when some token moves `S` to
/// `V`. Works on any token system, which is what diagnostics need.
pub fn adjacency_graph(sys: &TokenSystem) -> Graph {
    let mut edges = BTreeSet::new();
    for t in sys.token_ids() {
        for (a, b) in sys.token(t).moves() {
            edges.insert((a.0.min(b.0), a.0.max(b.0)));
        }
    }
    Graph::from_sorted_names(sys.state_names().to_vec(), edges.into_iter().collect())
        .expect("token systems have at least two states and no self moves")
}

/// The graph of a medium.
pub fn medium_to_graph(m: &Medium) -> Graph {
    m.graph().clone()
}

/// The induced medium of a mediatic graph: token `t<k>` moves exactly the
/// arcs of like class `k`.
pub fn graph_to_medium(g: &Graph) -> Result<TokenSystem> {
    let report = is_mediatic(g);
    if !report.is_mediatic {
        return Err(Error::NotMediatic(Box::new(report)));
    }
    let partition =
        like_partition(g)?.map_err(|w| Error::Internal(format!("mediatic graph has non-transitive triple {w:?}")))?;
    let mut specs = Vec::with_capacity(partition.num_classes());
    for (k, class) in partition.classes().iter().enumerate() {
        let mut sources = BTreeSet::new();
        for a in class {
            if !sources.insert(a.source) {
                return Err(Error::Internal(format!(
                    "like class {k} has two arcs leaving {}",
                    g.name(a.source)
                )));
            }
        }
        specs.push(TokenSpec::new(
            format!("t{k}"),
            class.iter().map(|&a| (g.name(a.source), g.name(a.target))),
        ));
    }
    TokenSystem::new(g.names().iter().cloned(), specs)
}

/// Outcome of a round trip; `diff` lists every discrepancy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RoundTrip {
    pub ok: bool,
    pub diff: Vec<String>,
    /// Original token name to induced token name (medium direction only).
    pub token_map: BTreeMap<String, String>,
}

/// `medium_to_graph(graph_to_medium(g)) == g`, vertex for vertex and edge
/// for edge.
pub fn verify_graph_round_trip(g: &Graph) -> Result<RoundTrip> {
    let m = Medium::new(graph_to_medium(g)?)?;
    let back = medium_to_graph(&m);
    let mut diff = Vec::new();
    if back.names() != g.names() {
        diff.push(format!("vertices differ: {:?} vs {:?}", g.names(), back.names()));
    } else {
        let (a, b): (BTreeSet<_>, BTreeSet<_>) = (g.edges().iter().collect(), back.edges().iter().collect());
        for &&(x, y) in a.difference(&b) {
            diff.push(format!("edge {{{}, {}}} lost", g.name(x), g.name(y)));
        }
        for &&(x, y) in b.difference(&a) {
            diff.push(format!("edge {{{}, {}}} added", g.name(x), g.name(y)));
        }
    }
    Ok(RoundTrip {
        ok: diff.is_empty(),
        diff,
        token_map: BTreeMap::new(),
    })
}

/// `graph_to_medium(medium_to_graph(m))` equals `m` up to a renaming of
/// tokens, matched on action tables.
pub fn verify_medium_round_trip(m: &Medium) -> Result<RoundTrip> {
    let induced = graph_to_medium(&medium_to_graph(m))?;
    let mut diff = Vec::new();
    if induced.state_names() != m.state_names() {
        diff.push("state sets differ".to_string());
    }
    let action = |sys: &TokenSystem, t| -> Vec<(StateId, StateId)> { sys.token(t).moves().collect() };
    let mut by_action: BTreeMap<Vec<(StateId, StateId)>, String> = induced
        .token_ids()
        .map(|t| (action(&induced, t), induced.token_name(t).to_string()))
        .collect();
    let mut token_map = BTreeMap::new();
    for t in m.token_ids() {
        match by_action.remove(&action(m, t)) {
            Some(name) => {
                token_map.insert(m.token_name(t).to_string(), name);
            }
            None => diff.push(format!("token `{}` has no induced counterpart", m.token_name(t))),
        }
    }
    for name in by_action.values() {
        diff.push(format!("induced token `{name}` has no original counterpart"));
    }
    Ok(RoundTrip {
        ok: diff.is_empty(),
        diff,
        token_map,
    })
}

/// A concise message from `s` to `t` along the BFS path that prefers
/// lexicographically smaller neighbors.
pub fn concise_message(m: &Medium, s: StateId, t: StateId) -> Result<Message> {
    for x in [s, t] {
        if x.0 >= m.num_states() {
            return Err(Error::UnknownState(x.to_string()));
        }
    }
    if s == t {
        return Err(Error::input("target", "source and target must differ"));
    }
    let g = m.graph();
    let mut parent = vec![None; g.num_vertices()];
    let mut seen = vec![false; g.num_vertices()];
    seen[s.0] = true;
    let mut queue = VecDeque::from([s.0]);
    while let Some(u) = queue.pop_front() {
        if u == t.0 {
            break;
        }
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    let mut walk = vec![t.0];
    while let Some(p) = parent[*walk.last().unwrap()] {
        walk.push(p);
    }
    walk.reverse();
    m.lift_walk(&walk)
}
