//! Media: deciding the axioms, contents, and circuit structure.

mod axioms;
mod bounded;
mod circuit;
pub(crate) mod search;

use std::collections::{BTreeSet, HashMap};
use std::ops::Deref;

use serde::Serialize;

pub use axioms::{AxiomCheck, JointWitness, M3Witness, StatePair, Walk};
pub use bounded::{check_axioms_bounded, default_max_len};
pub use circuit::{
    check_opposite, check_theta, classify_circuit, CircuitClassification, OppositeOutcome, ThetaConfig, ThetaOutcome,
};

use crate::convert::adjacency_graph;
use crate::error::{Error, Result};
use crate::graph::{is_mediatic, like_partition, Arc, Graph};
use crate::limits::Limits;
use crate::token::{Message, StateId, TokenId, TokenSystem};

/// Outcome of deciding whether a token system is a medium.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MediumReport {
    pub is_medium: bool,
    /// A pair of distinct states with no concise message between them.
    pub axiom_ma: AxiomCheck<StatePair>,
    /// A return that is not vacuous.
    pub axiom_mb: AxiomCheck<Walk>,
    /// A token without a reverse.
    pub m1: AxiomCheck<String>,
    /// A pair of distinct states with no consistent message between them.
    pub m2: AxiomCheck<StatePair>,
    pub m3: AxiomCheck<M3Witness>,
    pub m4: AxiomCheck<JointWitness>,
    /// First failing step of the graph-based decision (1 to 4).
    pub failed_step: Option<u8>,
    pub failure: Option<String>,
    /// Set when the report comes from the bounded enumeration.
    pub max_len: Option<usize>,
}

impl MediumReport {
    fn m_family(&self) -> bool {
        self.m1.holds && self.m2.holds && self.m3.holds && self.m4.holds
    }
}

/// The four steps of the graph route: reverses, adjacency graph, mediatic
/// graph, and token-by-token agreement with the induced medium.
fn graph_route(sys: &TokenSystem) -> Option<(u8, String)> {
    if let Some(t) = sys.token_ids().find(|&t| sys.reverse(t).is_none()) {
        return Some((1, format!("token `{}` has no reverse", sys.token_name(t))));
    }
    let g = adjacency_graph(sys);
    let report = is_mediatic(&g);
    if !report.is_mediatic {
        let mut failed = Vec::new();
        for (ok, name) in [
            (report.g1, "connected"),
            (report.g2, "bipartite"),
            (report.g3, "like-transitive"),
        ] {
            if !ok {
                failed.push(name);
            }
        }
        return Some((3, format!("adjacency graph is not {}", failed.join(", "))));
    }
    let partition = match like_partition(&g) {
        Ok(Ok(p)) => p,
        _ => return Some((3, "adjacency graph has no like partition".into())),
    };
    let mut owner: Vec<Option<TokenId>> = vec![None; partition.num_classes()];
    for t in sys.token_ids() {
        let mut arcs: Vec<Arc> = sys.token(t).moves().map(|(a, b)| Arc::new(a.0, b.0)).collect();
        arcs.sort();
        let k = partition
            .class_of(arcs[0])
            .expect("arcs of the adjacency graph are classified");
        if partition.classes()[k] != arcs {
            return Some((
                4,
                format!(
                    "token `{}` acts on {} of the {} arcs of its like class",
                    sys.token_name(t),
                    arcs.iter().filter(|a| partition.class_of(**a) == Some(k)).count(),
                    partition.classes()[k].len()
                ),
            ));
        }
        if let Some(prev) = owner[k] {
            return Some((
                4,
                format!(
                    "tokens `{}` and `{}` share a like class",
                    sys.token_name(prev),
                    sys.token_name(t)
                ),
            ));
        }
        owner[k] = Some(t);
    }
    if let Some(k) = owner.iter().position(Option::is_none) {
        let (a, b) = g.arc_name(partition.classes()[k][0]);
        return Some((4, format!("no token acts on the like class of ({a}, {b})")));
    }
    None
}

/// Decides whether `sys` is a medium.
///
/// The verdict comes from the graph route; every axiom is also evaluated
/// directly and the two must agree. Large non-media may exhaust the search
/// budget of the direct evaluation.
pub fn check_medium(sys: &TokenSystem, limits: &Limits) -> Result<MediumReport> {
    let failure = graph_route(sys);
    let ax = axioms::evaluate(sys, limits)?;
    let report = MediumReport {
        is_medium: failure.is_none(),
        axiom_ma: ax.ma,
        axiom_mb: ax.mb,
        m1: ax.m1,
        m2: ax.m2,
        m3: ax.m3,
        m4: ax.m4,
        failed_step: failure.as_ref().map(|f| f.0),
        failure: failure.map(|f| f.1),
        max_len: None,
    };
    let pair = report.axiom_ma.holds && report.axiom_mb.holds;
    if pair != report.is_medium || report.m_family() != report.is_medium {
        return Err(Error::Internal(format!(
            "graph route says {}, [Ma]^[Mb] = {pair}, [M1]..[M4] = {}",
            report.is_medium,
            report.m_family()
        )));
    }
    Ok(report)
}

/// A token system known to be a medium, with its graph.
#[derive(Clone, Debug)]
pub struct Medium {
    system: TokenSystem,
    graph: Graph,
    arc_token: HashMap<(usize, usize), TokenId>,
}

impl Medium {
    /// Validates `system`; a non-medium yields [`Error::NotAMedium`] with the
    /// full report.
    pub fn new(system: TokenSystem) -> Result<Self> {
        Self::with_limits(system, &Limits::default())
    }

    pub fn with_limits(system: TokenSystem, limits: &Limits) -> Result<Self> {
        let report = check_medium(&system, limits)?;
        if !report.is_medium {
            return Err(Error::NotAMedium(Box::new(report)));
        }
        let graph = adjacency_graph(&system);
        let mut arc_token = HashMap::new();
        for t in system.token_ids() {
            for (a, b) in system.token(t).moves() {
                arc_token.insert((a.0, b.0), t);
            }
        }
        Ok(Medium {
            system,
            graph,
            arc_token,
        })
    }

    pub fn system(&self) -> &TokenSystem {
        &self.system
    }

    pub fn into_system(self) -> TokenSystem {
        self.system
    }

    /// The adjacency graph; vertex `i` is state `StateId(i)`.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The unique token producing `v` from `s`, when they are adjacent.
    pub fn token_between(&self, s: StateId, v: StateId) -> Option<TokenId> {
        self.arc_token.get(&(s.0, v.0)).copied()
    }

    /// The message whose trajectory is the given vertex walk.
    pub fn lift_walk(&self, walk: &[usize]) -> Result<Message> {
        let tokens = walk
            .windows(2)
            .map(|w| {
                self.token_between(StateId(w[0]), StateId(w[1])).ok_or_else(|| {
                    Error::Precondition(format!(
                        "{} and {} are not adjacent",
                        self.graph.name(w[0]),
                        self.graph.name(w[1])
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Message::new(tokens)
    }

    pub fn distance(&self, s: StateId, v: StateId) -> usize {
        self.graph.distances().get(s.0, v.0).expect("media are connected") as usize
    }
}

impl Deref for Medium {
    type Target = TokenSystem;

    fn deref(&self) -> &TokenSystem {
        &self.system
    }
}

/// The content of a state: the tokens of every concise message producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Content {
    pub state: StateId,
    pub tokens: BTreeSet<TokenId>,
}

/// For each reverse pair with representative move `A t = B`, `t` belongs to
/// the content of `S` iff `B` is closer to `S` than `A`.
pub fn state_content(m: &Medium, s: StateId) -> Result<Content> {
    if s.0 >= m.num_states() {
        return Err(Error::UnknownState(s.to_string()));
    }
    let mut tokens = BTreeSet::new();
    for t in m.token_ids() {
        let r = m.reverse(t).expect("media pair every token");
        if r < t {
            continue;
        }
        let (a, b) = m.token(t).moves().next().expect("tokens move some state");
        tokens.insert(if m.distance(s, b) < m.distance(s, a) { t } else { r });
    }
    Ok(Content { state: s, tokens })
}

#[cfg(test)]
mod tests;
