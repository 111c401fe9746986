//! Exact evaluation of the axiom families on a finite token system.
//!
//! Each message has an additive signature (see [`Signature`]); a message is
//! vacuous iff its signature is zero. Inside a strongly connected block of
//! the move digraph where every arc agrees with a potential `p`, the
//! signature of any walk `S -> V` is `p(V) - p(S)`, which turns every axiom
//! into a statement about distances and potentials. Outside that regime the
//! axioms fall back to [`explore`].

use std::collections::VecDeque;

use serde::Serialize;

use super::search::{explore, incoming, Direction, Mode, Signature};
use crate::error::Result;
use crate::limits::{Limits, Meter};
use crate::token::{StateId, TokenId, TokenSystem};

const INF: u32 = u32::MAX;

/// Verdict on one axiom with an optional counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> AxiomCheck<W> {
    pub(crate) fn pass() -> Self {
        AxiomCheck {
            holds: true,
            witness: None,
        }
    }

    pub(crate) fn fail(w: W) -> Self {
        AxiomCheck {
            holds: false,
            witness: Some(w),
        }
    }

    pub(crate) fn from_witness(w: Option<W>) -> Self {
        AxiomCheck {
            holds: w.is_none(),
            witness: w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatePair {
    pub from: String,
    pub to: String,
}

/// A message together with the state it is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Walk {
    pub start: String,
    pub tokens: Vec<String>,
}

/// A stepwise effective message that is ineffective but not vacuous, or
/// vacuous but effective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct M3Witness {
    pub walk: Walk,
    pub effective: bool,
    pub vacuous: bool,
}

/// Two consistent messages producing `target`, the first containing
/// `token`, the second its reverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointWitness {
    pub target: String,
    pub token: String,
    pub first: Walk,
    pub second: Walk,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Axioms {
    pub ma: AxiomCheck<StatePair>,
    pub mb: AxiomCheck<Walk>,
    pub m1: AxiomCheck<String>,
    pub m2: AxiomCheck<StatePair>,
    pub m3: AxiomCheck<M3Witness>,
    pub m4: AxiomCheck<JointWitness>,
}

pub(crate) struct Namer<'a>(pub &'a TokenSystem);

impl Namer<'_> {
    pub fn pair(&self, a: StateId, b: StateId) -> StatePair {
        StatePair {
            from: self.0.state_name(a).to_string(),
            to: self.0.state_name(b).to_string(),
        }
    }

    pub fn walk(&self, s: StateId, tokens: &[TokenId]) -> Walk {
        Walk {
            start: self.0.state_name(s).to_string(),
            tokens: self.0.token_names(tokens),
        }
    }
}

pub(crate) fn m1(sys: &TokenSystem) -> AxiomCheck<String> {
    AxiomCheck::from_witness(
        sys.token_ids()
            .find(|&t| sys.reverse(t).is_none())
            .map(|t| sys.token_name(t).to_string()),
    )
}

/// Directed BFS over moves in token order.
pub(crate) fn directed_bfs(sys: &TokenSystem, s: StateId) -> (Vec<u32>, Vec<Option<(StateId, TokenId)>>) {
    let n = sys.num_states();
    let mut dist = vec![INF; n];
    let mut parent = vec![None; n];
    dist[s.0] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &(t, v) in sys.outgoing(u) {
            if dist[v.0] == INF {
                dist[v.0] = dist[u.0] + 1;
                parent[v.0] = Some((u, t));
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

fn path_from(parent: &[Option<(StateId, TokenId)>], mut v: StateId) -> Vec<TokenId> {
    let mut out = Vec::new();
    while let Some((u, t)) = parent[v.0] {
        out.push(t);
        v = u;
    }
    out.reverse();
    out
}

struct Digraph<'a> {
    sys: &'a TokenSystem,
    dist: Vec<Vec<u32>>,
    parent: Vec<Vec<Option<(StateId, TokenId)>>>,
}

impl Digraph<'_> {
    fn shortest(&self, a: StateId, b: StateId) -> Vec<TokenId> {
        path_from(&self.parent[a.0], b)
    }

    fn reach(&self, a: StateId, b: StateId) -> bool {
        self.dist[a.0][b.0] != INF
    }

    fn strongly_connected(&self) -> Option<(StateId, StateId)> {
        let n = self.sys.num_states();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (StateId(a), StateId(b))))
            .find(|&(a, b)| !self.reach(a, b))
    }
}

pub(crate) fn evaluate(sys: &TokenSystem, limits: &Limits) -> Result<Axioms> {
    let n = sys.num_states();
    let sig = Signature::new(sys);
    let mut dist = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    for s in sys.states() {
        let (d, p) = directed_bfs(sys, s);
        dist.push(d);
        parent.push(p);
    }
    let dg = Digraph { sys, dist, parent };
    let names = Namer(sys);

    // Block representative: the smallest mutually reachable state.
    let block: Vec<usize> = (0..n)
        .map(|v| {
            (0..n)
                .find(|&w| dg.reach(StateId(v), StateId(w)) && dg.reach(StateId(w), StateId(v)))
                .unwrap()
        })
        .collect();

    // Potentials along the BFS tree of each block representative.
    let mut pot = vec![vec![0i32; sig.dims]; n];
    for v in 0..n {
        let r = StateId(block[v]);
        for t in dg.shortest(r, StateId(v)) {
            let (i, w) = sig.of(t);
            pot[v][i] += w;
        }
    }
    let signature = |tokens: &[TokenId]| {
        let mut acc = vec![0i32; sig.dims];
        for &t in tokens {
            let (i, w) = sig.of(t);
            acc[i] += w;
        }
        acc
    };

    let mut mb_violation = None;
    'scan: for s in sys.states() {
        for &(t, v) in sys.outgoing(s) {
            if block[s.0] != block[v.0] {
                continue;
            }
            let (i, w) = sig.of(t);
            let mut expect = pot[s.0].clone();
            expect[i] += w;
            if expect != pot[v.0] {
                mb_violation = Some((s, t, v));
                break 'scan;
            }
        }
    }
    let mb = match mb_violation {
        None => AxiomCheck::pass(),
        Some((s, t, v)) => {
            let r = StateId(block[s.0]);
            let back = dg.shortest(v, r);
            let mut first = dg.shortest(r, s);
            first.push(t);
            first.extend(&back);
            let walk = if signature(&first).iter().any(|&x| x != 0) {
                first
            } else {
                let mut second = dg.shortest(r, v);
                second.extend(&back);
                second
            };
            AxiomCheck::fail(names.walk(r, &walk))
        }
    };

    let m3 = if let Some(w) = &mb.witness {
        AxiomCheck::fail(M3Witness {
            walk: w.clone(),
            effective: false,
            vacuous: false,
        })
    } else {
        let found = sys
            .states()
            .flat_map(|s| sys.states().map(move |v| (s, v)))
            .find(|&(s, v)| s != v && block[s.0] == block[v.0] && pot[s.0] == pot[v.0]);
        AxiomCheck::from_witness(found.map(|(s, v)| M3Witness {
            walk: names.walk(s, &dg.shortest(s, v)),
            effective: true,
            vacuous: true,
        }))
    };

    let unreachable = dg.strongly_connected();
    let m1 = m1(sys);
    let mut meter = Meter::new(limits.max_enum);
    let inc = incoming(sys);

    let (ma, m2, m4);
    if unreachable.is_none() && mb.holds {
        let delta = |s: usize, v: usize| -> (i32, i32) {
            let mut l1 = 0;
            let mut linf = 0;
            for (a, b) in pot[v].iter().zip(&pot[s]) {
                let d = (a - b).abs();
                l1 += d;
                linf = linf.max(d);
            }
            (l1, linf)
        };
        let pairs = || (0..n).flat_map(|s| (0..n).map(move |v| (s, v))).filter(|(s, v)| s != v);
        ma = AxiomCheck::from_witness(
            pairs()
                .find(|&(s, v)| {
                    let (l1, linf) = delta(s, v);
                    linf > 1 || dg.dist[s][v] as i32 != l1
                })
                .map(|(s, v)| names.pair(StateId(s), StateId(v))),
        );
        m2 = AxiomCheck::from_witness(
            pairs()
                .find(|&(s, v)| dg.dist[s][v] as i32 != delta(s, v).0)
                .map(|(s, v)| names.pair(StateId(s), StateId(v))),
        );
        m4 = AxiomCheck::from_witness(potential_m4(sys, &dg, &sig, &pot, &delta, &names));
    } else {
        if let Some((a, b)) = unreachable {
            ma = AxiomCheck::fail(names.pair(a, b));
            m2 = AxiomCheck::fail(names.pair(a, b));
        } else {
            ma = AxiomCheck::from_witness(unreached(sys, &inc, Mode::Concise, &mut meter)?);
            m2 = AxiomCheck::from_witness(unreached(sys, &inc, Mode::Consistent, &mut meter)?);
        }
        m4 = AxiomCheck::from_witness(search_m4(sys, &inc, None, &mut meter)?);
    }

    Ok(Axioms { ma, mb, m1, m2, m3, m4 })
}

/// Consistent messages into `w` exist from exactly the states at directed
/// distance equal to the potential gap; their token directions are the signs
/// of that gap. A conflict is a coordinate with both signs.
fn potential_m4(
    sys: &TokenSystem,
    dg: &Digraph,
    sig: &Signature,
    pot: &[Vec<i32>],
    delta: &dyn Fn(usize, usize) -> (i32, i32),
    names: &Namer,
) -> Option<JointWitness> {
    let n = sys.num_states();
    // Token carrying `+1` on each coordinate.
    let mut plus = vec![None; sig.dims];
    for t in sys.token_ids() {
        let (i, w) = sig.of(t);
        if w > 0 {
            plus[i] = Some(t);
        }
    }
    for w in 0..n {
        let sources: Vec<usize> = (0..n)
            .filter(|&s| s != w && dg.dist[s][w] as i32 == delta(s, w).0)
            .collect();
        for (i, tok) in plus.iter().enumerate() {
            let pos = sources.iter().find(|&&s| pot[w][i] - pot[s][i] > 0);
            let neg = sources.iter().find(|&&s| pot[w][i] - pot[s][i] < 0);
            if let (Some(&a), Some(&b), Some(tok)) = (pos, neg, tok) {
                let (wa, wb) = (StateId(w), StateId(a));
                return Some(JointWitness {
                    target: sys.state_name(wa).to_string(),
                    token: sys.token_name(*tok).to_string(),
                    first: names.walk(wb, &dg.shortest(wb, wa)),
                    second: names.walk(StateId(b), &dg.shortest(StateId(b), wa)),
                });
            }
        }
    }
    None
}

/// First pair `(S, V)`, `S != V`, with no message of the given kind from `S`
/// producing `V`.
fn unreached(
    sys: &TokenSystem,
    inc: &[Vec<(TokenId, StateId)>],
    mode: Mode,
    meter: &mut Meter,
) -> Result<Option<StatePair>> {
    unreached_within(sys, inc, mode, None, meter)
}

pub(crate) fn unreached_within(
    sys: &TokenSystem,
    inc: &[Vec<(TokenId, StateId)>],
    mode: Mode,
    max_len: Option<usize>,
    meter: &mut Meter,
) -> Result<Option<StatePair>> {
    for s in sys.states() {
        let ex = explore(sys, inc, s, mode, Direction::Forward, max_len, meter)?;
        let mut hit = vec![false; sys.num_states()];
        for node in &ex.nodes[1..] {
            hit[node.state.0] = true;
        }
        if let Some(v) = sys.states().find(|&v| v != s && !hit[v.0]) {
            return Ok(Some(Namer(sys).pair(s, v)));
        }
    }
    Ok(None)
}

/// Collects every consistent stepwise effective message into each state and
/// looks for a token appearing in one and its reverse in another.
pub(crate) fn search_m4(
    sys: &TokenSystem,
    inc: &[Vec<(TokenId, StateId)>],
    max_len: Option<usize>,
    meter: &mut Meter,
) -> Result<Option<JointWitness>> {
    for w in sys.states() {
        let ex = explore(sys, inc, w, Mode::Consistent, Direction::Backward, max_len, meter)?;
        let mut first_with = vec![None; sys.num_tokens()];
        for (i, node) in ex.nodes.iter().enumerate().skip(1) {
            for t in node.used.ones() {
                first_with[t].get_or_insert(i);
            }
        }
        for t in sys.token_ids() {
            let Some(r) = sys.reverse(t) else { continue };
            if let (Some(a), Some(b)) = (first_with[t.0], first_with[r.0]) {
                return Ok(Some(JointWitness {
                    target: sys.state_name(w).to_string(),
                    token: sys.token_name(t).to_string(),
                    first: Namer(sys).walk(ex.nodes[a].state, &ex.message(a)),
                    second: Namer(sys).walk(ex.nodes[b].state, &ex.message(b)),
                }));
            }
        }
    }
    Ok(None)
}
