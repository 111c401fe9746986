//! Breadth-first exploration of messages keyed by `(state, tokens used)`.
//!
//! Two messages reaching the same state with the same token set are
//! interchangeable for every property that depends only on consistency and
//! repetition, so the search only keeps the first (shortest) of them.

use std::collections::HashMap;
use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::limits::Meter;
use crate::token::{StateId, TokenId, TokenSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// No repeated token, never a token together with its reverse.
    Concise,
    /// Repeats allowed, never a token together with its reverse.
    Consistent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Direction {
    /// Messages starting at the root.
    Forward,
    /// Messages ending at the root.
    Backward,
}

pub(crate) struct Node {
    pub state: StateId,
    pub used: FixedBitSet,
    parent: Option<(usize, TokenId)>,
}

pub(crate) struct Explored {
    pub nodes: Vec<Node>,
    direction: Direction,
}

impl Explored {
    /// The message represented by node `i`, read left to right. For a
    /// forward search it starts at the root; for a backward search it starts
    /// at `nodes[i].state` and ends at the root.
    pub fn message(&self, i: usize) -> Vec<TokenId> {
        let mut tokens = Vec::new();
        let mut cur = i;
        while let Some((p, t)) = self.nodes[cur].parent {
            tokens.push(t);
            cur = p;
        }
        if self.direction == Direction::Forward {
            tokens.reverse();
        }
        tokens
    }
}

pub(crate) fn incoming(sys: &TokenSystem) -> Vec<Vec<(TokenId, StateId)>> {
    let mut inc = vec![Vec::new(); sys.num_states()];
    for s in sys.states() {
        for &(t, v) in sys.outgoing(s) {
            inc[v.0].push((t, s));
        }
    }
    inc
}

/// Explores every message admissible under `mode` from (or into) `root`, up
/// to `max_len` tokens when given.
pub(crate) fn explore(
    sys: &TokenSystem,
    incoming: &[Vec<(TokenId, StateId)>],
    root: StateId,
    mode: Mode,
    direction: Direction,
    max_len: Option<usize>,
    meter: &mut Meter,
) -> Result<Explored> {
    let k = sys.num_tokens();
    let mut nodes = vec![Node {
        state: root,
        used: FixedBitSet::with_capacity(k),
        parent: None,
    }];
    let mut depth = vec![0usize];
    let mut index: HashMap<(StateId, FixedBitSet), usize> = HashMap::new();
    index.insert((root, nodes[0].used.clone()), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if max_len.is_some_and(|l| depth[i] >= l) {
            continue;
        }
        let here = nodes[i].state;
        let arcs = match direction {
            Direction::Forward => sys.outgoing(here),
            Direction::Backward => &incoming[here.0][..],
        };
        for &(t, next) in arcs {
            let used = &nodes[i].used;
            if mode == Mode::Concise && used.contains(t.0) {
                continue;
            }
            if sys.reverse(t).is_some_and(|r| used.contains(r.0)) {
                continue;
            }
            let mut grown = used.clone();
            grown.insert(t.0);
            let key = (next, grown);
            if index.contains_key(&key) {
                continue;
            }
            meter.tick("exploring messages")?;
            let j = nodes.len();
            nodes.push(Node {
                state: next,
                used: key.1.clone(),
                parent: Some((i, t)),
            });
            depth.push(depth[i] + 1);
            index.insert(key, j);
            queue.push_back(j);
        }
    }
    Ok(Explored { nodes, direction })
}

/// Additive signature of a message: paired tokens count `+1`/`-1` on a shared
/// coordinate, tokens without a reverse count `+1` on their own. A message is
/// vacuous exactly when its signature is zero.
pub(crate) struct Signature {
    coord: Vec<(usize, i32)>,
    pub dims: usize,
}

impl Signature {
    pub fn new(sys: &TokenSystem) -> Self {
        let mut coord = vec![(0, 0); sys.num_tokens()];
        let mut dims = 0;
        for t in sys.token_ids() {
            match sys.reverse(t) {
                Some(r) if r < t => coord[t.0] = (coord[r.0].0, -1),
                _ => {
                    coord[t.0] = (dims, 1);
                    dims += 1;
                }
            }
        }
        Signature { coord, dims }
    }

    pub fn of(&self, t: TokenId) -> (usize, i32) {
        self.coord[t.0]
    }
}
