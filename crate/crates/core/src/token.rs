//! Token systems, tokens and the message algebra.
//!
//! States and tokens are referred to by dense indices ([`StateId`],
//! [`TokenId`]) into a [`TokenSystem`]; names are kept only for I/O. States
//! are stored in lexicographic order of their names and tokens in
//! lexicographic order of their ids, so index order is canonical order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenId(pub usize);

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl fmt::Display for TokenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// A token given by name, as read from a file or built by hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenSpec {
    pub id: String,
    pub moves: Vec<(String, String)>,
}

impl TokenSpec {
    pub fn new<S: Into<String>>(id: impl Into<String>, moves: impl IntoIterator<Item = (S, S)>) -> Self {
        TokenSpec {
            id: id.into(),
            moves: moves.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }
}

/// A non-identity transformation of the state set, stored as its moved pairs.
/// Every state that is not a source of a moved pair is a fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    id: String,
    moves: BTreeMap<StateId, StateId>,
}

impl Token {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn act(&self, s: StateId) -> StateId {
        self.moves.get(&s).copied().unwrap_or(s)
    }

    /// Moved pairs `(source, target)` in source order.
    pub fn moves(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.moves.iter().map(|(&a, &b)| (a, b))
    }

    pub fn num_moves(&self) -> usize {
        self.moves.len()
    }

    fn reversed_moves(&self) -> Vec<(StateId, StateId)> {
        let mut v: Vec<_> = self.moves.iter().map(|(&a, &b)| (b, a)).collect();
        v.sort();
        v
    }
}

/// A finite, nonempty sequence of tokens.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Message(Vec<TokenId>);

impl Message {
    /// Builds a message; empty sequences are rejected.
    pub fn new(tokens: Vec<TokenId>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::input("message", "a message must contain at least one token"));
        }
        Ok(Message(tokens))
    }

    pub fn tokens(&self) -> &[TokenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn content(&self) -> BTreeSet<TokenId> {
        self.0.iter().copied().collect()
    }

    pub fn concat(&self, other: &Message) -> Message {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Message(v)
    }

    /// Cyclic rotation starting at position `start`.
    pub fn rotate(&self, start: usize) -> Message {
        let n = self.0.len();
        Message((0..n).map(|i| self.0[(start + i) % n]).collect())
    }
}

/// Attributes of a message relative to a starting state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageStats {
    pub end: StateId,
    pub effective: bool,
    pub stepwise_effective: bool,
    pub consistent: bool,
    pub concise: bool,
    pub vacuous: bool,
    pub is_return: bool,
    pub content: BTreeSet<TokenId>,
    pub length: usize,
}

/// A set of states together with a set of tokens acting on it.
///
/// Construction validates the system and caches the reverse pairing, which
/// is a fixed-point-free involution on the tokens that have a reverse.
#[derive(Clone, Debug)]
pub struct TokenSystem {
    states: Vec<String>,
    state_index: HashMap<String, StateId>,
    tokens: Vec<Token>,
    token_index: HashMap<String, TokenId>,
    reverse: Vec<Option<TokenId>>,
    outgoing: Vec<Vec<(TokenId, StateId)>>,
}

impl TokenSystem {
    pub fn new<S: Into<String>>(states: impl IntoIterator<Item = S>, tokens: Vec<TokenSpec>) -> Result<Self> {
        Self::build(states.into_iter().map(Into::into).collect(), tokens, None)
    }

    /// Like [`TokenSystem::new`], additionally checking an explicit reverse
    /// pairing against the one computed from the token actions.
    pub fn with_reverses<S: Into<String>>(
        states: impl IntoIterator<Item = S>,
        tokens: Vec<TokenSpec>,
        reverses: &BTreeMap<String, String>,
    ) -> Result<Self> {
        Self::build(states.into_iter().map(Into::into).collect(), tokens, Some(reverses))
    }

    fn build(
        mut states: Vec<String>,
        specs: Vec<TokenSpec>,
        reverses: Option<&BTreeMap<String, String>>,
    ) -> Result<Self> {
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::input(format!("states[{i}]"), "state names must be nonempty"));
            }
        }
        states.sort();
        if let Some(w) = states.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input("states", format!("duplicate state `{}`", w[0])));
        }
        if states.len() < 2 {
            return Err(Error::input("states", "a token system needs at least two states"));
        }
        if specs.is_empty() {
            return Err(Error::input("tokens", "a token system needs at least one token"));
        }
        let state_index: HashMap<String, StateId> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), StateId(i)))
            .collect();

        let mut specs = specs;
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut tokens = Vec::with_capacity(specs.len());
        for (i, spec) in specs.iter().enumerate() {
            let field = format!("tokens[{}]", spec.id);
            if spec.id.is_empty() {
                return Err(Error::input(format!("tokens[{i}].id"), "token ids must be nonempty"));
            }
            if i > 0 && specs[i - 1].id == spec.id {
                return Err(Error::input("tokens", format!("duplicate token id `{}`", spec.id)));
            }
            let mut moves = BTreeMap::new();
            for (j, (a, b)) in spec.moves.iter().enumerate() {
                let lookup = |name: &String| {
                    state_index
                        .get(name)
                        .copied()
                        .ok_or_else(|| Error::input(format!("{field}.moves[{j}]"), format!("unknown state `{name}`")))
                };
                let (sa, sb) = (lookup(a)?, lookup(b)?);
                if sa == sb {
                    return Err(Error::input(
                        format!("{field}.moves[{j}]"),
                        "a moved pair must change the state; fixed points are implicit",
                    ));
                }
                if moves.insert(sa, sb).is_some() {
                    return Err(Error::input(
                        format!("{field}.moves"),
                        format!("state `{a}` appears twice as a source"),
                    ));
                }
            }
            if moves.is_empty() {
                return Err(Error::input(format!("{field}.moves"), "the identity is not a token"));
            }
            tokens.push(Token {
                id: spec.id.clone(),
                moves,
            });
        }
        let token_index: HashMap<String, TokenId> = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.id.clone(), TokenId(i)))
            .collect();

        // Tokens are functions: two ids with the same action would be the
        // same token, and would give some token two reverses.
        let mut by_action: HashMap<Vec<(StateId, StateId)>, TokenId> = HashMap::new();
        for (i, t) in tokens.iter().enumerate() {
            let action: Vec<_> = t.moves().collect();
            if let Some(prev) = by_action.insert(action, TokenId(i)) {
                return Err(Error::Malformed(format!(
                    "tokens `{}` and `{}` have identical actions",
                    tokens[prev.0].id, t.id
                )));
            }
        }
        let reverse: Vec<Option<TokenId>> = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| by_action.get(&t.reversed_moves()).copied().filter(|r| r.0 != i))
            .collect();

        let mut outgoing = vec![Vec::new(); states.len()];
        for (i, t) in tokens.iter().enumerate() {
            for (a, b) in t.moves() {
                outgoing[a.0].push((TokenId(i), b));
            }
        }

        let system = TokenSystem {
            states,
            state_index,
            tokens,
            token_index,
            reverse,
            outgoing,
        };
        if let Some(given) = reverses {
            system.validate_reverses(given)?;
        }
        Ok(system)
    }

    fn validate_reverses(&self, given: &BTreeMap<String, String>) -> Result<()> {
        for (a, b) in given {
            let field = format!("reverses.{a}");
            let ta = self
                .token_index
                .get(a)
                .ok_or_else(|| Error::input(&field, format!("unknown token `{a}`")))?;
            let tb = self
                .token_index
                .get(b)
                .ok_or_else(|| Error::input(&field, format!("unknown token `{b}`")))?;
            if ta == tb {
                return Err(Error::input(&field, "a token cannot be its own reverse"));
            }
            if let Some(back) = given.get(b) {
                if back != a {
                    return Err(Error::input(
                        &field,
                        format!("pairing is not an involution: `{b}` maps to `{back}`"),
                    ));
                }
            }
            if self.reverse[ta.0] != Some(*tb) {
                return Err(Error::input(
                    &field,
                    format!("`{b}` does not undo `{a}` on every adjacent pair"),
                ));
            }
        }
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_tokens(&self) -> usize {
        self.tokens.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn token_ids(&self) -> impl Iterator<Item = TokenId> {
        (0..self.tokens.len()).map(TokenId)
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.0]
    }

    pub fn token_name(&self, t: TokenId) -> &str {
        &self.tokens[t.0].id
    }

    pub fn token(&self, t: TokenId) -> &Token {
        &self.tokens[t.0]
    }

    pub fn state_id(&self, name: &str) -> Result<StateId> {
        self.state_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn token_id(&self, name: &str) -> Result<TokenId> {
        self.token_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownToken(name.to_string()))
    }

    /// Resolves a message given by token names.
    pub fn message<S: AsRef<str>>(&self, names: &[S]) -> Result<Message> {
        let ids = names
            .iter()
            .map(|n| self.token_id(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Message::new(ids)
    }

    pub fn token_names(&self, tokens: &[TokenId]) -> Vec<String> {
        tokens.iter().map(|&t| self.token_name(t).to_string()).collect()
    }

    /// Moves out of `s` as `(token, target)` pairs, in token order.
    pub fn outgoing(&self, s: StateId) -> &[(TokenId, StateId)] {
        &self.outgoing[s.0]
    }

    /// The cached reverse of `t`, if it has one.
    pub fn reverse(&self, t: TokenId) -> Option<TokenId> {
        self.reverse[t.0]
    }

    pub fn has_reverse_pairing(&self) -> bool {
        self.reverse.iter().all(Option::is_some)
    }

    /// The image of `s` under a single token.
    pub fn step(&self, s: StateId, t: TokenId) -> StateId {
        self.tokens[t.0].act(s)
    }

    pub(crate) fn run(&self, s: StateId, tokens: &[TokenId]) -> StateId {
        tokens.iter().fold(s, |cur, &t| self.step(cur, t))
    }

    fn check_state(&self, s: StateId) -> Result<()> {
        if s.0 < self.states.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(s.to_string()))
        }
    }

    fn check_tokens(&self, tokens: &[TokenId]) -> Result<()> {
        match tokens.iter().find(|t| t.0 >= self.tokens.len()) {
            Some(t) => Err(Error::UnknownToken(t.to_string())),
            None => Ok(()),
        }
    }

    /// Applies `m` to `s`, composing left to right.
    pub fn apply(&self, s: StateId, m: &Message) -> Result<StateId> {
        self.check_state(s)?;
        self.check_tokens(m.tokens())?;
        Ok(self.run(s, m.tokens()))
    }

    /// Finds the reverse of `t` by checking `S t = V <=> V u = S` for every
    /// candidate `u` over every pair of adjacent states.
    ///
    /// This recomputes from scratch what [`TokenSystem::reverse`] caches.
    pub fn reverse_of(&self, t: TokenId) -> Result<Option<TokenId>> {
        self.check_tokens(&[t])?;
        let mut adjacent = BTreeSet::new();
        for tok in &self.tokens {
            for (a, b) in tok.moves() {
                adjacent.insert((a, b));
                adjacent.insert((b, a));
            }
        }
        let tok = &self.tokens[t.0];
        let mut found = None;
        for (j, cand) in self.tokens.iter().enumerate() {
            if j == t.0 {
                continue;
            }
            let undoes = adjacent.iter().all(|&(s, v)| (tok.act(s) == v) == (cand.act(v) == s));
            if undoes {
                if let Some(prev) = found {
                    return Err(Error::Malformed(format!(
                        "token `{}` has two reverses: `{}` and `{}`",
                        tok.id,
                        self.token_name(prev),
                        cand.id
                    )));
                }
                found = Some(TokenId(j));
            }
        }
        Ok(found)
    }

    pub fn message_stats(&self, s: StateId, m: &Message) -> Result<MessageStats> {
        self.check_state(s)?;
        self.check_tokens(m.tokens())?;
        Ok(self.stats_of(s, m.tokens()))
    }

    pub(crate) fn stats_of(&self, s: StateId, tokens: &[TokenId]) -> MessageStats {
        let mut cur = s;
        let mut stepwise_effective = true;
        for &t in tokens {
            let next = self.step(cur, t);
            if next == cur {
                stepwise_effective = false;
            }
            cur = next;
        }
        let content: BTreeSet<TokenId> = tokens.iter().copied().collect();
        let consistent = content
            .iter()
            .all(|&t| self.reverse(t).is_none_or(|r| !content.contains(&r)));
        let repeated = content.len() < tokens.len();
        MessageStats {
            end: cur,
            effective: cur != s,
            stepwise_effective,
            consistent,
            concise: consistent && stepwise_effective && !repeated,
            vacuous: self.is_vacuous(tokens),
            is_return: stepwise_effective && cur == s,
            content,
            length: tokens.len(),
        }
    }

    /// True when the positions of `tokens` split into pairs of mutual
    /// reverses. Since the pairing is an involution, this is a count balance.
    pub(crate) fn is_vacuous(&self, tokens: &[TokenId]) -> bool {
        let mut count: HashMap<TokenId, i64> = HashMap::new();
        for &t in tokens {
            match self.reverse(t) {
                None => return false,
                Some(r) => {
                    let key = t.min(r);
                    *count.entry(key).or_default() += if t == key { 1 } else { -1 };
                }
            }
        }
        count.values().all(|&c| c == 0)
    }

    pub(crate) fn is_concise_from(&self, s: StateId, tokens: &[TokenId]) -> bool {
        !tokens.is_empty() && self.stats_of(s, tokens).concise
    }

    /// The reverse message `t̃n … t̃1`.
    pub fn reverse_message(&self, m: &Message) -> Result<Message> {
        self.check_tokens(m.tokens())?;
        m.tokens()
            .iter()
            .rev()
            .map(|&t| {
                self.reverse(t)
                    .ok_or_else(|| Error::Malformed(format!("token `{}` has no reverse", self.token_name(t))))
            })
            .collect::<Result<Vec<_>>>()
            .map(Message)
    }

    /// Token set and state set as named data; used by the JSON writer and
    /// by tests that rebuild mutated systems.
    pub fn to_specs(&self) -> Vec<TokenSpec> {
        self.tokens
            .iter()
            .map(|t| TokenSpec {
                id: t.id.clone(),
                moves: t
                    .moves()
                    .map(|(a, b)| (self.states[a.0].clone(), self.states[b.0].clone()))
                    .collect(),
            })
            .collect()
    }

    /// The cached pairing as names, each pair listed in both directions.
    pub fn reverse_names(&self) -> BTreeMap<String, String> {
        self.token_ids()
            .filter_map(|t| {
                self.reverse(t)
                    .map(|r| (self.token_name(t).to_string(), self.token_name(r).to_string()))
            })
            .collect()
    }
}
