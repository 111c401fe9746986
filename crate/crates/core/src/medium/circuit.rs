//! Returns, orderly and regular circuits, and the theta and opposite-token checks.

use serde::Serialize;

use super::Medium;
use crate::error::{Error, Result};
use crate::token::{Message, StateId, TokenId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CircuitClassification {
    pub is_return: bool,
    pub is_orderly: bool,
    pub is_regular: bool,
    /// Smallest `k` such that `m = q ñ` with `q = m[..k]` and `n` distinct
    /// concise messages producing the same state.
    pub split_witness: Option<usize>,
    /// `(i, i + n)` for a message of even length `2n`.
    pub opposite_pairs: Vec<(usize, usize)>,
}

fn reversed(m: &Medium, tokens: &[TokenId]) -> Vec<TokenId> {
    tokens
        .iter()
        .rev()
        .map(|&t| m.reverse(t).expect("media pair every token"))
        .collect()
}

fn orderly_split(m: &Medium, s: StateId, tokens: &[TokenId]) -> Option<usize> {
    (1..tokens.len()).find(|&k| {
        let q = &tokens[..k];
        let n = reversed(m, &tokens[k..]);
        let v = m.run(s, q);
        v != s && q != n.as_slice() && m.is_concise_from(s, q) && m.is_concise_from(s, &n) && m.run(s, &n) == v
    })
}

fn is_regular_from(m: &Medium, s: StateId, tokens: &[TokenId]) -> bool {
    let len = tokens.len();
    if !len.is_multiple_of(2) {
        return false;
    }
    let half = len / 2;
    let doubled: Vec<TokenId> = tokens.iter().chain(tokens).copied().collect();
    (0..len).all(|i| {
        let start = m.run(s, &tokens[..i]);
        m.is_concise_from(start, &doubled[i..i + half])
    })
}

/// Classifies a stepwise effective message `tokens` for `s`.
pub fn classify_circuit(m: &Medium, s: StateId, msg: &Message) -> Result<CircuitClassification> {
    let stats = m.message_stats(s, msg)?;
    if !stats.stepwise_effective {
        return Err(Error::Precondition(
            "message is not stepwise effective for the state".into(),
        ));
    }
    let tokens = msg.tokens();
    let split_witness = if stats.is_return {
        orderly_split(m, s, tokens)
    } else {
        None
    };
    let is_orderly = split_witness.is_some();
    let is_regular = is_orderly && is_regular_from(m, s, tokens);
    let opposite_pairs = if tokens.len().is_multiple_of(2) {
        let half = tokens.len() / 2;
        (0..half).map(|i| (i, i + half)).collect()
    } else {
        Vec::new()
    };
    Ok(CircuitClassification {
        is_return: stats.is_return,
        is_orderly,
        is_regular,
        split_witness,
        opposite_pairs,
    })
}

/// Two concise pairs of messages around a square `N -> S`, `W -> Q`:
/// `origin_to_meet: S -> Q`, `neighbor_to_meet: N -> Q`,
/// `neighbor_to_far: N -> W`, `origin_to_far: S -> W`.
#[derive(Clone, Debug)]
pub struct ThetaConfig {
    pub origin: StateId,
    pub neighbor: StateId,
    pub meet: StateId,
    pub far: StateId,
    /// Produces `origin` from `neighbor`.
    pub into_origin: TokenId,
    /// Produces `meet` from `far`.
    pub into_meet: TokenId,
    pub origin_to_meet: Message,
    pub neighbor_to_meet: Message,
    pub neighbor_to_far: Message,
    pub origin_to_far: Message,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOutcome {
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub cond_iv: bool,
    /// The orderly circuit `q μ̃ w̃ τ` for the origin, when the conditions hold.
    pub orderly_witness: Option<Message>,
}

fn validate_theta(m: &Medium, c: &ThetaConfig) -> Result<()> {
    let states = [c.origin, c.neighbor, c.meet, c.far];
    for (i, a) in states.iter().enumerate() {
        if a.0 >= m.num_states() {
            return Err(Error::UnknownState(a.to_string()));
        }
        if states[i + 1..].contains(a) {
            return Err(Error::Precondition("the four states must be distinct".into()));
        }
    }
    for t in [c.into_origin, c.into_meet] {
        if t.0 >= m.num_tokens() {
            return Err(Error::UnknownToken(t.to_string()));
        }
    }
    if m.step(c.neighbor, c.into_origin) != c.origin {
        return Err(Error::Precondition(
            "into_origin does not produce origin from neighbor".into(),
        ));
    }
    if m.step(c.far, c.into_meet) != c.meet {
        return Err(Error::Precondition("into_meet does not produce meet from far".into()));
    }
    let legs = [
        ("origin_to_meet", c.origin, &c.origin_to_meet, c.meet),
        ("neighbor_to_meet", c.neighbor, &c.neighbor_to_meet, c.meet),
        ("neighbor_to_far", c.neighbor, &c.neighbor_to_far, c.far),
        ("origin_to_far", c.origin, &c.origin_to_far, c.far),
    ];
    for (name, from, msg, to) in legs {
        let stats = m.message_stats(from, msg)?;
        if stats.end != to {
            return Err(Error::Precondition(format!("{name} does not reach its target")));
        }
        if !stats.concise {
            return Err(Error::Precondition(format!("{name} is not concise")));
        }
    }
    Ok(())
}

/// Evaluates the four equivalent conditions on a validated configuration.
pub fn check_theta(m: &Medium, c: &ThetaConfig) -> Result<ThetaOutcome> {
    validate_theta(m, c)?;
    let (lq, lw) = (c.origin_to_meet.len(), c.neighbor_to_far.len());
    let (lq2, lw2) = (c.neighbor_to_meet.len(), c.origin_to_far.len());
    let rev_tau = m.reverse(c.into_origin).expect("media pair every token");
    let cond_i = lq + lw != lq2 + lw2 && c.into_meet != rev_tau;
    let cond_ii = c.into_origin == c.into_meet;
    let cond_iii = c.origin_to_meet.content() == c.neighbor_to_far.content() && lq == lw;
    let cond_iv = lq + lw + 2 == lq2 + lw2;
    if !(cond_i == cond_ii && cond_ii == cond_iii && cond_iii == cond_iv) {
        return Err(Error::Internal(format!(
            "conditions disagree: ({cond_i}, {cond_ii}, {cond_iii}, {cond_iv})"
        )));
    }
    let orderly_witness = if cond_i {
        let rev_mu = m.reverse(c.into_meet).expect("media pair every token");
        let mut tokens = c.origin_to_meet.tokens().to_vec();
        tokens.push(rev_mu);
        if m.run(c.origin, &tokens) != c.far {
            return Err(Error::Internal("q μ̃ does not produce the far state".into()));
        }
        tokens.extend(reversed(m, c.neighbor_to_far.tokens()));
        tokens.push(c.into_origin);
        let circuit = Message::new(tokens)?;
        if !classify_circuit(m, c.origin, &circuit)?.is_orderly {
            return Err(Error::Internal("theta circuit is not orderly".into()));
        }
        Some(circuit)
    } else {
        None
    };
    Ok(ThetaOutcome {
        cond_i,
        cond_ii,
        cond_iii,
        cond_iv,
        orderly_witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OppositeOutcome {
    pub opposite_mutual_reverses: bool,
    pub regular: bool,
    pub all_rotations_orderly: bool,
}

/// For an orderly return: opposite tokens are mutual reverses iff the
/// return is regular iff every rotation is an orderly return.
pub fn check_opposite(m: &Medium, s: StateId, msg: &Message) -> Result<OppositeOutcome> {
    let class = classify_circuit(m, s, msg)?;
    if !(class.is_return && class.is_orderly) {
        return Err(Error::Precondition("message is not an orderly return".into()));
    }
    let tokens = msg.tokens();
    let opposite_mutual_reverses = class
        .opposite_pairs
        .iter()
        .all(|&(i, j)| m.reverse(tokens[i]) == Some(tokens[j]));
    let mut all_rotations_orderly = true;
    for i in 1..tokens.len() {
        let start = m.run(s, &tokens[..i]);
        let rot = classify_circuit(m, start, &msg.rotate(i))?;
        if !(rot.is_return && rot.is_orderly) {
            all_rotations_orderly = false;
            break;
        }
    }
    let out = OppositeOutcome {
        opposite_mutual_reverses,
        regular: class.is_regular,
        all_rotations_orderly,
    };
    if out.opposite_mutual_reverses != out.regular || out.regular != out.all_rotations_orderly {
        return Err(Error::Internal(format!("opposite-token conditions disagree: {out:?}")));
    }
    Ok(out)
}
