//! Bounded exhaustive axiom check.
//!
//! Explores stepwise effective messages of length at most `max_len` from
//! every state. Messages are grouped by what their extensions can still do
//! (current state plus net signature, or current state plus tokens used), so
//! each group is expanded once through its shortest member.

use std::collections::{HashMap, VecDeque};

use super::axioms::{m1, search_m4, unreached_within, AxiomCheck, M3Witness, Namer, Walk};
use super::search::{incoming, Mode, Signature};
use super::MediumReport;
use crate::error::{Error, Result};
use crate::limits::{Limits, Meter};
use crate::token::{StateId, TokenId, TokenSystem};

/// Default bound: `min(2 |states|, 12)`.
pub fn default_max_len(sys: &TokenSystem) -> usize {
    (2 * sys.num_states()).min(12)
}

/// State, net signature, parent link and length.
type Node = (StateId, Vec<i32>, Option<(usize, TokenId)>, usize);

struct Found {
    nonvacuous_return: Option<Walk>,
    vacuous_effective: Option<Walk>,
}

/// Returns of nonzero signature and effective messages of zero signature.
fn returns(sys: &TokenSystem, max_len: usize, meter: &mut Meter) -> Result<Found> {
    let sig = Signature::new(sys);
    let names = Namer(sys);
    let mut found = Found {
        nonvacuous_return: None,
        vacuous_effective: None,
    };
    for s in sys.states() {
        let mut nodes: Vec<Node> = vec![(s, vec![0; sig.dims], None, 0)];
        let mut index: HashMap<(StateId, Vec<i32>), usize> = HashMap::new();
        index.insert((s, vec![0; sig.dims]), 0);
        let mut queue = VecDeque::from([0usize]);
        let walk_to = |nodes: &[Node], mut i: usize| {
            let mut ts = Vec::new();
            while let Some((p, t)) = nodes[i].2 {
                ts.push(t);
                i = p;
            }
            ts.reverse();
            ts
        };
        while let Some(i) = queue.pop_front() {
            if nodes[i].3 >= max_len {
                continue;
            }
            let here = nodes[i].0;
            for &(t, v) in sys.outgoing(here) {
                let (c, w) = sig.of(t);
                let mut net = nodes[i].1.clone();
                net[c] += w;
                let zero = net.iter().all(|&x| x == 0);
                if v == s && !zero && found.nonvacuous_return.is_none() {
                    let mut ts = walk_to(&nodes, i);
                    ts.push(t);
                    found.nonvacuous_return = Some(names.walk(s, &ts));
                }
                if v != s && zero && found.vacuous_effective.is_none() {
                    let mut ts = walk_to(&nodes, i);
                    ts.push(t);
                    found.vacuous_effective = Some(names.walk(s, &ts));
                }
                let key = (v, net);
                if index.contains_key(&key) {
                    continue;
                }
                meter.tick("enumerating bounded messages")?;
                let j = nodes.len();
                nodes.push((v, key.1.clone(), Some((i, t)), nodes[i].3 + 1));
                index.insert(key, j);
                queue.push_back(j);
            }
        }
        if found.nonvacuous_return.is_some() {
            break;
        }
    }
    Ok(found)
}

/// Checks every axiom over messages of length at most `max_len`.
///
/// Agrees with [`super::check_medium`] once `max_len >= 2 |states|`.
pub fn check_axioms_bounded(sys: &TokenSystem, max_len: usize, limits: &Limits) -> Result<MediumReport> {
    if max_len < 2 {
        return Err(Error::input("maxLen", "must be at least 2"));
    }
    let mut meter = Meter::new(limits.max_enum);
    let inc = incoming(sys);
    let found = returns(sys, max_len, &mut meter)?;
    let mb = AxiomCheck::from_witness(found.nonvacuous_return.clone());
    let m3 = AxiomCheck::from_witness(
        found
            .nonvacuous_return
            .map(|walk| M3Witness {
                walk,
                effective: false,
                vacuous: false,
            })
            .or(found.vacuous_effective.map(|walk| M3Witness {
                walk,
                effective: true,
                vacuous: true,
            })),
    );
    let ma = AxiomCheck::from_witness(unreached_within(sys, &inc, Mode::Concise, Some(max_len), &mut meter)?);
    let m2 = AxiomCheck::from_witness(unreached_within(
        sys,
        &inc,
        Mode::Consistent,
        Some(max_len),
        &mut meter,
    )?);
    let m4 = AxiomCheck::from_witness(search_m4(sys, &inc, Some(max_len), &mut meter)?);
    Ok(MediumReport {
        is_medium: ma.holds && mb.holds,
        axiom_ma: ma,
        axiom_mb: mb,
        m1: m1(sys),
        m2,
        m3,
        m4,
        failed_step: None,
        failure: None,
        max_len: Some(max_len),
    })
}
