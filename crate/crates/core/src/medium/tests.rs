use super::*;
use crate::convert::graph_to_medium;
use crate::fixtures;
use crate::token::TokenSpec;

fn limits() -> Limits {
    Limits::default()
}

fn q3() -> Medium {
    Medium::new(fixtures::hypercube_medium(3)).unwrap()
}

fn c6() -> Medium {
    Medium::new(graph_to_medium(&fixtures::cycle(6)).unwrap()).unwrap()
}

fn msg(m: &TokenSystem, names: &[&str]) -> Message {
    m.message(names).unwrap()
}

/// Every stepwise effective token sequence of length `1..=max_len` from `s`,
/// by plain depth-first enumeration.
fn raw_messages(sys: &TokenSystem, s: StateId, max_len: usize) -> Vec<Vec<TokenId>> {
    fn go(sys: &TokenSystem, cur: StateId, max_len: usize, prefix: &mut Vec<TokenId>, out: &mut Vec<Vec<TokenId>>) {
        if prefix.len() == max_len {
            return;
        }
        for &(t, v) in sys.outgoing(cur) {
            prefix.push(t);
            out.push(prefix.clone());
            go(sys, v, max_len, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(sys, s, max_len, &mut Vec::new(), &mut out);
    out
}

/// Ma and Mb evaluated over raw sequences.
fn raw_axioms(sys: &TokenSystem, max_len: usize) -> (bool, bool) {
    let mut ma = true;
    let mut mb = true;
    for s in sys.states() {
        let mut reached = vec![false; sys.num_states()];
        for m in raw_messages(sys, s, max_len) {
            let stats = sys.stats_of(s, &m);
            if stats.concise {
                reached[stats.end.0] = true;
            }
            if stats.is_return && !stats.vacuous {
                mb = false;
            }
        }
        ma &= sys.states().all(|v| v == s || reached[v.0]);
    }
    (ma, mb)
}

/// Union of the contents of all concise messages producing `s`.
fn content_oracle(sys: &TokenSystem, s: StateId) -> BTreeSet<TokenId> {
    let mut out = BTreeSet::new();
    for start in sys.states() {
        for m in raw_messages(sys, start, sys.num_states()) {
            let stats = sys.stats_of(start, &m);
            if stats.concise && stats.end == s {
                out.extend(stats.content);
            }
        }
    }
    out
}

#[test]
fn q3_is_a_medium() {
    let sys = fixtures::hypercube_medium(3);
    let r = check_medium(&sys, &limits()).unwrap();
    assert!(r.is_medium && r.axiom_ma.holds && r.axiom_mb.holds);
    assert!(r.m1.holds && r.m2.holds && r.m3.holds && r.m4.holds);
    assert_eq!(r.failed_step, None);
    assert_eq!(raw_axioms(&sys, 8), (true, true));
}

#[test]
fn q3_without_remove1() {
    let sys = fixtures::hypercube_medium(3);
    let specs: Vec<TokenSpec> = sys.to_specs().into_iter().filter(|s| s.id != "remove1").collect();
    let cut = TokenSystem::new(sys.state_names().to_vec(), specs).unwrap();
    let r = check_medium(&cut, &limits()).unwrap();
    assert!(!r.is_medium);
    assert_eq!(r.failed_step, Some(1));
    assert_eq!(r.m1.witness.as_deref(), Some("add1"));
    assert!(!r.axiom_ma.holds);
    assert!(matches!(Medium::new(cut), Err(Error::NotAMedium(_))));
}

#[test]
fn c6_token_on_part_of_its_class() {
    let base = graph_to_medium(&fixtures::cycle(6)).unwrap();
    let mut specs = base.to_specs();
    // t0 moves 0->1 and 4->3; t? is its reverse. Split both move by move.
    let t0 = base.token_id("t0").unwrap();
    let r0 = base.reverse(t0).unwrap();
    let (fwd, back) = (specs[t0.0].clone(), specs[r0.0].clone());
    specs.retain(|s| s.id != fwd.id && s.id != back.id);
    for (k, (a, b)) in fwd.moves.iter().enumerate() {
        specs.push(TokenSpec::new(format!("x{k}"), [(a.clone(), b.clone())]));
        specs.push(TokenSpec::new(format!("y{k}"), [(b.clone(), a.clone())]));
    }
    let sys = TokenSystem::new(base.state_names().to_vec(), specs).unwrap();
    let r = check_medium(&sys, &limits()).unwrap();
    assert!(!r.is_medium);
    assert_eq!(r.failed_step, Some(4));
    assert!(r.m1.holds);
    // The six-step loop around the cycle is a return that is not vacuous.
    assert!(!r.axiom_mb.holds);
    let w = r.axiom_mb.witness.unwrap();
    let walk = sys.message(&w.tokens).unwrap();
    let start = sys.state_id(&w.start).unwrap();
    let stats = sys.message_stats(start, &walk).unwrap();
    assert!(stats.is_return && !stats.vacuous);
    assert!(!raw_axioms(&sys, 12).1);
}

#[test]
fn bounded_examples() {
    let c4 = graph_to_medium(&fixtures::cycle(4)).unwrap();
    let b = check_axioms_bounded(&c4, 8, &limits()).unwrap();
    assert!(b.is_medium);
    assert_eq!(b.is_medium, check_medium(&c4, &limits()).unwrap().is_medium);
    assert_eq!(raw_axioms(&c4, 8), (true, true));

    let k2 = graph_to_medium(&fixtures::path(2)).unwrap();
    assert!(check_axioms_bounded(&k2, 2, &limits()).unwrap().axiom_mb.holds);

    let q3 = fixtures::hypercube_medium(3);
    let b = check_axioms_bounded(&q3, 6, &limits()).unwrap();
    assert!(b.axiom_mb.holds);
    assert_eq!(b.max_len, Some(6));

    assert!(check_axioms_bounded(&q3, 1, &limits()).is_err());
    assert_eq!(default_max_len(&q3), 12);
    assert_eq!(default_max_len(&k2), 4);
}

#[test]
fn bounded_budget_is_reported() {
    let tight = Limits {
        max_enum: 10,
        ..Limits::default()
    };
    assert!(matches!(
        check_axioms_bounded(&fixtures::hypercube_medium(3), 16, &tight),
        Err(Error::Budget { .. })
    ));
}

#[test]
fn bounded_agrees_with_raw_enumeration_on_mutations() {
    for (name, sys) in fixtures::mutations() {
        if sys.num_states() > 6 {
            continue;
        }
        let len = 2 * sys.num_states();
        let b = check_axioms_bounded(&sys, len, &limits()).unwrap();
        let (ma, mb) = raw_axioms(&sys, len);
        assert_eq!((b.axiom_ma.holds, b.axiom_mb.holds), (ma, mb), "{name}");
    }
}

#[test]
fn all_verdicts_agree_on_mutations() {
    for (name, sys) in fixtures::mutations() {
        let r = check_medium(&sys, &limits()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!r.is_medium, "{name}");
        let b = check_axioms_bounded(&sys, 2 * sys.num_states(), &limits()).unwrap();
        assert_eq!(b.is_medium, r.is_medium, "{name}");
        assert!(!(b.m1.holds && b.m2.holds && b.m3.holds && b.m4.holds), "{name}");
    }
}

#[test]
fn contents() {
    let m = q3();
    let empty = m.state_id("{}").unwrap();
    let full = m.state_id("{1,2,3}").unwrap();
    let names = |c: &Content| m.token_names(&c.tokens.iter().copied().collect::<Vec<_>>());
    assert_eq!(
        names(&state_content(&m, empty).unwrap()),
        vec!["remove1", "remove2", "remove3"]
    );
    assert_eq!(names(&state_content(&m, full).unwrap()), vec!["add1", "add2", "add3"]);
    for s in m.states() {
        assert_eq!(state_content(&m, s).unwrap().tokens, content_oracle(&m, s));
    }

    let k2 = Medium::new(graph_to_medium(&fixtures::path(2)).unwrap()).unwrap();
    let c = state_content(&k2, StateId(0)).unwrap();
    let t = *c.tokens.iter().next().unwrap();
    assert_eq!(c.tokens.len(), 1);
    assert_eq!(k2.step(StateId(1), t), StateId(0));
    assert!(state_content(&k2, StateId(5)).is_err());
}

#[test]
fn circuit_examples() {
    let m = c6();
    for s in m.states() {
        let walk: Vec<usize> = (0..=6).map(|i| (s.0 + i) % 6).collect();
        let c = classify_circuit(&m, s, &m.lift_walk(&walk).unwrap()).unwrap();
        assert!(c.is_return && c.is_orderly && c.is_regular);
        assert_eq!(c.opposite_pairs, vec![(0, 3), (1, 4), (2, 5)]);
    }

    let q = q3();
    let empty = q.state_id("{}").unwrap();
    let square = msg(&q, &["add1", "add2", "remove1", "remove2"]);
    let c = classify_circuit(&q, empty, &square).unwrap();
    assert!(c.is_regular);
    assert_eq!(c.split_witness, Some(2));

    let c = classify_circuit(&q, empty, &msg(&q, &["add1", "remove1"])).unwrap();
    assert!(c.is_return && !c.is_orderly && !c.is_regular);

    assert!(matches!(
        classify_circuit(&q, empty, &msg(&q, &["add1", "add1"])),
        Err(Error::Precondition(_))
    ));
}

fn q3_theta(q: &Medium, states: [&str; 4], tau: &str, mu: &str, legs: [&[&str]; 4]) -> ThetaConfig {
    let s = |n: &str| q.state_id(n).unwrap();
    ThetaConfig {
        origin: s(states[0]),
        neighbor: s(states[1]),
        meet: s(states[2]),
        far: s(states[3]),
        into_origin: q.token_id(tau).unwrap(),
        into_meet: q.token_id(mu).unwrap(),
        origin_to_meet: msg(q, legs[0]),
        neighbor_to_meet: msg(q, legs[1]),
        neighbor_to_far: msg(q, legs[2]),
        origin_to_far: msg(q, legs[3]),
    }
}

#[test]
fn theta_all_true() {
    let q = q3();
    let cfg = q3_theta(
        &q,
        ["{}", "{1}", "{2,3}", "{1,2,3}"],
        "remove1",
        "remove1",
        [
            &["add2", "add3"],
            &["remove1", "add2", "add3"],
            &["add2", "add3"],
            &["add1", "add2", "add3"],
        ],
    );
    let out = check_theta(&q, &cfg).unwrap();
    assert!(out.cond_i && out.cond_ii && out.cond_iii && out.cond_iv);
    let circuit = out.orderly_witness.unwrap();
    assert!(classify_circuit(&q, cfg.origin, &circuit).unwrap().is_orderly);
}

#[test]
fn theta_converse_fails() {
    // q = a t~, w = m~ a, q' = a, w' = a t~ m~ with t = add_t, m = add_m.
    let q = q3();
    let cfg = q3_theta(
        &q,
        ["{1,2}", "{1}", "{1,3}", "{3}"],
        "add2",
        "add1",
        [
            &["add3", "remove2"],
            &["add3"],
            &["remove1", "add3"],
            &["add3", "remove2", "remove1"],
        ],
    );
    let out = check_theta(&q, &cfg).unwrap();
    assert!(!(out.cond_i || out.cond_ii || out.cond_iii || out.cond_iv));
    assert!(out.orderly_witness.is_none());
    // The circuit q m~ w~ t is still orderly.
    let circuit = msg(&q, &["add3", "remove2", "remove1", "remove3", "add1", "add2"]);
    let c = classify_circuit(&q, cfg.origin, &circuit).unwrap();
    assert!(c.is_return && c.is_orderly);
}

#[test]
fn theta_rejects_bad_hypotheses() {
    let q = q3();
    let mut cfg = q3_theta(
        &q,
        ["{}", "{1}", "{2,3}", "{1,2,3}"],
        "remove1",
        "remove1",
        [
            &["add2", "add3"],
            &["remove1", "add2", "add3"],
            &["add2", "add3"],
            &["add1", "add2", "add3"],
        ],
    );
    cfg.neighbor = cfg.origin;
    assert!(matches!(check_theta(&q, &cfg), Err(Error::Precondition(_))));
}

#[test]
fn opposite_examples() {
    let q = q3();
    let empty = q.state_id("{}").unwrap();
    let out = check_opposite(&q, empty, &msg(&q, &["add1", "add2", "remove1", "remove2"])).unwrap();
    assert!(out.opposite_mutual_reverses && out.regular && out.all_rotations_orderly);

    let m = c6();
    let full = m.lift_walk(&[2, 3, 4, 5, 0, 1, 2]).unwrap();
    let out = check_opposite(&m, StateId(2), &full).unwrap();
    assert!(out.opposite_mutual_reverses && out.regular && out.all_rotations_orderly);

    // Orderly but not regular: from {3}, +1 +2 -3 -2 -1 +3.
    let s = q.state_id("{3}").unwrap();
    let odd = msg(&q, &["add1", "add2", "remove3", "remove2", "remove1", "add3"]);
    assert!(classify_circuit(&q, s, &odd).unwrap().is_orderly);
    let out = check_opposite(&q, s, &odd).unwrap();
    assert!(!(out.opposite_mutual_reverses || out.regular || out.all_rotations_orderly));

    assert!(matches!(
        check_opposite(&q, empty, &msg(&q, &["add1", "remove1"])),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn one_token_per_adjacent_pair() {
    for (name, sys) in fixtures::media() {
        let m = Medium::new(sys).unwrap();
        for s in m.states() {
            for v in m.states() {
                let count = m.token_ids().filter(|&t| s != v && m.step(s, t) == v).count();
                let adjacent = m.graph().has_edge(s.0, v.0);
                assert_eq!(count, usize::from(adjacent), "{name}");
            }
        }
        // No token is one-to-one as a total map.
        for t in m.token_ids() {
            let images: BTreeSet<StateId> = m.states().map(|s| m.step(s, t)).collect();
            assert!(images.len() < m.num_states(), "{name}");
        }
    }
}
