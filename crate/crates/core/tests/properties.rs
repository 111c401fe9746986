//! Invariants over seeded random partial cubes and random messages.

use media_core::fixtures::random_partial_cube;
use media_core::graph::like_related;
use media_core::{concise_message, graph_to_medium, medium_to_graph, state_content, Medium, Message, StateId, TokenId};
use proptest::prelude::*;

fn medium(seed: u64) -> Medium {
    Medium::new(graph_to_medium(&random_partial_cube(seed)).unwrap()).unwrap()
}

fn message(m: &Medium, picks: &[usize]) -> Message {
    Message::new(picks.iter().map(|&p| TokenId(p % m.num_tokens())).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reverse_is_an_involution(seed in 0u64..1000) {
        let m = medium(seed);
        for t in m.token_ids() {
            let r = m.reverse(t).unwrap();
            prop_assert_ne!(r, t);
            prop_assert_eq!(m.reverse(r), Some(t));
            prop_assert_eq!(m.reverse_of(t).unwrap(), Some(r));
        }
    }

    #[test]
    fn application_respects_concatenation(seed in 0u64..1000, a in prop::collection::vec(0usize..64, 1..6), b in prop::collection::vec(0usize..64, 1..6), s in 0usize..64) {
        let m = medium(seed);
        let (x, y) = (message(&m, &a), message(&m, &b));
        let s = StateId(s % m.num_states());
        let mid = m.apply(s, &x).unwrap();
        prop_assert_eq!(m.apply(s, &x.concat(&y)).unwrap(), m.apply(mid, &y).unwrap());
    }

    #[test]
    fn content_halves_the_tokens(seed in 0u64..1000) {
        let m = medium(seed);
        for s in m.states() {
            prop_assert_eq!(state_content(&m, s).unwrap().tokens.len() * 2, m.num_tokens());
        }
    }

    #[test]
    fn concise_messages_reverse_to_concise_messages(seed in 0u64..1000, i in 0usize..64, j in 0usize..64) {
        let m = medium(seed);
        let (s, t) = (StateId(i % m.num_states()), StateId(j % m.num_states()));
        prop_assume!(s != t);
        let fwd = concise_message(&m, s, t).unwrap();
        prop_assert_eq!(fwd.len(), m.distance(s, t));
        let back = m.reverse_message(&fwd).unwrap();
        let stats = m.message_stats(t, &back).unwrap();
        prop_assert!(stats.concise);
        prop_assert_eq!(m.apply(t, &back).unwrap(), s);
    }

    #[test]
    fn like_is_symmetric(seed in 0u64..1000) {
        let g = random_partial_cube(seed);
        let arcs = g.arcs();
        for &a in &arcs {
            for &b in &arcs {
                prop_assert_eq!(like_related(&g, a, b).unwrap(), like_related(&g, b, a).unwrap());
            }
        }
    }

    #[test]
    fn induced_medium_gives_back_the_graph(seed in 0u64..1000) {
        let g = random_partial_cube(seed);
        prop_assert_eq!(medium_to_graph(&medium(seed)), g);
    }
}
