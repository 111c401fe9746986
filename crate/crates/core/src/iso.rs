//! Graph and media isomorphisms.
//!
//! Graph isomorphism is a plain backtracking search, pruned by degree and by
//! sorted distance profiles, branching in vertex order so that the first
//! isomorphism found is the lexicographically smallest. Media isomorphisms
//! are lifted from graph isomorphisms token by token.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::{Limits, Meter};
use crate::medium::Medium;
use crate::token::{StateId, TokenId};

/// `phi[v]` is the image of vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphIso {
    pub phi: Vec<usize>,
}

impl GraphIso {
    pub fn names(&self, g: &Graph, h: &Graph) -> BTreeMap<String, String> {
        self.phi
            .iter()
            .enumerate()
            .map(|(v, &w)| (g.name(v).to_string(), h.name(w).to_string()))
            .collect()
    }

    /// True when `phi` is a bijection preserving adjacency both ways.
    pub fn is_valid(&self, g: &Graph, h: &Graph) -> bool {
        let n = g.num_vertices();
        if h.num_vertices() != n || self.phi.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &w in &self.phi {
            if w >= n || std::mem::replace(&mut hit[w], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| g.has_edge(a, b) == h.has_edge(self.phi[a], self.phi[b])))
    }
}

/// `alpha` on states, `beta` on tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MediaIso {
    pub alpha: Vec<StateId>,
    pub beta: Vec<TokenId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MediaIsoNames {
    pub alpha: BTreeMap<String, String>,
    pub beta: BTreeMap<String, String>,
}

impl MediaIso {
    pub fn names(&self, m: &Medium, m2: &Medium) -> MediaIsoNames {
        MediaIsoNames {
            alpha: m
                .states()
                .map(|s| (m.state_name(s).to_string(), m2.state_name(self.alpha[s.0]).to_string()))
                .collect(),
            beta: m
                .token_ids()
                .map(|t| (m.token_name(t).to_string(), m2.token_name(self.beta[t.0]).to_string()))
                .collect(),
        }
    }

    /// `S t = V <=> alpha(S) beta(t) = alpha(V)` for all `S`, `V`, `t`, with
    /// both maps bijective.
    pub fn is_valid(&self, m: &Medium, m2: &Medium) -> bool {
        if self.alpha.len() != m.num_states()
            || self.beta.len() != m.num_tokens()
            || m2.num_states() != m.num_states()
            || m2.num_tokens() != m.num_tokens()
        {
            return false;
        }
        let bijective = |v: Vec<usize>, n: usize| {
            let mut seen = vec![false; n];
            v.into_iter().all(|x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        if !bijective(self.alpha.iter().map(|s| s.0).collect(), m.num_states())
            || !bijective(self.beta.iter().map(|t| t.0).collect(), m.num_tokens())
        {
            return false;
        }
        m.states().all(|s| {
            m.token_ids()
                .all(|t| self.alpha[m.step(s, t).0] == m2.step(self.alpha[s.0], self.beta[t.0]))
        })
    }
}

fn profiles(g: &Graph) -> Vec<Vec<u32>> {
    let d = g.distances();
    (0..g.num_vertices())
        .map(|v| {
            let mut p: Vec<u32> = (0..g.num_vertices()).map(|w| d.get(v, w).unwrap_or(u32::MAX)).collect();
            p.sort_unstable();
            p
        })
        .collect()
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    pg: Vec<Vec<u32>>,
    ph: Vec<Vec<u32>>,
    phi: Vec<usize>,
    used: Vec<bool>,
    meter: Meter,
}

impl Search<'_> {
    fn extend(&mut self, v: usize) -> Result<bool> {
        if v == self.g.num_vertices() {
            return Ok(true);
        }
        let (dg, dh) = (self.g.distances(), self.h.distances());
        for w in 0..self.h.num_vertices() {
            if self.used[w] || self.pg[v] != self.ph[w] {
                continue;
            }
            if (0..v).any(|u| dg.get(u, v) != dh.get(self.phi[u], w)) {
                continue;
            }
            self.meter.tick("searching for a graph isomorphism")?;
            self.phi.push(w);
            self.used[w] = true;
            if self.extend(v + 1)? {
                return Ok(true);
            }
            self.used[w] = false;
            self.phi.pop();
        }
        Ok(false)
    }
}

/// The lexicographically smallest isomorphism from `g` to `h`, if any.
///
/// Graphs larger than `limits.iso_max_vertices` are refused with a budget
/// error.
pub fn find_graph_iso(g: &Graph, h: &Graph, limits: &Limits) -> Result<Option<GraphIso>> {
    let n = g.num_vertices();
    if n.max(h.num_vertices()) > limits.iso_max_vertices {
        return Err(Error::Budget {
            budget: limits.iso_max_vertices,
            context: format!("isomorphism search on {} vertices", n.max(h.num_vertices())),
        });
    }
    if n != h.num_vertices() || g.num_edges() != h.num_edges() {
        return Ok(None);
    }
    let (pg, ph) = (profiles(g), profiles(h));
    let (mut sg, mut sh) = (pg.clone(), ph.clone());
    sg.sort();
    sh.sort();
    if sg != sh {
        return Ok(None);
    }
    let mut search = Search {
        g,
        h,
        pg,
        ph,
        phi: Vec::with_capacity(n),
        used: vec![false; n],
        meter: Meter::new(limits.max_enum),
    };
    if !search.extend(0)? {
        return Ok(None);
    }
    let iso = GraphIso { phi: search.phi };
    if !iso.is_valid(g, h) {
        return Err(Error::Internal("graph isomorphism failed verification".into()));
    }
    Ok(Some(iso))
}

/// `beta(t)` is the token of `m2` moving `phi(S)` to `phi(T)` for any move
/// `S t = T`; every move of `t` is probed and must agree.
pub fn lift_to_media_iso(phi: &GraphIso, m: &Medium, m2: &Medium) -> Result<MediaIso> {
    if !phi.is_valid(m.graph(), m2.graph()) {
        return Err(Error::Precondition(
            "phi is not an isomorphism of the two media graphs".into(),
        ));
    }
    let mut beta = Vec::with_capacity(m.num_tokens());
    for t in m.token_ids() {
        let mut image = None;
        for (s, v) in m.token(t).moves() {
            let probe = m2
                .token_between(StateId(phi.phi[s.0]), StateId(phi.phi[v.0]))
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "no token of the second medium matches a move of `{}`",
                        m.token_name(t)
                    ))
                })?;
            if image.is_some_and(|i| i != probe) {
                return Err(Error::Internal(format!(
                    "moves of `{}` map to different tokens",
                    m.token_name(t)
                )));
            }
            image = Some(probe);
        }
        beta.push(image.expect("tokens move some state"));
    }
    let iso = MediaIso {
        alpha: phi.phi.iter().map(|&w| StateId(w)).collect(),
        beta,
    };
    if !iso.is_valid(m, m2) {
        return Err(Error::Internal("lifted media isomorphism failed verification".into()));
    }
    Ok(iso)
}

/// An isomorphism of media, present exactly when their graphs are isomorphic.
pub fn media_isomorphic(m: &Medium, m2: &Medium, limits: &Limits) -> Result<Option<MediaIso>> {
    match find_graph_iso(m.graph(), m2.graph(), limits)? {
        Some(phi) => lift_to_media_iso(&phi, m, m2).map(Some),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convert::graph_to_medium;
    use crate::fixtures;

    fn induced(g: &Graph) -> Medium {
        Medium::new(graph_to_medium(g).unwrap()).unwrap()
    }

    #[test]
    fn cycles_and_paths() {
        let c6 = fixtures::cycle(6);
        let relabeled = fixtures::renamed_graph(&c6, &["f", "a", "e", "b", "d", "c"]);
        let iso = find_graph_iso(&c6, &relabeled, &Limits::default()).unwrap().unwrap();
        assert!(iso.is_valid(&c6, &relabeled));
        assert!(find_graph_iso(&c6, &fixtures::path(6), &Limits::default())
            .unwrap()
            .is_none());
        assert!(
            find_graph_iso(&fixtures::hypercube(3), &fixtures::cycle(8), &Limits::default())
                .unwrap()
                .is_none()
        );
        // Degree-sequence oracle agrees that Q3 and C8 differ.
        let degs = |g: &Graph| {
            let mut d: Vec<usize> = (0..g.num_vertices()).map(|v| g.degree(v)).collect();
            d.sort();
            d
        };
        assert_ne!(degs(&fixtures::hypercube(3)), degs(&fixtures::cycle(8)));
    }

    #[test]
    fn lexicographically_smallest() {
        let c4 = fixtures::cycle(4);
        let iso = find_graph_iso(&c4, &c4, &Limits::default()).unwrap().unwrap();
        assert_eq!(iso.phi, vec![0, 1, 2, 3]);
    }

    #[test]
    fn size_cap() {
        let q4 = fixtures::hypercube(4);
        assert!(matches!(
            find_graph_iso(&q4, &q4, &Limits::default()),
            Err(Error::Budget { .. })
        ));
        let big = Limits {
            iso_max_vertices: 16,
            ..Limits::default()
        };
        assert!(find_graph_iso(&q4, &q4, &big).unwrap().is_some());
    }

    #[test]
    fn permuted_hypercube_medium() {
        let m = Medium::new(fixtures::hypercube_medium(3)).unwrap();
        // Element i becomes pi(i) with pi = (1 2 3) -> (2 3 1).
        let pi = |i: usize| [0, 2, 3, 1][i];
        let states: Vec<String> = m
            .state_names()
            .iter()
            .map(|n| fixtures::subset_name(&fixtures::parse_subset(n).into_iter().map(pi).collect()))
            .collect();
        let tokens: Vec<String> = m
            .token_ids()
            .map(|t| {
                let name = m.token_name(t);
                let (op, i) = name.split_at(name.len() - 1);
                format!("{op}{}", pi(i.parse().unwrap()))
            })
            .collect();
        let m2 = Medium::new(fixtures::renamed(&m, &states, &tokens).unwrap()).unwrap();
        assert!(media_isomorphic(&m, &m2, &Limits::default())
            .unwrap()
            .unwrap()
            .is_valid(&m, &m2));
        // Lift the relabeling itself.
        let phi = GraphIso {
            phi: states.iter().map(|n| m2.state_id(n).unwrap().0).collect(),
        };
        let iso = lift_to_media_iso(&phi, &m, &m2).unwrap();
        let names = iso.names(&m, &m2);
        for i in 1..=3 {
            for op in ["add", "remove"] {
                assert_eq!(names.beta[&format!("{op}{i}")], format!("{op}{}", pi(i)));
            }
        }
    }

    #[test]
    fn identity_lift() {
        let m = Medium::new(fixtures::hypercube_medium(3)).unwrap();
        let id = GraphIso {
            phi: (0..m.num_states()).collect(),
        };
        let iso = lift_to_media_iso(&id, &m, &m).unwrap();
        assert_eq!(iso.beta, m.token_ids().collect::<Vec<_>>());
    }

    #[test]
    fn rotated_c4() {
        let m = induced(&fixtures::cycle(4));
        let rot = GraphIso { phi: vec![1, 2, 3, 0] };
        let iso = lift_to_media_iso(&rot, &m, &m).unwrap();
        // Rotating twice more returns each token to itself after four steps.
        let mut t = TokenId(0);
        for _ in 0..4 {
            t = iso.beta[t.0];
        }
        assert_eq!(t, TokenId(0));
        assert!(iso.beta.iter().enumerate().all(|(i, b)| b.0 != i));
        assert!(lift_to_media_iso(&GraphIso { phi: vec![0, 2, 1, 3] }, &m, &m).is_err());
    }

    #[test]
    fn non_isomorphic_media() {
        let q3 = Medium::new(fixtures::hypercube_medium(3)).unwrap();
        let c8 = induced(&fixtures::cycle(8));
        assert!(media_isomorphic(&q3, &c8, &Limits::default()).unwrap().is_none());
        let k2 = induced(&fixtures::path(2));
        assert!(media_isomorphic(&k2, &k2, &Limits::default()).unwrap().is_some());
    }
}
