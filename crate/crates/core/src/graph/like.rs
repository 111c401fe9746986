//! The like relation on arcs and the mediatic-graph decision.
//!
//! `ST ~ PQ` holds when `d(S,P) + 1 = d(T,Q) + 1 = d(S,Q) = d(T,P)`. All four
//! distances must be finite; arcs in different components are never alike.

use std::collections::HashMap;

use serde::Serialize;

use super::{Arc, DistanceTable, Graph};
use crate::error::{Error, Result};

fn alike(d: &DistanceTable, a: Arc, b: Arc) -> bool {
    let (Some(sp), Some(tq), Some(sq), Some(tp)) = (
        d.get(a.source, b.source),
        d.get(a.target, b.target),
        d.get(a.source, b.target),
        d.get(a.target, b.source),
    ) else {
        return false;
    };
    sp + 1 == sq && tq + 1 == sq && tp == sq
}

/// Evaluates the like relation between two arcs of a connected graph.
pub fn like_related(g: &Graph, a: Arc, b: Arc) -> Result<bool> {
    for arc in [a, b] {
        if arc.source >= g.num_vertices() || arc.target >= g.num_vertices() || !g.has_edge(arc.source, arc.target) {
            return Err(Error::Precondition(format!("{arc:?} is not an arc of the graph")));
        }
    }
    if g.is_connected().is_err() {
        return Err(Error::Precondition("the like relation needs a connected graph".into()));
    }
    Ok(alike(g.distances(), a, b))
}

/// The equivalence classes of the like relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LikePartition {
    classes: Vec<Vec<Arc>>,
    class_of: HashMap<Arc, usize>,
}

impl LikePartition {
    /// Classes ordered by their lexicographically smallest arc; arcs within a
    /// class are sorted.
    pub fn classes(&self) -> &[Vec<Arc>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: Arc) -> Option<usize> {
        self.class_of.get(&a).copied()
    }

    /// Index of the class holding the reversed arcs of class `k`.
    pub fn reverse_class(&self, k: usize) -> usize {
        self.class_of[&self.classes[k][0].reversed()]
    }
}

/// Three arcs with `a ~ b`, `b ~ c` and not `a ~ c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonTransitive {
    pub a: Arc,
    pub b: Arc,
    pub c: Arc,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Grows tentative classes by union over related pairs, then confirms every
/// class is a clique of the relation. Valid on any graph.
fn partition_or_witness(g: &Graph) -> Result<LikePartition, NonTransitive> {
    let d = g.distances();
    let arcs = g.arcs();
    let mut dsu = Dsu((0..arcs.len()).collect());
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if alike(d, arcs[i], arcs[j]) {
                dsu.union(i, j);
            }
        }
    }
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut member_class = vec![0; arcs.len()];
    for (i, slot) in member_class.iter_mut().enumerate() {
        let root = dsu.find(i);
        let k = *class_index.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(i);
        *slot = k;
    }

    // Smallest violating triple: scan `a` in arc order, then `b`, then `c`
    // within the tentative class, which must contain any violating chain.
    for (ia, &a) in arcs.iter().enumerate() {
        let class = &classes[member_class[ia]];
        if class.iter().all(|&ic| alike(d, a, arcs[ic])) {
            continue;
        }
        for &ib in class {
            let b = arcs[ib];
            if !alike(d, a, b) {
                continue;
            }
            for &ic in class {
                let c = arcs[ic];
                if alike(d, b, c) && !alike(d, a, c) {
                    return Err(NonTransitive { a, b, c });
                }
            }
        }
    }

    let classes: Vec<Vec<Arc>> = classes
        .into_iter()
        .map(|c| c.into_iter().map(|i| arcs[i]).collect())
        .collect();
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(k, c)| c.iter().map(move |&a| (a, k)))
        .collect();
    Ok(LikePartition { classes, class_of })
}

/// Partitions the arcs of a connected bipartite graph into like classes, or
/// returns a triple showing the relation is not transitive.
pub fn like_partition(g: &Graph) -> Result<Result<LikePartition, NonTransitive>> {
    if g.is_connected().is_err() {
        return Err(Error::Precondition("like_partition needs a connected graph".into()));
    }
    if g.is_bipartite().is_err() {
        return Err(Error::Precondition("like_partition needs a bipartite graph".into()));
    }
    Ok(partition_or_witness(g))
}

/// Outcome of checking connectivity, bipartiteness and transitivity of the
/// like relation. All three are always evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MediaticReport {
    pub is_mediatic: bool,
    pub g1: bool,
    pub g2: bool,
    pub g3: bool,
    /// Two vertices in different components.
    pub g1_witness: Option<(String, String)>,
    /// An odd cycle.
    pub g2_witness: Option<Vec<String>>,
    /// Arcs `a`, `b`, `c` with `a ~ b`, `b ~ c`, not `a ~ c`.
    pub g3_witness: Option<[(String, String); 3]>,
}

pub fn is_mediatic(g: &Graph) -> MediaticReport {
    let g1_witness = g
        .is_connected()
        .err()
        .map(|(a, b)| (g.name(a).to_string(), g.name(b).to_string()));
    let g2_witness = g
        .is_bipartite()
        .err()
        .map(|cyc| cyc.into_iter().map(|v| g.name(v).to_string()).collect());
    let g3_witness = partition_or_witness(g)
        .err()
        .map(|w| [g.arc_name(w.a), g.arc_name(w.b), g.arc_name(w.c)]);
    let (g1, g2, g3) = (g1_witness.is_none(), g2_witness.is_none(), g3_witness.is_none());
    MediaticReport {
        is_mediatic: g1 && g2 && g3,
        g1,
        g2,
        g3,
        g1_witness,
        g2_witness,
        g3_witness,
    }
}
