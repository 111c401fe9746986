use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};
use crate::limits::{Limits, Meter};

/// A circuit `v0, v1, ..., v(m-1), v0` stored without the closing vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Circuit(pub Vec<usize>);

impl Circuit {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.0.len().is_multiple_of(2)
    }

    pub fn names(&self, g: &Graph) -> Vec<String> {
        self.0.iter().map(|&v| g.name(v).to_string()).collect()
    }

    /// The closed vertex walk `v0, ..., v(m-1), v0`.
    pub fn closed_walk(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        w.push(self.0[0]);
        w
    }
}

/// Enumerates every circuit of length `3..=max_len`, each once, in its
/// lexicographically smallest rotation and reflection. Sorted by length, then
/// lexicographically.
pub fn circuits_upto(g: &Graph, max_len: usize, limits: &Limits) -> Result<Vec<Circuit>> {
    if max_len < 3 {
        return Err(Error::input("max_len", "circuits have length at least 3"));
    }
    let mut out = Vec::new();
    let mut meter = Meter::new(limits.max_enum);
    let mut on_path = vec![false; g.num_vertices()];
    for s in 0..g.num_vertices() {
        let mut path = vec![s];
        on_path[s] = true;
        extend(g, s, max_len, &mut path, &mut on_path, &mut out, &mut meter, limits)?;
        on_path[s] = false;
    }
    out.sort_by(|a: &Circuit, b: &Circuit| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    s: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Circuit>,
    meter: &mut Meter,
    limits: &Limits,
) -> Result<()> {
    meter.tick("enumerating circuits")?;
    let u = *path.last().unwrap();
    for &v in g.neighbors(u) {
        if v == s && path.len() >= 3 && path[1] < path[path.len() - 1] {
            out.push(Circuit(path.clone()));
            if out.len() > limits.max_circuits {
                return Err(Error::Budget {
                    budget: limits.max_circuits,
                    context: "collecting circuits".into(),
                });
            }
        }
        if v > s && !on_path[v] && path.len() < max_len {
            on_path[v] = true;
            path.push(v);
            extend(g, s, max_len, path, on_path, out, meter, limits)?;
            path.pop();
            on_path[v] = false;
        }
    }
    Ok(())
}

fn validate(g: &Graph, c: &Circuit) -> Result<()> {
    let vs = c.vertices();
    if vs.len() < 3 {
        return Err(Error::Precondition("a circuit has at least three vertices".into()));
    }
    if vs.iter().any(|&v| v >= g.num_vertices()) {
        return Err(Error::Precondition("circuit vertex out of range".into()));
    }
    let mut sorted = vs.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("circuit repeats a vertex".into()));
    }
    for i in 0..vs.len() {
        let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
        if !g.has_edge(a, b) {
            return Err(Error::Precondition(format!(
                "{{{}, {}}} is not an edge",
                g.name(a),
                g.name(b)
            )));
        }
    }
    Ok(())
}

/// True when, for every two vertices of `c`, one of the two segments of `c`
/// joining them is a shortest path.
pub fn is_minimal_circuit(g: &Graph, c: &Circuit) -> Result<bool> {
    validate(g, c)?;
    let d = g.distances();
    let vs = c.vertices();
    let m = vs.len();
    for i in 0..m {
        for j in i + 1..m {
            let seg = (j - i).min(m - (j - i)) as u32;
            if d.get(vs[i], vs[j]) != Some(seg) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
