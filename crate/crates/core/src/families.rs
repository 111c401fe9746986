//! Families of relations on a small ground set, and the media they form.
//!
//! A relation is a set of ordered pairs of ground elements; the pair `(a, b)`
//! is written `ab`. Relations include diagonal pairs, so a ground set of `n`
//! elements has `2^(n*n)` candidate relations.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::token::{TokenSpec, TokenSystem};

pub const MAX_GROUND: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    PartialOrder,
    IntervalOrder,
    Semiorder,
    Biorder,
    Custom,
}

impl Kind {
    pub const GENERATED: [Kind; 4] = [Kind::PartialOrder, Kind::IntervalOrder, Kind::Semiorder, Kind::Biorder];

    /// Whether `r`, on a ground set of `n` elements, belongs to the family
    /// of this kind. Custom families accept every relation.
    pub fn admits(self, r: &Relation, n: usize) -> bool {
        match self {
            Kind::PartialOrder => r.is_irreflexive() && r.is_transitive(),
            Kind::IntervalOrder => r.is_irreflexive() && r.is_ferrers(),
            Kind::Semiorder => r.is_irreflexive() && r.is_ferrers() && r.is_semitransitive(n),
            Kind::Biorder => r.is_ferrers(),
            Kind::Custom => true,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::PartialOrder => "partial-order",
            Kind::IntervalOrder => "interval-order",
            Kind::Semiorder => "semiorder",
            Kind::Biorder => "biorder",
            Kind::Custom => "custom",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "partial-order" => Kind::PartialOrder,
            "interval-order" => Kind::IntervalOrder,
            "semiorder" => Kind::Semiorder,
            "biorder" => Kind::Biorder,
            "custom" => Kind::Custom,
            _ => {
                return Err(Error::input(
                    "kind",
                    format!("`{s}` is not one of partial-order, interval-order, semiorder, biorder, custom"),
                ))
            }
        })
    }
}

/// Ground elements `a`, `b`, `c`, `d`, truncated to `n`.
pub fn default_ground(n: usize) -> Vec<String> {
    ["a", "b", "c", "d"][..n].iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    /// Pairs of indices into the ground set, sorted.
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Relation {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn is_irreflexive(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| a != b)
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| {
            self.pairs
                .iter()
                .filter(|&&(c, _)| c == b)
                .all(|&(_, d)| self.contains(a, d))
        })
    }

    /// `aKb` and `cKd` imply `aKd` or `cKb`.
    pub fn is_ferrers(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| {
            self.pairs
                .iter()
                .all(|&(c, d)| self.contains(a, d) || self.contains(c, b))
        })
    }

    /// `aKb` and `bKc` imply `aKd` or `dKc` for every `d` among `n` elements.
    pub fn is_semitransitive(&self, n: usize) -> bool {
        self.pairs.iter().all(|&(a, b)| {
            self.pairs
                .iter()
                .filter(|&&(x, _)| x == b)
                .all(|&(_, c)| (0..n).all(|d| self.contains(a, d) || self.contains(d, c)))
        })
    }

    pub fn symmetric_difference(&self, other: &Relation) -> usize {
        self.pairs.symmetric_difference(&other.pairs).count()
    }

    pub fn keys(&self, ground: &[String]) -> Vec<String> {
        self.pairs
            .iter()
            .map(|&(a, b)| format!("{}{}", ground[a], ground[b]))
            .collect()
    }

    /// `{}` or `{ab,cb}`.
    pub fn name(&self, ground: &[String]) -> String {
        format!("{{{}}}", self.keys(ground).join(","))
    }
}

/// Splits a pair key into two ground elements; the split must be unique.
pub fn parse_pair(key: &str, ground: &[String]) -> Result<(usize, usize)> {
    let mut found = None;
    for (i, x) in ground.iter().enumerate() {
        let Some(rest) = key.strip_prefix(x.as_str()) else {
            continue;
        };
        if let Some(j) = ground.iter().position(|y| y == rest) {
            if found.is_some() {
                return Err(Error::input(
                    "members",
                    format!("pair `{key}` splits in more than one way"),
                ));
            }
            found = Some((i, j));
        }
    }
    found.ok_or_else(|| Error::input("members", format!("pair `{key}` is not two ground elements")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFamily {
    pub kind: Kind,
    pub ground: Vec<String>,
    /// Distinct members, sorted by size and then by pairs.
    pub members: Vec<Relation>,
}

impl RelationFamily {
    pub fn new(kind: Kind, ground: Vec<String>, members: impl IntoIterator<Item = Relation>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, g) in ground.iter().enumerate() {
            if g.is_empty() {
                return Err(Error::input(format!("ground[{i}]"), "empty element name"));
            }
            if !seen.insert(g) {
                return Err(Error::input(format!("ground[{i}]"), format!("duplicate element `{g}`")));
            }
        }
        let mut members: Vec<Relation> = members.into_iter().collect();
        for (i, m) in members.iter().enumerate() {
            if m.pairs.iter().any(|&(a, b)| a >= ground.len() || b >= ground.len()) {
                return Err(Error::input(format!("members[{i}]"), "pair outside the ground set"));
            }
            if !kind.admits(m, ground.len()) {
                return Err(Error::input(format!("members[{i}]"), format!("not a {kind}")));
            }
        }
        members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        members.dedup();
        Ok(RelationFamily { kind, ground, members })
    }

    /// Members given as lists of pair keys over `ground`.
    pub fn from_keys(kind: Kind, ground: Vec<String>, members: &[Vec<String>]) -> Result<Self> {
        let parsed = members
            .iter()
            .enumerate()
            .map(|(i, keys)| {
                keys.iter()
                    .map(|k| {
                        parse_pair(k, &ground)
                            .map_err(|_| Error::input(format!("members[{i}]"), format!("bad pair `{k}`")))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(Relation::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(kind, ground, parsed)
    }
}

/// Every relation on `n` elements admitted by `kind`.
pub fn enumerate_family(kind: Kind, n: usize) -> Result<RelationFamily> {
    if !(1..=MAX_GROUND).contains(&n) {
        return Err(Error::input(
            "n",
            format!("ground size must be between 1 and {MAX_GROUND}"),
        ));
    }
    if kind == Kind::Custom {
        return Err(Error::input(
            "kind",
            "custom families are read from files, not generated",
        ));
    }
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let members = (0u32..1 << cells.len())
        .map(|mask| {
            Relation::new(
                cells
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p),
            )
        })
        .filter(|r| kind.admits(r, n));
    RelationFamily::new(kind, default_ground(n), members)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellGraded {
    pub holds: bool,
    /// Two member indices whose graph distance differs from the size of
    /// their symmetric difference.
    pub witness: Option<(usize, usize)>,
}

/// Largest `n * n` for which members are encoded as bitmasks.
const MASK_CELLS: usize = 20;

/// Members are adjacent when they differ in one pair; the family is
/// well-graded when every graph distance equals the symmetric difference.
pub fn is_wellgraded(f: &RelationFamily) -> WellGraded {
    let n = f.ground.len();
    let witness = if n * n <= MASK_CELLS {
        stepwise_witness(f, n)
    } else {
        bfs_witness(f)
    };
    WellGraded {
        holds: witness.is_none(),
        witness,
    }
}

/// Equivalent test on bitmasks: from every member `K` and every other member
/// `L`, some member adjacent to `K` is one step closer to `L`.
fn stepwise_witness(f: &RelationFamily, n: usize) -> Option<(usize, usize)> {
    let masks: Vec<u32> = f
        .members
        .iter()
        .map(|m| m.pairs.iter().fold(0, |acc, &(a, b)| acc | 1 << (a * n + b)))
        .collect();
    let mut present = vec![false; 1 << (n * n)];
    for &m in &masks {
        present[m as usize] = true;
    }
    for (i, &k) in masks.iter().enumerate() {
        for (j, &l) in masks.iter().enumerate() {
            let mut diff = k ^ l;
            let mut stepped = diff == 0;
            while diff != 0 && !stepped {
                let bit = diff & diff.wrapping_neg();
                stepped = present[(k ^ bit) as usize];
                diff ^= bit;
            }
            if !stepped {
                return Some((i.min(j), i.max(j)));
            }
        }
    }
    None
}

fn bfs_witness(f: &RelationFamily) -> Option<(usize, usize)> {
    let n = f.members.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| f.members[i].symmetric_difference(&f.members[j]) == 1)
                .collect()
        })
        .collect();
    for i in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[i] = 0;
        let mut queue = VecDeque::from([i]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if let Some(j) = (i + 1..n).find(|&j| dist[j] != f.members[i].symmetric_difference(&f.members[j])) {
            return Some((i, j));
        }
    }
    None
}

/// The medium whose states are the members and whose tokens add or remove a
/// single pair (`+ab`, `-ab`).
pub fn family_to_medium(f: &RelationFamily) -> Result<TokenSystem> {
    if f.members.len() < 2 {
        return Err(Error::Precondition("a family medium needs at least two members".into()));
    }
    let wg = is_wellgraded(f);
    if let Some((i, j)) = wg.witness {
        return Err(Error::Precondition(format!(
            "family is not well-graded: {} and {}",
            f.members[i].name(&f.ground),
            f.members[j].name(&f.ground)
        )));
    }
    let names: Vec<String> = f.members.iter().map(|m| m.name(&f.ground)).collect();
    let index: std::collections::HashMap<&Relation, usize> =
        f.members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let all: BTreeSet<(usize, usize)> = f.members.iter().flat_map(|m| m.pairs.iter().copied()).collect();
    let mut specs = Vec::new();
    for &(a, b) in &all {
        if f.members.iter().all(|m| m.contains(a, b)) {
            continue;
        }
        let key = format!("{}{}", f.ground[a], f.ground[b]);
        let mut adds = Vec::new();
        for (i, m) in f.members.iter().enumerate() {
            if m.contains(a, b) {
                continue;
            }
            let mut grown = m.clone();
            grown.pairs.insert((a, b));
            if let Some(&j) = index.get(&grown) {
                adds.push((names[i].clone(), names[j].clone()));
            }
        }
        specs.push(TokenSpec::new(format!("+{key}"), adds.clone()));
        specs.push(TokenSpec::new(format!("-{key}"), adds.into_iter().map(|(x, y)| (y, x))));
    }
    TokenSystem::new(names, specs)
}
