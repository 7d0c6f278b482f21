//! Cycles and unions of disjoint cycles, and the rerouting map between the
//! cycle sets of `G_△` and `G_Y`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, TriangleSite};

/// A cycle as a vertex sequence in canonical cyclic order: smallest vertex
/// first, then its smaller neighbour on the cycle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<u32>);

impl Cycle {
    /// Canonicalizes any cyclic vertex sequence of length at least 3 with
    /// distinct vertices.
    pub fn new(seq: Vec<u32>) -> Result<Self> {
        let n = seq.len();
        if n < 3 {
            return Err(Error::NotACycleSet(format!("cycle {seq:?} shorter than 3")));
        }
        if seq.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::NotACycleSet(format!("cycle {seq:?} repeats a vertex")));
        }
        let (start, _) = seq.iter().enumerate().min_by_key(|(_, &v)| v).unwrap();
        let next = seq[(start + 1) % n];
        let prev = seq[(start + n - 1) % n];
        let out: Vec<u32> = if next < prev {
            (0..n).map(|i| seq[(start + i) % n]).collect()
        } else {
            (0..n).map(|i| seq[(start + n - i) % n]).collect()
        };
        Ok(Cycle(out))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.contains(&v)
    }

    /// Consecutive vertex pairs in traversal order, closing the loop.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    pub fn is_in(&self, g: &Graph) -> bool {
        self.edges().all(|(a, b)| g.has_edge(a, b))
    }

    pub fn is_triangle(&self, t: &TriangleSite) -> bool {
        self.0.len() == 3 && self.0.iter().all(|&v| t.contains(v))
    }

    fn mask(&self) -> u128 {
        self.0.iter().fold(0, |m, &v| m | vertex_bit(v))
    }

    fn disjoint(&self, other: &Cycle) -> bool {
        !self.0.iter().any(|v| other.0.contains(v))
    }
}

fn vertex_bit(v: u32) -> u128 {
    assert!(v < 128, "vertex labels above 127 are not supported for cycle enumeration");
    1u128 << v
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join("-"))
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Cycle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let seq = s
            .split('-')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::NotACycleSet(format!("bad cycle key `{s}`")))?;
        Cycle::new(seq)
    }
}

/// Two vertex-disjoint cycles, smaller first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CyclePair(Cycle, Cycle);

impl CyclePair {
    pub fn new(a: Cycle, b: Cycle) -> Result<Self> {
        if !a.disjoint(&b) {
            return Err(Error::NotACycleSet(format!("{a} and {b} are not disjoint")));
        }
        Ok(if a <= b { CyclePair(a, b) } else { CyclePair(b, a) })
    }

    pub fn first(&self) -> &Cycle {
        &self.0
    }

    pub fn second(&self) -> &Cycle {
        &self.1
    }

    /// Component lengths, larger first (the `(k, l)` of `Γ⁽²⁾_{k,l}`).
    pub fn kind(&self) -> (usize, usize) {
        let (a, b) = (self.0.len(), self.1.len());
        (a.max(b), a.min(b))
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.contains(v) || self.1.contains(v)
    }
}

/// An element of `Γ̄(G)` restricted to one or two components.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CycleSet {
    Knot(Cycle),
    Link(CyclePair),
}

impl CycleSet {
    pub fn components(&self) -> Vec<&Cycle> {
        match self {
            CycleSet::Knot(c) => vec![c],
            CycleSet::Link(p) => vec![p.first(), p.second()],
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            CycleSet::Knot(_) => 1,
            CycleSet::Link(_) => 2,
        }
    }

    pub fn contains(&self, v: u32) -> bool {
        self.components().iter().any(|c| c.contains(v))
    }

    pub fn vertex_count(&self) -> usize {
        self.components().iter().map(|c| c.len()).sum()
    }

    /// True when some component is the triangle `t` (an element of `Γ̄_△`).
    pub fn contains_triangle(&self, t: &TriangleSite) -> bool {
        self.components().iter().any(|c| c.is_triangle(t))
    }

    pub fn is_in(&self, g: &Graph) -> bool {
        self.components().iter().all(|c| c.is_in(g))
    }

    fn from_components(mut comps: Vec<Cycle>) -> Result<Self> {
        match comps.len() {
            1 => Ok(CycleSet::Knot(comps.pop().unwrap())),
            2 => {
                let b = comps.pop().unwrap();
                let a = comps.pop().unwrap();
                Ok(CycleSet::Link(CyclePair::new(a, b)?))
            }
            n => Err(Error::NotACycleSet(format!("{n} components"))),
        }
    }
}

impl Ord for CycleSet {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CycleSet::Knot(a), CycleSet::Knot(b)) => a.cmp(b),
            (CycleSet::Link(a), CycleSet::Link(b)) => a.cmp(b),
            (CycleSet::Knot(_), CycleSet::Link(_)) => Ordering::Less,
            (CycleSet::Link(_), CycleSet::Knot(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for CycleSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CycleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleSet::Knot(c) => write!(f, "{c}"),
            CycleSet::Link(p) => write!(f, "{}|{}", p.first(), p.second()),
        }
    }
}

impl FromStr for CycleSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let comps = s
            .split('|')
            .map(str::parse)
            .collect::<Result<Vec<Cycle>>>()?;
        CycleSet::from_components(comps)
    }
}

/// All cycles of `g`, each once in canonical form, sorted.
pub fn enumerate_cycles(g: &Graph) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in g.vertices() {
        path.clear();
        path.push(s);
        extend_path(g, s, &mut path, vertex_bit(s), &mut out);
    }
    out.sort();
    out
}

fn extend_path(g: &Graph, start: u32, path: &mut Vec<u32>, used: u128, out: &mut Vec<Cycle>) {
    let last = *path.last().unwrap();
    for n in g.neighbors(last) {
        if n == start && path.len() >= 3 && path[1] < last {
            out.push(Cycle(path.clone()));
        }
        if n <= start || used & vertex_bit(n) != 0 {
            continue;
        }
        path.push(n);
        extend_path(g, start, path, used | vertex_bit(n), out);
        path.pop();
    }
}

/// All unordered pairs of vertex-disjoint cycles, sorted.
pub fn enumerate_disjoint_pairs(g: &Graph) -> Vec<CyclePair> {
    pairs_of(&enumerate_cycles(g))
}

pub fn pairs_of(cycles: &[Cycle]) -> Vec<CyclePair> {
    let masks: Vec<u128> = cycles.iter().map(Cycle::mask).collect();
    let mut out = Vec::new();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if masks[i] & masks[j] == 0 {
                out.push(CyclePair(cycles[i].clone(), cycles[j].clone()));
            }
        }
    }
    out.sort();
    out
}

/// Disjoint pairs whose component lengths are `{k, l}`.
pub fn pairs_of_kind(g: &Graph, k: usize, l: usize) -> Vec<CyclePair> {
    let want = (k.max(l), k.min(l));
    enumerate_disjoint_pairs(g)
        .into_iter()
        .filter(|p| p.kind() == want)
        .collect()
}

/// All sets of `n` mutually disjoint cycles, each as a sorted component list.
pub fn enumerate_gamma_n(g: &Graph, n: usize) -> Vec<Vec<Cycle>> {
    let cycles = enumerate_cycles(g);
    let masks: Vec<u128> = cycles.iter().map(Cycle::mask).collect();
    let total = g.vertex_count() as u32;
    let mut out = Vec::new();
    let mut chosen = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        from: usize,
        n: usize,
        used: u128,
        total: u32,
        masks: &[u128],
        cycles: &[Cycle],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<Cycle>>,
    ) {
        if chosen.len() == n {
            out.push(chosen.iter().map(|&i| cycles[i].clone()).collect());
            return;
        }
        let remaining = n - chosen.len();
        if total.saturating_sub(used.count_ones()) < 3 * remaining as u32 {
            return;
        }
        for i in from..cycles.len() {
            if masks[i] & used == 0 {
                chosen.push(i);
                rec(i + 1, n, used | masks[i], total, masks, cycles, chosen, out);
                chosen.pop();
            }
        }
    }

    if n == 0 {
        return out;
    }
    rec(0, n, 0, total, &masks, &cycles, &mut chosen, &mut out);
    out
}

/// `Γ(G) ∪ Γ⁽²⁾(G)` as a single sorted list (knots first).
pub fn enumerate_cycle_sets(g: &Graph) -> Vec<CycleSet> {
    let cycles = enumerate_cycles(g);
    let pairs = pairs_of(&cycles);
    cycles
        .into_iter()
        .map(CycleSet::Knot)
        .chain(pairs.into_iter().map(CycleSet::Link))
        .collect()
}

/// Label `delta_y` gives the new vertex.
pub fn fresh_label(g: &Graph) -> u32 {
    g.max_label().map_or(0, |m| m + 1)
}

/// Reroutes one component of `G_△` through the new vertex `x`. Returns the
/// rerouted vertex sequence.
fn reroute(c: &Cycle, t: &TriangleSite, x: u32) -> Vec<u32> {
    let seq = c.vertices();
    let n = seq.len();
    let on = |i: usize| t.has_edge(seq[i % n], seq[(i + 1) % n]);
    let count = (0..n).filter(|&i| on(i)).count();
    match count {
        0 => seq.to_vec(),
        1 => {
            let i = (0..n).find(|&i| on(i)).unwrap();
            // rotate so the triangle edge is seq[n-1] -> seq[0]
            let mut out: Vec<u32> = (0..n).map(|k| seq[(i + 1 + k) % n]).collect();
            out.push(x);
            out
        }
        2 => {
            // the two triangle edges are consecutive: a - b - c; drop b
            let i = (0..n).find(|&i| on(i) && on(i + 1)).unwrap();
            let mid = (i + 1) % n;
            let mut out: Vec<u32> = (1..n).map(|k| seq[(mid + k) % n]).collect();
            out.push(x);
            out
        }
        _ => unreachable!("a component equal to the triangle is rejected earlier"),
    }
}

/// The map `Φ̄`: sends `γ'` in `Γ̄(G_△)` avoiding `△` as a component to the
/// element of `Γ̄(G_Y)` that agrees with it away from the triangle, routing
/// triangle edges through `x`.
pub fn phi_map(g_delta: &Graph, site: &TriangleSite, gamma: &CycleSet) -> Result<CycleSet> {
    let x = fresh_label(g_delta);
    if !g_delta.is_triangle(site) {
        return Err(Error::NotATriangle(site.u, site.v, site.w));
    }
    if !gamma.is_in(g_delta) {
        return Err(Error::NotACycleSet(gamma.to_string()));
    }
    if gamma.contains_triangle(site) {
        return Err(Error::ContainsTriangle);
    }
    let comps = gamma
        .components()
        .into_iter()
        .map(|c| Cycle::new(reroute(c, site, x)))
        .collect::<Result<Vec<_>>>()?;
    CycleSet::from_components(comps)
}

/// Inverse image of `γ ∈ Γ̄(G_Y)` under `Φ̄`; one or two elements.
pub fn phi_preimage(
    g_delta: &Graph,
    site: &TriangleSite,
    gamma: &CycleSet,
) -> Result<Vec<CycleSet>> {
    let x = fresh_label(g_delta);
    if !g_delta.is_triangle(site) {
        return Err(Error::NotATriangle(site.u, site.v, site.w));
    }
    let comps = gamma.components();
    let in_gy = comps.iter().all(|c| {
        c.edges().all(|(a, b)| {
            if a == x || b == x {
                site.contains(if a == x { b } else { a })
            } else {
                g_delta.has_edge(a, b) && !site.has_edge(a, b)
            }
        })
    });
    if !in_gy {
        return Err(Error::NotACycleSet(format!("{gamma} is not a cycle set of G_Y")));
    }
    let Some(k) = comps.iter().position(|c| c.contains(x)) else {
        return Ok(vec![gamma.clone()]);
    };
    let through = comps[k].vertices();
    let n = through.len();
    let i = through.iter().position(|&v| v == x).unwrap();
    let a = through[(i + n - 1) % n];
    let b = through[(i + 1) % n];
    let c = site.third(a, b);
    let rest: Vec<u32> = (1..n).map(|j| through[(i + j) % n]).collect(); // b ... a
    let build = |seq: Vec<u32>| -> Result<CycleSet> {
        let mut cs: Vec<Cycle> = comps
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, c)| (*c).clone())
            .collect();
        cs.push(Cycle::new(seq)?);
        CycleSet::from_components(cs)
    };
    let mut out = vec![build(rest.clone())?];
    if !gamma.contains(c) {
        let mut via = rest;
        via.push(c);
        out.push(build(via)?);
    }
    out.sort();
    Ok(out)
}
