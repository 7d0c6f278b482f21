//! Link diagrams as signed Gauss codes, with the planar structure (faces)
//! they determine and the Reidemeister moves acting on them.
//!
//! Crossing signs use the right-handed convention: looking down on the
//! projection plane, a crossing is positive when the under strand points
//! 90° counterclockwise from the over strand.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{parse_err, Error, Result};

/// One passage of a component through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
}

/// Position of a visit: `(component, index)`.
pub type Pos = (usize, usize);

/// Per-component Gauss sequences plus a crossing sign table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    signs: Vec<i8>,
    components: Vec<Vec<Visit>>,
}

/// Where a crossing's two visits sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingSite {
    pub over: Pos,
    pub under: Pos,
}

impl LinkDiagram {
    /// Validates that every crossing is visited exactly twice, once over and
    /// once under, and that every sign is ±1.
    pub fn new(signs: Vec<i8>, components: Vec<Vec<Visit>>) -> Result<Self> {
        let mut over = vec![0usize; signs.len()];
        let mut under = vec![0usize; signs.len()];
        for v in components.iter().flatten() {
            if v.crossing >= signs.len() {
                return Err(Error::InvalidDiagram(format!("unknown crossing {}", v.crossing)));
            }
            if v.over {
                over[v.crossing] += 1;
            } else {
                under[v.crossing] += 1;
            }
        }
        for c in 0..signs.len() {
            if over[c] != 1 || under[c] != 1 {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {c} visited {} times over and {} under",
                    over[c], under[c]
                )));
            }
            if signs[c].abs() != 1 {
                return Err(Error::InvalidDiagram(format!("crossing {c} has sign {}", signs[c])));
            }
        }
        Ok(LinkDiagram { signs, components })
    }

    /// Crossingless diagram of `n` components.
    pub fn unlink(n: usize) -> Self {
        LinkDiagram {
            signs: Vec::new(),
            components: vec![Vec::new(); n],
        }
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn components(&self) -> &[Vec<Visit>] {
        &self.components
    }

    pub fn sign(&self, c: usize) -> i8 {
        self.signs[c]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sites(&self) -> Vec<CrossingSite> {
        let mut over = vec![(0, 0); self.signs.len()];
        let mut under = vec![(0, 0); self.signs.len()];
        for (k, comp) in self.components.iter().enumerate() {
            for (i, v) in comp.iter().enumerate() {
                if v.over {
                    over[v.crossing] = (k, i);
                } else {
                    under[v.crossing] = (k, i);
                }
            }
        }
        over.into_iter()
            .zip(under)
            .map(|(over, under)| CrossingSite { over, under })
            .collect()
    }

    /// Relabels crossings `0..n` in order of first appearance, dropping
    /// crossings that no longer occur.
    fn compact(signs: &[i8], components: Vec<Vec<Visit>>) -> LinkDiagram {
        let mut map: BTreeMap<usize, usize> = BTreeMap::new();
        let mut new_signs = Vec::new();
        let components: Vec<Vec<Visit>> = components
            .into_iter()
            .map(|comp| {
                comp.into_iter()
                    .map(|v| {
                        let id = *map.entry(v.crossing).or_insert_with(|| {
                            new_signs.push(signs[v.crossing]);
                            new_signs.len() - 1
                        });
                        Visit {
                            crossing: id,
                            over: v.over,
                        }
                    })
                    .collect()
            })
            .collect();
        LinkDiagram {
            signs: new_signs,
            components,
        }
    }

    /// Canonical relabeling, used as a memo key.
    pub fn normalized(&self) -> LinkDiagram {
        LinkDiagram::compact(&self.signs, self.components.clone())
    }

    /// Crossing change at `c`.
    pub fn switched(&self, c: usize) -> LinkDiagram {
        let mut d = self.clone();
        d.signs[c] = -d.signs[c];
        for v in d.components.iter_mut().flatten() {
            if v.crossing == c {
                v.over = !v.over;
            }
        }
        d
    }

    /// Oriented smoothing at `c`; joins two components or splits one.
    pub fn smoothed(&self, c: usize) -> LinkDiagram {
        let site = self.sites()[c];
        let (mut a, mut b) = (site.over, site.under);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let mut comps = self.components.clone();
        if a.0 == b.0 {
            let seq = comps[a.0].clone();
            let inner = seq[a.1 + 1..b.1].to_vec();
            let mut outer = seq[b.1 + 1..].to_vec();
            outer.extend_from_slice(&seq[..a.1]);
            comps[a.0] = outer;
            comps.push(inner);
        } else {
            let s1 = comps[a.0].clone();
            let s2 = comps[b.0].clone();
            let mut merged = s1[..a.1].to_vec();
            merged.extend_from_slice(&s2[b.1 + 1..]);
            merged.extend_from_slice(&s2[..b.1]);
            merged.extend_from_slice(&s1[a.1 + 1..]);
            comps[a.0] = merged;
            comps.remove(b.0);
        }
        LinkDiagram::compact(&self.signs, comps)
    }

    /// Reverses the orientation of component `k`. Signs of crossings between
    /// `k` and another component flip; self-crossings keep their sign.
    pub fn reversed(&self, k: usize) -> LinkDiagram {
        let mut d = self.clone();
        d.components[k].reverse();
        let sites = self.sites();
        for (c, s) in sites.iter().enumerate() {
            if (s.over.0 == k) != (s.under.0 == k) {
                d.signs[c] = -d.signs[c];
            }
        }
        d
    }

    /// Mirror image: every crossing changed.
    pub fn mirrored(&self) -> LinkDiagram {
        (0..self.crossing_count()).fold(self.clone(), |d, c| d.switched(c))
    }

    /// Groups of components connected through crossings.
    pub fn component_groups(&self) -> Vec<Vec<usize>> {
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for s in self.sites() {
            let (a, b) = (find(&mut parent, s.over.0), find(&mut parent, s.under.0));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..n {
            let r = find(&mut parent, k);
            groups.entry(r).or_default().push(k);
        }
        groups.into_values().collect()
    }

    /// The diagram falls apart into two or more pieces with no crossings
    /// between them.
    pub fn is_split(&self) -> bool {
        self.component_groups().len() > 1
    }

    // ---- Reidemeister reductions -------------------------------------

    fn remove_crossings(&self, drop: &[usize]) -> LinkDiagram {
        let comps = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .copied()
                    .filter(|v| !drop.contains(&v.crossing))
                    .collect()
            })
            .collect();
        LinkDiagram::compact(&self.signs, comps)
    }

    fn adjacent(&self, a: Pos, b: Pos) -> bool {
        if a.0 != b.0 {
            return false;
        }
        let n = self.components[a.0].len();
        (a.1 + 1) % n == b.1 || (b.1 + 1) % n == a.1
    }

    /// A crossing whose two visits are consecutive (a kink).
    pub fn find_r1(&self) -> Option<usize> {
        self.sites()
            .iter()
            .position(|s| self.adjacent(s.over, s.under))
    }

    /// Two crossings forming a bigon: consecutive as over-visits on one
    /// strand, consecutive as under-visits on another, opposite signs.
    pub fn find_r2(&self) -> Option<(usize, usize)> {
        let sites = self.sites();
        for (k, comp) in self.components.iter().enumerate() {
            let n = comp.len();
            if n < 2 {
                continue;
            }
            for i in 0..n {
                let (x, y) = (comp[i], comp[(i + 1) % n]);
                if !x.over || !y.over || x.crossing == y.crossing {
                    continue;
                }
                if self.signs[x.crossing] == self.signs[y.crossing] {
                    continue;
                }
                if n == 2 && i == 1 && k == sites[x.crossing].over.0 {
                    // same pair seen at i == 0
                    continue;
                }
                if self.adjacent(sites[x.crossing].under, sites[y.crossing].under) {
                    return Some((x.crossing, y.crossing));
                }
            }
        }
        None
    }

    /// Removes kinks and bigons until none remain.
    pub fn simplified(&self) -> LinkDiagram {
        let mut d = self.clone();
        loop {
            if let Some(c) = d.find_r1() {
                d = d.remove_crossings(&[c]);
            } else if let Some((a, b)) = d.find_r2() {
                d = d.remove_crossings(&[a, b]);
            } else {
                return d;
            }
        }
    }

    // ---- planar structure ------------------------------------------

    /// Faces of the projection, each a cycle of darts with the face on the
    /// left. Components without crossings contribute nothing.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let sites = self.sites();
        let mut seen = std::collections::HashSet::new();
        let mut faces = Vec::new();
        for (k, comp) in self.components.iter().enumerate() {
            for j in 0..comp.len() {
                for forward in [true, false] {
                    let start = Dart {
                        arc: (k, j),
                        forward,
                    };
                    if seen.contains(&start) {
                        continue;
                    }
                    let mut face = Vec::new();
                    let mut d = start;
                    loop {
                        seen.insert(d);
                        face.push(d);
                        d = self.next_dart(&sites, d);
                        if d == start {
                            break;
                        }
                    }
                    faces.push(face);
                }
            }
        }
        faces
    }

    fn next_dart(&self, sites: &[CrossingSite], d: Dart) -> Dart {
        let (k, j) = d.arc;
        let n = self.components[k].len();
        // arrival: forward darts arrive at the `in` slot of visit j+1,
        // backward darts at the `out` slot of visit j
        let (pos, slot_in) = if d.forward { ((k, (j + 1) % n), true) } else { ((k, j), false) };
        let v = self.components[pos.0][pos.1];
        let site = sites[v.crossing];
        let ring = self.rotation(v.crossing, &site);
        let here = HalfEdge { pos, incoming: slot_in };
        let idx = ring.iter().position(|h| *h == here).unwrap();
        let out = ring[(idx + 3) % 4];
        let m = self.components[out.pos.0].len();
        if out.incoming {
            Dart {
                arc: (out.pos.0, (out.pos.1 + m - 1) % m),
                forward: false,
            }
        } else {
            Dart {
                arc: out.pos,
                forward: true,
            }
        }
    }

    /// Half-edges around a crossing in counterclockwise order.
    fn rotation(&self, c: usize, site: &CrossingSite) -> [HalfEdge; 4] {
        let oo = HalfEdge { pos: site.over, incoming: false };
        let oi = HalfEdge { pos: site.over, incoming: true };
        let uo = HalfEdge { pos: site.under, incoming: false };
        let ui = HalfEdge { pos: site.under, incoming: true };
        if self.signs[c] > 0 {
            [oo, uo, oi, ui]
        } else {
            [oo, ui, oi, uo]
        }
    }

    /// Pieces of the diagram that contain crossings.
    fn crossing_pieces(&self) -> usize {
        self.component_groups()
            .iter()
            .filter(|g| g.iter().any(|&k| !self.components[k].is_empty()))
            .count()
    }

    /// Euler-characteristic test: each connected piece with `n` crossings
    /// must have `n + 2` faces for the signed Gauss code to be planar.
    pub fn is_planar(&self) -> bool {
        if self.crossing_count() == 0 {
            return true;
        }
        let f = self.faces().len();
        f == self.crossing_count() + 2 * self.crossing_pieces()
    }

    // ---- Reidemeister insertions -----------------------------------

    fn insert_after(comps: &mut [Vec<Visit>], arc: Pos, visits: &[Visit]) {
        let comp = &mut comps[arc.0];
        let at = if comp.is_empty() { 0 } else { arc.1 + 1 };
        for (i, v) in visits.iter().enumerate() {
            comp.insert(at + i, *v);
        }
    }

    /// Adds a kink on arc `arc` (the arc leaving visit `arc.1`).
    pub fn r1_add(&self, arc: Pos, sign: i8, over_first: bool) -> LinkDiagram {
        let c = self.signs.len();
        let mut d = self.clone();
        d.signs.push(sign);
        let (a, b) = (Visit { crossing: c, over: over_first }, Visit { crossing: c, over: !over_first });
        Self::insert_after(&mut d.components, arc, &[a, b]);
        d
    }

    /// Pushes a finger of the arc under `d1` across the face to the left of
    /// both darts and over or under the arc of `d2`, creating two crossings.
    pub fn r2_add(&self, d1: Dart, d2: Dart, first_over: bool) -> Option<LinkDiagram> {
        if d1.arc == d2.arc {
            return None;
        }
        let (p, q) = (self.signs.len(), self.signs.len() + 1);
        let dx: i8 = if d2.forward { -1 } else { 1 };
        let (sp, sq) = if first_over { (-dx, dx) } else { (dx, -dx) };
        let mut d = self.clone();
        d.signs.push(sp);
        d.signs.push(sq);
        let on1 = [
            Visit { crossing: p, over: first_over },
            Visit { crossing: q, over: first_over },
        ];
        let p2 = Visit { crossing: p, over: !first_over };
        let q2 = Visit { crossing: q, over: !first_over };
        let on2 = if d1.forward != d2.forward { [p2, q2] } else { [q2, p2] };
        // insert at the later position first so earlier indices stay valid
        if d1.arc > d2.arc {
            Self::insert_after(&mut d.components, d1.arc, &on1);
            Self::insert_after(&mut d.components, d2.arc, &on2);
        } else {
            Self::insert_after(&mut d.components, d2.arc, &on2);
            Self::insert_after(&mut d.components, d1.arc, &on1);
        }
        Some(d)
    }

    /// Triangular faces on which a third Reidemeister move applies.
    pub fn r3_faces(&self) -> Vec<[Dart; 3]> {
        let mut out = Vec::new();
        for f in self.faces() {
            if f.len() != 3 {
                continue;
            }
            let arcs: Vec<Pos> = f.iter().map(|d| d.arc).collect();
            if arcs[0] == arcs[1] || arcs[1] == arcs[2] || arcs[0] == arcs[2] {
                continue;
            }
            let ends = |a: Pos| {
                let n = self.components[a.0].len();
                (self.components[a.0][a.1], self.components[a.0][(a.1 + 1) % n])
            };
            let mut crossings: Vec<usize> = arcs
                .iter()
                .flat_map(|&a| {
                    let (x, y) = ends(a);
                    [x.crossing, y.crossing]
                })
                .collect();
            crossings.sort_unstable();
            crossings.dedup();
            if crossings.len() != 3 {
                continue;
            }
            if arcs.iter().any(|&a| {
                let (x, y) = ends(a);
                x.over && y.over
            }) {
                out.push([f[0], f[1], f[2]]);
            }
        }
        out
    }

    /// Slides the top strand across the crossing of the other two: on each
    /// triangle arc the two visits trade places.
    pub fn r3_apply(&self, tri: &[Dart; 3]) -> LinkDiagram {
        let mut d = self.clone();
        for dart in tri {
            let (k, j) = dart.arc;
            let n = d.components[k].len();
            d.components[k].swap(j, (j + 1) % n);
        }
        d
    }

    /// Applies one random Reidemeister move (insertion or removal of types
    /// I and II, or a type III move when one is available).
    pub fn random_move(&self, rng: &mut impl Rng) -> LinkDiagram {
        let connected = self.component_groups().len() == 1
            && self.components.iter().all(|c| !c.is_empty());
        for _ in 0..16 {
            match rng.gen_range(0..6) {
                0 => {
                    let k = rng.gen_range(0..self.components.len());
                    let len = self.components[k].len().max(1);
                    let arc = (k, rng.gen_range(0..len));
                    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                    return self.r1_add(arc, sign, rng.gen_bool(0.5));
                }
                1 => {
                    if let Some(c) = self.find_r1() {
                        return self.remove_crossings(&[c]);
                    }
                }
                2 | 3 if connected && self.crossing_count() > 0 => {
                    let faces = self.faces();
                    let f = &faces[rng.gen_range(0..faces.len())];
                    if f.len() < 2 {
                        continue;
                    }
                    let i = rng.gen_range(0..f.len());
                    let j = rng.gen_range(0..f.len());
                    if let Some(d) = self.r2_add(f[i], f[j], rng.gen_bool(0.5)) {
                        return d;
                    }
                }
                4 => {
                    if let Some((a, b)) = self.find_r2() {
                        return self.remove_crossings(&[a, b]);
                    }
                }
                5 if connected => {
                    let tris = self.r3_faces();
                    if !tris.is_empty() {
                        return self.r3_apply(&tris[rng.gen_range(0..tris.len())]);
                    }
                }
                _ => {}
            }
        }
        self.clone()
    }

    // ---- text form ---------------------------------------------------

    /// One component per line, entries `±c<id>{o|u}`; a crossingless
    /// component is written as `empty`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for comp in &self.components {
            if comp.is_empty() {
                s.push_str("empty\n");
                continue;
            }
            let items: Vec<String> = comp
                .iter()
                .map(|v| {
                    let sign = if self.signs[v.crossing] > 0 { '+' } else { '-' };
                    let ou = if v.over { 'o' } else { 'u' };
                    format!("{sign}c{}{ou}", v.crossing + 1)
                })
                .collect();
            s.push_str(&items.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<LinkDiagram> {
        let mut ids: BTreeMap<u64, usize> = BTreeMap::new();
        let mut signs: Vec<i8> = Vec::new();
        let mut comps = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == "empty" {
                comps.push(Vec::new());
                continue;
            }
            let mut comp = Vec::new();
            for tok in line.split_whitespace() {
                let (sign, rest) = match tok.as_bytes().first() {
                    Some(b'+') => (1i8, &tok[1..]),
                    Some(b'-') => (-1i8, &tok[1..]),
                    _ => return Err(parse_err(ln, format!("`{tok}`: missing sign"))),
                };
                let rest = rest
                    .strip_prefix('c')
                    .ok_or_else(|| parse_err(ln, format!("`{tok}`: expected `c<id>`")))?;
                let (num, ou) = rest.split_at(rest.len().saturating_sub(1));
                let over = match ou {
                    "o" => true,
                    "u" => false,
                    _ => return Err(parse_err(ln, format!("`{tok}`: expected o or u"))),
                };
                let id: u64 = num.parse().map_err(|_| parse_err(ln, format!("`{tok}`: bad id")))?;
                let c = *ids.entry(id).or_insert_with(|| {
                    signs.push(sign);
                    signs.len() - 1
                });
                if signs[c] != sign {
                    return Err(parse_err(ln, format!("crossing {id} has inconsistent signs")));
                }
                comp.push(Visit { crossing: c, over });
            }
            comps.push(comp);
        }
        LinkDiagram::new(signs, comps)
    }
}

impl fmt::Debug for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinkDiagram[{}]", self.to_text().trim_end().replace('\n', " | "))
    }
}

/// A traversal of an arc; `arc = (k, j)` runs from visit `j` to visit `j+1`
/// of component `k`, and `forward` follows the component orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub arc: Pos,
    pub forward: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct HalfEdge {
    pos: Pos,
    incoming: bool,
}

/// Standard diagrams used as fixtures.
pub mod standard {
    use super::*;

    fn v(c: usize, over: bool) -> Visit {
        Visit { crossing: c, over }
    }

    /// Right-handed trefoil: O1 U2 O3 U1 O2 U3, all positive.
    pub fn trefoil() -> LinkDiagram {
        LinkDiagram::new(
            vec![1, 1, 1],
            vec![vec![v(0, true), v(1, false), v(2, true), v(0, false), v(1, true), v(2, false)]],
        )
        .unwrap()
    }

    /// Figure-eight knot: O1 U2 O3 U4 O2 U1 O4 U3 with signs − − + +.
    pub fn figure_eight() -> LinkDiagram {
        LinkDiagram::new(
            vec![-1, -1, 1, 1],
            vec![vec![
                v(0, true),
                v(1, false),
                v(2, true),
                v(3, false),
                v(1, true),
                v(0, false),
                v(3, true),
                v(2, false),
            ]],
        )
        .unwrap()
    }

    /// Positive Hopf link.
    pub fn hopf() -> LinkDiagram {
        LinkDiagram::new(
            vec![1, 1],
            vec![vec![v(0, true), v(1, false)], vec![v(0, false), v(1, true)]],
        )
        .unwrap()
    }

    /// (2, 2k) torus link as a closed 2-braid with `2k` positive crossings,
    /// strands oriented parallel.
    pub fn torus_2(k: usize) -> LinkDiagram {
        let n = 2 * k;
        // crossing i: strand A over when i even
        let mut a = Vec::new();
        let mut b = Vec::new();
        for i in 0..n {
            a.push(v(i, i % 2 == 0));
            b.push(v(i, i % 2 == 1));
        }
        LinkDiagram::new(vec![1; n], vec![a, b]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validation() {
        let bad = LinkDiagram::new(vec![1], vec![vec![Visit { crossing: 0, over: true }]]);
        assert!(bad.is_err());
        let bad = LinkDiagram::new(
            vec![2],
            vec![vec![Visit { crossing: 0, over: true }, Visit { crossing: 0, over: false }]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn text_round_trip() {
        for d in [trefoil(), figure_eight(), hopf(), LinkDiagram::unlink(2)] {
            assert_eq!(LinkDiagram::parse(&d.to_text()).unwrap(), d);
        }
        assert!(LinkDiagram::parse("+c1o -c1u\n").is_err());
        assert!(LinkDiagram::parse("+c1o c1u\n").is_err());
        assert!(LinkDiagram::parse("+c1x +c1u\n").is_err());
    }

    #[test]
    fn standard_diagrams_are_planar() {
        for d in [trefoil(), figure_eight(), hopf(), torus_2(2), torus_2(3)] {
            assert!(d.is_planar(), "{d:?}");
            assert!(d.mirrored().is_planar());
        }
        // a virtual trefoil-like code (O1 U2 U1 O2) is not planar
        let virt = LinkDiagram::new(
            vec![1, 1],
            vec![vec![
                Visit { crossing: 0, over: true },
                Visit { crossing: 1, over: false },
                Visit { crossing: 0, over: false },
                Visit { crossing: 1, over: true },
            ]],
        )
        .unwrap();
        assert!(!virt.is_planar());
    }

    #[test]
    fn smoothing_changes_component_count() {
        let t = trefoil();
        assert_eq!(t.smoothed(0).component_count(), 2);
        let h = hopf();
        let s = h.smoothed(0);
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.crossing_count(), 1);
        assert!(s.is_planar());
    }

    #[test]
    fn reductions() {
        let k = trefoil().r1_add((0, 2), -1, false);
        assert_eq!(k.crossing_count(), 4);
        assert!(k.find_r1().is_some());
        assert_eq!(k.simplified(), trefoil().simplified());
        let faces = trefoil().faces();
        assert_eq!(faces.len(), 5);
    }

    #[test]
    fn random_moves_stay_planar() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for start in [trefoil(), figure_eight(), hopf()] {
            let mut d = start;
            for _ in 0..200 {
                d = d.random_move(&mut rng);
                assert!(d.is_planar(), "{d:?}");
                if d.crossing_count() > 30 {
                    d = d.simplified();
                }
            }
        }
    }
}
