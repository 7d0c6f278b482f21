//! Piecewise-linear spatial embeddings with exact rational coordinates,
//! their projections to link diagrams, and contraction of a Y to a
//! triangle bounding a disk.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycles::CycleSet;
use crate::diagram::{LinkDiagram, Visit};
use crate::error::{parse_err, Error, Result};
use crate::geometry::{
    crossing_params_2d, fmt_q, orient2d, orient3d, overlap_beyond_shared, parse_q, q, q_frac,
    segments_meet_3d, triangle_meets_segment, Point2, Point3, Q,
};
use crate::graph::{y_delta, Graph, WyeSite};

/// Side length of the box random vertices are drawn from.
pub const BOX: i64 = 1 << 16;
pub const MAX_RETRIES: usize = 100;

/// An endpoint of a segment: a graph vertex or the `i`th bend of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Vertex(u32),
    Bend((u32, u32), usize),
}

#[derive(Clone, Debug)]
struct Segment {
    edge: (u32, u32),
    p: Point3,
    q: Point3,
    ends: [Node; 2],
}

/// A spatial embedding: a point per vertex and, per edge `(a, b)` with
/// `a < b`, the interior bend points listed from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLEmbedding {
    graph: Graph,
    points: BTreeMap<u32, Point3>,
    bends: BTreeMap<(u32, u32), Vec<Point3>>,
}

fn key(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

impl PLEmbedding {
    pub fn new(
        graph: Graph,
        points: BTreeMap<u32, Point3>,
        bends: BTreeMap<(u32, u32), Vec<Point3>>,
    ) -> Result<Self> {
        let emb = PLEmbedding {
            graph,
            points,
            bends: bends.into_iter().filter(|(_, b)| !b.is_empty()).collect(),
        };
        emb.validate()?;
        Ok(emb)
    }

    /// Straight-edge embedding.
    pub fn straight(graph: Graph, points: BTreeMap<u32, Point3>) -> Result<Self> {
        Self::new(graph, points, BTreeMap::new())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn point(&self, v: u32) -> &Point3 {
        &self.points[&v]
    }

    pub fn bends(&self, a: u32, b: u32) -> &[Point3] {
        self.bends.get(&key(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Polyline of edge `ab` traversed from `a` to `b`.
    pub fn polyline(&self, a: u32, b: u32) -> Vec<Point3> {
        let mut pts = vec![self.points[&a.min(b)].clone()];
        pts.extend(self.bends(a, b).iter().cloned());
        pts.push(self.points[&a.max(b)].clone());
        if a > b {
            pts.reverse();
        }
        pts
    }

    /// Segments in edge order; within an edge, from the smaller endpoint.
    fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        for (a, b) in self.graph.edges() {
            let pts = self.polyline(a, b);
            let k = pts.len() - 1;
            for i in 0..k {
                let start = if i == 0 { Node::Vertex(a) } else { Node::Bend((a, b), i - 1) };
                let end = if i + 1 == k { Node::Vertex(b) } else { Node::Bend((a, b), i) };
                out.push(Segment {
                    edge: (a, b),
                    p: pts[i].clone(),
                    q: pts[i + 1].clone(),
                    ends: [start, end],
                });
            }
        }
        out
    }

    /// Exact check that edges meet only at shared endpoints.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidEmbedding(m));
        for v in self.graph.vertices() {
            if !self.points.contains_key(&v) {
                return bad(format!("vertex {v} has no position"));
            }
        }
        if self.points.len() != self.graph.vertex_count() {
            return bad("positions given for vertices outside the graph".into());
        }
        for &(a, b) in self.bends.keys() {
            if !self.graph.has_edge(a, b) {
                return bad(format!("bend on non-edge {a}-{b}"));
            }
        }
        let distinct: BTreeSet<&Point3> = self.points.values().collect();
        if distinct.len() != self.points.len() {
            return bad("two vertices share a position".into());
        }
        let segs = self.segments();
        for s in &segs {
            if s.p == s.q {
                return bad(format!("degenerate segment on edge {}-{}", s.edge.0, s.edge.1));
            }
        }
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                if segments_conflict(&segs[i], &segs[j]) {
                    let (e, f) = (segs[i].edge, segs[j].edge);
                    return bad(format!("edges {}-{} and {}-{} intersect", e.0, e.1, f.0, f.1));
                }
            }
        }
        for v in self.graph.vertices().filter(|&v| self.graph.degree(v) == 0) {
            let p = &self.points[&v];
            if segs.iter().any(|s| segments_meet_3d(&s.p, &s.q, p, p)) {
                return bad(format!("isolated vertex {v} lies on an edge"));
            }
        }
        Ok(())
    }

    /// Seeded placement of the vertices at integer points in `[0, BOX)^3`
    /// with straight edges, resampled until valid.
    pub fn random(graph: &Graph, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MAX_RETRIES {
            let points = graph
                .vertices()
                .map(|v| {
                    let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(0..BOX));
                    (v, Point3::from_ints(c[0], c[1], c[2]))
                })
                .collect();
            if let Ok(e) = Self::straight(graph.clone(), points) {
                return Ok(e);
            }
        }
        Err(Error::GeneralPosition(MAX_RETRIES))
    }

    /// Applies a vertex relabeling (used to transport embeddings along
    /// graph isomorphisms).
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Result<Self> {
        let graph = self.graph.relabel(map);
        let points = self.points.iter().map(|(v, p)| (map[v], p.clone())).collect();
        let bends = self
            .bends
            .iter()
            .map(|(&(a, b), pts)| {
                let (x, y) = (map[&a], map[&b]);
                let mut pts = pts.clone();
                if x > y {
                    pts.reverse();
                }
                (key(x, y), pts)
            })
            .collect();
        Self::new(graph, points, bends)
    }

    pub fn to_text(&self, name: &str, seed: u64) -> String {
        let mut s = format!("embedding {name} {seed}\n");
        for (v, p) in &self.points {
            let _ = writeln!(s, "v {v} {} {} {}", fmt_q(&p.0[0]), fmt_q(&p.0[1]), fmt_q(&p.0[2]));
        }
        for (a, b) in self.graph.edges() {
            let _ = writeln!(s, "edge {a} {b}");
        }
        for (&(a, b), pts) in &self.bends {
            let _ = write!(s, "bend {a} {b}");
            for p in pts {
                let _ = write!(s, " {} {} {}", fmt_q(&p.0[0]), fmt_q(&p.0[1]), fmt_q(&p.0[2]));
            }
            s.push('\n');
        }
        s
    }

    /// Parses the text form, returning `(name, seed, embedding)`.
    pub fn parse(text: &str) -> Result<(String, u64, PLEmbedding)> {
        let mut header = None;
        let mut points = BTreeMap::new();
        let mut edges = Vec::new();
        let mut vertices = Vec::new();
        let mut bends = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() || toks[0].starts_with('#') {
                continue;
            }
            let label = |t: &str| t.parse::<u32>().map_err(|_| parse_err(ln, format!("bad label `{t}`")));
            let coord = |t: &str| parse_q(t).ok_or_else(|| parse_err(ln, format!("bad coordinate `{t}`")));
            match toks[0] {
                "embedding" => {
                    if toks.len() != 3 {
                        return Err(parse_err(ln, "expected `embedding <name> <seed>`"));
                    }
                    let seed = toks[2].parse().map_err(|_| parse_err(ln, "bad seed"))?;
                    header = Some((toks[1].to_string(), seed));
                }
                "v" => {
                    if toks.len() != 5 {
                        return Err(parse_err(ln, "expected `v <label> x y z`"));
                    }
                    let v = label(toks[1])?;
                    let p = Point3([coord(toks[2])?, coord(toks[3])?, coord(toks[4])?]);
                    if points.insert(v, p).is_some() {
                        return Err(parse_err(ln, format!("vertex {v} given twice")));
                    }
                    vertices.push(v);
                }
                "edge" => {
                    if toks.len() != 3 {
                        return Err(parse_err(ln, "expected `edge <u> <v>`"));
                    }
                    edges.push((label(toks[1])?, label(toks[2])?));
                }
                "bend" => {
                    if toks.len() < 6 || !(toks.len() - 3).is_multiple_of(3) {
                        return Err(parse_err(ln, "expected `bend <u> <v>` then coordinate triples"));
                    }
                    let (a, b) = (label(toks[1])?, label(toks[2])?);
                    let mut pts = toks[3..]
                        .chunks(3)
                        .map(|c| Ok(Point3([coord(c[0])?, coord(c[1])?, coord(c[2])?])))
                        .collect::<Result<Vec<_>>>()?;
                    if a > b {
                        pts.reverse();
                    }
                    bends.insert(key(a, b), pts);
                }
                other => return Err(parse_err(ln, format!("unknown record `{other}`"))),
            }
        }
        let (name, seed) = header.ok_or_else(|| parse_err(1, "missing `embedding` header"))?;
        let graph = Graph::from_parts(vertices, edges)?;
        Ok((name, seed, PLEmbedding::new(graph, points, bends)?))
    }
}

/// Segments may share an endpoint only if it is the same node (a shared
/// vertex or consecutive segments of one edge), and then only that point.
fn segments_conflict(s: &Segment, t: &Segment) -> bool {
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        if s.ends[i] == t.ends[j] {
            let shared = if i == 0 { &s.p } else { &s.q };
            let a = if i == 0 { &s.q } else { &s.p };
            let b = if j == 0 { &t.q } else { &t.p };
            return overlap_beyond_shared(shared, a, b);
        }
    }
    segments_meet_3d(&s.p, &s.q, &t.p, &t.q)
}

// ---- projection --------------------------------------------------------

/// One crossing of the projected embedding between segments `over` and
/// `under`; `sign` refers to the segments' stored directions.
#[derive(Clone, Debug)]
struct EdgeCrossing {
    over: usize,
    under: usize,
    sign: i8,
}

/// Projection along `(-a, -b, 1)` onto the plane, viewed from above: the
/// point `(x, y, z)` maps to `(x + a z, y + b z)` and larger `z` is over.
#[derive(Clone, Debug)]
pub struct Projection {
    pub a: Q,
    pub b: Q,
    segments: Vec<Segment>,
    crossings: Vec<EdgeCrossing>,
    /// Per segment, crossings as `(parameter, crossing index)` sorted along
    /// the segment.
    along: Vec<Vec<(Q, usize)>>,
}

impl Projection {
    /// Projects along the given direction, failing if it is not generic.
    pub fn with_direction(emb: &PLEmbedding, a: Q, b: Q) -> Result<Projection> {
        let segments = emb.segments();
        let flat = |p: &Point3| Point2(&p.0[0] + &a * &p.0[2], &p.0[1] + &b * &p.0[2]);
        let flats: Vec<(Point2, Point2)> = segments.iter().map(|s| (flat(&s.p), flat(&s.q))).collect();
        let degenerate = Err(Error::NoGenericDirection);
        for (p, q) in &flats {
            if p == q {
                return degenerate;
            }
        }
        let mut crossings = Vec::new();
        let mut along = vec![Vec::new(); segments.len()];
        let mut places = BTreeSet::new();
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                let (s, t) = (&segments[i], &segments[j]);
                let (sp, sq) = &flats[i];
                let (tp, tq) = &flats[j];
                if let Some((ei, ej)) = shared_end(s, t) {
                    let shared = if ei == 0 { sp } else { sq };
                    let x = if ei == 0 { sq } else { sp };
                    let y = if ej == 0 { tq } else { tp };
                    let (u, v) = (x.sub(shared), y.sub(shared));
                    if u.cross(&v).is_zero() && u.dot(&v).is_positive() {
                        return degenerate;
                    }
                    continue;
                }
                let (ti, tj) = match crossing_params_2d(sp, sq, tp, tq) {
                    Err(_) => return degenerate,
                    Ok(None) => continue,
                    Ok(Some(params)) => params,
                };
                let zi = &s.p.0[2] + (&s.q.0[2] - &s.p.0[2]) * &ti;
                let zj = &t.p.0[2] + (&t.q.0[2] - &t.p.0[2]) * &tj;
                if zi == zj {
                    return degenerate;
                }
                let at = (&sp.0 + (&sq.0 - &sp.0) * &ti, &sp.1 + (&sq.1 - &sp.1) * &ti);
                if !places.insert(at) {
                    return degenerate;
                }
                let (over, under) = if zi > zj { (i, j) } else { (j, i) };
                let (od, ud) = (
                    flats[over].1.sub(&flats[over].0),
                    flats[under].1.sub(&flats[under].0),
                );
                let sign = if od.cross(&ud).is_positive() { 1 } else { -1 };
                let id = crossings.len();
                crossings.push(EdgeCrossing { over, under, sign });
                along[i].push((ti, id));
                along[j].push((tj, id));
            }
        }
        for list in &mut along {
            list.sort();
        }
        Ok(Projection {
            a,
            b,
            segments,
            crossings,
            along,
        })
    }

    /// Searches for a generic direction starting from straight down, then
    /// trying seeded small perturbations.
    pub fn find(emb: &PLEmbedding) -> Result<Projection> {
        if let Ok(p) = Self::with_direction(emb, q(0), q(0)) {
            return Ok(p);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..64 {
            let a = q_frac(rng.gen_range(-1000..=1000), 4096);
            let b = q_frac(rng.gen_range(-1000..=1000), 4096);
            if let Ok(p) = Self::with_direction(emb, a, b) {
                return Ok(p);
            }
        }
        Err(Error::NoGenericDirection)
    }

    /// Number of crossings in the full projected graph.
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Diagram of the knot or link traced by the cycles of `gamma`, each
    /// component oriented along its stored vertex order.
    pub fn diagram(&self, gamma: &CycleSet) -> Result<LinkDiagram> {
        let comps: Vec<Vec<u32>> = gamma.components().iter().map(|c| c.vertices().to_vec()).collect();
        self.diagram_of(&comps)
            .map_err(|_| Error::NotACycleSet(gamma.to_string()))
    }

    /// Diagram of closed vertex walks given as vertex sequences, each
    /// oriented in the order given. The walks must use disjoint edges.
    pub fn diagram_of(&self, walks: &[Vec<u32>]) -> Result<LinkDiagram> {
        let steps = |w: &Vec<u32>| -> Vec<(u32, u32)> {
            (0..w.len()).map(|i| (w[i], w[(i + 1) % w.len()])).collect()
        };
        // edge -> traversed from smaller to larger endpoint
        let mut used: HashMap<(u32, u32), bool> = HashMap::new();
        for w in walks {
            for (a, b) in steps(w) {
                if used.insert(key(a, b), a < b).is_some() {
                    return Err(Error::NotACycleSet(format!("edge {a}-{b} used twice")));
                }
            }
        }
        let mut seg_ranges: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
        for (i, s) in self.segments.iter().enumerate() {
            seg_ranges.entry(s.edge).or_default().push(i);
        }
        for e in used.keys() {
            if !seg_ranges.contains_key(e) {
                return Err(Error::NotACycleSet(format!("{}-{} is not an edge", e.0, e.1)));
            }
        }
        let mut local: HashMap<usize, usize> = HashMap::new();
        let mut signs = Vec::new();
        let mut comps = Vec::new();
        for w in walks {
            let mut comp = Vec::new();
            for (a, b) in steps(w) {
                let forward = a < b;
                let mut segs = seg_ranges[&key(a, b)].clone();
                if !forward {
                    segs.reverse();
                }
                for si in segs {
                    let mut list: Vec<usize> = self.along[si].iter().map(|&(_, id)| id).collect();
                    if !forward {
                        list.reverse();
                    }
                    for id in list {
                        let x = &self.crossings[id];
                        let other = if x.over == si { x.under } else { x.over };
                        let Some(&other_fwd) = used.get(&self.segments[other].edge) else {
                            continue;
                        };
                        let n = local.len();
                        let lid = *local.entry(id).or_insert_with(|| {
                            let this_fwd = forward;
                            let flip = this_fwd != other_fwd;
                            signs.push(if flip { -x.sign } else { x.sign });
                            n
                        });
                        comp.push(Visit {
                            crossing: lid,
                            over: x.over == si,
                        });
                    }
                }
            }
            comps.push(comp);
        }
        LinkDiagram::new(signs, comps)
    }
}

fn shared_end(s: &Segment, t: &Segment) -> Option<(usize, usize)> {
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        if s.ends[i] == t.ends[j] {
            return Some((i, j));
        }
    }
    None
}

/// Diagram of `gamma` under the default generic projection.
pub fn project(emb: &PLEmbedding, gamma: &CycleSet) -> Result<LinkDiagram> {
    Projection::find(emb)?.diagram(gamma)
}

// ---- Y contraction ------------------------------------------------------

pub const MAX_HALVINGS: usize = 60;

/// Replaces the Y at `site` by a triangle running close to it: edge `uv`
/// becomes `u -> x + ε((u-x) + (v-x)) -> v`, and likewise for `vw`, `wu`.
/// The fan of six thin triangles from `x` to the new triangle is a disk
/// containing the Y; ε is halved until that disk is certified to meet the
/// rest of the embedding only at `u`, `v`, `w`.
pub fn contract_y(emb: &PLEmbedding, site: &WyeSite) -> Result<PLEmbedding> {
    let g = emb.graph();
    let actual = g.wye_site(site.x)?;
    if actual != *site {
        return Err(Error::Contraction(format!("{} is not the neighbourhood of {}", site.triangle(), site.x)));
    }
    let (x, u, v, w) = (site.x, site.u, site.v, site.w);
    for n in [u, v, w] {
        if !emb.bends(x, n).is_empty() {
            return Err(Error::Contraction(format!("edge {x}-{n} is not straight")));
        }
    }
    let g_delta = y_delta(g, site)?;
    let px = emb.point(x).clone();
    let [pu, pv, pw] = [u, v, w].map(|n| emb.point(n).clone());
    if orient3d(&px, &pu, &pv, &pw) == 0 {
        return Err(Error::Contraction("x, u, v, w are coplanar".into()));
    }
    let others: Vec<Segment> = emb
        .segments()
        .into_iter()
        .filter(|s| s.edge.0 != x && s.edge.1 != x)
        .collect();
    let mut eps = q_frac(1, 4);
    for _ in 0..MAX_HALVINGS {
        let apex = |a: &Point3, b: &Point3| px.add(&a.sub(&px).add(&b.sub(&px)).scale(&eps));
        let tips = [
            (u, v, apex(&pu, &pv)),
            (v, w, apex(&pv, &pw)),
            (u, w, apex(&pu, &pw)),
        ];
        if fan_is_clear(emb, &px, &tips, &others) {
            let mut points = emb.points.clone();
            points.remove(&x);
            let mut bends: BTreeMap<(u32, u32), Vec<Point3>> = emb
                .bends
                .iter()
                .filter(|(e, _)| e.0 != x && e.1 != x)
                .map(|(e, b)| (*e, b.clone()))
                .collect();
            for (a, b, tip) in tips {
                bends.insert(key(a, b), vec![tip]);
            }
            if let Ok(out) = PLEmbedding::new(g_delta.clone(), points, bends) {
                return Ok(out);
            }
        }
        eps /= q(2);
    }
    Err(Error::Contraction(format!("no valid offset found at {x}")))
}

/// The six fan triangles `(x, a, tip)`, `(x, tip, b)` miss every other
/// segment, except that a segment ending at `a` or `b` may touch there
/// provided it leaves the triangle's plane immediately.
fn fan_is_clear(emb: &PLEmbedding, px: &Point3, tips: &[(u32, u32, Point3); 3], others: &[Segment]) -> bool {
    for (a, b, tip) in tips {
        for corner in [*a, *b] {
            let pc = emb.point(corner);
            for s in others {
                let touches = if s.ends[0] == Node::Vertex(corner) {
                    Some(&s.q)
                } else if s.ends[1] == Node::Vertex(corner) {
                    Some(&s.p)
                } else {
                    None
                };
                match touches {
                    Some(far) => {
                        if orient3d(px, pc, tip, far) == 0 {
                            return false;
                        }
                    }
                    None => {
                        if triangle_meets_segment(px, pc, tip, &s.p, &s.q) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Orientation of the projected triangle `abc` seen from above, for tests
/// that build explicit configurations.
pub fn planar_orientation(a: &Point3, b: &Point3, c: &Point3) -> i32 {
    let f = |p: &Point3| Point2(p.0[0].clone(), p.0[1].clone());
    orient2d(&f(a), &f(b), &f(c))
}
