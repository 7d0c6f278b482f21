//! Finite simple graphs with integer vertex labels, and the ΔY / YΔ exchanges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

/// A finite simple graph. Vertex labels are arbitrary `u32`s; edges are
/// unordered pairs stored as `(min, max)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: BTreeMap<u32, BTreeSet<u32>>,
}

/// A 3-cycle `u v w` of a host graph, stored with `u < v < w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TriangleSite {
    pub u: u32,
    pub v: u32,
    pub w: u32,
}

impl TriangleSite {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        let mut t = [a, b, c];
        t.sort_unstable();
        TriangleSite {
            u: t[0],
            v: t[1],
            w: t[2],
        }
    }

    pub fn vertices(&self) -> [u32; 3] {
        [self.u, self.v, self.w]
    }

    pub fn contains(&self, a: u32) -> bool {
        a == self.u || a == self.v || a == self.w
    }

    /// True when `{a, b}` is one of the three triangle edges.
    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        a != b && self.contains(a) && self.contains(b)
    }

    /// The triangle vertex that is neither `a` nor `b`.
    pub fn third(&self, a: u32, b: u32) -> u32 {
        *self
            .vertices()
            .iter()
            .find(|&&t| t != a && t != b)
            .expect("a and b are distinct triangle vertices")
    }
}

impl fmt::Display for TriangleSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.u, self.v, self.w)
    }
}

/// A degree-3 vertex `x` together with its neighbours `u < v < w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WyeSite {
    pub x: u32,
    pub u: u32,
    pub v: u32,
    pub w: u32,
}

impl WyeSite {
    pub fn triangle(&self) -> TriangleSite {
        TriangleSite::new(self.u, self.v, self.w)
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Builds a graph from explicit vertices and edges, rejecting loops,
    /// repeated edges and edges with unknown endpoints.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = u32>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let mut g = Graph::new();
        for v in vertices {
            if g.adj.insert(v, BTreeSet::new()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v}")));
            }
        }
        for (a, b) in edges {
            g.insert_edge(a, b)?;
        }
        Ok(g)
    }

    /// Builds a graph whose vertex set is exactly the set of edge endpoints.
    pub fn from_edges(edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let edges: Vec<_> = edges.into_iter().collect();
        let verts: BTreeSet<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Graph::from_parts(verts, edges)
    }

    fn insert_edge(&mut self, a: u32, b: u32) -> Result<()> {
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop at {a}")));
        }
        if !self.adj.contains_key(&a) || !self.adj.contains_key(&b) {
            return Err(Error::InvalidGraph(format!("edge {a}-{b} has an unknown endpoint")));
        }
        if !self.adj.get_mut(&a).unwrap().insert(b) {
            return Err(Error::InvalidGraph(format!("repeated edge {a}-{b}")));
        }
        self.adj.get_mut(&b).unwrap().insert(a);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.adj.keys().copied()
    }

    /// Edges as `(a, b)` with `a < b`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&a, ns)| ns.range(a + 1..).map(move |&b| (a, b)))
    }

    pub fn has_vertex(&self, v: u32) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj.get(&v).map_or(0, |n| n.len())
    }

    pub fn max_label(&self) -> Option<u32> {
        self.adj.keys().next_back().copied()
    }

    pub fn is_triangle(&self, site: &TriangleSite) -> bool {
        site.u != site.v
            && site.v != site.w
            && self.has_edge(site.u, site.v)
            && self.has_edge(site.v, site.w)
            && self.has_edge(site.u, site.w)
    }

    /// All 3-cycles, ascending.
    pub fn triangles(&self) -> Vec<TriangleSite> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            for c in self.adj[&b].range(b + 1..) {
                if self.has_edge(a, *c) {
                    out.push(TriangleSite::new(a, b, *c));
                }
            }
        }
        out
    }

    /// All degree-3 vertices with their neighbourhoods, ascending by `x`.
    pub fn wye_sites(&self) -> Vec<WyeSite> {
        self.adj
            .iter()
            .filter(|(_, n)| n.len() == 3)
            .map(|(&x, n)| {
                let n: Vec<u32> = n.iter().copied().collect();
                WyeSite {
                    x,
                    u: n[0],
                    v: n[1],
                    w: n[2],
                }
            })
            .collect()
    }

    pub fn wye_site(&self, x: u32) -> Result<WyeSite> {
        let degree = self.degree(x);
        if !self.has_vertex(x) || degree != 3 {
            return Err(Error::NotAWye { vertex: x, degree });
        }
        let n: Vec<u32> = self.neighbors(x).collect();
        Ok(WyeSite {
            x,
            u: n[0],
            v: n[1],
            w: n[2],
        })
    }

    /// Returns a copy with vertices renamed through `map`, which must be
    /// injective on the vertex set.
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Graph {
        let verts = self.vertices().map(|v| map[&v]);
        let edges = self.edges().map(|(a, b)| (map[&a], map[&b]));
        Graph::from_parts(verts, edges).expect("relabeling map is injective")
    }

    /// Disjoint union; the vertices of `other` are shifted past `self`'s labels.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.max_label().map_or(0, |m| m + 1);
        let verts = self.vertices().chain(other.vertices().map(|v| v + shift));
        let edges = self
            .edges()
            .chain(other.edges().map(|(a, b)| (a + shift, b + shift)));
        Graph::from_parts(verts, edges).expect("shifted labels are fresh")
    }

    /// Text form: a `graph <name> <n>` header followed by one `u v` line per edge.
    pub fn to_text(&self, name: &str) -> String {
        let mut s = format!("graph {} {}\n", name, self.vertex_count());
        for (a, b) in self.edges() {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }

    /// Parses the text form. When every edge endpoint is below `n` the vertex
    /// set is `0..n`; otherwise it is the set of edge endpoints, which must
    /// then have exactly `n` elements.
    pub fn parse(text: &str) -> Result<(String, Graph)> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "graph" {
            return Err(parse_err(ln, "expected `graph <name> <nvertices>`"));
        }
        let name = parts[1].to_string();
        let n: u32 = parts[2]
            .parse()
            .map_err(|_| parse_err(ln, "bad vertex count"))?;
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let p: Vec<&str> = line.split_whitespace().collect();
            if p.len() != 2 {
                return Err(parse_err(ln, "expected `u v`"));
            }
            let a: u32 = p[0].parse().map_err(|_| parse_err(ln, "bad label"))?;
            let b: u32 = p[1].parse().map_err(|_| parse_err(ln, "bad label"))?;
            edges.push((a, b));
        }
        let endpoints: BTreeSet<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let verts: Vec<u32> = if endpoints.iter().all(|&v| v < n) {
            (0..n).collect()
        } else if endpoints.len() == n as usize {
            endpoints.into_iter().collect()
        } else {
            return Err(parse_err(ln, "vertex count does not match edge labels"));
        };
        let g = Graph::from_parts(verts, edges).map_err(|e| parse_err(ln, e.to_string()))?;
        Ok((name, g))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(
            f,
            "Graph(v={:?}, e=[{}])",
            self.vertices().collect::<Vec<_>>(),
            edges.join(" ")
        )
    }
}

/// The complete graph on vertices `0..n`.
pub fn complete_graph(n: u32) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyCompleteGraph);
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Graph::from_parts(0..n, edges)
}

/// ΔY-exchange: removes the triangle edges and joins a fresh vertex
/// (`max label + 1`) to its three corners. Returns the new graph and `x`.
pub fn delta_y(g: &Graph, site: &TriangleSite) -> Result<(Graph, u32)> {
    if !g.is_triangle(site) {
        return Err(Error::NotATriangle(site.u, site.v, site.w));
    }
    let x = g.max_label().map_or(0, |m| m + 1);
    let mut out = g.clone();
    for (a, b) in [(site.u, site.v), (site.v, site.w), (site.u, site.w)] {
        out.adj.get_mut(&a).unwrap().remove(&b);
        out.adj.get_mut(&b).unwrap().remove(&a);
    }
    out.adj.insert(x, BTreeSet::new());
    for a in site.vertices() {
        out.insert_edge(a, x)?;
    }
    Ok((out, x))
}

/// YΔ-exchange at a degree-3 vertex.
pub fn y_delta(g: &Graph, site: &WyeSite) -> Result<Graph> {
    let actual = g.wye_site(site.x)?;
    if actual.triangle() != site.triangle() {
        return Err(Error::InvalidGraph(format!(
            "vertex {} is not adjacent to {}",
            site.x,
            site.triangle()
        )));
    }
    let [u, v, w] = actual.triangle().vertices();
    for (a, b) in [(u, v), (v, w), (u, w)] {
        if g.has_edge(a, b) {
            return Err(Error::WouldCreateMultiEdge(a, b));
        }
    }
    let mut out = g.clone();
    for a in [u, v, w] {
        out.adj.get_mut(&a).unwrap().remove(&site.x);
    }
    out.adj.remove(&site.x);
    for (a, b) in [(u, v), (v, w), (u, w)] {
        out.insert_edge(a, b)?;
    }
    Ok(out)
}

/// Enumerates every isomorphism `g -> h` by plain backtracking and hands each
/// vertex map to `visit`; stops early when `visit` returns `false`.
pub fn for_each_isomorphism(
    g: &Graph,
    h: &Graph,
    mut visit: impl FnMut(&BTreeMap<u32, u32>) -> bool,
) {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return;
    }
    let mut gdeg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut hdeg: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
    gdeg.sort_unstable();
    hdeg.sort_unstable();
    if gdeg != hdeg {
        return;
    }
    let gv: Vec<u32> = g.vertices().collect();
    let hv: Vec<u32> = h.vertices().collect();
    let mut map = BTreeMap::new();
    let mut used = BTreeSet::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        g: &Graph,
        h: &Graph,
        gv: &[u32],
        hv: &[u32],
        map: &mut BTreeMap<u32, u32>,
        used: &mut BTreeSet<u32>,
        visit: &mut dyn FnMut(&BTreeMap<u32, u32>) -> bool,
    ) -> bool {
        if i == gv.len() {
            return visit(map);
        }
        let a = gv[i];
        for &b in hv {
            if used.contains(&b) || g.degree(a) != h.degree(b) {
                continue;
            }
            let consistent = map
                .iter()
                .all(|(&pa, &pb)| g.has_edge(a, pa) == h.has_edge(b, pb));
            if !consistent {
                continue;
            }
            map.insert(a, b);
            used.insert(b);
            let go_on = rec(i + 1, g, h, gv, hv, map, used, visit);
            map.remove(&a);
            used.remove(&b);
            if !go_on {
                return false;
            }
        }
        true
    }

    rec(0, g, h, &gv, &hv, &mut map, &mut used, &mut visit);
}

/// First isomorphism found by backtracking, if any.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<BTreeMap<u32, u32>> {
    let mut found = None;
    for_each_isomorphism(g, h, |m| {
        found = Some(m.clone());
        false
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_sizes() {
        let k6 = complete_graph(6).unwrap();
        assert_eq!((k6.vertex_count(), k6.edge_count()), (6, 15));
        let k7 = complete_graph(7).unwrap();
        assert_eq!((k7.vertex_count(), k7.edge_count()), (7, 21));
        let k1 = complete_graph(1).unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
        assert_eq!(complete_graph(0), Err(Error::EmptyCompleteGraph));
    }

    #[test]
    fn delta_y_counts() {
        for (n, e) in [(4u32, 6usize), (6, 15), (7, 21)] {
            let k = complete_graph(n).unwrap();
            for t in k.triangles() {
                let (g, x) = delta_y(&k, &t).unwrap();
                assert_eq!(x, n);
                assert_eq!(g.vertex_count(), n as usize + 1);
                assert_eq!(g.edge_count(), e);
                assert_eq!(g.degree(x), 3);
            }
        }
    }

    #[test]
    fn delta_y_rejects_non_triangle() {
        let k6 = complete_graph(6).unwrap();
        let (q7, _) = delta_y(&k6, &TriangleSite::new(0, 1, 2)).unwrap();
        let err = delta_y(&q7, &TriangleSite::new(0, 1, 2)).unwrap_err();
        assert!(err.to_string().contains("not a triangle"));
    }

    #[test]
    fn y_delta_inverts_delta_y() {
        let k6 = complete_graph(6).unwrap();
        let (q7, x) = delta_y(&k6, &TriangleSite::new(1, 3, 5)).unwrap();
        let site = q7.wye_site(x).unwrap();
        assert_eq!(y_delta(&q7, &site).unwrap(), k6);
    }

    #[test]
    fn y_delta_rejects_multi_edge() {
        // x = 3 joined to 0, 1, 2 with 0-1 already present.
        let g = Graph::from_edges([(0, 3), (1, 3), (2, 3), (0, 1)]).unwrap();
        let site = g.wye_site(3).unwrap();
        let err = y_delta(&g, &site).unwrap_err();
        assert!(err.to_string().contains("would create multi-edge"));
        let err = g.wye_site(0).unwrap_err();
        assert!(matches!(err, Error::NotAWye { degree: 2, .. }));
    }

    #[test]
    fn graph_invariants_enforced() {
        assert!(Graph::from_edges([(1, 1)]).is_err());
        assert!(Graph::from_edges([(1, 2), (2, 1)]).is_err());
        assert!(Graph::from_parts([0, 1], [(0, 2)]).is_err());
        assert!(Graph::from_parts([0, 0], []).is_err());
    }

    #[test]
    fn text_round_trip() {
        let k6 = complete_graph(6).unwrap();
        let (q7, _) = delta_y(&k6, &TriangleSite::new(0, 1, 2)).unwrap();
        let y = q7.wye_site(6).unwrap();
        let g = y_delta(&q7, &y).unwrap();
        let (name, back) = Graph::parse(&q7.to_text("Q7")).unwrap();
        assert_eq!(name, "Q7");
        assert_eq!(back, q7);
        let (_, back) = Graph::parse(&g.to_text("g")).unwrap();
        assert_eq!(back, g);
        // isolated vertices survive when labels are compact
        let iso = Graph::from_parts(0..3, [(0, 1)]).unwrap();
        assert_eq!(Graph::parse(&iso.to_text("i")).unwrap().1, iso);
        assert!(Graph::parse("graph a 2\n0 1\n5 6\n").is_err());
    }

    #[test]
    fn isomorphism_search() {
        let k6 = complete_graph(6).unwrap();
        let mut count = 0;
        for_each_isomorphism(&k6, &k6, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 720);
        let (a, _) = delta_y(&k6, &TriangleSite::new(0, 1, 2)).unwrap();
        let (b, _) = delta_y(&k6, &TriangleSite::new(2, 4, 5)).unwrap();
        assert!(find_isomorphism(&a, &b).is_some());
        assert!(find_isomorphism(&a, &k6).is_none());
    }
}
