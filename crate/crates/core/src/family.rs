//! Isomorphism-reduced closure of a root graph under ΔY (and optionally YΔ)
//! exchanges, with one replayable witnessing sequence per member.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalCertificate};
use crate::error::{Error, Result};
use crate::graph::{complete_graph, delta_y, y_delta, Graph, TriangleSite};

/// One exchange in a witnessing sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    DeltaY(TriangleSite),
    /// YΔ at the given degree-3 vertex.
    YDelta(u32),
}

impl Step {
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match self {
            Step::DeltaY(t) => delta_y(g, t).map(|(h, _)| h),
            Step::YDelta(x) => y_delta(g, &g.wye_site(*x)?),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::DeltaY(t) => write!(f, "{t}"),
            Step::YDelta(x) => write!(f, "y{x}"),
        }
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGraph(format!("bad step `{s}`"));
        if let Some(x) = s.strip_prefix('y') {
            return x.parse().map(Step::YDelta).map_err(|_| bad());
        }
        let parts: Vec<u32> = s
            .split('-')
            .map(|p| p.trim().parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match parts[..] {
            [a, b, c] => Ok(Step::DeltaY(TriangleSite::new(a, b, c))),
            _ => Err(bad()),
        }
    }
}

/// Formats a sequence as comma-separated steps (`0-1-2,3-4-6`).
pub fn format_sequence(steps: &[Step]) -> String {
    steps.iter().map(Step::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_sequence(s: &str) -> Result<Vec<Step>> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// Replays `steps` from `root`, reporting the failing step index.
pub fn replay(root: &Graph, steps: &[Step]) -> Result<Graph> {
    let mut g = root.clone();
    for (i, s) in steps.iter().enumerate() {
        g = s.apply(&g).map_err(|e| Error::Replay {
            step: i,
            source: Box::new(e),
        })?;
    }
    Ok(g)
}

/// The two supported roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Root {
    K6,
    K7,
}

impl Root {
    pub fn graph(&self) -> Graph {
        complete_graph(self.order()).expect("order is positive")
    }

    pub fn order(&self) -> u32 {
        match self {
            Root::K6 => 6,
            Root::K7 => 7,
        }
    }

    fn prefix(&self) -> &'static str {
        match self {
            Root::K6 => "Q",
            Root::K7 => "H",
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}", self.order())
    }
}

impl FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K6" | "k6" => Ok(Root::K6),
            "K7" | "k7" => Ok(Root::K7),
            _ => Err(Error::InvalidGraph(format!("unsupported root `{s}` (expected K6 or K7)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub aliases: Vec<String>,
    /// Representative graph; replaying `sequence` from the root yields exactly it.
    pub graph: Graph,
    pub sequence: Vec<Step>,
    pub certificate: CanonicalCertificate,
    /// Reachable from the root by ΔY-exchanges alone.
    pub delta_y_reachable: bool,
}

#[derive(Clone, Debug)]
pub struct Family {
    pub root: Graph,
    pub members: Vec<Member>,
}

impl Family {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Looks a member up by name, alias, or certificate digest.
    pub fn find(&self, key: &str) -> Option<&Member> {
        self.members.iter().find(|m| {
            m.name == key || m.aliases.iter().any(|a| a == key) || m.certificate.hex() == key
        })
    }

    pub fn delta_y_members(&self) -> impl Iterator<Item = &Member> {
        self.members.iter().filter(|m| m.delta_y_reachable)
    }
}

struct Found {
    graph: Graph,
    sequence: Vec<Step>,
    cert: CanonicalCertificate,
}

fn bfs(start: Vec<Found>, allow_ydelta: bool) -> Vec<Found> {
    let mut seen: BTreeMap<CanonicalCertificate, usize> = BTreeMap::new();
    let mut out: Vec<Found> = Vec::new();
    let mut queue = VecDeque::new();
    for f in start {
        seen.insert(f.cert.clone(), out.len());
        queue.push_back(out.len());
        out.push(f);
    }
    while let Some(i) = queue.pop_front() {
        let g = out[i].graph.clone();
        let mut steps: Vec<Step> = g.triangles().into_iter().map(Step::DeltaY).collect();
        if allow_ydelta {
            steps.extend(g.wye_sites().into_iter().map(|s| Step::YDelta(s.x)));
        }
        for step in steps {
            let Ok(h) = step.apply(&g) else { continue };
            let cert = canonical_form(&h);
            if seen.contains_key(&cert) {
                continue;
            }
            let mut sequence = out[i].sequence.clone();
            sequence.push(step);
            seen.insert(cert.clone(), out.len());
            queue.push_back(out.len());
            out.push(Found {
                graph: h,
                sequence,
                cert,
            });
        }
    }
    out
}

/// Breadth-first closure of `root` under ΔY (and YΔ when `include_ydelta`),
/// deduplicated by canonical form.
pub fn family_closure(root: &Graph, include_ydelta: bool) -> Family {
    let start = Found {
        graph: root.clone(),
        sequence: Vec::new(),
        cert: canonical_form(root),
    };
    let dy = bfs(vec![start], false);
    let n_dy = dy.len();
    let all = if include_ydelta { bfs(dy, true) } else { dy };
    let members = all
        .into_iter()
        .enumerate()
        .map(|(i, f)| Member {
            name: String::new(),
            aliases: Vec::new(),
            graph: f.graph,
            sequence: f.sequence,
            certificate: f.cert,
            delta_y_reachable: i < n_dy,
        })
        .collect();
    Family {
        root: root.clone(),
        members,
    }
}

/// Family of K6 or K7 with stable member names: the root keeps its name, the
/// other ΔY members are `Q<n>` (K6) or `H<n>` (K7), suffixed `a`, `b`, ... in
/// discovery order when several share an order; YΔ-only members get an `X`
/// after the prefix.
pub fn named_family(root: Root, include_ydelta: bool) -> Family {
    let mut fam = family_closure(&root.graph(), include_ydelta);
    let mut by_group: BTreeMap<(bool, usize), Vec<usize>> = BTreeMap::new();
    for (i, m) in fam.members.iter().enumerate() {
        by_group
            .entry((m.delta_y_reachable, m.graph.vertex_count()))
            .or_default()
            .push(i);
    }
    for ((dy, n), idxs) in by_group {
        for (k, &i) in idxs.iter().enumerate() {
            let suffix = if idxs.len() > 1 {
                ((b'a' + k as u8) as char).to_string()
            } else {
                String::new()
            };
            let name = if i == 0 {
                root.to_string()
            } else if dy {
                format!("{}{}{}", root.prefix(), n, suffix)
            } else {
                format!("{}X{}{}", root.prefix(), n, suffix)
            };
            fam.members[i].name = name;
        }
    }
    let known = known_graphs();
    for m in &mut fam.members {
        for (alias, cert) in &known {
            if *cert == m.certificate {
                m.aliases.push(alias.to_string());
            }
        }
    }
    fam
}

/// Structurally identified members (aliases are attached only on certificate match).
fn known_graphs() -> Vec<(&'static str, CanonicalCertificate)> {
    let petersen = Graph::from_edges(
        (0..5u32)
            .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)])
            .map(|(a, b)| (a.min(b), a.max(b))),
    )
    .unwrap();
    let heawood = Graph::from_edges((0..14u32).flat_map(|i| {
        let mut e = vec![(i, (i + 1) % 14)];
        if i % 2 == 0 {
            e.push((i, (i + 5) % 14));
        }
        e
    }))
    .unwrap();
    let k331 = Graph::from_edges(
        (0..7u32)
            .flat_map(|a| (a + 1..7).map(move |b| (a, b)))
            .filter(|&(a, b)| a == 6 || b == 6 || a / 3 != b / 3),
    )
    .unwrap();
    let k44e = Graph::from_edges(
        (0..4u32)
            .flat_map(|a| (4..8u32).map(move |b| (a, b)))
            .filter(|&e| e != (0, 4)),
    )
    .unwrap();
    vec![
        ("Petersen", canonical_form(&petersen)),
        ("Heawood", canonical_form(&heawood)),
        ("K331", canonical_form(&k331)),
        ("K44-e", canonical_form(&k44e)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_parsing() {
        let seq = parse_sequence("0-2-1,y6").unwrap();
        assert_eq!(seq, vec![Step::DeltaY(TriangleSite::new(0, 1, 2)), Step::YDelta(6)]);
        assert_eq!(format_sequence(&seq), "0-1-2,y6");
        assert!(parse_sequence("0-1").is_err());
        assert!(parse_sequence("").unwrap().is_empty());
    }

    #[test]
    fn replay_reports_step() {
        let k6 = Root::K6.graph();
        let seq = parse_sequence("0-1-2,0-1-2").unwrap();
        match replay(&k6, &seq) {
            Err(Error::Replay { step, .. }) => assert_eq!(step, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn petersen_family_sizes_and_names() {
        let fam = named_family(Root::K6, false);
        assert_eq!(fam.len(), 6);
        assert_eq!(fam.members[0].name, "K6");
        let q7 = fam.find("Q7").unwrap();
        assert_eq!(q7.sequence.len(), 1);
        assert!(fam.find("Petersen").is_some());
        assert!(fam.find("K44-e").is_some());
        for m in &fam.members {
            assert_eq!(replay(&fam.root, &m.sequence).unwrap(), m.graph);
            assert_eq!(m.graph.edge_count(), 15);
        }
        let full = named_family(Root::K6, true);
        assert_eq!(full.len(), 7);
        assert!(full.find("K331").is_some_and(|m| !m.delta_y_reachable));
        assert_eq!(full.find("QX7").unwrap().aliases, vec!["K331".to_string()]);
    }
}
