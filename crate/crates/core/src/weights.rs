//! Integer weight maps on `Γ̄(G)`: the base tables on `K6` / `K7` and their
//! pushforwards through ΔY-exchanges.

use std::collections::{BTreeMap, BTreeSet};

use crate::cycles::{enumerate_cycle_sets, phi_preimage, Cycle, CyclePair, CycleSet};
use crate::error::{parse_err, Error, Result};
use crate::family::Root;
use crate::graph::{delta_y, for_each_isomorphism, Graph, TriangleSite};

/// Which refined identity a weight map feeds: the `K6` form (constant −1)
/// or the `K7` form (constant −21).
pub type IdentityKind = Root;

impl Root {
    pub fn constant(&self) -> i64 {
        match self {
            Root::K6 => -1,
            Root::K7 => -21,
        }
    }
}

/// Sparse weight map; absent keys weigh zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    pub host_name: String,
    pub host: Graph,
    pub kind: IdentityKind,
    pub constant: i64,
    weights: BTreeMap<CycleSet, i64>,
}

impl WeightMap {
    pub fn get(&self, gamma: &CycleSet) -> i64 {
        self.weights.get(gamma).copied().unwrap_or(0)
    }

    pub fn get_cycle(&self, c: &Cycle) -> i64 {
        self.get(&CycleSet::Knot(c.clone()))
    }

    pub fn get_pair(&self, p: &CyclePair) -> i64 {
        self.get(&CycleSet::Link(p.clone()))
    }

    /// Nonzero entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&CycleSet, i64)> {
        self.weights.iter().map(|(k, &w)| (k, w))
    }

    pub fn nonzero_count(&self) -> usize {
        self.weights.len()
    }

    fn from_fn(
        host_name: &str,
        host: Graph,
        kind: IdentityKind,
        mut weigh: impl FnMut(&CycleSet) -> i64,
    ) -> Self {
        let weights = enumerate_cycle_sets(&host)
            .into_iter()
            .filter_map(|g| {
                let w = weigh(&g);
                (w != 0).then_some((g, w))
            })
            .collect();
        WeightMap {
            host_name: host_name.to_string(),
            host,
            kind,
            constant: kind.constant(),
            weights,
        }
    }

    /// Renames vertices through `map` (an isomorphism of the host).
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> WeightMap {
        let weights = self
            .weights
            .iter()
            .map(|(k, &w)| (relabel_set(k, map), w))
            .collect();
        WeightMap {
            host_name: self.host_name.clone(),
            host: self.host.relabel(map),
            kind: self.kind,
            constant: self.constant,
            weights,
        }
    }

    /// Text form: `weights <host> <kind> <constant>`, a `host` edge line,
    /// then one `key<TAB>weight` line per nonzero entry.
    pub fn to_text(&self) -> String {
        let mut s = format!("weights {} {} {}\n", self.host_name, self.kind, self.constant);
        let edges: Vec<String> = self.host.edges().map(|(a, b)| format!("{a}-{b}")).collect();
        s.push_str(&format!("host {}\n", edges.join(" ")));
        for (k, w) in &self.weights {
            s.push_str(&format!("{k}\t{w}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<WeightMap> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "weights" {
            return Err(parse_err(ln, "expected `weights <host> <kind> <constant>`"));
        }
        let kind: IdentityKind = h[2].parse().map_err(|e: Error| parse_err(ln, e.to_string()))?;
        let constant: i64 = h[3].parse().map_err(|_| parse_err(ln, "bad constant"))?;
        let (ln, host_line) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing host line"))?;
        let mut parts = host_line.split_whitespace();
        if parts.next() != Some("host") {
            return Err(parse_err(ln, "expected `host` line"));
        }
        let edges = parts
            .map(|e| {
                let (a, b) = e.split_once('-').ok_or_else(|| parse_err(ln, "bad edge"))?;
                Ok((
                    a.parse().map_err(|_| parse_err(ln, "bad edge"))?,
                    b.parse().map_err(|_| parse_err(ln, "bad edge"))?,
                ))
            })
            .collect::<Result<Vec<(u32, u32)>>>()?;
        let host = Graph::from_edges(edges).map_err(|e| parse_err(ln, e.to_string()))?;
        let mut weights = BTreeMap::new();
        for (ln, line) in lines {
            let (k, w) = line
                .split_once('\t')
                .ok_or_else(|| parse_err(ln, "expected `key<TAB>weight`"))?;
            let key: CycleSet = k.parse().map_err(|e: Error| parse_err(ln, e.to_string()))?;
            if !key.is_in(&host) {
                return Err(parse_err(ln, format!("{key} is not in the host graph")));
            }
            let w: i64 = w.trim().parse().map_err(|_| parse_err(ln, "bad weight"))?;
            if w != 0 {
                weights.insert(key, w);
            }
        }
        Ok(WeightMap {
            host_name: h[1].to_string(),
            host,
            kind,
            constant,
            weights,
        })
    }
}

fn relabel_set(s: &CycleSet, map: &BTreeMap<u32, u32>) -> CycleSet {
    let rc = |c: &Cycle| Cycle::new(c.vertices().iter().map(|v| map[v]).collect()).unwrap();
    match s {
        CycleSet::Knot(c) => CycleSet::Knot(rc(c)),
        CycleSet::Link(p) => CycleSet::Link(CyclePair::new(rc(p.first()), rc(p.second())).unwrap()),
    }
}

/// ω on `Γ̄(K6)`: 1 on Hamiltonian cycles and disjoint pairs, −1 on 5-cycles.
pub fn base_weights_k6() -> WeightMap {
    WeightMap::from_fn("K6", Root::K6.graph(), Root::K6, |g| match g {
        CycleSet::Knot(c) if c.len() == 6 => 1,
        CycleSet::Knot(c) if c.len() == 5 => -1,
        CycleSet::Link(_) => 1,
        _ => 0,
    })
}

/// ω on `Γ̄(K7)`: 7 / −6 / −2 on 7- / 6- / 5-cycles, 1 on (4,3) pairs.
pub fn base_weights_k7() -> WeightMap {
    WeightMap::from_fn("K7", Root::K7.graph(), Root::K7, |g| match g {
        CycleSet::Knot(c) => match c.len() {
            7 => 7,
            6 => -6,
            5 => -2,
            _ => 0,
        },
        CycleSet::Link(p) if p.kind() == (4, 3) => 1,
        _ => 0,
    })
}

pub fn base_weights(root: Root) -> WeightMap {
    match root {
        Root::K6 => base_weights_k6(),
        Root::K7 => base_weights_k7(),
    }
}

/// `ω̃(γ) = Σ_{γ' ∈ Φ̄⁻¹(γ)} ω(γ')` on `Γ̄(G_Y)`.
pub fn pushforward(w: &WeightMap, site: &TriangleSite) -> Result<WeightMap> {
    let (gy, _) = delta_y(&w.host, site)?;
    let mut err = None;
    let mut out = WeightMap::from_fn(&w.host_name, gy, w.kind, |g| {
        match phi_preimage(&w.host, site, g) {
            Ok(pre) => pre.iter().map(|p| w.get(p)).sum(),
            Err(e) => {
                err.get_or_insert(e);
                0
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    out.constant = w.constant;
    out.host_name = format!("{}+{}", w.host_name, site);
    Ok(out)
}

/// Iterated pushforward of the base table of `root` along `sequence`.
pub fn derive_weights(root: Root, sequence: &[TriangleSite]) -> Result<WeightMap> {
    let mut w = base_weights(root);
    for (i, site) in sequence.iter().enumerate() {
        w = pushforward(&w, site).map_err(|e| Error::Replay {
            step: i,
            source: Box::new(e),
        })?;
    }
    if !sequence.is_empty() {
        w.host_name = format!("{root}+{}", sequence.len());
    }
    Ok(w)
}

/// Cycles of odd weight; for K7-type maps these carry the Arf parity identity.
pub fn arf_support(w: &WeightMap) -> Result<BTreeSet<Cycle>> {
    if w.kind != Root::K7 {
        return Err(Error::KindMismatch("Arf support needs a K7-type weight map".into()));
    }
    Ok(w
        .iter()
        .filter_map(|(g, v)| match g {
            CycleSet::Knot(c) if v % 2 != 0 => Some(c.clone()),
            _ => None,
        })
        .collect())
}

/// True when some isomorphism between the hosts carries one table onto the other.
pub fn agree_up_to_isomorphism(a: &WeightMap, b: &WeightMap) -> bool {
    if a.kind != b.kind || a.constant != b.constant || a.nonzero_count() != b.nonzero_count() {
        return false;
    }
    let mut agree = false;
    for_each_isomorphism(&a.host, &b.host, |m| {
        agree = a.weights.iter().all(|(k, &w)| b.get(&relabel_set(k, m)) == w);
        !agree
    });
    agree
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_k6_values() {
        let w = base_weights_k6();
        assert_eq!(w.constant, -1);
        assert_eq!(w.get(&"0-1-2-3-4-5".parse().unwrap()), 1);
        assert_eq!(w.get(&"0-1-2-3-4".parse().unwrap()), -1);
        assert_eq!(w.get(&"0-1-2-3".parse().unwrap()), 0);
        assert_eq!(w.get(&"0-1-2".parse().unwrap()), 0);
        assert_eq!(w.get(&"0-1-2|3-4-5".parse().unwrap()), 1);
    }

    #[test]
    fn base_k7_values() {
        let w = base_weights_k7();
        assert_eq!(w.constant, -21);
        assert_eq!(w.get(&"0-1-2-3-4-5-6".parse().unwrap()), 7);
        assert_eq!(w.get(&"0-1-2-3-4-5".parse().unwrap()), -6);
        assert_eq!(w.get(&"0-1-2-3-4".parse().unwrap()), -2);
        assert_eq!(w.get(&"0-1-2-3|4-5-6".parse().unwrap()), 1);
        assert_eq!(w.get(&"0-1-2|4-5-6".parse().unwrap()), 0);
    }

    #[test]
    fn arf_support_base_and_errors() {
        let w = base_weights_k7();
        let s = arf_support(&w).unwrap();
        assert_eq!(s.len(), 360);
        assert!(s.iter().all(|c| c.len() == 7));
        assert!(arf_support(&base_weights_k6()).is_err());
        let mut even = w.clone();
        even.weights.retain(|_, v| *v % 2 == 0);
        assert!(arf_support(&even).unwrap().is_empty());
    }

    #[test]
    fn derive_reports_bad_step() {
        let seq = [TriangleSite::new(0, 1, 2), TriangleSite::new(0, 1, 2)];
        match derive_weights(Root::K6, &seq) {
            Err(Error::Replay { step: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(derive_weights(Root::K6, &[]).unwrap(), base_weights_k6());
    }

    #[test]
    fn text_round_trip() {
        let w = derive_weights(Root::K6, &[TriangleSite::new(1, 2, 4)]).unwrap();
        let back = WeightMap::parse(&w.to_text()).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn isomorphic_sequences_agree() {
        let a = derive_weights(Root::K6, &[TriangleSite::new(0, 1, 2)]).unwrap();
        let b = derive_weights(Root::K6, &[TriangleSite::new(2, 3, 5)]).unwrap();
        assert!(agree_up_to_isomorphism(&a, &b));
        assert!(!agree_up_to_isomorphism(&a, &base_weights_k6()));
    }
}
