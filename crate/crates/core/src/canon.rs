//! Canonical labeling for small graphs: equitable-partition refinement plus
//! exhaustive individualization, keeping the lexicographically least edge
//! code over all leaves of the search tree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Sorted edge list of a graph under its canonical relabeling `0..n`.
/// Two graphs have equal certificates iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCertificate {
    pub order: usize,
    pub edges: Vec<(u16, u16)>,
}

impl CanonicalCertificate {
    /// Compact hex digest of the upper-triangular adjacency bits.
    pub fn hex(&self) -> String {
        let n = self.order;
        let mut bits = vec![false; n * n.saturating_sub(1) / 2];
        let idx = |a: usize, b: usize| a * (2 * n - a - 1) / 2 + (b - a - 1);
        for &(a, b) in &self.edges {
            bits[idx(a as usize, b as usize)] = true;
        }
        let mut s = format!("{n}:");
        for chunk in bits.chunks(4) {
            let mut nib = 0u8;
            for (i, &b) in chunk.iter().enumerate() {
                if b {
                    nib |= 8 >> i;
                }
            }
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }
}

impl fmt::Debug for CanonicalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cert({})", self.hex())
    }
}

struct Dense {
    adj: Vec<Vec<bool>>,
}

type Partition = Vec<Vec<usize>>;

impl Dense {
    fn refine(&self, mut cells: Partition) -> Partition {
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < cells.len() {
                let splitter = cells[s].clone();
                let mut next = Vec::with_capacity(cells.len());
                for cell in cells.drain(..) {
                    if cell.len() == 1 {
                        next.push(cell);
                        continue;
                    }
                    let mut keyed: Vec<(usize, usize)> = cell
                        .iter()
                        .map(|&v| (splitter.iter().filter(|&&t| self.adj[v][t]).count(), v))
                        .collect();
                    keyed.sort_unstable_by_key(|&(k, _)| k);
                    if keyed.first().map(|p| p.0) == keyed.last().map(|p| p.0) {
                        next.push(cell);
                        continue;
                    }
                    changed = true;
                    let mut start = 0;
                    for i in 1..=keyed.len() {
                        if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                            let mut part: Vec<usize> = keyed[start..i].iter().map(|p| p.1).collect();
                            part.sort_unstable();
                            next.push(part);
                            start = i;
                        }
                    }
                }
                cells = next;
                s += 1;
            }
            if !changed {
                return cells;
            }
        }
    }

    fn leaf_code(&self, cells: &Partition) -> Vec<(u16, u16)> {
        let n = self.adj.len();
        let mut pos = vec![0u16; n];
        for (i, c) in cells.iter().enumerate() {
            pos[c[0]] = i as u16;
        }
        let mut code = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.adj[a][b] {
                    let (x, y) = (pos[a], pos[b]);
                    code.push((x.min(y), x.max(y)));
                }
            }
        }
        code.sort_unstable();
        code
    }

    fn search(&self, cells: Partition, best: &mut Option<Vec<(u16, u16)>>) {
        let cells = self.refine(cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            let code = self.leaf_code(&cells);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        };
        for &v in &cells[t] {
            let mut child: Partition = Vec::with_capacity(cells.len() + 1);
            child.extend(cells[..t].iter().cloned());
            child.push(vec![v]);
            child.push(cells[t].iter().copied().filter(|&u| u != v).collect());
            child.extend(cells[t + 1..].iter().cloned());
            self.search(child, best);
        }
    }
}

/// Canonical certificate of `g`; deterministic and invariant under relabeling.
pub fn canonical_form(g: &Graph) -> CanonicalCertificate {
    let verts: Vec<u32> = g.vertices().collect();
    let n = verts.len();
    let mut adj = vec![vec![false; n]; n];
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate() {
            adj[i][j] = g.has_edge(a, b);
        }
    }
    let dense = Dense { adj };
    if n == 0 {
        return CanonicalCertificate {
            order: 0,
            edges: Vec::new(),
        };
    }
    let mut best = None;
    dense.search(vec![(0..n).collect()], &mut best);
    CanonicalCertificate {
        order: n,
        edges: best.expect("search visits at least one leaf"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, delta_y, find_isomorphism, TriangleSite};
    use std::collections::BTreeMap;

    #[test]
    fn k6_permutation_invariant() {
        let k6 = complete_graph(6).unwrap();
        let map: BTreeMap<u32, u32> = (0..6).map(|v| (v, (v * 5 + 3) % 6 + 10)).collect();
        assert_eq!(canonical_form(&k6), canonical_form(&k6.relabel(&map)));
        assert_ne!(canonical_form(&k6), canonical_form(&complete_graph(7).unwrap()));
    }

    #[test]
    fn triangle_choice_in_k6_irrelevant() {
        let k6 = complete_graph(6).unwrap();
        let certs: Vec<_> = k6
            .triangles()
            .iter()
            .map(|t| canonical_form(&delta_y(&k6, t).unwrap().0))
            .collect();
        assert!(certs.windows(2).all(|w| w[0] == w[1]));
        let a = delta_y(&k6, &TriangleSite::new(0, 1, 2)).unwrap().0;
        let b = delta_y(&k6, &TriangleSite::new(3, 4, 5)).unwrap().0;
        assert!(find_isomorphism(&a, &b).is_some());
    }

    #[test]
    fn distinguishes_cospectral_like_pair() {
        // C6 versus two disjoint triangles: same degree sequence.
        let c6 = Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let tt = Graph::from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(canonical_form(&c6), canonical_form(&tt));
    }
}
