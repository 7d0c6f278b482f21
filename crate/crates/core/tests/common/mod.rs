//! Independent brute-force oracles and fixture generators shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use deltay::cycles::CycleSet;
use deltay::diagram::LinkDiagram;
use deltay::graph::Graph;
use deltay::spatial::{project, PLEmbedding};

/// Every cycle of `g` as a vertex sequence starting at its minimum, with
/// the second vertex smaller than the last. Built from vertex subsets and
/// all their orderings.
pub fn brute_cycles(g: &Graph) -> BTreeSet<Vec<u32>> {
    let verts: Vec<u32> = g.vertices().collect();
    let n = verts.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 3 {
            continue;
        }
        let subset: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        let (first, rest) = subset.split_first().unwrap();
        for perm in permutations(rest) {
            if perm[0] > *perm.last().unwrap() {
                continue;
            }
            let mut seq = vec![*first];
            seq.extend(perm);
            let closed = (0..seq.len()).all(|i| g.has_edge(seq[i], seq[(i + 1) % seq.len()]));
            if closed {
                out.insert(seq);
            }
        }
    }
    out
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Unordered pairs of vertex-disjoint cycles from a cycle list.
pub fn brute_pairs(cycles: &BTreeSet<Vec<u32>>) -> Vec<(Vec<u32>, Vec<u32>)> {
    let list: Vec<&Vec<u32>> = cycles.iter().collect();
    let mut out = Vec::new();
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            if list[i].iter().all(|v| !list[j].contains(v)) {
                out.push((list[i].clone(), list[j].clone()));
            }
        }
    }
    out
}

/// Number of triples of pairwise vertex-disjoint cycles.
pub fn brute_triples(cycles: &[Vec<u32>]) -> usize {
    let masks: Vec<u64> = cycles.iter().map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
    let mut count = 0;
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if masks[i] & masks[j] != 0 {
                continue;
            }
            for k in j + 1..masks.len() {
                if masks[k] & (masks[i] | masks[j]) == 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Cycle graph on `0..k`.
pub fn polygon(k: u32) -> Graph {
    Graph::from_edges((0..k).map(|i| (i, (i + 1) % k))).unwrap()
}

/// Knot diagram of a random closed polygon with `k` vertices.
pub fn polygon_knot(k: u32, seed: u64) -> LinkDiagram {
    let g = polygon(k);
    let e = PLEmbedding::random(&g, seed).unwrap();
    let c = CycleSet::Knot(deltay::cycles::Cycle::new((0..k).collect()).unwrap());
    project(&e, &c).unwrap()
}

/// Random planar knot diagram: the unknot grown by Reidemeister moves,
/// then crossings switched at random.
pub fn grown_knot(seed: u64, max_crossings: usize) -> LinkDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = LinkDiagram::unlink(1);
    let target = rng.gen_range(3..=max_crossings);
    for _ in 0..400 {
        let next = d.random_move(&mut rng);
        if next.crossing_count() <= max_crossings {
            d = next;
        }
        if d.crossing_count() >= target {
            break;
        }
    }
    for c in 0..d.crossing_count() {
        if rng.gen_bool(0.5) {
            d = d.switched(c);
        }
    }
    d
}

/// At least `count` knot diagrams with between 3 and `max` crossings: half
/// from random polygons, half grown by moves.
pub fn random_knot_diagrams(count: usize, max: usize) -> Vec<LinkDiagram> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < count / 2 {
        let d = polygon_knot(7 + (seed % 3) as u32, seed);
        seed += 1;
        if (3..=max).contains(&d.crossing_count()) {
            out.push(d);
        }
    }
    let mut seed = 0;
    while out.len() < count {
        let d = grown_knot(seed, max);
        seed += 1;
        if d.crossing_count() >= 3 {
            out.push(d);
        }
    }
    out
}

/// Two-component diagrams from disjoint cycle pairs of random K6 embeddings.
pub fn random_link_diagrams(count: usize, max: usize) -> Vec<LinkDiagram> {
    let k6 = deltay::graph::complete_graph(6).unwrap();
    let pairs = deltay::cycles::enumerate_disjoint_pairs(&k6);
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < count {
        let e = PLEmbedding::random(&k6, seed).unwrap();
        for p in &pairs {
            let d = project(&e, &CycleSet::Link(p.clone())).unwrap();
            if d.crossing_count() >= 2 && d.crossing_count() <= max && out.len() < count {
                out.push(d);
            }
        }
        seed += 1;
    }
    out
}
