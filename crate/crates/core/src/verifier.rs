//! Exact checks of the Conway-Gordon type identities on a given embedding.
//! Every report records each term so a failing identity can be traced to a
//! single cycle.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::canon::canonical_form;
use crate::cycles::{
    enumerate_cycle_sets, enumerate_cycles, enumerate_disjoint_pairs, phi_preimage, Cycle, CycleSet,
};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::family::Root;
use crate::graph::{complete_graph, y_delta, Graph, WyeSite};
use crate::invariants::{conway_a2, linking_number};
use crate::spatial::{contract_y, PLEmbedding, Projection};
use crate::weights::{arf_support, WeightMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    Cg1,
    Cg2,
    Nrefine1,
    Nrefine2,
    Main1,
    Main2,
    Cor1,
    Cor2,
    Transfer,
    Prop21,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::Cg1,
        IdentityId::Cg2,
        IdentityId::Nrefine1,
        IdentityId::Nrefine2,
        IdentityId::Main1,
        IdentityId::Main2,
        IdentityId::Cor1,
        IdentityId::Cor2,
        IdentityId::Transfer,
        IdentityId::Prop21,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::Cg1 => "cg1",
            IdentityId::Cg2 => "cg2",
            IdentityId::Nrefine1 => "nrefine1",
            IdentityId::Nrefine2 => "nrefine2",
            IdentityId::Main1 => "main1",
            IdentityId::Main2 => "main2",
            IdentityId::Cor1 => "cor1",
            IdentityId::Cor2 => "cor2",
            IdentityId::Transfer => "transfer",
            IdentityId::Prop21 => "prop21",
        }
    }

    /// Root whose descendants the identity applies to, if it is tied to one.
    pub fn root(&self) -> Option<Root> {
        match self {
            IdentityId::Cg1 | IdentityId::Nrefine1 | IdentityId::Main1 | IdentityId::Cor1 => Some(Root::K6),
            IdentityId::Cg2 | IdentityId::Nrefine2 | IdentityId::Main2 | IdentityId::Cor2 => Some(Root::K7),
            IdentityId::Transfer | IdentityId::Prop21 => None,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::KindMismatch(format!("unknown identity `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lhs,
    Rhs,
    /// Asserted to vanish on its own.
    Zero,
    /// Asserted equal to its partner term.
    Pair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub side: Side,
    pub key: String,
    pub invariant: &'static str,
    pub weight: i64,
    pub value: i64,
    pub contribution: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub graph: String,
    pub identity: IdentityId,
    pub seed: u64,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
    /// Failed side conditions; `pass` is false when nonempty.
    pub violations: Vec<String>,
    pub terms: Vec<Term>,
}

impl IdentityReport {
    fn new(identity: IdentityId, graph: &str, seed: u64, lhs: i64, rhs: i64, terms: Vec<Term>, violations: Vec<String>) -> Self {
        IdentityReport {
            graph: graph.to_string(),
            identity,
            seed,
            lhs,
            rhs,
            pass: lhs == rhs && violations.is_empty(),
            violations,
            terms,
        }
    }

    /// One tab-separated line: graph, identity, seed, lhs, rhs, verdict.
    pub fn summary_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.graph,
            self.identity,
            self.seed,
            self.lhs,
            self.rhs,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Invariant evaluation of cycles under one generic projection.
pub struct Evaluator {
    proj: Projection,
}

impl Evaluator {
    pub fn new(emb: &PLEmbedding) -> Result<Self> {
        Ok(Evaluator {
            proj: Projection::find(emb)?,
        })
    }

    pub fn diagram(&self, gamma: &CycleSet) -> Result<LinkDiagram> {
        self.proj.diagram(gamma)
    }

    pub fn a2(&self, c: &Cycle) -> Result<i64> {
        conway_a2(&self.proj.diagram(&CycleSet::Knot(c.clone()))?)
    }

    pub fn lk(&self, gamma: &CycleSet) -> Result<i64> {
        linking_number(&self.proj.diagram(gamma)?)
    }

    /// Linking number with components oriented as the given walks.
    pub fn lk_of(&self, walks: &[Vec<u32>]) -> Result<i64> {
        linking_number(&self.proj.diagram_of(walks)?)
    }

    pub fn a2_of(&self, walk: &[u32]) -> Result<i64> {
        conway_a2(&self.proj.diagram_of(&[walk.to_vec()])?)
    }
}

fn expect_host(g: &Graph, root: Root) -> Result<()> {
    let n = root.order();
    if canonical_form(g) != canonical_form(&complete_graph(n)?) {
        return Err(Error::HostMismatch(format!("expected a graph isomorphic to {root}")));
    }
    Ok(())
}

/// Errors unless `w` feeds the identity family of `root`.
pub fn expect_kind(w: &WeightMap, root: Root) -> Result<()> {
    if w.kind != root {
        return Err(Error::KindMismatch(format!(
            "weights are {}-type, identity needs {root}-type",
            w.kind
        )));
    }
    Ok(())
}

fn knot_term(side: Side, c: &Cycle, weight: i64, value: i64, scale: i64) -> Term {
    Term {
        side,
        key: c.to_string(),
        invariant: "a2",
        weight,
        value,
        contribution: scale * weight * value,
    }
}

fn link_term(side: Side, g: &CycleSet, invariant: &'static str, weight: i64, value: i64, scale: i64) -> Term {
    Term {
        side,
        key: g.to_string(),
        invariant,
        weight,
        value,
        contribution: scale * weight * value,
    }
}

fn side_sum(terms: &[Term], side: Side) -> i64 {
    terms.iter().filter(|t| t.side == side).map(|t| t.contribution).sum()
}

/// Σ lk over `Γ⁽²⁾(K6)`, reduced mod 2; expected 1.
pub fn verify_cg1(emb: &PLEmbedding, name: &str, seed: u64) -> Result<IdentityReport> {
    expect_host(emb.graph(), Root::K6)?;
    let ev = Evaluator::new(emb)?;
    let mut terms = Vec::new();
    for p in enumerate_disjoint_pairs(emb.graph()) {
        let g = CycleSet::Link(p);
        let lk = ev.lk(&g)?;
        terms.push(link_term(Side::Lhs, &g, "lk", 1, lk, 1));
    }
    let lhs = side_sum(&terms, Side::Lhs).rem_euclid(2);
    Ok(IdentityReport::new(IdentityId::Cg1, name, seed, lhs, 1, terms, vec![]))
}

/// Σ Arf over the Hamiltonian cycles of `K7`, reduced mod 2; expected 1.
pub fn verify_cg2(emb: &PLEmbedding, name: &str, seed: u64) -> Result<IdentityReport> {
    expect_host(emb.graph(), Root::K7)?;
    let ev = Evaluator::new(emb)?;
    let n = emb.graph().vertex_count();
    let mut terms = Vec::new();
    for c in enumerate_cycles(emb.graph()).into_iter().filter(|c| c.len() == n) {
        let arf = ev.a2(&c)?.rem_euclid(2);
        terms.push(Term {
            side: Side::Lhs,
            key: c.to_string(),
            invariant: "arf",
            weight: 1,
            value: arf,
            contribution: arf,
        });
    }
    let lhs = side_sum(&terms, Side::Lhs).rem_euclid(2);
    Ok(IdentityReport::new(IdentityId::Cg2, name, seed, lhs, 1, terms, vec![]))
}

/// The refined integer identity on `K6` or `K7`, written directly in terms
/// of cycle lengths.
pub fn verify_nrefine(emb: &PLEmbedding, name: &str, seed: u64) -> Result<IdentityReport> {
    let g = emb.graph();
    let root = if expect_host(g, Root::K6).is_ok() {
        Root::K6
    } else {
        expect_host(g, Root::K7).map_err(|_| Error::HostMismatch("expected K6 or K7".into()))?;
        Root::K7
    };
    let ev = Evaluator::new(emb)?;
    let mut terms = Vec::new();
    let knot_weight = |len: usize| match (root, len) {
        (Root::K6, 6) => 2,
        (Root::K6, 5) => -2,
        (Root::K7, 7) => 7,
        (Root::K7, 6) => -6,
        (Root::K7, 5) => -2,
        _ => 0,
    };
    for c in enumerate_cycles(g) {
        let w = knot_weight(c.len());
        if w != 0 {
            let a2 = ev.a2(&c)?;
            terms.push(knot_term(Side::Lhs, &c, w, a2, 1));
        }
    }
    for p in enumerate_disjoint_pairs(g) {
        let (w, scale) = match root {
            Root::K6 => (1, 1),
            Root::K7 if p.kind() == (4, 3) => (1, 2),
            Root::K7 => continue,
        };
        let gs = CycleSet::Link(p);
        let lk = ev.lk(&gs)?;
        terms.push(link_term(Side::Rhs, &gs, "lk2", w, lk * lk, scale));
    }
    let id = if root == Root::K6 { IdentityId::Nrefine1 } else { IdentityId::Nrefine2 };
    let lhs = side_sum(&terms, Side::Lhs);
    let rhs = side_sum(&terms, Side::Rhs) + root.constant();
    Ok(IdentityReport::new(id, name, seed, lhs, rhs, terms, vec![]))
}

fn expect_weight_host(emb: &PLEmbedding, w: &WeightMap) -> Result<()> {
    if emb.graph() != &w.host {
        return Err(Error::HostMismatch(format!(
            "weights are for {}, embedding is of a different graph",
            w.host_name
        )));
    }
    Ok(())
}

/// The weighted identity for a ΔY-descendant of `K6` or `K7`. Only
/// nonzero-weight knots are evaluated.
pub fn verify_main(emb: &PLEmbedding, w: &WeightMap, name: &str, seed: u64) -> Result<IdentityReport> {
    expect_weight_host(emb, w)?;
    let ev = Evaluator::new(emb)?;
    let mut terms = Vec::new();
    let mut violations = Vec::new();
    for (g, weight) in w.iter() {
        if let CycleSet::Knot(c) = g {
            let a2 = ev.a2(c)?;
            let scale = if w.kind == Root::K6 { 2 } else { 1 };
            terms.push(knot_term(Side::Lhs, c, weight, a2, scale));
        }
    }
    for p in enumerate_disjoint_pairs(&w.host) {
        let gs = CycleSet::Link(p);
        let weight = w.get(&gs);
        match w.kind {
            Root::K6 => {
                // the K6 form sums lk² unweighted, which needs ω ≡ 1 here
                if weight != 1 {
                    violations.push(format!("weight of {gs} is {weight}, expected 1"));
                }
                let lk = ev.lk(&gs)?;
                terms.push(link_term(Side::Rhs, &gs, "lk2", 1, lk * lk, 1));
            }
            Root::K7 => {
                if weight != 0 {
                    let lk = ev.lk(&gs)?;
                    terms.push(link_term(Side::Rhs, &gs, "lk2", weight, lk * lk, 2));
                }
            }
        }
    }
    let id = if w.kind == Root::K6 { IdentityId::Main1 } else { IdentityId::Main2 };
    let lhs = side_sum(&terms, Side::Lhs);
    let rhs = side_sum(&terms, Side::Rhs) + w.constant;
    Ok(IdentityReport::new(id, name, seed, lhs, rhs, terms, violations))
}

/// Mod-2 corollaries: unweighted lk parity for K6-type, Arf parity over the
/// odd-weight cycles for K7-type.
pub fn verify_corollary(emb: &PLEmbedding, w: &WeightMap, name: &str, seed: u64) -> Result<IdentityReport> {
    expect_weight_host(emb, w)?;
    let ev = Evaluator::new(emb)?;
    let mut terms = Vec::new();
    let id = match w.kind {
        Root::K6 => {
            for p in enumerate_disjoint_pairs(&w.host) {
                let gs = CycleSet::Link(p);
                let lk = ev.lk(&gs)?;
                terms.push(link_term(Side::Lhs, &gs, "lk", 1, lk, 1));
            }
            IdentityId::Cor1
        }
        Root::K7 => {
            for c in arf_support(w)? {
                let arf = ev.a2(&c)?.rem_euclid(2);
                terms.push(Term {
                    side: Side::Lhs,
                    key: c.to_string(),
                    invariant: "arf",
                    weight: 1,
                    value: arf,
                    contribution: arf,
                });
            }
            IdentityId::Cor2
        }
    };
    let lhs = side_sum(&terms, Side::Lhs).rem_euclid(2);
    Ok(IdentityReport::new(id, name, seed, lhs, 1, terms, vec![]))
}

/// Invariant family attached to a weight: `(scale on a₂, scale on lk²)`.
fn alpha_scales(kind: Root) -> (i64, i64) {
    match kind {
        Root::K6 => (2, -1),
        Root::K7 => (1, -2),
    }
}

/// Invariant values of `f(γ)` that the α-families read: a₂ of a knot, lk²
/// of a link.
fn alpha_value(ev: &Evaluator, g: &CycleSet) -> Result<(&'static str, i64)> {
    Ok(match g {
        CycleSet::Knot(c) => ("a2", ev.a2(c)?),
        CycleSet::Link(_) => {
            let lk = ev.lk(g)?;
            ("lk2", lk * lk)
        }
    })
}

/// Both sides of the transfer identity across one ΔY-exchange: the
/// pushed-forward α-sum on `f` against the α-sum on the contracted
/// embedding `φ(f)`. Each term containing the new triangle is asserted to
/// vanish on its own.
pub fn verify_transfer(
    emb: &PLEmbedding,
    site: &WyeSite,
    w: &WeightMap,
    name: &str,
    seed: u64,
) -> Result<IdentityReport> {
    let g_y = emb.graph();
    let g_delta = y_delta(g_y, site)?;
    if g_delta != w.host {
        return Err(Error::HostMismatch(format!(
            "weights are for {}, not the graph obtained by contracting {}",
            w.host_name, site.x
        )));
    }
    let tri = site.triangle();
    let contracted = contract_y(emb, site)?;
    let ev_y = Evaluator::new(emb)?;
    let ev_d = Evaluator::new(&contracted)?;
    let (sa, sl) = alpha_scales(w.kind);
    let scale = |g: &CycleSet| if matches!(g, CycleSet::Knot(_)) { sa } else { sl };
    let mut terms = Vec::new();
    let mut violations = Vec::new();
    for gamma in enumerate_cycle_sets(g_y) {
        let weight: i64 = phi_preimage(&g_delta, &tri, &gamma)?.iter().map(|p| w.get(p)).sum();
        if weight == 0 {
            continue;
        }
        let (inv, value) = alpha_value(&ev_y, &gamma)?;
        terms.push(link_term(Side::Lhs, &gamma, inv, weight, value, scale(&gamma)));
    }
    for gp in enumerate_cycle_sets(&g_delta) {
        let weight = w.get(&gp);
        let triangular = gp.contains_triangle(&tri);
        if weight == 0 && !triangular {
            continue;
        }
        let (inv, value) = match (&gp, triangular) {
            (CycleSet::Link(_), true) => ("lk", ev_d.lk(&gp)?),
            _ => alpha_value(&ev_d, &gp)?,
        };
        if triangular {
            if value != 0 {
                violations.push(format!("{gp} contains the triangle but {inv} = {value}"));
            }
            terms.push(link_term(Side::Zero, &gp, inv, weight, value, scale(&gp)));
            if weight != 0 {
                let contribution = match gp {
                    CycleSet::Knot(_) => scale(&gp) * weight * value,
                    CycleSet::Link(_) => scale(&gp) * weight * value * value,
                };
                terms.push(Term {
                    side: Side::Rhs,
                    key: gp.to_string(),
                    invariant: if inv == "lk" { "lk2" } else { inv },
                    weight,
                    value: if inv == "lk" { value * value } else { value },
                    contribution,
                });
            }
        } else {
            terms.push(link_term(Side::Rhs, &gp, inv, weight, value, scale(&gp)));
        }
    }
    let lhs = side_sum(&terms, Side::Lhs);
    let rhs = side_sum(&terms, Side::Rhs);
    Ok(IdentityReport::new(IdentityId::Transfer, name, seed, lhs, rhs, terms, violations))
}

/// Orients `walk` (a cycle of the contracted graph) like `reference` (its
/// image cycle), comparing the order of their common vertices.
fn orient_like(walk: &[u32], reference: &[u32]) -> Vec<u32> {
    let common: Vec<u32> = reference.iter().copied().filter(|v| walk.contains(v)).collect();
    let mine: Vec<u32> = walk.iter().copied().filter(|v| common.contains(v)).collect();
    let n = common.len();
    let start = mine.iter().position(|&v| v == common[0]).unwrap();
    let same = (0..n).all(|i| mine[(start + i) % n] == common[i]);
    let mut out = walk.to_vec();
    if !same {
        out.reverse();
    }
    out
}

/// Pairs up the components of a preimage with those of its image by shared
/// vertices away from the exchange.
fn match_components<'a>(pre: &'a CycleSet, image: &CycleSet, x: u32) -> Vec<(&'a Cycle, Vec<u32>)> {
    let img = image.components();
    pre.components()
        .into_iter()
        .map(|c| {
            let partner = img
                .iter()
                .find(|d| d.vertices().iter().any(|&v| v != x && c.contains(v)))
                .expect("preimage component shares a vertex with its image");
            (c, orient_like(c.vertices(), partner.vertices()))
        })
        .collect()
}

/// Per-cycle comparison of `f(γ)` with `φ(f)(γ′)` for every `γ` and every
/// preimage `γ′`: equal a₂ on knots, equal signed lk on links with
/// orientations matched.
pub fn verify_prop21(emb: &PLEmbedding, site: &WyeSite, name: &str, seed: u64) -> Result<IdentityReport> {
    let g_y = emb.graph();
    let g_delta = y_delta(g_y, site)?;
    let tri = site.triangle();
    let contracted = contract_y(emb, site)?;
    let ev_y = Evaluator::new(emb)?;
    let ev_d = Evaluator::new(&contracted)?;
    let mut terms = Vec::new();
    let mut violations = Vec::new();
    let mut mismatches = 0;
    for gamma in enumerate_cycle_sets(g_y) {
        for pre in phi_preimage(&g_delta, &tri, &gamma)? {
            let matched = match_components(&pre, &gamma, site.x);
            let walks: Vec<Vec<u32>> = gamma.components().iter().map(|c| c.vertices().to_vec()).collect();
            let (inv, a, b) = match gamma {
                CycleSet::Knot(ref c) => ("a2", ev_y.a2(c)?, ev_d.a2_of(&matched[0].1)?),
                CycleSet::Link(_) => {
                    // order preimage walks like the image components
                    let mut pw: Vec<Vec<u32>> = Vec::new();
                    for w in &walks {
                        let (_, oriented) = matched
                            .iter()
                            .find(|(_, o)| o.iter().any(|&v| v != site.x && w.contains(&v)))
                            .unwrap();
                        pw.push(oriented.clone());
                    }
                    ("lk", ev_y.lk_of(&walks)?, ev_d.lk_of(&pw)?)
                }
            };
            if a != b {
                mismatches += 1;
                violations.push(format!("{gamma} vs {pre}: {inv} {a} != {b}"));
            }
            terms.push(Term {
                side: Side::Pair,
                key: format!("{gamma}<-{pre}"),
                invariant: inv,
                weight: 1,
                value: a,
                contribution: b,
            });
        }
    }
    Ok(IdentityReport::new(IdentityId::Prop21, name, seed, mismatches, 0, terms, violations))
}

/// `(passed, failed)` counts per identity.
pub fn tally(reports: &[IdentityReport]) -> BTreeMap<IdentityId, (usize, usize)> {
    let mut out: BTreeMap<IdentityId, (usize, usize)> = BTreeMap::new();
    for r in reports {
        let e = out.entry(r.identity).or_default();
        if r.pass {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{delta_y, TriangleSite};
    use crate::weights::{base_weights, derive_weights};

    #[test]
    fn conway_gordon_on_k6_and_k7() {
        let k6 = complete_graph(6).unwrap();
        let k7 = complete_graph(7).unwrap();
        for seed in 0..3 {
            let e6 = PLEmbedding::random(&k6, seed).unwrap();
            let r = verify_cg1(&e6, "K6", seed).unwrap();
            assert!(r.pass, "{}", r.summary_line());
            let n = verify_nrefine(&e6, "K6", seed).unwrap();
            assert!(n.pass, "{}", n.summary_line());
            assert_eq!(n.identity, IdentityId::Nrefine1);
            let e7 = PLEmbedding::random(&k7, seed).unwrap();
            let r = verify_cg2(&e7, "K7", seed).unwrap();
            assert!(r.pass, "{}", r.summary_line());
            let n = verify_nrefine(&e7, "K7", seed).unwrap();
            assert!(n.pass, "{}", n.summary_line());
        }
    }

    #[test]
    fn wrong_hosts_rejected() {
        let mut edges: Vec<(u32, u32)> = complete_graph(6).unwrap().edges().collect();
        edges.pop();
        let g = Graph::from_edges(edges).unwrap();
        let e = PLEmbedding::random(&g, 1).unwrap();
        assert!(matches!(verify_cg1(&e, "x", 1), Err(Error::HostMismatch(_))));
        assert!(matches!(verify_cg2(&e, "x", 1), Err(Error::HostMismatch(_))));
        assert!(matches!(verify_nrefine(&e, "x", 1), Err(Error::HostMismatch(_))));
        let w = base_weights(Root::K6);
        assert!(expect_kind(&w, Root::K7).is_err());
        assert!(matches!(verify_main(&e, &w, "x", 1), Err(Error::HostMismatch(_))));
    }

    #[test]
    fn one_step_identities() {
        for root in [Root::K6, Root::K7] {
            let site = TriangleSite::new(0, 1, 2);
            let w = derive_weights(root, &[site]).unwrap();
            let (gy, x) = delta_y(&root.graph(), &site).unwrap();
            let wye = gy.wye_site(x).unwrap();
            for seed in 0..2 {
                let e = PLEmbedding::random(&gy, seed).unwrap();
                let r = verify_main(&e, &w, "one", seed).unwrap();
                assert!(r.pass, "{} {:?}", r.summary_line(), r.violations);
                let c = verify_corollary(&e, &w, "one", seed).unwrap();
                assert!(c.pass, "{}", c.summary_line());
                let t = verify_transfer(&e, &wye, &base_weights(root), "one", seed).unwrap();
                assert!(t.pass, "{} {:?}", t.summary_line(), t.violations);
                assert!(t.terms.iter().any(|t| t.side == Side::Zero));
                if root == Root::K6 {
                    let p = verify_prop21(&e, &wye, "one", seed).unwrap();
                    assert!(p.pass, "{:?}", p.violations);
                }
            }
        }
    }

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("main3".parse::<IdentityId>().is_err());
    }
}
