//! Linking number, Conway polynomial and the derived knot invariants a₂ and
//! Arf, computed from link diagrams.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

/// Integer polynomial in `z`; index `i` holds the coefficient of `z^i`.
/// Trailing zeros are trimmed, so the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ConwayPolynomial(Vec<i64>);

impl ConwayPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ConwayPolynomial(coeffs)
    }

    pub fn zero() -> Self {
        ConwayPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        ConwayPolynomial(vec![1])
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// `self + s·z·other`
    fn add_shifted(&self, s: i64, other: &ConwayPolynomial) -> ConwayPolynomial {
        let n = self.0.len().max(other.0.len() + 1);
        let mut c = vec![0; n];
        for (i, a) in self.0.iter().enumerate() {
            c[i] += a;
        }
        for (i, b) in other.0.iter().enumerate() {
            c[i + 1] += s * b;
        }
        ConwayPolynomial::new(c)
    }
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, i64)> =
            self.0.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in terms.into_iter().enumerate() {
            let mag = c.unsigned_abs();
            match (n, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (i, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "z")?,
                (1, m) => write!(f, "{m}z")?,
                (_, 1) => write!(f, "z^{i}")?,
                (_, m) => write!(f, "{m}z^{i}")?,
            }
        }
        Ok(())
    }
}

fn expect_components(d: &LinkDiagram, n: usize) -> Result<()> {
    if d.component_count() != n {
        return Err(Error::ComponentCount {
            expected: n,
            found: d.component_count(),
        });
    }
    Ok(())
}

/// Half the signed count of crossings between the two components.
pub fn linking_number(d: &LinkDiagram) -> Result<i64> {
    expect_components(d, 2)?;
    let twice: i64 = d
        .sites()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.over.0 != s.under.0)
        .map(|(c, _)| d.sign(c) as i64)
        .sum();
    debug_assert!(twice % 2 == 0);
    Ok(twice / 2)
}

pub fn lk_squared(d: &LinkDiagram) -> Result<i64> {
    let lk = linking_number(d)?;
    Ok(lk * lk)
}

/// Conway polynomial by skein recursion toward a descending diagram.
pub fn conway_polynomial(d: &LinkDiagram) -> ConwayPolynomial {
    let mut memo = HashMap::new();
    skein(d, &mut memo)
}

/// First crossing, reading components in order from their basepoints,
/// that is first met as an under-crossing. None means the diagram is
/// descending.
fn first_bad_crossing(d: &LinkDiagram) -> Option<usize> {
    let mut seen = vec![false; d.crossing_count()];
    for v in d.components().iter().flatten() {
        if !seen[v.crossing] {
            if !v.over {
                return Some(v.crossing);
            }
            seen[v.crossing] = true;
        }
    }
    None
}

fn skein(d: &LinkDiagram, memo: &mut HashMap<LinkDiagram, ConwayPolynomial>) -> ConwayPolynomial {
    let d = d.simplified().normalized();
    if d.is_split() {
        return ConwayPolynomial::zero();
    }
    if let Some(p) = memo.get(&d) {
        return p.clone();
    }
    let p = match first_bad_crossing(&d) {
        None if d.component_count() == 1 => ConwayPolynomial::one(),
        None => ConwayPolynomial::zero(),
        Some(c) => {
            let switched = skein(&d.switched(c), memo);
            let smoothed = skein(&d.smoothed(c), memo);
            switched.add_shifted(d.sign(c) as i64, &smoothed)
        }
    };
    memo.insert(d, p.clone());
    p
}

/// a₂ of a knot from the Gauss diagram: signed count of crossing pairs
/// `(c1, c2)` met from the basepoint in the order c1 under, c2 over,
/// c1 over, c2 under.
pub fn conway_a2(d: &LinkDiagram) -> Result<i64> {
    expect_components(d, 1)?;
    let sites = d.sites();
    let mut sum = 0i64;
    for (c1, s1) in sites.iter().enumerate() {
        let (u1, o1) = (s1.under.1, s1.over.1);
        if u1 > o1 {
            continue;
        }
        for (c2, s2) in sites.iter().enumerate() {
            let (u2, o2) = (s2.under.1, s2.over.1);
            if u1 < o2 && o2 < o1 && o1 < u2 {
                sum += d.sign(c1) as i64 * d.sign(c2) as i64;
            }
        }
    }
    Ok(sum)
}

/// a₂ as the z² coefficient of the skein-computed Conway polynomial.
pub fn conway_a2_skein(d: &LinkDiagram) -> Result<i64> {
    expect_components(d, 1)?;
    Ok(conway_polynomial(d).coeff(2))
}

pub fn arf(d: &LinkDiagram) -> Result<u8> {
    Ok(conway_a2(d)?.rem_euclid(2) as u8)
}
