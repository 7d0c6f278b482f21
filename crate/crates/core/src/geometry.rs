//! Exact rational predicates for points, segments and triangles in 3-space
//! and in the plane.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3(pub [Q; 3]);

impl Point3 {
    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3([q(x), q(y), q(z)])
    }

    pub fn sub(&self, o: &Point3) -> Point3 {
        Point3([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }

    pub fn add(&self, o: &Point3) -> Point3 {
        Point3([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }

    pub fn scale(&self, s: &Q) -> Point3 {
        Point3([&self.0[0] * s, &self.0[1] * s, &self.0[2] * s])
    }

    pub fn dot(&self, o: &Point3) -> Q {
        &self.0[0] * &o.0[0] + &self.0[1] * &o.0[1] + &self.0[2] * &o.0[2]
    }

    pub fn cross(&self, o: &Point3) -> Point3 {
        let [a, b, c] = &self.0;
        let [d, e, f] = &o.0;
        Point3([b * f - c * e, c * d - a * f, a * e - b * d])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Point at parameter `t` on the segment `self -> o`.
    pub fn lerp(&self, o: &Point3, t: &Q) -> Point3 {
        self.add(&o.sub(self).scale(t))
    }
}

impl fmt::Debug for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", fmt_q(&self.0[0]), fmt_q(&self.0[1]), fmt_q(&self.0[2]))
    }
}

impl FromStr for Point3 {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let v: Vec<Q> = s.split_whitespace().map(parse_q).collect::<Option<_>>().ok_or(())?;
        let [x, y, z]: [Q; 3] = v.try_into().map_err(|_| ())?;
        Ok(Point3([x, y, z]))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Point2(pub Q, pub Q);

impl Point2 {
    pub fn sub(&self, o: &Point2) -> Point2 {
        Point2(&self.0 - &o.0, &self.1 - &o.1)
    }

    pub fn cross(&self, o: &Point2) -> Q {
        &self.0 * &o.1 - &self.1 * &o.0
    }

    pub fn dot(&self, o: &Point2) -> Q {
        &self.0 * &o.0 + &self.1 * &o.1
    }
}

fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of the determinant `[b-a, c-a, d-a]`.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> i32 {
    let (u, v, w) = (b.sub(a), c.sub(a), d.sub(a));
    sign(&u.cross(&v).dot(&w))
}

/// Sign of `(b-a) x (c-a)`.
pub fn orient2d(a: &Point2, b: &Point2, c: &Point2) -> i32 {
    sign(&b.sub(a).cross(&c.sub(a)))
}

fn on_segment_2d(p: &Point2, a: &Point2, b: &Point2) -> bool {
    orient2d(a, b, p) == 0 && p.sub(a).dot(&p.sub(b)) <= Q::zero()
}

/// Closed segments `[a, b]` and `[c, d]` share a point.
pub fn segments_meet_2d(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let (o1, o2) = (orient2d(a, b, c), orient2d(a, b, d));
    let (o3, o4) = (orient2d(c, d, a), orient2d(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_segment_2d(c, a, b) || on_segment_2d(d, a, b) || on_segment_2d(a, c, d) || on_segment_2d(b, c, d)
}

/// Index of the largest-magnitude coordinate of `n`.
fn dominant_axis(n: &Point3) -> usize {
    (0..3)
        .max_by(|&i, &j| n.0[i].abs().cmp(&n.0[j].abs()))
        .unwrap()
}

fn drop_axis(p: &Point3, axis: usize) -> Point2 {
    let (i, j) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    Point2(p.0[i].clone(), p.0[j].clone())
}

/// Closed segments in 3-space share a point.
pub fn segments_meet_3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> bool {
    if orient3d(a, b, c, d) != 0 {
        return false;
    }
    let ab = b.sub(a);
    let mut n = ab.cross(&c.sub(a));
    if n.is_zero() {
        n = ab.cross(&d.sub(a));
    }
    if n.is_zero() {
        // all four points collinear (or `a == b`)
        let dir = if ab.is_zero() { d.sub(c) } else { ab.clone() };
        if dir.is_zero() {
            return a == c;
        }
        let axis = dominant_axis(&dir);
        let key = |p: &Point3| p.0[axis].clone();
        let (lo1, hi1) = minmax(key(a), key(b));
        let (lo2, hi2) = minmax(key(c), key(d));
        // c, d are on the line through a, b only if collinear in full
        let line_ok = ab.is_zero() || ab.cross(&c.sub(a)).is_zero() && ab.cross(&d.sub(a)).is_zero();
        return line_ok && lo1 <= hi2 && lo2 <= hi1;
    }
    let axis = dominant_axis(&n);
    segments_meet_2d(
        &drop_axis(a, axis),
        &drop_axis(b, axis),
        &drop_axis(c, axis),
        &drop_axis(d, axis),
    )
}

fn minmax(a: Q, b: Q) -> (Q, Q) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Two segments sharing the endpoint `s` (with other endpoints `p`, `q`)
/// overlap beyond `s`.
pub fn overlap_beyond_shared(s: &Point3, p: &Point3, q: &Point3) -> bool {
    let (u, v) = (p.sub(s), q.sub(s));
    u.cross(&v).is_zero() && u.dot(&v).is_positive()
}

/// Closed triangle `abc` and closed segment `pq` share a point.
pub fn triangle_meets_segment(a: &Point3, b: &Point3, c: &Point3, p: &Point3, q: &Point3) -> bool {
    let op = orient3d(a, b, c, p);
    let oq = orient3d(a, b, c, q);
    if op * oq > 0 {
        return false;
    }
    if op == 0 && oq == 0 {
        let n = b.sub(a).cross(&c.sub(a));
        if n.is_zero() {
            return segments_meet_3d(a, b, p, q)
                || segments_meet_3d(b, c, p, q)
                || segments_meet_3d(a, c, p, q);
        }
        let axis = dominant_axis(&n);
        let (a2, b2, c2) = (drop_axis(a, axis), drop_axis(b, axis), drop_axis(c, axis));
        let (p2, q2) = (drop_axis(p, axis), drop_axis(q, axis));
        return point_in_triangle_2d(&p2, &a2, &b2, &c2)
            || segments_meet_2d(&a2, &b2, &p2, &q2)
            || segments_meet_2d(&b2, &c2, &p2, &q2)
            || segments_meet_2d(&a2, &c2, &p2, &q2);
    }
    // the segment line crosses the plane at one point; it lies in the
    // closed triangle iff the three edge orientations agree (zeros allowed)
    let s1 = orient3d(p, q, a, b);
    let s2 = orient3d(p, q, b, c);
    let s3 = orient3d(p, q, c, a);
    let has_pos = s1 > 0 || s2 > 0 || s3 > 0;
    let has_neg = s1 < 0 || s2 < 0 || s3 < 0;
    !(has_pos && has_neg)
}

fn point_in_triangle_2d(p: &Point2, a: &Point2, b: &Point2, c: &Point2) -> bool {
    let s1 = orient2d(a, b, p);
    let s2 = orient2d(b, c, p);
    let s3 = orient2d(c, a, p);
    let has_pos = s1 > 0 || s2 > 0 || s3 > 0;
    let has_neg = s1 < 0 || s2 < 0 || s3 < 0;
    !(has_pos && has_neg)
}

/// Touching at an endpoint or overlapping collinearly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degenerate;

/// Proper crossing of two plane segments: returns the parameters along each
/// segment, or `None` when they are disjoint.
pub fn crossing_params_2d(
    a: &Point2,
    b: &Point2,
    c: &Point2,
    d: &Point2,
) -> Result<Option<(Q, Q)>, Degenerate> {
    let (o1, o2) = (orient2d(a, b, c), orient2d(a, b, d));
    let (o3, o4) = (orient2d(c, d, a), orient2d(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        let r = b.sub(a);
        let s = d.sub(c);
        let denom = r.cross(&s);
        let ca = c.sub(a);
        let t = ca.cross(&s) / &denom;
        let u = ca.cross(&r) / &denom;
        return Ok(Some((t, u)));
    }
    if segments_meet_2d(a, b, c, d) {
        return Err(Degenerate);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(x, y, z)
    }

    #[test]
    fn skew_segments_do_not_meet() {
        assert!(!segments_meet_3d(&p(0, 0, 0), &p(2, 0, 0), &p(1, -1, 1), &p(1, 1, 1)));
        assert!(segments_meet_3d(&p(0, 0, 0), &p(2, 0, 0), &p(1, -1, 0), &p(1, 1, 0)));
        // touching at an endpoint
        assert!(segments_meet_3d(&p(0, 0, 0), &p(2, 0, 0), &p(2, 0, 0), &p(3, 5, 1)));
        // collinear overlap and collinear gap
        assert!(segments_meet_3d(&p(0, 0, 0), &p(2, 2, 2), &p(1, 1, 1), &p(5, 5, 5)));
        assert!(!segments_meet_3d(&p(0, 0, 0), &p(1, 1, 1), &p(2, 2, 2), &p(5, 5, 5)));
        // parallel coplanar
        assert!(!segments_meet_3d(&p(0, 0, 0), &p(2, 0, 0), &p(0, 1, 0), &p(2, 1, 0)));
    }

    #[test]
    fn shared_endpoint_overlap() {
        assert!(overlap_beyond_shared(&p(0, 0, 0), &p(1, 1, 0), &p(3, 3, 0)));
        assert!(!overlap_beyond_shared(&p(0, 0, 0), &p(1, 1, 0), &p(-3, -3, 0)));
        assert!(!overlap_beyond_shared(&p(0, 0, 0), &p(1, 1, 0), &p(1, 2, 0)));
    }

    #[test]
    fn triangle_segment() {
        let (a, b, c) = (p(0, 0, 0), p(4, 0, 0), p(0, 4, 0));
        assert!(triangle_meets_segment(&a, &b, &c, &p(1, 1, -1), &p(1, 1, 1)));
        assert!(!triangle_meets_segment(&a, &b, &c, &p(5, 5, -1), &p(5, 5, 1)));
        assert!(!triangle_meets_segment(&a, &b, &c, &p(1, 1, 1), &p(1, 1, 2)));
        // through a vertex
        assert!(triangle_meets_segment(&a, &b, &c, &p(0, 0, -1), &p(0, 0, 1)));
        // coplanar, crossing an edge
        assert!(triangle_meets_segment(&a, &b, &c, &p(-1, 1, 0), &p(1, 1, 0)));
        assert!(!triangle_meets_segment(&a, &b, &c, &p(-1, 1, 0), &p(-1, 3, 0)));
    }

    #[test]
    fn plane_crossing_params() {
        let pt = |x, y| Point2(q(x), q(y));
        let r = crossing_params_2d(&pt(0, 0), &pt(4, 0), &pt(1, -1), &pt(1, 3)).unwrap();
        assert_eq!(r, Some((q_frac(1, 4), q_frac(1, 4))));
        assert!(crossing_params_2d(&pt(0, 0), &pt(4, 0), &pt(4, 0), &pt(5, 5)).is_err());
        assert_eq!(crossing_params_2d(&pt(0, 0), &pt(4, 0), &pt(0, 1), &pt(4, 1)), Ok(None));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_q("-3/6").unwrap(), q_frac(-1, 2));
        assert_eq!(fmt_q(&q_frac(-1, 2)), "-1/2");
        assert_eq!(fmt_q(&q(7)), "7");
        assert!(parse_q("1/0").is_none());
        let pt: Point3 = "1 2/3 -4".parse().unwrap();
        assert_eq!(pt.0[1], q_frac(2, 3));
    }
}
