//! Newton polygons of bivariate polynomials, Minkowski sums by edge merging,
//! and the bivariate pair `G`, `H` built from a box certificate.

mod gh;
mod resultant;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{serialize_bigint, SupportSet};

pub use gh::{build_gh, GhPair};
pub use resultant::{sylvester_resultant_z, DEFAULT_RESULTANT_CAP};

pub type Point = (i64, i64);

/// Sparse polynomial in `y`, `z` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariateSupport {
    /// Sorted by exponent pair `(e_y, e_z)`, coefficients non-zero.
    terms: Vec<(BigInt, (u64, u64))>,
}

#[derive(Serialize)]
struct TermJson<'a> {
    #[serde(serialize_with = "serialize_bigint")]
    c: &'a BigInt,
    y: u64,
    z: u64,
}

impl Serialize for BivariateSupport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(c, (y, z))| TermJson { c, y: *y, z: *z })
            .collect();
        v.serialize(s)
    }
}

impl BivariateSupport {
    /// Adds up repeated exponents and drops zero coefficients.
    pub fn new<I: IntoIterator<Item = (BigInt, (u64, u64))>>(terms: I) -> Self {
        let mut acc: BTreeMap<(u64, u64), BigInt> = BTreeMap::new();
        for (c, e) in terms {
            *acc.entry(e).or_default() += c;
        }
        BivariateSupport {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (c, e))
                .collect(),
        }
    }

    pub fn from_i64(terms: &[(i64, (u64, u64))]) -> Self {
        Self::new(terms.iter().map(|&(c, e)| (BigInt::from(c), e)))
    }

    pub fn terms(&self) -> &[(BigInt, (u64, u64))] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn points(&self) -> Vec<Point> {
        self.terms
            .iter()
            .map(|(_, (y, z))| (*y as i64, *z as i64))
            .collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.terms.iter().flat_map(|(a, (ay, az))| {
            o.terms
                .iter()
                .map(move |(b, (by, bz))| (a * b, (ay + by, az + bz)))
        }))
    }

    pub fn deg_y(&self) -> u64 {
        self.terms.iter().map(|t| t.1 .0).max().unwrap_or(0)
    }

    pub fn deg_z(&self) -> u64 {
        self.terms.iter().map(|t| t.1 .1).max().unwrap_or(0)
    }

    /// `P(x, x^d)` as a sparse map exponent → coefficient.
    pub fn substitute(&self, d: u64) -> BTreeMap<u64, BigInt> {
        let mut out: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (c, (y, z)) in &self.terms {
            *out.entry(y + d * z).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

impl fmt::Display for BivariateSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, (y, z))| {
                let mono = match (*y, *z) {
                    (0, 0) => String::new(),
                    (y, 0) => var("y", y),
                    (0, z) => var("z", z),
                    (y, z) => format!("{}{}", var("y", y), var("z", z)),
                };
                match (c.to_string().as_str(), mono.is_empty()) {
                    (s, true) => s.to_string(),
                    ("1", false) => mono,
                    ("-1", false) => format!("-{mono}"),
                    (s, false) => format!("{s}{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn var(name: &str, e: u64) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

impl fmt::Debug for BivariateSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariateSupport({self})")
    }
}

fn cross(o: Point, a: Point, b: Point) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    Lower,
    Upper,
    LeftVertical,
    RightVertical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: Point,
    pub vector: Point,
    pub class: EdgeClass,
}

fn classify(v: Point) -> EdgeClass {
    match (v.0.cmp(&0), v.1.cmp(&0)) {
        (Ordering::Greater, _) => EdgeClass::Lower,
        (Ordering::Less, _) => EdgeClass::Upper,
        (_, Ordering::Less) => EdgeClass::LeftVertical,
        _ => EdgeClass::RightVertical,
    }
}

/// Convex polygon, segment or point with integer vertices.
///
/// Vertices run counter-clockwise from the lexicographically smallest one,
/// with no three collinear.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Polytope2 {
    vertices: Vec<Point>,
}

impl Polytope2 {
    /// Monotone-chain hull of a non-empty point set.
    pub fn hull(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain("hull of an empty point set".into()));
        }
        let mut p = points.to_vec();
        p.sort_unstable();
        p.dedup();
        if p.len() <= 2 {
            return Ok(Polytope2 { vertices: p });
        }
        let mut lower: Vec<Point> = Vec::new();
        for &q in &p {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
                lower.pop();
            }
            lower.push(q);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &q in p.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
                upper.pop();
            }
            upper.push(q);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Ok(Polytope2 { vertices: lower })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Boundary edges in counter-clockwise order; a segment has two opposite edges.
    pub fn edges(&self) -> Vec<Edge> {
        let v = &self.vertices;
        if v.len() < 2 {
            return Vec::new();
        }
        (0..v.len())
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % v.len()]);
                let vector = (b.0 - a.0, b.1 - a.1);
                Edge {
                    from: a,
                    vector,
                    class: classify(vector),
                }
            })
            .collect()
    }

    pub fn translate(&self, by: Point) -> Self {
        Polytope2 {
            vertices: self.vertices.iter().map(|p| (p.0 + by.0, p.1 + by.1)).collect(),
        }
    }

    /// `{−p : p ∈ P}`.
    pub fn reflect(&self) -> Self {
        let pts: Vec<Point> = self.vertices.iter().map(|p| (-p.0, -p.1)).collect();
        Polytope2::hull(&pts).expect("non-empty")
    }

    /// Offset `t` with `self = other + t`, if any.
    pub fn translation_to(&self, other: &Polytope2) -> Option<Point> {
        if self.vertices.len() != other.vertices.len() {
            return None;
        }
        let t = (
            self.vertices[0].0 - other.vertices[0].0,
            self.vertices[0].1 - other.vertices[0].1,
        );
        (other.translate(t) == *self).then_some(t)
    }
}

/// Lower half-plane of directions first: angles in `(−90°, 90°]` then `(90°, 270°]`.
fn half(v: Point) -> u8 {
    if v.0 > 0 || (v.0 == 0 && v.1 > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: Point, b: Point) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&c)
    })
}

/// `P ⊕ Q` by merging the two edge sequences in angle order; parallel edges
/// of the same class are joined into one edge whose length is the sum.
pub fn minkowski_sum(p: &Polytope2, q: &Polytope2) -> Polytope2 {
    let start = (
        p.vertices[0].0 + q.vertices[0].0,
        p.vertices[0].1 + q.vertices[0].1,
    );
    let mut vecs: Vec<Point> = p
        .edges()
        .into_iter()
        .chain(q.edges())
        .map(|e| e.vector)
        .collect();
    vecs.sort_by(|&a, &b| angle_cmp(a, b));
    let mut merged: Vec<Point> = Vec::with_capacity(vecs.len());
    for v in vecs {
        match merged.last_mut() {
            Some(last) if angle_cmp(*last, v) == Ordering::Equal => {
                last.0 += v.0;
                last.1 += v.1;
            }
            _ => merged.push(v),
        }
    }
    let mut vertices = vec![start];
    let mut cur = start;
    for v in &merged[..merged.len().saturating_sub(1)] {
        cur = (cur.0 + v.0, cur.1 + v.1);
        vertices.push(cur);
    }
    Polytope2 { vertices }
}

/// Newton polygon of a non-zero bivariate polynomial.
pub fn newton_polytope(p: &BivariateSupport) -> Result<Polytope2> {
    if p.is_zero() {
        return Err(Error::Domain("Newton polytope of the zero polynomial".into()));
    }
    Polytope2::hull(&p.points())
}

/// `N(PQ) = N(P) ⊕ N(Q)`, with the product computed including cancellation.
pub fn verify_ostrowski(p: &BivariateSupport, q: &BivariateSupport) -> Result<bool> {
    let lhs = newton_polytope(&p.mul(q))?;
    let rhs = minkowski_sum(&newton_polytope(p)?, &newton_polytope(q)?);
    Ok(lhs == rhs)
}

/// Hull of all pairwise vertex sums (reference construction for `⊕`).
pub fn minkowski_sum_bruteforce(p: &Polytope2, q: &Polytope2) -> Polytope2 {
    let pts: Vec<Point> = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| (a.0 + b.0, a.1 + b.1)))
        .collect();
    Polytope2::hull(&pts).expect("non-empty")
}

/// All quadruples of distinct indices `i<j`, `u<v`, `(i,j) < (u,v)` with
/// `(n_i − n_j)(m_u − m_v) = (n_u − n_v)(m_i − m_j)`.
pub fn parallel_pair_scan(n: &SupportSet, m: &[i64]) -> Result<Vec<(usize, usize, usize, usize)>> {
    let e = n.exponents();
    if m.len() != e.len() {
        return Err(Error::Domain(format!(
            "m has {} entries, n has {}",
            m.len(),
            e.len()
        )));
    }
    let len = e.len();
    let mut pairs = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            pairs.push((i, j));
        }
    }
    let mut out = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(u, v) in &pairs[a + 1..] {
            if u == i || u == j || v == i || v == j {
                continue;
            }
            let dn1 = e[i] as i128 - e[j] as i128;
            let dm1 = m[i] as i128 - m[j] as i128;
            let dn2 = e[u] as i128 - e[v] as i128;
            let dm2 = m[u] as i128 - m[v] as i128;
            if dn1 * dm2 == dn2 * dm1 {
                out.push((i, j, u, v));
            }
        }
    }
    Ok(out)
}
