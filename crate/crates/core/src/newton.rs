//! Newton polygons of operators, the 3D Newton polytope of an exact operator,
//! its lower-hull subdivision and the dual tropical curve.

use std::collections::{BTreeMap, BTreeSet};

use num::{Integer, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::local::LocalOperator;
use crate::operator::{Exponent, PolyOperator};
use crate::rational::{fmt_rational, int, Rational};

type Pt = (Rational, Rational);

fn cross(o: &Pt, a: &Pt, b: &Pt) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Lower convex hull (as a function of the first coordinate) with collinear points dropped.
fn lower_hull(points: &[Pt]) -> Vec<Pt> {
    let mut best: BTreeMap<Rational, Rational> = BTreeMap::new();
    for (x, y) in points {
        best.entry(x.clone())
            .and_modify(|v| {
                if y < v {
                    *v = y.clone()
                }
            })
            .or_insert_with(|| y.clone());
    }
    let mut hull: Vec<Pt> = Vec::new();
    for p in best.into_iter() {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) <= Rational::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Full convex hull (counter-clockwise, collinear points dropped).
fn convex_hull(points: &[Pt]) -> Vec<Pt> {
    let mut pts: Vec<Pt> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Rational::zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Pt> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Rational::zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeData {
    #[serde(serialize_with = "ser_rat")]
    pub slope: Rational,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Lower hull vertices `(i, δ_M(a_i))` in increasing `i`.
    pub vertices: Vec<(usize, Rational)>,
    /// Every point `(i, δ_M(a_i))` with `a_i ≠ 0`.
    pub points: Vec<(usize, Rational)>,
}

impl NewtonPolygon {
    pub fn from_points(points: Vec<(usize, Rational)>) -> NewtonPolygon {
        let pts: Vec<Pt> = points.iter().map(|(i, d)| (int(*i as i64), d.clone())).collect();
        let vertices = lower_hull(&pts)
            .into_iter()
            .map(|(x, y)| (x.to_integer().try_into().unwrap(), y))
            .collect();
        NewtonPolygon { vertices, points }
    }

    pub fn slopes(&self) -> Vec<SlopeData> {
        self.vertices
            .windows(2)
            .map(|w| {
                let len = w[1].0 - w[0].0;
                SlopeData { slope: (&w[1].1 - &w[0].1) / int(len as i64), length: len }
            })
            .collect()
    }

    pub fn is_regular_singular(&self) -> bool {
        let s = self.slopes();
        s.len() == 1 && s[0].slope.is_zero()
    }

    /// Height of the polygon above `i` (on the hull), for `i` inside its range.
    pub fn height_at(&self, i: usize) -> Option<Rational> {
        for w in self.vertices.windows(2) {
            if w[0].0 <= i && i <= w[1].0 {
                let t = int((i - w[0].0) as i64) / int((w[1].0 - w[0].0) as i64);
                return Some(&w[0].1 + t * (&w[1].1 - &w[0].1));
            }
        }
        self.vertices.iter().find(|v| v.0 == i).map(|v| v.1.clone())
    }

    /// The edge with slope `s`, as `(i_start, height_start, i_end)`.
    pub fn edge(&self, s: &Rational) -> Result<(usize, Rational, usize)> {
        for w in self.vertices.windows(2) {
            let len = w[1].0 - w[0].0;
            if (&w[1].1 - &w[0].1) / int(len as i64) == *s {
                return Ok((w[0].0, w[0].1.clone(), w[1].0));
            }
        }
        Err(Error::NotASlope(fmt_rational(s)))
    }
}

/// `N(P)`: lower hull of `(i, δ_M(a_i))`.
pub fn newton_polygon(p: &LocalOperator) -> NewtonPolygon {
    let points = p
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.delta_m().map(|d| (i, d)))
        .collect();
    NewtonPolygon::from_points(points)
}

pub fn slopes(np: &NewtonPolygon) -> Vec<SlopeData> {
    np.slopes()
}

pub fn is_regular_singular(p: &LocalOperator) -> bool {
    newton_polygon(p).is_regular_singular()
}

/// Polynomial in `L` (coefficients of `L^0, L^1, ...`) built from the leading
/// `q`-coefficients of the lattice points on the edge of slope `s`.
pub fn edge_polynomial(p: &LocalOperator, s: &Rational) -> Result<Vec<Rational>> {
    let np = newton_polygon(p);
    let (i0, h0, i1) = np.edge(s)?;
    let mut out = vec![Rational::zero(); i1 - i0 + 1];
    for i in i0..=i1 {
        let h = &h0 + s * int((i - i0) as i64);
        if let Some(c) = p.coeff(i).coeff(&h) {
            if !c.is_zero() {
                out[i - i0] = c.leading_term()?;
            }
        }
    }
    Ok(out)
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

/// A lower face of the 3D Newton polytope: the plane `k = a i + b j + c` and the
/// support points on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerFace {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub points: Vec<Exponent>,
    /// Projected cell, counter-clockwise.
    pub cell: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope3 {
    pub points: Vec<Exponent>,
    /// Vertices of the projection `𝒩₂`, counter-clockwise.
    pub n2: Vec<(i64, i64)>,
    /// 2-dimensional lower faces; their projections tile `𝒩₂` when it is 2-dimensional.
    pub faces: Vec<LowerFace>,
    /// Lower edges when `𝒩₂` is a segment (all support points collinear in the plane).
    pub segments: Vec<((i64, i64), (i64, i64))>,
}

impl NewtonPolytope3 {
    pub fn width_l(&self) -> i64 {
        let xs = self.n2.iter().map(|p| p.0);
        xs.clone().max().unwrap_or(0) - xs.min().unwrap_or(0)
    }

    pub fn width_m(&self) -> i64 {
        let ys = self.n2.iter().map(|p| p.1);
        ys.clone().max().unwrap_or(0) - ys.min().unwrap_or(0)
    }
}

fn to_pt(p: (i64, i64)) -> Pt {
    (int(p.0), int(p.1))
}

fn from_pt(p: &Pt) -> (i64, i64) {
    (p.0.to_integer().try_into().unwrap(), p.1.to_integer().try_into().unwrap())
}

fn proj(e: &Exponent) -> (i64, i64) {
    (e.0 as i64, e.1 as i64)
}

/// Plane `k = a i + b j + c` through three points with non-collinear projections.
fn plane(p: &Exponent, q: &Exponent, r: &Exponent) -> Option<(Rational, Rational, Rational)> {
    let (x1, y1, z1) = (int(p.0 as i64), int(p.1 as i64), int(p.2 as i64));
    let (x2, y2, z2) = (int(q.0 as i64), int(q.1 as i64), int(q.2 as i64));
    let (x3, y3, z3) = (int(r.0 as i64), int(r.1 as i64), int(r.2 as i64));
    let det = (&x2 - &x1) * (&y3 - &y1) - (&x3 - &x1) * (&y2 - &y1);
    if det.is_zero() {
        return None;
    }
    let a = ((&z2 - &z1) * (&y3 - &y1) - (&z3 - &z1) * (&y2 - &y1)) / &det;
    let b = ((&x2 - &x1) * (&z3 - &z1) - (&x3 - &x1) * (&z2 - &z1)) / &det;
    let c = &z1 - &a * &x1 - &b * &y1;
    Some((a, b, c))
}

pub fn newton_polytope3(p: &PolyOperator) -> NewtonPolytope3 {
    newton_polytope3_of(&p.support())
}

pub fn newton_polytope3_of(support: &[Exponent]) -> NewtonPolytope3 {
    let points: Vec<Exponent> = support.to_vec();
    let proj_pts: Vec<Pt> = points.iter().map(|e| to_pt(proj(e))).collect();
    let n2: Vec<(i64, i64)> = convex_hull(&proj_pts).iter().map(from_pt).collect();
    let mut faces = Vec::new();
    let mut segments = Vec::new();
    if n2.len() >= 3 {
        let mut seen: BTreeSet<(Rational, Rational, Rational)> = BTreeSet::new();
        let n = points.len();
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let Some(pl) = plane(&points[x], &points[y], &points[z]) else { continue };
                    if seen.contains(&pl) {
                        continue;
                    }
                    let (a, b, c) = &pl;
                    let mut on = Vec::new();
                    let mut lower = true;
                    for e in &points {
                        let v = int(e.2 as i64) - a * int(e.0 as i64) - b * int(e.1 as i64) - c;
                        if v.is_negative() {
                            lower = false;
                            break;
                        }
                        if v.is_zero() {
                            on.push(*e);
                        }
                    }
                    if lower {
                        let cell_pts: Vec<Pt> = on.iter().map(|e| to_pt(proj(e))).collect();
                        let cell = convex_hull(&cell_pts).iter().map(from_pt).collect();
                        faces.push(LowerFace { a: a.clone(), b: b.clone(), c: c.clone(), points: on, cell });
                        seen.insert(pl);
                    }
                }
            }
        }
        faces.sort_by(|f, g| (&f.a, &f.b).cmp(&(&g.a, &g.b)));
    } else if n2.len() == 2 {
        // One-dimensional projection: lower hull along the line, parametrized by a lattice step.
        let (p0, p1) = (n2[0], n2[1]);
        let g = (p1.0 - p0.0).gcd(&(p1.1 - p0.1));
        let step = ((p1.0 - p0.0) / g, (p1.1 - p0.1) / g);
        let param = |e: &Exponent| -> i64 {
            let (x, y) = proj(e);
            if step.0 != 0 {
                (x - p0.0) / step.0
            } else {
                (y - p0.1) / step.1
            }
        };
        let pts: Vec<Pt> = points.iter().map(|e| (int(param(e)), int(e.2 as i64))).collect();
        let hull = lower_hull(&pts);
        for w in hull.windows(2) {
            let t0: i64 = w[0].0.to_integer().try_into().unwrap();
            let t1: i64 = w[1].0.to_integer().try_into().unwrap();
            segments.push((
                (p0.0 + t0 * step.0, p0.1 + t0 * step.1),
                (p0.0 + t1 * step.0, p0.1 + t1 * step.1),
            ));
        }
    }
    NewtonPolytope3 { points, n2, faces, segments }
}

/// Lemma check: the lower hull of `𝒩₂` (in the `M` direction) equals `N(P)`.
pub fn lemma_n2_n1_check(p: &PolyOperator) -> bool {
    let pts: Vec<Pt> = p.support().iter().map(|e| to_pt(proj(e))).collect();
    let from_n2: Vec<(usize, Rational)> = lower_hull(&pts)
        .into_iter()
        .map(|(x, y)| (x.to_integer().try_into().unwrap(), y))
        .collect();
    newton_polygon(&p.to_local()).vertices == from_n2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropicalEdge {
    pub from: usize,
    pub to: usize,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropicalRay {
    pub from: usize,
    pub direction: (i64, i64),
    pub multiplicity: i64,
}

/// A full line `{point + t·direction}` (only when `𝒩₂` is a segment).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropicalLine {
    #[serde(serialize_with = "ser_pt")]
    pub point: Pt,
    pub direction: (i64, i64),
    pub multiplicity: i64,
}

fn ser_pt<S: serde::Serializer>(p: &Pt, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&fmt_rational(&p.0))?;
    t.serialize_element(&fmt_rational(&p.1))?;
    t.end()
}

fn ser_pts<S: serde::Serializer>(v: &[Pt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        seq.serialize_element(&[fmt_rational(&p.0), fmt_rational(&p.1)])?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct TropicalCurve {
    #[serde(serialize_with = "ser_pts")]
    pub vertices: Vec<Pt>,
    pub edges: Vec<TropicalEdge>,
    pub rays: Vec<TropicalRay>,
    pub lines: Vec<TropicalLine>,
}

fn primitive(dx: &Rational, dy: &Rational) -> (i64, i64) {
    // scale to integers, then divide by the gcd
    let l = dx.denom().lcm(dy.denom());
    let x = (dx * Rational::from_integer(l.clone())).to_integer();
    let y = (dy * Rational::from_integer(l)).to_integer();
    let g = x.gcd(&y);
    let x: i64 = (x / &g).try_into().unwrap();
    let y: i64 = (y / &g).try_into().unwrap();
    (x, y)
}

impl TropicalCurve {
    /// `Σ multiplicity · primitive direction` at every vertex is zero.
    pub fn is_balanced(&self) -> bool {
        let mut sums = vec![(0i64, 0i64); self.vertices.len()];
        for e in &self.edges {
            let (a, b) = (&self.vertices[e.from], &self.vertices[e.to]);
            let (x, y) = primitive(&(&b.0 - &a.0), &(&b.1 - &a.1));
            sums[e.from].0 += e.multiplicity * x;
            sums[e.from].1 += e.multiplicity * y;
            sums[e.to].0 -= e.multiplicity * x;
            sums[e.to].1 -= e.multiplicity * y;
        }
        for r in &self.rays {
            sums[r.from].0 += r.multiplicity * r.direction.0;
            sums[r.from].1 += r.multiplicity * r.direction.1;
        }
        sums.iter().all(|s| *s == (0, 0))
    }

    /// Evaluates `F(x, y)` and reports whether its minimum is attained at least twice.
    pub fn on_curve(support: &[Exponent], x: &Rational, y: &Rational) -> bool {
        let vals: Vec<Rational> = support
            .iter()
            .map(|e| int(e.0 as i64) * x + int(e.1 as i64) * y + int(e.2 as i64))
            .collect();
        let m = vals.iter().min().unwrap();
        vals.iter().filter(|v| *v == m).count() >= 2
    }
}

/// The tropical curve of `F(x, y) = min_{(i,j,k)} {ix + jy + k}`.
pub fn tropical_curve(p: &PolyOperator) -> TropicalCurve {
    tropical_curve_of(&p.support())
}

pub fn tropical_curve_of(support: &[Exponent]) -> TropicalCurve {
    let poly = newton_polytope3_of(support);
    let mut curve = TropicalCurve::default();
    if !poly.segments.is_empty() {
        for (a, b) in &poly.segments {
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let g = dx.gcd(&dy);
            // the two monomials tie on { i_a x + j_a y + k_a = i_b x + j_b y + k_b }
            let ka = support.iter().filter(|e| proj(e) == *a).map(|e| e.2).min().unwrap();
            let kb = support.iter().filter(|e| proj(e) == *b).map(|e| e.2).min().unwrap();
            let dk = int(kb as i64 - ka as i64);
            let n2 = int(dx * dx + dy * dy);
            let point = (-&dk * int(dx) / &n2, -&dk * int(dy) / &n2);
            curve.lines.push(TropicalLine { point, direction: (-dy / g, dx / g), multiplicity: g });
        }
        return curve;
    }
    for f in &poly.faces {
        curve.vertices.push((-f.a.clone(), -f.b.clone()));
    }
    let mut edge_owner: BTreeMap<((i64, i64), (i64, i64)), Vec<usize>> = BTreeMap::new();
    for (idx, f) in poly.faces.iter().enumerate() {
        let n = f.cell.len();
        for t in 0..n {
            let (u, v) = (f.cell[t], f.cell[(t + 1) % n]);
            let key = if u < v { (u, v) } else { (v, u) };
            edge_owner.entry(key).or_default().push(idx);
        }
    }
    for ((u, v), owners) in edge_owner {
        let (dx, dy) = (v.0 - u.0, v.1 - u.1);
        let mult = dx.gcd(&dy);
        match owners.as_slice() {
            [a, b] => curve.edges.push(TropicalEdge { from: *a, to: *b, multiplicity: mult }),
            [a] => {
                // inward normal of the cell at this boundary edge
                let cell = &poly.faces[*a].cell;
                let c = cell.iter().find(|p| **p != u && **p != v).unwrap();
                let mut nrm = (-dy / mult, dx / mult);
                let side = nrm.0 * (c.0 - u.0) + nrm.1 * (c.1 - u.1);
                if side < 0 {
                    nrm = (-nrm.0, -nrm.1);
                }
                curve.rays.push(TropicalRay { from: *a, direction: nrm, multiplicity: mult });
            }
            _ => unreachable!("a subdivision edge bounds at most two cells"),
        }
    }
    curve
}

/// Whether `min_{(i,j,k)} {δ(n+i) - δ(n) + jn + k}` is attained at least twice for
/// every `n ≥ n_lo` with `n + d` inside the data.
pub fn tropical_degree_check(delta: &[Rational], support: &[Exponent], n_lo: usize) -> Result<bool> {
    let d = support.iter().map(|e| e.0 as usize).max().unwrap_or(0);
    if delta.len() < n_lo + d + 1 {
        return Err(Error::RangeTooShort);
    }
    for n in n_lo..delta.len() - d {
        let vals: Vec<Rational> = support
            .iter()
            .map(|e| &delta[n + e.0 as usize] - &delta[n] + int(e.1 as i64 * n as i64 + e.2 as i64))
            .collect();
        let m = vals.iter().min().unwrap();
        if vals.iter().filter(|v| *v == m).count() < 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All `(c₁, c₂)` solving the pair equations `c₂ i + j = c₂ i' + j'` and
/// `c₂ i²/2 + c₁ i + k = c₂ i'²/2 + c₁ i' + k'` over support pairs with `i ≠ i'`.
pub fn candidate_c1c2(support: &[Exponent]) -> BTreeSet<(Rational, Rational)> {
    let mut out = BTreeSet::new();
    for (x, p) in support.iter().enumerate() {
        for p2 in &support[x + 1..] {
            if p.0 == p2.0 {
                continue;
            }
            let (i, j, k) = (int(p.0 as i64), int(p.1 as i64), int(p.2 as i64));
            let (i2, j2, k2) = (int(p2.0 as i64), int(p2.1 as i64), int(p2.2 as i64));
            let c2 = -(&j - &j2) / (&i - &i2);
            let half = Rational::new(1.into(), 2.into());
            let c1 = -(&half * &c2 * (&i * &i - &i2 * &i2) + &k - &k2) / (&i - &i2);
            out.insert((c1, c2));
        }
    }
    out
}

impl NewtonPolygon {
    /// Sum of slope lengths.
    pub fn width(&self) -> usize {
        match (self.vertices.first(), self.vertices.last()) {
            (Some(a), Some(b)) => b.0 - a.0,
            _ => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::example_annihilator;
    use crate::rational::rat;

    fn op(s: &str) -> PolyOperator {
        s.parse().unwrap()
    }

    #[test]
    fn polygon_examples() {
        let np = newton_polygon(&example_annihilator().to_local());
        assert_eq!(np.slopes(), vec![SlopeData { slope: int(0), length: 2 }]);
        assert!(np.is_regular_singular());
        let np = newton_polygon(&op("M + L + M^3 L^2").to_local());
        assert_eq!(
            np.slopes(),
            vec![SlopeData { slope: int(-1), length: 1 }, SlopeData { slope: int(3), length: 1 }]
        );
        assert!(newton_polygon(&op("L").to_local()).slopes().is_empty());
        assert!(!is_regular_singular(&op("L + M").to_local()));
        assert!(is_regular_singular(&op("L^2 + L + 1").to_local()));
    }

    #[test]
    fn edge_polynomials() {
        let pf = example_annihilator().to_local();
        assert_eq!(edge_polynomial(&pf, &int(0)).unwrap(), vec![int(1), int(-2), int(1)]);
        assert_eq!(edge_polynomial(&op("L - 1 - M").to_local(), &int(0)).unwrap(), vec![int(-1), int(1)]);
        assert!(matches!(edge_polynomial(&pf, &int(1)), Err(Error::NotASlope(_))));
    }

    #[test]
    fn tropical_line() {
        let c = tropical_curve_of(&[(1, 0, 0), (0, 1, 0), (0, 0, 0)]);
        assert_eq!(c.vertices, vec![(int(0), int(0))]);
        let mut dirs: Vec<(i64, i64)> = c.rays.iter().map(|r| r.direction).collect();
        dirs.sort();
        assert_eq!(dirs, vec![(-1, -1), (0, 1), (1, 0)]);
        assert!(c.is_balanced());
        assert_eq!(tropical_curve_of(&[(0, 0, 0)]), TropicalCurve::default());
    }

    #[test]
    fn example_tropical_vertices() {
        let c = tropical_curve(&example_annihilator());
        let got: BTreeSet<Pt> = c.vertices.iter().cloned().collect();
        let want: BTreeSet<Pt> = [
            (int(-1), int(-2)),
            (int(3), int(-2)),
            (int(0), rat(-3, 2)),
            (int(1), rat(-3, 2)),
            (int(0), int(-1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        assert!(c.is_balanced());
        let support = example_annihilator().support();
        for v in &c.vertices {
            assert!(TropicalCurve::on_curve(&support, &v.0, &v.1));
        }
    }

    #[test]
    fn polytope_widths() {
        let p = newton_polytope3(&example_annihilator());
        assert_eq!((p.width_l(), p.width_m()), (2, 6));
        assert!(lemma_n2_n1_check(&example_annihilator()));
        assert!(lemma_n2_n1_check(&op("L - q M")));
    }

    #[test]
    fn candidates() {
        let c = candidate_c1c2(&[(0, 0, 0), (1, 1, 0)]);
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(rat(1, 2), int(-1))]);
        assert!(candidate_c1c2(&[(1, 0, 0), (1, 2, 3)]).is_empty());
        assert!(candidate_c1c2(&example_annihilator().support()).contains(&(int(0), int(0))));
    }

    #[test]
    fn degree_equation() {
        let s = example_annihilator().support();
        let zeros = vec![int(0); 20];
        assert!(tropical_degree_check(&zeros, &s, 0).unwrap());
        let cubes: Vec<Rational> = (0..20).map(|n| int(n * n * n)).collect();
        assert!(!tropical_degree_check(&cubes, &s, 0).unwrap());
        assert_eq!(tropical_degree_check(&zeros[..2], &s, 0), Err(Error::RangeTooShort));
    }
}
