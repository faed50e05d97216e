//! Deterministic SVG drawings of Newton polygons, subdivisions and tropical curves.
//! The view box is the lattice bounding box of the data with a margin of one unit.

use std::fmt::Write;

use num::{ToPrimitive, Zero};

use crate::newton::{NewtonPolygon, NewtonPolytope3, TropicalCurve};
use crate::rational::{fmt_rational, int, Rational};

const UNIT: i64 = 60;

struct Canvas {
    xmin: i64,
    xmax: i64,
    ymin: i64,
    ymax: i64,
    body: String,
}

fn floor(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().unwrap_or(0)
}

fn ceil(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().unwrap_or(0)
}

impl Canvas {
    fn new(points: &[(Rational, Rational)]) -> Canvas {
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (0, 0, 0, 0);
        if let Some(first) = points.first() {
            (xmin, xmax, ymin, ymax) = (floor(&first.0), ceil(&first.0), floor(&first.1), ceil(&first.1));
        }
        for (x, y) in points {
            xmin = xmin.min(floor(x));
            xmax = xmax.max(ceil(x));
            ymin = ymin.min(floor(y));
            ymax = ymax.max(ceil(y));
        }
        Canvas { xmin: xmin - 1, xmax: xmax + 1, ymin: ymin - 1, ymax: ymax + 1, body: String::new() }
    }

    fn px(&self, x: &Rational) -> i64 {
        ((x - int(self.xmin)) * int(UNIT)).round().to_integer().to_i64().unwrap_or(0)
    }

    fn py(&self, y: &Rational) -> i64 {
        ((int(self.ymax) - y) * int(UNIT)).round().to_integer().to_i64().unwrap_or(0)
    }

    fn axes(&mut self) {
        let (w, h) = ((self.xmax - self.xmin) * UNIT, (self.ymax - self.ymin) * UNIT);
        let (ox, oy) = (self.px(&Rational::zero()), self.py(&Rational::zero()));
        for x in self.xmin..=self.xmax {
            let p = self.px(&int(x));
            let _ = writeln!(self.body, r##"<line x1="{p}" y1="0" x2="{p}" y2="{h}" stroke="#eee"/>"##);
        }
        for y in self.ymin..=self.ymax {
            let p = self.py(&int(y));
            let _ = writeln!(self.body, r##"<line x1="0" y1="{p}" x2="{w}" y2="{p}" stroke="#eee"/>"##);
        }
        let _ = writeln!(self.body, r##"<line x1="0" y1="{oy}" x2="{w}" y2="{oy}" stroke="#999"/>"##);
        let _ = writeln!(self.body, r##"<line x1="{ox}" y1="0" x2="{ox}" y2="{h}" stroke="#999"/>"##);
    }

    fn line(&mut self, a: &(Rational, Rational), b: &(Rational, Rational), width: i64) {
        let (x1, y1, x2, y2) = (self.px(&a.0), self.py(&a.1), self.px(&b.0), self.py(&b.1));
        let _ = writeln!(
            self.body,
            r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="{width}"/>"##
        );
    }

    fn dot(&mut self, p: &(Rational, Rational), filled: bool) {
        let (x, y) = (self.px(&p.0), self.py(&p.1));
        let fill = if filled { "black" } else { "white" };
        let _ = writeln!(self.body, r##"<circle cx="{x}" cy="{y}" r="4" fill="{fill}" stroke="black"/>"##);
    }

    fn label(&mut self, p: &(Rational, Rational), text: &str) {
        let (x, y) = (self.px(&p.0) + 6, self.py(&p.1) - 6);
        let _ = writeln!(self.body, r##"<text x="{x}" y="{y}" font-size="12">{text}</text>"##);
    }

    /// Point where the ray from `p` in direction `d` leaves the view box.
    fn ray_end(&self, p: &(Rational, Rational), d: (i64, i64)) -> (Rational, Rational) {
        let mut t: Option<Rational> = None;
        let mut consider = |bound: i64, start: &Rational, step: i64| {
            if step != 0 {
                let s = (int(bound) - start) / int(step);
                if s > Rational::zero() && t.as_ref().map_or(true, |x| s < *x) {
                    t = Some(s);
                }
            }
        };
        consider(if d.0 > 0 { self.xmax } else { self.xmin }, &p.0, d.0);
        consider(if d.1 > 0 { self.ymax } else { self.ymin }, &p.1, d.1);
        let t = t.unwrap_or_else(Rational::zero);
        (&p.0 + &t * int(d.0), &p.1 + &t * int(d.1))
    }

    fn finish(self) -> String {
        let (w, h) = ((self.xmax - self.xmin) * UNIT, (self.ymax - self.ymin) * UNIT);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

fn pt(i: i64, j: i64) -> (Rational, Rational) {
    (int(i), int(j))
}

/// `N(P)` in the `(i, δ)` plane: support points, lower hull and the upward rays
/// bounding the region above it.
pub fn render_newton_polygon(np: &NewtonPolygon) -> String {
    let pts: Vec<(Rational, Rational)> = np.points.iter().map(|(i, d)| (int(*i as i64), d.clone())).collect();
    let mut c = Canvas::new(&pts);
    c.axes();
    let verts: Vec<(Rational, Rational)> = np.vertices.iter().map(|(i, d)| (int(*i as i64), d.clone())).collect();
    for w in verts.windows(2) {
        c.line(&w[0], &w[1], 3);
    }
    if let (Some(first), Some(last)) = (verts.first(), verts.last()) {
        let up = c.ray_end(first, (0, 1));
        c.line(first, &up, 3);
        let up = c.ray_end(last, (0, 1));
        c.line(last, &up, 3);
    }
    for p in &pts {
        c.dot(p, verts.contains(p));
    }
    for v in &verts {
        c.label(v, &format!("({}, {})", v.0, fmt_rational(&v.1)));
    }
    c.finish()
}

/// The projected polytope `𝒩₂` in the `(i, j)` plane with the subdivision induced by
/// the lower faces.
pub fn render_subdivision(poly: &NewtonPolytope3) -> String {
    let pts: Vec<(Rational, Rational)> = poly.points.iter().map(|e| pt(e.0 as i64, e.1 as i64)).collect();
    let mut c = Canvas::new(&pts);
    c.axes();
    for f in &poly.faces {
        for (k, a) in f.cell.iter().enumerate() {
            let b = f.cell[(k + 1) % f.cell.len()];
            c.line(&pt(a.0, a.1), &pt(b.0, b.1), 2);
        }
    }
    for (a, b) in &poly.segments {
        c.line(&pt(a.0, a.1), &pt(b.0, b.1), 2);
    }
    for (k, a) in poly.n2.iter().enumerate() {
        let b = poly.n2[(k + 1) % poly.n2.len()];
        c.line(&pt(a.0, a.1), &pt(b.0, b.1), 3);
    }
    let mut seen = Vec::new();
    for p in &pts {
        if !seen.contains(p) {
            c.dot(p, true);
            seen.push(p.clone());
        }
    }
    c.finish()
}

/// The tropical curve: labelled vertices, bounded edges, rays and full lines, with
/// multiplicities above one written next to the edges.
pub fn render_tropical(curve: &TropicalCurve) -> String {
    let mut pts: Vec<(Rational, Rational)> = curve.vertices.clone();
    pts.extend(curve.lines.iter().map(|l| l.point.clone()));
    let mut c = Canvas::new(&pts);
    c.axes();
    for e in &curve.edges {
        let (a, b) = (&curve.vertices[e.from], &curve.vertices[e.to]);
        c.line(a, b, 2);
        if e.multiplicity > 1 {
            let mid = ((&a.0 + &b.0) / int(2), (&a.1 + &b.1) / int(2));
            c.label(&mid, &e.multiplicity.to_string());
        }
    }
    for r in &curve.rays {
        let a = curve.vertices[r.from].clone();
        let b = c.ray_end(&a, r.direction);
        c.line(&a, &b, 2);
        if r.multiplicity > 1 {
            let mid = ((&a.0 + &b.0) / int(2), (&a.1 + &b.1) / int(2));
            c.label(&mid, &r.multiplicity.to_string());
        }
    }
    for l in &curve.lines {
        let a = c.ray_end(&l.point, l.direction);
        let b = c.ray_end(&l.point, (-l.direction.0, -l.direction.1));
        c.line(&a, &b, 2);
        if l.multiplicity > 1 {
            c.label(&l.point, &l.multiplicity.to_string());
        }
    }
    for v in &curve.vertices {
        c.dot(v, true);
        c.label(v, &format!("({}, {})", fmt_rational(&v.0), fmt_rational(&v.1)));
    }
    c.finish()
}
