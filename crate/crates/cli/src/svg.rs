//! Plain SVG pictures for inspection; the layout is not normative.

use std::fmt::Write as _;

use dimer_core::{Point, Q};
use dimer_tropical::TropicalModelQ;
use num_traits::ToPrimitive;

const SCALE: f64 = 60.0;
const MARGIN: f64 = 40.0;

/// Six significant digits, printed without trailing noise.
fn num(x: f64) -> String {
    let r: f64 = format!("{x:.5e}").parse().expect("float");
    format!("{r}")
}

fn to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

struct Canvas {
    min: [f64; 2],
    max: [f64; 2],
    body: String,
}

impl Canvas {
    fn new(points: impl IntoIterator<Item = [f64; 2]>) -> Canvas {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for i in 0..2 {
                min[i] = min[i].min(p[i]);
                max[i] = max[i].max(p[i]);
            }
        }
        if !min[0].is_finite() {
            (min, max) = ([0.0; 2], [1.0; 2]);
        }
        Canvas { min, max, body: String::new() }
    }

    /// Screen coordinates, y pointing up.
    fn at(&self, p: [f64; 2]) -> (String, String) {
        (num(MARGIN + (p[0] - self.min[0]) * SCALE), num(MARGIN + (self.max[1] - p[1]) * SCALE))
    }

    fn line(&mut self, p: [f64; 2], q: [f64; 2], style: &str) {
        let ((x1, y1), (x2, y2)) = (self.at(p), self.at(q));
        writeln!(self.body, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>"#).unwrap();
    }

    fn dot(&mut self, p: [f64; 2], r: f64, label: Option<String>) {
        let (x, y) = self.at(p);
        writeln!(self.body, r#"<circle cx="{x}" cy="{y}" r="{}" fill="black"/>"#, num(r)).unwrap();
        if let Some(l) = label {
            writeln!(self.body, r#"<text x="{x}" y="{y}" dx="6" dy="-6" font-size="12">{l}</text>"#).unwrap();
        }
    }

    fn finish(self) -> String {
        let w = num((self.max[0] - self.min[0]) * SCALE + 2.0 * MARGIN);
        let h = num((self.max[1] - self.min[1]) * SCALE + 2.0 * MARGIN);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\">\n<!-- non-normative rendering -->\n{}</svg>\n",
            self.body
        )
    }
}

fn fp(p: Point) -> [f64; 2] {
    [p[0] as f64, p[1] as f64]
}

/// Matching polygon: hull edges and lattice points labelled by multiplicity.
pub fn polygon(corners: &[Point], points: &[(Point, usize)]) -> String {
    let mut c = Canvas::new(points.iter().map(|(p, _)| fp(*p)));
    for i in 0..corners.len() {
        c.line(fp(corners[i]), fp(corners[(i + 1) % corners.len()]), r#"stroke="black" stroke-width="2""#);
    }
    for &(p, m) in points {
        c.dot(fp(p), 4.0, Some(m.to_string()));
    }
    c.finish()
}

/// Tropical curve: nodes, bounded edges and legs of unit length.
pub fn tropical(m: &TropicalModelQ) -> String {
    let nodes: Vec<[f64; 2]> = m.curve.nodes.iter().map(|n| [to_f64(&n[0]), to_f64(&n[1])]).collect();
    let legs: Vec<([f64; 2], [f64; 2])> = m
        .curve
        .legs
        .iter()
        .map(|l| {
            let s = nodes[l.node];
            let d = fp(l.direction);
            let n = (d[0] * d[0] + d[1] * d[1]).sqrt().max(1.0);
            (s, [s[0] + d[0] / n, s[1] + d[1] / n])
        })
        .collect();
    let mut c = Canvas::new(nodes.iter().copied().chain(legs.iter().map(|l| l.1)));
    for e in &m.curve.edges {
        let width = num(1.0 + e.multiplicity as f64);
        c.line(nodes[e.nodes[0]], nodes[e.nodes[1]], &format!(r#"stroke="black" stroke-width="{width}""#));
    }
    for (s, t) in legs {
        c.line(s, t, r#"stroke="gray" stroke-dasharray="4""#);
    }
    for (i, &p) in nodes.iter().enumerate() {
        c.dot(p, 3.0, Some((i + 1).to_string()));
    }
    c.finish()
}
