//! Deterministic SVG drawings of traces with region labels.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_traits::ToPrimitive;

use crate::chains::degree_two_chain;
use crate::error::{Error, Result};
use crate::geometry::{rat, ratio, BBox, CurveId, Piece, Point, Rational};
use crate::maslov::maslov_via_trace_formula;
use crate::trace::{m_value, Surface, Trace};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;
const CAPTION: f64 = 30.0;
const GRID: usize = 16;

struct Frame {
    window: BBox,
    min: (f64, f64),
    scale: f64,
    height: f64,
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

impl Frame {
    fn new(window: BBox) -> Frame {
        let min = (f(&window.min.x), f(&window.min.y));
        let w = f(&window.max.x) - min.0;
        let h = f(&window.max.y) - min.1;
        let scale = SIZE / w.max(h).max(1e-9);
        Frame {
            window,
            min,
            scale,
            height: h * scale,
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            MARGIN + (x - self.min.0) * self.scale,
            MARGIN + self.height - (y - self.min.1) * self.scale,
        )
    }

    fn point(&self, p: &Point) -> (f64, f64) {
        self.map(f(&p.x), f(&p.y))
    }

    fn width(&self) -> f64 {
        f(&self.window.max.x) - self.min.0
    }
}

fn window_for(trace: &Trace) -> BBox {
    let mut pts = trace.loop_points();
    for id in [CurveId::Alpha, CurveId::Beta] {
        let c = trace.curves().curve(id);
        pts.extend(c.vertices().iter().cloned());
        if let Some(p) = c.period() {
            pts.push(&c.vertices()[0] + p);
        }
    }
    match trace.surface() {
        Surface::Annulus { period } => pts.push(period.clone()),
        Surface::Torus { e1, e2 } => {
            pts.push(e1.clone());
            pts.push(e2.clone());
        }
        _ => {}
    }
    pts.push(Point::origin());
    let b = BBox::of_points(&pts).expect("nonempty");
    let pad = (&b.max.x - &b.min.x).max(&b.max.y - &b.min.y) / rat(10);
    b.expand(&pad.max(ratio(1, 2)))
}

/// Endpoints of a piece clipped generously to the window.
fn piece_ends(frame: &Frame, p: &Piece) -> ((f64, f64), (f64, f64)) {
    let (ox, oy) = (f(&p.origin.x), f(&p.origin.y));
    let (dx, dy) = (f(&p.dir.x), f(&p.dir.y));
    let (cx, cy) = (
        frame.min.0 + frame.width() / 2.0,
        (f(&frame.window.min.y) + f(&frame.window.max.y)) / 2.0,
    );
    let reach = (frame.width() * 2.0 + (ox - cx).abs() + (oy - cy).abs()) / dx.abs().max(dy.abs());
    let lo = p.lo.as_ref().map_or(-reach, f);
    let hi = p.hi.as_ref().map_or(reach, f);
    (
        frame.map(ox + lo * dx, oy + lo * dy),
        frame.map(ox + hi * dx, oy + hi * dy),
    )
}

fn own_pieces(trace: &Trace, id: CurveId, window: &BBox) -> Vec<Piece> {
    let c = trace.curves().curve(id);
    if c.is_periodic() {
        c.pieces(id, Some(window))
    } else {
        c.pieces(id, None)
    }
}

fn draw_curve(out: &mut String, frame: &Frame, trace: &Trace, id: CurveId) {
    let (class, name) = match id {
        CurveId::Alpha => ("alpha", "α"),
        CurveId::Beta => ("beta", "β"),
    };
    let own = own_pieces(trace, id, &frame.window);
    if !trace.surface().is_planar() {
        for p in trace.curves().curve_pieces_near(id, &frame.window) {
            if own.contains(&p) {
                continue;
            }
            let (a, b) = piece_ends(frame, &p);
            let _ = writeln!(
                out,
                r#"<line class="{class} ghost" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                a.0, a.1, b.0, b.1
            );
        }
    }
    for p in &own {
        let (a, b) = piece_ends(frame, p);
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            a.0, a.1, b.0, b.1
        );
        let t = match (&p.lo, &p.hi) {
            (Some(lo), Some(hi)) => (lo + hi) / rat(2),
            (Some(lo), None) => lo + rat(1),
            (None, Some(hi)) => hi - rat(1),
            (None, None) => rat(0),
        };
        let mid = p.at(&t);
        if frame.window.contains(&mid) {
            let (mx, my) = frame.point(&mid);
            let (dx, dy) = (f(&p.dir.x), -f(&p.dir.y));
            let len = (dx * dx + dy * dy).sqrt().max(1e-9);
            let (ux, uy) = (dx / len * 7.0, dy / len * 7.0);
            let _ = writeln!(
                out,
                r#"<polygon class="{class}-arrow" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
                mx + ux,
                my + uy,
                mx - ux - uy * 0.6,
                my - uy + ux * 0.6,
                mx - ux + uy * 0.6,
                my - uy - ux * 0.6
            );
        }
    }
    if let Some(p) = own.first() {
        let (a, _) = piece_ends(frame, p);
        let _ = writeln!(
            out,
            r#"<text class="curve-name" x="{:.2}" y="{:.2}">{name}</text>"#,
            a.0.clamp(MARGIN, MARGIN + SIZE) + 4.0,
            a.1.clamp(MARGIN, MARGIN + frame.height) - 4.0
        );
    }
}

fn lattice_line(out: &mut String, frame: &Frame, through: &Point, along: &Point) {
    let p = Piece {
        origin: through.clone(),
        dir: along.clone(),
        lo: None,
        hi: None,
        index: 0,
        curve: CurveId::Alpha,
    };
    let (a, b) = piece_ends(frame, &p);
    let _ = writeln!(
        out,
        r#"<line class="domain" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
        a.0, a.1, b.0, b.1
    );
}

fn draw_domain(out: &mut String, frame: &Frame, trace: &Trace) -> Result<()> {
    let Some(deck) = trace.surface().deck()? else {
        return Ok(());
    };
    let gens = deck.generators().to_vec();
    let w = &frame.window;
    let box_at = BBox {
        min: Point::origin(),
        max: Point::origin(),
    };
    match gens.as_slice() {
        [p] => {
            let mut ks: Vec<i64> = deck
                .translates_between(&box_at, w)
                .into_iter()
                .map(|g| g[0])
                .collect();
            ks.sort_unstable();
            for k in ks {
                lattice_line(out, frame, &p.scale(&rat(k)), &p.perp());
            }
        }
        [e1, e2] => {
            let mut seen = BTreeMap::new();
            for g in deck.translates_between(&box_at, w) {
                seen.insert((0, g[0]), e1.scale(&rat(g[0])));
                seen.insert((1, g[1]), e2.scale(&rat(g[1])));
            }
            for ((axis, _), through) in seen {
                let along = if axis == 0 { e2 } else { e1 };
                lattice_line(out, frame, &through, along);
            }
        }
        _ => {}
    }
    Ok(())
}

/// Sample points on a grid, grouped into faces by curve-free adjacency.
fn face_labels(frame: &Frame, trace: &Trace) -> Result<Vec<(Point, i64)>> {
    let eval = degree_two_chain(trace)?;
    let w = &frame.window;
    let n = GRID as i64;
    let step_x = (&w.max.x - &w.min.x) / rat(n);
    let step_y = (&w.max.y - &w.min.y) / rat(n);
    let jitter = (ratio(1, 97), ratio(1, 89));
    let mut pts: Vec<Option<Point>> = Vec::with_capacity(GRID * GRID);
    for j in 0..n {
        for i in 0..n {
            let p = Point::new(
                &w.min.x + &step_x * (rat(i) + ratio(1, 2)) + &jitter.0,
                &w.min.y + &step_y * (rat(j) + ratio(1, 2)) + &jitter.1,
            );
            pts.push((!trace.curves().on_curves(&p)).then_some(p));
        }
    }
    let mut parent: Vec<usize> = (0..pts.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for j in 0..GRID {
        for i in 0..GRID {
            let a = j * GRID + i;
            for b in [
                (i + 1 < GRID).then_some(a + 1),
                (j + 1 < GRID).then_some(a + GRID),
            ]
            .into_iter()
            .flatten()
            {
                if let (Some(p), Some(q)) = (&pts[a], &pts[b]) {
                    if trace.curves().segment_clear(p, q) {
                        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }
    let mut faces: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, p) in pts.iter().enumerate() {
        if p.is_some() {
            faces.entry(root(&mut parent, k)).or_default().push(k);
        }
    }
    let mut out = Vec::new();
    for members in faces.values() {
        let cx = members.iter().map(|k| (k % GRID) as f64).sum::<f64>() / members.len() as f64;
        let cy = members.iter().map(|k| (k / GRID) as f64).sum::<f64>() / members.len() as f64;
        let best = members
            .iter()
            .copied()
            .min_by(|&a, &b| {
                let d = |k: usize| {
                    let (x, y) = ((k % GRID) as f64 - cx, (k / GRID) as f64 - cy);
                    x * x + y * y
                };
                d(a).total_cmp(&d(b)).then(a.cmp(&b))
            })
            .expect("nonempty face");
        let p = pts[best].clone().expect("sampled point");
        let value = eval.eval(&p)?;
        out.push((p, value));
    }
    Ok(out)
}

fn caption(trace: &Trace) -> String {
    let show = |r: Result<i64>| r.map_or_else(|_| "?".to_string(), |v| v.to_string());
    format!(
        "m_x={}  m_y={}  μ={}",
        show(m_value(trace, &trace.x().location)),
        show(m_value(trace, &trace.y().location)),
        show(maslov_via_trace_formula(trace))
    )
}

/// SVG 1.1 drawing of the trace. The viewport is fixed by the bounding box
/// of the curves and the loop, so equal traces give byte-identical output.
pub fn render_svg(trace: &Trace) -> Result<String> {
    let frame = Frame::new(window_for(trace));
    let width = SIZE + 2.0 * MARGIN;
    let height = frame.height + 2.0 * MARGIN + CAPTION;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(
        out,
        "<style>\n\
         .alpha {{ stroke: #1f4e9c; stroke-width: 2; }}\n\
         .beta {{ stroke: #b0302a; stroke-width: 2; stroke-dasharray: 6 3; }}\n\
         .ghost {{ stroke-opacity: 0.25; }}\n\
         .alpha-arrow {{ fill: #1f4e9c; }}\n\
         .beta-arrow {{ fill: #b0302a; }}\n\
         .domain {{ stroke: #999; stroke-width: 1; stroke-dasharray: 2 4; }}\n\
         .loop {{ fill: #f2d16b; fill-opacity: 0.35; stroke: none; }}\n\
         text {{ font-family: serif; font-size: 13px; }}\n\
         .w {{ fill: #444; font-size: 11px; }}\n\
         </style>"
    );
    let _ = writeln!(
        out,
        r#"<clipPath id="frame"><rect x="{MARGIN}" y="{MARGIN}" width="{SIZE:.2}" height="{:.2}"/></clipPath>"#,
        frame.height
    );
    let _ = writeln!(out, r#"<g clip-path="url(#frame)">"#);
    draw_domain(&mut out, &frame, trace)?;
    let loop_pts: Vec<String> = trace
        .loop_points()
        .iter()
        .map(|p| {
            let (x, y) = frame.point(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    if loop_pts.len() > 2 {
        let _ = writeln!(
            out,
            r#"<polygon class="loop" points="{}"/>"#,
            loop_pts.join(" ")
        );
    }
    draw_curve(&mut out, &frame, trace, CurveId::Alpha);
    draw_curve(&mut out, &frame, trace, CurveId::Beta);
    for (p, v) in face_labels(&frame, trace)? {
        let (x, y) = frame.point(&p);
        let _ = writeln!(out, r#"<text class="w" x="{x:.2}" y="{y:.2}">w={v}</text>"#);
    }
    for (name, ip) in [("x", trace.x()), ("y", trace.y())] {
        let (x, y) = frame.point(&ip.location);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{name}</text>"#,
            x + 5.0,
            y + 14.0
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<text class="caption" x="{MARGIN}" y="{:.2}">{}</text>"#,
        frame.height + 2.0 * MARGIN + CAPTION / 2.0,
        caption(trace)
    );
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

pub fn write_svg(trace: &Trace, out: &Path) -> Result<()> {
    let svg = render_svg(trace)?;
    std::fs::write(out, svg).map_err(|e| Error::Io(format!("{}: {e}", out.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::half_disc;

    #[test]
    fn half_disc_labels() {
        let svg = render_svg(&half_disc()).unwrap();
        assert!(svg.contains(">w=1<"), "{svg}");
        assert!(svg.contains(">w=0<"));
        assert!(svg.contains("m_x=1"));
        assert!(svg.contains("μ=1"));
        assert_eq!(svg, render_svg(&half_disc()).unwrap());
    }
}
