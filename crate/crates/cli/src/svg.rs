//! Fixed-layout SVG figure: curves over `[0, 1] x [0.9, 2.1]`, the line
//! `y = 1`, an optional point overlay and a legend.

use std::fmt::Write;

use trace_atlas::curves::CurveKind;
use trace_atlas::{CurveTable, PointRecord};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 70.0;
const Y_MIN: f64 = 0.9;
const Y_MAX: f64 = 2.1;
const FONT: &str = r#"font-family="sans-serif" font-size="12pt""#;

fn style(kind: CurveKind) -> (&'static str, &'static str) {
    match kind {
        CurveKind::L => ("#1f77b4", "L(c)"),
        CurveKind::Ell => ("#d62728", "ℓ(c)"),
        _ => ("#2ca02c", "curve"),
    }
}

pub struct Figure<'a> {
    tables: &'a [CurveTable],
    points: &'a [PointRecord],
}

impl<'a> Figure<'a> {
    pub fn new(tables: &'a [CurveTable], points: &'a [PointRecord]) -> Self {
        Figure { tables, points }
    }

    fn x(c: f64) -> f64 {
        LEFT + c * (WIDTH - LEFT - RIGHT)
    }

    fn y(v: f64) -> f64 {
        HEIGHT - BOTTOM - (v - Y_MIN) / (Y_MAX - Y_MIN) * (HEIGHT - TOP - BOTTOM)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let (x0, x1, y0, y1) = (Self::x(0.0), Self::x(1.0), Self::y(Y_MIN), Self::y(Y_MAX));
        writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        )
        .unwrap();
        writeln!(
            s,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        )
        .unwrap();
        writeln!(
            s,
            r#"<clipPath id="plot"><rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}"/></clipPath>"#,
            x1 - x0,
            y0 - y1
        )
        .unwrap();

        // axes, ticks and labels
        writeln!(
            s,
            r#"<g id="axes" stroke="black" stroke-width="1" fill="none">"#
        )
        .unwrap();
        writeln!(
            s,
            r#"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}"/>"#,
            x1 - x0,
            y0 - y1
        )
        .unwrap();
        for i in 0..=10 {
            let x = Self::x(i as f64 / 10.0);
            writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}"/>"#,
                y0 + 5.0
            )
            .unwrap();
        }
        for i in 0..=12 {
            let y = Self::y(Y_MIN + i as f64 / 10.0);
            writeln!(
                s,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}"/>"#,
                x0 - 5.0
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();
        writeln!(s, r#"<g id="labels" {FONT} fill="black">"#).unwrap();
        for i in (0..=10).step_by(2) {
            let c = i as f64 / 10.0;
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{c:.1}</text>"#,
                Self::x(c),
                y0 + 22.0
            )
            .unwrap();
        }
        for i in (1..=11).step_by(2) {
            let v = Y_MIN + i as f64 / 10.0;
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.1}</text>"#,
                x0 - 9.0,
                Self::y(v) + 5.0
            )
            .unwrap();
        }
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">c = d/n</text>"#,
            0.5 * (x0 + x1),
            HEIGHT - 20.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">(a_(n-d) / C(n,d))^(1/d)</text>"#,
            0.5 * (y0 + y1),
            0.5 * (y0 + y1)
        )
        .unwrap();
        writeln!(s, "</g>").unwrap();

        writeln!(s, r#"<g clip-path="url(#plot)">"#).unwrap();
        writeln!(
            s,
            r##"<line id="trivial-bound" x1="{x0:.2}" y1="{:.2}" x2="{x1:.2}" y2="{:.2}" stroke="#7f7f7f" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
            Self::y(1.0),
            Self::y(1.0)
        )
        .unwrap();
        for t in self.tables {
            let (color, _) = style(t.kind);
            let pts: Vec<String> = t
                .samples
                .iter()
                .map(|&(c, v)| format!("{:.2},{:.2}", Self::x(c), Self::y(v)))
                .collect();
            writeln!(
                s,
                r#"<polyline id="curve-{}" fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                t.kind.label(),
                pts.join(" ")
            )
            .unwrap();
        }
        if !self.points.is_empty() {
            writeln!(s, r##"<g id="points" fill="#444444">"##).unwrap();
            for r in self.points {
                writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="2"/>"#,
                    Self::x(r.point.c),
                    Self::y(r.point.value)
                )
                .unwrap();
            }
            writeln!(s, "</g>").unwrap();
        }
        writeln!(s, "</g>").unwrap();

        self.legend(&mut s);
        writeln!(s, "</svg>").unwrap();
        s
    }

    fn legend(&self, s: &mut String) {
        let mut entries: Vec<(&str, &str, bool)> = self
            .tables
            .iter()
            .map(|t| style(t.kind))
            .map(|(c, l)| (c, l, false))
            .collect();
        entries.push(("#7f7f7f", "y = 1", true));
        let (lx, mut ly) = (Self::x(1.0) - 150.0, TOP + 24.0);
        writeln!(s, r#"<g id="legend" {FONT}>"#).unwrap();
        for (color, label, dashed) in entries {
            let dash = if dashed {
                r#" stroke-dasharray="6 4""#
            } else {
                ""
            };
            writeln!(
                s,
                r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"{dash}/>"#,
                ly - 5.0,
                lx + 30.0,
                ly - 5.0
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{:.2}" y="{ly:.2}" fill="black">{label}</text>"#,
                lx + 40.0
            )
            .unwrap();
            ly += 22.0;
        }
        writeln!(s, "</g>").unwrap();
    }
}
