//! Static SVG rendering of book drawings in the circular model: one circle
//! per page, identical vertex placement in every panel, edges as straight
//! chords.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::drawings::{count_crossings, BookDrawing, Vertex};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub radius: f64,
    pub vertex_radius: f64,
    /// Space around each circle, also holding the panel caption.
    pub padding: f64,
    /// Panels per row.
    pub columns: usize,
    pub edge_width: f64,
    pub show_labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { radius: 150.0, vertex_radius: 6.0, padding: 40.0, columns: 2, edge_width: 1.2, show_labels: false }
    }
}

const STYLE: &str = "\
.edge{stroke:#222;fill:none}
.spine{stroke:#999;fill:none;stroke-dasharray:4 3}
.black{fill:#000;stroke:#000}
.white{fill:#fff;stroke:#000;stroke-width:1.5}
.caption{font-family:sans-serif;font-size:14px;text-anchor:middle}
.label{font-family:sans-serif;font-size:9px;text-anchor:middle;dominant-baseline:central}";

/// Renders `d`; the output depends only on `d` and `spec`.
pub fn render(d: &BookDrawing, spec: &RenderSpec) -> Result<String> {
    let report = count_crossings(d)?;
    let layout = d.layout();
    let len = layout.len().max(1);
    let columns = spec.columns.clamp(1, d.k());
    let rows = d.k().div_ceil(columns);
    let cell = 2.0 * (spec.radius + spec.padding);
    let header = 30.0;
    let width = columns as f64 * cell;
    let height = rows as f64 * cell + header;

    // position i sits at angle 2 pi i / len, clockwise from the top
    let point = |pos: usize, cx: f64, cy: f64| {
        let angle = 2.0 * PI * pos as f64 / len as f64;
        (cx + spec.radius * angle.sin(), cy - spec.radius * angle.cos())
    };

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(svg, "<style>{STYLE}</style>").unwrap();
    writeln!(
        svg,
        r#"<text class="caption" x="{:.2}" y="20">K({},{}) in {} page{}, {} crossing{}</text>"#,
        width / 2.0,
        d.m(),
        d.n(),
        d.k(),
        if d.k() == 1 { "" } else { "s" },
        report.total,
        if report.total == 1 { "" } else { "s" },
    )
    .unwrap();

    for page in 0..d.k() {
        let cx = (page % columns) as f64 * cell + cell / 2.0;
        let cy = (page / columns) as f64 * cell + cell / 2.0 + header;
        writeln!(svg, r#"<g class="page" id="page-{page}">"#).unwrap();
        writeln!(svg, r#"<circle class="spine" cx="{cx:.2}" cy="{cy:.2}" r="{:.2}"/>"#, spec.radius).unwrap();
        for (e, p) in d.edges() {
            if p != page {
                continue;
            }
            let (x1, y1) = point(layout.black_position(e.black), cx, cy);
            let (x2, y2) = point(layout.white_position(e.white), cx, cy);
            writeln!(
                svg,
                r#"<line class="edge page-{page}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke-width="{:.2}"/>"#,
                spec.edge_width
            )
            .unwrap();
        }
        for (pos, v) in layout.seq().iter().enumerate() {
            let (x, y) = point(pos, cx, cy);
            let class = match v {
                Vertex::Black(_) => "black",
                Vertex::White(_) => "white",
            };
            writeln!(svg, r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="{:.2}"/>"#, spec.vertex_radius)
                .unwrap();
            if spec.show_labels {
                let (lx, ly) = point(pos, cx, cy);
                let scale = (spec.radius + 2.5 * spec.vertex_radius) / spec.radius;
                writeln!(
                    svg,
                    r#"<text class="label" x="{:.2}" y="{:.2}">{v}</text>"#,
                    cx + (lx - cx) * scale,
                    cy + (ly - cy) * scale
                )
                .unwrap();
            }
        }
        writeln!(
            svg,
            r#"<text class="caption" x="{cx:.2}" y="{:.2}">page {page}: {} crossing{}</text>"#,
            cy + spec.radius + spec.padding * 0.75,
            report.per_page[page],
            if report.per_page[page] == 1 { "" } else { "s" },
        )
        .unwrap();
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
