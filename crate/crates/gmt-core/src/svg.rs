//! Deterministic SVG emission for curves, chains, filled regions, disks,
//! and signature traces.
//!
//! The view box is computed from the scene bounding box plus a 5% margin,
//! elements are written in insertion order, and all numbers are printed
//! with nine decimal places, so identical scenes yield byte-identical
//! documents. Signature traces render in a separate panel below the
//! geometry.

use std::fmt::Write as _;

use crate::geometry::Point2;

const PALETTE: [&str; 6] = [
    "#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
];
const PANEL_WIDTH: f64 = 640.0;
const TRACE_HEIGHT: f64 = 160.0;
const FILL_OPACITY: f64 = 0.4;

/// One drawable element. `class` selects a palette color.
#[derive(Clone, Debug)]
pub enum SceneItem {
    Polyline {
        points: Vec<Point2>,
        closed: bool,
        class: usize,
    },
    FilledTriangle {
        corners: [Point2; 3],
        class: usize,
    },
    Disk {
        center: Point2,
        radius: f64,
        class: usize,
    },
}

/// A per-index value trace plotted below the geometry panel.
#[derive(Clone, Debug)]
pub struct Trace {
    pub values: Vec<f64>,
    pub class: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub items: Vec<SceneItem>,
    pub traces: Vec<Trace>,
}

impl Scene {
    pub fn new() -> Self {
        Scene::default()
    }

    pub fn polyline(&mut self, points: Vec<Point2>, closed: bool, class: usize) {
        self.items.push(SceneItem::Polyline {
            points,
            closed,
            class,
        });
    }

    pub fn filled_triangle(&mut self, corners: [Point2; 3], class: usize) {
        self.items.push(SceneItem::FilledTriangle { corners, class });
    }

    pub fn disk(&mut self, center: Point2, radius: f64, class: usize) {
        self.items.push(SceneItem::Disk {
            center,
            radius,
            class,
        });
    }

    pub fn trace(&mut self, values: Vec<f64>, class: usize) {
        self.traces.push(Trace { values, class });
    }

    fn bounds(&self) -> Option<(Point2, Point2)> {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut absorb = |p: Point2| {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        };
        for item in &self.items {
            match item {
                SceneItem::Polyline { points, .. } => points.iter().copied().for_each(&mut absorb),
                SceneItem::FilledTriangle { corners, .. } => {
                    corners.iter().copied().for_each(&mut absorb)
                }
                SceneItem::Disk { center, radius, .. } => {
                    absorb(Point2::new(center.x - radius, center.y - radius));
                    absorb(Point2::new(center.x + radius, center.y + radius));
                }
            }
        }
        if lo.x.is_finite() {
            Some((lo, hi))
        } else {
            None
        }
    }
}

fn color(class: usize) -> &'static str {
    PALETTE[class % PALETTE.len()]
}

/// Render the scene to a standalone SVG document.
pub fn emit_svg(scene: &Scene) -> String {
    let Some((lo, hi)) = scene.bounds() else {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"16\" height=\"16\" viewBox=\"0 0 16 16\"/>\n".to_string();
    };

    let span_x = (hi.x - lo.x).max(1e-9);
    let span_y = (hi.y - lo.y).max(1e-9);
    let margin = 0.05 * span_x.max(span_y);
    let width = span_x + 2.0 * margin;
    let height = span_y + 2.0 * margin;
    let scale = PANEL_WIDTH / width;
    let panel_height = height * scale;
    let has_traces = scene.traces.iter().any(|t| t.values.len() > 1);
    let total_height = panel_height + if has_traces { TRACE_HEIGHT } else { 0.0 };

    // Geometry y-axis points up; SVG's points down.
    let tx = |x: f64| (x - lo.x + margin) * scale;
    let ty = |y: f64| (hi.y - y + margin) * scale;
    let stroke_width = 1.5;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{PANEL_WIDTH:.0}\" height=\"{total_height:.0}\" viewBox=\"0 0 {PANEL_WIDTH:.9} {total_height:.9}\">"
    );

    for item in &scene.items {
        match item {
            SceneItem::FilledTriangle { corners, class } => {
                let pts: Vec<String> = corners
                    .iter()
                    .map(|p| format!("{:.9},{:.9}", tx(p.x), ty(p.y)))
                    .collect();
                let _ = writeln!(
                    out,
                    "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"{FILL_OPACITY}\" stroke=\"none\"/>",
                    pts.join(" "),
                    color(*class)
                );
            }
            SceneItem::Polyline {
                points,
                closed,
                class,
            } => {
                if points.is_empty() {
                    continue;
                }
                let pts: Vec<String> = points
                    .iter()
                    .map(|p| format!("{:.9},{:.9}", tx(p.x), ty(p.y)))
                    .collect();
                let tag = if *closed { "polygon" } else { "polyline" };
                let _ = writeln!(
                    out,
                    "<{tag} points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{stroke_width}\"/>",
                    pts.join(" "),
                    color(*class)
                );
            }
            SceneItem::Disk {
                center,
                radius,
                class,
            } => {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{:.9}\" cy=\"{:.9}\" r=\"{:.9}\" fill=\"{}\" fill-opacity=\"{FILL_OPACITY}\" stroke=\"{}\" stroke-width=\"{stroke_width}\"/>",
                    tx(center.x),
                    ty(center.y),
                    radius * scale,
                    color(*class),
                    color(*class)
                );
            }
        }
    }

    if has_traces {
        let top = panel_height + 8.0;
        let plot_height = TRACE_HEIGHT - 16.0;
        let vmax = scene
            .traces
            .iter()
            .flat_map(|t| t.values.iter().copied())
            .fold(f64::NEG_INFINITY, f64::max)
            .max(1e-12);
        let _ = writeln!(
            out,
            "<rect x=\"0\" y=\"{top:.9}\" width=\"{PANEL_WIDTH:.0}\" height=\"{plot_height:.9}\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>"
        );
        for trace in &scene.traces {
            if trace.values.len() < 2 {
                continue;
            }
            let n = trace.values.len();
            let pts: Vec<String> = trace
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let x = PANEL_WIDTH * i as f64 / (n - 1) as f64;
                    let y = top + plot_height * (1.0 - (v / vmax).clamp(0.0, 1.0));
                    format!("{x:.9},{y:.9}")
                })
                .collect();
            let _ = writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1\"/>",
                pts.join(" "),
                color(trace.class)
            );
        }
    }

    out.push_str("</svg>\n");
    out
}
