//! Minimal SVG line plots for the experiment figures. These are purely
//! cosmetic artifacts; callers treat any failure here as nonfatal.

use std::fmt::Write as _;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 56.0;

const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

/// One labeled curve.
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Axis and labeling choices for one figure.
pub struct PlotSpec {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
}

struct AxisMap {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    log_x: bool,
    log_y: bool,
}

impl AxisMap {
    fn x_pixel(&self, x: f64) -> f64 {
        let (a, b, v) = if self.log_x {
            (self.x_min.log10(), self.x_max.log10(), x.log10())
        } else {
            (self.x_min, self.x_max, x)
        };
        let frac = if b > a { (v - a) / (b - a) } else { 0.5 };
        MARGIN_LEFT + frac * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y_pixel(&self, y: f64) -> f64 {
        let (a, b, v) = if self.log_y {
            (self.y_min.log10(), self.y_max.log10(), y.log10())
        } else {
            (self.y_min, self.y_max, y)
        };
        let frac = if b > a { (v - a) / (b - a) } else { 0.5 };
        HEIGHT - MARGIN_BOTTOM - frac * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn usable(point: &(f64, f64), spec: &PlotSpec) -> bool {
    let ok_x = point.0.is_finite() && (!spec.log_x || point.0 > 0.0);
    let ok_y = point.1.is_finite() && (!spec.log_y || point.1 > 0.0);
    ok_x && ok_y
}

fn format_tick(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".into()
    } else if a >= 10000.0 || a < 0.01 {
        format!("{v:.1e}")
    } else if a >= 10.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

fn axis_ticks(min: f64, max: f64, log: bool) -> Vec<f64> {
    if log {
        let lo = min.log10().floor() as i32;
        let hi = max.log10().ceil() as i32;
        (lo..=hi).map(|e| 10f64.powi(e)).collect()
    } else {
        (0..=4).map(|i| min + (max - min) * i as f64 / 4.0).collect()
    }
}

/// Renders the series into a standalone SVG document. Returns `None` when
/// no point survives the axis constraints.
pub fn line_plot_svg(spec: &PlotSpec, series: &[Series]) -> Option<String> {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for p in s.points.iter().filter(|p| usable(p, spec)) {
            x_min = x_min.min(p.0);
            x_max = x_max.max(p.0);
            y_min = y_min.min(p.1);
            y_max = y_max.max(p.1);
        }
    }
    if !x_min.is_finite() || !y_min.is_finite() {
        return None;
    }
    if x_min == x_max {
        x_max = x_min + 1.0;
    }
    if y_min == y_max {
        y_max = if spec.log_y { y_min * 10.0 } else { y_min + 1.0 };
    }
    let map = AxisMap { x_min, x_max, y_min, y_max, log_x: spec.log_x, log_y: spec.log_y };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"13\">"
    );
    let _ = writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>",
        WIDTH / 2.0,
        xml_escape(&spec.title)
    );

    let plot_bottom = HEIGHT - MARGIN_BOTTOM;
    let plot_right = WIDTH - MARGIN_RIGHT;
    for tick in axis_ticks(x_min, x_max, spec.log_x) {
        if tick < x_min * 0.999 || tick > x_max * 1.001 {
            continue;
        }
        let px = map.x_pixel(tick);
        let _ = writeln!(
            svg,
            "<line x1=\"{px:.1}\" y1=\"{MARGIN_TOP}\" x2=\"{px:.1}\" y2=\"{plot_bottom}\" \
             stroke=\"#dddddd\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{px:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>",
            plot_bottom + 18.0,
            format_tick(tick)
        );
    }
    for tick in axis_ticks(y_min, y_max, spec.log_y) {
        if tick < y_min * 0.999 || tick > y_max * 1.001 {
            continue;
        }
        let py = map.y_pixel(tick);
        let _ = writeln!(
            svg,
            "<line x1=\"{MARGIN_LEFT}\" y1=\"{py:.1}\" x2=\"{plot_right}\" y2=\"{py:.1}\" \
             stroke=\"#dddddd\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>",
            MARGIN_LEFT - 6.0,
            py + 4.0,
            format_tick(tick)
        );
    }
    let _ = writeln!(
        svg,
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{:.1}\" height=\"{:.1}\" \
         fill=\"none\" stroke=\"black\"/>",
        plot_right - MARGIN_LEFT,
        plot_bottom - MARGIN_TOP
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>",
        (MARGIN_LEFT + plot_right) / 2.0,
        HEIGHT - 12.0,
        xml_escape(&spec.x_label)
    );
    let _ = writeln!(
        svg,
        "<text x=\"18\" y=\"{:.1}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 18 {:.1})\">{}</text>",
        (MARGIN_TOP + plot_bottom) / 2.0,
        (MARGIN_TOP + plot_bottom) / 2.0,
        xml_escape(&spec.y_label)
    );

    for (idx, s) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let coords: Vec<String> = s
            .points
            .iter()
            .filter(|p| usable(p, spec))
            .map(|p| format!("{:.1},{:.1}", map.x_pixel(p.0), map.y_pixel(p.1)))
            .collect();
        if coords.is_empty() {
            continue;
        }
        if coords.len() == 1 {
            let (x, y) = coords[0].split_once(',').expect("formatted pair");
            let _ = writeln!(svg, "<circle cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"{color}\"/>");
        } else {
            let _ = writeln!(
                svg,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\" points=\"{}\"/>",
                coords.join(" ")
            );
        }
        let ly = MARGIN_TOP + 16.0 + 18.0 * idx as f64;
        let _ = writeln!(
            svg,
            "<line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>",
            plot_right - 150.0,
            plot_right - 126.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\">{}</text>",
            plot_right - 120.0,
            ly + 4.0,
            xml_escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    Some(svg)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
