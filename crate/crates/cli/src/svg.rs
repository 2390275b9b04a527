//! Minimal hand-written SVG charts: a valence-arousal scatter and grouped
//! bar panels. Coordinates are printed with fixed precision so files are
//! byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn header(out: &mut String, width: f64, height: f64, title: &str, settings: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, "<desc>settings: {}</desc>", escape(settings));
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

/// Assigns palette colors to keys in sorted order.
fn colors<'a>(keys: impl IntoIterator<Item = &'a str>) -> BTreeMap<&'a str, &'static str> {
    let mut sorted: Vec<&str> = keys.into_iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    sorted
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, PALETTE[i % PALETTE.len()]))
        .collect()
}

#[derive(Clone, Debug)]
pub struct ScatterPoint {
    pub label: String,
    pub language: String,
    pub model_id: String,
    pub valence: f64,
    pub arousal: f64,
}

fn marker(out: &mut String, shape: usize, x: f64, y: f64, color: &str) {
    let _ = match shape % 3 {
        0 => writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{color}"/>"#),
        1 => writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="8" height="8" fill="{color}"/>"#,
            x - 4.0,
            y - 4.0
        ),
        _ => writeln!(
            out,
            r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{color}"/>"#,
            x,
            y - 5.0,
            x - 4.5,
            y + 4.0,
            x + 4.5,
            y + 4.0
        ),
    };
}

/// Valence on x, arousal on y, with gray reference markers at the four
/// axis anchors. Points are colored by language and shaped by model.
pub fn scatter(title: &str, settings: &str, points: &[ScatterPoint]) -> String {
    let size = 520.0;
    let margin = 50.0;
    let extent = points
        .iter()
        .flat_map(|p| [p.valence.abs(), p.arousal.abs()])
        .filter(|v| v.is_finite())
        .fold(1.25_f64, f64::max)
        * 1.1;
    let plot = size - 2.0 * margin;
    let sx = |v: f64| margin + (v + extent) / (2.0 * extent) * plot;
    let sy = |a: f64| margin + (extent - a) / (2.0 * extent) * plot;

    let mut out = String::new();
    header(&mut out, size, size + 40.0, title, settings);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        size / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999"/>"##,
        sx(-extent),
        sy(0.0),
        sx(extent),
        sy(0.0)
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999"/>"##,
        sx(0.0),
        sy(-extent),
        sx(0.0),
        sy(extent)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">valence</text>"#,
        sx(extent),
        sy(0.0) + 16.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="12">arousal</text>"#,
        sx(0.0) + 6.0,
        sy(extent) + 12.0
    );
    for (name, v, a) in [("PV", 1.0, 0.0), ("NV", -1.0, 0.0), ("HA", 0.0, 1.0), ("LA", 0.0, -1.0)] {
        let (x, y) = (sx(v), sy(a));
        let _ = writeln!(
            out,
            r##"<rect x="{:.2}" y="{:.2}" width="9" height="9" fill="#aaa"/>"##,
            x - 4.5,
            y - 4.5
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-size="11" fill="#777">{name}</text>"##,
            x + 6.0,
            y - 6.0
        );
    }

    let language_colors = colors(points.iter().map(|p| p.language.as_str()));
    let mut models: Vec<&str> = points.iter().map(|p| p.model_id.as_str()).collect();
    models.sort_unstable();
    models.dedup();
    let shape_of = |model: &str| models.iter().position(|m| *m == model).unwrap_or(0);
    for p in points {
        let (x, y) = (sx(p.valence), sy(p.arousal));
        let color = language_colors[p.language.as_str()];
        marker(&mut out, shape_of(&p.model_id), x, y, color);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" fill="{color}">{}</text>"#,
            x + 6.0,
            y + 4.0,
            escape(&p.label)
        );
    }

    let mut ly = size - 8.0;
    for (language, color) in &language_colors {
        for model in &models {
            if !points.iter().any(|p| p.language == *language && p.model_id == *model) {
                continue;
            }
            marker(&mut out, shape_of(model), margin, ly, color);
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="11">{} ({})</text>"#,
                margin + 10.0,
                ly + 4.0,
                escape(language),
                escape(model)
            );
            ly += 16.0;
        }
    }
    out.push_str("</svg>\n");
    out
}

#[derive(Clone, Debug)]
pub struct Bar {
    pub group: String,
    pub series: String,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct Panel {
    pub title: String,
    pub bars: Vec<Bar>,
}

/// One panel per entry, bars grouped by `group` and colored by `series`,
/// each labeled with its value to two decimals. The y axis runs from 0 to
/// `y_max`.
pub fn grouped_bars(title: &str, settings: &str, panels: &[Panel], y_max: f64) -> String {
    let width = 560.0;
    let panel_height = 260.0;
    let top = 40.0;
    let left = 50.0;
    let bar_width = 28.0;
    let group_gap = 40.0;
    let series_colors = colors(panels.iter().flat_map(|p| p.bars.iter().map(|b| b.series.as_str())));
    let height = top + panel_height * panels.len() as f64 + 30.0;

    let mut out = String::new();
    header(&mut out, width, height, title, settings);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        width / 2.0,
        escape(title)
    );
    for (pi, panel) in panels.iter().enumerate() {
        let y0 = top + panel_height * pi as f64;
        let chart_top = y0 + 30.0;
        let chart_height = panel_height - 70.0;
        let baseline = chart_top + chart_height;
        let sy = |v: f64| baseline - v / y_max * chart_height;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="13" font-weight="bold">{}</text>"#,
            left,
            y0 + 16.0,
            escape(&panel.title)
        );
        for tick in 0..=(y_max as usize) {
            let y = sy(tick as f64);
            let _ = writeln!(
                out,
                r##"<line x1="{left:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#eee"/>"##,
                width - 20.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="end">{tick}</text>"#,
                left - 6.0,
                y + 3.0
            );
        }
        let mut groups: Vec<&str> = Vec::new();
        for bar in &panel.bars {
            if !groups.contains(&bar.group.as_str()) {
                groups.push(&bar.group);
            }
        }
        let mut x = left + 20.0;
        for group in groups {
            let start = x;
            for bar in panel.bars.iter().filter(|b| b.group == group) {
                let y = sy(bar.value);
                let color = series_colors[bar.series.as_str()];
                let _ = writeln!(
                    out,
                    r#"<rect x="{x:.2}" y="{y:.2}" width="{bar_width:.2}" height="{:.2}" fill="{color}"><title>{}: {:.2}</title></rect>"#,
                    baseline - y,
                    escape(&bar.series),
                    bar.value
                );
                let _ = writeln!(
                    out,
                    r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{:.2}</text>"#,
                    x + bar_width / 2.0,
                    y - 4.0,
                    bar.value
                );
                x += bar_width + 4.0;
            }
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
                (start + x - 4.0) / 2.0,
                baseline + 16.0,
                escape(group)
            );
            x += group_gap;
        }
        let _ = writeln!(
            out,
            r##"<line x1="{left:.2}" y1="{baseline:.2}" x2="{:.2}" y2="{baseline:.2}" stroke="#333"/>"##,
            width - 20.0
        );
    }
    let mut lx = left;
    let ly = height - 14.0;
    for (series, color) in &series_colors {
        let _ = writeln!(
            out,
            r#"<rect x="{lx:.2}" y="{:.2}" width="10" height="10" fill="{color}"/>"#,
            ly - 9.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{ly:.2}" font-size="11">{}</text>"#,
            lx + 14.0,
            escape(series)
        );
        lx += 90.0;
    }
    out.push_str("</svg>\n");
    out
}
