//! SVG rendering of texts in the I-alpha plane.
//!
//! 800x600 viewport, 60-unit margins, linear axes with I horizontal and alpha
//! vertical. Marker shape encodes language, fill colour encodes genre. Optional
//! reference lines mark one language's mean I (vertical) and one genre's mean
//! alpha (horizontal). Output depends only on the input.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::corpus::{group_means, TextResult};
use crate::error::{Error, Result};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
pub const MARGIN: f64 = 60.0;
const TICKS: usize = 5;
const MARKER_SIZE: f64 = 6.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Circle,
    Square,
    TriangleUp,
    Diamond,
    TriangleDown,
    Hexagon,
}

const SHAPES: [Shape; 6] = [
    Shape::Circle,
    Shape::Square,
    Shape::TriangleUp,
    Shape::Diamond,
    Shape::TriangleDown,
    Shape::Hexagon,
];

#[derive(Debug, Clone, PartialEq)]
pub struct PlotConfig {
    pub results: Vec<TextResult>,
    pub ref_language: Option<String>,
    pub ref_genre: Option<String>,
    pub i_range: (f64, f64),
    pub alpha_range: (f64, f64),
}

impl PlotConfig {
    pub fn new(results: Vec<TextResult>) -> Self {
        PlotConfig {
            results,
            ref_language: None,
            ref_genre: None,
            i_range: (0.0, 1.0),
            alpha_range: (0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub svg: String,
    /// Points drawn clamped, rows skipped, and similar notices.
    pub warnings: Vec<String>,
}

/// Linear map from data coordinates to SVG user units.
#[derive(Debug, Clone, Copy)]
pub struct AxisTransform {
    i_range: (f64, f64),
    alpha_range: (f64, f64),
}

impl AxisTransform {
    pub fn x(&self, i_lang: f64) -> f64 {
        let (lo, hi) = self.i_range;
        MARGIN + (i_lang - lo) / (hi - lo) * (WIDTH - 2.0 * MARGIN)
    }

    pub fn y(&self, alpha: f64) -> f64 {
        let (lo, hi) = self.alpha_range;
        HEIGHT - MARGIN - (alpha - lo) / (hi - lo) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn check_range(name: &str, (lo, hi): (f64, f64)) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} axis range [{lo}, {hi}] is not increasing"
        )))
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
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

fn shape_element(
    shape: Shape,
    x: f64,
    y: f64,
    size: f64,
    class: &str,
    style: &str,
    extra: &str,
) -> String {
    let poly = |pts: &[(f64, f64)]| {
        let p: Vec<String> = pts
            .iter()
            .map(|(dx, dy)| format!("{:.3},{:.3}", x + dx, y + dy))
            .collect();
        format!(
            r#"<polygon class="{class}" points="{}" {style}{extra}/>"#,
            p.join(" ")
        )
    };
    let s = size;
    match shape {
        Shape::Circle => format!(
            r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{s:.3}" {style}{extra}/>"#
        ),
        Shape::Square => format!(
            r#"<rect class="{class}" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" {style}{extra}/>"#,
            x - s,
            y - s,
            2.0 * s,
            2.0 * s
        ),
        Shape::TriangleUp => poly(&[(0.0, -s * 1.15), (s, s * 0.75), (-s, s * 0.75)]),
        Shape::TriangleDown => poly(&[(0.0, s * 1.15), (s, -s * 0.75), (-s, -s * 0.75)]),
        Shape::Diamond => poly(&[
            (0.0, -s * 1.3),
            (s * 1.3, 0.0),
            (0.0, s * 1.3),
            (-s * 1.3, 0.0),
        ]),
        Shape::Hexagon => {
            let pts: Vec<(f64, f64)> = (0..6)
                .map(|i| {
                    let a = std::f64::consts::PI / 3.0 * i as f64;
                    (s * 1.1 * a.cos(), s * 1.1 * a.sin())
                })
                .collect();
            poly(&pts)
        }
    }
}

pub fn plot_plane(cfg: &PlotConfig) -> Result<Plot> {
    check_range("I", cfg.i_range)?;
    check_range("alpha", cfg.alpha_range)?;
    if cfg.results.is_empty() {
        return Err(Error::EmptyResults);
    }
    let fitted: Vec<&TextResult> = cfg
        .results
        .iter()
        .filter(|r| r.metrics().is_some())
        .collect();
    if fitted.is_empty() {
        return Err(Error::EmptyResults);
    }

    let means = group_means(&cfg.results);
    let ref_i = match &cfg.ref_language {
        None => None,
        Some(code) => match means.languages.get(code).and_then(|g| g.mean) {
            Some(m) => Some((code.as_str(), m)),
            None => return Err(Error::UnknownGroup(code.clone())),
        },
    };
    let ref_alpha = match &cfg.ref_genre {
        None => None,
        Some(label) => match means.genres.get(label).and_then(|g| g.mean) {
            Some(m) => Some((label.as_str(), m)),
            None => return Err(Error::UnknownGroup(label.clone())),
        },
    };

    let axes = AxisTransform {
        i_range: cfg.i_range,
        alpha_range: cfg.alpha_range,
    };
    let languages: Vec<&str> = fitted
        .iter()
        .map(|r| r.language.as_str())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let genres: Vec<&str> = fitted
        .iter()
        .map(|r| r.genre.as_str())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let shape_of =
        |lang: &str| SHAPES[languages.iter().position(|l| *l == lang).unwrap() % SHAPES.len()];
    let colour_of =
        |genre: &str| PALETTE[genres.iter().position(|g| *g == genre).unwrap() % PALETTE.len()];

    let mut warnings = Vec::new();
    let mut svg = String::new();
    let (x0, x1) = (MARGIN, WIDTH - MARGIN);
    let (y0, y1) = (MARGIN, HEIGHT - MARGIN);

    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect class="background" x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    );

    svg.push_str("<g class=\"axes\">\n");
    let _ = writeln!(
        svg,
        r##"<rect class="frame" x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="#000000"/>"##,
        x1 - x0,
        y1 - y0
    );
    for k in 0..=TICKS {
        let f = k as f64 / TICKS as f64;
        let iv = cfg.i_range.0 + f * (cfg.i_range.1 - cfg.i_range.0);
        let av = cfg.alpha_range.0 + f * (cfg.alpha_range.1 - cfg.alpha_range.0);
        let (x, y) = (axes.x(iv), axes.y(av));
        let _ = writeln!(
            svg,
            r##"<line class="tick" x1="{x:.3}" y1="{y1:.3}" x2="{x:.3}" y2="{:.3}" stroke="#000000"/><text class="tick-label" x="{x:.3}" y="{:.3}" text-anchor="middle">{iv:.3}</text>"##,
            y1 + 5.0,
            y1 + 20.0
        );
        let _ = writeln!(
            svg,
            r##"<line class="tick" x1="{:.3}" y1="{y:.3}" x2="{x0:.3}" y2="{y:.3}" stroke="#000000"/><text class="tick-label" x="{:.3}" y="{:.3}" text-anchor="end">{av:.3}</text>"##,
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text class="axis-title" x="{:.3}" y="{:.3}" text-anchor="middle">I</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text class="axis-title" x="20" y="{:.3}" text-anchor="middle">&#945;</text>"#,
        (y0 + y1) / 2.0
    );
    svg.push_str("</g>\n");

    svg.push_str("<g class=\"reference\">\n");
    if let Some((code, mean)) = ref_i {
        let x = axes.x(mean).clamp(x0, x1);
        let _ = writeln!(
            svg,
            r##"<line class="ref-line ref-vertical" data-group="{}" x1="{x:.3}" y1="{y0:.3}" x2="{x:.3}" y2="{y1:.3}" stroke="#555555" stroke-dasharray="6 4"/>"##,
            escape(code)
        );
        let _ = writeln!(
            svg,
            r#"<text class="ref-label" x="{:.3}" y="{:.3}">{} I = {mean:.3}</text>"#,
            x + 4.0,
            y0 + 14.0,
            escape(code)
        );
    }
    if let Some((label, mean)) = ref_alpha {
        let y = axes.y(mean).clamp(y0, y1);
        let _ = writeln!(
            svg,
            r##"<line class="ref-line ref-horizontal" data-group="{}" x1="{x0:.3}" y1="{y:.3}" x2="{x1:.3}" y2="{y:.3}" stroke="#555555" stroke-dasharray="6 4"/>"##,
            escape(label)
        );
        let _ = writeln!(
            svg,
            r#"<text class="ref-label" x="{:.3}" y="{:.3}" text-anchor="end">{} &#945; = {mean:.3}</text>"#,
            x1 - 4.0,
            y - 4.0,
            escape(label)
        );
    }
    svg.push_str("</g>\n");

    svg.push_str("<g class=\"points\">\n");
    for r in &cfg.results {
        let Some(m) = r.metrics() else {
            warnings.push(format!("{}: not plotted (analysis failed)", r.text_id));
            continue;
        };
        let (mut x, mut y) = (axes.x(m.i_lang), axes.y(m.alpha));
        let inside = (x0..=x1).contains(&x) && (y0..=y1).contains(&y);
        if !inside {
            warnings.push(format!(
                "{}: point (I = {:.6}, alpha = {:.6}) outside axis range, drawn clamped",
                r.text_id, m.i_lang, m.alpha
            ));
            x = x.clamp(x0, x1);
            y = y.clamp(y0, y1);
        }
        let colour = colour_of(&r.genre);
        let style = if inside {
            format!(r##"fill="{colour}" stroke="#222222""##)
        } else {
            format!(r#"fill="none" stroke="{colour}" stroke-width="1.5""#)
        };
        let extra = format!(
            r#" data-text-id="{}" data-language="{}" data-genre="{}""#,
            escape(&r.text_id),
            escape(&r.language),
            escape(&r.genre)
        );
        svg.push_str(&shape_element(
            shape_of(&r.language),
            x,
            y,
            MARKER_SIZE,
            "marker",
            &style,
            &extra,
        ));
        svg.push('\n');
    }
    svg.push_str("</g>\n");

    svg.push_str("<g class=\"legend\">\n");
    let (lx, mut ly) = (x0 + 12.0, y0 + 16.0);
    let rows = languages.len() + genres.len() + 2;
    let _ = writeln!(
        svg,
        r##"<rect class="legend-box" x="{:.3}" y="{:.3}" width="130" height="{:.3}" fill="#ffffff" fill-opacity="0.85" stroke="#999999"/>"##,
        lx - 8.0,
        ly - 12.0,
        rows as f64 * 16.0 + 4.0
    );
    let _ = writeln!(
        svg,
        r#"<text class="legend-title" x="{lx:.3}" y="{ly:.3}">language</text>"#
    );
    for lang in &languages {
        ly += 16.0;
        let style = r##"fill="#ffffff" stroke="#222222""##;
        svg.push_str(&shape_element(
            shape_of(lang),
            lx + 6.0,
            ly - 4.0,
            4.5,
            "legend-marker",
            style,
            "",
        ));
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{ly:.3}">{}</text>"#,
            lx + 18.0,
            escape(lang)
        );
    }
    ly += 16.0;
    let _ = writeln!(
        svg,
        r#"<text class="legend-title" x="{lx:.3}" y="{ly:.3}">genre</text>"#
    );
    for genre in &genres {
        ly += 16.0;
        let _ = writeln!(
            svg,
            r##"<rect class="legend-swatch" x="{:.3}" y="{:.3}" width="9" height="9" fill="{}" stroke="#222222"/><text x="{:.3}" y="{ly:.3}">{}</text>"##,
            lx + 1.5,
            ly - 8.5,
            colour_of(genre),
            lx + 18.0,
            escape(genre)
        );
    }
    svg.push_str("</g>\n</svg>\n");

    Ok(Plot { svg, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::TextMetrics;

    fn row(id: &str, lang: &str, genre: &str, i_lang: f64, alpha: f64) -> TextResult {
        TextResult {
            text_id: id.into(),
            language: lang.into(),
            genre: genre.into(),
            outcome: Ok(TextMetrics {
                n_tokens: 5000,
                n_types: 900,
                lambda0: 1.7,
                lambda1: 1.0,
                i_lang,
                alpha,
                chi_square: 3.0,
                dof: 2,
                clipped: false,
                unreliable: false,
            }),
        }
    }

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn single_point_no_refs() {
        let plot = plot_plane(&PlotConfig::new(vec![row("a", "de", "letters", 0.3, 0.6)])).unwrap();
        assert_eq!(count(&plot.svg, r#"class="marker""#), 1);
        assert_eq!(count(&plot.svg, "ref-line"), 0);
        assert!(plot.warnings.is_empty());
    }

    #[test]
    fn reference_lines_sit_on_group_means() {
        let mut cfg = PlotConfig::new(vec![
            row("a", "de", "letters", 0.30, 0.55),
            row("b", "de", "scientific", 0.38, 0.8),
            row("c", "en", "letters", 0.08, 0.65),
        ]);
        cfg.ref_language = Some("de".into());
        cfg.ref_genre = Some("letters".into());
        let plot = plot_plane(&cfg).unwrap();
        assert_eq!(count(&plot.svg, r#"class="marker""#), 3);
        assert_eq!(count(&plot.svg, "ref-vertical"), 1);
        assert_eq!(count(&plot.svg, "ref-horizontal"), 1);
        let axes = AxisTransform {
            i_range: (0.0, 1.0),
            alpha_range: (0.0, 1.0),
        };
        let expect_x = format!(r#"x1="{:.3}""#, axes.x(0.34));
        assert!(plot.svg.contains(&expect_x), "{expect_x}");
        let expect_y = format!(r#"y1="{:.3}""#, axes.y(0.6));
        assert!(plot.svg.contains(&expect_y));
    }

    #[test]
    fn unknown_reference_group() {
        let mut cfg = PlotConfig::new(vec![row("a", "de", "letters", 0.3, 0.6)]);
        cfg.ref_language = Some("it".into());
        assert!(matches!(plot_plane(&cfg), Err(Error::UnknownGroup(g)) if g == "it"));
        let mut cfg = PlotConfig::new(vec![row("a", "de", "letters", 0.3, 0.6)]);
        cfg.ref_genre = Some("newspaper".into());
        assert!(matches!(plot_plane(&cfg), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn empty_and_bad_ranges() {
        assert!(matches!(
            plot_plane(&PlotConfig::new(vec![])),
            Err(Error::EmptyResults)
        ));
        let mut cfg = PlotConfig::new(vec![row("a", "de", "letters", 0.3, 0.6)]);
        cfg.i_range = (1.0, 1.0);
        assert!(plot_plane(&cfg).is_err());
    }

    #[test]
    fn out_of_range_points_are_clamped_and_hollow() {
        let plot = plot_plane(&PlotConfig::new(vec![
            row("a", "de", "letters", 1.4, 0.6),
            row("b", "de", "letters", 0.2, 0.6),
        ]))
        .unwrap();
        assert_eq!(count(&plot.svg, r#"class="marker""#), 2);
        assert_eq!(count(&plot.svg, r#"fill="none""#), 2); // frame + hollow marker
        assert_eq!(plot.warnings.len(), 1);
        assert!(plot.svg.contains(r#"cx="740.000""#));
    }

    #[test]
    fn shapes_follow_language() {
        let plot = plot_plane(&PlotConfig::new(vec![
            row("a", "de", "letters", 0.3, 0.6),
            row("b", "en", "letters", 0.1, 0.6),
            row("c", "es", "letters", 0.5, 0.6),
        ]))
        .unwrap();
        assert!(plot.svg.contains(r#"<circle class="marker""#));
        assert!(plot.svg.contains(r#"<rect class="marker""#));
        assert!(plot.svg.contains(r#"<polygon class="marker""#));
    }

    #[test]
    fn output_is_deterministic_and_escaped() {
        let cfg = PlotConfig::new(vec![row("a<&>", "de", "letters", 0.3, 0.6)]);
        let a = plot_plane(&cfg).unwrap().svg;
        assert_eq!(a, plot_plane(&cfg).unwrap().svg);
        assert!(a.contains("a&lt;&amp;&gt;"));
    }
}
