//! ASCII and SVG drawings.
//!
//! Tableaux use physical rows with row 1 at the bottom: `o` is a dot, `*` a
//! free dot, `/` marks the diagonal and `\` the dashed anti-diagonal that
//! bounds the free region. Pistols are drawn as a staircase of rows of
//! length `2, 4, ..., 2n` (bottom to top) with the dot of column `j` in the
//! row labelled `f(j)`; even columns that are not doubled fixed points get
//! an `x`.

use std::fmt::Write;

use crate::labeling::LabeledTableau;
use crate::objects::{DellacConfig, Object, SurjectivePistol, Tableau};

const CELL: f64 = 30.0;
const MARGIN: f64 = 30.0;

fn cell_text(s: &str, width: usize) -> String {
    format!("{s:^width$}")
}

/// ASCII drawing of a tableau, optionally with the label of every dot.
pub fn tableau_ascii(t: &Tableau, labels: Option<&LabeledTableau>) -> String {
    let n = t.n();
    let w = if labels.is_some() { 5 } else { 3 };
    let mut out = String::new();
    for p in (1..=2 * n).rev() {
        let _ = write!(out, "{p:>3} |");
        for c in 1..=n {
            let s = if t.col_at(p) == c {
                match labels {
                    Some(lt) => lt.label_at(p).ascii(),
                    None if t.is_free_at(p) => "*".into(),
                    None => "o".into(),
                }
            } else if p == c {
                "/".into()
            } else if p + c == 2 * n + 1 {
                "\\".into()
            } else {
                ".".into()
            };
            out.push_str(&cell_text(&s, w));
        }
        out.push('\n');
    }
    let _ = write!(out, "    +{}\n     ", "-".repeat(w * n));
    for c in 1..=n {
        out.push_str(&cell_text(&c.to_string(), w));
    }
    out.push('\n');
    out
}

/// ASCII drawing of a (symplectic) Dellac configuration, row 1 at the bottom.
pub fn dellac_ascii(d: &DellacConfig) -> String {
    let n = d.n();
    let mut out = String::new();
    for p in (1..=2 * n).rev() {
        let _ = write!(out, "{p:>3} |");
        for c in 1..=n {
            let s = if d.row_col()[p - 1] == c { "o" } else { "." };
            out.push_str(&cell_text(s, 3));
        }
        out.push('\n');
    }
    let _ = write!(out, "    +{}\n     ", "-".repeat(3 * n));
    for c in 1..=n {
        out.push_str(&cell_text(&c.to_string(), 3));
    }
    out.push('\n');
    out
}

fn pistol_mark(f: &SurjectivePistol, j: usize) -> &'static str {
    if j.is_multiple_of(2) && !f.is_doubled_fixed_point(j / 2) {
        "x"
    } else {
        "o"
    }
}

pub fn pistol_ascii(f: &SurjectivePistol) -> String {
    let n = f.n();
    let mut out = String::from("    ");
    for j in 1..=2 * n {
        out.push_str(&cell_text(&j.to_string(), 3));
    }
    out.push('\n');
    for k in (1..=n).rev() {
        let _ = write!(out, "{:>3} ", 2 * k);
        for j in 1..=2 * k {
            let s = if f.at(j) == 2 * k {
                pistol_mark(f, j)
            } else {
                "."
            };
            out.push_str(&cell_text(s, 3));
        }
        out.push('\n');
    }
    out
}

pub fn ascii(obj: &Object, labels: Option<&LabeledTableau>) -> String {
    match obj {
        Object::Tableau(t) => tableau_ascii(t, labels),
        Object::Pistol(f) => pistol_ascii(f),
        Object::Dellac(d) => dellac_ascii(d),
        Object::Spdc(s) => dellac_ascii(s.base()),
    }
}

struct Svg {
    body: String,
    width: f64,
    height: f64,
}

impl Svg {
    fn new(cols: usize, rows: usize) -> Self {
        Svg {
            body: String::new(),
            width: cols as f64 * CELL + 2.0 * MARGIN,
            height: rows as f64 * CELL + 2.0 * MARGIN,
        }
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, dashed: bool) {
        let dash = if dashed {
            r#" stroke-dasharray="6,4""#
        } else {
            ""
        };
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"{dash}/>"#
        );
    }

    fn rect(&mut self, x: f64, y: f64) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="none" stroke="gray"/>"#
        );
    }

    fn dot(&mut self, cx: f64, cy: f64) {
        let _ = writeln!(
            self.body,
            r#"<circle cx="{cx}" cy="{cy}" r="{}" fill="black"/>"#,
            CELL * 0.18
        );
    }

    fn text(&mut self, x: f64, y: f64, size: f64, s: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{x}" y="{y}" font-size="{size}" text-anchor="middle" dominant-baseline="central">{s}</text>"#
        );
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n{}</svg>\n",
            self.width, self.height, self.body
        )
    }
}

/// SVG drawing of a tableau; with `labels`, each dot is annotated.
pub fn tableau_svg(t: &Tableau, labels: Option<&LabeledTableau>) -> String {
    let n = t.n();
    let rows = 2 * n;
    let mut svg = Svg::new(n, rows);
    // y grows downwards; physical row p occupies [rows - p, rows - p + 1]
    let x = |c: f64| MARGIN + c * CELL;
    let y = |r: f64| MARGIN + (rows as f64 - r) * CELL;
    for p in 1..=rows {
        for c in 1..=n {
            svg.rect(x(c as f64 - 1.0), y(p as f64));
        }
    }
    svg.line(x(0.0), y(0.0), x(n as f64), y(n as f64), false);
    svg.line(x(0.0), y(rows as f64), x(n as f64), y(n as f64), true);
    for p in 1..=rows {
        let c = t.col_at(p) as f64;
        let (cx, cy) = (x(c - 0.5), y(p as f64 - 0.5));
        if t.is_free_at(p) {
            svg.text(cx, cy, CELL * 0.7, "★");
        } else {
            svg.dot(cx, cy);
        }
        if let Some(lt) = labels {
            svg.text(
                cx + CELL * 0.5,
                cy - CELL * 0.3,
                CELL * 0.35,
                &lt.label_at(p).to_string(),
            );
        }
        svg.text(x(0.0) - CELL * 0.5, cy, CELL * 0.4, &p.to_string());
    }
    svg.finish()
}

pub fn pistol_svg(f: &SurjectivePistol) -> String {
    let n = f.n();
    let mut svg = Svg::new(2 * n, n + 1);
    let x = |j: f64| MARGIN + j * CELL;
    // staircase row k (value 2k) sits k rows above the bottom, header on top
    let y = |k: f64| MARGIN + (n as f64 + 1.0 - k) * CELL;
    for k in 1..=n {
        for j in 1..=2 * k {
            svg.rect(x(j as f64 - 1.0), y(k as f64));
        }
        svg.text(
            x(0.0) - CELL * 0.5,
            y(k as f64 - 0.5),
            CELL * 0.4,
            &(2 * k).to_string(),
        );
    }
    for j in 1..=2 * n {
        let cx = x(j as f64 - 0.5);
        svg.text(cx, y(n as f64 + 0.5), CELL * 0.4, &j.to_string());
        let cy = y(f.at(j) as f64 / 2.0 - 0.5);
        if pistol_mark(f, j) == "x" {
            svg.text(cx, cy, CELL * 0.6, "×");
        } else {
            svg.dot(cx, cy);
        }
    }
    svg.finish()
}

pub fn dellac_svg(d: &DellacConfig) -> String {
    let n = d.n();
    let rows = 2 * n;
    let mut svg = Svg::new(n, rows);
    let x = |c: f64| MARGIN + c * CELL;
    let y = |r: f64| MARGIN + (rows as f64 - r) * CELL;
    for p in 1..=rows {
        for c in 1..=n {
            svg.rect(x(c as f64 - 1.0), y(p as f64));
        }
        let c = d.row_col()[p - 1] as f64;
        svg.dot(x(c - 0.5), y(p as f64 - 0.5));
    }
    svg.finish()
}

pub fn svg(obj: &Object, labels: Option<&LabeledTableau>) -> String {
    match obj {
        Object::Tableau(t) => tableau_svg(t, labels),
        Object::Pistol(f) => pistol_svg(f),
        Object::Dellac(d) => dellac_svg(d),
        Object::Spdc(s) => dellac_svg(s.base()),
    }
}
