//! Deterministic SVG and ASCII drawings of block partitions.

use crate::dyadic::Dyadic;
use crate::geometry::BlockPartition;

const SVG_SIZE: f64 = 400.0;
const MARGIN: f64 = 10.0;

fn label_text(label: u32, names: &[String]) -> String {
    names
        .get(label as usize - 1)
        .cloned()
        .unwrap_or_else(|| format!("x{label}"))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// SVG with one rectangle per block and its label centered; north is up.
pub fn to_svg(p: &BlockPartition, names: &[String]) -> String {
    let total = SVG_SIZE + 2.0 * MARGIN;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">\n"
    );
    for b in p.blocks() {
        let r = b.rect;
        let x = MARGIN + r.x1.to_f64() * SVG_SIZE;
        let y = MARGIN + (1.0 - r.y2.to_f64()) * SVG_SIZE;
        let w = r.width().to_f64() * SVG_SIZE;
        let h = r.height().to_f64() * SVG_SIZE;
        out.push_str(&format!(
            "  <rect x=\"{x:.3}\" y=\"{y:.3}\" width=\"{w:.3}\" height=\"{h:.3}\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n"
        ));
        let font = (w.min(h) * 0.4).clamp(4.0, 24.0);
        out.push_str(&format!(
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-family=\"serif\" font-size=\"{font:.1}\" text-anchor=\"middle\" dominant-baseline=\"central\">{}</text>\n",
            x + w / 2.0,
            y + h / 2.0,
            escape(&label_text(b.label, names))
        ));
    }
    out.push_str("</svg>\n");
    out
}

const CELL_W: usize = 4;
const CELL_H: usize = 2;
const MAX_EXP: u32 = 6;

fn grid_index(d: Dyadic, exp: u32, cell: usize) -> usize {
    (d.mul_pow2(exp as i32).numerator() as usize) * cell
}

/// Character drawing on the finest dyadic grid present (capped at 64
/// cells per side); labels are placed at block centers when they fit.
#[allow(clippy::needless_range_loop)]
pub fn to_ascii(p: &BlockPartition, names: &[String]) -> String {
    let ex = p
        .blocks()
        .iter()
        .flat_map(|b| [b.rect.x1.exponent(), b.rect.x2.exponent()])
        .max()
        .unwrap_or(0)
        .min(MAX_EXP);
    let ey = p
        .blocks()
        .iter()
        .flat_map(|b| [b.rect.y1.exponent(), b.rect.y2.exponent()])
        .max()
        .unwrap_or(0)
        .min(MAX_EXP);
    let cols = (1usize << ex) * CELL_W + 1;
    let rows = (1usize << ey) * CELL_H + 1;
    let mut canvas = vec![vec![' '; cols]; rows];
    let snap = |d: Dyadic, exp: u32, cell: usize| {
        // coordinates finer than the cap are rounded down onto the grid
        let scaled = d.mul_pow2(exp as i32);
        if scaled.exponent() == 0 {
            grid_index(d, exp, cell)
        } else {
            (scaled.to_f64().floor() as usize) * cell
        }
    };
    for b in p.blocks() {
        let r = b.rect;
        let (c1, c2) = (snap(r.x1, ex, CELL_W), snap(r.x2, ex, CELL_W));
        // row 0 is the top of the square
        let (r1, r2) = (
            rows - 1 - snap(r.y2, ey, CELL_H),
            rows - 1 - snap(r.y1, ey, CELL_H),
        );
        for c in c1..=c2 {
            for row in [r1, r2] {
                canvas[row][c] =
                    if canvas[row][c] == '|' || canvas[row][c] == '+' || c == c1 || c == c2 {
                        '+'
                    } else {
                        '-'
                    };
            }
        }
        for row in r1..=r2 {
            for c in [c1, c2] {
                canvas[row][c] =
                    if canvas[row][c] == '-' || canvas[row][c] == '+' || row == r1 || row == r2 {
                        '+'
                    } else {
                        '|'
                    };
            }
        }
        let text = label_text(b.label, names);
        let width = c2.saturating_sub(c1 + 1);
        if text.chars().count() <= width && r2 > r1 + 1 {
            let row = (r1 + r2) / 2;
            let start = c1 + 1 + (width - text.chars().count()) / 2;
            for (k, ch) in text.chars().enumerate() {
                canvas[row][start + k] = ch;
            }
        }
    }
    let mut out = String::new();
    for row in canvas {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
