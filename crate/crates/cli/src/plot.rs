//! SVG rendering of the torus curve.

use std::fmt::Write as _;

use fqlab::surface::CurveBranches;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn px(x: [f64; 2]) -> (f64, f64) {
    (MARGIN + x[0] * SIZE, MARGIN + (1.0 - x[1]) * SIZE)
}

/// One polyline per branch, split wherever it wraps around the square.
pub fn svg(curve: &CurveBranches) -> String {
    let full = SIZE + 2.0 * MARGIN;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{full}\" height=\"{full}\" viewBox=\"0 0 {full} {full}\">\n"
    );
    let _ = writeln!(
        s,
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"none\" stroke=\"#888\"/>"
    );
    for (b, branch) in curve.branches.iter().enumerate() {
        let color = COLORS[b % COLORS.len()];
        let mut runs: Vec<Vec<[f64; 2]>> = vec![Vec::new()];
        let mut prev: Option<[f64; 2]> = None;
        for pt in branch {
            let x = pt.coords();
            if let Some(p) = prev {
                if (x[0] - p[0]).abs() > 0.5 || (x[1] - p[1]).abs() > 0.5 {
                    runs.push(Vec::new());
                }
            }
            runs.last_mut().expect("nonempty").push(x);
            prev = Some(x);
        }
        for run in runs.iter().filter(|r| r.len() > 1) {
            let pts: Vec<String> = run
                .iter()
                .map(|&x| {
                    let (u, v) = px(x);
                    format!("{u:.3},{v:.3}")
                })
                .collect();
            let _ = writeln!(
                s,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
                pts.join(" ")
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
