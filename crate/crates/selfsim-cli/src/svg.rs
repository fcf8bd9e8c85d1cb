//! SVG rendering of traced curves: an 800x800 viewport mapping the open
//! unit square to the canvas, the region beta1 + beta2 > 1 shaded, the
//! line beta1 + beta2 = 1 dashed, and the traced points joined into
//! polylines per connected slice run.

use selfsim_core::ParamPoint;

const SIZE: f64 = 800.0;

/// Curve points closer than this (in beta1) across consecutive slices are
/// chained into one polyline.
const CHAIN_TOL: f64 = 0.05;

struct Chain {
    last_x: f64,
    run: Vec<(f64, f64)>,
}

fn px(x: f64) -> f64 {
    x * SIZE
}

fn py(y: f64) -> f64 {
    SIZE - y * SIZE
}

/// Groups trace output (ordered by slice ordinate, then abscissa) into
/// polyline runs by greedily matching roots of consecutive slices. Both
/// the open chains and each slice's roots are ascending in beta1, so a
/// single forward pass suffices.
fn chain_points(points: &[ParamPoint]) -> Vec<Vec<(f64, f64)>> {
    let mut finished: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut open: Vec<Chain> = Vec::new();
    let mut idx = 0;
    while idx < points.len() {
        let y = points[idx].beta2();
        let mut slice = Vec::new();
        while idx < points.len() && points[idx].beta2() == y {
            slice.push(points[idx].beta1());
            idx += 1;
        }

        let mut next_open: Vec<Chain> = Vec::new();
        let mut chains = open.into_iter().peekable();
        for &x in &slice {
            while chains
                .peek()
                .is_some_and(|c| c.last_x < x - CHAIN_TOL)
            {
                finished.push(chains.next().expect("peeked").run);
            }
            match chains.peek() {
                Some(c) if (c.last_x - x).abs() <= CHAIN_TOL => {
                    let mut chain = chains.next().expect("peeked");
                    chain.run.push((x, y));
                    chain.last_x = x;
                    next_open.push(chain);
                }
                _ => next_open.push(Chain {
                    last_x: x,
                    run: vec![(x, y)],
                }),
            }
        }
        finished.extend(chains.map(|c| c.run));
        open = next_open;
    }
    finished.extend(open.into_iter().map(|c| c.run));
    finished
}

pub fn curve_svg(points: &[ParamPoint]) -> String {
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    svg.push_str("  <rect width=\"800\" height=\"800\" fill=\"white\"/>\n");
    // R = { beta1 + beta2 > 1 }: triangle with corners (1,0), (1,1), (0,1).
    svg.push_str("  <polygon points=\"800,800 800,0 0,0\" fill=\"#e8f0fa\"/>\n");
    svg.push_str(
        "  <line x1=\"0\" y1=\"0\" x2=\"800\" y2=\"800\" stroke=\"#555555\" stroke-width=\"1.5\" stroke-dasharray=\"10,6\"/>\n",
    );
    svg.push_str("  <rect width=\"800\" height=\"800\" fill=\"none\" stroke=\"black\"/>\n");

    for run in chain_points(points) {
        if run.len() == 1 {
            let (x, y) = run[0];
            svg.push_str(&format!(
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.2\" fill=\"#0b4f9e\"/>\n",
                px(x),
                py(y)
            ));
            continue;
        }
        svg.push_str("  <polyline fill=\"none\" stroke=\"#0b4f9e\" stroke-width=\"1.5\" points=\"");
        for (i, (x, y)) in run.iter().enumerate() {
            if i > 0 {
                svg.push(' ');
            }
            svg.push_str(&format!("{:.2},{:.2}", px(*x), py(*y)));
        }
        svg.push_str("\"/>\n");
    }
    svg.push_str("</svg>\n");
    svg
}
