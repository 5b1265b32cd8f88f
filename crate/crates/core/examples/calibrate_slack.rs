//! Fits the slack envelope `a·(h/diam) + b·dθ²` (relative to `π²/diam²`-scale
//! values) on the disk, on axis-aligned rectangles of several aspect ratios
//! and on rotated rectangles.
//!
//! The pair is the envelope over every sample that gives the smallest slack
//! at `h/diam = 1/128`, `W = 4`, inflated by 25%.

use std::f64::consts::PI;

use trunclap::eigensolver::SolverConfig;
use trunclap::geometry::{ConvexPolygon, Point2};
use trunclap::{analytic_mu, build_stencil, solve, Domain};

fn rotated_rect(a: f64, b: f64, t: f64) -> Domain {
    let (s, c) = t.sin_cos();
    let pts: Vec<Point2<f64>> = [(-a, -b), (a, -b), (a, b), (-a, b)]
        .iter()
        .map(|&(x, y)| Point2::new(c * x - s * y, s * x + c * y))
        .collect();
    Domain::polygon(ConvexPolygon::new(pts).unwrap())
}

fn main() {
    let mut cases = vec![("disk".to_string(), Domain::ball(1.0, 2))];
    for r in [1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0] {
        cases.push((format!("rect {r}:1"), Domain::rect(1.0, 1.0 / r)));
    }
    for r in [1.0, 2.0, 4.0] {
        for k in 1..8 {
            let t = k as f64 * PI / 32.0;
            cases.push((format!("rect {r}:1 rot {k}pi/32"), rotated_rect(1.0, 1.0 / r, t)));
        }
    }
    let hs = [1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0];
    let mut samples = Vec::new();
    for (name, dom) in &cases {
        let diam = dom.to_planar().unwrap().diameter();
        // rectangles and disks attain the diameter cap
        let exact = analytic_mu(dom).unwrap_or(PI * PI / (diam * diam));
        for w in [2usize, 3, 4] {
            let gap = build_stencil::<f64>(w).unwrap().max_angular_gap();
            for &h in &hs {
                let cfg = SolverConfig::with_grid(h, w).policy_iteration();
                match solve(dom, &cfg) {
                    Ok(e) => {
                        let rel = ((e.mu - exact) / exact).abs();
                        println!("{name:10} W={w} h/d={:.5} rel={rel:.4e}", h / diam);
                        samples.push((h / diam, gap * gap, rel));
                    }
                    Err(err) => println!("{name:10} W={w} h={h}: {err}"),
                }
            }
        }
    }
    let target = build_stencil::<f64>(4).unwrap().max_angular_gap().powi(2);
    let (a, b) = (0..=4000)
        .map(|i| {
            let b = i as f64 * 5e-5;
            let a = samples
                .iter()
                .map(|s| (s.2 - b * s.1) / s.0)
                .fold(0.0, f64::max);
            (a, b)
        })
        .min_by(|p, q| (p.0 / 128.0 + p.1 * target).total_cmp(&(q.0 / 128.0 + q.1 * target)))
        .unwrap();
    println!("fit: a = {a:.4}, b = {b:.4}");
    println!("frozen (x1.25): a = {:.4}, b = {:.4}", 1.25 * a, 1.25 * b);
}
