#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trunclap::geometry::random::random_convex_polygon;
use trunclap::geometry::{PlanarDomain, Point2};
use trunclap::grid::{rasterize_with, GridOptions, NO_NODE};
use trunclap::operator::apply;
use trunclap::{build_stencil, Field, Grid};

/// Lattice directions of width `w`, one per antipodal pair, enumerated
/// without the library's stencil code.
pub fn directions(w: i32) -> Vec<(i32, i32)> {
    fn gcd(a: i32, b: i32) -> i32 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut out = Vec::new();
    for p in -w..=w {
        for q in -w..=w {
            if (p, q) != (0, 0) && gcd(p, q) == 1 && (p > 0 || (p == 0 && q > 0)) {
                out.push((p, q));
            }
        }
    }
    out
}

/// A grid on a random convex polygon with random step and stencil width.
pub fn random_grid(rng: &mut ChaCha8Rng) -> Grid {
    loop {
        let n = rng.gen_range(3..9);
        let poly = random_convex_polygon(rng, n, 1.0).unwrap();
        let h = rng.gen_range(0.08..0.25);
        let w = rng.gen_range(1..=4);
        let opts = GridOptions {
            anchor: Some(Point2::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))),
            ..GridOptions::default()
        };
        if let Ok(g) = rasterize_with(&PlanarDomain::Polygon(poly), h, &build_stencil(w).unwrap(), opts) {
            return g;
        }
    }
}

pub fn random_field(rng: &mut ChaCha8Rng, grid: &Grid) -> Vec<f64> {
    (0..grid.interior_count()).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn lambda(grid: &Grid, u: &[f64]) -> Vec<f64> {
    apply(&Field::from_interior(grid, u).unwrap(), grid).unwrap().values
}

/// Degenerate ellipticity at one node: raising the neighbors cannot lower
/// `Λu` there, raising the center cannot raise it.
pub fn monotone_at(rng: &mut ChaCha8Rng, grid: &Grid) -> Result<(), String> {
    let u = random_field(rng, grid);
    let k = rng.gen_range(0..grid.interior_count());
    let mut v: Vec<f64> = u.iter().map(|&x| x + rng.gen_range(0.0..0.5)).collect();
    v[k] = u[k];
    let (lu, lv) = (lambda(grid, &u)[k], lambda(grid, &v)[k]);
    if lv < lu - 1e-12 * (1.0 + lu.abs()) {
        return Err(format!("raising neighbors lowered Λu at node {k}: {lu} -> {lv}"));
    }
    let mut c = u.clone();
    c[k] += rng.gen_range(0.0..0.5);
    let lc = lambda(grid, &c)[k];
    if lc > lu + 1e-12 * (1.0 + lu.abs()) {
        return Err(format!("raising the center raised Λu at node {k}: {lu} -> {lc}"));
    }
    Ok(())
}

/// `Λ(cu) = cΛu` for `c > 0`.
pub fn homogeneous(rng: &mut ChaCha8Rng, grid: &Grid) -> Result<(), String> {
    let u = random_field(rng, grid);
    let c = rng.gen_range(0.01..100.0);
    let cu: Vec<f64> = u.iter().map(|&x| c * x).collect();
    let (lu, lc) = (lambda(grid, &u), lambda(grid, &cu));
    let scale = lu.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1.0);
    for (k, (a, b)) in lu.iter().zip(&lc).enumerate() {
        if (c * a - b).abs() > 1e-12 * c * scale {
            return Err(format!("node {k}: c·Λu = {} but Λ(cu) = {b}", c * a));
        }
    }
    Ok(())
}

/// At nodes whose arms are all full length, `Λq` for `q = ½xᵀAx + b·x + c`
/// equals `max_e eᵀAe / |e|²` over the stencil directions.
pub fn quadratic_exact(rng: &mut ChaCha8Rng, grid: &Grid) -> Result<usize, String> {
    let (a11, a22, a12) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
    let (b1, b2, c0) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let q = |p: Point2<f64>| 0.5 * (a11 * p.x * p.x + 2.0 * a12 * p.x * p.y + a22 * p.y * p.y) + b1 * p.x + b2 * p.y + c0;
    let u: Vec<f64> = (0..grid.interior_count()).map(|k| q(grid.position(k))).collect();
    let lu = lambda(grid, &u);
    let dirs = directions(grid.stencil().width() as i32);
    let want = dirs
        .iter()
        .map(|&(p, r)| {
            let (x, y) = (p as f64, r as f64);
            (a11 * x * x + 2.0 * a12 * x * y + a22 * y * y) / (x * x + y * y)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let h = grid.h();
    let mut checked = 0;
    for k in 0..grid.interior_count() {
        let full = grid.stencil().directions().iter().enumerate().all(|(d, e)| {
            let (sp, sm) = grid.arm_lengths(k, d);
            let arm = grid.arms_of(k)[d];
            (sp - e.len * h).abs() < 1e-12
                && (sm - e.len * h).abs() < 1e-12
                && arm.next != NO_NODE
                && arm.prev != NO_NODE
        });
        if full {
            checked += 1;
            let tol = 1e-9 * (1.0 + u.iter().fold(0.0f64, |m, &x| m.max(x.abs()))) / (h * h);
            if (lu[k] - want).abs() > tol {
                return Err(format!("node {k}: Λq = {} but expected {want}", lu[k]));
            }
        }
    }
    Ok(checked)
}

fn toy_operator(u: &[[f64; 5]; 5], i: usize, j: usize) -> f64 {
    let d = |di: isize, dj: isize, len2: f64| {
        let p = u[(i as isize + di) as usize][(j as isize + dj) as usize];
        let m = u[(i as isize - di) as usize][(j as isize - dj) as usize];
        (p + m - 2.0 * u[i][j]) / len2
    };
    d(1, 0, 1.0).max(d(0, 1, 1.0)).max(d(1, 1, 2.0)).max(d(1, -1, 2.0))
}

/// Principal eigenvalue of the 3×3 problem (square `(0,4)²`, `h = 1`,
/// `W = 1`) by normalized explicit flow `u ← u + τΛu` from a random start.
pub fn toy_oracle(rng: &mut ChaCha8Rng) -> f64 {
    let tau = 0.25;
    let mut u = [[0.0f64; 5]; 5];
    for row in u.iter_mut().take(4).skip(1) {
        for x in row.iter_mut().take(4).skip(1) {
            *x = rng.gen_range(0.01..1.0);
        }
    }
    let mut rho = 0.0;
    for _ in 0..4000 {
        let mut v = u;
        for i in 1..4 {
            for j in 1..4 {
                v[i][j] = u[i][j] + tau * toy_operator(&u, i, j);
            }
        }
        let m = v.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
        let um = u.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
        rho = m / um;
        for row in v.iter_mut() {
            for x in row.iter_mut() {
                *x /= m;
            }
        }
        u = v;
    }
    (1.0 - rho) / tau
}
