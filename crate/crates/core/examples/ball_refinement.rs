//! Refinement study on the unit disk.

use std::time::Instant;

use trunclap::eigensolver::SolverConfig;
use trunclap::{analytic_mu, solve, Domain};

fn main() {
    let disk = Domain::ball(1.0, 2);
    let exact = analytic_mu(&disk).unwrap();
    let inner = std::env::args().nth(1).unwrap_or_default();
    for k in [4u32, 5, 6, 7] {
        let h = 0.5f64.powi(k as i32);
        let mut cfg = SolverConfig::with_grid(h, 4);
        if inner != "pseudo" {
            cfg = cfg.policy_iteration();
        }
        let t = Instant::now();
        match solve(&disk, &cfg) {
            Ok(est) => println!(
                "h=1/{:<4} mu={:.6} rel={:+.2e} outer={} inner={} nodes={} {:.2}s",
                1u32 << k,
                est.mu,
                (est.mu - exact) / exact,
                est.outer_iters,
                est.inner_iters_total,
                est.interior_nodes,
                t.elapsed().as_secs_f64()
            ),
            Err(e) => println!("h=1/{}: {e}", 1u32 << k),
        }
    }
}
