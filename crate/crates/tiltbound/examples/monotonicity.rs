//! Empirically confirm the structural monotonicity of the tilted mean: it
//! is nondecreasing in both the tilt h and the winsorization level w, and
//! exactly constant in w once w clears the support.
//!
//! Run with: `cargo run --example monotonicity`

use tiltbound::oracle::{self, GridSpec};
use tiltbound::{tilted_mean, DiscreteDist};

fn main() {
    // a concrete skewed three-point law, zero mean
    let d = DiscreteDist::new([(-1.0, 0.6), (0.5, 0.2), (1.1, 0.2)]).unwrap();
    println!("tilted mean of a three-point law, w = 0.8:");
    for h in [0.1, 0.5, 1.0, 2.0, 4.0] {
        println!("  h = {h:>3}: {:.8}", tilted_mean(&d, h, 0.8));
    }
    println!("tilted mean at h = 1 as w rises through the support:");
    for w in [-1.0, -0.5, 0.0, 0.5, 1.1, 2.0] {
        println!("  w = {w:>4}: {:.8}", tilted_mean(&d, 1.0, w));
    }

    // and at scale: the randomized suite
    let g = GridSpec { random_dists: 200, ..GridSpec::default() };
    for sigma in [0.2, 1.0] {
        let r = oracle::monotonicity_suite(sigma, &g).unwrap();
        println!("randomized suite at sigma = {sigma}: {} cases, {} violations",
                 r.cases, r.violations.len());
    }
}
