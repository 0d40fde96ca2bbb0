//! Compute the exact bound for a single parameter triple and show how far
//! below the optimal-constant bound it sits.
//!
//! Run with: `cargo run --example bound_query`

use tiltbound::{supremum, Params};

fn main() {
    for (h, w, sigma) in [(1.0, 1.0, 0.5), (1.0, 0.0, 0.5), (5.0, -1.0, 0.5), (0.2, 2.5, 1.3)] {
        let p = Params::new(h, w, sigma).unwrap();
        let r = supremum(&p).unwrap();
        println!("h = {h}, w = {w}, sigma = {sigma}");
        println!("  supremum S        = {:.12}", r.supremum);
        println!("  maximizer         = P(X = {:.6}) = {:.6}, P(X = {:.6}) = {:.6}",
                 -r.maximizer.u(), r.maximizer.mass_neg(),
                 r.maximizer.v(), r.maximizer.mass_pos());
        println!("  branch            = {:?}", r.branch);
        println!("  K sigma^2         = {:.12}", r.k_bound);
        println!("  ratio S/(K s^2)   = {:.6}", r.supremum / r.k_bound);
        println!();
    }
}
