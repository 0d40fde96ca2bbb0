//! Reproduce the ratio curves S / (K sigma^2) as sigma sweeps (0, 1], for
//! each combination of winsorization level and tilt. The ratios approach 1
//! as sigma -> 0 (the constant K is optimal) and fall away as sigma grows.
//!
//! Run with: `cargo run --example ratio_curves`

use tiltbound::{supremum, Params};

fn main() {
    println!("w,h,sigma,ratio");
    for w in [-1.0, 0.0, 1.0] {
        for h in [0.2, 1.0, 5.0] {
            for k in 1..=20 {
                let sigma = k as f64 / 20.0;
                let r = supremum(&Params::new(h, w, sigma).unwrap()).unwrap();
                println!("{w},{h},{sigma},{:.6}", r.supremum / r.k_bound);
            }
        }
    }
    eprintln!("(the CLI `tiltbound ratio-curve` emits the full 200-point sweep)");
}
