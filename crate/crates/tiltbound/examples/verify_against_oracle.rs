//! Certify the closed-form supremum against the independent brute-force
//! oracle on a few parameter triples: grid search over two-point laws plus
//! random discrete distributions that must never exceed the bound.
//!
//! Run with: `cargo run --release --example verify_against_oracle`

use tiltbound::oracle::{self, GridSpec};
use tiltbound::Params;

fn main() {
    let grid = GridSpec::default();
    for (h, w, sigma) in [(0.2, -1.0, 0.5), (1.0, 0.0, 1.0), (5.0, 1.0, 0.2), (1.0, 1.0, 2.0)] {
        let p = Params::new(h, w, sigma).unwrap();
        let cell = oracle::verify_cell(&p, &grid).unwrap();
        let v = cell.violations();
        println!(
            "h = {h}, w = {w}, sigma = {sigma}: closed form {:.10}, brute force {:.10} \
             (rel gap {:.2e}), {} random dists dominated, {}",
            cell.closed_form.supremum,
            cell.brute_force,
            cell.brute_force_rel_gap,
            cell.domination.cases,
            if v.is_empty() { "ok".to_string() } else { format!("VIOLATIONS: {v:?}") },
        );
    }
}
