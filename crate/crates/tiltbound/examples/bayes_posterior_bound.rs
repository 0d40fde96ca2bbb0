//! Bound the posterior mean of an exponential-family parameter using only
//! the prior's mean, a variance cap, and the support bound theta_max — no
//! likelihood model needed. When the variance cap is small enough the bound
//! is attained by an explicit two-point prior.
//!
//! Run with: `cargo run --example bayes_posterior_bound`

use tiltbound::bayes::{self, BayesFamily};

fn main() {
    let fam = BayesFamily::new(1.0, 0.0, 0.1).unwrap();
    for t in [0.5, 1.0, 2.0, 5.0] {
        let b = bayes::posterior_mean_bound(&fam, t).unwrap();
        println!("t = {t}:");
        println!("  exact bound   {:.10}", b.exact);
        println!("  simple bound  {:.10}", b.simple);
        println!("  trivial bound {:.10}", fam.theta_max);
        match bayes::extremal_prior(&fam, t).unwrap() {
            Some(p) => {
                let attained = bayes::posterior_mean(&p, t);
                println!("  attained by the prior {:?} (posterior mean {:.10})",
                         p.dist().atoms(), attained);
            }
            None => println!("  strict supremum; no admissible prior attains it"),
        }
        println!();
    }
}
