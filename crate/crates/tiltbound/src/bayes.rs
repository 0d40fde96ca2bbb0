//! Optimal prior bounds on the Bayes posterior mean for one-parameter
//! exponential families with natural parameter `θ` bounded above.
//!
//! For a (renormalized) prior with mean `m`, standard deviation at most `σ`,
//! and support bounded by `θ_max`, the posterior mean given an observed
//! sufficient statistic `t` satisfies
//!
//! ```text
//!     θ̂(t) − m  ≤  S(t, θ_max − m, σ)  <  (e^{(θ_max − m) t} − 1)/(θ_max − m) · σ²
//! ```
//!
//! where `S` is the exact tilted-mean supremum. The exact bound needs nothing
//! but `(θ_max, m, σ)`: no likelihood model, no prior beyond its first two
//! moments and support bound. Computing `t = T(x)` from data is the caller's
//! job.

use crate::bounds::{self, BoundResult};
use crate::dist::{DiscreteDist, Params};
use crate::roots::{self, RootConfig};
use crate::{Error, Result};

/// Summary of an exponential-family prior: `θ_max = sup Θ`, the
/// (c-renormalized) prior mean `m`, and the cap `σ` on its standard
/// deviation.
#[derive(Debug, Clone, Copy)]
pub struct BayesFamily {
    pub theta_max: f64,
    pub prior_mean: f64,
    pub prior_sd: f64,
}

impl BayesFamily {
    pub fn new(theta_max: f64, prior_mean: f64, prior_sd: f64) -> Result<Self> {
        if !(prior_mean.is_finite() && prior_mean < theta_max) {
            return Err(Error::InvalidParams(format!(
                "prior mean {prior_mean} must lie below theta_max {theta_max}"
            )));
        }
        if !(prior_sd > 0.0 && prior_sd.is_finite()) {
            return Err(Error::InvalidParams(format!("prior sd must be positive, got {prior_sd}")));
        }
        Ok(Self { theta_max, prior_mean, prior_sd })
    }
}

/// A finite discrete prior over `θ`-atoms, already renormalized so the
/// masses (the values `c(θ)π({θ})`) sum to one.
#[derive(Debug, Clone)]
pub struct DiscretePrior {
    dist: DiscreteDist,
}

impl DiscretePrior {
    /// Wraps a discrete distribution as a prior bounded by `theta_max`.
    pub fn new(dist: DiscreteDist, theta_max: f64) -> Result<Self> {
        if dist.support_sup() > theta_max + 1e-12 * theta_max.abs().max(1.0) {
            return Err(Error::InvalidParams(format!(
                "prior atom {} exceeds theta_max {theta_max}",
                dist.support_sup()
            )));
        }
        Ok(Self { dist })
    }

    pub fn dist(&self) -> &DiscreteDist {
        &self.dist
    }
}

/// The posterior mean `∫θ e^{θt} c dπ / ∫e^{θt} c dπ` for a discrete prior.
///
/// Accepts any real `t` (for nonnegative sufficient statistics only `t ≥ 0`
/// occurs); the largest exponent is factored out so nothing overflows.
pub fn posterior_mean(prior: &DiscretePrior, t: f64) -> f64 {
    let atoms = prior.dist.atoms();
    let top = atoms.iter().map(|&(th, _)| th * t).fold(f64::NEG_INFINITY, f64::max);
    let mut num = 0.0;
    let mut den = 0.0;
    for &(th, p) in atoms {
        let e = (th * t - top).exp();
        num += th * e * p;
        den += e * p;
    }
    num / den
}

/// The pair of upper bounds on the posterior mean.
#[derive(Debug, Clone)]
pub struct PosteriorBound {
    /// `m + S(t, θ_max − m, σ)` — exact (attained by a two-point prior when
    /// the exactness condition holds).
    pub exact: f64,
    /// `m + (e^{(θ_max − m) t} − 1)/(θ_max − m) · σ²` — the simple optimal-
    /// constant bound, always strictly above `exact`.
    pub simple: f64,
    /// The underlying tilted-mean bound at `(h, w, σ) = (t, θ_max − m, σ)`.
    pub bound: BoundResult,
}

/// Computes both posterior-mean bounds at observed statistic `t > 0`.
pub fn posterior_mean_bound(fam: &BayesFamily, t: f64) -> Result<PosteriorBound> {
    posterior_mean_bound_with(fam, t, &RootConfig::default())
}

pub fn posterior_mean_bound_with(fam: &BayesFamily, t: f64, cfg: &RootConfig) -> Result<PosteriorBound> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    let w = bounds::shift_reduce(fam.theta_max, fam.prior_mean);
    let p = Params::new(t, w, fam.prior_sd)?;
    let bound = bounds::supremum_with(&p, cfg)?;
    let exact = fam.prior_mean + bound.supremum;
    let simple = fam.prior_mean + (w * t).exp_m1() / w * fam.prior_sd * fam.prior_sd;
    Ok(PosteriorBound { exact, simple, bound })
}

/// The two-point prior attaining the exact bound, when it is a valid prior.
///
/// The maximizer of the underlying zero-mean problem, shifted by `m`, has
/// its upper atom at `m + v ≥ θ_max`; it is an admissible prior exactly when
/// `v = θ_max − m` (the saturated-variance branch), i.e. when
/// `σ ≤ (θ_max − m) · σ_{t(θ_max − m)}`. Returns `None` otherwise.
pub fn extremal_prior(fam: &BayesFamily, t: f64) -> Result<Option<DiscretePrior>> {
    let b = posterior_mean_bound(fam, t)?;
    let w = fam.theta_max - fam.prior_mean;
    let tp = b.bound.maximizer;
    if tp.v() > w * (1.0 + 1e-9) {
        return Ok(None);
    }
    let dist = DiscreteDist::new([
        (fam.prior_mean - tp.u(), tp.mass_neg()),
        (fam.prior_mean + tp.v(), tp.mass_pos()),
    ])?;
    // clamp rounding overshoot of the upper atom is impossible here: v <= w
    Ok(Some(DiscretePrior::new(dist, fam.theta_max + 1e-9 * w)?))
}

/// Whether the exact bound is attained by an admissible prior:
/// `σ ≤ (θ_max − m) · σ_h` with `h = t (θ_max − m)`.
pub fn exactness_condition(fam: &BayesFamily, t: f64, cfg: &RootConfig) -> Result<bool> {
    let w = fam.theta_max - fam.prior_mean;
    let sh = roots::sigma_h(t * w, cfg)?;
    Ok(fam.prior_sd <= w * sh)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prior(atoms: &[(f64, f64)], theta_max: f64) -> DiscretePrior {
        DiscretePrior::new(DiscreteDist::new(atoms.iter().copied()).unwrap(), theta_max).unwrap()
    }

    #[test]
    fn degenerate_prior_posterior_is_constant() {
        let p = prior(&[(0.3, 1.0)], 1.0);
        for t in [0.0, 0.5, 3.0, -2.0] {
            assert!((posterior_mean(&p, t) - 0.3).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_two_point_prior_tanh() {
        // uniform on {m-s, m+s}: posterior mean = m + s*tanh(s t)
        let (m, s) = (0.2, 0.5);
        let p = prior(&[(m - s, 0.5), (m + s, 0.5)], 1.0);
        for t in [0.1, 1.0, 4.0] {
            let expect = m + s * (s * t).tanh();
            assert!((posterior_mean(&p, t) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_t_gives_prior_mean() {
        let p = prior(&[(-0.5, 0.25), (0.1, 0.5), (0.9, 0.25)], 1.0);
        assert!((posterior_mean(&p, 0.0) - p.dist().mean()).abs() < 1e-15);
    }

    #[test]
    fn bound_ordering() {
        let fam = BayesFamily::new(1.0, 0.0, 0.1).unwrap();
        let b = posterior_mean_bound(&fam, 1.0).unwrap();
        assert!(fam.prior_mean < b.exact);
        assert!(b.exact < b.simple);
        // never worse than the trivial bound theta_max
        assert!(b.exact <= fam.prior_mean + (fam.theta_max - fam.prior_mean));
        assert!(posterior_mean_bound(&fam, 0.0).is_err());
        assert!(posterior_mean_bound(&fam, -1.0).is_err());
    }

    #[test]
    fn small_sigma_bound_collapses_to_mean() {
        let fam = BayesFamily::new(1.0, 0.0, 1e-6).unwrap();
        let b = posterior_mean_bound(&fam, 1.0).unwrap();
        assert!(b.exact - fam.prior_mean < 1e-11);
        assert!(b.exact > fam.prior_mean);
    }

    #[test]
    fn extremal_prior_attains_exact_bound() {
        let cfg = RootConfig::default();
        let fam = BayesFamily::new(1.0, 0.0, 0.1).unwrap();
        let t = 1.0;
        assert!(exactness_condition(&fam, t, &cfg).unwrap());
        let p = extremal_prior(&fam, t).unwrap().expect("exactness condition holds");
        let b = posterior_mean_bound(&fam, t).unwrap();
        assert!((posterior_mean(&p, t) - b.exact).abs() < 1e-9);
        // prior matches the family summary
        assert!(p.dist().mean().abs() - fam.prior_mean.abs() < 1e-12);
        assert!(p.dist().variance() <= fam.prior_sd * fam.prior_sd * (1.0 + 1e-12));
    }

    #[test]
    fn extremal_prior_absent_when_sigma_large() {
        let cfg = RootConfig::default();
        // sigma far above (theta_max - m) * sigma_h: interior-root branch,
        // the shifted maximizer pokes above theta_max
        let fam = BayesFamily::new(1.0, 0.0, 5.0).unwrap();
        assert!(!exactness_condition(&fam, 1.0, &cfg).unwrap());
        assert!(extremal_prior(&fam, 1.0).unwrap().is_none());
    }

    #[test]
    fn random_priors_dominated() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let fam = BayesFamily::new(1.0, 0.0, 0.3).unwrap();
        for t in [0.2, 1.0, 5.0] {
            let b = posterior_mean_bound(&fam, t).unwrap();
            for _ in 0..200 {
                // random prior with mean 0, sd <= 0.3, support below theta_max
                let k = rng.gen_range(2..=4);
                let xs: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0f64)).collect();
                let es: Vec<f64> = (0..k).map(|_| -rng.gen_range(1e-6..1.0f64).ln()).collect();
                let tot: f64 = es.iter().sum();
                let d = match DiscreteDist::new(xs.iter().zip(&es).map(|(&x, &e)| (x, e / tot))) {
                    Ok(d) if d.atoms().len() >= 2 => d,
                    _ => continue,
                };
                let centered = d.shifted(-d.mean());
                let var = centered.variance();
                if var <= 0.0 {
                    continue;
                }
                let scale = (fam.prior_sd * fam.prior_sd * rng.gen_range(0.01..1.0f64) / var).sqrt();
                let scaled = centered.scaled(scale);
                // keep the support below theta_max
                if scaled.support_sup() > fam.theta_max {
                    continue;
                }
                let p = DiscretePrior::new(scaled, fam.theta_max).unwrap();
                assert!(posterior_mean(&p, t) <= b.exact + 1e-9);
            }
        }
    }

    #[test]
    fn family_validation() {
        assert!(BayesFamily::new(1.0, 1.0, 0.1).is_err()); // m == theta_max
        assert!(BayesFamily::new(1.0, 0.0, 0.0).is_err());
        let d = DiscreteDist::new([(2.0, 1.0)]).unwrap();
        assert!(DiscretePrior::new(d, 1.0).is_err()); // atom above theta_max
    }
}
