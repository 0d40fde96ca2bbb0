//! Exact suprema of the Winsorized-tilted mean, their unique two-point
//! maximizers, and the optimal constant factors `K_w(h)`.
//!
//! Everything is computed for the canonical levels `w ∈ {−1, 0, 1}` and
//! extended to arbitrary real `w` by the rescaling identity
//! `S(h, w, σ) = |w| · S(h|w|, w/|w|, σ/|w|)` (and the shift identity for
//! nonzero means, used by the Bayes module).

use crate::dist::{two_point_mean, validate_extremal, Params, TwoPointDist};
use crate::roots::{self, RootConfig};
use crate::{Error, Result};

/// Which case of the maximizer characterization applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `w = 1` (canonically) with `σ ≤ σ_h`: the maximizer saturates the
    /// variance cap with `ε* = σ²`.
    SaturatedVariance,
    /// `w = 1` with `σ > σ_h`: `ε*` is the interior root `ε̃`.
    InteriorRoot,
    /// `w ∈ {−1, 0}`: `ε*` is the root of the characteristic polynomial on
    /// `(|w|, ∞)`.
    NonposW,
}

/// The supremum together with its maximizer and the optimal linear-in-`σ²`
/// bound.
#[derive(Debug, Clone)]
pub struct BoundResult {
    /// `S(h, w, σ)`, the exact supremum of the tilted mean.
    pub supremum: f64,
    /// The unique two-point maximizer.
    pub maximizer: TwoPointDist,
    /// The optimal constant `K` with `S < K σ²`.
    pub k_factor: f64,
    /// `K σ²`.
    pub k_bound: f64,
    pub branch: Branch,
}

/// Canonical reduction of a general parameter triple to `w ∈ {−1, 0, 1}`.
#[derive(Debug, Clone, Copy)]
pub struct CanonicalParams {
    pub w_canon: i8,
    pub h_canon: f64,
    pub sigma_canon: f64,
    /// `|w|`, or 1 when `w = 0`.
    pub scale: f64,
}

impl CanonicalParams {
    pub fn from_params(p: &Params) -> Self {
        if p.w == 0.0 {
            Self { w_canon: 0, h_canon: p.h, sigma_canon: p.sigma, scale: 1.0 }
        } else {
            let s = p.w.abs();
            Self {
                w_canon: if p.w > 0.0 { 1 } else { -1 },
                h_canon: p.h * s,
                sigma_canon: p.sigma / s,
                scale: s,
            }
        }
    }
}

/// The maximizing `ε` for canonical `w ∈ {−1, 0, 1}`.
///
/// For `w = 1` this is `σ²` when `σ ≤ σ_h` and the interior root `ε̃`
/// otherwise; for `w ∈ {−1, 0}` it is the unique root on `(|w|, ∞)`. The
/// maximizer itself is the two-point law `P_{ε*, σ²/ε*}`.
pub fn eps_maximizer(h: f64, w: i8, sigma: f64, cfg: &RootConfig) -> Result<(f64, Branch)> {
    match w {
        1 => {
            let sh = roots::sigma_h(h, cfg)?;
            if sigma <= sh {
                Ok((sigma * sigma, Branch::SaturatedVariance))
            } else {
                Ok((roots::eps_tilde(h, sigma, cfg)?, Branch::InteriorRoot))
            }
        }
        0 | -1 => Ok((roots::eps_opt_nonpos_w(h, w as f64, sigma, cfg)?, Branch::NonposW)),
        _ => Err(Error::InvalidParams(format!("canonical w must be -1, 0 or 1, got {w}"))),
    }
}

/// The optimal constant `K_w(h)` for canonical `w`.
///
/// `K_1(h) = e^h − 1`; for `w ∈ {−1, 0}`,
/// `K_w(h) = h / (−W₋₁(−e^{hw−1}))`. In particular `K_0(h) = h` exactly
/// (the Lambert argument sits at the branch point) and `K_{−1}(h) → 1` as
/// `h → ∞`.
pub fn k_factor_canonical(h: f64, w: i8) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParams(format!("h must be positive, got {h}")));
    }
    match w {
        1 => Ok(h.exp_m1()),
        0 | -1 => {
            let z = -(h * w as f64 - 1.0).exp();
            debug_assert!((-(-1.0f64).exp()..0.0).contains(&z));
            let l = roots::lambert_w_m1(z)?;
            Ok(h / -l)
        }
        _ => Err(Error::InvalidParams(format!("canonical w must be -1, 0 or 1, got {w}"))),
    }
}

/// The supremum and maximizer at canonical `w ∈ {−1, 0, 1}`.
pub fn supremum_canonical(h: f64, w: i8, sigma: f64, cfg: &RootConfig) -> Result<BoundResult> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParams(format!("sigma must be positive, got {sigma}")));
    }
    let (eps, branch) = eps_maximizer(h, w, sigma, cfg)?;
    let maximizer = TwoPointDist::new(eps, sigma * sigma / eps)?;
    debug_assert!(validate_extremal(&maximizer, w as f64));
    let sup = two_point_mean(&maximizer, h, w as f64);
    let k = k_factor_canonical(h, w)?;
    Ok(BoundResult { supremum: sup, maximizer, k_factor: k, k_bound: k * sigma * sigma, branch })
}

/// The supremum and maximizer for arbitrary real `w`, with default root
/// tolerances.
pub fn supremum(p: &Params) -> Result<BoundResult> {
    supremum_with(p, &RootConfig::default())
}

/// [`supremum`] with explicit root-finder configuration.
///
/// The general-`w` constant factor is `(e^{hw} − 1)/w` for `w > 0`, `h` for
/// `w = 0`, and `K_{−1}(h|w|)/|w|` for `w < 0`; all three are continuous at
/// `w = 0`.
pub fn supremum_with(p: &Params, cfg: &RootConfig) -> Result<BoundResult> {
    Params::new(p.h, p.w, p.sigma)?;
    let c = CanonicalParams::from_params(p);
    let base = supremum_canonical(c.h_canon, c.w_canon, c.sigma_canon, cfg)?;
    if c.w_canon == 0 {
        return Ok(base);
    }
    let maximizer = TwoPointDist::new(base.maximizer.u() * c.scale, base.maximizer.v() * c.scale)?;
    // evaluating at the original (h, w) keeps `supremum == two_point_mean(maximizer)`
    // exact; analytically it equals scale * base.supremum
    let sup = two_point_mean(&maximizer, p.h, p.w);
    let k_factor = if p.w > 0.0 {
        (p.h * p.w).exp_m1() / p.w
    } else {
        k_factor_canonical(c.h_canon, -1)? / c.scale
    };
    Ok(BoundResult {
        supremum: sup,
        maximizer,
        k_factor,
        k_bound: k_factor * p.sigma * p.sigma,
        branch: base.branch,
    })
}

/// The σ-supremum of `m(ε)/σ²` at canonical `w`, as a function of `ε`.
///
/// For `w = 1`: `(e^{(1+ε)h} − 1)/(1 + ε e^{(1+ε)h})`, strictly decreasing
/// in `ε` with limit `e^h − 1` at `0⁺`. For `w ∈ {−1, 0}`:
/// `(1 − e^{−(w+ε)h})/ε`, maximized at [`rho_argmax`] where it equals
/// `K_w(h)`.
pub fn rho(h: f64, w: i8, eps: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParams(format!("h must be positive, got {h}")));
    }
    match w {
        1 => {
            if eps <= 0.0 {
                return Err(Error::Domain(format!("rho: eps must be > 0 for w = 1, got {eps}")));
            }
            let a = (1.0 + eps) * h;
            Ok(-(-a).exp_m1() / ((-a).exp() + eps))
        }
        0 | -1 => {
            if eps <= -(w as f64) {
                return Err(Error::Domain(format!("rho: eps must be > {} for w = {w}, got {eps}", -w)));
            }
            Ok(-(-(w as f64 + eps) * h).exp_m1() / eps)
        }
        _ => Err(Error::InvalidParams(format!("canonical w must be -1, 0 or 1, got {w}"))),
    }
}

/// The `ε` maximizing [`rho`] for `w ∈ {−1, 0}`:
/// `ε_* = −(1 + W₋₁(−e^{hw−1}))/h`. For `w = 0` this is 0 (the supremum of
/// `rho` is a limit at the left edge of its domain).
pub fn rho_argmax(h: f64, w: i8) -> Result<f64> {
    if w != 0 && w != -1 {
        return Err(Error::InvalidParams(format!("rho_argmax: w must be -1 or 0, got {w}")));
    }
    let z = -(h * w as f64 - 1.0).exp();
    let l = roots::lambert_w_m1(z)?;
    Ok(-(1.0 + l) / h)
}

/// The shift reduction: bounding the tilted mean of `X + mean` at level `w`
/// reduces to the zero-mean problem at level `w − mean`.
pub fn shift_reduce(w: f64, mean: f64) -> f64 {
    w - mean
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::tilted_mean;

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn eps_maximizer_branches() {
        let cfg = RootConfig::default();
        let sh = roots::sigma_h(1.0, &cfg).unwrap();

        let (e, b) = eps_maximizer(1.0, 1, 0.5 * sh, &cfg).unwrap();
        assert_eq!(b, Branch::SaturatedVariance);
        assert_eq!(e, 0.25 * sh * sh);

        let (e, b) = eps_maximizer(1.0, 1, 2.0 * sh, &cfg).unwrap();
        assert_eq!(b, Branch::InteriorRoot);
        assert!(e < 4.0 * sh * sh);
        assert!(rel_err(e, roots::eps_tilde(1.0, 2.0 * sh, &cfg).unwrap()) < 1e-15);

        // branch selection exactly at sigma = sigma_h: saturated
        let (e, b) = eps_maximizer(1.0, 1, sh, &cfg).unwrap();
        assert_eq!(b, Branch::SaturatedVariance);
        assert_eq!(e, sh * sh);

        let (e, b) = eps_maximizer(1.0, 0, 1.0, &cfg).unwrap();
        assert_eq!(b, Branch::NonposW);
        assert!(rel_err(e, 1.254_426_616_982_287_6) < 1e-12);
    }

    #[test]
    fn eps_maximizer_is_grid_argmax_w0() {
        // the root maximizes m(eps) over a dense grid on (0, 50]
        let cfg = RootConfig::default();
        let (estar, _) = eps_maximizer(1.0, 0, 1.0, &cfg).unwrap();
        let m_star = two_point_mean(&TwoPointDist::new(estar, 1.0 / estar).unwrap(), 1.0, 0.0);
        let n = 100_000;
        for i in 1..=n {
            let eps = 50.0 * i as f64 / n as f64;
            let m = two_point_mean(&TwoPointDist::new(eps, 1.0 / eps).unwrap(), 1.0, 0.0);
            assert!(m <= m_star + 1e-12, "grid point {eps} beats the root");
        }
    }

    #[test]
    fn supremum_canonical_values() {
        let cfg = RootConfig::default();
        // frozen from the independent high-precision oracle
        let r = supremum_canonical(1.0, 0, 1.0, &cfg).unwrap();
        assert!(rel_err(r.supremum, 0.482_355_544_102_468_2) < 1e-12);
        let r = supremum_canonical(1.0, 1, 0.5, &cfg).unwrap();
        assert!(rel_err(r.supremum, 0.332_473_822_841_579_56) < 1e-12);
        assert_eq!(r.branch, Branch::SaturatedVariance);
        let r = supremum_canonical(5.0, -1, 1.0, &cfg).unwrap();
        assert!(rel_err(r.supremum, 0.590_405_081_641_498) < 1e-12);
        assert!(rel_err(r.maximizer.u(), 1.501_002_621_730_990_3) < 1e-11);
    }

    #[test]
    fn supremum_small_sigma_ratio() {
        // S / sigma^2 -> e^h - 1 as sigma -> 0 (w = 1)
        let cfg = RootConfig::default();
        let r = supremum_canonical(1.0, 1, 0.01, &cfg).unwrap();
        let ratio = r.supremum / 1e-4;
        assert!(rel_err(ratio, 1.0f64.exp_m1()) < 0.02);
    }

    #[test]
    fn strict_k_bound() {
        let cfg = RootConfig::default();
        for h in [0.2, 1.0, 5.0] {
            for w in [-1i8, 0, 1] {
                for sigma in [0.05, 0.2, 0.5, 1.0, 2.0] {
                    let r = supremum_canonical(h, w, sigma, &cfg).unwrap();
                    assert!(r.supremum < r.k_bound, "h={h} w={w} sigma={sigma}");
                    assert!(r.supremum > 0.0 || w == -1);
                    let ratio = r.supremum / r.k_bound;
                    assert!(ratio > 0.0 && ratio < 1.0);
                    // the maximizer saturates the variance cap
                    assert!(rel_err(r.maximizer.variance(), sigma * sigma) < 1e-12);
                    assert!(validate_extremal(&r.maximizer, w as f64));
                    // supremum consistent with the generic evaluation path
                    let m = tilted_mean(&r.maximizer.as_discrete(), h, w as f64);
                    assert!(rel_err(r.supremum, m) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn k_factor_identities() {
        for h in [0.2, 1.0, 5.0] {
            assert!(rel_err(k_factor_canonical(h, 0).unwrap(), h) < 1e-12);
        }
        assert!(rel_err(k_factor_canonical(1.0, 1).unwrap(), 1.0f64.exp_m1()) < 1e-15);
        // frozen from the Lambert oracle
        assert!(rel_err(k_factor_canonical(1.0, -1).unwrap(), 0.317_844_432_899_372_7) < 1e-13);
        let k50 = k_factor_canonical(50.0, -1).unwrap();
        assert!(k50 > 0.9 && k50 < 1.0);
    }

    #[test]
    fn general_w_rescaling() {
        let cfg = RootConfig::default();
        let p = Params::new(1.0, 2.0, 1.0).unwrap();
        let r = supremum(&p).unwrap();
        let rc = supremum_canonical(2.0, 1, 0.5, &cfg).unwrap();
        assert!(rel_err(r.supremum, 2.0 * rc.supremum) < 1e-12);
        assert!(rel_err(r.maximizer.u(), 2.0 * rc.maximizer.u()) < 1e-15);

        // the scaled-back maximizer reproduces the supremum at the original (h, w)
        let m = tilted_mean(&r.maximizer.as_discrete(), 1.0, 2.0);
        assert!(rel_err(r.supremum, m) < 1e-12);

        // negative w
        let p = Params::new(1.0, -2.0, 1.0).unwrap();
        let r = supremum(&p).unwrap();
        let rc = supremum_canonical(2.0, -1, 0.5, &cfg).unwrap();
        assert!(rel_err(r.supremum, 2.0 * rc.supremum) < 1e-12);
        assert!(rel_err(r.k_factor, k_factor_canonical(2.0, -1).unwrap() / 2.0) < 1e-14);
    }

    #[test]
    fn k_factor_continuous_at_w0() {
        let p = Params::new(1.0, 1e-9, 1.0).unwrap();
        let r = supremum(&p).unwrap();
        assert!((r.k_factor - 1.0).abs() < 1e-6);
    }

    #[test]
    fn rho_values() {
        // w = 1: rho(0+) = e^h - 1
        assert!(rel_err(rho(1.0, 1, 1e-9).unwrap(), 1.0f64.exp_m1()) < 1e-6);
        // strictly decreasing in eps
        assert!(rho(1.0, 1, 0.5).unwrap() > rho(1.0, 1, 1.0).unwrap());

        // w = 0: rho near the argmax (0+) approaches K_0(h) = h
        assert!(rel_err(rho(1.0, 0, 1e-10).unwrap(), 1.0) < 1e-10);

        // w = -1: grid max of rho over (1, 100] equals K_{-1}(h)
        let k = k_factor_canonical(1.0, -1).unwrap();
        let estar = rho_argmax(1.0, -1).unwrap();
        assert!(rel_err(rho(1.0, -1, estar).unwrap(), k) < 1e-12);
        let mut best = 0.0f64;
        for i in 1..100_000 {
            let eps = 1.0 + 99.0 * i as f64 / 100_000.0;
            best = best.max(rho(1.0, -1, eps).unwrap());
        }
        assert!(best <= k);
        assert!(rel_err(best, k) < 1e-6);

        assert!(rho(1.0, -1, 0.5).is_err());
        assert!(rho(1.0, 1, 0.0).is_err());
    }

    #[test]
    fn shift_reduce_is_subtraction() {
        assert_eq!(shift_reduce(3.0, 1.0), 2.0);
        assert_eq!(shift_reduce(0.0, 0.0), 0.0);
    }

    #[test]
    fn branch_boundary_continuity() {
        let cfg = RootConfig::default();
        let sh = roots::sigma_h(1.0, &cfg).unwrap();
        let (lo, _) = eps_maximizer(1.0, 1, sh * (1.0 - 1e-8), &cfg).unwrap();
        let (hi, _) = eps_maximizer(1.0, 1, sh * (1.0 + 1e-8), &cfg).unwrap();
        assert!(rel_err(lo, hi) < 1e-6);
    }

    #[test]
    fn unique_argmax_under_perturbation() {
        let cfg = RootConfig::default();
        for (h, w, sigma) in [(1.0, 1i8, 0.5), (1.0, 0, 1.0), (2.0, -1, 1.5)] {
            let (estar, _) = eps_maximizer(h, w, sigma, &cfg).unwrap();
            let s2 = sigma * sigma;
            let m_star = two_point_mean(&TwoPointDist::new(estar, s2 / estar).unwrap(), h, w as f64);
            for i in 0..100 {
                // perturbed eps, staying in the feasible set
                let f = 0.5 + 1.2 * i as f64 / 99.0;
                let eps = if w == 1 { (estar * f).min(s2) } else { -(w as f64) + (estar + w as f64) * f };
                if (eps - estar).abs() < 1e-9 * estar {
                    continue;
                }
                let m = two_point_mean(&TwoPointDist::new(eps, s2 / eps).unwrap(), h, w as f64);
                assert!(m < m_star, "perturbed eps {eps} not below max");
            }
        }
    }
}
