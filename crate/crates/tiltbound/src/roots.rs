//! Bracketed scalar root-finders for the characteristic roots of the bound
//! (`sigma_h`, `eps_tilde`, `eps_opt_nonpos_w`) and the Lambert W₋₁ branch.
//!
//! Every target function here has a proven single sign change, so plain
//! bisection is guaranteed to converge; speed is secondary to certainty. All
//! bisections run in log space (geometric midpoint) because the roots'
//! magnitudes vary over many decades with `h` and `sigma`, and every target
//! is evaluated in a sign-stable rearrangement with the common exponential
//! factored out, so nothing overflows for `h·ε` up to ~700.

use crate::{Error, Result};

/// Tolerances and iteration budget shared by the root-finders.
#[derive(Debug, Clone, Copy)]
pub struct RootConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-12, abs_tol: 1e-14, max_iter: 200 }
    }
}

impl RootConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.max_iter >= 1) {
            return Err(Error::InvalidParams("root tolerances must be positive, max_iter >= 1".into()));
        }
        Ok(())
    }
}

/// `u_*(h, ε) = ε² (e^{(1+ε)h} − 1 − εh) / (1 + εh − e^{−(1+ε)h})`.
///
/// Strictly increasing in `ε` on `(0, ∞)`. Overflow of the dominant
/// exponential yields `+∞`, which preserves the monotone semantics; callers
/// treat the sentinel as a positive sign during bracketing.
pub fn u_star(h: f64, eps: f64) -> f64 {
    debug_assert!(h > 0.0 && eps > 0.0);
    let a = (1.0 + eps) * h;
    // exp_m1 keeps the numerator accurate when a is tiny; the subtraction
    // a - eps*h = h is exact in that regime
    let num = eps * eps * (a.exp_m1() - eps * h);
    let den = eps * h - (-a).exp_m1();
    num / den
}

/// Sign of a value during bracketing: infinities carry their sign, NaN is an
/// evaluation failure.
fn sign_of(x: f64) -> Result<bool> {
    if x.is_nan() {
        return Err(Error::NonConvergence("NaN during bracketing".into()));
    }
    Ok(x > 0.0)
}

/// Geometric bisection on `(0, ∞)` for a function with a single sign change.
///
/// `lo` and `hi` must already bracket the root. Iterates until the bracket
/// collapses to adjacent floats or the relative width drops below
/// `cfg.rel_tol * 1e-3`, whichever comes first.
fn bisect_log<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, cfg: &RootConfig) -> Result<f64> {
    debug_assert!(0.0 < lo && lo < hi);
    let mut pos_lo = sign_of(f(lo))?;
    let pos_hi = sign_of(f(hi))?;
    if pos_lo == pos_hi {
        return Err(Error::NonConvergence(format!("no sign change on [{lo}, {hi}]")));
    }
    for _ in 0..cfg.max_iter {
        let mid = (0.5 * (lo.ln() + hi.ln())).exp();
        if mid <= lo || mid >= hi {
            break; // bracket is at floating-point resolution
        }
        if sign_of(f(mid))? == pos_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        pos_lo = sign_of(f(lo))?;
        if hi - lo <= cfg.rel_tol * 1e-3 * lo + f64::MIN_POSITIVE {
            break;
        }
    }
    Ok((0.5 * (lo.ln() + hi.ln())).exp())
}

/// Expands `hi` upward by doubling until `f` changes sign relative to `f(lo)`.
fn expand_up<F: Fn(f64) -> f64>(f: &F, lo: f64, pos_lo: bool, cfg: &RootConfig) -> Result<f64> {
    let mut hi = lo * 2.0;
    for _ in 0..cfg.max_iter.max(64) {
        if sign_of(f(hi))? != pos_lo {
            return Ok(hi);
        }
        hi *= 2.0;
        if !hi.is_finite() {
            break;
        }
    }
    Err(Error::NonConvergence("bracket expansion exhausted".into()))
}

/// The unique `σ_h ∈ (0, ∞)` with `u_*(h, σ_h²) = σ_h²`.
///
/// `u_*(h, ε) − ε` changes sign from − to + exactly once on `(0, ∞)`, so the
/// bracket is found by shrinking/doubling from 1 and the root by bisection.
pub fn sigma_h(h: f64, cfg: &RootConfig) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParams(format!("h must be positive, got {h}")));
    }
    cfg.validate()?;
    let f = |eps: f64| u_star(h, eps) - eps;
    // find a negative point (small eps) and a positive point (large eps)
    let mut lo = 1.0;
    let mut n = 0;
    while sign_of(f(lo))? {
        lo *= 0.5;
        n += 1;
        if n > 4200 {
            return Err(Error::NonConvergence("sigma_h: no negative bracket end".into()));
        }
    }
    let hi = expand_up(&f, lo, false, cfg)?;
    let eps_root = bisect_log(&f, lo, hi, cfg)?;
    Ok(eps_root.sqrt())
}

/// The unique `ε̃ ∈ (0, σ²)` with `u_*(h, ε̃) = σ²`, defined for `σ > σ_h`.
pub fn eps_tilde(h: f64, sigma: f64, cfg: &RootConfig) -> Result<f64> {
    if !(h > 0.0 && sigma > 0.0) {
        return Err(Error::InvalidParams("need h > 0, sigma > 0".into()));
    }
    cfg.validate()?;
    let s2 = sigma * sigma;
    if u_star(h, s2) <= s2 {
        // equivalent to sigma <= sigma_h(h)
        return Err(Error::Domain(
            "eps_tilde: sigma <= sigma_h(h); root lies outside (0, sigma^2), use the eps* = sigma^2 branch".into(),
        ));
    }
    let f = |eps: f64| u_star(h, eps) - s2;
    // u_*(h, 0+) = 0 < sigma^2, so shrink from sigma^2/2 to a negative end
    let mut lo = s2 * 0.5;
    let mut n = 0;
    while sign_of(f(lo))? {
        lo *= 0.5;
        n += 1;
        if n > 4200 {
            return Err(Error::NonConvergence("eps_tilde: no negative bracket end".into()));
        }
    }
    bisect_log(&f, lo, s2, cfg)
}

/// The unique `ε ∈ (|w|, ∞)` with
/// `e^{(ε+w)h}(1+εh)(ε²+σ²) − ε² e^{2(ε+w)h} − σ² = 0`, for `w ∈ {−1, 0}`.
///
/// The target is evaluated divided through by `e^{(ε+w)h}`, which preserves
/// the sign and keeps every term representable:
/// `(1+εh)(ε²+σ²) − ε² e^{(ε+w)h} − σ² e^{−(ε+w)h}`.
pub fn eps_opt_nonpos_w(h: f64, w: f64, sigma: f64, cfg: &RootConfig) -> Result<f64> {
    if w != -1.0 && w != 0.0 {
        return Err(Error::InvalidParams(format!("w must be -1 or 0, got {w}")));
    }
    if !(h > 0.0 && sigma > 0.0) {
        return Err(Error::InvalidParams("need h > 0, sigma > 0".into()));
    }
    cfg.validate()?;
    let s2 = sigma * sigma;
    let f = move |eps: f64| {
        let a = (eps + w) * h;
        (1.0 + eps * h) * (eps * eps + s2) - eps * eps * a.exp() - s2 * (-a).exp()
    };
    // the sign switches + -> - exactly once on (|w|, inf)
    let mut lo = if w == 0.0 { 1e-12 } else { w.abs() * (1.0 + 1e-12) };
    if !sign_of(f(lo))? {
        return Err(Error::NonConvergence("eps_opt: lower end not positive".into()));
    }
    let mut hi = lo * 2.0;
    let mut n = 0;
    while sign_of(f(hi))? {
        lo = hi;
        hi *= 2.0;
        n += 1;
        if n > 2100 || !hi.is_finite() {
            return Err(Error::NonConvergence("eps_opt: bracket expansion exhausted".into()));
        }
    }
    bisect_log(&f, lo, hi, cfg)
}

const INV_E: f64 = 1.0 / std::f64::consts::E;

/// The Lambert W₋₁ branch: the only root `u ∈ (−∞, −1]` of `u e^u = z`, for
/// `z ∈ [−1/e, 0)`.
///
/// Asymptotic initial guess (logarithmic near `0⁻`, square-root series near
/// the branch point `−1/e`) refined by Halley iterations.
pub fn lambert_w_m1(z: f64) -> Result<f64> {
    if !(-INV_E..0.0).contains(&z) {
        return Err(Error::Domain(format!("lambert_w_m1: z = {z} outside [-1/e, 0)")));
    }
    let t = 1.0 + std::f64::consts::E * z; // distance from the branch point
    if t <= 0.0 {
        return Ok(-1.0);
    }
    let mut u = if z > -0.2 {
        let l1 = (-z).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1
    } else {
        let p = -(2.0 * t).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    };
    for _ in 0..40 {
        let eu = u.exp();
        let f = u * eu - z;
        let df = (u + 1.0) * eu;
        let step = f / (df - (u + 2.0) * f / (2.0 * (u + 1.0)));
        u -= step;
        if u > -1.0 {
            u = -1.0;
        }
        if step.abs() <= 1e-16 * u.abs() {
            break;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn u_star_closed_form_value() {
        // (e^2 - 2) / (2 - e^{-2}), frozen from high-precision evaluation
        assert!(rel_err(u_star(1.0, 1.0), 2.890_093_886_843_51) < 1e-14);
    }

    #[test]
    fn u_star_small_h_limit() {
        // series: u_* -> eps^2 / (1 + 2 eps) as h -> 0+; at eps = 1 the limit
        // is 1/3 (frozen from the series oracle, value 0.33333334222... at
        // h = 1e-8)
        assert!((u_star(1e-8, 1.0) - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn u_star_monotone_in_eps() {
        assert!(u_star(1.0, 2.0) > u_star(1.0, 1.0));
        let mut prev = 0.0;
        for i in 1..200 {
            let eps = 10f64.powf(-4.0 + 8.0 * i as f64 / 200.0);
            let v = u_star(0.7, eps);
            if v.is_infinite() {
                // overflow sentinel: stays +inf for all larger eps
                break;
            }
            assert!(v > prev, "u_star not increasing at eps={eps}");
            prev = v;
        }
    }

    #[test]
    fn u_star_overflow_sentinel() {
        let v = u_star(1.0, 1e6);
        assert!(v.is_infinite() && v > 0.0);
    }

    #[test]
    fn sigma_h_fixed_point() {
        let cfg = RootConfig::default();
        let s = sigma_h(1.0, &cfg).unwrap();
        // frozen from an independent high-precision bisection
        assert!(rel_err(s, 0.658_049_325_222_515_7) < 1e-12);
        let e = s * s;
        assert!((u_star(1.0, e) - e).abs() < 1e-10 * e);
        // sign semantics around the root
        assert!(u_star(1.0, e * 1.001) > e * 1.001);
        assert!(u_star(1.0, e * 0.999) < e * 0.999);
        for h in [0.2, 1.0, 5.0] {
            let s = sigma_h(h, &cfg).unwrap();
            assert!(s.is_finite() && s > 0.0);
        }
        assert!(rel_err(sigma_h(0.2, &cfg).unwrap(), 1.419_724_089_645_662) < 1e-12);
        assert!(rel_err(sigma_h(5.0, &cfg).unwrap(), 0.082_080_059_491_765_92) < 1e-12);
    }

    #[test]
    fn eps_tilde_root_and_domain() {
        let cfg = RootConfig::default();
        let sh = sigma_h(1.0, &cfg).unwrap();

        let sigma = 2.0 * sh;
        let e = eps_tilde(1.0, sigma, &cfg).unwrap();
        assert!(e > 0.0 && e < sigma * sigma);
        assert!((u_star(1.0, e) - sigma * sigma).abs() < 1e-10 * sigma * sigma);
        assert!(rel_err(e, 0.813_606_154_452_390_3) < 1e-12);
        // sign semantics
        assert!(u_star(1.0, e * (1.0 + 1e-11)) > sigma * sigma);
        assert!(u_star(1.0, e * (1.0 - 1e-11)) < sigma * sigma);

        assert!(matches!(eps_tilde(1.0, 0.5 * sh, &cfg), Err(Error::Domain(_))));

        // boundary: as sigma -> sigma_h from above, eps_tilde -> sigma_h^2
        let e = eps_tilde(1.0, sh * (1.0 + 1e-6), &cfg).unwrap();
        assert!(rel_err(e, sh * sh) < 1e-3);
    }

    #[test]
    fn eps_opt_roots() {
        let cfg = RootConfig::default();
        // frozen from independent high-precision bisection
        let e0 = eps_opt_nonpos_w(1.0, 0.0, 1.0, &cfg).unwrap();
        assert!(rel_err(e0, 1.254_426_616_982_287_6) < 1e-12);
        let em1 = eps_opt_nonpos_w(1.0, -1.0, 1.0, &cfg).unwrap();
        assert!(em1 > 1.0);
        assert!(rel_err(em1, 2.366_655_449_013_650_6) < 1e-12);

        // sign structure of the (divided) target around the root
        let f = |eps: f64, w: f64| {
            let a: f64 = (eps + w) * 1.0;
            (1.0 + eps) * (eps * eps + 1.0) - eps * eps * a.exp() - (-a).exp()
        };
        assert!(f(1.0 + 1e-6, -1.0) > 0.0);
        assert!(f(em1 + 1.0, -1.0) < 0.0);
        assert!(f(em1 * (1.0 - 1e-11), -1.0) > 0.0);
        assert!(f(em1 * (1.0 + 1e-11), -1.0) < 0.0);

        assert!(eps_opt_nonpos_w(1.0, 0.5, 1.0, &cfg).is_err());
    }

    #[test]
    fn lambert_branch_values() {
        assert_eq!(lambert_w_m1(-INV_E).unwrap(), -1.0);
        let u = lambert_w_m1(-2.0 * (-2.0f64).exp()).unwrap();
        assert!(rel_err(u, -2.0) < 1e-14);
        // frozen from bisection of u e^u + 0.1 over [-20, -1]
        let u = lambert_w_m1(-0.1).unwrap();
        assert!(rel_err(u, -3.577_152_063_957_297) < 1e-13);
        assert!(lambert_w_m1(0.1).is_err());
        assert!(lambert_w_m1(-0.5).is_err());
    }

    #[test]
    fn lambert_round_trip() {
        let hi = INV_E.log10(); // log10(1/e): the z = -1/e branch point
        for i in 0..10_000 {
            let x = -300.0 + (300.0 + hi) * i as f64 / 9_999.0;
            let z = -10f64.powf(x);
            if z < -INV_E {
                continue;
            }
            let u = lambert_w_m1(z).unwrap();
            assert!(u <= -1.0);
            assert!((u * u.exp() - z).abs() <= 1e-13 * z.abs(), "z={z} u={u}");
        }
    }
}
