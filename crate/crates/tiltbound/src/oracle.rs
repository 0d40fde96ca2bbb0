//! Independent brute-force verification of the closed-form bounds.
//!
//! Nothing here trusts the root-finders: suprema are re-derived by grid
//! maximization over two-point laws (evaluated through the generic
//! tilted-mean path), and the theorems' claims — domination of every random
//! distribution, the zero linear supremum at `k = S`, the monotonicity
//! properties, and the lower-envelope corollary — are checked case by case.
//! Violations are collected, not thrown, so a failing run reports every bad
//! case at once.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{self, BoundResult};
use crate::dist::{tilted_mean, validate_extremal, DiscreteDist, Params, TwoPointDist};
use crate::{Error, Result};

/// Arithmetic slack allowed on "never exceeds the supremum" checks.
const DOMINATION_SLACK: f64 = 1e-9;

/// Grid density and random-sampling controls for the verification suites.
#[derive(Debug, Clone)]
pub struct GridSpec {
    /// Points in the log-spaced ε-grid (range capped to `[1e-6, 1e3]`).
    pub eps_points: usize,
    /// Random discrete distributions per check.
    pub random_dists: usize,
    /// Support sizes drawn for random distributions.
    pub support_sizes: Vec<usize>,
    /// RNG seed; identical seeds produce identical reports.
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { eps_points: 2000, random_dists: 500, support_sizes: vec![2, 3, 4], seed: 0 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.eps_points < 10 {
            return Err(Error::InvalidParams("eps_points must be >= 10".into()));
        }
        if self.random_dists == 0 || self.support_sizes.is_empty() {
            return Err(Error::InvalidParams("need random_dists >= 1 and a support size".into()));
        }
        if self.support_sizes.iter().any(|&k| k < 2) {
            return Err(Error::InvalidParams("support sizes must be >= 2".into()));
        }
        Ok(())
    }
}

/// Outcome of a verification suite: every violation, plus the largest
/// ratio-to-supremum observed.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub cases: usize,
    pub violations: Vec<String>,
    pub max_ratio: f64,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

const EPS_CAP_LO: f64 = 1e-6;
const EPS_CAP_HI: f64 = 1e3;

/// Log-spaced grid over the feasible ε-range of the extremal family at `p`,
/// intersected with the cap `[1e-6, 1e3]`. The upper feasibility boundary
/// `σ²/w` (for `w > 0`) is included exactly: the saturated-variance branch
/// attains its maximum there.
fn eps_grid(p: &Params, g: &GridSpec) -> Vec<f64> {
    let s2 = p.sigma * p.sigma;
    let mut lo = EPS_CAP_LO;
    if p.w < 0.0 {
        lo = lo.max(-p.w * (1.0 + 1e-9));
    }
    let mut hi = EPS_CAP_HI;
    let mut hi_exact = None;
    if p.w > 0.0 && s2 / p.w < hi {
        hi = s2 / p.w;
        hi_exact = Some(hi);
    }
    if !(lo.is_finite() && lo < hi) {
        return Vec::new();
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    let n = g.eps_points;
    let mut grid: Vec<f64> = (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect();
    grid[0] = lo;
    grid[n - 1] = hi_exact.unwrap_or(hi);
    grid
}

/// Grid maximization of the tilted mean over two-point laws with variance
/// `σ²`, evaluated through the generic discrete path (independent of the
/// closed-form machinery).
pub fn brute_force_supremum(p: &Params, g: &GridSpec) -> Result<(f64, TwoPointDist)> {
    g.validate()?;
    let s2 = p.sigma * p.sigma;
    let mut best: Option<(f64, TwoPointDist)> = None;
    for eps in eps_grid(p, g) {
        let tp = TwoPointDist::new(eps, s2 / eps)?;
        if !validate_extremal(&tp, p.w) {
            continue;
        }
        let m = tilted_mean(&tp.as_discrete(), p.h, p.w);
        if best.as_ref().is_none_or(|(b, _)| m > *b) {
            best = Some((m, tp));
        }
    }
    best.ok_or_else(|| Error::Domain("empty feasible eps-grid".into()))
}

/// Random zero-mean discrete distributions with variance in `(0, σ²]`.
///
/// Support points are drawn uniformly on `[−5σ, 5σ]`, masses from a flat
/// simplex, then the atoms are shifted to zero mean and rescaled to a target
/// variance drawn from `(0, σ²]`. Degenerate draws are rejected.
pub fn random_zero_mean_dists(sigma: f64, g: &GridSpec, rng: &mut ChaCha8Rng) -> Vec<DiscreteDist> {
    let mut out = Vec::with_capacity(g.random_dists);
    while out.len() < g.random_dists {
        let k = g.support_sizes[rng.gen_range(0..g.support_sizes.len())];
        let xs: Vec<f64> = (0..k).map(|_| rng.gen_range(-5.0 * sigma..5.0 * sigma)).collect();
        // flat Dirichlet via normalized Exp(1) draws
        let es: Vec<f64> = (0..k).map(|_| -rng.gen_range(f64::MIN_POSITIVE..1.0f64).ln()).collect();
        let total: f64 = es.iter().sum();
        let dist = match DiscreteDist::new(xs.iter().zip(&es).map(|(&x, &e)| (x, e / total))) {
            Ok(d) if d.atoms().len() >= 2 => d,
            _ => continue,
        };
        let var = dist.variance();
        if var < 1e-12 * sigma * sigma {
            continue;
        }
        let target = sigma * sigma * rng.gen_range(1e-3..=1.0f64);
        let centered = dist.shifted(-dist.mean());
        out.push(centered.scaled((target / var).sqrt()));
    }
    out
}

/// Checks that no random member of the feasible class exceeds the
/// closed-form supremum. `max_ratio` reports how close the samples got.
pub fn random_dist_check(p: &Params, g: &GridSpec) -> Result<Report> {
    g.validate()?;
    let sup = bounds::supremum(p)?.supremum;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut report = Report::default();
    for dist in random_zero_mean_dists(p.sigma, g, &mut rng) {
        report.cases += 1;
        let m = tilted_mean(&dist, p.h, p.w);
        report.max_ratio = report.max_ratio.max(m / sup);
        if m > sup + DOMINATION_SLACK {
            report.violations.push(format!(
                "tilted mean {m} exceeds supremum {sup} (h={}, w={}, sigma={}, atoms={:?})",
                p.h,
                p.w,
                p.sigma,
                dist.atoms()
            ));
        }
    }
    Ok(report)
}

/// `E[(X − k) e^{h(X∧w)}]` for a discrete law.
fn linear_functional(dist: &DiscreteDist, h: f64, w: f64, k: f64) -> f64 {
    dist.atoms().iter().map(|&(x, p)| (x - k) * (h * x.min(w)).exp() * p).sum()
}

/// Result of the zero-linear-supremum consistency check at `k = S`.
#[derive(Debug, Clone, Copy)]
pub struct LinearSupReport {
    /// Max of `E[(X − k) e^{h(X∧w)}]` over the ε-grid and random draws.
    pub max_value: f64,
    /// The functional evaluated at the exact maximizer (should vanish).
    pub at_maximizer: f64,
}

/// With `k` set to the closed-form supremum, the linear functional
/// `E[(X − k) e^{h(X∧w)}]` is ≤ 0 on the whole feasible class and vanishes
/// exactly at the maximizer.
pub fn linear_sup_consistency(p: &Params, g: &GridSpec) -> Result<LinearSupReport> {
    g.validate()?;
    let r = bounds::supremum(p)?;
    let k = r.supremum;
    let s2 = p.sigma * p.sigma;
    let mut max_value = f64::NEG_INFINITY;
    for eps in eps_grid(p, g) {
        let tp = TwoPointDist::new(eps, s2 / eps)?;
        if !validate_extremal(&tp, p.w) {
            continue;
        }
        max_value = max_value.max(linear_functional(&tp.as_discrete(), p.h, p.w, k));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    for dist in random_zero_mean_dists(p.sigma, g, &mut rng) {
        max_value = max_value.max(linear_functional(&dist, p.h, p.w, k));
    }
    let at_maximizer = linear_functional(&r.maximizer.as_discrete(), p.h, p.w, k);
    Ok(LinearSupReport { max_value, at_maximizer })
}

/// Monotonicity of the tilted mean in `h` and `w` on random discrete laws:
/// nondecreasing everywhere, strictly increasing in `h` when `w` is above the
/// support infimum, strictly increasing in `w` inside the support range, and
/// exactly constant in `w` above the support supremum.
pub fn monotonicity_suite(sigma: f64, g: &GridSpec) -> Result<Report> {
    g.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut report = Report::default();
    let h_grid = [0.25, 0.5, 1.0, 2.0, 4.0];
    for dist in random_zero_mean_dists(sigma, g, &mut rng) {
        report.cases += 1;
        let i_x = dist.support_inf();
        let s_x = dist.support_sup();

        // along h at fixed w: nondecreasing pairwise (exact ties are allowed
        // — near the h→∞ limit increments fall below float resolution) and
        // strictly increasing end to end when w > i_X
        for w in [i_x - 1.0, 0.5 * (i_x + s_x), s_x + 1.0] {
            let vals: Vec<f64> = h_grid.iter().map(|&h| tilted_mean(&dist, h, w)).collect();
            for pair in vals.windows(2) {
                if pair[1] < pair[0] {
                    report
                        .violations
                        .push(format!("not nondecreasing in h at w={w}: {} -> {}", pair[0], pair[1]));
                }
            }
            // strict when w > i_X (support has >= 2 atoms by construction)
            if w > i_x && vals[vals.len() - 1] <= vals[0] {
                report.violations.push(format!("not strictly increasing in h at w={w}"));
            }
        }

        // along w at fixed h, strictly inside [i_X, s_X]; same tie policy
        let h = 1.0;
        let vals: Vec<f64> = (0..=10)
            .map(|j| tilted_mean(&dist, h, i_x + (s_x - i_x) * j as f64 / 10.0))
            .collect();
        for pair in vals.windows(2) {
            if pair[1] < pair[0] {
                report
                    .violations
                    .push(format!("not nondecreasing in w: {} -> {}", pair[0], pair[1]));
            }
        }
        if vals[10] <= vals[0] {
            report.violations.push("not strictly increasing in w across the support".into());
        }

        // constant in w above the support supremum (exactly: X ∧ w = X)
        let m1 = tilted_mean(&dist, h, s_x);
        let m2 = tilted_mean(&dist, h, s_x + 5.0);
        if m1 != m2 {
            report.violations.push(format!("not constant above s_X: {m1} vs {m2}"));
        }
    }
    Ok(report)
}

/// The lower-envelope corollary: replacing the outer factor `X` by any
/// `Y ≤ X` (here `X∧w` and `X·1{X≤w}`) keeps the ratio below the supremum.
pub fn corollary_y_check(p: &Params, g: &GridSpec) -> Result<Report> {
    g.validate()?;
    let r = bounds::supremum(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut report = Report::default();
    for dist in random_zero_mean_dists(p.sigma, g, &mut rng) {
        report.cases += 1;
        let mut num_wins = 0.0;
        let mut num_trunc = 0.0;
        let mut den = 0.0;
        for &(x, mass) in dist.atoms() {
            let e = (p.h * x.min(p.w)).exp() * mass;
            let trunc = if x <= p.w { x } else { 0.0 };
            num_wins += x.min(p.w) * e;
            num_trunc += trunc * e;
            den += e;
        }
        for (label, num) in [("X∧w", num_wins), ("X·1{X≤w}", num_trunc)] {
            let val = num / den;
            report.max_ratio = report.max_ratio.max(val / r.supremum);
            if val > r.supremum + DOMINATION_SLACK {
                report.violations.push(format!("{label}: {val} exceeds supremum {}", r.supremum));
            }
            if val >= r.k_bound {
                report.violations.push(format!("{label}: {val} not below K bound {}", r.k_bound));
            }
        }
    }
    Ok(report)
}

/// Convenience bundle: brute-force agreement plus all property suites on one
/// parameter triple. Used by the CLI `verify` command.
pub struct CellVerification {
    pub params: Params,
    pub closed_form: BoundResult,
    pub brute_force: f64,
    pub brute_force_rel_gap: f64,
    pub domination: Report,
    pub linear_sup: LinearSupReport,
    pub monotonicity: Report,
    pub corollary: Report,
}

impl CellVerification {
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.brute_force_rel_gap > 1e-3 {
            v.push(format!("brute-force gap {:.3e} exceeds 1e-3", self.brute_force_rel_gap));
        }
        if self.brute_force > self.closed_form.supremum + DOMINATION_SLACK {
            v.push("brute-force max exceeds closed-form supremum".into());
        }
        if self.linear_sup.max_value > 1e-8 {
            v.push(format!("linear-sup max {:.3e} exceeds 1e-8", self.linear_sup.max_value));
        }
        if self.linear_sup.at_maximizer.abs() > 1e-6 {
            v.push(format!("linear functional at maximizer {:.3e} not ~0", self.linear_sup.at_maximizer));
        }
        v.extend(self.domination.violations.iter().cloned());
        v.extend(self.monotonicity.violations.iter().cloned());
        v.extend(self.corollary.violations.iter().cloned());
        v
    }
}

/// Runs every oracle suite on one `(h, w, sigma)` cell.
pub fn verify_cell(p: &Params, g: &GridSpec) -> Result<CellVerification> {
    let closed_form = bounds::supremum(p)?;
    let (bf, _) = brute_force_supremum(p, g)?;
    let gap = (closed_form.supremum - bf).abs() / closed_form.supremum.abs().max(f64::MIN_POSITIVE);
    Ok(CellVerification {
        params: *p,
        brute_force: bf,
        brute_force_rel_gap: gap,
        domination: random_dist_check(p, g)?,
        linear_sup: linear_sup_consistency(p, g)?,
        monotonicity: monotonicity_suite(p.sigma, g)?,
        corollary: corollary_y_check(p, g)?,
        closed_form,
    })
}
