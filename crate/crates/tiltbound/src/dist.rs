//! Discrete distribution types and exact evaluation of the Winsorized-tilted
//! mean.
//!
//! Everything downstream (root-finders, bounds, the brute-force oracle) is
//! exercised on finite discrete laws, for which all expectations are exact
//! finite sums.

use crate::{Error, Result};

/// Absolute tolerance on the total mass at construction.
const MASS_SUM_TOL: f64 = 1e-12;

/// Atoms closer than this (relative to `max(1, |x|)`) are merged at
/// construction, which guards downstream root-finders from near-duplicate
/// support points.
const ATOM_MERGE_TOL: f64 = 1e-14;

/// A finite discrete probability distribution.
///
/// Atoms are sorted strictly increasing in position, every mass is positive,
/// and the masses sum to one. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDist {
    atoms: Vec<(f64, f64)>,
}

impl DiscreteDist {
    /// Builds a distribution from `(position, mass)` pairs.
    ///
    /// Pairs may arrive in any order; positions closer than the merge
    /// tolerance are combined. Masses must be positive and sum to one within
    /// `1e-12`; after the check the masses are renormalized exactly.
    pub fn new(atoms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut atoms: Vec<(f64, f64)> = atoms.into_iter().collect();
        if atoms.is_empty() {
            return Err(Error::InvalidDist("no atoms".into()));
        }
        for &(x, p) in &atoms {
            if !x.is_finite() || !p.is_finite() {
                return Err(Error::InvalidDist(format!("non-finite atom ({x}, {p})")));
            }
            if p <= 0.0 {
                return Err(Error::InvalidDist(format!("non-positive mass {p} at {x}")));
            }
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (x, p) in atoms {
            match merged.last_mut() {
                Some(last) if (x - last.0).abs() <= ATOM_MERGE_TOL * x.abs().max(1.0) => {
                    // mass-weighted position keeps the mean unchanged
                    last.0 = (last.0 * last.1 + x * p) / (last.1 + p);
                    last.1 += p;
                }
                _ => merged.push((x, p)),
            }
        }
        let total: f64 = merged.iter().map(|&(_, p)| p).sum();
        if (total - 1.0).abs() > MASS_SUM_TOL {
            return Err(Error::InvalidDist(format!("masses sum to {total}, expected 1")));
        }
        for a in &mut merged {
            a.1 /= total;
        }
        Ok(Self { atoms: merged })
    }

    /// The distribution concentrated at a single point.
    pub fn point_mass(x: f64) -> Self {
        Self { atoms: vec![(x, 1.0)] }
    }

    /// `(position, mass)` pairs, sorted increasing in position.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(x, p)| x * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.atoms.iter().map(|&(x, p)| (x - m) * (x - m) * p).sum()
    }

    /// Infimum of the support (the smallest atom).
    pub fn support_inf(&self) -> f64 {
        self.atoms[0].0
    }

    /// Supremum of the support (the largest atom).
    pub fn support_sup(&self) -> f64 {
        self.atoms[self.atoms.len() - 1].0
    }

    /// The distribution of `X + m`.
    pub fn shifted(&self, m: f64) -> Self {
        Self { atoms: self.atoms.iter().map(|&(x, p)| (x + m, p)).collect() }
    }

    /// The distribution of `c X` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        assert!(c > 0.0);
        Self { atoms: self.atoms.iter().map(|&(x, p)| (c * x, p)).collect() }
    }
}

/// The zero-mean distribution on `{-u, v}`: mass `v/(u+v)` at `-u` and
/// `u/(u+v)` at `v`. Its variance is `u·v` and these are the extremal
/// (worst-case) laws for the tilted-mean supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointDist {
    u: f64,
    v: f64,
}

impl TwoPointDist {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !(u > 0.0 && v > 0.0 && u.is_finite() && v.is_finite()) {
            return Err(Error::InvalidDist(format!("two-point law needs u, v > 0; got ({u}, {v})")));
        }
        Ok(Self { u, v })
    }

    /// Magnitude of the negative atom.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// The positive atom.
    pub fn v(&self) -> f64 {
        self.v
    }

    /// Mass at `-u`.
    pub fn mass_neg(&self) -> f64 {
        self.v / (self.u + self.v)
    }

    /// Mass at `v`.
    pub fn mass_pos(&self) -> f64 {
        self.u / (self.u + self.v)
    }

    /// Variance, `u·v` exactly.
    pub fn variance(&self) -> f64 {
        self.u * self.v
    }

    pub fn as_discrete(&self) -> DiscreteDist {
        DiscreteDist {
            atoms: vec![(-self.u, self.mass_neg()), (self.v, self.mass_pos())],
        }
    }
}

/// The parameter triple of every bound: tilt strength `h > 0`, Winsorization
/// level `w` (any real), and standard-deviation cap `sigma > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub h: f64,
    pub w: f64,
    pub sigma: f64,
}

impl Params {
    pub fn new(h: f64, w: f64, sigma: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParams(format!("h must be positive and finite, got {h}")));
        }
        if !w.is_finite() {
            return Err(Error::InvalidParams(format!("w must be finite, got {w}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "sigma must be positive and finite, got {sigma}"
            )));
        }
        Ok(Self { h, w, sigma })
    }
}

/// The Winsorized-tilted mean `Σ xᵢ e^{h(xᵢ∧w)} pᵢ / Σ e^{h(xᵢ∧w)} pᵢ`.
///
/// The largest exponent is factored out of numerator and denominator, so no
/// intermediate overflows for `h·|x|` up to about 700.
pub fn tilted_mean(dist: &DiscreteDist, h: f64, w: f64) -> f64 {
    assert!(h > 0.0 && h.is_finite(), "tilt strength must be positive");
    let top = dist
        .atoms()
        .iter()
        .map(|&(x, _)| h * x.min(w))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut num = 0.0;
    let mut den = 0.0;
    for &(x, p) in dist.atoms() {
        let e = (h * x.min(w) - top).exp();
        num += x * e * p;
        den += e * p;
    }
    num / den
}

/// The tilted mean of a two-point law.
///
/// When `-u < w ≤ v` (the extremal family condition) this uses the closed
/// form `ε σ² (e^{hw} − e^{−εh}) / (ε² e^{hw} + σ² e^{−εh})` with `ε = u`,
/// `σ² = uv`, evaluated with the dominant exponential factored out. Outside
/// that range it falls back to the generic evaluation.
pub fn two_point_mean(tp: &TwoPointDist, h: f64, w: f64) -> f64 {
    assert!(h > 0.0 && h.is_finite());
    if validate_extremal(tp, w) {
        let eps = tp.u;
        let s2 = tp.u * tp.v;
        let a = h * w;
        let b = -eps * h;
        let top = a.max(b);
        let ea = (a - top).exp();
        let eb = (b - top).exp();
        eps * s2 * (ea - eb) / (eps * eps * ea + s2 * eb)
    } else {
        tilted_mean(&tp.as_discrete(), h, w)
    }
}

/// Whether `tp` belongs to the extremal family at level `w`: `-u < w ≤ v`.
pub fn validate_extremal(tp: &TwoPointDist, w: f64) -> bool {
    -tp.u < w && w <= tp.v
}
