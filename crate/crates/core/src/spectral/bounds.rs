//! Closed-form bounds on the spectral radius and the runner-up dominance
//! checks for the pendant books `S_{(m+t+3)/2,2}^t`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::spectral::quotient::rho_exact_family;

/// `(k − 1 + √(4m − k² + 1)) / 2`, the fan-free bound attained by
/// `K_k ∨ (m/k − (k−1)/2) K_1`.
pub fn fan_free_bound(k: usize, m: usize) -> f64 {
    let (k, m) = (k as f64, m as f64);
    (k - 1.0 + (4.0 * m - k * k + 1.0).sqrt()) / 2.0
}

/// `(1 + √(4m − 7)) / 2`.
pub fn runner_up_lower_bound(m: usize) -> f64 {
    (1.0 + (4.0 * m as f64 - 7.0).sqrt()) / 2.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dominance {
    pub t: usize,
    pub rho_t: f64,
    /// `ρ(S^2) − ρ(S^t)`.
    pub margin: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma22Report {
    pub m: usize,
    /// Even `m` makes `(m+5)/2` non-integral: nothing to check.
    pub vacuous: bool,
    pub rho_runner_up: f64,
    pub lower_bound: f64,
    /// `ρ(S^2) − (1 + √(4m−7))/2`.
    pub bound_margin: f64,
    pub bound_pass: bool,
    pub dominance: Vec<Dominance>,
    pub margin: f64,
}

impl Lemma22Report {
    pub fn pass(&self) -> bool {
        self.vacuous || (self.bound_pass && self.dominance.iter().all(|d| d.pass))
    }

    /// Smallest margin among all checks performed.
    pub fn min_margin(&self) -> f64 {
        self.dominance
            .iter()
            .map(|d| d.margin)
            .fold(self.bound_margin, f64::min)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Lemma22Options {
    pub margin: f64,
    /// Allow `m < 23` and even `m` (the stated threshold is `m ≥ 22`,
    /// the use site is odd `m ≥ 23`).
    pub probe: bool,
}

impl Default for Lemma22Options {
    fn default() -> Self {
        Lemma22Options {
            margin: crate::spectral::perron::DEFAULT_MARGIN,
            probe: false,
        }
    }
}

/// Checks `ρ(S^2_{(m+5)/2,2}) > (1+√(4m−7))/2` and
/// `ρ(S^2_{(m+5)/2,2}) > ρ(S^t_{(m+t+3)/2,2})` for every listed `t`,
/// each by more than `opts.margin`. Failing checks are flagged in the
/// report, not returned as errors.
pub fn check_lemma22(m: usize, ts: &[usize], opts: Lemma22Options) -> Result<Lemma22Report> {
    if !opts.probe {
        if m.is_multiple_of(2) {
            return Err(Error::Parity(format!("m must be odd, got {m}")));
        }
        if m < 23 {
            return Err(Error::InvalidArgument(format!(
                "m must be at least 23, got {m} (use probe mode below the threshold)"
            )));
        }
    }
    for &t in ts {
        if t % 2 != 0 || t < 4 {
            return Err(Error::Parity(format!("t must be even and at least 4, got {t}")));
        }
        if m < t + 1 {
            return Err(Error::InvalidArgument(format!("need m >= t + 1, got m={m}, t={t}")));
        }
    }
    let lower_bound = runner_up_lower_bound(m);
    if m.is_multiple_of(2) {
        return Ok(Lemma22Report {
            m,
            vacuous: true,
            rho_runner_up: f64::NAN,
            lower_bound,
            bound_margin: f64::NAN,
            bound_pass: true,
            dominance: Vec::new(),
            margin: opts.margin,
        });
    }
    let rho2 = rho_exact_family(&FamilySpec::pendant_book_for_size(m, 2)?)?;
    let bound_margin = rho2 - lower_bound;
    let dominance = ts
        .iter()
        .map(|&t| {
            let rho_t = rho_exact_family(&FamilySpec::pendant_book_for_size(m, t)?)?;
            let margin = rho2 - rho_t;
            Ok(Dominance {
                t,
                rho_t,
                margin,
                pass: margin > opts.margin,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Lemma22Report {
        m,
        vacuous: false,
        rho_runner_up: rho2,
        lower_bound,
        bound_margin,
        bound_pass: bound_margin > opts.margin,
        dominance,
        margin: opts.margin,
    })
}
