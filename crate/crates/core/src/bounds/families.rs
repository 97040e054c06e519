//! The three weighted-bound shapes, written for user 1. User 2 evaluates the
//! same formulas on the user-swapped spec.
//!
//! Each bound is piecewise linear in its weights; the breakpoints are where a
//! positive-part or max term switches branch, so intersecting the half-planes
//! at those breakpoints (plus the ends of the weight range) gives the same
//! region as intersecting over the whole continuum.

use num_traits::{One, Signed, Zero};

use super::{BoundFamily, FamilyKind, UserStats, Weight};
use crate::channel::User;
use crate::rational::{pos, Rational};
use crate::{Error, Result};

fn check_omega(omega: &Rational) -> Result<()> {
    if omega.is_negative() || omega > &Rational::one() {
        return Err(Error::Range(format!("omega = {omega} outside [0, 1]")));
    }
    Ok(())
}

fn plain_omega(w: &Weight) -> Result<&Rational> {
    check_omega(&w.omega)?;
    if w.mu.is_some() {
        return Err(Error::Range("this bound family takes no mu weight".into()));
    }
    Ok(&w.omega)
}

/// Sorted, deduplicated `{0, 1} ∪ {num/den : den > 0, 0 < num/den < 1}`.
pub(crate) fn ratio_breakpoints<'a>(
    pairs: impl Iterator<Item = (&'a Rational, &'a Rational)>,
) -> Vec<Rational> {
    let mut out = vec![Rational::zero(), Rational::one()];
    for (num, den) in pairs {
        if !den.is_positive() {
            continue;
        }
        let r = num / den;
        if r.is_positive() && r < Rational::one() {
            out.push(r);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `Σ_l [ω·x(l) − α(l)]^+`
fn hinge_sum(omega: &Rational, xs: &[Rational], alpha: &[Rational]) -> Rational {
    xs.iter().zip(alpha).map(|(x, a)| pos(omega * x - a)).sum()
}

/// Z-channel bound: `E N11 + ω E(N21−N11)^+ + Σ [ω β(l) − α(l)]^+`.
pub fn eval_a(s: &UserStats, omega: &Rational) -> Rational {
    &s.e_own + omega * &s.e_excess + hinge_sum(omega, &s.coeffs.beta, &s.coeffs.alpha)
}

/// `(1−ω) E N11 + ω E N21 + Σ [ω γ(l) − α(l)]^+ + ω Σ max(P(N11−N21 ≥ l), P(N12 ≥ l))`.
pub fn eval_b(s: &UserStats, omega: &Rational) -> Rational {
    let cross_term: Rational = s
        .clean_tail
        .iter()
        .zip(&s.cross_tail)
        .map(|(a, b)| a.max(b).clone())
        .sum();
    (Rational::one() - omega) * &s.e_own
        + omega * &s.e_interferer
        + hinge_sum(omega, &s.coeffs.gamma, &s.coeffs.alpha)
        + omega * cross_term
}

/// `E N11 + ω E(N21−N11)^+ + Σ [ω γ(l) − α(l)]^+ + Σ max(μ P(N11 ≥ l), ω P(N12 ≥ l))`.
pub fn eval_c(s: &UserStats, omega: &Rational, mu: &Rational) -> Rational {
    let max_term: Rational = s
        .own_tail
        .iter()
        .zip(&s.cross_tail)
        .map(|(own, cross)| (mu * own).max(omega * cross))
        .sum();
    &s.e_own + omega * &s.e_excess + hinge_sum(omega, &s.coeffs.gamma, &s.coeffs.alpha) + max_term
}

#[derive(Debug, Clone, Copy)]
pub struct FamilyA {
    pub user: User,
}

#[derive(Debug, Clone, Copy)]
pub struct FamilyB {
    pub user: User,
}

#[derive(Debug, Clone, Copy)]
pub struct FamilyC {
    pub user: User,
}

impl BoundFamily for FamilyA {
    fn user(&self) -> User {
        self.user
    }

    fn kind(&self) -> FamilyKind {
        FamilyKind::A
    }

    fn evaluate_stats(&self, stats: &UserStats, weight: &Weight) -> Result<Rational> {
        Ok(eval_a(stats, plain_omega(weight)?))
    }

    fn critical_weights_stats(&self, stats: &UserStats) -> Vec<Weight> {
        ratio_breakpoints(stats.coeffs.alpha.iter().zip(&stats.coeffs.beta))
            .into_iter()
            .map(Weight::omega)
            .collect()
    }
}

impl BoundFamily for FamilyB {
    fn user(&self) -> User {
        self.user
    }

    fn kind(&self) -> FamilyKind {
        FamilyKind::B
    }

    fn evaluate_stats(&self, stats: &UserStats, weight: &Weight) -> Result<Rational> {
        Ok(eval_b(stats, plain_omega(weight)?))
    }

    fn critical_weights_stats(&self, stats: &UserStats) -> Vec<Weight> {
        ratio_breakpoints(stats.coeffs.alpha.iter().zip(&stats.coeffs.gamma))
            .into_iter()
            .map(Weight::omega)
            .collect()
    }
}

impl BoundFamily for FamilyC {
    fn user(&self) -> User {
        self.user
    }

    fn kind(&self) -> FamilyKind {
        FamilyKind::C
    }

    fn evaluate_stats(&self, stats: &UserStats, weight: &Weight) -> Result<Rational> {
        check_omega(&weight.omega)?;
        let mu = weight
            .mu
            .as_ref()
            .ok_or_else(|| Error::Range("family c needs a mu weight".into()))?;
        if mu.is_negative() || mu > &weight.omega {
            return Err(Error::Range(format!("mu = {mu} outside [0, omega = {}]", weight.omega)));
        }
        Ok(eval_c(stats, &weight.omega, mu))
    }

    /// The bound is linear on each cell cut out of `{0 <= μ <= ω <= 1}` by the
    /// vertical lines `ω = α/γ` and the rays `μ = ω·P(N12 >= l)/P(N11 >= l)`.
    /// All cell vertices are (ω-breakpoint, ray) crossings.
    fn critical_weights_stats(&self, stats: &UserStats) -> Vec<Weight> {
        let omegas = ratio_breakpoints(stats.coeffs.alpha.iter().zip(&stats.coeffs.gamma));
        let slopes = ratio_breakpoints(stats.cross_tail.iter().zip(&stats.own_tail));
        let mut out = Vec::new();
        for omega in omegas {
            let mut mus: Vec<Rational> = slopes.iter().map(|k| k * &omega).collect();
            mus.dedup();
            out.extend(mus.into_iter().map(|mu| Weight::with_mu(omega.clone(), mu)));
        }
        out
    }
}
