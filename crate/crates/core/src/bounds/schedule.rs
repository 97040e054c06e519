use num_traits::One;

use super::{BoundFamily, FamilyKind, UserStats, Weight};
use crate::rational::Rational;
use crate::{Error, Result};

pub const DEFAULT_GRID_STEPS: u32 = 256;

/// Chooses the weights at which a family's bounds are instantiated.
pub trait WeightSchedule: Send + Sync {
    fn name(&self) -> &'static str;

    fn weights(&self, family: &dyn BoundFamily, stats: &UserStats) -> Vec<Weight>;
}

/// Exact mode: the family's own breakpoint set.
#[derive(Debug, Clone, Copy, Default)]
pub struct CriticalWeights;

impl WeightSchedule for CriticalWeights {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn weights(&self, family: &dyn BoundFamily, stats: &UserStats) -> Vec<Weight> {
        family.critical_weights_stats(stats)
    }
}

/// Dense mode: `ω = k/steps`, and for c-families `μ = j/steps` with `j <= k`.
#[derive(Debug, Clone, Copy)]
pub struct UniformGrid {
    pub steps: u32,
}

impl WeightSchedule for UniformGrid {
    fn name(&self) -> &'static str {
        "grid"
    }

    fn weights(&self, family: &dyn BoundFamily, _stats: &UserStats) -> Vec<Weight> {
        let n = self.steps.max(1) as i64;
        let at = |k: i64| Rational::new(k.into(), n.into());
        let mut out = Vec::new();
        for k in 0..=n {
            match family.kind() {
                FamilyKind::C => out.extend((0..=k).map(|j| Weight::with_mu(at(k), at(j)))),
                _ => out.push(Weight::omega(at(k))),
            }
        }
        debug_assert!(out.last().is_some_and(|w| w.omega.is_one()));
        out
    }
}

pub fn schedule_by_name(name: &str, grid_steps: u32) -> Result<Box<dyn WeightSchedule>> {
    match name {
        "exact" => Ok(Box::new(CriticalWeights)),
        "grid" if grid_steps >= 1 => Ok(Box::new(UniformGrid { steps: grid_steps })),
        "grid" => Err(Error::Range("grid mode needs at least one step".into())),
        other => Err(Error::Parse(format!("unknown weight mode '{other}' (expected exact or grid)"))),
    }
}
