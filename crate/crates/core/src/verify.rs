//! Named verification suites, selectable at runtime.

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{ChannelSpec, FadingPmf};
use crate::corpus;
use crate::deterministic;
use crate::oracles::{coupling_check, mc_estimate_stats, SimConfig};
use crate::rational;
use crate::regime::{self, Regime};

/// Absolute tolerance for Monte Carlo estimates against exact values.
pub const MC_TOLERANCE: f64 = 5e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub samples: u64,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { samples: 1_000_000, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

pub trait VerificationSuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, options: &SuiteOptions) -> SuiteReport;
}

pub struct DeterministicSuite;
pub struct CouplingSuite;
pub struct MonteCarloSuite;
pub struct InclusionSuite;

impl VerificationSuite for DeterministicSuite {
    fn name(&self) -> &'static str {
        "deterministic"
    }

    fn run(&self, _options: &SuiteOptions) -> SuiteReport {
        let reports = deterministic::sweep(3);
        let passed = reports.iter().filter(|r| r.passed()).count();
        let mut checks = vec![Check::new(
            "recovery",
            passed == reports.len(),
            format!("{passed}/{} recoveries pass", reports.len()),
        )];
        for r in reports.iter().filter(|r| !r.passed()) {
            let c = r.channel;
            let bad: Vec<String> = r
                .checks
                .iter()
                .filter(|k| !k.passed())
                .map(|k| {
                    format!(
                        "{} = {} vs ({}) = {}",
                        k.bound,
                        rational::format(&k.bound_value),
                        k.constraint,
                        rational::format(&k.det_value)
                    )
                })
                .collect();
            checks.push(Check::new(
                format!("({},{},{},{})", c.n11, c.n12, c.n21, c.n22),
                false,
                format!("polytope equal: {}; {}", r.polytope_equal, bad.join("; ")),
            ));
        }
        SuiteReport { suite: self.name().into(), checks }
    }
}

/// All `15^4` channels whose links are pmfs on `{0, 1, 2}` with quarter masses.
pub fn quarter_specs() -> Vec<ChannelSpec> {
    let pmfs: Vec<FadingPmf> = corpus::quarter_pmfs();
    let mut out = Vec::with_capacity(pmfs.len().pow(4));
    for a in &pmfs {
        for b in &pmfs {
            for c in &pmfs {
                for d in &pmfs {
                    out.push(ChannelSpec::new(a.clone(), b.clone(), c.clone(), d.clone()).expect("common q"));
                }
            }
        }
    }
    out
}

impl VerificationSuite for CouplingSuite {
    fn name(&self) -> &'static str {
        "coupling"
    }

    fn run(&self, _options: &SuiteOptions) -> SuiteReport {
        let specs = quarter_specs();
        let failed: Vec<usize> = specs
            .par_iter()
            .enumerate()
            .filter(|(_, s)| !coupling_check(s).passed())
            .map(|(i, _)| i)
            .collect();
        let mut checks = vec![Check::new(
            "small-pmf identities",
            failed.is_empty(),
            format!("{}/{} channels pass", specs.len() - failed.len(), specs.len()),
        )];
        for &i in failed.iter().take(10) {
            checks.push(Check::new(format!("channel #{i}"), false, format!("{:?}", coupling_check(&specs[i]))));
        }
        SuiteReport { suite: self.name().into(), checks }
    }
}

/// The four named channels used for Monte Carlo comparison.
pub fn mc_corpus() -> Vec<(&'static str, ChannelSpec)> {
    vec![
        ("c_det", corpus::c_det()),
        ("c_strong1", corpus::c_strong1()),
        ("c_weak1", corpus::c_weak1()),
        ("c_mod1", corpus::c_mod1()),
    ]
}

impl VerificationSuite for MonteCarloSuite {
    fn name(&self) -> &'static str {
        "montecarlo"
    }

    fn run(&self, options: &SuiteOptions) -> SuiteReport {
        let mut checks = Vec::new();
        for (label, spec) in mc_corpus() {
            let cfg = SimConfig::new(spec, options.samples.max(1), options.seed).expect("positive samples");
            for e in mc_estimate_stats(&cfg).estimates {
                let err = e.abs_error();
                checks.push(Check::new(
                    format!("{label} {}", e.name),
                    err <= MC_TOLERANCE,
                    format!(
                        "empirical {:.6} exact {} (|diff| {err:.2e}, se {:.2e})",
                        e.mean,
                        rational::format(&e.exact),
                        e.std_err
                    ),
                ));
            }
        }
        SuiteReport { suite: self.name().into(), checks }
    }
}

impl VerificationSuite for InclusionSuite {
    fn name(&self) -> &'static str {
        "inclusions"
    }

    fn run(&self, options: &SuiteOptions) -> SuiteReport {
        let mut rng = corpus::seeded_rng(options.seed);
        let specs: Vec<ChannelSpec> = (0..100).map(|_| corpus::random_in_regime(&mut rng, Regime::Weak)).collect();
        let checks = specs
            .par_iter()
            .enumerate()
            .map(|(i, spec)| match regime::weak_inclusions(spec) {
                Ok(r) => Check::new(
                    format!("weak #{i}"),
                    r.passed(),
                    format!(
                        "b⊆a {:?}, b⊆c {:?}, TIN on b-boundary {:?}, sum rate {} vs {}",
                        r.b_in_a,
                        r.b_in_c,
                        r.tin_on_b_boundary,
                        rational::format(&r.sum_rate),
                        rational::format(&r.tin_sum)
                    ),
                ),
                Err(e) => Check::new(format!("weak #{i}"), false, e.to_string()),
            })
            .collect();
        SuiteReport { suite: self.name().into(), checks }
    }
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn VerificationSuite>>,
}

impl SuiteRegistry {
    pub fn standard() -> Self {
        Self {
            suites: vec![
                Box::new(DeterministicSuite),
                Box::new(CouplingSuite),
                Box::new(MonteCarloSuite),
                Box::new(InclusionSuite),
            ],
        }
    }

    pub fn register(&mut self, suite: Box<dyn VerificationSuite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn get(&self, name: &str) -> Option<&dyn VerificationSuite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        Self::standard()
    }
}
