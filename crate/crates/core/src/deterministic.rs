//! Constant-fading channels: the closed-form deterministic region and a
//! check that the general bounds collapse onto it.

use rayon::prelude::*;

use crate::bounds::{self, BoundRegistry, Weight};
use crate::channel::ChannelSpec;
use crate::geometry::{self, HalfPlane, RegionPolytope};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DetChannel {
    pub n11: usize,
    pub n12: usize,
    pub n21: usize,
    pub n22: usize,
}

impl DetChannel {
    pub fn new(n11: usize, n12: usize, n21: usize, n22: usize) -> Self {
        Self { n11, n12, n21, n22 }
    }

    pub fn q(&self) -> usize {
        self.n11.max(self.n12).max(self.n21).max(self.n22)
    }

    /// Point-mass channel embedded with `q` equal to the largest level.
    pub fn to_spec(&self) -> ChannelSpec {
        ChannelSpec::constant(self.q(), self.n11, self.n12, self.n21, self.n22).expect("levels within q")
    }
}

fn sub(a: usize, b: usize) -> usize {
    a.saturating_sub(b)
}

/// The six constraint shapes; `a` stands for both single-rate caps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetConstraint {
    pub label: &'static str,
    pub plane: HalfPlane,
}

pub fn det_constraints(ch: &DetChannel) -> Vec<DetConstraint> {
    let DetChannel { n11, n12, n21, n22 } = *ch;
    let rows: [(&'static str, i64, i64, usize); 7] = [
        ("a", 1, 0, n11),
        ("a", 0, 1, n22),
        ("b", 1, 1, n11.max(n21) + sub(n22, n21)),
        ("c", 1, 1, n22.max(n12) + sub(n11, n12)),
        ("d", 1, 1, sub(n11, n21).max(n12) + sub(n22, n12).max(n21)),
        ("e", 2, 1, n11.max(n12) + sub(n11, n21) + sub(n22, n12).max(n21)),
        ("f", 1, 2, n22.max(n21) + sub(n22, n12) + sub(n11, n21).max(n12)),
    ];
    rows.into_iter()
        .map(|(label, a, b, c)| DetConstraint {
            label,
            plane: HalfPlane::new(int(a), int(b), int(c as i64)).expect("valid coefficients"),
        })
        .collect()
}

pub fn det_region(ch: &DetChannel) -> RegionPolytope {
    let planes: Vec<HalfPlane> = det_constraints(ch).into_iter().map(|c| c.plane).collect();
    geometry::intersect(&planes).expect("both rates are capped")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryCheck {
    pub bound: String,
    pub constraint: &'static str,
    pub bound_value: Rational,
    pub det_value: Rational,
}

impl RecoveryCheck {
    pub fn passed(&self) -> bool {
        self.bound_value == self.det_value
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryReport {
    pub channel: DetChannel,
    pub checks: Vec<RecoveryCheck>,
    pub polytope_equal: bool,
}

impl RecoveryReport {
    pub fn passed(&self) -> bool {
        self.polytope_equal && self.checks.iter().all(RecoveryCheck::passed)
    }
}

/// Bound/constraint pairs: `(family, ω, μ, constraint index in det_constraints)`.
const TABLE: [(&str, i64, Option<i64>, usize); 8] = [
    ("1a", 0, None, 0),
    ("2a", 0, None, 1),
    ("1a", 1, None, 2),
    ("2a", 1, None, 3),
    ("1b", 1, None, 4),
    ("2b", 1, None, 4),
    ("1c", 1, Some(1), 5),
    ("2c", 1, Some(1), 6),
];

pub fn verify_recovery(ch: &DetChannel) -> RecoveryReport {
    let spec = ch.to_spec();
    let det = det_constraints(ch);
    let registry = BoundRegistry::standard();
    let checks = TABLE
        .iter()
        .map(|&(name, omega, mu, row)| {
            let family = registry.get(name).expect("standard family");
            let weight = match mu {
                Some(mu) => Weight::with_mu(int(omega), int(mu)),
                None => Weight::omega(int(omega)),
            };
            let bound = family.bound(&spec, weight).expect("weights in range");
            RecoveryCheck {
                bound: format!("{}@{}", bound.family, bound.weight),
                constraint: det[row].label,
                det_value: det[row].plane.c(),
                bound_value: bound.value,
            }
        })
        .collect();
    let polytope_equal = bounds::outer_bound_region(&spec).map(|r| r == det_region(ch)).unwrap_or(false);
    RecoveryReport { channel: *ch, checks, polytope_equal }
}

/// Every channel with levels in `{0..=max_level}`, in lexicographic order.
pub fn all_channels(max_level: usize) -> Vec<DetChannel> {
    let r = 0..=max_level;
    let mut out = Vec::new();
    for n11 in r.clone() {
        for n12 in r.clone() {
            for n21 in r.clone() {
                for n22 in r.clone() {
                    out.push(DetChannel::new(n11, n12, n21, n22));
                }
            }
        }
    }
    out
}

/// Recovery reports for [`all_channels`], computed in parallel; order is
/// that of the input list.
pub fn sweep(max_level: usize) -> Vec<RecoveryReport> {
    all_channels(max_level).par_iter().map(verify_recovery).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    #[test]
    fn reference_channel() {
        let ch = DetChannel::new(3, 2, 2, 3);
        let rhs: Vec<i64> = det_constraints(&ch).iter().map(|c| c.plane.c().to_integer().try_into().unwrap()).collect();
        assert_eq!(rhs, vec![3, 3, 4, 4, 4, 6, 6]);
        let pts = [(0, 0), (3, 0), (2, 2), (0, 3)].map(|(a, b)| Point::new(int(a), int(b)));
        assert_eq!(det_region(&ch).vertices(), &pts);
        let report = verify_recovery(&ch);
        assert!(report.passed(), "{report:?}");
        let e = report.checks.iter().find(|c| c.bound.starts_with("1c")).unwrap();
        assert_eq!(e.bound_value, int(6));
        let d = report.checks.iter().find(|c| c.bound.starts_with("1b")).unwrap();
        assert_eq!(d.bound_value, int(4));
    }

    #[test]
    fn no_cross_links_is_a_square() {
        let r = det_region(&DetChannel::new(2, 0, 0, 2));
        let pts = [(0, 0), (2, 0), (2, 2), (0, 2)].map(|(a, b)| Point::new(int(a), int(b)));
        assert_eq!(r.vertices(), &pts);
    }

    #[test]
    fn zero_channel() {
        let ch = DetChannel::new(0, 0, 0, 0);
        assert_eq!(det_region(&ch).vertices(), &[Point::origin()]);
        let report = verify_recovery(&ch);
        assert!(report.passed());
        assert!(report.checks.iter().all(|c| c.bound_value == int(0)));
    }
}
