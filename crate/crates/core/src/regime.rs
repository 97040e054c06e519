//! Interference-regime classification and the regions that are known in
//! closed form for each regime.
//!
//! Per layer `l` three condition pairs are checked:
//!
//! * strong: `P(N12 >= l) >= P(N11 >= l)` and `P(N21 >= l) >= P(N22 >= l)`
//! * weak: `P(N11 − N21 >= l) >= P(N12 >= l)` and `P(N22 − N12 >= l) >= P(N21 >= l)`
//! * moderate (strict): `P(N11 >= l) > P(N12 >= l) > P(N11 − N21 >= l)` and
//!   `P(N22 >= l) > P(N21 >= l) > P(N22 − N12 >= l)`
//!
//! A channel gets a regime label only when the pair holds at every layer.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bounds::{self, BoundFamily, FamilyA, FamilyB, FamilyC, FamilyId, FamilyKind, UserStats, Weight};
use crate::channel::{expect_max, expect_pos_diff, ChannelSpec, LayerCoefficients, Link, User};
use crate::geometry::{self, HalfPlane, Point, RegionPolytope};
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Strong,
    Weak,
    Moderate,
    Mixed,
}

impl Regime {
    /// Whether the outer bound is known to be the capacity region.
    pub fn is_tight(self) -> bool {
        matches!(self, Regime::Strong | Regime::Weak)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Strong => "strong",
            Regime::Weak => "weak",
            Regime::Moderate => "moderate",
            Regime::Mixed => "mixed",
        })
    }
}

/// Condition flags at one layer; index 0 is the receiver-1 inequality
/// chain, index 1 the receiver-2 one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerFlags {
    pub layer: usize,
    pub strong: [bool; 2],
    pub weak: [bool; 2],
    pub moderate: [bool; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegimeReport {
    pub regime: Regime,
    pub layers: Vec<LayerFlags>,
    /// No layer satisfies either moderate chain.
    pub conjecture_precondition: bool,
}

pub fn classify(spec: &ChannelSpec) -> RegimeReport {
    let c = LayerCoefficients::new(spec);
    let t11 = c.tails(Link::N11);
    let t12 = c.tails(Link::N12);
    let t21 = c.tails(Link::N21);
    let t22 = c.tails(Link::N22);
    let d = &c.diff_tails;
    let layers: Vec<LayerFlags> = (0..spec.q())
        .map(|i| LayerFlags {
            layer: i + 1,
            strong: [t12[i] >= t11[i], t21[i] >= t22[i]],
            weak: [d.n11_minus_n21[i] >= t12[i], d.n22_minus_n12[i] >= t21[i]],
            moderate: [
                t11[i] > t12[i] && t12[i] > d.n11_minus_n21[i],
                t22[i] > t21[i] && t21[i] > d.n22_minus_n12[i],
            ],
        })
        .collect();
    let all = |f: fn(&LayerFlags) -> [bool; 2]| layers.iter().all(|l| f(l) == [true, true]);
    // strong and weak can only hold together for degenerate channels
    // (N21 = N22 = 0 and N11 ~ N12); strong is reported first.
    let regime = if all(|l| l.strong) {
        Regime::Strong
    } else if all(|l| l.weak) {
        Regime::Weak
    } else if all(|l| l.moderate) {
        Regime::Moderate
    } else {
        Regime::Mixed
    };
    let conjecture_precondition = layers.iter().all(|l| l.moderate == [false, false]);
    RegimeReport { regime, layers, conjecture_precondition }
}

fn require(spec: &ChannelSpec, regime: Regime) -> Result<()> {
    let got = classify(spec).regime;
    if got != regime {
        return Err(Error::Regime(format!("channel is {got}, not {regime}")));
    }
    Ok(())
}

/// Compound multiple-access region
/// `{R_i <= E N_ii, R1 + R2 <= E max(N11, N21), R1 + R2 <= E max(N22, N12)}`.
pub fn strong_region(spec: &ChannelSpec) -> Result<RegionPolytope> {
    require(spec, Regime::Strong)?;
    compound_mac_region(spec)
}

pub fn compound_mac_region(spec: &ChannelSpec) -> Result<RegionPolytope> {
    let one = Rational::one();
    let zero = Rational::zero();
    let n = |l| spec.link(l);
    let sum1 = expect_max(n(Link::N11), n(Link::N21))?;
    let sum2 = expect_max(n(Link::N22), n(Link::N12))?;
    geometry::intersect(&[
        HalfPlane::new(one.clone(), zero.clone(), n(Link::N11).expect())?,
        HalfPlane::new(zero, one.clone(), n(Link::N22).expect())?,
        HalfPlane::new(one.clone(), one.clone(), sum1)?,
        HalfPlane::new(one.clone(), one, sum2)?,
    ])
}

/// `R_1b ∩ R_2b`, the capacity region under weak interference.
pub fn weak_region(spec: &ChannelSpec) -> Result<RegionPolytope> {
    require(spec, Regime::Weak)?;
    b_families_region(spec)
}

pub(crate) fn b_families_region(spec: &ChannelSpec) -> Result<RegionPolytope> {
    let mut planes = Vec::new();
    for user in [User::One, User::Two] {
        let family = FamilyB { user };
        for w in family.critical_weights(spec) {
            planes.push(family.bound(spec, w)?.halfplane());
        }
    }
    geometry::intersect(&planes)
}

/// `E(N22 − N12)^+ + E(N11 − N21)^+`.
pub fn weak_sum_capacity(spec: &ChannelSpec) -> Result<Rational> {
    require(spec, Regime::Weak)?;
    let (r1, r2) = tin_rates(spec)?;
    Ok(r1 + r2)
}

fn tin_rates(spec: &ChannelSpec) -> Result<(Rational, Rational)> {
    let n = |l| spec.link(l);
    Ok((
        expect_pos_diff(n(Link::N11), n(Link::N21))?,
        expect_pos_diff(n(Link::N22), n(Link::N12))?,
    ))
}

/// Rate pair reached by treating interference as noise at both receivers.
pub fn tin_point(spec: &ChannelSpec) -> Result<Point> {
    let (r1, r2) = tin_rates(spec)?;
    Ok(Point::new(r1, r2))
}

/// `(E N11, E(N21 − N11)^+)`: user 1 decodes and cancels all of user 2.
pub fn star_point(spec: &ChannelSpec) -> Result<Point> {
    let n = |l| spec.link(l);
    Ok(Point::new(n(Link::N11).expect(), expect_pos_diff(n(Link::N21), n(Link::N11))?))
}

/// Private/common layer split of user 2 for the corner of `R_1b` whose right
/// boundary segment has slope weight `omega_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerAllocation {
    pub omega_a: Rational,
    /// Layers `l` (1-based) with `ω_A γ1(l) >= α1(l)`.
    pub private_layers: Vec<usize>,
    pub common_layers: Vec<usize>,
    pub corner: Point,
    /// `E(N22 − N12)^+`, user 2's rate when it treats interference as noise.
    pub tin_rate_user2: Rational,
    pub star_on_r1b_boundary: bool,
}

impl CornerAllocation {
    /// User-2 coordinate `>= E(N22 − N12)^+`.
    pub fn user2_reaches_tin(&self) -> bool {
        self.corner.r2 >= self.tin_rate_user2
    }

    /// User-2 coordinate `<= E(N22 − N12)^+`, i.e. decodable while treating
    /// user 1 as noise.
    pub fn user2_within_tin(&self) -> bool {
        self.corner.r2 <= self.tin_rate_user2
    }
}

pub fn weak_corner(spec: &ChannelSpec, omega_a: &Rational) -> Result<CornerAllocation> {
    require(spec, Regime::Weak)?;
    if !omega_a.is_positive() || omega_a > &Rational::one() {
        return Err(Error::Range(format!("omega_A = {omega_a} outside (0, 1]")));
    }
    let stats = UserStats::new(spec, User::One);
    let coeffs = &stats.coeffs;
    let (mut private_layers, mut common_layers) = (Vec::new(), Vec::new());
    let mut r1 = stats.e_own.clone();
    let mut r2 = stats.e_excess.clone();
    for (i, (alpha, gamma)) in coeffs.alpha.iter().zip(&coeffs.gamma).enumerate() {
        if omega_a * gamma >= *alpha {
            private_layers.push(i + 1);
            r1 -= alpha;
            r2 += gamma;
        } else {
            common_layers.push(i + 1);
        }
    }
    let r1b = bounds::family_region(spec, &FamilyB { user: User::One })?;
    Ok(CornerAllocation {
        omega_a: omega_a.clone(),
        private_layers,
        common_layers,
        corner: Point::new(r1, r2),
        tin_rate_user2: tin_rates(spec)?.1,
        star_on_r1b_boundary: r1b.on_boundary(&star_point(spec)?),
    })
}

/// Simplified bounds for a moderate channel.
///
/// * `a`: `E N11 + ω E(N21−N11)^+ + Σ (ω β(l) − α(l))`, positive part dropped
/// * `b`: the upper estimate `(1−ω) E N11 + ω (E N21 + E N12)`
/// * `c`: `E N11 + ω E(N21−N11)^+ + Σ max(μ P(N11 >= l), ω P(N12 >= l))`
pub fn moderate_bounds(spec: &ChannelSpec, family: FamilyId, weight: &Weight) -> Result<Rational> {
    require(spec, Regime::Moderate)?;
    let user = family.user;
    let stats = UserStats::new(spec, user);
    // range checks are shared with the general evaluator
    match family.kind {
        FamilyKind::A => FamilyA { user }.evaluate_stats(&stats, weight)?,
        FamilyKind::B => FamilyB { user }.evaluate_stats(&stats, weight)?,
        FamilyKind::C => FamilyC { user }.evaluate_stats(&stats, weight)?,
    };
    let omega = &weight.omega;
    let view = spec.from_view(user);
    Ok(match family.kind {
        FamilyKind::A => {
            let linear: Rational = stats
                .coeffs
                .beta
                .iter()
                .zip(&stats.coeffs.alpha)
                .map(|(b, a)| omega * b - a)
                .sum();
            &stats.e_own + omega * &stats.e_excess + linear
        }
        FamilyKind::B => {
            (Rational::one() - omega) * &stats.e_own
                + omega * (&stats.e_interferer + view.link(Link::N12).expect())
        }
        FamilyKind::C => {
            let mu = weight.mu.as_ref().expect("checked by evaluator");
            let max_term: Rational = stats
                .own_tail
                .iter()
                .zip(&stats.cross_tail)
                .map(|(own, cross)| (mu * own).max(omega * cross))
                .sum();
            &stats.e_own + omega * &stats.e_excess + max_term
        }
    })
}

/// Structural facts of a weak channel: `R_kb` lies inside `R_ka` and the
/// `c`-family region, the full outer bound has the TIN sum rate, and the TIN
/// point sits on both `b`-family boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakInclusionReport {
    /// Indexed by user.
    pub b_in_a: [bool; 2],
    pub b_in_c: [bool; 2],
    pub tin_on_b_boundary: [bool; 2],
    pub sum_rate: Rational,
    pub tin_sum: Rational,
}

impl WeakInclusionReport {
    pub fn passed(&self) -> bool {
        self.b_in_a == [true; 2]
            && self.b_in_c == [true; 2]
            && self.tin_on_b_boundary == [true; 2]
            && self.sum_rate == self.tin_sum
    }
}

pub fn weak_inclusions(spec: &ChannelSpec) -> Result<WeakInclusionReport> {
    require(spec, Regime::Weak)?;
    let tin = tin_point(spec)?;
    let mut b_in_a = [false; 2];
    let mut b_in_c = [false; 2];
    let mut tin_on_b_boundary = [false; 2];
    for (i, user) in [User::One, User::Two].into_iter().enumerate() {
        let rb = bounds::family_region(spec, &FamilyB { user })?;
        b_in_a[i] = rb.is_subset_of(&bounds::family_region(spec, &FamilyA { user })?);
        b_in_c[i] = rb.is_subset_of(&bounds::family_region(spec, &FamilyC { user })?);
        tin_on_b_boundary[i] = rb.on_boundary(&tin);
    }
    let one = Rational::one();
    Ok(WeakInclusionReport {
        b_in_a,
        b_in_c,
        tin_on_b_boundary,
        sum_rate: bounds::outer_bound_region(spec)?.support(&one, &one),
        tin_sum: &tin.r1 + &tin.r2,
    })
}

/// Plot marks for a weak region: TIN point, sum-capacity face and its ends,
/// and the star point.
pub fn weak_annotations(spec: &ChannelSpec) -> Result<crate::export::WeakAnnotations> {
    let region = weak_region(spec)?;
    let sum_capacity = weak_sum_capacity(spec)?;
    let face: Vec<&Point> = region.vertices().iter().filter(|p| &p.r1 + &p.r2 == sum_capacity).collect();
    let a = face.iter().min_by(|x, y| x.r1.cmp(&y.r1)).map(|p| (*p).clone()).unwrap_or_else(Point::origin);
    let b = face.iter().max_by(|x, y| x.r1.cmp(&y.r1)).map(|p| (*p).clone()).unwrap_or_else(Point::origin);
    Ok(crate::export::WeakAnnotations { tin: tin_point(spec)?, sum_capacity, star: star_point(spec)?, a, b })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPlane {
    pub label: &'static str,
    pub plane: HalfPlane,
}

/// The single-layer symmetric moderate outer bound and its checks.
#[derive(Debug, Clone)]
pub struct SymmetricQ1Report {
    pub p_d: Rational,
    pub p_c: Rational,
    /// `(a)` twice (R1 then R2), then `(b)` .. `(f)`.
    pub constraints: Vec<LabeledPlane>,
    pub region: RegionPolytope,
    /// `(b)` is implied by `(a)` and `(e)` and differs from `(e)`.
    pub b_redundant: bool,
    /// `p_d − p_c > p_c²`.
    pub slope_condition: bool,
    pub b_e_intersection: Option<Point>,
    /// Region of the bounds at `B_ka(0)`, `B_ka(α/β)`, `B_kb(1)`, `B_kc(1, p_c/p_d)`.
    pub weighted_region: RegionPolytope,
}

impl SymmetricQ1Report {
    pub fn plane(&self, label: &str) -> Option<&HalfPlane> {
        self.constraints.iter().find(|c| c.label == label).map(|c| &c.plane)
    }

    pub fn matches_weighted_bounds(&self) -> bool {
        self.region == self.weighted_region
    }
}

pub fn symmetric_q1_region(p_d: &Rational, p_c: &Rational) -> Result<SymmetricQ1Report> {
    let gap = p_d - p_c;
    if !(gap.is_positive() && p_d * p_c > gap) {
        return Err(Error::Regime(format!(
            "p_d = {p_d}, p_c = {p_c} violates p_d p_c > p_d - p_c > 0"
        )));
    }
    let spec = ChannelSpec::symmetric_binary(p_d.clone(), p_c.clone())?;
    let one = Rational::one();
    let zero = Rational::zero();
    let excess = p_c * (&one - p_d);
    let k_b = p_d * p_c / (&gap + p_d * p_c);
    let k_e = p_d / (p_d + p_c);
    let rhs_b = p_d + &k_b * &excess;
    let rhs_e = p_d + &k_e * &excess;
    let hp = |a: &Rational, b: &Rational, c: &Rational| HalfPlane::new(a.clone(), b.clone(), c.clone());
    let constraints = vec![
        LabeledPlane { label: "a", plane: hp(&one, &zero, p_d)? },
        LabeledPlane { label: "a", plane: hp(&zero, &one, p_d)? },
        LabeledPlane { label: "b", plane: hp(&one, &k_b, &rhs_b)? },
        LabeledPlane { label: "c", plane: hp(&k_b, &one, &rhs_b)? },
        LabeledPlane { label: "d", plane: hp(&one, &one, &(p_c + p_c))? },
        LabeledPlane { label: "e", plane: hp(&one, &k_e, &rhs_e)? },
        LabeledPlane { label: "f", plane: hp(&k_e, &one, &rhs_e)? },
    ];
    let planes: Vec<HalfPlane> = constraints.iter().map(|c| c.plane.clone()).collect();
    let region = geometry::intersect(&planes)?;

    let b = &constraints[2].plane;
    let e = &constraints[5].plane;
    let a_and_e = geometry::intersect(&[constraints[0].plane.clone(), constraints[1].plane.clone(), e.clone()])?;
    let b_redundant = b != e && a_and_e.vertices().iter().all(|v| b.contains(v));

    let stats = UserStats::new(&spec, User::One);
    let ratio = &stats.coeffs.alpha[0] / &stats.coeffs.beta[0];
    let mut weighted = Vec::new();
    for user in [User::One, User::Two] {
        weighted.push(FamilyA { user }.bound(&spec, Weight::omega(zero.clone()))?);
        weighted.push(FamilyA { user }.bound(&spec, Weight::omega(ratio.clone()))?);
        weighted.push(FamilyB { user }.bound(&spec, Weight::omega(one.clone()))?);
        weighted.push(FamilyC { user }.bound(&spec, Weight::with_mu(one.clone(), p_c / p_d))?);
    }
    let weighted_planes: Vec<HalfPlane> = weighted.iter().map(|b| b.halfplane()).collect();

    Ok(SymmetricQ1Report {
        p_d: p_d.clone(),
        p_c: p_c.clone(),
        b_e_intersection: geometry::line_intersection(b, e),
        slope_condition: gap > p_c * p_c,
        b_redundant,
        region,
        weighted_region: geometry::intersect(&weighted_planes)?,
        constraints,
    })
}
