//! Weighted sum-rate bound families and the registry that selects them.
//!
//! There are six families, `1a` .. `2c`: three bound shapes (see
//! [`families`]) for each of the two users. Each family is a
//! [`BoundFamily`] trait object registered by name in a [`BoundRegistry`];
//! a [`WeightSchedule`] decides which weights are turned into half-planes.

pub mod families;
mod schedule;

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

pub use crate::channel::User;
use crate::channel::{expect_pos_diff, diff_tails, ChannelSpec, UserCoefficients};
use crate::geometry::{self, HalfPlane, RegionPolytope};
use crate::rational::{self, Rational};
use crate::{Error, Result};
pub use families::{FamilyA, FamilyB, FamilyC};
pub use schedule::{schedule_by_name, CriticalWeights, UniformGrid, WeightSchedule, DEFAULT_GRID_STEPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    A,
    B,
    C,
}

impl FamilyKind {
    pub fn letter(self) -> char {
        match self {
            FamilyKind::A => 'a',
            FamilyKind::B => 'b',
            FamilyKind::C => 'c',
        }
    }
}

/// A family label such as `1a` or `2c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub user: User,
    pub kind: FamilyKind,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.user.index(), self.kind.letter())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let user = match chars.next() {
            Some('1') => User::One,
            Some('2') => User::Two,
            _ => return Err(Error::Parse(format!("unknown bound family '{s}'"))),
        };
        let kind = match (chars.next(), chars.next()) {
            (Some('a'), None) => FamilyKind::A,
            (Some('b'), None) => FamilyKind::B,
            (Some('c'), None) => FamilyKind::C,
            _ => return Err(Error::Parse(format!("unknown bound family '{s}'"))),
        };
        Ok(Self { user, kind })
    }
}

/// `ω`, plus `μ` for the c-families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub omega: Rational,
    pub mu: Option<Rational>,
}

impl Weight {
    pub fn omega(omega: Rational) -> Self {
        Self { omega, mu: None }
    }

    pub fn with_mu(omega: Rational, mu: Rational) -> Self {
        Self { omega, mu: Some(mu) }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω={}", rational::format(&self.omega))?;
        if let Some(mu) = &self.mu {
            write!(f, ",μ={}", rational::format(mu))?;
        }
        Ok(())
    }
}

/// One bound instance: family, weight and right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBound {
    pub family: FamilyId,
    pub weight: Weight,
    pub value: Rational,
}

impl WeightedBound {
    /// User-1 families: `(1+μ) R1 + ω R2 <= value`; user-2 families mirrored.
    pub fn halfplane(&self) -> HalfPlane {
        let own = Rational::one() + self.weight.mu.clone().unwrap_or_else(num_traits::Zero::zero);
        let other = self.weight.omega.clone();
        let (a, b) = match self.family.user {
            User::One => (own, other),
            User::Two => (other, own),
        };
        HalfPlane::new(a, b, self.value.clone()).expect("bound coefficients are nonnegative")
    }
}

impl fmt::Display for WeightedBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{}({}) = {}", self.family, self.weight, rational::format(&self.value))
    }
}

/// Every statistic the bounds of one user need, with that user's receiver
/// playing receiver 1.
#[derive(Debug, Clone)]
pub struct UserStats {
    /// `E N11`
    pub e_own: Rational,
    /// `E N21`
    pub e_interferer: Rational,
    /// `E (N21 − N11)^+`
    pub e_excess: Rational,
    /// `P(N11 >= l)`
    pub own_tail: Vec<Rational>,
    /// `P(N12 >= l)`
    pub cross_tail: Vec<Rational>,
    /// `P(N11 − N21 >= l)`
    pub clean_tail: Vec<Rational>,
    pub coeffs: UserCoefficients,
}

impl UserStats {
    pub fn new(spec: &ChannelSpec, user: User) -> Self {
        use crate::channel::Link::*;
        let view = spec.from_view(user);
        let s = view.as_ref();
        Self {
            e_own: s.link(N11).expect(),
            e_interferer: s.link(N21).expect(),
            e_excess: expect_pos_diff(s.link(N21), s.link(N11)).expect("validated spec"),
            own_tail: s.link(N11).tails(),
            cross_tail: s.link(N12).tails(),
            clean_tail: diff_tails(s.link(N11), s.link(N21)).expect("validated spec"),
            coeffs: UserCoefficients::for_view(s),
        }
    }
}

/// A weighted-bound family that can be evaluated and enumerated.
pub trait BoundFamily: Send + Sync {
    fn user(&self) -> User;

    fn kind(&self) -> FamilyKind;

    fn id(&self) -> FamilyId {
        FamilyId { user: self.user(), kind: self.kind() }
    }

    fn name(&self) -> String {
        self.id().to_string()
    }

    /// Bound value from precomputed statistics of [`Self::user`].
    fn evaluate_stats(&self, stats: &UserStats, weight: &Weight) -> Result<Rational>;

    /// A finite weight set whose half-planes carve out the same region as the
    /// full weight continuum.
    fn critical_weights_stats(&self, stats: &UserStats) -> Vec<Weight>;

    fn evaluate(&self, spec: &ChannelSpec, weight: &Weight) -> Result<Rational> {
        self.evaluate_stats(&UserStats::new(spec, self.user()), weight)
    }

    fn critical_weights(&self, spec: &ChannelSpec) -> Vec<Weight> {
        self.critical_weights_stats(&UserStats::new(spec, self.user()))
    }

    fn bound(&self, spec: &ChannelSpec, weight: Weight) -> Result<WeightedBound> {
        let value = self.evaluate(spec, &weight)?;
        Ok(WeightedBound { family: self.id(), weight, value })
    }
}

/// Name-indexed collection of bound families.
pub struct BoundRegistry {
    families: Vec<Box<dyn BoundFamily>>,
}

impl BoundRegistry {
    pub fn empty() -> Self {
        Self { families: Vec::new() }
    }

    /// `1a, 1b, 1c, 2a, 2b, 2c`, in that order.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        for user in [User::One, User::Two] {
            reg.register(Box::new(FamilyA { user }));
            reg.register(Box::new(FamilyB { user }));
            reg.register(Box::new(FamilyC { user }));
        }
        reg
    }

    /// Adds a family, replacing any family already registered under its name.
    pub fn register(&mut self, family: Box<dyn BoundFamily>) {
        let id = family.id();
        self.families.retain(|f| f.id() != id);
        self.families.push(family);
    }

    pub fn get(&self, name: &str) -> Option<&dyn BoundFamily> {
        let id: FamilyId = name.parse().ok()?;
        self.by_id(id)
    }

    pub fn by_id(&self, id: FamilyId) -> Option<&dyn BoundFamily> {
        self.families.iter().find(|f| f.id() == id).map(|f| f.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn BoundFamily> {
        self.families.iter().map(|f| f.as_ref())
    }

    pub fn names(&self) -> Vec<String> {
        self.iter().map(|f| f.name()).collect()
    }

    /// Bounds of every registered family at the weights chosen by `schedule`,
    /// in registry order then weight order. Redundant bounds are kept.
    pub fn bounds(&self, spec: &ChannelSpec, schedule: &dyn WeightSchedule) -> Vec<WeightedBound> {
        let stats = [UserStats::new(spec, User::One), UserStats::new(spec, User::Two)];
        let mut out = Vec::new();
        for family in self.iter() {
            let s = &stats[(family.user().index() - 1) as usize];
            for weight in schedule.weights(family, s) {
                let value = family
                    .evaluate_stats(s, &weight)
                    .expect("schedules only produce in-range weights");
                out.push(WeightedBound { family: family.id(), weight, value });
            }
        }
        out
    }
}

impl Default for BoundRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

/// A bound together with its half-plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub bound: WeightedBound,
    pub plane: HalfPlane,
}

fn to_constraints(bounds: Vec<WeightedBound>) -> Vec<Constraint> {
    bounds
        .into_iter()
        .map(|bound| Constraint { plane: bound.halfplane(), bound })
        .collect()
}

pub fn bound_a(spec: &ChannelSpec, user: User, omega: &Rational) -> Result<Rational> {
    FamilyA { user }.evaluate(spec, &Weight::omega(omega.clone()))
}

pub fn bound_b(spec: &ChannelSpec, user: User, omega: &Rational) -> Result<Rational> {
    FamilyB { user }.evaluate(spec, &Weight::omega(omega.clone()))
}

pub fn bound_c(spec: &ChannelSpec, user: User, omega: &Rational, mu: &Rational) -> Result<Rational> {
    FamilyC { user }.evaluate(spec, &Weight::with_mu(omega.clone(), mu.clone()))
}

pub fn critical_weights(spec: &ChannelSpec, user: User, kind: FamilyKind) -> Vec<Weight> {
    match kind {
        FamilyKind::A => FamilyA { user }.critical_weights(spec),
        FamilyKind::B => FamilyB { user }.critical_weights(spec),
        FamilyKind::C => FamilyC { user }.critical_weights(spec),
    }
}

/// All six families at their critical weights.
pub fn halfplanes_theorem1(spec: &ChannelSpec) -> Vec<Constraint> {
    constraints(spec, &BoundRegistry::standard(), &CriticalWeights)
}

pub fn constraints(
    spec: &ChannelSpec,
    registry: &BoundRegistry,
    schedule: &dyn WeightSchedule,
) -> Vec<Constraint> {
    to_constraints(registry.bounds(spec, schedule))
}

pub fn region_of(constraints: &[Constraint]) -> Result<RegionPolytope> {
    let planes: Vec<HalfPlane> = constraints.iter().map(|c| c.plane.clone()).collect();
    geometry::intersect(&planes)
}

/// The outer bound: intersection of all six family regions.
pub fn outer_bound_region(spec: &ChannelSpec) -> Result<RegionPolytope> {
    region_of(&halfplanes_theorem1(spec))
}

/// Region of one family alone, e.g. `R_1b`.
pub fn family_region(spec: &ChannelSpec, family: &dyn BoundFamily) -> Result<RegionPolytope> {
    let stats = UserStats::new(spec, family.user());
    let planes: Vec<HalfPlane> = family
        .critical_weights_stats(&stats)
        .into_iter()
        .map(|w| {
            let value = family.evaluate_stats(&stats, &w).expect("critical weights are in range");
            WeightedBound { family: family.id(), weight: w, value }.halfplane()
        })
        .collect();
    geometry::intersect(&planes)
}

/// Distinct half-planes that bound a face of `region`, each reported with the
/// first bound (in emission order) that produced it.
pub fn active_constraints(constraints: &[Constraint], region: &RegionPolytope) -> Vec<Constraint> {
    let mut out: Vec<Constraint> = Vec::new();
    for c in constraints {
        if out.iter().any(|o| o.plane == c.plane) {
            continue;
        }
        if region.has_face(&c.plane) {
            out.push(c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::geometry::Point;
    use crate::rational::{int, ratio};

    #[test]
    fn bound_a_examples() {
        let s = corpus::c_mod1();
        assert_eq!(bound_a(&s, User::One, &int(0)).unwrap(), ratio(4, 5));
        assert_eq!(bound_a(&s, User::One, &int(1)).unwrap(), ratio(6, 5));
        let zero = corpus::all_zero(2);
        assert_eq!(bound_a(&zero, User::Two, &ratio(1, 3)).unwrap(), int(0));
        assert!(matches!(bound_a(&s, User::One, &ratio(3, 2)), Err(Error::Range(_))));
        assert!(matches!(bound_a(&s, User::One, &ratio(-1, 2)), Err(Error::Range(_))));
    }

    #[test]
    fn bound_b_examples() {
        assert_eq!(bound_b(&corpus::c_mod1(), User::One, &int(1)).unwrap(), int(1));
        assert_eq!(bound_b(&corpus::c_weak1(), User::One, &int(1)).unwrap(), ratio(63, 50));
        for s in [corpus::c_mod1(), corpus::c_det(), corpus::c_strong1()] {
            let e11 = s.link(crate::Link::N11).expect();
            assert_eq!(bound_b(&s, User::One, &int(0)).unwrap(), e11);
        }
    }

    #[test]
    fn bound_c_examples() {
        let s = corpus::c_mod1();
        let v = bound_c(&s, User::One, &int(1), &ratio(5, 8)).unwrap();
        assert_eq!(v, ratio(7, 5));
        let b = WeightedBound {
            family: "1c".parse().unwrap(),
            weight: Weight::with_mu(int(1), ratio(5, 8)),
            value: v,
        };
        assert_eq!(b.halfplane().normalized_r1(), Some((ratio(8, 13), ratio(56, 65))));
        assert_eq!(bound_c(&s, User::One, &int(0), &int(0)).unwrap(), ratio(4, 5));
        assert_eq!(bound_c(&corpus::c_det(), User::One, &int(1), &int(1)).unwrap(), int(6));
        assert!(matches!(
            bound_c(&s, User::One, &ratio(1, 2), &ratio(3, 4)),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn critical_weight_examples() {
        let omegas = |ws: Vec<Weight>| ws.into_iter().map(|w| w.omega).collect::<Vec<_>>();
        let weak = corpus::c_weak1();
        assert_eq!(
            omegas(critical_weights(&weak, User::One, FamilyKind::B)),
            vec![int(0), ratio(9, 20), int(1)]
        );
        let no_beta = corpus::constant(2, 2, 0, 0, 2);
        assert_eq!(omegas(critical_weights(&no_beta, User::One, FamilyKind::A)), vec![int(0), int(1)]);
        let det = omegas(critical_weights(&corpus::c_det(), User::One, FamilyKind::A));
        assert!(det.iter().all(|w| *w == int(0) || *w == int(1)));
    }

    #[test]
    fn c_family_weights_stay_in_triangle() {
        for spec in [corpus::c_mod1(), corpus::c_weak1(), corpus::c_det()] {
            for user in [User::One, User::Two] {
                let ws = critical_weights(&spec, user, FamilyKind::C);
                assert!(ws.contains(&Weight::with_mu(int(0), int(0))));
                assert!(ws.contains(&Weight::with_mu(int(1), int(1))));
                for w in ws {
                    let mu = w.mu.unwrap();
                    assert!(mu >= int(0) && mu <= w.omega && w.omega <= int(1));
                }
            }
        }
    }

    #[test]
    fn outer_bound_examples() {
        let zero = outer_bound_region(&corpus::all_zero(1)).unwrap();
        assert_eq!(zero.vertices(), &[Point::origin()]);
        let det = outer_bound_region(&corpus::c_det()).unwrap();
        let pts: Vec<_> = [(0, 0), (3, 0), (2, 2), (0, 3)]
            .iter()
            .map(|&(a, b)| Point::new(int(a), int(b)))
            .collect();
        assert_eq!(det.vertices(), pts.as_slice());
        let strong = outer_bound_region(&corpus::c_strong1()).unwrap();
        let expected = geometry::intersect(&[
            HalfPlane::new(int(1), int(0), ratio(1, 2)).unwrap(),
            HalfPlane::new(int(0), int(1), ratio(1, 2)).unwrap(),
            HalfPlane::new(int(1), int(1), ratio(9, 10)).unwrap(),
        ])
        .unwrap();
        assert_eq!(strong, expected);
    }

    #[test]
    fn strong_active_constraints_provenance() {
        let spec = corpus::c_strong1();
        let all = halfplanes_theorem1(&spec);
        let region = region_of(&all).unwrap();
        let active = active_constraints(&all, &region);
        let tags: Vec<String> = active.iter().map(|c| format!("{}@{}", c.bound.family, c.bound.weight)).collect();
        assert_eq!(tags, vec!["1a@ω=0", "1a@ω=1", "2a@ω=0"]);
    }

    #[test]
    fn registry_lookup() {
        let reg = BoundRegistry::standard();
        assert_eq!(reg.names(), vec!["1a", "1b", "1c", "2a", "2b", "2c"]);
        let f = reg.get("2b").unwrap();
        assert_eq!(f.user(), User::Two);
        assert_eq!(f.kind(), FamilyKind::B);
        assert!(reg.get("3a").is_none());
        assert!(reg.get("1d").is_none());
    }

    #[test]
    fn user_two_is_user_one_of_swapped_spec() {
        let spec = corpus::constant(3, 3, 1, 2, 1);
        let swapped = spec.swap_users();
        for w in [int(0), ratio(1, 3), int(1)] {
            assert_eq!(bound_a(&spec, User::Two, &w).unwrap(), bound_a(&swapped, User::One, &w).unwrap());
            assert_eq!(bound_b(&spec, User::Two, &w).unwrap(), bound_b(&swapped, User::One, &w).unwrap());
        }
    }
}
