//! Fading statistics of the layered erasure interference channel.
//!
//! Link `Nij` carries transmitter `i` to receiver `j`; receiver 1 sees
//! `N11` (desired) and `N21` (interference), receiver 2 sees `N22` and `N12`.
//! The four levels are independent, so every joint quantity below is an
//! exact convolution sum over the marginals.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{pos, Rational};
use crate::{Error, Result};

/// Distribution of one fading level over `{0, ..., q}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FadingPmf {
    mass: Vec<Rational>,
}

impl FadingPmf {
    pub fn new(mass: Vec<Rational>) -> Result<Self> {
        if mass.is_empty() {
            return Err(Error::Spec("pmf needs at least one entry (q + 1 levels)".into()));
        }
        if let Some((n, p)) = mass.iter().enumerate().find(|(_, p)| p.is_negative()) {
            return Err(Error::Spec(format!("negative mass {p} at level {n}")));
        }
        let total: Rational = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::Spec(format!("pmf sums to {total}, not 1")));
        }
        Ok(Self { mass })
    }

    pub fn point_mass(q: usize, level: usize) -> Result<Self> {
        if level > q {
            return Err(Error::Range(format!("level {level} exceeds q = {q}")));
        }
        let mut mass = vec![Rational::zero(); q + 1];
        mass[level] = Rational::one();
        Ok(Self { mass })
    }

    /// Single-layer pmf with `P(N = 1) = p`.
    pub fn binary(p: Rational) -> Result<Self> {
        Self::new(vec![Rational::one() - &p, p])
    }

    pub fn q(&self) -> usize {
        self.mass.len() - 1
    }

    pub fn mass(&self) -> &[Rational] {
        &self.mass
    }

    /// `P(N >= l)` for `0 <= l <= q + 1`.
    pub fn tail(&self, l: usize) -> Result<Rational> {
        if l > self.q() + 1 {
            return Err(Error::Range(format!("tail index {l} outside 0..={}", self.q() + 1)));
        }
        Ok(self.tail_or_zero(l))
    }

    /// `P(N >= k)` for any `k`, zero past `q`.
    pub(crate) fn tail_or_zero(&self, k: usize) -> Rational {
        self.mass.iter().skip(k).sum()
    }

    /// `P(N <= n)`.
    pub fn cdf(&self, n: usize) -> Rational {
        self.mass.iter().take(n + 1).sum()
    }

    /// `[P(N >= 1), ..., P(N >= q)]`.
    pub fn tails(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.q());
        let mut acc = Rational::zero();
        for p in self.mass.iter().skip(1).rev() {
            acc += p;
            out.push(acc.clone());
        }
        out.reverse();
        out
    }

    /// `E[N]` computed as the sum of tails.
    pub fn expect(&self) -> Rational {
        self.tails().into_iter().sum()
    }

    /// Law of `(A - B)^+` for independent `A ~ a`, `B ~ b`, on `{0, ..., q}`.
    pub fn positive_difference(a: &FadingPmf, b: &FadingPmf) -> Result<FadingPmf> {
        same_q(a, b)?;
        let q = a.q();
        let mut mass = vec![Rational::zero(); q + 1];
        for (i, pa) in a.mass.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (j, pb) in b.mass.iter().enumerate() {
                mass[i.saturating_sub(j)] += pa * pb;
            }
        }
        Ok(FadingPmf { mass })
    }
}

impl fmt::Display for FadingPmf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.mass.iter().map(crate::rational::format).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn same_q(a: &FadingPmf, b: &FadingPmf) -> Result<()> {
    if a.q() != b.q() {
        return Err(Error::Spec(format!("pmfs disagree on q: {} vs {}", a.q(), b.q())));
    }
    Ok(())
}

/// `P(A - B >= l)` for independent `A ~ a`, `B ~ b`, `1 <= l <= q`.
pub fn diff_tail(a: &FadingPmf, b: &FadingPmf, l: usize) -> Result<Rational> {
    same_q(a, b)?;
    if l == 0 || l > a.q() {
        return Err(Error::Range(format!("difference-tail index {l} outside 1..={}", a.q())));
    }
    Ok(diff_tail_unchecked(a, b, l))
}

fn diff_tail_unchecked(a: &FadingPmf, b: &FadingPmf, l: usize) -> Rational {
    b.mass
        .iter()
        .enumerate()
        .filter(|(_, pb)| !pb.is_zero())
        .map(|(m, pb)| pb * a.tail_or_zero(l + m))
        .sum()
}

/// `[P(A - B >= 1), ..., P(A - B >= q)]`.
pub fn diff_tails(a: &FadingPmf, b: &FadingPmf) -> Result<Vec<Rational>> {
    same_q(a, b)?;
    Ok((1..=a.q()).map(|l| diff_tail_unchecked(a, b, l)).collect())
}

/// `E[(A - B)^+]`.
pub fn expect_pos_diff(a: &FadingPmf, b: &FadingPmf) -> Result<Rational> {
    Ok(diff_tails(a, b)?.into_iter().sum())
}

/// `E[max(A, B)]`.
pub fn expect_max(a: &FadingPmf, b: &FadingPmf) -> Result<Rational> {
    same_q(a, b)?;
    let one = Rational::one();
    Ok(a.tails()
        .iter()
        .zip(b.tails())
        .map(|(ta, tb)| &one - (&one - ta) * (&one - tb))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Link {
    N11,
    N12,
    N21,
    N22,
}

impl Link {
    pub const ALL: [Link; 4] = [Link::N11, Link::N12, Link::N21, Link::N22];

    pub fn name(self) -> &'static str {
        match self {
            Link::N11 => "N11",
            Link::N12 => "N12",
            Link::N21 => "N21",
            Link::N22 => "N22",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum User {
    One,
    Two,
}

impl User {
    pub fn index(self) -> u8 {
        match self {
            User::One => 1,
            User::Two => 2,
        }
    }

    pub fn other(self) -> User {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }
}

/// The four link statistics together with the shared layer count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChannelSpec {
    n11: FadingPmf,
    n12: FadingPmf,
    n21: FadingPmf,
    n22: FadingPmf,
}

impl ChannelSpec {
    pub fn new(n11: FadingPmf, n12: FadingPmf, n21: FadingPmf, n22: FadingPmf) -> Result<Self> {
        let q = n11.q();
        for (link, pmf) in [(Link::N12, &n12), (Link::N21, &n21), (Link::N22, &n22)] {
            if pmf.q() != q {
                return Err(Error::Spec(format!(
                    "{} has q = {} but N11 has q = {q}",
                    link.name(),
                    pmf.q()
                )));
            }
        }
        Ok(Self { n11, n12, n21, n22 })
    }

    /// Constant fading levels, embedded with the given `q`.
    pub fn constant(q: usize, n11: usize, n12: usize, n21: usize, n22: usize) -> Result<Self> {
        Self::new(
            FadingPmf::point_mass(q, n11)?,
            FadingPmf::point_mass(q, n12)?,
            FadingPmf::point_mass(q, n21)?,
            FadingPmf::point_mass(q, n22)?,
        )
    }

    /// Single-layer channel with `P(Nii = 1) = direct` and `P(Nij = 1) = cross`.
    pub fn symmetric_binary(direct: Rational, cross: Rational) -> Result<Self> {
        let d = FadingPmf::binary(direct)?;
        let c = FadingPmf::binary(cross)?;
        Self::new(d.clone(), c.clone(), c, d)
    }

    pub fn q(&self) -> usize {
        self.n11.q()
    }

    pub fn link(&self, link: Link) -> &FadingPmf {
        match link {
            Link::N11 => &self.n11,
            Link::N12 => &self.n12,
            Link::N21 => &self.n21,
            Link::N22 => &self.n22,
        }
    }

    /// Relabels the users: `N11 <-> N22`, `N12 <-> N21`.
    pub fn swap_users(&self) -> Self {
        Self {
            n11: self.n22.clone(),
            n12: self.n21.clone(),
            n21: self.n12.clone(),
            n22: self.n11.clone(),
        }
    }

    /// The channel as seen from `user`: for user 2 this is [`Self::swap_users`].
    pub fn from_view(&self, user: User) -> std::borrow::Cow<'_, ChannelSpec> {
        match user {
            User::One => std::borrow::Cow::Borrowed(self),
            User::Two => std::borrow::Cow::Owned(self.swap_users()),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.n11 == self.n22 && self.n12 == self.n21
    }
}

/// Per-user layer coefficients for the user whose receiver is treated as
/// receiver 1 (apply to a swapped spec for user 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserCoefficients {
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub gamma: Vec<Rational>,
}

impl UserCoefficients {
    pub(crate) fn for_view(spec: &ChannelSpec) -> Self {
        let own_tail = spec.n22.tails();
        let interferer_tail = spec.n21.tails();
        let interference_excess = diff_tails(&spec.n21, &spec.n11).expect("validated spec");
        let other_clean = diff_tails(&spec.n22, &spec.n12).expect("validated spec");
        let mut alpha = Vec::with_capacity(spec.q());
        let mut beta = Vec::with_capacity(spec.q());
        let mut gamma = Vec::with_capacity(spec.q());
        for l in 0..spec.q() {
            let excess = &interference_excess[l];
            alpha.push(&interferer_tail[l] - excess);
            beta.push(pos(&own_tail[l] - excess));
            gamma.push(pos(&other_clean[l] - excess));
        }
        Self { alpha, beta, gamma }
    }
}

/// Difference tails `P(A - B >= l)`, `l = 1..q`, for the four orderings the
/// bounds use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffTails {
    pub n11_minus_n21: Vec<Rational>,
    pub n21_minus_n11: Vec<Rational>,
    pub n22_minus_n12: Vec<Rational>,
    pub n12_minus_n22: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerCoefficients {
    pub user1: UserCoefficients,
    pub user2: UserCoefficients,
    tails: [Vec<Rational>; 4],
    pub diff_tails: DiffTails,
}

impl LayerCoefficients {
    pub fn new(spec: &ChannelSpec) -> Self {
        let dt = |a: &FadingPmf, b: &FadingPmf| diff_tails(a, b).expect("validated spec");
        Self {
            user1: UserCoefficients::for_view(spec),
            user2: UserCoefficients::for_view(&spec.swap_users()),
            tails: Link::ALL.map(|link| spec.link(link).tails()),
            diff_tails: DiffTails {
                n11_minus_n21: dt(&spec.n11, &spec.n21),
                n21_minus_n11: dt(&spec.n21, &spec.n11),
                n22_minus_n12: dt(&spec.n22, &spec.n12),
                n12_minus_n22: dt(&spec.n12, &spec.n22),
            },
        }
    }

    pub fn user(&self, user: User) -> &UserCoefficients {
        match user {
            User::One => &self.user1,
            User::Two => &self.user2,
        }
    }

    pub fn tails(&self, link: Link) -> &[Rational] {
        &self.tails[link as usize]
    }
}

pub fn layer_coefficients(spec: &ChannelSpec) -> LayerCoefficients {
    LayerCoefficients::new(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn uniform3() -> FadingPmf {
        FadingPmf::new(vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)]).unwrap()
    }

    #[test]
    fn tail_examples() {
        assert_eq!(uniform3().tail(2).unwrap(), ratio(1, 3));
        assert_eq!(uniform3().tail(0).unwrap(), int(1));
        assert_eq!(uniform3().tail(3).unwrap(), int(0));
        let p = FadingPmf::point_mass(3, 3).unwrap();
        assert_eq!(p.tail(3).unwrap(), int(1));
        assert!(matches!(uniform3().tail(4), Err(Error::Range(_))));
    }

    #[test]
    fn pmf_validation() {
        assert!(FadingPmf::new(vec![]).is_err());
        assert!(FadingPmf::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(FadingPmf::new(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert!(FadingPmf::point_mass(2, 3).is_err());
        let q0 = FadingPmf::new(vec![int(1)]).unwrap();
        assert_eq!(q0.q(), 0);
        assert!(q0.tails().is_empty());
    }

    #[test]
    fn diff_tail_examples() {
        // enumerate: a in {0,1,2} uniformly, b = 1; a - b >= 1 only for a = 2
        let b = FadingPmf::point_mass(2, 1).unwrap();
        assert_eq!(diff_tail(&uniform3(), &b, 1).unwrap(), ratio(1, 3));
        let two = FadingPmf::point_mass(2, 2).unwrap();
        assert_eq!(diff_tail(&two, &two, 1).unwrap(), int(0));
        let a = FadingPmf::binary(ratio(9, 10)).unwrap();
        let b = FadingPmf::binary(ratio(3, 10)).unwrap();
        assert_eq!(diff_tail(&a, &b, 1).unwrap(), ratio(63, 100));
        assert!(matches!(diff_tail(&a, &uniform3(), 1), Err(Error::Spec(_))));
        assert!(matches!(diff_tail(&a, &b, 0), Err(Error::Range(_))));
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(FadingPmf::point_mass(3, 3).unwrap().expect(), int(3));
        let a = FadingPmf::binary(ratio(1, 2)).unwrap();
        let b = FadingPmf::binary(ratio(1, 3)).unwrap();
        assert_eq!(expect_max(&a, &b).unwrap(), ratio(2, 3));
        let a = FadingPmf::binary(ratio(9, 10)).unwrap();
        let b = FadingPmf::binary(ratio(3, 10)).unwrap();
        assert_eq!(expect_pos_diff(&a, &b).unwrap(), ratio(63, 100));
    }

    #[test]
    fn moderate_q1_coefficients() {
        let spec = ChannelSpec::symmetric_binary(ratio(4, 5), ratio(1, 2)).unwrap();
        let c = layer_coefficients(&spec);
        assert_eq!(c.user1.alpha, vec![ratio(2, 5)]);
        assert_eq!(c.user1.beta, vec![ratio(7, 10)]);
        assert_eq!(c.user1.gamma, vec![ratio(3, 10)]);
        assert_eq!(c.user1, c.user2);
    }

    #[test]
    fn deterministic_alpha_is_indicator() {
        // n11 = 3, n21 = 2: N21 - N11 < 1 always, so alpha = 1{2 >= l}
        let spec = ChannelSpec::constant(3, 3, 0, 2, 0).unwrap();
        let c = layer_coefficients(&spec);
        assert_eq!(c.user1.alpha, vec![int(1), int(1), int(0)]);
    }

    #[test]
    fn swap_is_involution() {
        let det = ChannelSpec::constant(3, 3, 2, 2, 3).unwrap();
        assert_eq!(det.swap_users(), det);
        assert!(det.is_symmetric());
        let spec = ChannelSpec::new(
            uniform3(),
            FadingPmf::point_mass(2, 0).unwrap(),
            FadingPmf::point_mass(2, 1).unwrap(),
            FadingPmf::point_mass(2, 2).unwrap(),
        )
        .unwrap();
        assert_ne!(spec.swap_users(), spec);
        assert_eq!(spec.swap_users().swap_users(), spec);
    }

    #[test]
    fn mismatched_q_rejected() {
        let r = ChannelSpec::new(
            uniform3(),
            uniform3(),
            uniform3(),
            FadingPmf::point_mass(3, 0).unwrap(),
        );
        assert!(matches!(r, Err(Error::Spec(_))));
    }

    #[test]
    fn positive_difference_law() {
        let b = FadingPmf::point_mass(2, 1).unwrap();
        let d = FadingPmf::positive_difference(&uniform3(), &b).unwrap();
        assert_eq!(d.mass(), &[ratio(2, 3), ratio(1, 3), int(0)]);
    }
}
