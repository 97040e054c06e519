//! Exact check of the quantile-coupling identities.
//!
//! `M = (N22 − N12)^+`, `T = N21` and `L = (N21 − N11)^+` are all driven by one
//! uniform `U` through their pseudo-inverse CDFs `F⁻¹(u) = min{k : F(k) >= u}`.
//! The sorted union of the three CDF value sets cuts `(0, 1]` into cells on
//! which every coupled variable is constant, so event probabilities are sums
//! of cell lengths.

use num_traits::{Signed, Zero};

use crate::channel::{diff_tail, ChannelSpec, FadingPmf, Link};
use crate::rational::{pos, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub layer: usize,
    pub coupled: Rational,
    pub closed_form: Rational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.coupled == self.closed_form
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingReport {
    /// `P(L < l <= M)` against `[P(N22−N12 >= l) − P(N21−N11 >= l)]^+`.
    pub excess: Vec<IdentityCheck>,
    /// `P(L < l <= T)` against `P(N21 >= l) − P(N21−N11 >= l)`.
    pub interference: Vec<IdentityCheck>,
    /// `L <= T` on every cell of positive length.
    pub ordered: bool,
    /// Cell lengths reproduce the three marginals.
    pub marginals_match: bool,
}

impl CouplingReport {
    pub fn passed(&self) -> bool {
        self.ordered
            && self.marginals_match
            && self.excess.iter().all(IdentityCheck::holds)
            && self.interference.iter().all(IdentityCheck::holds)
    }
}

fn cdf_values(p: &FadingPmf) -> Vec<Rational> {
    (0..=p.q()).map(|n| p.cdf(n)).collect()
}

/// `min{k : F(k) >= u}`.
fn quantile(cdf: &[Rational], u: &Rational) -> usize {
    cdf.iter().position(|f| f >= u).unwrap_or(cdf.len() - 1)
}

/// Coupled values on each cell: `(length, [m, t, l])`.
fn cells(laws: [&FadingPmf; 3]) -> Vec<(Rational, [usize; 3])> {
    let cdfs = laws.map(cdf_values);
    let mut cuts: Vec<Rational> = cdfs.iter().flatten().cloned().collect();
    cuts.push(Rational::zero());
    cuts.sort();
    cuts.dedup();
    cuts.windows(2)
        .map(|w| {
            let (lo, hi) = (&w[0], &w[1]);
            (hi - lo, [0, 1, 2].map(|i| quantile(&cdfs[i], hi)))
        })
        .filter(|(len, _)| len.is_positive())
        .collect()
}

pub fn coupling_check(spec: &ChannelSpec) -> CouplingReport {
    let n = |l| spec.link(l);
    let m = FadingPmf::positive_difference(n(Link::N22), n(Link::N12)).expect("validated spec");
    let t = n(Link::N21).clone();
    let l_law = FadingPmf::positive_difference(n(Link::N21), n(Link::N11)).expect("validated spec");
    let cells = cells([&m, &t, &l_law]);

    let prob = |pred: &dyn Fn(&[usize; 3]) -> bool| -> Rational {
        cells.iter().filter(|(_, v)| pred(v)).map(|(len, _)| len.clone()).sum()
    };
    let mut excess = Vec::new();
    let mut interference = Vec::new();
    for layer in 1..=spec.q() {
        let m_tail = diff_tail(n(Link::N22), n(Link::N12), layer).expect("layer in range");
        let l_tail = diff_tail(n(Link::N21), n(Link::N11), layer).expect("layer in range");
        let t_tail = n(Link::N21).tail(layer).expect("layer in range");
        excess.push(IdentityCheck {
            layer,
            coupled: prob(&|v| v[2] < layer && layer <= v[0]),
            closed_form: pos(&m_tail - &l_tail),
        });
        interference.push(IdentityCheck {
            layer,
            coupled: prob(&|v| v[2] < layer && layer <= v[1]),
            closed_form: t_tail - l_tail,
        });
    }
    let ordered = cells.iter().all(|(_, v)| v[2] <= v[1]);
    let marginals_match = [&m, &t, &l_law].iter().enumerate().all(|(i, law)| {
        law.mass().iter().enumerate().all(|(k, p)| prob(&|v| v[i] == k) == *p)
    });
    CouplingReport { excess, interference, ordered, marginals_match }
}
