//! Named reference channels and seeded random channel generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{ChannelSpec, FadingPmf};
use crate::rational::{ratio, Rational};
use crate::regime::{classify, Regime};

/// Largest denominator used by the random generators.
pub const MAX_DENOMINATOR: u32 = 8;
/// Largest layer count used by the random generators.
pub const MAX_Q: usize = 3;

fn pmf(mass: &[(i64, i64)]) -> FadingPmf {
    FadingPmf::new(mass.iter().map(|&(n, d)| ratio(n, d)).collect()).expect("valid pmf")
}

/// Deterministic channel with levels `n11 = n22 = 3`, `n12 = n21 = 2`.
pub fn c_det() -> ChannelSpec {
    constant(3, 3, 2, 2, 3)
}

pub fn c_strong1() -> ChannelSpec {
    ChannelSpec::symmetric_binary(ratio(1, 2), ratio(4, 5)).expect("valid")
}

pub fn c_weak1() -> ChannelSpec {
    ChannelSpec::symmetric_binary(ratio(9, 10), ratio(3, 10)).expect("valid")
}

pub fn c_mod1() -> ChannelSpec {
    ChannelSpec::symmetric_binary(ratio(4, 5), ratio(1, 2)).expect("valid")
}

pub fn all_zero(q: usize) -> ChannelSpec {
    constant(q, 0, 0, 0, 0)
}

pub fn constant(q: usize, n11: usize, n12: usize, n21: usize, n22: usize) -> ChannelSpec {
    ChannelSpec::constant(q, n11, n12, n21, n22).expect("levels within q")
}

/// Two layers: the first is strong at both receivers, the second weak.
pub fn mixed_layers() -> ChannelSpec {
    let direct = pmf(&[(1, 2), (0, 1), (1, 2)]);
    let cross = pmf(&[(1, 2), (1, 4), (1, 4)]);
    ChannelSpec::new(direct.clone(), cross.clone(), cross, direct).expect("valid")
}

/// No cross links at all; two layers.
pub fn interference_free() -> ChannelSpec {
    let n11 = pmf(&[(1, 4), (1, 4), (1, 2)]);
    let n22 = pmf(&[(1, 8), (5, 8), (1, 4)]);
    let zero = FadingPmf::point_mass(2, 0).expect("valid");
    ChannelSpec::new(n11, zero.clone(), zero, n22).expect("valid")
}

/// Uniform random pmf on `{0..q}` with masses `k/den`, `den` drawn from
/// `1..=MAX_DENOMINATOR`.
pub fn random_pmf(rng: &mut impl Rng, q: usize) -> FadingPmf {
    let den = rng.random_range(1..=MAX_DENOMINATOR);
    let mut counts = vec![0i64; q + 1];
    for _ in 0..den {
        counts[rng.random_range(0..=q)] += 1;
    }
    FadingPmf::new(counts.iter().map(|&c| ratio(c, den as i64)).collect()).expect("sums to one")
}

/// Random pmf whose mass is pushed toward level `0` (`low`) or level `q`.
fn skewed_pmf(rng: &mut impl Rng, q: usize, low: bool) -> FadingPmf {
    let den = rng.random_range(1..=MAX_DENOMINATOR);
    let mut counts = vec![0i64; q + 1];
    for _ in 0..den {
        let a = rng.random_range(0..=q);
        let b = rng.random_range(0..=q);
        counts[if low { a.min(b) } else { a.max(b) }] += 1;
    }
    FadingPmf::new(counts.iter().map(|&c| ratio(c, den as i64)).collect()).expect("sums to one")
}

pub fn random_spec(rng: &mut impl Rng) -> ChannelSpec {
    let q = rng.random_range(1..=MAX_Q);
    let mut p = || random_pmf(rng, q);
    ChannelSpec::new(p(), p(), p(), p()).expect("common q")
}

/// Draw candidates until one lands in `regime`.
pub fn random_in_regime(rng: &mut impl Rng, regime: Regime) -> ChannelSpec {
    loop {
        let q = rng.random_range(1..=MAX_Q);
        let spec = match regime {
            Regime::Weak => ChannelSpec::new(
                skewed_pmf(rng, q, false),
                skewed_pmf(rng, q, true),
                skewed_pmf(rng, q, true),
                skewed_pmf(rng, q, false),
            ),
            Regime::Strong => ChannelSpec::new(
                skewed_pmf(rng, q, true),
                skewed_pmf(rng, q, false),
                skewed_pmf(rng, q, false),
                skewed_pmf(rng, q, true),
            ),
            // the strict chain is cheapest to hit with one or two layers
            Regime::Moderate => {
                let q = q.min(2);
                ChannelSpec::new(
                    skewed_pmf(rng, q, false),
                    random_pmf(rng, q),
                    random_pmf(rng, q),
                    skewed_pmf(rng, q, false),
                )
            }
            Regime::Mixed => ChannelSpec::new(
                random_pmf(rng, q),
                random_pmf(rng, q),
                random_pmf(rng, q),
                random_pmf(rng, q),
            ),
        }
        .expect("common q");
        if classify(&spec).regime == regime {
            return spec;
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Twenty fixed channels: the named ones, a few degenerate edge cases and
/// seeded random draws from each regime.
pub fn reference_corpus() -> Vec<(String, ChannelSpec)> {
    let mut out = vec![
        ("c_det".to_string(), c_det()),
        ("c_strong1".to_string(), c_strong1()),
        ("c_weak1".to_string(), c_weak1()),
        ("c_mod1".to_string(), c_mod1()),
        ("all_zero_q2".to_string(), all_zero(2)),
        ("mixed_layers".to_string(), mixed_layers()),
        ("interference_free".to_string(), interference_free()),
        ("det_strong".to_string(), constant(2, 1, 2, 2, 1)),
    ];
    let mut rng = seeded_rng(20);
    for (regime, count) in [(Regime::Strong, 3), (Regime::Weak, 3), (Regime::Moderate, 3), (Regime::Mixed, 3)] {
        for i in 0..count {
            out.push((format!("random_{regime}_{i}"), random_in_regime(&mut rng, regime)));
        }
    }
    out
}

/// Every pmf on `{0, 1, 2}` with masses in `{0, 1/4, 1/2, 3/4, 1}`.
pub fn quarter_pmfs() -> Vec<FadingPmf> {
    let mut out = Vec::new();
    for a in 0..=4i64 {
        for b in 0..=(4 - a) {
            let c = 4 - a - b;
            out.push(FadingPmf::new(vec![ratio(a, 4), ratio(b, 4), ratio(c, 4)]).expect("valid"));
        }
    }
    out
}

/// Rational in `[0, 1]` with denominator at most [`MAX_DENOMINATOR`].
pub fn random_unit(rng: &mut impl Rng) -> Rational {
    let den = rng.random_range(1..=MAX_DENOMINATOR as i64);
    ratio(rng.random_range(0..=den), den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_channels_are_valid() {
        assert_eq!(c_det().q(), 3);
        assert!(c_mod1().is_symmetric());
        assert_eq!(quarter_pmfs().len(), 15);
    }

    #[test]
    fn regime_generators_hit_their_regime() {
        let mut rng = seeded_rng(7);
        for regime in [Regime::Strong, Regime::Weak, Regime::Moderate, Regime::Mixed] {
            for _ in 0..5 {
                assert_eq!(classify(&random_in_regime(&mut rng, regime)).regime, regime);
            }
        }
    }

    #[test]
    fn reference_corpus_has_twenty_entries() {
        let corpus = reference_corpus();
        assert_eq!(corpus.len(), 20);
        assert_eq!(reference_corpus(), corpus);
    }
}
