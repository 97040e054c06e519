//! Monte Carlo simulation of the physical channel.
//!
//! Samples are split into fixed chunks of [`CHUNK_SIZE`]. Chunk `k` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` switched to stream `k`, and chunk tallies
//! are integer counts summed in chunk order, so results depend only on
//! `(seed, samples)` and never on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use num_traits::ToPrimitive;

use crate::channel::{diff_tail, expect_max, expect_pos_diff, ChannelSpec, FadingPmf, Link};
use crate::rational::{self, Rational};
use crate::{Error, Result};

pub const CHUNK_SIZE: u64 = 1 << 16;

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub spec: ChannelSpec,
    pub samples: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(spec: ChannelSpec, samples: u64, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::Range("need at least one sample".into()));
        }
        Ok(Self { spec, samples, seed })
    }
}

/// Inverse-CDF sampler for one link. Uses integer thresholds over the common
/// denominator when it fits in a `u64`, so exact pmfs are sampled exactly.
#[derive(Debug, Clone)]
enum LevelSampler {
    Exact { den: u64, cum: Vec<u64> },
    Float { cum: Vec<f64> },
}

impl LevelSampler {
    fn new(pmf: &FadingPmf) -> Self {
        let den = pmf
            .mass()
            .iter()
            .try_fold(1u64, |acc, p| {
                let d = p.denom().to_u64()?;
                let g = num_integer::gcd(acc, d);
                (acc / g).checked_mul(d)
            })
            .filter(|&d| d <= 1 << 62);
        if let Some(den) = den {
            let mut acc = 0u64;
            let cum = pmf
                .mass()
                .iter()
                .map(|p| {
                    acc += (p * Rational::from_integer(den.into())).to_integer().to_u64().expect("fits");
                    acc
                })
                .collect();
            LevelSampler::Exact { den, cum }
        } else {
            let mut acc = 0.0;
            let cum = pmf
                .mass()
                .iter()
                .map(|p| {
                    acc += rational::to_f64(p);
                    acc
                })
                .collect();
            LevelSampler::Float { cum }
        }
    }

    fn draw(&self, rng: &mut impl Rng) -> usize {
        match self {
            LevelSampler::Exact { den, cum } => {
                let u = rng.random_range(0..*den);
                cum.partition_point(|&c| c <= u)
            }
            LevelSampler::Float { cum } => {
                let u: f64 = rng.random();
                cum.partition_point(|&c| c <= u).min(cum.len() - 1)
            }
        }
    }
}

fn link_samplers(spec: &ChannelSpec) -> [LevelSampler; 4] {
    Link::ALL.map(|l| LevelSampler::new(spec.link(l)))
}

fn draw_levels(samplers: &[LevelSampler; 4], rng: &mut impl Rng) -> [usize; 4] {
    [samplers[0].draw(rng), samplers[1].draw(rng), samplers[2].draw(rng), samplers[3].draw(rng)]
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

fn chunk_count(samples: u64) -> u64 {
    samples.div_ceil(CHUNK_SIZE)
}

fn chunk_len(samples: u64, chunk: u64) -> u64 {
    CHUNK_SIZE.min(samples - chunk * CHUNK_SIZE)
}

/// `v` moved down by `q - level` positions with zeros shifted in at the top;
/// index 0 is the most significant layer.
fn shift_down(v: &[u8], q: usize, level: usize) -> impl Iterator<Item = u8> + '_ {
    let s = q - level;
    (0..q).map(move |i| if i >= s { v[i - s] & 1 } else { 0 })
}

/// Output of a receiver seeing `own` through `own_level` layers and `cross`
/// through `cross_level` layers, both aligned at the least significant end.
pub fn receive(q: usize, own: &[u8], own_level: usize, cross: &[u8], cross_level: usize) -> Vec<u8> {
    shift_down(own, q, own_level).zip(shift_down(cross, q, cross_level)).map(|(a, b)| a ^ b).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimSample {
    /// `[N11, N12, N21, N22]`
    pub levels: [usize; 4],
    pub y: Vec<u8>,
    pub z: Vec<u8>,
}

/// One channel use per sample with fixed input vectors `w` (user 1) and `x`
/// (user 2).
pub fn simulate_channel(cfg: &SimConfig, w: &[u8], x: &[u8]) -> Result<Vec<SimSample>> {
    let q = cfg.spec.q();
    if w.len() != q || x.len() != q {
        return Err(Error::Spec(format!(
            "input lengths {} and {} do not match q = {q}",
            w.len(),
            x.len()
        )));
    }
    let samplers = link_samplers(&cfg.spec);
    let chunks: Vec<Vec<SimSample>> = (0..chunk_count(cfg.samples))
        .into_par_iter()
        .map(|k| {
            let mut rng = chunk_rng(cfg.seed, k);
            (0..chunk_len(cfg.samples, k))
                .map(|_| {
                    let levels = draw_levels(&samplers, &mut rng);
                    let [n11, n12, n21, n22] = levels;
                    SimSample { levels, y: receive(q, w, n11, x, n21), z: receive(q, x, n22, w, n12) }
                })
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// A scalar statistic of the four levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Tail(Link, usize),
    /// `P(A − B >= l)`
    DiffTail(Link, Link, usize),
    Mean(Link),
    /// `E (A − B)^+`
    PosDiff(Link, Link),
    /// `E max(A, B)`
    Max(Link, Link),
}

const DIFF_PAIRS: [(Link, Link); 4] =
    [(Link::N11, Link::N21), (Link::N21, Link::N11), (Link::N22, Link::N12), (Link::N12, Link::N22)];
const MAX_PAIRS: [(Link, Link); 2] = [(Link::N11, Link::N21), (Link::N22, Link::N12)];

impl Quantity {
    /// Every statistic the exact model produces, in a fixed order.
    pub fn all(q: usize) -> Vec<Quantity> {
        let mut out = Vec::new();
        for link in Link::ALL {
            out.extend((1..=q).map(|l| Quantity::Tail(link, l)));
        }
        for (a, b) in DIFF_PAIRS {
            out.extend((1..=q).map(|l| Quantity::DiffTail(a, b, l)));
        }
        out.extend(Link::ALL.map(Quantity::Mean));
        out.extend(DIFF_PAIRS.map(|(a, b)| Quantity::PosDiff(a, b)));
        out.extend(MAX_PAIRS.map(|(a, b)| Quantity::Max(a, b)));
        out
    }

    pub fn name(&self) -> String {
        match self {
            Quantity::Tail(a, l) => format!("P({}>={l})", a.name()),
            Quantity::DiffTail(a, b, l) => format!("P({}-{}>={l})", a.name(), b.name()),
            Quantity::Mean(a) => format!("E {}", a.name()),
            Quantity::PosDiff(a, b) => format!("E({}-{})^+", a.name(), b.name()),
            Quantity::Max(a, b) => format!("E max({},{})", a.name(), b.name()),
        }
    }

    fn sample(&self, levels: &[usize; 4]) -> u64 {
        let n = |link: &Link| levels[*link as usize];
        let v = match self {
            Quantity::Tail(a, l) => usize::from(n(a) >= *l),
            Quantity::DiffTail(a, b, l) => usize::from(n(a) >= n(b) + l),
            Quantity::Mean(a) => n(a),
            Quantity::PosDiff(a, b) => n(a).saturating_sub(n(b)),
            Quantity::Max(a, b) => n(a).max(n(b)),
        };
        v as u64
    }

    pub fn exact(&self, spec: &ChannelSpec) -> Rational {
        let p = |link: &Link| spec.link(*link);
        match self {
            Quantity::Tail(a, l) => p(a).tail(*l).expect("layer in range"),
            Quantity::DiffTail(a, b, l) => diff_tail(p(a), p(b), *l).expect("layer in range"),
            Quantity::Mean(a) => p(a).expect(),
            Quantity::PosDiff(a, b) => expect_pos_diff(p(a), p(b)).expect("validated spec"),
            Quantity::Max(a, b) => expect_max(p(a), p(b)).expect("validated spec"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub name: String,
    #[serde(serialize_with = "crate::export::serialize_rational")]
    pub exact: Rational,
    pub mean: f64,
    pub std_err: f64,
}

impl Estimate {
    pub fn abs_error(&self) -> f64 {
        (self.mean - rational::to_f64(&self.exact)).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McStats {
    pub samples: u64,
    pub seed: u64,
    pub estimates: Vec<Estimate>,
}

impl McStats {
    pub fn get(&self, name: &str) -> Option<&Estimate> {
        self.estimates.iter().find(|e| e.name == name)
    }

    pub fn max_abs_error(&self) -> f64 {
        self.estimates.iter().map(Estimate::abs_error).fold(0.0, f64::max)
    }
}

/// Empirical value and standard error of every [`Quantity`].
pub fn mc_estimate_stats(cfg: &SimConfig) -> McStats {
    let quantities = Quantity::all(cfg.spec.q());
    let samplers = link_samplers(&cfg.spec);
    let tallies: Vec<(Vec<u64>, Vec<u64>)> = (0..chunk_count(cfg.samples))
        .into_par_iter()
        .map(|k| {
            let mut rng = chunk_rng(cfg.seed, k);
            let mut sum = vec![0u64; quantities.len()];
            let mut sum_sq = vec![0u64; quantities.len()];
            for _ in 0..chunk_len(cfg.samples, k) {
                let levels = draw_levels(&samplers, &mut rng);
                for (i, quantity) in quantities.iter().enumerate() {
                    let v = quantity.sample(&levels);
                    sum[i] += v;
                    sum_sq[i] += v * v;
                }
            }
            (sum, sum_sq)
        })
        .collect();
    let mut sum = vec![0u64; quantities.len()];
    let mut sum_sq = vec![0u64; quantities.len()];
    for (s, s2) in tallies {
        for i in 0..quantities.len() {
            sum[i] += s[i];
            sum_sq[i] += s2[i];
        }
    }
    let n = cfg.samples as f64;
    let estimates = quantities
        .iter()
        .enumerate()
        .map(|(i, quantity)| {
            let mean = sum[i] as f64 / n;
            let var = (sum_sq[i] as f64 / n - mean * mean).max(0.0);
            Estimate { name: quantity.name(), exact: quantity.exact(&cfg.spec), mean, std_err: (var / n).sqrt() }
        })
        .collect();
    McStats { samples: cfg.samples, seed: cfg.seed, estimates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn alignment_example() {
        assert_eq!(receive(2, &[1, 0], 2, &[1, 1], 1), vec![1, 1]);
        assert_eq!(receive(3, &[1, 1, 0], 1, &[0, 0, 0], 0), vec![0, 0, 1]);
    }

    #[test]
    fn full_levels_xor_inputs() {
        let cfg = SimConfig::new(corpus::constant(3, 3, 3, 3, 3), 10, 1).unwrap();
        for s in simulate_channel(&cfg, &[1, 0, 1], &[1, 1, 0]).unwrap() {
            assert_eq!(s.y, vec![0, 1, 1]);
            assert_eq!(s.z, vec![0, 1, 1]);
        }
    }

    #[test]
    fn no_cross_links_decouple() {
        let spec = corpus::interference_free();
        let cfg = SimConfig::new(spec, 500, 3).unwrap();
        let a = simulate_channel(&cfg, &[1, 1], &[0, 0]).unwrap();
        let b = simulate_channel(&cfg, &[1, 1], &[1, 1]).unwrap();
        for (s, t) in a.iter().zip(&b) {
            assert_eq!(s.y, t.y);
            assert_eq!(s.y.iter().filter(|&&v| v == 1).count(), s.levels[0]);
        }
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let cfg = SimConfig::new(corpus::c_det(), 1, 0).unwrap();
        assert!(matches!(simulate_channel(&cfg, &[1], &[1, 0, 0]), Err(Error::Spec(_))));
        assert!(SimConfig::new(corpus::c_det(), 0, 0).is_err());
    }

    #[test]
    fn point_masses_have_zero_variance() {
        let cfg = SimConfig::new(corpus::c_det(), 1000, 9).unwrap();
        let stats = mc_estimate_stats(&cfg);
        for e in &stats.estimates {
            assert_eq!(e.abs_error(), 0.0, "{}", e.name);
            assert_eq!(e.std_err, 0.0);
        }
    }

    #[test]
    fn same_seed_same_estimates() {
        let cfg = SimConfig::new(corpus::c_mod1(), 200_000, 5).unwrap();
        assert_eq!(mc_estimate_stats(&cfg), mc_estimate_stats(&cfg));
        let other = SimConfig::new(corpus::c_mod1(), 200_000, 6).unwrap();
        assert_ne!(mc_estimate_stats(&cfg), mc_estimate_stats(&other));
    }

    #[test]
    fn samples_in_order_across_chunks() {
        let spec = corpus::c_weak1();
        let long = simulate_channel(&SimConfig::new(spec.clone(), CHUNK_SIZE + 10, 2).unwrap(), &[1], &[1]).unwrap();
        let short = simulate_channel(&SimConfig::new(spec, 10, 2).unwrap(), &[1], &[1]).unwrap();
        assert_eq!(&long[..10], &short[..]);
    }
}
