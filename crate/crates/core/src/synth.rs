//! Synthetic rank spectra and length samples drawn from the mixture model.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! which is portable and stable across platforms. Uniform variates are the top
//! 53 bits of `next_u64` scaled by 2^-53. Poisson variates use sequential
//! inversion for rates below 10; larger rates are split into equal parts below
//! 10 whose draws are summed, which is exact.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::model::{conditional_mean, ModelParams};
use crate::spectrum::{LengthSpectrum, RankSpectrum};

pub const DEFAULT_ZIPF_EXPONENT: f64 = 1.0;

const INVERSION_LIMIT: f64 = 10.0;
const CONSONANTS: &[u8] = b"bcdfghjklmnpqrstvxz";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub params: ModelParams,
    pub n_tokens: u64,
    pub n_types: usize,
    pub zipf_exponent: f64,
    pub seed: u64,
}

impl SynthConfig {
    pub fn new(params: ModelParams, n_tokens: u64, n_types: usize, seed: u64) -> Self {
        SynthConfig {
            params,
            n_tokens,
            n_types,
            zipf_exponent: DEFAULT_ZIPF_EXPONENT,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_types < 2 {
            return Err(Error::domain("synthetic corpus needs at least 2 types"));
        }
        if self.n_tokens < self.n_types as u64 {
            return Err(Error::domain(format!(
                "n_tokens = {} is smaller than n_types = {}",
                self.n_tokens, self.n_types
            )));
        }
        if !(self.zipf_exponent > 0.0 && self.zipf_exponent.is_finite()) {
            return Err(Error::domain("zipf exponent must be positive"));
        }
        Ok(())
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on [0, 1) with 53 bits of resolution.
pub fn unit_f64<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn poisson_inversion<R: RngCore>(rng: &mut R, m: f64) -> u32 {
    let u = unit_f64(rng);
    let mut k = 0u32;
    let mut p = (-m).exp();
    let mut cdf = p;
    while u >= cdf {
        k += 1;
        p *= m / k as f64;
        cdf += p;
        // cdf can stall just below 1.0 in floating point
        if p == 0.0 || (k as f64 > m && p < f64::EPSILON * 1e-3) {
            break;
        }
    }
    k
}

pub fn sample_poisson<R: RngCore>(rng: &mut R, m: f64) -> u32 {
    if m <= 0.0 {
        return 0;
    }
    if m < INVERSION_LIMIT {
        return poisson_inversion(rng, m);
    }
    let parts = (m / (INVERSION_LIMIT - 1.0)).ceil() as u32;
    let share = m / parts as f64;
    (0..parts).map(|_| poisson_inversion(rng, share)).sum()
}

/// Type frequencies proportional to `r^-s` summing to exactly `n_tokens`,
/// each at least one, non-increasing in rank.
pub fn zipf_frequencies(n_tokens: u64, n_types: usize, exponent: f64) -> Vec<u64> {
    let weights: Vec<f64> = (1..=n_types).map(|r| (r as f64).powf(-exponent)).collect();
    let total: f64 = weights.iter().sum();
    let spare = n_tokens - n_types as u64;
    let quotas: Vec<f64> = weights.iter().map(|w| spare as f64 * w / total).collect();
    let mut freqs: Vec<u64> = quotas.iter().map(|q| 1 + q.floor() as u64).collect();
    let assigned: u64 = freqs.iter().sum::<u64>() - n_types as u64;
    let mut order: Vec<usize> = (0..n_types).collect();
    order.sort_by(|&a, &b| {
        let fa = quotas[a] - quotas[a].floor();
        let fb = quotas[b] - quotas[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for &i in order.iter().take((spare - assigned) as usize) {
        freqs[i] += 1;
    }
    freqs
}

/// Pseudo-word for a type: unique per rank, with exactly `length` vowel
/// clusters under every shipped rule pack (`w<consonant code>a(la)*`).
pub fn type_word(rank: usize, length: u32) -> String {
    let mut code = Vec::new();
    let mut r = rank;
    loop {
        code.push(CONSONANTS[r % CONSONANTS.len()]);
        r /= CONSONANTS.len();
        if r == 0 {
            break;
        }
    }
    code.reverse();
    let mut word = String::with_capacity(2 + code.len() + 2 * length as usize);
    word.push('w');
    word.push_str(std::str::from_utf8(&code).unwrap());
    word.push('a');
    for _ in 1..length {
        word.push_str("la");
    }
    word
}

pub fn generate_rank_spectrum(cfg: &SynthConfig) -> Result<RankSpectrum> {
    cfg.validate()?;
    let freqs = zipf_frequencies(cfg.n_tokens, cfg.n_types, cfg.zipf_exponent);
    let n = cfg.n_tokens as f64;
    let mut rng = rng_from_seed(cfg.seed);
    let mut counts = Vec::with_capacity(freqs.len());
    let mut before = 0u64;
    let mut start = 0;
    while start < freqs.len() {
        let f = freqs[start];
        let end = start + freqs[start..].iter().take_while(|&&g| g == f).count();
        let block = f * (end - start) as u64;
        let t = (before as f64 + block as f64 / 2.0) / n;
        let m = (conditional_mean(t, &cfg.params)? - 1.0).max(0.0);
        for rank in start..end {
            let length = 1 + sample_poisson(&mut rng, m);
            counts.push((type_word(rank, length), f, length));
        }
        before += block;
        start = end;
    }
    RankSpectrum::from_counts(counts)
}

/// Histogram of `n` independent lengths, each at a fresh uniform position.
pub fn sample_lengths(params: &ModelParams, n: u64, seed: u64) -> Result<LengthSpectrum> {
    if n == 0 {
        return Err(Error::domain("sample size must be at least 1"));
    }
    let mut rng = rng_from_seed(seed);
    let mut hist = LengthSpectrum::new();
    for _ in 0..n {
        let u = unit_f64(&mut rng);
        let m = (conditional_mean(u, params)? - 1.0).max(0.0);
        hist.add(1 + sample_poisson(&mut rng, m), 1);
    }
    Ok(hist)
}

/// Plain text realising `spec`: every type repeated `freq` times, shuffled.
pub fn pseudo_corpus(spec: &RankSpectrum, seed: u64) -> String {
    let mut tokens: Vec<&str> = spec
        .entries()
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.word_type.as_str(), e.freq as usize))
        .collect();
    let mut rng = rng_from_seed(seed ^ 0x5eed_c0de);
    for i in (1..tokens.len()).rev() {
        let j = (unit_f64(&mut rng) * (i + 1) as f64) as usize;
        tokens.swap(i, j.min(i));
    }
    let mut out = String::with_capacity(tokens.len() * 8);
    for line in tokens.chunks(16) {
        out.push_str(&line.join(" "));
        out.push_str(".\n");
    }
    out
}
