//! Rank spectra (types by descending frequency) and token length histograms.
//!
//! Each type gets a coverage position `t`: the token-mass midpoint of its
//! equal-frequency block. A block is a maximal run of types with the same
//! frequency; all of its types share one `t`, so the order of ties never
//! affects anything computed from `t`.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use crate::error::{Error, Result};
use crate::textproc::{count_syllables, LanguageRules, TokenStream};

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub word_type: String,
    pub freq: u64,
    /// Length in syllables.
    pub length: u32,
    /// Coverage position in (0, 1).
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankSpectrum {
    entries: Vec<RankEntry>,
    total_tokens: u64,
}

impl RankSpectrum {
    /// Builds a spectrum from `(word_type, freq, length)` triples.
    ///
    /// Types must be distinct with `freq >= 1` and `length >= 1`.
    pub fn from_counts<I>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, u64, u32)>,
    {
        let mut entries: Vec<RankEntry> = counts
            .into_iter()
            .map(|(word_type, freq, length)| RankEntry {
                word_type,
                freq,
                length,
                t: 0.0,
            })
            .collect();
        if entries.is_empty() {
            return Err(Error::EmptyText);
        }
        if entries.iter().any(|e| e.freq == 0 || e.length == 0) {
            return Err(Error::domain("rank entries need freq >= 1 and length >= 1"));
        }
        entries.sort_by(|a, b| {
            b.freq
                .cmp(&a.freq)
                .then_with(|| a.word_type.cmp(&b.word_type))
        });
        if entries.windows(2).any(|w| w[0].word_type == w[1].word_type) {
            return Err(Error::domain("duplicate word type in rank spectrum"));
        }

        let total_tokens: u64 = entries.iter().map(|e| e.freq).sum();
        let n = total_tokens as f64;
        let mut before = 0u64;
        let mut start = 0;
        while start < entries.len() {
            let freq = entries[start].freq;
            let end = start
                + entries[start..]
                    .iter()
                    .take_while(|e| e.freq == freq)
                    .count();
            let block = freq * (end - start) as u64;
            let t = (before as f64 + block as f64 / 2.0) / n;
            for e in &mut entries[start..end] {
                e.t = t;
            }
            before += block;
            start = end;
        }

        Ok(RankSpectrum {
            entries,
            total_tokens,
        })
    }

    pub fn entries(&self) -> &[RankEntry] {
        &self.entries
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn total_types(&self) -> usize {
        self.entries.len()
    }

    /// Number of distinct frequency values (equal-frequency blocks).
    pub fn block_count(&self) -> usize {
        1 + self
            .entries
            .windows(2)
            .filter(|w| w[0].freq != w[1].freq)
            .count()
    }

    /// CSV with columns `rank,word_type,freq,length,t`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["rank", "word_type", "freq", "length", "t"])?;
        for (i, e) in self.entries.iter().enumerate() {
            w.write_record([
                (i + 1).to_string(),
                e.word_type.clone(),
                e.freq.to_string(),
                e.length.to_string(),
                format!("{:.6}", e.t),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn build_rank_spectrum(stream: &TokenStream, rules: &LanguageRules) -> Result<RankSpectrum> {
    if stream.is_empty() {
        return Err(Error::EmptyText);
    }
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for tok in &stream.tokens {
        *counts.entry(tok.as_str()).or_default() += 1;
    }
    RankSpectrum::from_counts(
        counts
            .into_iter()
            .map(|(w, f)| (w.to_string(), f, count_syllables(w, rules))),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LengthSpectrum {
    counts: BTreeMap<u32, u64>,
    total_tokens: u64,
}

impl LengthSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, length: u32, count: u64) {
        assert!(length >= 1, "word length must be at least one syllable");
        if count > 0 {
            *self.counts.entry(length).or_default() += count;
            self.total_tokens += count;
        }
    }

    pub fn count(&self, length: u32) -> u64 {
        self.counts.get(&length).copied().unwrap_or(0)
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn max_length(&self) -> Option<u32> {
        self.counts.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().map(|(&k, &n)| (k, n))
    }

    pub fn mean(&self) -> Option<f64> {
        (self.total_tokens > 0).then(|| {
            self.iter().map(|(k, n)| k as f64 * n as f64).sum::<f64>() / self.total_tokens as f64
        })
    }
}

impl FromIterator<(u32, u64)> for LengthSpectrum {
    fn from_iter<I: IntoIterator<Item = (u32, u64)>>(iter: I) -> Self {
        let mut s = LengthSpectrum::new();
        for (k, n) in iter {
            s.add(k, n);
        }
        s
    }
}

pub fn length_spectrum(spec: &RankSpectrum) -> LengthSpectrum {
    spec.entries.iter().map(|e| (e.length, e.freq)).collect()
}
