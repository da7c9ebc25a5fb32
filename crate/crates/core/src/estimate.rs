//! Estimation of `(lambda0, lambda1)` from a rank spectrum, plus a Pearson
//! chi-square check of the fitted mixture against the length histogram.
//!
//! `lambda0` is the token-weighted mean length. `lambda1` is a one-parameter
//! weighted least-squares fit of per-type lengths against the model line with
//! `lambda0` held at its empirical value:
//!
//! ```text
//! l_r ~ lambda1 (1 - 2 t_r) + 2 lambda0 t_r,   weights f_r
//! ```
//!
//! Sums run over equal-frequency blocks (integer length totals inside each
//! block), so the result does not depend on the order of tied types and is
//! unchanged when every frequency is scaled by the same factor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{compute_invariants, Invariants, Mixture, ModelParams, DEFAULT_LAMBDA1_MIN};
use crate::spectrum::{build_rank_spectrum, length_spectrum, LengthSpectrum, RankSpectrum};
use crate::textproc::{LanguageRules, TokenStream};

/// Texts shorter than this are fitted but flagged unreliable.
pub const MIN_RELIABLE_TOKENS: u64 = 100;

/// Default minimum expected count per chi-square bin.
pub const DEFAULT_MIN_EXPECTED: f64 = 5.0;

/// Number of fitted parameters subtracted from the chi-square dof.
const FITTED_PARAMS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub lambda1_min: f64,
    pub min_expected: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            lambda1_min: DEFAULT_LAMBDA1_MIN,
            min_expected: DEFAULT_MIN_EXPECTED,
        }
    }
}

impl FitOptions {
    pub fn with_lambda1_min(lambda1_min: f64) -> Self {
        FitOptions {
            lambda1_min,
            ..Default::default()
        }
    }
}

/// One observation for the head-value regression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionPoint {
    pub t: f64,
    pub length: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambda1Estimate {
    pub value: f64,
    /// Regression value before clipping into `[lambda1_min, lambda0]`.
    pub raw: f64,
    pub clipped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    #[serde(flatten)]
    pub params: ModelParams,
    #[serde(flatten)]
    pub invariants: Invariants,
    pub chi_square: f64,
    pub dof: u32,
    pub n_tokens: u64,
    pub n_types: u64,
    pub clipped: bool,
    pub unreliable: bool,
}

pub fn estimate_lambda0(spec: &RankSpectrum) -> Result<f64> {
    if spec.total_tokens() == 0 {
        return Err(Error::EmptyText);
    }
    let syllables: u64 = spec
        .entries()
        .iter()
        .map(|e| e.freq * e.length as u64)
        .sum();
    Ok(syllables as f64 / spec.total_tokens() as f64)
}

/// Weighted least-squares head value from free-form points; no clipping.
///
/// Fails with [`Error::DegenerateSpectrum`] when every point sits at `t = 0.5`.
pub fn fit_head_value(points: &[RegressionPoint], lambda0: f64) -> Result<f64> {
    let mut num = 0.0;
    let mut den = 0.0;
    for p in points {
        let x = 1.0 - 2.0 * p.t;
        num += p.weight * x * (p.length - 2.0 * lambda0 * p.t);
        den += p.weight * x * x;
    }
    if den == 0.0 {
        return Err(Error::DegenerateSpectrum);
    }
    Ok(num / den)
}

/// Block-aggregated regression points: one per distinct frequency, with the
/// block's token count as weight and its token-weighted mean length.
fn block_points(spec: &RankSpectrum) -> Vec<RegressionPoint> {
    let entries = spec.entries();
    let mut points = Vec::with_capacity(spec.block_count());
    let mut start = 0;
    while start < entries.len() {
        let freq = entries[start].freq;
        let block = entries[start..].iter().take_while(|e| e.freq == freq);
        let (mut tokens, mut syllables, mut n) = (0u64, 0u64, 0usize);
        for e in block {
            tokens += e.freq;
            syllables += e.freq * e.length as u64;
            n += 1;
        }
        points.push(RegressionPoint {
            t: entries[start].t,
            length: syllables as f64 / tokens as f64,
            weight: tokens as f64,
        });
        start += n;
    }
    points
}

pub fn estimate_lambda1(
    spec: &RankSpectrum,
    lambda0: f64,
    lambda1_min: f64,
) -> Result<Lambda1Estimate> {
    if spec.total_tokens() == 0 {
        return Err(Error::EmptyText);
    }
    if lambda1_min > lambda0 {
        return Err(Error::domain(format!(
            "lambda1_min = {lambda1_min} exceeds lambda0 = {lambda0}"
        )));
    }
    let raw = fit_head_value(&block_points(spec), lambda0)?;
    let value = raw.clamp(lambda1_min, lambda0);
    Ok(Lambda1Estimate {
        value,
        raw,
        clipped: value != raw,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: u32,
    pub bins: usize,
}

/// Pearson chi-square with adjacent length bins merged until every expected
/// count reaches `min_expected`. The last bin is open-ended.
pub fn goodness_of_fit_with(
    obs: &LengthSpectrum,
    params: &ModelParams,
    min_expected: f64,
) -> Result<ChiSquare> {
    let n = obs.total_tokens();
    if n == 0 {
        return Err(Error::EmptyText);
    }
    let n = n as f64;
    let mix = Mixture::new(*params);
    let horizon = (2.0 * params.lambda0() + 20.0).ceil() as u32;
    let last = horizon.max(obs.max_length().unwrap_or(1));

    // (observed, expected) per length 1..last, last bin collecting the tail
    let mut raw: Vec<(f64, f64)> = Vec::with_capacity(last as usize);
    let mut cumulative = 0.0;
    for k in 1..last {
        let p = mix.pmf(k);
        cumulative += p;
        raw.push((obs.count(k) as f64, n * p));
    }
    let tail_obs: u64 = obs.iter().filter(|&(k, _)| k >= last).map(|(_, c)| c).sum();
    raw.push((tail_obs as f64, n * (1.0 - cumulative).max(0.0)));

    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (o, e) in raw {
        acc.0 += o;
        acc.1 += e;
        if acc.1 >= min_expected {
            bins.push(acc);
            acc = (0.0, 0.0);
        }
    }
    match bins.last_mut() {
        Some(b) => {
            b.0 += acc.0;
            b.1 += acc.1;
        }
        None => bins.push(acc),
    }

    let statistic = bins
        .iter()
        .map(|&(o, e)| {
            if e > 0.0 {
                (o - e).powi(2) / e
            } else if o > 0.0 {
                f64::INFINITY
            } else {
                0.0
            }
        })
        .sum();
    let dof = bins.len().saturating_sub(1 + FITTED_PARAMS).max(1) as u32;
    Ok(ChiSquare {
        statistic,
        dof,
        bins: bins.len(),
    })
}

pub fn goodness_of_fit(obs: &LengthSpectrum, params: &ModelParams) -> Result<(f64, u32)> {
    let c = goodness_of_fit_with(obs, params, DEFAULT_MIN_EXPECTED)?;
    Ok((c.statistic, c.dof))
}

pub fn fit_spectrum(spec: &RankSpectrum, opts: &FitOptions) -> Result<FitResult> {
    let lambda0 = estimate_lambda0(spec)?;
    let lambda1 = estimate_lambda1(spec, lambda0, opts.lambda1_min)?;
    let params = ModelParams::new(lambda0, lambda1.value, opts.lambda1_min)?;
    let invariants = compute_invariants(&params)?;
    let chi = goodness_of_fit_with(&length_spectrum(spec), &params, opts.min_expected)?;
    Ok(FitResult {
        params,
        invariants,
        chi_square: chi.statistic,
        dof: chi.dof,
        n_tokens: spec.total_tokens(),
        n_types: spec.total_types() as u64,
        clipped: lambda1.clipped,
        unreliable: spec.total_tokens() < MIN_RELIABLE_TOKENS,
    })
}

pub fn fit_text(
    stream: &TokenStream,
    rules: &LanguageRules,
    lambda1_min: f64,
) -> Result<FitResult> {
    let spec = build_rank_spectrum(stream, rules)?;
    fit_spectrum(&spec, &FitOptions::with_lambda1_min(lambda1_min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::mixture_pmf;

    fn pt(t: f64, length: f64, weight: f64) -> RegressionPoint {
        RegressionPoint { t, length, weight }
    }

    /// Brute-force minimiser of the weighted squared error over a fine grid,
    /// refined twice; independent of the closed-form normal equation.
    fn grid_head_value(points: &[RegressionPoint], lambda0: f64) -> f64 {
        let sse = |l1: f64| -> f64 {
            points
                .iter()
                .map(|p| p.weight * (p.length - (l1 + 2.0 * (lambda0 - l1) * p.t)).powi(2))
                .sum()
        };
        let (mut lo, mut hi) = (-5.0, 5.0);
        for _ in 0..4 {
            let step = (hi - lo) / 1000.0;
            let best = (0..=1000)
                .map(|i| lo + i as f64 * step)
                .min_by(|a, b| sse(*a).total_cmp(&sse(*b)))
                .unwrap();
            lo = best - step;
            hi = best + step;
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn lambda0_examples() {
        let s = RankSpectrum::from_counts(vec![
            ("a".into(), 3, 1),
            ("bb".into(), 2, 2),
            ("c".into(), 1, 1),
        ])
        .unwrap();
        assert!((estimate_lambda0(&s).unwrap() - 8.0 / 6.0).abs() < 1e-15);
        let one = RankSpectrum::from_counts(vec![("ab".into(), 10, 2)]).unwrap();
        assert_eq!(estimate_lambda0(&one).unwrap(), 2.0);
    }

    #[test]
    fn exact_line_recovers_head_value() {
        let (l0, l1) = (2.0, 1.0);
        let points: Vec<_> = [0.05, 0.2, 0.4, 0.7, 0.95]
            .iter()
            .map(|&t| pt(t, l1 + 2.0 * (l0 - l1) * t, 1.0 + 10.0 * t))
            .collect();
        assert!((fit_head_value(&points, l0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_block_closed_form() {
        let points = [pt(0.25, 1.0, 3.0), pt(0.75, 2.0, 3.0)];
        let oracle = grid_head_value(&points, 1.5);
        assert!((oracle - 0.5).abs() < 1e-6);
        assert!((fit_head_value(&points, 1.5).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn regression_matches_grid_oracle() {
        let points = [
            pt(0.1, 1.0, 40.0),
            pt(0.3, 2.0, 12.0),
            pt(0.6, 1.0, 5.0),
            pt(0.9, 3.0, 2.0),
        ];
        let closed = fit_head_value(&points, 1.4).unwrap();
        assert!((closed - grid_head_value(&points, 1.4)).abs() < 1e-6);
    }

    #[test]
    fn integer_spectrum_on_the_line() {
        // two blocks at t = 0.25 and 0.75 on l = 1 + 4t (lambda0 = 3, lambda1 = 1)
        let s = RankSpectrum::from_counts(vec![
            ("a".into(), 6, 2),
            ("b".into(), 3, 4),
            ("c".into(), 3, 4),
        ])
        .unwrap();
        let l0 = estimate_lambda0(&s).unwrap();
        assert_eq!(l0, 3.0);
        let est = estimate_lambda1(&s, l0, 0.5).unwrap();
        assert_eq!(est.value, 1.0);
        assert!(!est.clipped);
    }

    #[test]
    fn single_block_is_degenerate() {
        let s = RankSpectrum::from_counts(vec![("ab".into(), 7, 2)]).unwrap();
        assert!(matches!(
            estimate_lambda1(&s, 2.0, 0.5),
            Err(Error::DegenerateSpectrum)
        ));
        let rules = LanguageRules::builtin("de").unwrap();
        let stream = TokenStream::new("x", vec!["haus".to_string(); 20]);
        assert!(fit_text(&stream, &rules, 0.5).is_err());
        let stream = TokenStream::new("x", vec!["gute".to_string(); 20]);
        assert!(matches!(
            fit_text(&stream, &rules, 0.5),
            Err(Error::DegenerateSpectrum)
        ));
    }

    #[test]
    fn clipping_is_flagged() {
        // long head, short tail: regression overshoots lambda0
        let s = RankSpectrum::from_counts(vec![("a".into(), 10, 3), ("b".into(), 1, 1)]).unwrap();
        let l0 = estimate_lambda0(&s).unwrap();
        let est = estimate_lambda1(&s, l0, 0.5).unwrap();
        assert!(est.raw > l0);
        assert_eq!(est.value, l0);
        assert!(est.clipped);
    }

    #[test]
    fn residuals_are_orthogonal() {
        let s = RankSpectrum::from_counts(vec![
            ("a".into(), 50, 1),
            ("b".into(), 20, 1),
            ("c".into(), 20, 2),
            ("d".into(), 7, 2),
            ("e".into(), 3, 3),
            ("f".into(), 1, 4),
        ])
        .unwrap();
        let l0 = estimate_lambda0(&s).unwrap();
        let est = estimate_lambda1(&s, l0, 0.5).unwrap();
        assert!(!est.clipped);
        let resid: f64 = s
            .entries()
            .iter()
            .map(|e| {
                let x = 1.0 - 2.0 * e.t;
                e.freq as f64 * x * (e.length as f64 - est.value * x - 2.0 * l0 * e.t)
            })
            .sum();
        assert!(resid.abs() < 1e-9, "residual {resid}");
    }

    #[test]
    fn perfect_fit_has_small_chi_square() {
        let params = ModelParams::with_default_min(2.0, 1.0).unwrap();
        let n = 1_000_000.0;
        let obs: LengthSpectrum = (1..=25)
            .map(|k| (k, (n * mixture_pmf(k, &params).unwrap()).round() as u64))
            .filter(|&(_, c)| c > 0)
            .collect();
        let (chi, dof) = goodness_of_fit(&obs, &params).unwrap();
        assert!(chi < 0.5, "chi = {chi}");
        assert!(dof >= 1);
    }

    #[test]
    fn gross_misfit_grows_with_n() {
        let params = ModelParams::with_default_min(3.0, 2.0).unwrap();
        for n in [100u64, 1000, 10_000] {
            let obs: LengthSpectrum = [(1, n)].into_iter().collect();
            let (chi, _) = goodness_of_fit(&obs, &params).unwrap();
            assert!(chi > n as f64, "n = {n}, chi = {chi}");
        }
    }

    #[test]
    fn bins_meet_threshold_and_dof_floor() {
        let params = ModelParams::with_default_min(1.5, 1.0).unwrap();
        let tiny: LengthSpectrum = [(1, 3), (2, 1)].into_iter().collect();
        let c = goodness_of_fit_with(&tiny, &params, 5.0).unwrap();
        assert_eq!(c.bins, 1);
        assert_eq!(c.dof, 1);
        assert!(c.statistic.abs() < 1e-12);
        assert!(goodness_of_fit(&LengthSpectrum::new(), &params).is_err());
    }

    #[test]
    fn determinism() {
        let rules = LanguageRules::builtin("de").unwrap();
        let text = "Der Hund und die Katze. Der Hund schläft, die Katze nicht. Wissenschaft!";
        let stream = crate::textproc::tokenize_stream("d", text, &rules);
        let a = fit_text(&stream, &rules, 0.5).unwrap();
        let b = fit_text(&stream, &rules, 0.5).unwrap();
        assert_eq!(a, b);
        assert!(a.unreliable);
        assert!(a.params.lambda0() >= 1.0);
    }

    #[test]
    fn fit_result_json_is_flat() {
        let s = RankSpectrum::from_counts(vec![("a".into(), 6, 2), ("b".into(), 3, 4)]).unwrap();
        let fit = fit_spectrum(&s, &FitOptions::default()).unwrap();
        let v = serde_json::to_value(&fit).unwrap();
        for key in [
            "lambda0",
            "lambda1",
            "lambda1_min",
            "i_lang",
            "alpha",
            "chi_square",
            "dof",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
