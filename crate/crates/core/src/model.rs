//! Displaced Poisson word-length law, its uniform-parameter mixture, and the
//! language/genre invariants.
//!
//! A text is described by `lambda0` (mean length in syllables) and `lambda1`
//! (expected length at the head of the rank list). Along the coverage
//! position `t` of the rank spectrum the expected length grows linearly,
//!
//! ```text
//! mean(t) = lambda1 + 2 (lambda0 - lambda1) t,    t in [0, 1]
//! ```
//!
//! and the length at position `t` is `1 + Poisson(m(t))` with
//! `m(t) = max(mean(t) - 1, 0)`. With `t` uniform this makes the Poisson
//! parameter uniform on `[lambda1 - 1, 2 lambda0 - lambda1 - 1]`. Where that
//! interval dips below zero (lambda1 < 1) the mass is assigned to length 1.
//!
//! The invariants are
//!
//! ```text
//! I     = (lambda0 - 1)(lambda1 - lambda1_min)
//! alpha = (lambda0 - lambda1) / (lambda0 - lambda1_min)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lower limit of `lambda1`.
pub const DEFAULT_LAMBDA1_MIN: f64 = 0.5;

/// Widths below this use a second-order expansion instead of the difference
/// of two incomplete gamma values.
const NARROW_WIDTH: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    lambda0: f64,
    lambda1: f64,
    lambda1_min: f64,
}

impl ModelParams {
    /// Requires `lambda0 >= 1` and `lambda1_min <= lambda1 <= lambda0`.
    pub fn new(lambda0: f64, lambda1: f64, lambda1_min: f64) -> Result<Self> {
        if !(lambda0.is_finite() && lambda1.is_finite() && lambda1_min.is_finite()) {
            return Err(Error::domain("model parameters must be finite"));
        }
        if lambda0 < 1.0 {
            return Err(Error::domain(format!("lambda0 = {lambda0} < 1")));
        }
        if lambda1 > lambda0 {
            return Err(Error::domain(format!(
                "lambda1 = {lambda1} exceeds lambda0 = {lambda0}"
            )));
        }
        if lambda1 < lambda1_min {
            return Err(Error::domain(format!(
                "lambda1 = {lambda1} below lambda1_min = {lambda1_min}"
            )));
        }
        Ok(ModelParams {
            lambda0,
            lambda1,
            lambda1_min,
        })
    }

    pub fn with_default_min(lambda0: f64, lambda1: f64) -> Result<Self> {
        Self::new(lambda0, lambda1, DEFAULT_LAMBDA1_MIN)
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda1_min(&self) -> f64 {
        self.lambda1_min
    }

    pub fn is_degenerate(&self) -> bool {
        self.lambda0 == self.lambda1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub i_lang: f64,
    pub alpha: f64,
}

/// Range of the Poisson parameter plus the share of coverage clamped to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureSpec {
    pub m_lo: f64,
    pub m_hi: f64,
    pub t_clamp: f64,
}

impl MixtureSpec {
    pub fn from_params(p: &ModelParams) -> Self {
        let (l0, l1) = (p.lambda0, p.lambda1);
        let t_clamp = if l0 > l1 {
            ((1.0 - l1) / (2.0 * (l0 - l1))).max(0.0)
        } else {
            0.0
        };
        MixtureSpec {
            m_lo: (l1 - 1.0).max(0.0),
            m_hi: 2.0 * l0 - l1 - 1.0,
            t_clamp,
        }
    }
}

const FACTORIALS: [f64; 21] = {
    let mut f = [1.0; 21];
    let mut i = 1;
    while i < 21 {
        f[i] = f[i - 1] * i as f64;
        i += 1;
    }
    f
};

/// `ln(n!)`; exact table up to 20, Stirling series above.
pub fn ln_factorial(n: u32) -> f64 {
    if (n as usize) < FACTORIALS.len() {
        return FACTORIALS[n as usize].ln();
    }
    let x = n as f64 + 1.0;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// Poisson probability of `j` events at rate `m`; `m >= 0` assumed.
fn poisson(j: u32, m: f64) -> f64 {
    if m == 0.0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    if (j as usize) < FACTORIALS.len() {
        (-m).exp() * m.powi(j as i32) / FACTORIALS[j as usize]
    } else {
        (-m + j as f64 * m.ln() - ln_factorial(j)).exp()
    }
}

/// `P(X > j)` for `X ~ Poisson(x)`, i.e. the regularized lower incomplete
/// gamma function `P(j + 1, x)`. Its derivative in `x` is `poisson(j, x)`.
fn poisson_tail_above(j: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x < j as f64 + 1.0 {
        let mut term = poisson(j + 1, x);
        let mut sum = term;
        let mut i = j + 1;
        while term > sum * 1e-17 {
            i += 1;
            term *= x / i as f64;
            sum += term;
        }
        sum
    } else {
        let mut term = (-x).exp();
        let mut cdf = term;
        for i in 1..=j {
            term *= x / i as f64;
            cdf += term;
        }
        (1.0 - cdf).max(0.0)
    }
}

/// Displaced Poisson pmf: `e^-m m^(k-1) / (k-1)!` for `k >= 1`.
pub fn shifted_poisson_pmf(k: u32, m: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain("word length k must be >= 1"));
    }
    if !(m >= 0.0 && m.is_finite()) {
        return Err(Error::domain(format!(
            "Poisson parameter m = {m} must be >= 0"
        )));
    }
    Ok(poisson(k - 1, m))
}

/// Expected word length at coverage position `t`.
pub fn conditional_mean(t: f64, params: &ModelParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(format!(
            "coverage position t = {t} outside [0, 1]"
        )));
    }
    Ok(params.lambda1 + 2.0 * (params.lambda0 - params.lambda1) * t)
}

/// The mixture for fixed parameters, ready for repeated pmf evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Mixture {
    params: ModelParams,
    spec: MixtureSpec,
}

impl Mixture {
    pub fn new(params: ModelParams) -> Self {
        Mixture {
            params,
            spec: MixtureSpec::from_params(&params),
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn spec(&self) -> &MixtureSpec {
        &self.spec
    }

    /// Probability of length `k`; zero for `k = 0`.
    pub fn pmf(&self, k: u32) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let j = k - 1;
        if self.params.is_degenerate() {
            return poisson(j, self.params.lambda0 - 1.0);
        }
        let MixtureSpec {
            m_lo,
            m_hi,
            t_clamp,
        } = self.spec;
        let width = m_hi - m_lo;
        let average = if width < NARROW_WIDTH {
            let c = 0.5 * (m_lo + m_hi);
            let p = |i: i64| if i < 0 { 0.0 } else { poisson(i as u32, c) };
            let second = p(j as i64 - 2) - 2.0 * p(j as i64 - 1) + p(j as i64);
            p(j as i64) + width * width / 24.0 * second
        } else {
            (poisson_tail_above(j, m_hi) - poisson_tail_above(j, m_lo)) / width
        };
        let clamped = if k == 1 { t_clamp } else { 0.0 };
        clamped + (1.0 - t_clamp) * average
    }
}

pub fn mixture_pmf(k: u32, params: &ModelParams) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain("word length k must be >= 1"));
    }
    Ok(Mixture::new(*params).pmf(k))
}

pub fn compute_invariants(params: &ModelParams) -> Result<Invariants> {
    let ModelParams {
        lambda0,
        lambda1,
        lambda1_min,
    } = *params;
    if lambda0 <= lambda1_min {
        return Err(Error::domain(format!(
            "lambda0 = {lambda0} must exceed lambda1_min = {lambda1_min}"
        )));
    }
    Ok(Invariants {
        i_lang: (lambda0 - 1.0) * (lambda1 - lambda1_min),
        alpha: (lambda0 - lambda1) / (lambda0 - lambda1_min),
    })
}

/// Inverse of [`compute_invariants`] for `0 <= alpha < 1`, `I >= 0`.
pub fn params_from_invariants(inv: &Invariants, lambda1_min: f64) -> Result<ModelParams> {
    let Invariants { i_lang, alpha } = *inv;
    if !(i_lang.is_finite() && alpha.is_finite() && lambda1_min.is_finite()) {
        return Err(Error::domain("invariants must be finite"));
    }
    if alpha >= 1.0 {
        return Err(Error::domain(format!(
            "alpha = {alpha} >= 1 has no inverse (I is forced to 0)"
        )));
    }
    if alpha < 0.0 {
        return Err(Error::domain(format!("alpha = {alpha} < 0")));
    }
    if i_lang < 0.0 {
        return Err(Error::domain(format!("I = {i_lang} < 0")));
    }
    // (l0 - 1)(l0 - min)(1 - alpha) = I, larger root.
    let disc = (1.0 - lambda1_min).powi(2) + 4.0 * i_lang / (1.0 - alpha);
    let lambda0 = 0.5 * ((1.0 + lambda1_min) + disc.sqrt());
    let lambda1 = lambda0 - alpha * (lambda0 - lambda1_min);
    ModelParams::new(lambda0, lambda1.min(lambda0), lambda1_min)
}
