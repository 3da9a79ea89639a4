//! Decoder error probabilities from enumerators.
//!
//! Bounded-distance (BM) curves use the q-ary symmetric channel with the
//! all-zero word transmitted; the channel symbol error rate comes from BPSK
//! over AWGN on the binary image. Averaged-binary ML curves use a pluggable
//! pairwise term, the union bound by default.
//!
//! Exact enumerator values are converted to `f64` only when they multiply a
//! probability, and sums are accumulated smallest term first.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::binary_avg::{avg_binary_pwgf, bits_per_symbol};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::mds_enum::{pwgf, MdsParams};
use crate::poly::{Coefficient, Poly};

/// Gaussian tail `Q(x) = erfc(x / √2) / 2`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelPoint {
    pub gamma_db: f64,
    pub p_bit: f64,
    pub p_symbol: f64,
    pub q: u64,
    pub m: u32,
}

/// BPSK at `E_b/N_0 = gamma_db` with rate `k/n`, `m` bits per symbol.
pub fn channel_map(gamma_db: f64, n: usize, k: usize, m: u32) -> ChannelPoint {
    let gamma = 10f64.powf(gamma_db / 10.0);
    let rate = k as f64 / n as f64;
    let p_bit = q_function((2.0 * rate * gamma).sqrt());
    let p_symbol = if m == 1 { p_bit } else { -(m as f64 * (-p_bit).ln_1p()).exp_m1() };
    ChannelPoint { gamma_db, p_bit, p_symbol, q: 1u64 << m, m }
}

fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        0.0
    } else {
        binomial(n as u64, k as u64).to_f64().unwrap_or(f64::INFINITY)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParamOutOfRange(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Sum of nonnegative terms, smallest first.
fn ascending_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.into_iter().sum()
}

/// Probability that the received word is at distance exactly `t` from a
/// fixed codeword of weight `h`.
pub fn p_t_h(n: usize, q: u64, h: usize, t: usize, p: f64) -> Result<f64> {
    if h > n || t > n || q < 2 {
        return Err(Error::ParamOutOfRange(format!("P_t^h with n={n}, q={q}, h={h}, t={t}")));
    }
    check_probability(p)?;
    Ok(p_t_h_unchecked(n, q, h, t, p))
}

fn p_t_h_unchecked(n: usize, q: u64, h: usize, t: usize, p: f64) -> f64 {
    // a: positions in the support hit by the one wrong value that makes them
    // zero; b = t - h + a: positions outside the support that are in error.
    let pw = p / (q - 1) as f64;
    let lo = h.saturating_sub(t);
    let hi = h.min(n - t);
    let terms = (lo..=hi)
        .filter_map(|a| {
            let b = t + a - h;
            (b <= n - h).then(|| {
                binom_f64(h, a)
                    * pw.powi(a as i32)
                    * (1.0 - pw).powi((h - a) as i32)
                    * binom_f64(n - h, b)
                    * p.powi(b as i32)
                    * (1.0 - p).powi((n - t - a) as i32)
            })
        })
        .collect();
    ascending_sum(terms)
}

fn tau(d: usize) -> usize {
    d.saturating_sub(1) / 2
}

/// `Σ_{h=d}^{n} W(h) Σ_{t=0}^{τ} P_t^h` for arbitrary per-weight multipliers.
pub fn bm_sum(weights: &[f64], n: usize, d: usize, q: u64, p: f64) -> Result<f64> {
    if weights.len() != n + 1 || q < 2 || d == 0 {
        return Err(Error::ParamOutOfRange(format!(
            "{} weights for n={n}, d={d}, q={q}",
            weights.len()
        )));
    }
    check_probability(p)?;
    let t_max = tau(d);
    let mut terms = Vec::new();
    for (h, &w) in weights.iter().enumerate().skip(d) {
        if w == 0.0 {
            continue;
        }
        for t in 0..=t_max.min(n) {
            terms.push(w * p_t_h_unchecked(n, q, h, t, p));
        }
    }
    Ok(ascending_sum(terms).clamp(0.0, 1.0))
}

/// BM codeword error probability.
pub fn cep_bm(weights: &[BigUint], n: usize, d: usize, q: u64, p: f64) -> Result<f64> {
    let w: Vec<f64> = weights.iter().map(|e| e.to_f64().unwrap_or(f64::INFINITY)).collect();
    bm_sum(&w, n, d, q, p)
}

/// BM symbol error probability, `E(h) ↦ (h/n) E(h)`.
pub fn sep_bm(weights: &[BigUint], n: usize, d: usize, q: u64, p: f64) -> Result<f64> {
    let w: Vec<f64> = weights
        .iter()
        .enumerate()
        .map(|(h, e)| rational_f64(&BigRational::new(BigInt::from(e.clone()) * h, BigInt::from(n))))
        .collect();
    bm_sum(&w, n, d, q, p)
}

pub fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::INFINITY)
}

/// Per-weight pairwise error term `F(γ, h)` for the ML estimates.
pub trait PairwiseTerm: Sync {
    fn term(&self, gamma_db: f64, h: usize, rate: f64) -> f64;
}

/// `Q(√(2 h R γ))`.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnionBound;

impl PairwiseTerm for UnionBound {
    fn term(&self, gamma_db: f64, h: usize, rate: f64) -> f64 {
        let gamma = 10f64.powf(gamma_db / 10.0);
        q_function((2.0 * h as f64 * rate * gamma).sqrt())
    }
}

/// `Σ_{h≥1} W(h) F(γ, h)` clamped to `[0, 1]`.
pub fn ml_sum(weights: &[f64], n: usize, k: usize, gamma_db: f64, f: &dyn PairwiseTerm) -> f64 {
    let rate = k as f64 / n as f64;
    let terms = weights
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &w)| w != 0.0)
        .map(|(h, &w)| w * f.term(gamma_db, h, rate))
        .collect();
    ascending_sum(terms).clamp(0.0, 1.0)
}

/// Averaged-binary BEP, `Σ_h (h/(mn)) Ẽ(h) F(γ, h)`.
pub fn bep_ml(avg_weights: &[BigRational], n: usize, m: u32, k: usize, gamma_db: f64, f: &dyn PairwiseTerm) -> f64 {
    let mn = BigInt::from(m as usize * n);
    let w: Vec<f64> = avg_weights
        .iter()
        .enumerate()
        .map(|(h, e)| rational_f64(&(e * BigRational::new(BigInt::from(h), mn.clone()))))
        .collect();
    ml_sum(&w, n, k, gamma_db, f)
}

pub fn bep_ml_union(avg_weights: &[BigRational], n: usize, m: u32, k: usize, gamma_db: f64) -> f64 {
    bep_ml(avg_weights, n, m, k, gamma_db, &UnionBound)
}

/// Averaged-binary codeword error estimate, `Σ_h Ẽ(h) F(γ, h)`.
pub fn cep_ml_union(avg_weights: &[BigRational], n: usize, k: usize, gamma_db: f64) -> f64 {
    let w: Vec<f64> = avg_weights.iter().map(rational_f64).collect();
    ml_sum(&w, n, k, gamma_db, &UnionBound)
}

/// Constraint on one block of the partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UserCondition {
    Free,
    Zero,
    Full,
    AtMostFraction(f64),
}

impl FromStr for UserCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<UserCondition> {
        match s {
            "free" => Ok(UserCondition::Free),
            "zero" => Ok(UserCondition::Zero),
            "full" => Ok(UserCondition::Full),
            _ => {
                let rho = s
                    .strip_prefix("atmost:")
                    .and_then(|r| r.parse::<f64>().ok())
                    .ok_or_else(|| Error::InvalidCondition(format!("{s:?}: expected free, zero, full or atmost:<rho>")))?;
                if !(0.0..=1.0).contains(&rho) {
                    return Err(Error::InvalidCondition(format!("fraction {rho} outside [0, 1]")));
                }
                Ok(UserCondition::AtMostFraction(rho))
            }
        }
    }
}

impl fmt::Display for UserCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UserCondition::Free => write!(f, "free"),
            UserCondition::Zero => write!(f, "zero"),
            UserCondition::Full => write!(f, "full"),
            UserCondition::AtMostFraction(r) => write!(f, "atmost:{r}"),
        }
    }
}

impl Serialize for UserCondition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses a comma-separated condition list.
pub fn parse_conditions(s: &str) -> Result<Vec<UserCondition>> {
    s.split(',').map(|t| t.trim().parse()).collect()
}

/// Symbol-level exponents, or bit-level with `m` bits per symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Symbol,
    Binary(u32),
}

impl Level {
    fn scale(self) -> usize {
        match self {
            Level::Symbol => 1,
            Level::Binary(m) => m as usize,
        }
    }
}

/// Keeps only the terms whose block exponents meet every condition. Block
/// `i` has `scale·n_i` positions (`scale = m` at bit level); `Full` means
/// all of them and `AtMostFraction(ρ)` means at most `⌊ρ·scale·n_i⌋`.
pub fn conditional_pwgf<C: Coefficient>(
    poly: &Poly<C>,
    sizes: &[usize],
    conditions: &[UserCondition],
    level: Level,
) -> Result<Poly<C>> {
    if conditions.len() != sizes.len() || poly.nvars() != sizes.len() {
        return Err(Error::ConditionCountMismatch { expected: sizes.len(), found: conditions.len() });
    }
    let scale = level.scale();
    let mut caps = Vec::with_capacity(sizes.len());
    for (&c, &n_i) in conditions.iter().zip(sizes) {
        let width = scale * n_i;
        caps.push(match c {
            UserCondition::Free => (0, width),
            UserCondition::Zero => (0, 0),
            UserCondition::Full => (width, width),
            UserCondition::AtMostFraction(rho) => {
                if !(0.0..=1.0).contains(&rho) {
                    return Err(Error::InvalidCondition(format!("fraction {rho} outside [0, 1]")));
                }
                (0, (rho * width as f64).floor() as usize)
            }
        });
    }
    Ok(poly.filter(|e| e.iter().zip(&caps).all(|(&w, &(lo, hi))| (lo..=hi).contains(&(w as usize)))))
}

/// The user-`j` IOWE `O^j(w, h)` as a bivariate polynomial in `(X, Y)`:
/// `X_j ↦ XY`, `X_i ↦ Y` for `i ≠ j`.
pub fn user_iowe<C: Coefficient>(poly: &Poly<C>, user: usize) -> Poly<C> {
    poly.map_monomials(2, |e| vec![e[user], e.iter().sum()])
}

/// Exact rational conversion of enumerator coefficients.
pub trait ToRational {
    fn to_rational(&self) -> BigRational;
}

impl ToRational for BigUint {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.clone()))
    }
}

impl ToRational for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// `Σ_w (w / width) O^j(w, h)` for `h = 0..=total`, from a user IOWE.
pub fn user_output_weights<C: Coefficient + ToRational>(iowe: &Poly<C>, width: usize, total: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); total + 1];
    let den = BigInt::from(width);
    for (e, c) in iowe.terms() {
        if e[0] > 0 {
            out[e[1] as usize] += c.to_rational() * BigRational::new(BigInt::from(e[0]), den.clone());
        }
    }
    out
}

/// `Σ` of coefficients grouped by total degree.
pub fn total_degree_weights<C: Coefficient + ToRational>(poly: &Poly<C>, total: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); total + 1];
    for (e, c) in poly.terms() {
        out[e.iter().sum::<u32>() as usize] += c.to_rational();
    }
    out
}

fn check_user(sizes: &[usize], user: usize, conditions: &[UserCondition]) -> Result<()> {
    if conditions.len() != sizes.len() {
        return Err(Error::ConditionCountMismatch { expected: sizes.len(), found: conditions.len() });
    }
    if user >= sizes.len() {
        return Err(Error::ParamOutOfRange(format!("user {user} with {} blocks", sizes.len())));
    }
    if matches!(conditions[user], UserCondition::Zero | UserCondition::Full) {
        return Err(Error::InvalidCondition(format!(
            "user {user} cannot be conditioned on its own block ({})",
            conditions[user]
        )));
    }
    Ok(())
}

/// Conditional symbol output weights `O_h^j`, `h = 0..=n`.
pub fn symbol_output_weights(
    params: MdsParams,
    sizes: &[usize],
    user: usize,
    conditions: &[UserCondition],
) -> Result<Vec<BigRational>> {
    check_user(sizes, user, conditions)?;
    let poly = conditional_pwgf(&pwgf(params, sizes)?, sizes, conditions, Level::Symbol)?;
    Ok(user_output_weights(&user_iowe(&poly, user), sizes[user], params.n()))
}

/// Conditional averaged-binary output weights `Õ_h^j`, `h = 0..=mn`.
pub fn binary_output_weights(
    params: MdsParams,
    sizes: &[usize],
    user: usize,
    conditions: &[UserCondition],
) -> Result<Vec<BigRational>> {
    check_user(sizes, user, conditions)?;
    let m = bits_per_symbol(params)?;
    let binary = avg_binary_pwgf(&pwgf(params, sizes)?, m)?;
    let poly = conditional_pwgf(&binary, sizes, conditions, Level::Binary(m))?;
    Ok(user_output_weights(&user_iowe(&poly, user), m as usize * sizes[user], m as usize * params.n()))
}

fn to_f64s(w: &[BigRational]) -> Vec<f64> {
    w.iter().map(rational_f64).collect()
}

/// SEP of user `j` under the BM decoder at channel symbol error rate `p`.
pub fn multiuser_sep(params: MdsParams, sizes: &[usize], user: usize, conditions: &[UserCondition], p: f64) -> Result<f64> {
    let w = to_f64s(&symbol_output_weights(params, sizes, user, conditions)?);
    bm_sum(&w, params.n(), params.d(), params.q(), p)
}

/// Averaged-binary BEP of user `j` with the union-bound term.
pub fn multiuser_bep(params: MdsParams, sizes: &[usize], user: usize, conditions: &[UserCondition], gamma_db: f64) -> Result<f64> {
    let w = to_f64s(&binary_output_weights(params, sizes, user, conditions)?);
    Ok(ml_sum(&w, params.n(), params.k(), gamma_db, &UnionBound))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decoder {
    #[serde(rename = "bm")]
    Bm,
    #[serde(rename = "ml-union")]
    MlUnion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Cep,
    Sep,
    Bep,
}

/// What to compute for one curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRequest {
    pub decoder: Decoder,
    pub metric: Metric,
    /// Block sizes; `None` means the whole code as one block.
    pub sizes: Option<Vec<usize>>,
    /// 0-based user block; `None` means all users together.
    pub user: Option<usize>,
    pub conditions: Option<Vec<UserCondition>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub gamma_db: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorCurve {
    pub decoder: Decoder,
    pub metric: Metric,
    pub user: Option<usize>,
    pub conditions: Option<Vec<UserCondition>>,
    pub points: Vec<CurvePoint>,
}

/// Per-weight multipliers for a request, exact, indexed by symbol weight
/// (BM) or bit weight (ML).
pub fn curve_weights(params: MdsParams, req: &CurveRequest) -> Result<Vec<BigRational>> {
    let n = params.n();
    let sizes = req.sizes.clone().unwrap_or_else(|| vec![n]);
    let conditions = req.conditions.clone().unwrap_or_else(|| vec![UserCondition::Free; sizes.len()]);
    if conditions.len() != sizes.len() {
        return Err(Error::ConditionCountMismatch { expected: sizes.len(), found: conditions.len() });
    }
    let symbol = || -> Result<Poly<BigUint>> { conditional_pwgf(&pwgf(params, &sizes)?, &sizes, &conditions, Level::Symbol) };
    let binary = || -> Result<(u32, Poly<BigRational>)> {
        let m = bits_per_symbol(params)?;
        let b = avg_binary_pwgf(&pwgf(params, &sizes)?, m)?;
        Ok((m, conditional_pwgf(&b, &sizes, &conditions, Level::Binary(m))?))
    };
    let scaled = |w: Vec<BigRational>, den: usize| -> Vec<BigRational> {
        w.into_iter()
            .enumerate()
            .map(|(h, x)| x * BigRational::new(BigInt::from(h), BigInt::from(den)))
            .collect()
    };
    match (req.decoder, req.metric, req.user) {
        (Decoder::Bm, Metric::Cep, _) => Ok(total_degree_weights(&symbol()?, n)),
        (Decoder::Bm, Metric::Sep, Some(j)) => symbol_output_weights(params, &sizes, j, &conditions),
        (Decoder::Bm, Metric::Sep, None) => Ok(scaled(total_degree_weights(&symbol()?, n), n)),
        (Decoder::Bm, Metric::Bep, _) => Err(Error::ParamOutOfRange(
            "the bit error metric needs the averaged binary image (decoder ml-union)".into(),
        )),
        (Decoder::MlUnion, Metric::Cep, _) => {
            let (m, b) = binary()?;
            Ok(total_degree_weights(&b, m as usize * n))
        }
        (Decoder::MlUnion, Metric::Bep | Metric::Sep, Some(j)) => binary_output_weights(params, &sizes, j, &conditions),
        (Decoder::MlUnion, Metric::Bep | Metric::Sep, None) => {
            let (m, b) = binary()?;
            let mn = m as usize * n;
            Ok(scaled(total_degree_weights(&b, mn), mn))
        }
    }
}

/// Evaluates a curve over an SNR grid; points are computed in parallel.
pub fn error_curve(params: MdsParams, req: &CurveRequest, grid: &[f64]) -> Result<ErrorCurve> {
    let weights: Vec<f64> = curve_weights(params, req)?.iter().map(rational_f64).collect();
    let (n, k, d, q) = (params.n(), params.k(), params.d(), params.q());
    let points = match req.decoder {
        Decoder::Bm => {
            let m = bits_per_symbol(params)?;
            grid.par_iter()
                .map(|&g| {
                    let p = channel_map(g, n, k, m).p_symbol;
                    Ok(CurvePoint { gamma_db: g, probability: bm_sum(&weights, n, d, q, p)? })
                })
                .collect::<Result<Vec<_>>>()?
        }
        Decoder::MlUnion => grid
            .par_iter()
            .map(|&g| CurvePoint { gamma_db: g, probability: ml_sum(&weights, n, k, g, &UnionBound) })
            .collect(),
    };
    Ok(ErrorCurve { decoder: req.decoder, metric: req.metric, user: req.user, conditions: req.conditions.clone(), points })
}

/// Parses `start:stop:step` into an inclusive grid.
pub fn snr_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parse { what: "snr grid", detail: format!("{s:?}: expected <start>:<stop>:<step>") };
    let parts: Vec<f64> = s.split(':').map(|x| x.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}
