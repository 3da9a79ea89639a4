//! Closed-form symbol-level enumerators of `(n, k, d = n - k + 1)` MDS codes.
//!
//! Everything here is exact big-integer arithmetic. Two independent routes
//! to the partition weight enumerator are provided: the nested alternating
//! sum ([`pwe_direct`]) and the product form `E(w) Π C(n_i, w_i) / C(n, w)`
//! ([`pwe_product`]), which is the default.
//!
//! Convention used throughout: `E(0) = 1` and `E(h) = 0` for `0 < h < d`.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::combinatorics::{alternating, exact_div, Binomials};
use crate::error::{Error, Result};
use crate::poly::EnumeratorPoly;

/// Parameters of an MDS code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MdsParams {
    n: usize,
    k: usize,
    q: u64,
}

impl MdsParams {
    pub fn new(n: usize, k: usize, q: u64) -> Result<MdsParams> {
        if k == 0 || k > n {
            return Err(Error::InvalidDimension { n, k });
        }
        if crate::combinatorics::prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        Ok(MdsParams { n, k, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Minimum distance `n - k + 1`.
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    /// Parameters of the dual code, `(n, n - k)`. `None` when `k = n`.
    pub fn dual(&self) -> Option<MdsParams> {
        (self.k < self.n).then(|| MdsParams { n: self.n, k: self.n - self.k, q: self.q })
    }
}

/// Weight distribution `E(0..=n)`:
/// `E(i) = C(n,i) Σ_{j=d}^{i} C(i,j) (-1)^(i-j) (q^(j-d+1) - 1)` for `i >= d`.
pub fn weight_distribution(params: MdsParams) -> Vec<BigUint> {
    let n = params.n;
    let d = params.d();
    let binom = Binomials::new(n);
    let q = BigInt::from(params.q);
    let mut out = vec![BigUint::zero(); n + 1];
    out[0] = BigUint::one();
    for i in d..=n {
        let mut acc = BigInt::zero();
        for j in d..=i {
            let term = BigInt::from(binom.get(i as i64, j as i64).clone()) * (q.pow((j - d + 1) as u32) - 1);
            if alternating((i - j) as i64) {
                acc -= term;
            } else {
                acc += term;
            }
        }
        let e = acc * BigInt::from(binom.get(n as i64, i as i64).clone());
        out[i] = e.to_biguint().expect("MDS weight counts are nonnegative");
    }
    out
}

/// Cached weight distribution and binomials for repeated evaluation.
#[derive(Debug, Clone)]
pub struct MdsEnumerator {
    params: MdsParams,
    weights: Vec<BigUint>,
    binom: Binomials,
}

impl MdsEnumerator {
    pub fn new(params: MdsParams) -> MdsEnumerator {
        MdsEnumerator { params, weights: weight_distribution(params), binom: Binomials::new(params.n) }
    }

    pub fn params(&self) -> MdsParams {
        self.params
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    fn c(&self, n: usize, k: usize) -> &BigUint {
        self.binom.get(n as i64, k as i64)
    }

    /// Product-form partition weight enumerator.
    pub fn pwe_product(&self, sizes: &[usize], profile: &[usize]) -> Result<BigUint> {
        check_profile(self.params, sizes, profile)?;
        let w: usize = profile.iter().sum();
        let mut numerator = self.weights[w].clone();
        if numerator.is_zero() {
            return Ok(numerator);
        }
        for (&ni, &wi) in sizes.iter().zip(profile) {
            numerator *= self.c(ni, wi);
        }
        exact_div(&numerator, self.c(self.params.n, w)).ok_or_else(|| {
            Error::InternalError(format!("C(n, {w}) does not divide the product numerator for profile {profile:?}"))
        })
    }

    /// Full partition weight generating function.
    pub fn pwgf(&self, sizes: &[usize]) -> Result<EnumeratorPoly> {
        check_sizes(self.params, sizes)?;
        let mut poly = EnumeratorPoly::with_caps(sizes.iter().map(|&s| s as u32).collect());
        let mut profile = vec![0usize; sizes.len()];
        loop {
            let c = self.pwe_product(sizes, &profile)?;
            poly.add_term(profile.iter().map(|&w| w as u32).collect(), c);
            // odometer, last coordinate fastest
            let mut pos = sizes.len();
            loop {
                if pos == 0 {
                    return Ok(poly);
                }
                pos -= 1;
                if profile[pos] < sizes[pos] {
                    profile[pos] += 1;
                    break;
                }
                profile[pos] = 0;
            }
        }
    }

    /// IOWE of an `(s, n - s)` partition.
    pub fn iowe(&self, s: usize, w: usize, h: usize) -> Result<BigUint> {
        let n = self.params.n;
        if s > n || w > s || w > h || h > n || h - w > n - s {
            return Err(Error::ProfileOutOfRange(format!("IOWE(s={s}, w={w}, h={h}) for n={n}")));
        }
        let numerator = &self.weights[h] * self.c(s, w) * self.c(n - s, h - w);
        exact_div(&numerator, self.c(n, h))
            .ok_or_else(|| Error::InternalError(format!("C({n}, {h}) does not divide the IOWE numerator")))
    }
}

fn check_sizes(params: MdsParams, sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() || sizes.iter().sum::<usize>() != params.n {
        return Err(Error::PartitionMismatch(format!("block sizes {sizes:?} do not sum to n={}", params.n)));
    }
    Ok(())
}

fn check_profile(params: MdsParams, sizes: &[usize], profile: &[usize]) -> Result<()> {
    check_sizes(params, sizes)?;
    if profile.len() != sizes.len() || profile.iter().zip(sizes).any(|(w, n)| w > n) {
        return Err(Error::ProfileOutOfRange(format!("{profile:?} for block sizes {sizes:?}")));
    }
    Ok(())
}

/// Partition weight enumerator by the nested alternating sum
///
/// `Π C(n_i, w_i) · Σ_{j_1..j_p} Π C(w_i, j_i) (-1)^(w_i - j_i) (q^(Σ j - d + 1) - 1)`
///
/// with the innermost index starting at `max(0, d - Σ_{z<p} j_z)`.
pub fn pwe_direct(params: MdsParams, sizes: &[usize], profile: &[usize]) -> Result<BigUint> {
    check_profile(params, sizes, profile)?;
    if profile.iter().all(|&w| w == 0) {
        return Ok(BigUint::one());
    }
    let binom = Binomials::new(params.n);
    let d = params.d();
    let q = BigInt::from(params.q);
    let max_pow = profile.iter().sum::<usize>();
    let q_pow_minus_one: Vec<BigInt> = (0..=max_pow).map(|e| q.pow(e as u32) - 1).collect();

    fn nest(
        level: usize,
        j_sum: usize,
        negative: bool,
        weight: BigInt,
        profile: &[usize],
        d: usize,
        binom: &Binomials,
        qp: &[BigInt],
        acc: &mut BigInt,
    ) {
        let w = profile[level];
        let last = level + 1 == profile.len();
        let start = if last { d.saturating_sub(j_sum) } else { 0 };
        for j in start..=w {
            let c = BigInt::from(binom.get(w as i64, j as i64).clone());
            let neg = negative ^ alternating((w - j) as i64);
            let wt = &weight * c;
            if last {
                let term = wt * &qp[j_sum + j - d + 1];
                if neg {
                    *acc -= term;
                } else {
                    *acc += term;
                }
            } else {
                nest(level + 1, j_sum + j, neg, wt, profile, d, binom, qp, acc);
            }
        }
    }

    let mut acc = BigInt::zero();
    nest(0, 0, false, BigInt::one(), profile, d, &binom, &q_pow_minus_one, &mut acc);
    let prefactor =
        sizes.iter().zip(profile).fold(BigUint::one(), |p, (&ni, &wi)| p * binom.get(ni as i64, wi as i64));
    let value = acc * BigInt::from(prefactor);
    match value.sign() {
        Sign::Minus => Err(Error::InternalError(format!("negative alternating sum for {profile:?}"))),
        _ => Ok(value.magnitude().clone()),
    }
}

/// Product form `E(w) Π C(n_i, w_i) / C(n, w)`, `w = Σ w_i`.
pub fn pwe_product(params: MdsParams, sizes: &[usize], profile: &[usize]) -> Result<BigUint> {
    MdsEnumerator::new(params).pwe_product(sizes, profile)
}

/// Partition weight generating function with coefficients from [`pwe_product`].
pub fn pwgf(params: MdsParams, sizes: &[usize]) -> Result<EnumeratorPoly> {
    MdsEnumerator::new(params).pwgf(sizes)
}

/// Split (two-block) weight enumerator.
pub fn split_we(params: MdsParams, n1: usize, n2: usize, w1: usize, w2: usize) -> Result<BigUint> {
    pwe_product(params, &[n1, n2], &[w1, w2])
}

/// Input-output weight enumerator for `s` information coordinates:
/// `E(h) C(s, w) C(n - s, h - w) / C(n, h)`.
pub fn iowe(params: MdsParams, s: usize, w: usize, h: usize) -> Result<BigUint> {
    MdsEnumerator::new(params).iowe(s, w, h)
}

/// Codewords that vanish on a fixed set of `n - h` coordinates and are
/// nonzero on the other `h`: `E(h) / C(n, h)`.
pub fn fixed_support_count(params: MdsParams, h: usize) -> Result<BigUint> {
    if h > params.n {
        return Err(Error::ProfileOutOfRange(format!("h={h} exceeds n={}", params.n)));
    }
    let e = &weight_distribution(params)[h];
    let c = crate::combinatorics::binomial(params.n as u64, h as u64);
    exact_div(e, &c).ok_or_else(|| Error::InternalError(format!("C(n, {h}) does not divide E({h})")))
}

/// Total weight of one coordinate over the weight-`h` codewords: `h E(h) / n`.
pub fn coordinate_weight_sum(params: MdsParams, h: usize) -> Result<BigUint> {
    if h > params.n {
        return Err(Error::ProfileOutOfRange(format!("h={h} exceeds n={}", params.n)));
    }
    let e = &weight_distribution(params)[h];
    exact_div(&(e * h), &BigUint::from(params.n))
        .ok_or_else(|| Error::InternalError(format!("n does not divide h E(h) at h={h}")))
}

/// Both sides of an identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// `Ψ(w) = Σ_{j=0}^{w} C(w,j) (-1)^(w-j) Σ_{i=d-j}^{h-w} g(h,w,i) (q^(i+j-d+1) - 1)`
/// with `g(h,w,i) = C(h-w, i) (-1)^(h-w-i)`. Terms with `i < 0` vanish.
pub fn psi(params: MdsParams, h: usize, w: usize) -> BigInt {
    if w > h {
        return BigInt::zero();
    }
    let d = params.d() as i64;
    let q = BigInt::from(params.q);
    let binom = Binomials::new(h);
    let (h, w) = (h as i64, w as i64);
    let mut outer = BigInt::zero();
    for j in 0..=w {
        let mut inner = BigInt::zero();
        for i in (d - j).max(0)..=(h - w) {
            let e = i + j - d + 1;
            let g = BigInt::from(binom.get(h - w, i).clone()) * (q.pow(e as u32) - 1);
            if alternating(h - w - i) {
                inner -= g;
            } else {
                inner += g;
            }
        }
        let term = BigInt::from(binom.get(w, j).clone()) * inner;
        if alternating(w - j) {
            outer -= term;
        } else {
            outer += term;
        }
    }
    outer
}

/// `Σ_w C(k,w) C(n-k,h-w) Ψ(w) = Ψ(0) Σ_w C(k,w) C(n-k,h-w)`, `w = 0..=k`.
pub fn check_identity_dimension_split(params: MdsParams, h: usize) -> IdentityCheck {
    let (n, k) = (params.n, params.k);
    weighted_psi_identity(params, h, (0..=k).map(|w| (w, bin(k, w as i64) * bin(n - k, h as i64 - w as i64))))
}

/// `Σ_{w=1}^{s} C(s-1,w-1) C(n-s,h-w) Ψ(w) = Ψ(0) Σ_{w=1}^{s} C(s-1,w-1) C(n-s,h-w)`.
pub fn check_identity_input_share(params: MdsParams, s: usize, h: usize) -> IdentityCheck {
    let n = params.n;
    weighted_psi_identity(
        params,
        h,
        (1..=s).map(|w| (w, bin(s - 1, w as i64 - 1) * bin(n.saturating_sub(s), h as i64 - w as i64))),
    )
}

fn bin(n: usize, k: i64) -> BigInt {
    BigInt::from(crate::combinatorics::binomial_signed(n as i64, k))
}

fn weighted_psi_identity(
    params: MdsParams,
    h: usize,
    weights: impl Iterator<Item = (usize, BigInt)>,
) -> IdentityCheck {
    let psi0 = psi(params, h, 0);
    let mut lhs = BigInt::zero();
    let mut norm = BigInt::zero();
    for (w, c) in weights {
        if c.is_zero() {
            continue;
        }
        lhs += &c * psi(params, h, w);
        norm += c;
    }
    let rhs = psi0 * norm;
    IdentityCheck { holds: lhs == rhs, lhs, rhs }
}

/// `n Σ_{w=1}^{s} w O(w,h)` and `s h E(h)` for the integer form of the
/// coordinate-share theorem.
pub fn input_weight_share(params: MdsParams, s: usize, h: usize) -> Result<(BigUint, BigUint)> {
    let e = MdsEnumerator::new(params);
    let n = params.n;
    let mut lhs = BigUint::zero();
    for w in 1..=s.min(h) {
        if h - w > n - s {
            continue;
        }
        lhs += e.iowe(s, w, h)? * w;
    }
    Ok((lhs * n, &e.weights[h] * s * h))
}
