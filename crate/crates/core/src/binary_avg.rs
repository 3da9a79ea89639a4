//! Average binary-image enumerators for codes over GF(2^m).
//!
//! Bits inside a nonzero symbol are modelled as binomially distributed, so a
//! symbol of weight one contributes `F(Z) = ((1+Z)^m - 1) / (2^m - 1)` to the
//! binary generating function. All results are exact rationals whose
//! denominators divide a power of `2^m - 1`; internally the work is done over
//! integers scaled by that power and reduced once at the end.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{alternating, binomial, Binomials};
use crate::error::{Error, Result};
use crate::mds_enum::{MdsEnumerator, MdsParams};
use crate::poly::{dense_powers, EnumeratorPoly, Poly, RationalPoly};

/// `m` such that `q = 2^m`.
pub fn bits_per_symbol(params: MdsParams) -> Result<u32> {
    let q = params.q();
    if q.is_power_of_two() && q >= 2 {
        Ok(q.trailing_zeros())
    } else {
        Err(Error::NotCharTwo { q })
    }
}

/// Integer numerator `(1+Z)^m - 1` of the substitution, dense.
fn numerator_poly(m: u32) -> Vec<BigInt> {
    (0..=m).map(|i| if i == 0 { BigInt::zero() } else { BigInt::from(binomial(m as u64, i as u64)) }).collect()
}

fn denominator(m: u32) -> BigInt {
    (BigInt::one() << m) - 1
}

fn ratio(num: BigInt, den: &BigInt) -> BigRational {
    BigRational::new(num, den.clone())
}

/// `F(Z) = ((1+Z)^m - 1) / (2^m - 1)`.
pub fn f_subst(m: u32) -> Result<RationalPoly> {
    if m == 0 {
        return Err(Error::ParamOutOfRange("m must be at least 1".into()));
    }
    let d = denominator(m);
    Ok(Poly::univariate(numerator_poly(m).into_iter().map(|c| ratio(c, &d))))
}

/// Average binary weight distribution `Ẽ(0..=nm)`: coefficients of
/// `Σ_h E(h) / (2^m-1)^h · ((1+X)^m - 1)^h`.
pub fn avg_binary_wgf(params: MdsParams) -> Result<Vec<BigRational>> {
    let m = bits_per_symbol(params)?;
    let n = params.n();
    let d = denominator(m);
    let weights = crate::mds_enum::weight_distribution(params);
    let powers = dense_powers(&numerator_poly(m), n);
    let mut acc = vec![BigInt::zero(); n * m as usize + 1];
    for (h, e) in weights.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let scale = BigInt::from(e.clone()) * d.pow((n - h) as u32);
        for (i, g) in powers[h].iter().enumerate() {
            acc[i] += &scale * g;
        }
    }
    let dn = d.pow(n as u32);
    Ok(acc.into_iter().map(|c| ratio(c, &dn)).collect())
}

/// Averaged binary PWGF `P(F(Z_1), ..., F(Z_p))` of a symbol-level PWGF.
pub fn avg_binary_pwgf(pwgf: &EnumeratorPoly, m: u32) -> Result<RationalPoly> {
    if m == 0 {
        return Err(Error::ParamOutOfRange("m must be at least 1".into()));
    }
    let d = denominator(m);
    let top = pwgf.terms().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0);
    let scaled: Poly<BigInt> = {
        let mut p = match pwgf.caps() {
            Some(caps) => Poly::with_caps(caps.to_vec()),
            None => Poly::new(pwgf.nvars()),
        };
        for (e, c) in pwgf.terms() {
            let w: u32 = e.iter().sum();
            p.add_term(e.to_vec(), BigInt::from(c.clone()) * d.pow(top - w));
        }
        p
    };
    let g = numerator_poly(m);
    let subs = vec![g; pwgf.nvars()];
    let expanded = scaled.substitute_each(&subs);
    let dn = d.pow(top);
    Ok(expanded.map_coeffs(|c| ratio(c.clone(), &dn)))
}

/// Closed-form average binary IOWE for an `(s, n - s)` partition, with the
/// inner alternating sums cached.
#[derive(Debug, Clone)]
pub struct BinaryIowe {
    params: MdsParams,
    s: usize,
    m: u32,
    /// `O(w, h) (2^m-1)^(n-h)`, indexed `[w][h]`.
    scaled_iowe: Vec<Vec<BigInt>>,
    /// `Σ_j (-1)^(r-j) C(r,j) C(jm, t)`, indexed `[r][t]`.
    bracket: Vec<Vec<BigInt>>,
    denominator: BigInt,
}

impl BinaryIowe {
    pub fn new(params: MdsParams, s: usize) -> Result<BinaryIowe> {
        let m = bits_per_symbol(params)?;
        let n = params.n();
        if s > n {
            return Err(Error::ProfileOutOfRange(format!("input size {s} exceeds n={n}")));
        }
        let mu = m as usize;
        let d = denominator(m);
        let enumerator = MdsEnumerator::new(params);
        let scaled_iowe = (0..=s)
            .map(|w| {
                (0..=n)
                    .map(|h| {
                        if h < w || h - w > n - s {
                            BigInt::zero()
                        } else {
                            let o = enumerator.iowe(s, w, h).expect("in range");
                            BigInt::from(o) * d.pow((n - h) as u32)
                        }
                    })
                    .collect()
            })
            .collect();
        let binom = Binomials::new(n * mu);
        let bracket = (0..=n)
            .map(|r| {
                (0..=n * mu)
                    .map(|t| {
                        let mut acc = BigInt::zero();
                        for j in 0..=r {
                            let term = BigInt::from(binom.get(r as i64, j as i64).clone())
                                * BigInt::from(binom.get((j * mu) as i64, t as i64).clone());
                            if alternating((r - j) as i64) {
                                acc -= term;
                            } else {
                                acc += term;
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(BinaryIowe { params, s, m, scaled_iowe, bracket, denominator: d.pow(n as u32) })
    }

    /// `Õ(w_b, h_b)`.
    pub fn get(&self, w_b: usize, h_b: usize) -> Result<BigRational> {
        let n = self.params.n();
        let mu = self.m as usize;
        if w_b > mu * self.s || h_b < w_b || h_b > mu * n {
            return Err(Error::ProfileOutOfRange(format!(
                "binary IOWE(w_b={w_b}, h_b={h_b}) for s={}, m={}, n={n}",
                self.s, self.m
            )));
        }
        let mut acc = BigInt::zero();
        for w in 0..=self.s {
            let input = &self.bracket[w][w_b];
            if input.is_zero() {
                continue;
            }
            for h in w..=n {
                let o = &self.scaled_iowe[w][h];
                if o.is_zero() {
                    continue;
                }
                acc += o * &self.bracket[h - w][h_b - w_b] * input;
            }
        }
        Ok(ratio(acc, &self.denominator))
    }

    /// Every `Õ(w_b, h_b)`, indexed `[w_b][h_b]` (zero where `h_b < w_b`).
    pub fn table(&self) -> Vec<Vec<BigRational>> {
        let mu = self.m as usize;
        let n = self.params.n();
        (0..=mu * self.s)
            .map(|w_b| {
                (0..=mu * n)
                    .map(|h_b| if h_b < w_b { BigRational::zero() } else { self.get(w_b, h_b).expect("in range") })
                    .collect()
            })
            .collect()
    }
}

/// Average binary IOWE `Õ(w_b, h_b)` of an `(s, n - s)` partition.
pub fn avg_binary_iowe(params: MdsParams, s: usize, w_b: usize, h_b: usize) -> Result<BigRational> {
    BinaryIowe::new(params, s)?.get(w_b, h_b)
}

/// `2^(-m(n-k)) C(mn, h_b)`.
pub fn binomial_approx(params: MdsParams, h_b: usize) -> Result<BigRational> {
    let m = bits_per_symbol(params)?;
    let n = params.n() as u64;
    let num = BigInt::from(binomial(m as u64 * n, h_b as u64));
    let den = BigInt::from(BigUint::one() << (m as usize * (params.n() - params.k())));
    Ok(BigRational::new(num, den))
}

/// Both sides of `mn Σ_{w_b=1}^{ms} w_b Õ(w_b, h_b) = ms h_b Ẽ(h_b)`, where
/// `mn` and `ms` are the binary-image length and input size.
pub fn binary_share_identity(
    iowe: &BinaryIowe,
    avg_weights: &[BigRational],
    h_b: usize,
) -> Result<(BigRational, BigRational)> {
    let mu = iowe.m as usize;
    let n = iowe.params.n();
    let mut lhs = BigRational::zero();
    for w_b in 1..=(mu * iowe.s).min(h_b) {
        lhs += iowe.get(w_b, h_b)? * BigRational::from_integer(BigInt::from(w_b));
    }
    let lhs = lhs * BigRational::from_integer(BigInt::from(mu * n));
    let rhs = avg_weights[h_b].clone() * BigRational::from_integer(BigInt::from(mu * iowe.s * h_b));
    Ok((lhs, rhs))
}
