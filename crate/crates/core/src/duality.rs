//! Krawtchouk polynomials, the two-block MacWilliams transform, and
//! property-A checks.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{alternating, exact_div_signed, Binomials};
use crate::error::{Error, Result};
use crate::linear_code::{code_size, Budget, LinearCode, PweTable};

/// `K_β(v, γ) = Σ_j C(γ-v, β-j) C(v, j) (-1)^j (q-1)^(β-j)`.
pub fn krawtchouk(q: u64, beta: usize, v: usize, gamma: usize) -> Result<BigInt> {
    if beta > gamma || v > gamma {
        return Err(Error::ParamOutOfRange(format!("K_{beta}({v}, {gamma})")));
    }
    Ok(KrawtchoukTable::new(q, gamma).get(beta, v))
}

/// `K_β(v, γ)` for all `β, v <= γ`.
#[derive(Debug, Clone)]
pub struct KrawtchoukTable {
    values: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn new(q: u64, gamma: usize) -> KrawtchoukTable {
        let binom = Binomials::new(gamma);
        let qm1 = BigInt::from(q - 1);
        let g = gamma as i64;
        let values = (0..=gamma)
            .map(|beta| {
                (0..=gamma)
                    .map(|v| {
                        let (b, v) = (beta as i64, v as i64);
                        let mut acc = BigInt::zero();
                        for j in 0..=b {
                            let c = binom.get(g - v, b - j) * binom.get(v, j);
                            if c.is_zero() {
                                continue;
                            }
                            let term = BigInt::from(c) * qm1.pow((b - j) as u32);
                            if alternating(j) {
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
        KrawtchoukTable { values }
    }

    pub fn get(&self, beta: usize, v: usize) -> BigInt {
        self.values[beta][v].clone()
    }
}

/// Two-block partition weight enumerator of the dual code:
/// `A⊥(α, β) = q^(-k) Σ_{w,v} A(w, v) K_α(w, n_1) K_β(v, n_2)`.
pub fn macwilliams_pwe(table: &PweTable, q: u64, k: usize) -> Result<PweTable> {
    let &[n1, n2] = table.sizes() else {
        return Err(Error::ParamOutOfRange(format!(
            "the transform needs a two-block table, got {} blocks",
            table.sizes().len()
        )));
    };
    let size = code_size(q, k);
    if table.total() != size {
        return Err(Error::IncompleteTable(format!("entries sum to {}, expected q^k = {size}", table.total())));
    }
    let k1 = KrawtchoukTable::new(q, n1);
    let k2 = KrawtchoukTable::new(q, n2);
    let size = BigInt::from(size);
    let entries: Vec<(usize, usize, BigInt)> = table
        .iter()
        .map(|(p, c)| (p[0], p[1], BigInt::from(c.clone())))
        .collect();

    // first contract over w, then over v
    let partial: Vec<Vec<BigInt>> = (0..=n1)
        .into_par_iter()
        .map(|alpha| {
            let mut row = vec![BigInt::zero(); n2 + 1];
            for (w, v, c) in &entries {
                row[*v] += c * &k1.values[alpha][*w];
            }
            row
        })
        .collect();
    let cells: Vec<Result<Vec<(Vec<usize>, BigUint)>>> = (0..=n1)
        .into_par_iter()
        .map(|alpha| {
            let mut out = Vec::new();
            for beta in 0..=n2 {
                let mut acc = BigInt::zero();
                for (v, b) in partial[alpha].iter().enumerate() {
                    if !b.is_zero() {
                        acc += b * &k2.values[beta][v];
                    }
                }
                let value = exact_div_signed(&acc, &size)
                    .filter(|x| !x.is_negative())
                    .ok_or_else(|| Error::NonIntegerResult(format!("cell ({alpha}, {beta}) = {acc} / {size}")))?;
                if !value.is_zero() {
                    out.push((vec![alpha, beta], value.magnitude().clone()));
                }
            }
            Ok(out)
        })
        .collect();
    let mut dual = PweTable::new(&[n1, n2]);
    for row in cells {
        for (profile, count) in row? {
            dual.add(profile, count)?;
        }
    }
    Ok(dual)
}

/// Classical MacWilliams transform of a weight distribution.
pub fn macwilliams_weights(weights: &[BigUint], q: u64, k: usize) -> Result<Vec<BigUint>> {
    let n = weights.len() - 1;
    let size = code_size(q, k);
    let total: BigUint = weights.iter().sum();
    if total != size {
        return Err(Error::IncompleteTable(format!("weights sum to {total}, expected {size}")));
    }
    let kt = KrawtchoukTable::new(q, n);
    let size = BigInt::from(size);
    (0..=n)
        .map(|j| {
            let acc: BigInt = weights.iter().enumerate().map(|(i, a)| BigInt::from(a.clone()) * kt.get(j, i)).sum();
            exact_div_signed(&acc, &size)
                .filter(|x| !x.is_negative())
                .map(|x| x.magnitude().clone())
                .ok_or_else(|| Error::NonIntegerResult(format!("weight {j}: {acc} / {size}")))
        })
        .collect()
}

/// One coordinate whose weight share over a weight class is off.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyAWitness {
    pub coordinate: usize,
    pub weight: usize,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub observed: BigUint,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub expected: BigRational,
}

/// Outcome of [`property_a_check`].
///
/// The check compares, for every coordinate `i` and weight `h`, the number
/// of weight-`h` codewords nonzero at `i` against `h E(h) / n`. Any union
/// of `s` coordinates then carries `s h E(h) / n`, so this per-coordinate
/// test is equivalent to the all-`s` statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyAReport {
    pub holds: bool,
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    pub weight_distribution: Vec<BigUint>,
    pub witnesses: Vec<PropertyAWitness>,
}

/// Checks that every coordinate carries the fraction `1/n` of the total
/// weight of each weight class.
pub fn property_a_check(code: &LinearCode, budget: Budget) -> Result<PropertyAReport> {
    let n = code.n();
    // per weight: (class size, nonzero count per coordinate)
    let tallies = code.fold_codewords(
        budget,
        || vec![(0u64, vec![0u64; n]); n + 1],
        |acc, cw| {
            let h = cw.iter().filter(|&&x| x != 0).count();
            let slot = &mut acc[h];
            slot.0 += 1;
            for (s, &x) in slot.1.iter_mut().zip(cw) {
                if x != 0 {
                    *s += 1;
                }
            }
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                x.0 += y.0;
                for (s, t) in x.1.iter_mut().zip(y.1) {
                    *s += t;
                }
            }
            a
        },
    )?;
    let mut witnesses = Vec::new();
    for (h, (count, sums)) in tallies.iter().enumerate() {
        if *count == 0 {
            continue;
        }
        let expected = BigRational::new(BigInt::from(h as u64 * count), BigInt::from(n));
        for (i, &obs) in sums.iter().enumerate() {
            if BigRational::from_integer(BigInt::from(obs)) != expected {
                witnesses.push(PropertyAWitness {
                    coordinate: i,
                    weight: h,
                    observed: BigUint::from(obs),
                    expected: expected.clone(),
                });
            }
        }
    }
    Ok(PropertyAReport {
        holds: witnesses.is_empty(),
        n,
        k: code.k(),
        weight_distribution: tallies.iter().map(|(c, _)| BigUint::from(*c)).collect(),
        witnesses,
    })
}

/// Property A of a code and of its dual; the two always agree.
pub fn dual_property_a(code: &LinearCode, budget: Budget) -> Result<(bool, bool)> {
    let (a, b) = dual_property_a_reports(code, budget)?;
    Ok((a.holds, b.holds))
}

pub fn dual_property_a_reports(code: &LinearCode, budget: Budget) -> Result<(PropertyAReport, PropertyAReport)> {
    let dual = code.dual();
    dual.check_budget(budget)?;
    Ok((property_a_check(code, budget)?, property_a_check(&dual, budget)?))
}
