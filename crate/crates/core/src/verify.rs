//! Built-in verification suites and the independent oracles they use: a
//! seeded Monte-Carlo bounded-distance decoder and random code/partition
//! generators.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::binary_avg::{avg_binary_pwgf, avg_binary_wgf, binary_share_identity, BinaryIowe};
use crate::duality::{dual_property_a, macwilliams_pwe, macwilliams_weights, property_a_check};
use crate::error::{Error, Result};
use crate::errorprob::{
    binary_output_weights, cep_bm, error_curve, p_t_h, sep_bm, snr_grid, symbol_output_weights, user_iowe,
    CurveRequest, Decoder, Metric, UserCondition,
};
use crate::gf::Field;
use crate::linear_code::{
    brute_force_pwe, brute_force_pwe_many, cyclic_code, rm1_code, rs_code, rs_code_with_points, same_code, Budget,
    LinearCode, Partition, PweTable,
};
use crate::mds_enum::{
    check_identity_dimension_split, check_identity_input_share, input_weight_share, pwe_direct, pwe_product, pwgf,
    weight_distribution, MdsParams,
};

/// Seeded generator used by every randomized check.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random full-rank `k × n` generator over `field`.
pub fn random_code(field: &Field, n: usize, k: usize, rng: &mut impl Rng) -> Result<LinearCode> {
    if k == 0 || k > n {
        return Err(Error::InvalidDimension { n, k });
    }
    let q = field.order();
    loop {
        let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
        match LinearCode::from_generator(field, rows) {
            Ok(c) => return Ok(c),
            Err(Error::RankDeficient { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// A random partition of `n` coordinates into between 1 and `max_blocks`
/// nonempty blocks, with coordinates shuffled across blocks.
pub fn random_partition(n: usize, max_blocks: usize, rng: &mut impl Rng) -> Partition {
    let p = rng.gen_range(1..=max_blocks.clamp(1, n));
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(p - 1).collect();
    cuts.sort_unstable();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut assignment = vec![0; n];
    let mut block = 0;
    for (pos, &coord) in perm.iter().enumerate() {
        while block < cuts.len() && pos >= cuts[block] {
            block += 1;
        }
        assignment[coord] = block;
    }
    Partition::from_assignment(assignment).expect("every block receives a coordinate")
}

/// Every profile `0 ≤ w_i ≤ n_i`.
pub fn all_profiles(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=s).map(move |w| {
                    let mut q = p.clone();
                    q.push(w);
                    q
                })
            })
            .collect();
    }
    out
}

/// Compares brute force, the product form and the nested sum on every
/// profile; returns the first disagreement.
pub fn pwe_agreement(params: MdsParams, table: &PweTable) -> Result<Option<String>> {
    let sizes = table.sizes();
    for profile in all_profiles(sizes) {
        let brute = table.get(&profile);
        let product = pwe_product(params, sizes, &profile)?;
        let direct = pwe_direct(params, sizes, &profile)?;
        if brute != product || product != direct {
            return Ok(Some(format!(
                "{params:?} sizes {sizes:?} profile {profile:?}: brute {brute}, product {product}, direct {direct}"
            )));
        }
    }
    Ok(None)
}

/// Bounded-distance decoding simulated by table lookup: every received
/// word in the radius-`τ` sphere of a nonzero codeword maps to that
/// codeword's information weight.
#[derive(Debug, Clone)]
pub struct SphereOracle {
    q: u32,
    n: usize,
    k: usize,
    /// `0` outside every wrong sphere, else information weight + 1.
    map: Vec<u8>,
}

/// Monte-Carlo estimates with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarlo {
    pub trials: u64,
    pub cep: f64,
    pub cep_se: f64,
    pub sep: f64,
    pub sep_se: f64,
}

impl SphereOracle {
    /// Largest supported received-word space.
    pub const MAX_WORDS: u64 = 1 << 24;

    pub fn new(code: &LinearCode, budget: Budget) -> Result<SphereOracle> {
        let field = code.field();
        let (q, n) = (field.order(), code.n());
        let words = (q as u64).checked_pow(n as u32).filter(|&w| w <= Self::MAX_WORDS).ok_or_else(|| {
            Error::BudgetExceeded { codewords: format!("{q}^{n} received words"), budget: Self::MAX_WORDS }
        })?;
        let code = code.systematic();
        let info = code.systematic_columns().expect("row-reduced generator").to_vec();
        let d = code.weight_distribution(budget)?.iter().skip(1).position(|c| !c.is_zero()).map_or(n + 1, |i| i + 1);
        let tau = (d - 1) / 2;
        let mut map = vec![0u8; words as usize];
        let mut word = vec![0u32; n];
        for c in code.codewords(budget)? {
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            let info_weight = info.iter().filter(|&&i| c[i] != 0).count() as u8;
            word.copy_from_slice(&c);
            fill_sphere(field, &c, &mut word, 0, tau, &mut |w| {
                map[index(w, q)] = info_weight + 1;
            });
        }
        Ok(SphereOracle { q, n, k: code.k(), map })
    }

    /// Sends the all-zero word through the q-ary symmetric channel.
    pub fn simulate(&self, p: f64, trials: u64, seed: u64) -> MonteCarlo {
        let mut rng = rng(seed);
        let (mut errors, mut sep_sum, mut sep_sq) = (0u64, 0f64, 0f64);
        for _ in 0..trials {
            let mut idx = 0usize;
            let mut scale = 1usize;
            for _ in 0..self.n {
                if rng.gen::<f64>() < p {
                    idx += scale * rng.gen_range(1..self.q) as usize;
                }
                scale *= self.q as usize;
            }
            let hit = self.map[idx];
            if hit != 0 {
                errors += 1;
                let frac = (hit - 1) as f64 / self.k as f64;
                sep_sum += frac;
                sep_sq += frac * frac;
            }
        }
        let t = trials as f64;
        let cep = errors as f64 / t;
        let sep = sep_sum / t;
        MonteCarlo {
            trials,
            cep,
            cep_se: (cep * (1.0 - cep) / t).sqrt(),
            sep,
            sep_se: ((sep_sq / t - sep * sep).max(0.0) / t).sqrt(),
        }
    }
}

fn index(word: &[u32], q: u32) -> usize {
    word.iter().rev().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

fn fill_sphere(field: &Field, center: &[u32], word: &mut [u32], start: usize, left: usize, visit: &mut impl FnMut(&[u32])) {
    visit(word);
    if left == 0 {
        return;
    }
    for i in start..word.len() {
        for e in 1..field.order() {
            word[i] = field.add(center[i], e);
            fill_sphere(field, center, word, i + 1, left - 1, visit);
        }
        word[i] = center[i];
    }
}

/// Which suites to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Gf,
    Codes,
    Mds,
    Identities,
    Binary,
    Duality,
    Errorprob,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = ["gf", "codes", "mds", "identities", "binary", "duality", "errorprob", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "gf" => Suite::Gf,
            "codes" => Suite::Codes,
            "mds" => Suite::Mds,
            "identities" => Suite::Identities,
            "binary" => Suite::Binary,
            "duality" => Suite::Duality,
            "errorprob" => Suite::Errorprob,
            "all" => Suite::All,
            _ => {
                return Err(Error::Parse { what: "suite", detail: format!("{s:?}; expected one of {:?}", Self::NAMES) })
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}/{}: {}", self.suite, self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Failure detail for one check.
#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Failure {
        Failure(s)
    }
}

type Outcome = std::result::Result<String, Failure>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure(msg()))
    }
}

struct Runner {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Runner {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Outcome) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(Failure(d)) => (false, d),
        };
        self.checks.push(Check { suite: self.suite, name: name.to_string(), passed, detail });
    }
}

/// Runs the requested suites with a seed for every randomized check.
pub fn run(suite: Suite, seed: u64) -> VerifyReport {
    let all = [
        (Suite::Gf, "gf", gf_suite as fn(&mut Runner, u64)),
        (Suite::Codes, "codes", codes_suite),
        (Suite::Mds, "mds", mds_suite),
        (Suite::Identities, "identities", identities_suite),
        (Suite::Binary, "binary", binary_suite),
        (Suite::Duality, "duality", duality_suite),
        (Suite::Errorprob, "errorprob", errorprob_suite),
    ];
    let mut checks = Vec::new();
    for (s, name, f) in all {
        if suite == Suite::All || suite == s {
            let mut r = Runner { suite: name, checks: Vec::new() };
            f(&mut r, seed);
            checks.append(&mut r.checks);
        }
    }
    VerifyReport { seed, passed: checks.iter().all(|c| c.passed), checks }
}

const FIELD_ORDERS: [u64; 13] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 64, 256];

fn gf_suite(r: &mut Runner, seed: u64) {
    r.check("inverses", || {
        for q in FIELD_ORDERS {
            let f = Field::from_order(q)?;
            for a in 1..f.order() {
                let i = f.inv(a)?;
                ensure(f.mul(a, i) == 1, || format!("{f}: {a} * {i} != 1"))?;
                ensure(f.inv_table_free(a)? == i, || format!("{f}: table-free inverse of {a}"))?;
            }
        }
        Ok(format!("every nonzero element of {} fields", FIELD_ORDERS.len()))
    });
    r.check("axioms", || {
        for q in FIELD_ORDERS.into_iter().filter(|&q| q <= 16) {
            let f = Field::from_order(q)?;
            let o = f.order();
            for a in 0..o {
                for b in 0..o {
                    ensure(f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a), || format!("{f}: commutativity"))?;
                    ensure(f.sub(f.add(a, b), b) == a, || format!("{f}: subtraction"))?;
                    for c in 0..o {
                        ensure(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), || format!("{f}: associativity"))?;
                        ensure(
                            f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)),
                            || format!("{f}: distributivity"),
                        )?;
                    }
                }
            }
        }
        Ok("exhaustive for q <= 16".into())
    });
    r.check("table-free-agreement", || {
        let mut g = rng(seed);
        for q in FIELD_ORDERS {
            let f = Field::from_order(q)?;
            for _ in 0..2000 {
                let (a, b) = (g.gen_range(0..f.order()), g.gen_range(0..f.order()));
                ensure(f.mul(a, b) == f.mul_table_free(a, b), || format!("{f}: {a}*{b}"))?;
            }
        }
        let big = Field::binary(20)?;
        let a = g.gen_range(1..big.order());
        ensure(big.mul(a, big.inv(a)?) == 1, || "GF(2^20) inverse".into())?;
        Ok("2000 random products per field, GF(2^20) inverse".into())
    });
    r.check("primitive-element", || {
        for q in FIELD_ORDERS {
            let f = Field::from_order(q)?;
            let g = f.primitive_element();
            let mut x = 1;
            for e in 1..f.order() - 1 {
                x = f.mul(x, g);
                ensure(x != 1, || format!("{f}: generator order {e}"))?;
            }
            ensure(f.mul(x, g) == 1, || format!("{f}: generator order mismatch"))?;
        }
        Ok("multiplicative group is cyclic".into())
    });
}

fn rs_params(max_words: u64) -> Vec<(u64, usize, usize)> {
    let mut out = Vec::new();
    for q in [4u64, 8, 16] {
        for n in 1..q as usize {
            for k in 1..=n {
                if q.pow(k as u32) <= max_words {
                    out.push((q, n, k));
                }
            }
        }
    }
    out
}

fn codes_suite(r: &mut Runner, seed: u64) {
    let budget = Budget::DEFAULT;
    r.check("rs-weight-distribution", || {
        let list = rs_params(1 << 12);
        for &(q, n, k) in &list {
            let code = rs_code(&Field::from_order(q)?, n, k)?;
            let brute = code.weight_distribution(budget)?;
            let closed = weight_distribution(MdsParams::new(n, k, q)?);
            ensure(brute == closed, || format!("RS({n},{k}) over GF({q})"))?;
            ensure(brute.iter().sum::<BigUint>() == code.size(), || format!("RS({n},{k}) total"))?;
        }
        Ok(format!("{} RS codes match the MDS formula, totals q^k", list.len()))
    });
    r.check("evaluation-points", || {
        let mut g = rng(seed);
        let f = Field::from_order(8)?;
        let mut pts: Vec<u32> = (1..8).collect();
        pts.shuffle(&mut g);
        let code = rs_code_with_points(&f, &pts[..7], 3)?;
        ensure(
            code.weight_distribution(budget)? == weight_distribution(MdsParams::new(7, 3, 8)?),
            || "shuffled points".into(),
        )?;
        Ok("(7,3) over GF(8) with shuffled points".into())
    });
    r.check("dual", || {
        let mut g = rng(seed ^ 1);
        for q in [2u64, 3, 4, 8] {
            let f = Field::from_order(q)?;
            for _ in 0..4 {
                let n = g.gen_range(2..=7);
                let k = g.gen_range(1..n);
                let c = random_code(&f, n, k, &mut g)?;
                let d = c.dual();
                ensure(d.k() == n - k, || "dual dimension".into())?;
                for a in c.generator() {
                    for b in d.generator() {
                        let dot = a.iter().zip(b).fold(0, |s, (&x, &y)| f.add(s, f.mul(x, y)));
                        ensure(dot == 0, || format!("G H^T != 0 over GF({q})"))?;
                    }
                }
                ensure(same_code(&d.dual(), &c, budget)?, || "dual of dual".into())?;
            }
        }
        Ok("random codes over GF(2), GF(3), GF(4), GF(8)".into())
    });
    r.check("permutation-invariance", || {
        let mut g = rng(seed ^ 2);
        let c = rs_code(&Field::from_order(8)?, 7, 3)?;
        let mut perm: Vec<usize> = (0..7).collect();
        perm.shuffle(&mut g);
        let p = c.permute_coordinates(&perm);
        ensure(p.weight_distribution(budget)? == c.weight_distribution(budget)?, || "weights".into())?;
        Ok("coordinate permutation keeps the weight distribution".into())
    });
    r.check("classical-codes", || {
        let w = |c: LinearCode| -> Result<Vec<u64>> {
            Ok(c.weight_distribution(budget)?.iter().map(|x| x.to_u64().unwrap()).collect())
        };
        let hamming = w(cyclic_code(&Field::binary(1)?, &[1, 1, 0, 1], 7)?)?;
        ensure(hamming == [1, 0, 0, 7, 7, 0, 0, 1], || format!("Hamming {hamming:?}"))?;
        let rm = w(rm1_code(3)?)?;
        ensure(rm == [1, 0, 0, 0, 14, 0, 0, 0, 1], || format!("RM(1,3) {rm:?}"))?;
        Ok("cyclic Hamming (7,4) and RM(1,3)".into())
    });
}

fn mds_suite(r: &mut Runner, seed: u64) {
    let budget = Budget::DEFAULT;
    r.check("rs-7-3-example", || {
        let poly = pwgf(MdsParams::new(7, 3, 8)?, &[1, 1, 2, 3])?;
        let mut coeffs: Vec<u64> = poly.terms().map(|(_, c)| c.to_u64().unwrap()).collect();
        coeffs.sort_unstable();
        let mut expect = vec![1, 21, 42, 21, 21, 63, 7, 14, 14, 42, 7, 21, 21, 217];
        expect.sort_unstable();
        ensure(coeffs == expect, || format!("coefficients {coeffs:?}"))?;
        ensure(poly.coefficient_sum() == BigUint::from(512u32), || "sum".into())?;
        Ok("14 coefficients, sum 512".into())
    });
    r.check("oracle-equivalence", || {
        let mut g = rng(seed);
        let list = rs_params(1 << 12);
        let mut count = 0;
        for &(q, n, k) in &list {
            let params = MdsParams::new(n, k, q)?;
            let code = rs_code(&Field::from_order(q)?, n, k)?;
            let parts: Vec<Partition> = (0..5).map(|_| random_partition(n, 4, &mut g)).collect();
            for table in brute_force_pwe_many(&code, &parts, budget)? {
                if let Some(msg) = pwe_agreement(params, &table)? {
                    return Err(Failure(msg));
                }
                count += 1;
            }
        }
        Ok(format!("{count} (code, partition) pairs, every profile"))
    });
    r.check("marginalization", || {
        let params = MdsParams::new(15, 7, 16)?;
        let poly = pwgf(params, &[3, 3, 5, 4])?;
        let merged = poly.merge_vars(&[vec![0, 1, 2, 3]]);
        let e = weight_distribution(params);
        for (h, c) in e.iter().enumerate() {
            ensure(&merged.coeff(&[h as u32]) == c, || format!("h={h}"))?;
        }
        let two = poly.merge_vars(&[vec![0, 1], vec![2, 3]]);
        ensure(two == pwgf(params, &[6, 9])?, || "merging blocks".into())?;
        ensure(poly.coefficient_sum() == BigUint::from(16u32).pow(7), || "total".into())?;
        Ok("(15,7,16) partition (3,3,5,4)".into())
    });
    r.check("block-order", || {
        let params = MdsParams::new(7, 3, 8)?;
        let a = pwgf(params, &[1, 1, 2, 3])?;
        let b = pwgf(params, &[3, 2, 1, 1])?;
        let rev = a.map_monomials(4, |e| vec![e[3], e[2], e[1], e[0]]);
        ensure(rev.terms().eq(b.terms()), || "reversed blocks".into())?;
        Ok("reordering blocks permutes variables".into())
    });
    r.check("weight-share", || {
        for (n, k, q) in [(7, 3, 8), (7, 5, 8), (15, 11, 16)] {
            let params = MdsParams::new(n, k, q)?;
            for s in 1..=n {
                for h in 0..=n {
                    let (l, rr) = input_weight_share(params, s, h)?;
                    ensure(l == rr, || format!("({n},{k},{q}) s={s} h={h}"))?;
                }
            }
        }
        Ok("n Σ w O(w,h) = s h E(h)".into())
    });
}

fn identities_suite(r: &mut Runner, _seed: u64) {
    for (n, k, q) in [(7, 3, 8), (7, 5, 8), (15, 11, 16), (15, 7, 16)] {
        r.check(&format!("dimension-split-{n}-{k}-{q}"), || {
            let params = MdsParams::new(n, k, q)?;
            for h in params.d()..=n {
                let c = check_identity_dimension_split(params, h);
                ensure(c.holds, || format!("h={h}: {} != {}", c.lhs, c.rhs))?;
            }
            Ok(format!("d <= h <= {n}"))
        });
        r.check(&format!("input-share-{n}-{k}-{q}"), || {
            let params = MdsParams::new(n, k, q)?;
            for s in 1..=k {
                for h in params.d()..=n {
                    let c = check_identity_input_share(params, s, h);
                    ensure(c.holds, || format!("s={s} h={h}: {} != {}", c.lhs, c.rhs))?;
                }
            }
            Ok(format!("1 <= s <= {k}, d <= h <= {n}"))
        });
    }
}

fn binary_suite(r: &mut Runner, _seed: u64) {
    for (n, k) in [(7, 3), (7, 5)] {
        r.check(&format!("closed-form-iowe-{n}-{k}"), || {
            let params = MdsParams::new(n, k, 8)?;
            for s in [1, 3] {
                let closed = BinaryIowe::new(params, s)?;
                let sub = avg_binary_pwgf(&pwgf(params, &[s, n - s])?, 3)?;
                for w_b in 0..=3 * s {
                    for h_b in w_b..=3 * n {
                        let a = closed.get(w_b, h_b)?;
                        let b = sub.coeff(&[w_b as u32, (h_b - w_b) as u32]);
                        ensure(a == b, || format!("s={s} ({w_b},{h_b}): {a} vs {b}"))?;
                    }
                }
            }
            Ok("every (w_b, h_b), s in {1, 3}".into())
        });
        r.check(&format!("bit-share-{n}-{k}"), || {
            let params = MdsParams::new(n, k, 8)?;
            let avg = avg_binary_wgf(params)?;
            for s in [1, 3] {
                let iowe = BinaryIowe::new(params, s)?;
                for h_b in 0..=3 * n {
                    let (l, rr) = binary_share_identity(&iowe, &avg, h_b)?;
                    ensure(l == rr, || format!("s={s} h_b={h_b}"))?;
                }
            }
            Ok("mn Σ w_b Õ = ms h_b Ẽ for every h_b".into())
        });
    }
    r.check("merged-and-nonnegative", || {
        let params = MdsParams::new(7, 3, 8)?;
        let b = avg_binary_pwgf(&pwgf(params, &[1, 1, 2, 3])?, 3)?;
        let avg = avg_binary_wgf(params)?;
        let merged = b.merge_vars(&[vec![0, 1, 2, 3]]);
        for (h, x) in avg.iter().enumerate() {
            ensure(merged.coeff(&[h as u32]) == *x, || format!("h_b={h}"))?;
            ensure(*x >= BigRational::zero(), || format!("negative Ẽ({h})"))?;
        }
        ensure(b.terms().all(|(_, c)| *c >= BigRational::zero()), || "negative coefficient".into())?;
        let total: BigRational = avg.iter().cloned().sum();
        ensure(total == BigRational::from_integer(BigInt::from(512)), || format!("total {total}"))?;
        Ok("merged PWGF equals WGF; total 2^(mk)".into())
    });
}

fn duality_suite(r: &mut Runner, seed: u64) {
    let budget = Budget::DEFAULT;
    r.check("macwilliams-random", || {
        let mut g = rng(seed);
        let mut count = 0;
        for q in [2u64, 4, 8] {
            let f = Field::from_order(q)?;
            for _ in 0..4 {
                let n = g.gen_range(2..=if q == 8 { 6 } else { 8 });
                let k = g.gen_range(1..n);
                let c = random_code(&f, n, k, &mut g)?;
                let part = random_partition(n, 2, &mut g);
                let part = if part.blocks() == 2 { part } else { Partition::contiguous(&[1, n - 1])? };
                let t = brute_force_pwe(&c, &part, budget)?;
                let dual = brute_force_pwe(&c.dual(), &part, budget)?;
                ensure(macwilliams_pwe(&t, q, k)? == dual, || format!("GF({q}) n={n} k={k}"))?;
                let w = c.weight_distribution(budget)?;
                ensure(macwilliams_weights(&w, q, k)? == c.dual().weight_distribution(budget)?, || "weights".into())?;
                count += 1;
            }
        }
        Ok(format!("{count} random codes"))
    });
    r.check("property-a", || {
        let f8 = Field::from_order(8)?;
        let codes = vec![
            ("RS(7,3)", rs_code(&f8, 7, 3)?),
            ("RS(7,5)", rs_code(&f8, 7, 5)?),
            ("RM(1,3)", rm1_code(3)?),
            ("RM(1,4)", rm1_code(4)?),
            ("extended Hamming", rm1_code(3)?.dual()),
            ("cyclic Hamming", cyclic_code(&Field::binary(1)?, &[1, 1, 0, 1], 7)?),
        ];
        for (name, c) in &codes {
            ensure(property_a_check(c, budget)?.holds, || format!("{name} lacks property A"))?;
            let (a, b) = dual_property_a(c, budget)?;
            ensure(a == b, || format!("{name}: dual disagrees"))?;
        }
        let c53 = uneven_53_code()?;
        let rep = property_a_check(&c53, budget)?;
        ensure(!rep.holds && !rep.witnesses.is_empty(), || "(5,3) code should fail".into())?;
        let (a, b) = dual_property_a(&c53, budget)?;
        ensure(a == b, || "(5,3): dual disagrees".into())?;
        Ok(format!("{} codes hold, (5,3) fails with {} witnesses", codes.len(), rep.witnesses.len()))
    });
}

/// The binary (5,3) code without property A.
pub fn uneven_53_code() -> Result<LinearCode> {
    LinearCode::from_generator(&Field::binary(1)?, vec![vec![1, 0, 0, 1, 1], vec![0, 1, 0, 0, 1], vec![0, 0, 1, 0, 1]])
}

/// Conditions for users 1 and 2 on the (3, 3, 5, 4) partition, in the
/// expected increasing order of user 3's conditional error probability.
pub fn ordered_conditions() -> [[UserCondition; 4]; 3] {
    use UserCondition::*;
    [[Full, Full, Free, Free], [Zero, Full, Free, Free], [Zero, Zero, Free, Free]]
}

fn errorprob_suite(r: &mut Runner, seed: u64) {
    let budget = Budget::DEFAULT;
    r.check("distance-distribution", || {
        for q in [2u64, 8, 16] {
            for p in [0.01, 0.1, 0.4] {
                for n in [5usize, 15] {
                    for h in 0..=n {
                        let s: f64 = (0..=n).map(|t| p_t_h(n, q, h, t, p)).sum::<Result<f64>>()?;
                        ensure((s - 1.0).abs() <= 1e-12, || format!("q={q} p={p} n={n} h={h}: {s}"))?;
                    }
                }
            }
        }
        Ok("Σ_t P_t^h = 1 within 1e-12".into())
    });
    r.check("monte-carlo", || {
        let params = MdsParams::new(7, 3, 8)?;
        let e = weight_distribution(params);
        let oracle = SphereOracle::new(&rs_code(&Field::from_order(8)?, 7, 3)?, budget)?;
        let mut details = Vec::new();
        for (i, p) in [0.05, 0.1, 0.2].into_iter().enumerate() {
            let mc = oracle.simulate(p, 1_000_000, seed.wrapping_add(i as u64));
            let cep = cep_bm(&e, 7, 5, 8, p)?;
            let sep = sep_bm(&e, 7, 5, 8, p)?;
            ensure((mc.cep - cep).abs() <= 3.0 * mc.cep_se, || format!("CEP p={p}: {cep} vs {mc:?}"))?;
            ensure((mc.sep - sep).abs() <= 3.0 * mc.sep_se, || format!("SEP p={p}: {sep} vs {mc:?}"))?;
            details.push(format!("p={p}: {:.2}σ/{:.2}σ", (mc.cep - cep) / mc.cep_se, (mc.sep - sep) / mc.sep_se));
        }
        Ok(details.join(", "))
    });
    r.check("user-marginals", || {
        let params = MdsParams::new(15, 11, 16)?;
        let sizes = [3, 3, 5, 4];
        let poly = pwgf(params, &sizes)?;
        let e = weight_distribution(params);
        for j in 0..4 {
            let o = user_iowe(&poly, j);
            for (h, eh) in e.iter().enumerate() {
                let s: BigUint = o.terms().filter(|(x, _)| x[1] as usize == h).map(|(_, c)| c.clone()).sum();
                ensure(&s == eh, || format!("user {j} h={h}"))?;
            }
        }
        Ok("E(h) = Σ_w O^j(w,h) for each user".into())
    });
    r.check("unconditional-users", || {
        let params = MdsParams::new(15, 11, 16)?;
        let sizes = [3, 3, 5, 4];
        let free = [UserCondition::Free; 4];
        let grid = snr_grid("4:8:0.25")?;
        let curves: Vec<Vec<f64>> = (0..3)
            .map(|j| {
                let req = CurveRequest {
                    decoder: Decoder::Bm,
                    metric: Metric::Sep,
                    sizes: Some(sizes.to_vec()),
                    user: Some(j),
                    conditions: Some(free.to_vec()),
                };
                Ok(error_curve(params, &req, &grid)?.points.iter().map(|p| p.probability).collect())
            })
            .collect::<Result<_>>()?;
        ensure(curves[0] == curves[1] && curves[1] == curves[2], || "users differ".into())?;
        let s = symbol_output_weights(params, &sizes, 0, &free)?;
        let b = binary_output_weights(params, &sizes, 2, &free)?;
        let e = weight_distribution(params);
        let avg = avg_binary_wgf(params)?;
        for (h, x) in s.iter().enumerate() {
            ensure(*x == BigRational::new(BigInt::from(e[h].clone()) * h, BigInt::from(15)), || format!("O_{h}"))?;
        }
        for (h, x) in b.iter().enumerate() {
            ensure(*x == &avg[h] * BigRational::new(BigInt::from(h), BigInt::from(60)), || format!("Õ_{h}"))?;
        }
        Ok("identical SEP curves for users 1-3; O_h^j = (h/n)E(h), Õ_h^j = (h/(mn))Ẽ(h)".into())
    });
    r.check("orderings", || {
        let params = MdsParams::new(15, 11, 16)?;
        let sizes = vec![3, 3, 5, 4];
        let grid = snr_grid("4:8:0.25")?;
        let curve = |decoder, metric, user, conditions: Option<Vec<UserCondition>>| -> Result<Vec<f64>> {
            let req = CurveRequest { decoder, metric, sizes: Some(sizes.clone()), user, conditions };
            Ok(error_curve(params, &req, &grid)?.points.iter().map(|p| p.probability).collect())
        };
        let cep = curve(Decoder::Bm, Metric::Cep, None, None)?;
        let sep = curve(Decoder::Bm, Metric::Sep, None, None)?;
        ensure(sep.iter().zip(&cep).all(|(s, c)| s <= c), || "SEP above CEP".into())?;
        let bep = curve(Decoder::MlUnion, Metric::Bep, None, None)?;
        let cep_ml = curve(Decoder::MlUnion, Metric::Cep, None, None)?;
        ensure(bep.iter().zip(&cep_ml).all(|(b, c)| b <= c), || "BEP above union CEP".into())?;
        for (decoder, metric) in [(Decoder::Bm, Metric::Sep), (Decoder::MlUnion, Metric::Bep)] {
            let c: Vec<Vec<f64>> = ordered_conditions()
                .iter()
                .map(|cond| curve(decoder, metric, Some(2), Some(cond.to_vec())))
                .collect::<Result<_>>()?;
            for i in 0..grid.len() {
                ensure(c[0][i] < c[1][i] && c[1][i] < c[2][i], || {
                    format!("{metric:?} at {} dB: {} {} {}", grid[i], c[0][i], c[1][i], c[2][i])
                })?;
            }
        }
        Ok("SEP <= CEP, BEP <= CEP; user 3 conditional (1,1) < (0,1) < (0,0) for SEP and BEP".into())
    });
    r.check("ranges-and-monotonicity", || {
        let grid = snr_grid("0:10:0.5")?;
        for (n, k, q) in [(7usize, 3usize, 8u64), (15, 11, 16), (15, 7, 16)] {
            let params = MdsParams::new(n, k, q)?;
            for (decoder, metric) in
                [(Decoder::Bm, Metric::Cep), (Decoder::Bm, Metric::Sep), (Decoder::MlUnion, Metric::Bep), (Decoder::MlUnion, Metric::Cep)]
            {
                let req = CurveRequest { decoder, metric, sizes: None, user: None, conditions: None };
                let c = error_curve(params, &req, &grid)?;
                ensure(c.points.iter().all(|p| (0.0..=1.0).contains(&p.probability)), || "range".into())?;
                ensure(c.points.windows(2).all(|w| w[1].probability <= w[0].probability), || {
                    format!("({n},{k},{q}) {decoder:?} {metric:?} not monotone")
                })?;
            }
        }
        Ok("probabilities in [0,1], nonincreasing in γ".into())
    });
    r.check("enumerator-totals", || {
        for (n, k, q) in [(7usize, 3usize, 8u64), (15, 11, 16), (10, 4, 27)] {
            let params = MdsParams::new(n, k, q)?;
            let total = BigUint::from(q).pow(k as u32);
            ensure(weight_distribution(params).iter().sum::<BigUint>() == total, || "E".into())?;
            ensure(pwgf(params, &[n - n / 2, n / 2])?.coefficient_sum() == total, || "PWGF".into())?;
            if q.is_power_of_two() {
                let avg: BigRational = avg_binary_wgf(params)?.into_iter().sum();
                ensure(avg == BigRational::from_integer(BigInt::from(total.clone())), || "binary average".into())?;
            }
        }
        Ok("every enumerator total is q^k".into())
    });
}
