//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines are always shown; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use mdswe::binary_avg::{avg_binary_pwgf, avg_binary_wgf, binary_share_identity, BinaryIowe};
use mdswe::duality::{dual_property_a, macwilliams_pwe, property_a_check};
use mdswe::errorprob::{cep_bm, error_curve, p_t_h, sep_bm, snr_grid, CurveRequest, Decoder, Metric};
use mdswe::linear_code::{brute_force_pwe, brute_force_pwe_many, cyclic_code, rm1_code, rs_code, Partition};
use mdswe::mds_enum::{check_identity_dimension_split, check_identity_input_share, pwgf, weight_distribution};
use mdswe::verify::{ordered_conditions, uneven_53_code, pwe_agreement, random_code, random_partition, rng, SphereOracle};
use mdswe::{Budget, Field, MdsParams};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::Rng;

type Outcome = Result<String, String>;

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let poly = pwgf(MdsParams::new(7, 3, 8).map_err(e)?, &[1, 1, 2, 3]).map_err(e)?;
    // (V, X, Y, Z) exponents and coefficients of the worked example
    let expect: [([u32; 4], u64); 14] = [
        ([0, 0, 0, 0], 1),
        ([1, 1, 2, 1], 21),
        ([1, 1, 1, 2], 42),
        ([1, 0, 2, 2], 21),
        ([0, 1, 2, 2], 21),
        ([1, 1, 2, 2], 63),
        ([1, 1, 0, 3], 7),
        ([1, 0, 1, 3], 14),
        ([0, 1, 1, 3], 14),
        ([1, 1, 1, 3], 42),
        ([0, 0, 2, 3], 7),
        ([1, 0, 2, 3], 21),
        ([0, 1, 2, 3], 21),
        ([1, 1, 2, 3], 217),
    ];
    ensure(poly.len() == 14, || format!("{} terms", poly.len()))?;
    for (exps, c) in expect {
        let got = poly.coeff(&exps);
        ensure(got == BigUint::from(c), || format!("{exps:?}: {got}, expected {c}"))?;
    }
    ensure(poly.coefficient_sum() == BigUint::from(512u32), || "sum".into())?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("14 coefficients and sum 512 in {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut g = rng(2);
    let budget = Budget(1 << 20);
    let (mut codes, mut pairs) = (0, 0);
    for q in [4u64, 8, 16] {
        let field = Field::from_order(q).map_err(e)?;
        for n in 1..q as usize {
            for k in 1..=n {
                if q.pow(k as u32) > 1 << 20 {
                    continue;
                }
                let params = MdsParams::new(n, k, q).map_err(e)?;
                let code = rs_code(&field, n, k).map_err(e)?;
                let parts: Vec<Partition> = (0..20).map(|_| random_partition(n, 4, &mut g)).collect();
                for table in brute_force_pwe_many(&code, &parts, budget).map_err(e)? {
                    if let Some(msg) = pwe_agreement(params, &table).map_err(e)? {
                        return Err(msg);
                    }
                    ensure(table.total() == BigUint::from(q).pow(k as u32), || "total".into())?;
                    pairs += 1;
                }
                codes += 1;
            }
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{codes} codes, {pairs} partitions, every profile equal, in {:?}", start.elapsed()))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for (n, k, q) in [(7, 3, 8), (7, 5, 8), (15, 11, 16), (15, 7, 16)] {
        let params = MdsParams::new(n, k, q).map_err(e)?;
        for h in params.d()..=n {
            let c = check_identity_dimension_split(params, h);
            ensure(c.holds && c.lhs == c.rhs, || format!("dimension split ({n},{k},{q}) h={h}"))?;
            count += 1;
            for s in 1..=k {
                let c = check_identity_input_share(params, s, h);
                ensure(c.holds && c.lhs == c.rhs, || format!("share ({n},{k},{q}) s={s} h={h}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} integer identities hold exactly"))
}

fn criterion_4() -> Outcome {
    let budget = Budget::DEFAULT;
    let f8 = Field::from_order(8).map_err(e)?;
    let codes = vec![
        ("rs(8,7,3)", rs_code(&f8, 7, 3).map_err(e)?),
        ("rs(8,7,5)", rs_code(&f8, 7, 5).map_err(e)?),
        ("rm1(3)", rm1_code(3).map_err(e)?),
        ("rm1(4)", rm1_code(4).map_err(e)?),
        ("dual(rm1(3))", rm1_code(3).map_err(e)?.dual()),
        ("cyclic Hamming (7,4)", cyclic_code(&Field::binary(1).map_err(e)?, &[1, 1, 0, 1], 7).map_err(e)?),
    ];
    for (name, c) in &codes {
        ensure(property_a_check(c, budget).map_err(e)?.holds, || format!("{name} lacks property A"))?;
        let (a, b) = dual_property_a(c, budget).map_err(e)?;
        ensure(a && b, || format!("{name}: dual disagrees"))?;
    }
    let c53 = uneven_53_code().map_err(e)?;
    let rep = property_a_check(&c53, budget).map_err(e)?;
    ensure(!rep.holds, || "(5,3) code reported with property A".into())?;
    let w = rep.witnesses.first().ok_or("no witness")?;
    let (a, b) = dual_property_a(&c53, budget).map_err(e)?;
    ensure(!a && !b, || "(5,3) dual disagrees".into())?;
    Ok(format!(
        "{} codes hold; (5,3) fails, e.g. coordinate {} weight {}: {} != {}",
        codes.len(),
        w.coordinate,
        w.weight,
        w.observed,
        w.expected
    ))
}

fn criterion_5() -> Outcome {
    let budget = Budget(1 << 22);
    let mut g = rng(5);
    let mut codes = Vec::new();
    for q in [2u64, 4, 8] {
        let f = Field::from_order(q).map_err(e)?;
        for _ in 0..4 {
            let n = g.gen_range(2..=10);
            // keep both the code and its dual enumerable
            let lo = (1..n).find(|&k| q.pow((n - k) as u32) <= 1 << 20).unwrap_or(1);
            let hi = (1..n).rev().find(|&k| q.pow(k as u32) <= 1 << 20).unwrap_or(1);
            let k = g.gen_range(lo.min(hi)..=hi.max(lo));
            codes.push((format!("random GF({q}) ({n},{k})"), random_code(&f, n, k, &mut g).map_err(e)?));
        }
    }
    let f8 = Field::from_order(8).map_err(e)?;
    codes.push(("RS(7,3)".into(), rs_code(&f8, 7, 3).map_err(e)?));
    codes.push(("RS(7,5)".into(), rs_code(&f8, 7, 5).map_err(e)?));
    codes.push(("(5,3)".into(), uneven_53_code().map_err(e)?));
    for (name, c) in &codes {
        let n = c.n();
        let q = c.field().order() as u64;
        for _ in 0..3 {
            let part = random_partition(n, 2, &mut g);
            let part = if part.blocks() == 2 { part } else { Partition::contiguous(&[1, n - 1]).map_err(e)? };
            let t = brute_force_pwe(c, &part, budget).map_err(e)?;
            let want = brute_force_pwe(&c.dual(), &part, budget).map_err(e)?;
            let got = macwilliams_pwe(&t, q, c.k()).map_err(e)?;
            ensure(got == want, || format!("{name} partition {:?}", part.assignment()))?;
        }
    }
    Ok(format!("{} codes ({} random), 3 partitions each", codes.len(), codes.len() - 3))
}

fn criterion_6() -> Outcome {
    let mut cells = 0;
    for k in [3, 5] {
        let params = MdsParams::new(7, k, 8).map_err(e)?;
        let avg = avg_binary_wgf(params).map_err(e)?;
        for s in [1, 3] {
            let closed = BinaryIowe::new(params, s).map_err(e)?;
            let sub = avg_binary_pwgf(&pwgf(params, &[s, 7 - s]).map_err(e)?, 3).map_err(e)?;
            for w_b in 0..=3 * s {
                for h_b in w_b..=21 {
                    let a = closed.get(w_b, h_b).map_err(e)?;
                    let b = sub.coeff(&[w_b as u32, (h_b - w_b) as u32]);
                    ensure(a == b, || format!("(7,{k}) s={s} ({w_b},{h_b}): {a} vs {b}"))?;
                    cells += 1;
                }
            }
            for h_b in 0..=21 {
                // mn Σ w_b Õ(w_b,h_b) = (ms) h_b Ẽ(h_b): n and s counted in bits
                let (l, r) = binary_share_identity(&closed, &avg, h_b).map_err(e)?;
                ensure(l == r, || format!("(7,{k}) s={s} h_b={h_b}: {l} vs {r}"))?;
            }
        }
    }
    Ok(format!("{cells} closed-form cells equal the substitution; bit-share identity exact"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    for q in [2u64, 8, 16] {
        for p in [0.01, 0.1, 0.4] {
            for n in [7usize, 15] {
                for h in 0..=n {
                    let s: f64 = (0..=n).map(|t| p_t_h(n, q, h, t, p).unwrap()).sum();
                    ensure((s - 1.0).abs() <= 1e-12, || format!("Σ_t P_t^h = {s} (q={q} p={p} h={h})"))?;
                }
            }
        }
    }
    let params = MdsParams::new(7, 3, 8).map_err(e)?;
    let weights = weight_distribution(params);
    let oracle = SphereOracle::new(&rs_code(&Field::from_order(8).map_err(e)?, 7, 3).map_err(e)?, Budget::DEFAULT)
        .map_err(e)?;
    let mut notes = Vec::new();
    for (i, p) in [0.05, 0.1, 0.2].into_iter().enumerate() {
        let mc = oracle.simulate(p, 1_000_000, 700 + i as u64);
        let cep = cep_bm(&weights, 7, 5, 8, p).map_err(e)?;
        let sep = sep_bm(&weights, 7, 5, 8, p).map_err(e)?;
        let zc = (mc.cep - cep) / mc.cep_se;
        let zs = (mc.sep - sep) / mc.sep_se;
        ensure(zc.abs() <= 3.0 && zs.abs() <= 3.0, || format!("p={p}: CEP {cep} vs {} (z={zc:.2}), SEP {sep} vs {} (z={zs:.2})", mc.cep, mc.sep))?;
        notes.push(format!("p={p} z=({zc:.2},{zs:.2})"));
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("Σ P_t^h = 1; 10^6 trials: {}; {:?}", notes.join(", "), start.elapsed()))
}

fn curve(
    params: MdsParams,
    decoder: Decoder,
    metric: Metric,
    user: Option<usize>,
    conditions: Option<Vec<mdswe::errorprob::UserCondition>>,
    grid: &[f64],
) -> Result<Vec<f64>, String> {
    let req = CurveRequest { decoder, metric, sizes: Some(vec![3, 3, 5, 4]), user, conditions };
    Ok(error_curve(params, &req, grid).map_err(e)?.points.iter().map(|p| p.probability).collect())
}

fn criterion_8() -> Outcome {
    let params = MdsParams::new(15, 11, 16).map_err(e)?;
    let grid = snr_grid("4:8:0.25").map_err(e)?;
    let free = Some(vec![mdswe::errorprob::UserCondition::Free; 4]);
    for (decoder, metric, name) in [(Decoder::Bm, Metric::Sep, "SEP"), (Decoder::MlUnion, Metric::Bep, "BEP")] {
        let users: Vec<Vec<f64>> =
            (0..3).map(|j| curve(params, decoder, metric, Some(j), free.clone(), &grid)).collect::<Result<_, _>>()?;
        ensure(users[0] == users[1] && users[1] == users[2], || format!("unconditional {name} differs across users"))?;
        let cep = curve(params, decoder, Metric::Cep, None, None, &grid)?;
        let all = curve(params, decoder, metric, None, None, &grid)?;
        ensure(all.iter().zip(&cep).all(|(a, c)| a <= c), || format!("{name} above CEP"))?;
        let cond: Vec<Vec<f64>> = ordered_conditions()
            .iter()
            .map(|c| curve(params, decoder, metric, Some(2), Some(c.to_vec()), &grid))
            .collect::<Result<_, _>>()?;
        for (i, g) in grid.iter().enumerate() {
            ensure(cond[0][i] < cond[1][i] && cond[1][i] < cond[2][i], || {
                format!("{name} at {g} dB: (1,1)={} (0,1)={} (0,0)={}", cond[0][i], cond[1][i], cond[2][i])
            })?;
        }
    }
    Ok(format!("{} grid points: users 1-3 identical, SEP<=CEP, BEP<=CEP, (1,1)<(0,1)<(0,0) for SEP and BEP", grid.len()))
}

fn criterion_9() -> Outcome {
    let grid = snr_grid("0:10:0.5").map_err(e)?;
    for (n, k, q) in [(7usize, 3usize, 8u64), (7, 5, 8), (15, 11, 16), (15, 7, 16)] {
        let params = MdsParams::new(n, k, q).map_err(e)?;
        let total = BigUint::from(q).pow(k as u32);
        ensure(weight_distribution(params).iter().sum::<BigUint>() == total, || "E total".into())?;
        ensure(pwgf(params, &[n / 3, n / 3, n - 2 * (n / 3)]).map_err(e)?.coefficient_sum() == total, || "PWGF total".into())?;
        let avg: BigRational = avg_binary_wgf(params).map_err(e)?.into_iter().sum();
        ensure(avg == BigRational::from_integer(BigInt::from(total)), || "binary total".into())?;
        for (decoder, metric) in [(Decoder::Bm, Metric::Cep), (Decoder::Bm, Metric::Sep), (Decoder::MlUnion, Metric::Bep)] {
            let req = CurveRequest { decoder, metric, sizes: None, user: None, conditions: None };
            let c = error_curve(params, &req, &grid).map_err(e)?;
            ensure(c.points.iter().all(|p| (0.0..=1.0).contains(&p.probability)), || "probability range".into())?;
        }
    }
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_mdswe")).args(["verify", "--suite", "all", "--seed", "7"]).output().map_err(e)?;
    let code = out.status.code();
    ensure(code == Some(0), || format!("verify exited {code:?}:\n{}", String::from_utf8_lossy(&out.stdout)))?;
    within(start, Duration::from_secs(600))?;
    let summary = String::from_utf8_lossy(&out.stdout).lines().last().unwrap_or("").to_string();
    Ok(format!("totals q^k, probabilities in [0,1], `verify --suite all --seed 7` exit 0 ({summary}) in {:?}", start.elapsed()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 worked example exact", criterion_1),
        ("2 oracle equivalence", criterion_2),
        ("3 identity suite", criterion_3),
        ("4 property A", criterion_4),
        ("5 MacWilliams", criterion_5),
        ("6 binary average consistency", criterion_6),
        ("7 channel/decoder", criterion_7),
        ("8 multiuser", criterion_8),
        ("9 sanity", criterion_9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(d) => println!("PASS criterion {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL criterion {name}: {d}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
