//! Linear codes over a [`Field`] and brute-force enumeration of their
//! codewords.
//!
//! Every closed-form enumerator in this crate is checked against
//! [`brute_force_pwe`], which walks all `q^k` messages and tallies the
//! weight profile of each codeword.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::EnumeratorPoly;

/// Maximum number of codewords an enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 26);
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// A linear `(n, k)` code given by a full-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    generator: Vec<Vec<u32>>,
    systematic_columns: Option<Vec<usize>>,
}

impl LinearCode {
    /// The code spanned by `rows`. Fails if the rows are dependent.
    pub fn from_generator(field: &Field, rows: Vec<Vec<u32>>) -> Result<LinearCode> {
        let Some(n) = rows.first().map(Vec::len) else {
            return Err(Error::InvalidDimension { n: 0, k: 0 });
        };
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse { what: "generator", detail: "rows must share a nonzero length".into() });
        }
        if let Some(&v) = rows.iter().flatten().find(|&&v| v >= field.order()) {
            return Err(Error::ElementOutOfRange { value: v as u64, order: field.order() });
        }
        let (_, pivots) = row_reduce(field, &rows);
        if pivots.len() < rows.len() {
            return Err(Error::RankDeficient { rows: rows.len(), rank: pivots.len() });
        }
        let systematic_columns = find_identity_columns(&rows);
        Ok(LinearCode { field: field.clone(), n, generator: rows, systematic_columns })
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode { field: field.clone(), n, generator: Vec::new(), systematic_columns: Some(Vec::new()) }
    }

    /// The whole space `GF(q)^n`.
    pub fn full_space(field: &Field, n: usize) -> LinearCode {
        let rows = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        LinearCode { field: field.clone(), n, generator: rows, systematic_columns: Some((0..n).collect()) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.generator
    }

    /// Coordinates whose generator columns form the `k x k` identity.
    pub fn systematic_columns(&self) -> Option<&[usize]> {
        self.systematic_columns.as_deref()
    }

    /// `q^k` as an exact integer.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.field.order()).pow(self.k() as u32)
    }

    pub fn encode(&self, message: &[u32]) -> Vec<u32> {
        assert_eq!(message.len(), self.k(), "message length");
        let f = &self.field;
        let mut out = vec![0u32; self.n];
        for (row, &c) in self.generator.iter().zip(message) {
            if c == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(c, g));
            }
        }
        out
    }

    /// The same code with generator in reduced row echelon form; the pivot
    /// columns become the systematic coordinates.
    pub fn systematic(&self) -> LinearCode {
        let (rows, pivots) = row_reduce(&self.field, &self.generator);
        LinearCode { field: self.field.clone(), n: self.n, generator: rows, systematic_columns: Some(pivots) }
    }

    /// The dual code: generator spans the null space of this generator.
    pub fn dual(&self) -> LinearCode {
        let f = &self.field;
        let (rref, pivots) = row_reduce(f, &self.generator);
        let free: Vec<usize> = (0..self.n).filter(|c| !pivots.contains(c)).collect();
        let rows: Vec<Vec<u32>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.n];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(rref[r][fc]);
                }
                v
            })
            .collect();
        LinearCode { field: f.clone(), n: self.n, generator: rows, systematic_columns: Some(free) }
    }

    /// The code with coordinates reordered so that new coordinate `i` is old
    /// coordinate `perm[i]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> LinearCode {
        assert_eq!(perm.len(), self.n, "permutation length");
        let rows: Vec<Vec<u32>> = self.generator.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
        let systematic_columns = find_identity_columns(&rows);
        LinearCode { field: self.field.clone(), n: self.n, generator: rows, systematic_columns }
    }

    /// Fails with [`Error::BudgetExceeded`] when `q^k` exceeds `budget`.
    pub fn check_budget(&self, budget: Budget) -> Result<u64> {
        let size = self.size();
        match size.to_u64() {
            Some(s) if s <= budget.0 => Ok(s),
            _ => Err(Error::BudgetExceeded { codewords: size.to_string(), budget: budget.0 }),
        }
    }

    /// Folds over every codeword, messages taken in lexicographic order of
    /// their integer encodings within each worker's range. The merge must be
    /// associative and commutative for the result to be schedule-independent.
    pub fn fold_codewords<T, I, V, M>(&self, budget: Budget, init: I, visit: V, merge: M) -> Result<T>
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        V: Fn(&mut T, &[u32]) + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        let total = self.check_budget(budget)?;
        let chunk = (total / (64 * rayon::current_num_threads() as u64)).max(1 << 12);
        let ranges: Vec<(u64, u64)> =
            (0..total).step_by(chunk as usize).map(|s| (s, (s + chunk).min(total))).collect();
        Ok(ranges
            .into_par_iter()
            .map(|(start, end)| {
                let mut acc = init();
                self.walk_range(start, end, |cw| visit(&mut acc, cw));
                acc
            })
            .reduce(&init, &merge))
    }

    /// Calls `visit` on the codewords of messages `start..end`.
    pub fn walk_range(&self, start: u64, end: u64, mut visit: impl FnMut(&[u32])) {
        let f = &self.field;
        let q = f.order() as u64;
        let k = self.k();
        // digits[0] is the most significant
        let mut digits = vec![0u32; k];
        let mut rest = start;
        for d in digits.iter_mut().rev() {
            *d = (rest % q) as u32;
            rest /= q;
        }
        let mut cw = self.encode(&digits);
        let mut index = start;
        while index < end {
            visit(&cw);
            index += 1;
            if index == end {
                break;
            }
            let mut pos = k;
            loop {
                pos -= 1;
                let old = digits[pos];
                let new = if old + 1 == q as u32 { 0 } else { old + 1 };
                digits[pos] = new;
                let delta = f.sub(new, old);
                for (c, &g) in cw.iter_mut().zip(&self.generator[pos]) {
                    *c = f.add(*c, f.mul(delta, g));
                }
                if new != 0 {
                    break;
                }
            }
        }
    }

    /// All codewords, in message order. Intended for small codes.
    pub fn codewords(&self, budget: Budget) -> Result<Vec<Vec<u32>>> {
        let total = self.check_budget(budget)?;
        let mut out = Vec::with_capacity(total as usize);
        self.walk_range(0, total, |cw| out.push(cw.to_vec()));
        Ok(out)
    }

    /// Hamming weight distribution by enumeration.
    pub fn weight_distribution(&self, budget: Budget) -> Result<Vec<BigUint>> {
        let table = brute_force_pwe(self, &Partition::single(self.n), budget)?;
        let mut out = vec![BigUint::zero(); self.n + 1];
        for (profile, count) in table.iter() {
            out[profile[0]] += count;
        }
        Ok(out)
    }
}

/// Reed-Solomon evaluation code over the first `n` powers of the primitive
/// element, `alpha^0, ..., alpha^(n-1)`, put in systematic form on the first
/// `k` coordinates.
pub fn rs_code(field: &Field, n: usize, k: usize) -> Result<LinearCode> {
    let max = field.order() as usize - 1;
    if n > max {
        return Err(Error::LengthExceedsField { n, max });
    }
    let alpha = field.primitive_element();
    let points: Vec<u32> = (0..n).map(|i| field.pow(alpha, i as u64)).collect();
    rs_code_with_points(field, &points, k)
}

/// Reed-Solomon code `{(f(x_1), ..., f(x_n)) : deg f < k}` over the given
/// distinct nonzero evaluation points.
pub fn rs_code_with_points(field: &Field, points: &[u32], k: usize) -> Result<LinearCode> {
    let n = points.len();
    if k == 0 || k > n {
        return Err(Error::InvalidDimension { n, k });
    }
    let max = field.order() as usize - 1;
    if n > max {
        return Err(Error::LengthExceedsField { n, max });
    }
    let mut seen = std::collections::HashSet::new();
    for &x in points {
        if x == 0 || x >= field.order() || !seen.insert(x) {
            return Err(Error::ParamOutOfRange(format!("evaluation point {x} is zero, repeated or outside the field")));
        }
    }
    let rows: Vec<Vec<u32>> = (0..k).map(|i| points.iter().map(|&x| field.pow(x, i as u64)).collect()).collect();
    let (rref, pivots) = row_reduce(field, &rows);
    debug_assert_eq!(pivots, (0..k).collect::<Vec<_>>());
    Ok(LinearCode { field: field.clone(), n, generator: rref, systematic_columns: Some(pivots) })
}

/// First-order Reed-Muller code RM(1, m): the all-ones row plus, for each
/// bit position `b`, the row whose coordinate `j` is bit `b` of `j`.
pub fn rm1_code(m: u32) -> Result<LinearCode> {
    if m == 0 || m > 20 {
        return Err(Error::ParamOutOfRange(format!("RM(1, m) needs 1 <= m <= 20, got {m}")));
    }
    let field = Field::binary(1)?;
    let n = 1usize << m;
    let mut rows = vec![vec![1u32; n]];
    for b in 0..m {
        rows.push((0..n).map(|j| ((j >> b) & 1) as u32).collect());
    }
    LinearCode::from_generator(&field, rows)
}

/// Cyclic code of length `n` generated by `generator_poly` (coefficients low
/// to high); the generator matrix holds its first `n - deg + 1` shifts.
pub fn cyclic_code(field: &Field, generator_poly: &[u32], n: usize) -> Result<LinearCode> {
    let deg = generator_poly.iter().rposition(|&c| c != 0).ok_or(Error::InvalidDimension { n, k: 0 })?;
    if deg >= n {
        return Err(Error::InvalidDimension { n, k: 0 });
    }
    let k = n - deg;
    let rows = (0..k)
        .map(|s| {
            let mut row = vec![0u32; n];
            row[s..=s + deg].copy_from_slice(&generator_poly[..=deg]);
            row
        })
        .collect();
    LinearCode::from_generator(field, rows)
}

/// Reduced row echelon form and pivot columns. Zero rows are dropped.
pub fn row_reduce(field: &Field, rows: &[Vec<u32>]) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut a: Vec<Vec<u32>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(a[r][col]).expect("pivot is nonzero");
        for v in a[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Column indices `c_0, ..., c_{k-1}` with column `c_i` equal to the unit
/// vector `e_i`, if every row has one.
fn find_identity_columns(rows: &[Vec<u32>]) -> Option<Vec<usize>> {
    let n = rows.first()?.len();
    (0..rows.len())
        .map(|i| (0..n).find(|&c| rows.iter().enumerate().all(|(r, row)| row[c] == u32::from(r == i))))
        .collect()
}

/// Assignment of the `n` coordinates to `p` nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    sizes: Vec<usize>,
    assignment: Vec<usize>,
}

impl Partition {
    /// Consecutive blocks: the first `sizes[0]` coordinates, then the next
    /// `sizes[1]`, and so on.
    pub fn contiguous(sizes: &[usize]) -> Result<Partition> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::PartitionMismatch(format!("block sizes must be positive, got {sizes:?}")));
        }
        let assignment = sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat(b).take(s)).collect();
        Ok(Partition { sizes: sizes.to_vec(), assignment })
    }

    /// A single block holding every coordinate.
    pub fn single(n: usize) -> Partition {
        Partition { sizes: vec![n], assignment: vec![0; n] }
    }

    /// `assignment[i]` is the block of coordinate `i`; blocks are numbered
    /// `0..p` and each must be nonempty.
    pub fn from_assignment(assignment: Vec<usize>) -> Result<Partition> {
        let p = assignment.iter().max().map_or(0, |&b| b + 1);
        let mut sizes = vec![0usize; p];
        for &b in &assignment {
            sizes[b] += 1;
        }
        if p == 0 || sizes.contains(&0) {
            return Err(Error::PartitionMismatch("every block must receive a coordinate".into()));
        }
        Ok(Partition { sizes, assignment })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn blocks(&self) -> usize {
        self.sizes.len()
    }

    /// Weight profile of `word`.
    pub fn profile(&self, word: &[u32]) -> Vec<usize> {
        let mut out = vec![0usize; self.sizes.len()];
        for (&b, &x) in self.assignment.iter().zip(word) {
            if x != 0 {
                out[b] += 1;
            }
        }
        out
    }
}

/// Partition weight enumerator: weight profile to codeword count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PweTable {
    sizes: Vec<usize>,
    counts: BTreeMap<Vec<usize>, BigUint>,
}

impl PweTable {
    pub fn new(sizes: &[usize]) -> PweTable {
        PweTable { sizes: sizes.to_vec(), counts: BTreeMap::new() }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    fn check_profile(&self, profile: &[usize]) -> Result<()> {
        if profile.len() != self.sizes.len() || profile.iter().zip(&self.sizes).any(|(w, n)| w > n) {
            return Err(Error::ProfileOutOfRange(format!("{profile:?} for block sizes {:?}", self.sizes)));
        }
        Ok(())
    }

    /// Adds `count` codewords with the given profile.
    pub fn add(&mut self, profile: Vec<usize>, count: BigUint) -> Result<()> {
        self.check_profile(&profile)?;
        if count.is_zero() {
            return Ok(());
        }
        *self.counts.entry(profile).or_insert_with(BigUint::zero) += count;
        Ok(())
    }

    pub fn get(&self, profile: &[usize]) -> BigUint {
        self.counts.get(profile).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Nonzero entries in lexicographic profile order.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &BigUint)> {
        self.counts.iter().map(|(p, c)| (p.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn to_poly(&self) -> EnumeratorPoly {
        let mut p = EnumeratorPoly::with_caps(self.sizes.iter().map(|&s| s as u32).collect());
        for (profile, c) in &self.counts {
            p.add_term(profile.iter().map(|&w| w as u32).collect(), c.clone());
        }
        p
    }

    /// Table whose entries are the coefficients of `poly`; the caps must be
    /// the block sizes.
    pub fn from_poly(poly: &EnumeratorPoly, sizes: &[usize]) -> Result<PweTable> {
        let mut t = PweTable::new(sizes);
        for (e, c) in poly.terms() {
            t.add(e.iter().map(|&x| x as usize).collect(), c.clone())?;
        }
        Ok(t)
    }
}

/// Exact partition weight enumerator by walking all `q^k` codewords.
pub fn brute_force_pwe(code: &LinearCode, partition: &Partition, budget: Budget) -> Result<PweTable> {
    brute_force_pwe_many(code, std::slice::from_ref(partition), budget).map(|mut v| v.remove(0))
}

/// [`brute_force_pwe`] for several partitions of the same code with a single
/// enumeration pass.
pub fn brute_force_pwe_many(code: &LinearCode, partitions: &[Partition], budget: Budget) -> Result<Vec<PweTable>> {
    for p in partitions {
        if p.n() != code.n() {
            return Err(Error::PartitionMismatch(format!("partition covers {} coordinates, code has {}", p.n(), code.n())));
        }
    }
    if code.n() <= 64 {
        // Tally supports once, then project onto each partition.
        let supports = code.fold_codewords(
            budget,
            HashMap::<u64, u64>::new,
            |acc, cw| {
                let mask = cw.iter().enumerate().fold(0u64, |m, (i, &x)| if x != 0 { m | (1 << i) } else { m });
                *acc.entry(mask).or_insert(0) += 1;
            },
            merge_counts,
        )?;
        let mut supports: Vec<(u64, u64)> = supports.into_iter().collect();
        supports.sort_unstable();
        return partitions
            .iter()
            .map(|p| {
                let mut projected: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
                for &(mask, count) in &supports {
                    let mut profile = vec![0usize; p.blocks()];
                    for (i, &b) in p.assignment().iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            profile[b] += 1;
                        }
                    }
                    *projected.entry(profile).or_insert(0) += count;
                }
                let mut t = PweTable::new(p.sizes());
                for (profile, c) in projected {
                    t.add(profile, BigUint::from(c))?;
                }
                Ok(t)
            })
            .collect();
    }
    partitions
        .iter()
        .map(|p| {
            let counts = code.fold_codewords(
                budget,
                HashMap::<Vec<usize>, u64>::new,
                |acc, cw| *acc.entry(p.profile(cw)).or_insert(0) += 1,
                merge_counts,
            )?;
            let mut t = PweTable::new(p.sizes());
            for (profile, c) in counts {
                t.add(profile, BigUint::from(c))?;
            }
            Ok(t)
        })
        .collect()
}

fn merge_counts<K: std::hash::Hash + Eq>(mut a: HashMap<K, u64>, b: HashMap<K, u64>) -> HashMap<K, u64> {
    if a.len() < b.len() {
        return merge_counts(b, a);
    }
    for (key, c) in b {
        *a.entry(key).or_insert(0) += c;
    }
    a
}

/// `true` when `a` and `b` contain the same codewords.
pub fn same_code(a: &LinearCode, b: &LinearCode, budget: Budget) -> Result<bool> {
    if a.field() != b.field() || a.n() != b.n() || a.k() != b.k() {
        return Ok(false);
    }
    let mut x = a.codewords(budget)?;
    let mut y = b.codewords(budget)?;
    x.sort_unstable();
    y.sort_unstable();
    Ok(x == y)
}

/// `q^k` for `k` coordinates; handy when checking table totals.
pub fn code_size(q: u64, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    BigUint::from(q).pow(k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    fn weights(code: &LinearCode) -> Vec<u64> {
        code.weight_distribution(Budget::DEFAULT).unwrap().iter().map(|c| c.to_u64().unwrap()).collect()
    }

    #[test]
    fn rs_7_3_has_distance_5() {
        let c = rs_code(&gf(8), 7, 3).unwrap();
        assert_eq!(c.size(), BigUint::from(512u32));
        assert_eq!(weights(&c), vec![1, 0, 0, 0, 0, 147, 147, 217]);
        assert_eq!(c.systematic_columns(), Some(&[0, 1, 2][..]));
    }

    #[test]
    fn rs_full_and_errors() {
        let c = rs_code(&gf(8), 7, 7).unwrap();
        assert_eq!(weights(&c)[1], 7 * 7);
        assert_eq!(rs_code(&gf(8), 8, 3), Err(Error::LengthExceedsField { n: 8, max: 7 }));
        assert!(rs_code(&gf(8), 5, 0).is_err());
        let big = rs_code(&gf(16), 15, 11).unwrap();
        assert_eq!((big.n(), big.k()), (15, 11));
    }

    #[test]
    fn rs_minimum_distance_exhaustive() {
        for q in [4u64, 8] {
            let f = gf(q);
            for n in 1..q as usize {
                for k in 1..=n {
                    let w = weights(&rs_code(&f, n, k).unwrap());
                    let d = n - k + 1;
                    assert!(w[1..d].iter().all(|&x| x == 0), "q={q} n={n} k={k}");
                    assert!(w[d] > 0);
                }
            }
        }
    }

    #[test]
    fn rm1_weights() {
        assert_eq!(weights(&rm1_code(1).unwrap()), vec![1, 2, 1]);
        assert_eq!(weights(&rm1_code(2).unwrap()), vec![1, 0, 6, 0, 1]);
        assert_eq!(weights(&rm1_code(3).unwrap()), vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
    }

    #[test]
    fn small_binary_code_codewords() {
        let f = gf(2);
        let c = LinearCode::from_generator(&f, vec![vec![1, 0, 0, 1, 1], vec![0, 1, 0, 0, 1], vec![0, 0, 1, 0, 1]]).unwrap();
        let mut words: Vec<String> = c
            .codewords(Budget::DEFAULT)
            .unwrap()
            .iter()
            .map(|w| w.iter().map(|x| x.to_string()).collect())
            .collect();
        words.sort();
        let mut expected = vec!["00000", "10011", "01001", "11010", "00101", "10110", "01100", "11111"];
        expected.sort();
        assert_eq!(words, expected);
        assert_eq!(c.systematic_columns(), Some(&[0, 1, 2][..]));
    }

    #[test]
    fn generator_errors() {
        let f = gf(2);
        assert_eq!(
            LinearCode::from_generator(&f, vec![vec![1, 1, 0], vec![1, 1, 0]]),
            Err(Error::RankDeficient { rows: 2, rank: 1 })
        );
        assert!(LinearCode::from_generator(&f, vec![]).is_err());
        assert!(LinearCode::from_generator(&f, vec![vec![2, 0]]).is_err());
        let rep = LinearCode::from_generator(&f, vec![vec![1; 5]]).unwrap();
        assert_eq!(weights(&rep), vec![1, 0, 0, 0, 0, 1]);
        let id = LinearCode::from_generator(&gf(4), vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(id.size(), BigUint::from(16u32));
    }

    #[test]
    fn duals() {
        let f = gf(8);
        let full = LinearCode::full_space(&f, 4);
        let zero = full.dual();
        assert_eq!(zero.k(), 0);
        assert_eq!(zero.codewords(Budget::DEFAULT).unwrap(), vec![vec![0; 4]]);

        let rm = rm1_code(3).unwrap();
        let hamming = rm.dual();
        assert_eq!((hamming.n(), hamming.k()), (8, 4));
        assert_eq!(weights(&hamming), vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);

        let c = LinearCode::from_generator(&gf(2), vec![vec![1, 0, 0, 1, 1], vec![0, 1, 0, 0, 1], vec![0, 0, 1, 0, 1]]).unwrap();
        assert!(same_code(&c, &c.dual().dual(), Budget::DEFAULT).unwrap());

        let rs = rs_code(&f, 7, 3).unwrap();
        let d = rs.dual();
        for g in rs.generator() {
            for h in d.generator() {
                let ip = g.iter().zip(h).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(ip, 0);
            }
        }
        assert_eq!(weights(&d)[..4], [1, 0, 0, 0]);
    }

    #[test]
    fn dual_over_odd_characteristic() {
        let f = gf(9);
        let c = rs_code(&f, 6, 2).unwrap();
        let d = c.dual();
        assert_eq!(d.k(), 4);
        for g in c.generator() {
            for h in d.generator() {
                let ip = g.iter().zip(h).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(ip, 0);
            }
        }
        // dual of an MDS code is MDS
        assert_eq!(weights(&d)[1..3], [0, 0]);
    }

    #[test]
    fn zero_profile_and_total() {
        let c = rs_code(&gf(8), 7, 3).unwrap();
        let t = brute_force_pwe(&c, &Partition::contiguous(&[1, 1, 2, 3]).unwrap(), Budget::DEFAULT).unwrap();
        assert_eq!(t.get(&[0, 0, 0, 0]), BigUint::one());
        assert_eq!(t.get(&[1, 1, 2, 1]), BigUint::from(21u32));
        assert_eq!(t.get(&[1, 1, 2, 3]), BigUint::from(217u32));
        assert_eq!(t.len(), 14);
        assert_eq!(t.total(), BigUint::from(512u32));
    }

    #[test]
    fn budget_is_enforced() {
        let c = rs_code(&gf(16), 15, 11).unwrap();
        let err = brute_force_pwe(&c, &Partition::single(15), Budget::DEFAULT).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let small = rs_code(&gf(8), 7, 3).unwrap();
        assert!(brute_force_pwe(&small, &Partition::single(7), Budget(511)).is_err());
        assert!(brute_force_pwe(&small, &Partition::single(7), Budget(512)).is_ok());
    }

    #[test]
    fn partition_mismatch() {
        let c = rs_code(&gf(8), 7, 3).unwrap();
        assert!(matches!(
            brute_force_pwe(&c, &Partition::contiguous(&[3, 3]).unwrap(), Budget::DEFAULT),
            Err(Error::PartitionMismatch(_))
        ));
        assert!(Partition::contiguous(&[2, 0]).is_err());
        assert!(Partition::from_assignment(vec![0, 2]).is_err());
    }

    #[test]
    fn evaluation_point_order_does_not_matter() {
        let f = gf(8);
        let a = rs_code(&f, 7, 3).unwrap();
        let alpha = f.primitive_element();
        let points: Vec<u32> = (0..7).rev().map(|i| f.pow(alpha, 3 * i as u64 % 7)).collect();
        let b = rs_code_with_points(&f, &points, 3).unwrap();
        assert!(!same_code(&a, &b, Budget::DEFAULT).unwrap());
        for sizes in [[1usize, 1, 2, 3], [3, 1, 1, 2]] {
            let p = Partition::contiguous(&sizes).unwrap();
            assert_eq!(
                brute_force_pwe(&a, &p, Budget::DEFAULT).unwrap(),
                brute_force_pwe(&b, &p, Budget::DEFAULT).unwrap()
            );
        }
    }

    #[test]
    fn long_code_uses_profile_path() {
        let f = gf(2);
        let rep = LinearCode::from_generator(&f, vec![vec![1; 70]]).unwrap();
        let t = brute_force_pwe(&rep, &Partition::contiguous(&[30, 40]).unwrap(), Budget::DEFAULT).unwrap();
        assert_eq!(t.get(&[30, 40]), BigUint::one());
        assert_eq!(t.total(), BigUint::from(2u32));
    }

    #[test]
    fn cyclic_hamming() {
        let c = cyclic_code(&gf(2), &[1, 1, 0, 1], 7).unwrap();
        assert_eq!(c.k(), 4);
        assert_eq!(weights(&c), vec![1, 0, 0, 7, 7, 0, 0, 1]);
    }
}
