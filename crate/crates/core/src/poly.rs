//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficient ring for [`Poly`].
pub trait Coefficient:
    Clone + Zero + One + PartialEq + fmt::Debug + fmt::Display + Add<Output = Self> + Mul<Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone + Zero + One + PartialEq + fmt::Debug + fmt::Display + Add<Output = T> + Mul<Output = T>
{
}

/// `Σ c · X_1^e_1 ··· X_p^e_p`, keyed by exponent tuple in lexicographic
/// order. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<C> {
    nvars: usize,
    caps: Option<Vec<u32>>,
    terms: BTreeMap<Vec<u32>, C>,
}

/// Symbol-level enumerator: integer counts.
pub type EnumeratorPoly = Poly<BigUint>;
/// Averaged enumerator: exact rationals.
pub type RationalPoly = Poly<BigRational>;

impl<C: Coefficient> Poly<C> {
    pub fn new(nvars: usize) -> Self {
        Poly { nvars, caps: None, terms: BTreeMap::new() }
    }

    /// A polynomial whose exponent in variable `i` never exceeds `caps[i]`.
    pub fn with_caps(caps: Vec<u32>) -> Self {
        Poly { nvars: caps.len(), caps: Some(caps), terms: BTreeMap::new() }
    }

    /// Univariate polynomial from dense coefficients, lowest degree first.
    pub fn univariate(coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut p = Poly::new(1);
        for (e, c) in coeffs.into_iter().enumerate() {
            p.add_term(vec![e as u32], c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn caps(&self) -> Option<&[u32]> {
        self.caps.as_deref()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · X^exps` to the polynomial.
    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        assert_eq!(exps.len(), self.nvars, "exponent arity");
        if let Some(caps) = &self.caps {
            debug_assert!(exps.iter().zip(caps).all(|(e, cap)| e <= cap), "exponent over cap");
        }
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(slot) => {
                let sum = slot.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Value at `X_i = 1` for all `i`.
    pub fn coefficient_sum(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Keeps the terms whose exponent tuple satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&[u32]) -> bool) -> Self {
        Poly {
            nvars: self.nvars,
            caps: self.caps.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rewrites every monomial through `f`, summing colliding terms.
    pub fn map_monomials(&self, nvars: usize, mut f: impl FnMut(&[u32]) -> Vec<u32>) -> Self {
        let mut out = Poly::new(nvars);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Sets each variable in `groups[g]` to a common new variable `g`.
    pub fn merge_vars(&self, groups: &[Vec<usize>]) -> Self {
        let mut out = self.map_monomials(groups.len(), |e| {
            groups.iter().map(|g| g.iter().map(|&i| e[i]).sum()).collect()
        });
        if let Some(caps) = &self.caps {
            out.caps = Some(groups.iter().map(|g| g.iter().map(|&i| caps[i]).sum()).collect());
        }
        out
    }

    /// Substitutes `X_i = 1`, dropping the variable.
    pub fn set_var_to_one(&self, var: usize) -> Self {
        let groups: Vec<Vec<usize>> = (0..self.nvars).filter(|&i| i != var).map(|i| vec![i]).collect();
        self.merge_vars(&groups)
    }

    /// Replaces each `X_i` by a univariate polynomial in a fresh variable
    /// `Z_i`, given densely in `subs[i]` (lowest degree first).
    pub fn substitute_each(&self, subs: &[Vec<C>]) -> Self {
        assert_eq!(subs.len(), self.nvars, "one substitution per variable");
        let mut max_exp = vec![0u32; self.nvars];
        for e in self.terms.keys() {
            for (m, &x) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(x);
            }
        }
        let powers: Vec<Vec<Vec<C>>> = subs
            .iter()
            .zip(&max_exp)
            .map(|(s, &top)| dense_powers(s, top as usize))
            .collect();

        let mut current: BTreeMap<Vec<u32>, C> = self.terms.clone();
        for var in 0..self.nvars {
            let mut next: BTreeMap<Vec<u32>, C> = BTreeMap::new();
            for (e, c) in &current {
                let expansion = &powers[var][e[var] as usize];
                for (d, g) in expansion.iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    let mut ne = e.clone();
                    ne[var] = d as u32;
                    let term = c.clone() * g.clone();
                    match next.get_mut(&ne) {
                        Some(slot) => *slot = slot.clone() + term,
                        None => {
                            next.insert(ne, term);
                        }
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            current = next;
        }
        let caps = self.caps.as_ref().map(|caps| {
            caps.iter()
                .zip(subs)
                .map(|(&cap, s)| cap * s.len().saturating_sub(1) as u32)
                .collect()
        });
        Poly { nvars: self.nvars, caps, terms: current }
    }

    pub fn map_coeffs<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> Poly<D> {
        let mut out = Poly { nvars: self.nvars, caps: self.caps.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

impl Poly<BigUint> {
    pub fn to_rational(&self) -> RationalPoly {
        self.map_coeffs(|c| BigRational::from_integer(BigInt::from(c.clone())))
    }
}

/// `s^0, s^1, ..., s^top` as dense coefficient vectors.
pub fn dense_powers<C: Coefficient>(s: &[C], top: usize) -> Vec<Vec<C>> {
    let mut out = Vec::with_capacity(top + 1);
    out.push(vec![C::one()]);
    for i in 1..=top {
        let next = dense_mul(&out[i - 1], s);
        out.push(next);
    }
    out
}

/// Product of two dense univariate polynomials.
pub fn dense_mul<C: Coefficient>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

impl<C: Coefficient> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*X{}", i + 1)?,
                    _ => write!(f, "*X{}^{}", i + 1, x)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn add_term_merges_and_drops_zeros() {
        let mut p: Poly<BigInt> = Poly::new(2);
        p.add_term(vec![1, 0], int(3));
        p.add_term(vec![1, 0], int(-3));
        p.add_term(vec![0, 2], int(0));
        assert!(p.is_empty());
        p.add_term(vec![0, 2], int(5));
        assert_eq!(p.coeff(&[0, 2]), int(5));
        assert_eq!(p.coeff(&[1, 1]), int(0));
    }

    #[test]
    fn substitution_matches_hand_expansion() {
        // (X1 + X2^2) with X1 -> 1 + Z, X2 -> 2Z
        let mut p: Poly<BigInt> = Poly::new(2);
        p.add_term(vec![1, 0], int(1));
        p.add_term(vec![0, 2], int(1));
        let s = p.substitute_each(&[vec![int(1), int(1)], vec![int(0), int(2)]]);
        assert_eq!(s.coeff(&[0, 0]), int(1));
        assert_eq!(s.coeff(&[1, 0]), int(1));
        assert_eq!(s.coeff(&[0, 2]), int(4));
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn merging_and_marginals() {
        let mut p: Poly<BigInt> = Poly::with_caps(vec![1, 2, 3]);
        p.add_term(vec![1, 2, 0], int(2));
        p.add_term(vec![0, 1, 3], int(7));
        p.add_term(vec![1, 0, 2], int(1));
        let m = p.set_var_to_one(1);
        assert_eq!(m.nvars(), 2);
        assert_eq!(m.coeff(&[1, 0]), int(2));
        assert_eq!(m.coeff(&[1, 2]), int(1));
        let all = p.merge_vars(&[vec![0, 1, 2]]);
        assert_eq!(all.caps(), Some(&[6u32][..]));
        assert_eq!(all.coeff(&[3]), int(3));
        assert_eq!(all.coeff(&[4]), int(7));
        assert_eq!(all.coefficient_sum(), p.coefficient_sum());
    }

    #[test]
    fn dense_power_binomial() {
        let pw = dense_powers(&[int(1), int(1)], 4);
        assert_eq!(pw[4], vec![int(1), int(4), int(6), int(4), int(1)]);
    }
}
