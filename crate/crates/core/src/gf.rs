//! Finite fields GF(p^m).
//!
//! An element is stored as an integer in `[0, q)` whose base-`p` digits are
//! its coordinates in the polynomial basis `1, x, ..., x^(m-1)`. For
//! characteristic two this is the usual bitmask encoding.
//!
//! Arithmetic is always available through a table-free path (schoolbook
//! polynomial multiplication followed by reduction). Fields with `q <= 2^16`
//! additionally carry log/antilog tables that [`Field::mul`] and
//! [`Field::inv`] use; the two paths are tested to agree everywhere.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::combinatorics::{is_prime, prime_factors, prime_power};
use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables.
pub const TABLE_LIMIT: u32 = 1 << 16;

/// Default reduction polynomials for GF(2^m), `m = 1..=20`, as bitmasks
/// (bit `i` is the coefficient of `x^i`). Index 0 is unused.
pub const DEFAULT_BINARY_POLYS: [u32; 21] = [
    0x0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B,
    0x4443, 0x8003, 0x1100B, 0x20009, 0x40081, 0x80027, 0x100009,
];

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug)]
struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients low to high, monic, length `m + 1`.
    poly: Vec<u32>,
    /// `poly` as a bitmask, characteristic two only.
    poly_mask: u32,
    generator: u32,
    tables: Option<Tables>,
}

/// A finite field of order `p^m`. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.poly == other.0.poly)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf:{}^{}:poly=0x{:X}", self.0.p, self.0.m, self.poly_encoding())
    }
}

impl Field {
    /// Builds GF(p^m) reduced modulo `reduction_poly` (coefficients low to
    /// high, monic, degree `m`).
    pub fn new(p: u32, m: u32, reduction_poly: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::DegreeMismatch { expected: 0, found: "extension degree 0".into() });
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge((p as u64).saturating_pow(m)));
        };
        let found_degree = reduction_poly.iter().rposition(|&c| c != 0);
        if reduction_poly.len() != m as usize + 1
            || found_degree != Some(m as usize)
            || reduction_poly[m as usize] != 1
        {
            let found = match found_degree {
                Some(d) if reduction_poly[d] == 1 => format!("degree {d}"),
                Some(d) => format!("degree {d} with leading coefficient {}", reduction_poly[d]),
                None => "the zero polynomial".into(),
            };
            return Err(Error::DegreeMismatch { expected: m, found });
        }
        if let Some(&c) = reduction_poly.iter().find(|&&c| c >= p) {
            return Err(Error::ParamOutOfRange(format!("coefficient {c} is not in GF({p})")));
        }
        if !is_irreducible(p, reduction_poly) {
            return Err(Error::NotIrreducible { p });
        }
        Ok(Self::build(p, m, q as u32, reduction_poly.to_vec()))
    }

    /// GF(p^m) with the shipped default reduction polynomial.
    ///
    /// Characteristic two uses [`DEFAULT_BINARY_POLYS`]; odd characteristic
    /// uses the first irreducible monic polynomial in order of its integer
    /// encoding (for `m = 1` that is `x`).
    pub fn with_default_poly(p: u32, m: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::DegreeMismatch { expected: 0, found: "extension degree 0".into() });
        }
        if (p as u64).checked_pow(m).map_or(true, |q| q > MAX_ORDER) {
            return Err(Error::FieldTooLarge((p as u64).saturating_pow(m)));
        }
        let poly = if p == 2 {
            bitmask_to_coeffs(DEFAULT_BINARY_POLYS[m as usize], m)
        } else {
            let span = p.pow(m);
            (0..span)
                .map(|r| {
                    let mut c = to_digits(r, p, m as usize);
                    c.push(1);
                    c
                })
                .find(|c| is_irreducible(p, c))
                .expect("an irreducible polynomial of every degree exists")
        };
        Field::new(p, m, &poly)
    }

    /// GF(2^m) with the default polynomial.
    pub fn binary(m: u32) -> Result<Field> {
        Field::with_default_poly(2, m)
    }

    /// The field of order `q` (a prime power) with the default polynomial.
    pub fn from_order(q: u64) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        Field::with_default_poly(p as u32, m)
    }

    fn build(p: u32, m: u32, q: u32, poly: Vec<u32>) -> Field {
        let poly_mask = if p == 2 {
            poly.iter().enumerate().fold(0u32, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        let mut data = FieldData { p, m, q, poly, poly_mask, generator: 1, tables: None };
        data.generator = find_generator(&data);
        if q <= TABLE_LIMIT {
            let order = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * order.max(1)];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for i in 0..order {
                exp[i] = x;
                log[x as usize] = i as u32;
                x = mul_slow(&data, x, data.generator);
            }
            for i in order..exp.len() {
                exp[i] = exp[i - order];
            }
            data.tables = Some(Tables { exp, log });
        }
        Field(Arc::new(data))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Reduction polynomial, coefficients low to high.
    pub fn reduction_poly(&self) -> &[u32] {
        &self.0.poly
    }

    /// The reduction polynomial as an integer: a bitmask for characteristic
    /// two, base-`p` digits otherwise.
    pub fn poly_encoding(&self) -> u64 {
        self.0.poly.iter().rev().fold(0u64, |acc, &c| acc * self.0.p as u64 + c as u64)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.0.generator
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.0.q {
            return Err(Error::ElementOutOfRange { value: value as u64, order: self.0.q });
        }
        Ok(FieldElement { value, field: self.clone() })
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |value| FieldElement { value, field: self.clone() })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.0.p == 2 {
            a ^ b
        } else {
            digitwise(&self.0, a, b, |x, y, p| (x + y) % p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if self.0.p == 2 {
            a ^ b
        } else {
            digitwise(&self.0, a, b, |x, y, p| (x + p - y) % p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    /// Multiplication, through the tables when present.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => mul_slow(&self.0, a, b),
        }
    }

    /// Multiplication by polynomial reduction, never touching the tables.
    pub fn mul_table_free(&self, a: u32, b: u32) -> u32 {
        mul_slow(&self.0, a, b)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0.tables {
            Some(t) => {
                let order = self.0.q - 1;
                t.exp[((order - t.log[a as usize]) % order.max(1)) as usize]
            }
            None => self.inv_table_free(a)?,
        })
    }

    /// Inverse as `a^(q-2)` over the table-free multiplication.
    pub fn inv_table_free(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut e = (self.0.q - 2) as u64;
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_slow(&self.0, acc, base);
            }
            base = mul_slow(&self.0, base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Parses `gf:<p>^<m>[:poly=<hex>]`. The hex value is a bitmask for
    /// characteristic two and the base-`p` digit encoding otherwise.
    fn from_str(s: &str) -> Result<Field> {
        let bad = |detail: &str| Error::Parse { what: "field", detail: format!("{s:?}: {detail}") };
        let rest = s.strip_prefix("gf:").ok_or_else(|| bad("expected gf:<p>^<m>"))?;
        let mut parts = rest.split(':');
        let order = parts.next().unwrap_or_default();
        let (p, m) = order.split_once('^').ok_or_else(|| bad("expected <p>^<m>"))?;
        let p: u32 = p.trim().parse().map_err(|_| bad("characteristic is not an integer"))?;
        let m: u32 = m.trim().parse().map_err(|_| bad("degree is not an integer"))?;
        let mut poly = None;
        for opt in parts {
            let hex = opt.strip_prefix("poly=").ok_or_else(|| bad("unknown option"))?;
            let hex = hex.trim_start_matches("0x").trim_start_matches("0X");
            let v = u64::from_str_radix(hex, 16).map_err(|_| bad("poly is not hex"))?;
            poly = Some(v);
        }
        match poly {
            None => Field::with_default_poly(p, m),
            Some(v) => {
                if p < 2 {
                    return Err(Error::NotPrime(p as u64));
                }
                let mut coeffs = Vec::new();
                let mut rest = v;
                while rest > 0 {
                    coeffs.push((rest % p as u64) as u32);
                    rest /= p as u64;
                }
                Field::new(p, m, &coeffs)
            }
        }
    }
}

/// Element of a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    value: u32,
    field: Field,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Binary field operation selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let value = match op {
            ArithOp::Add => f.add(self.value, other.value),
            ArithOp::Sub => f.sub(self.value, other.value),
            ArithOp::Mul => f.mul(self.value, other.value),
            ArithOp::Div => f.div(self.value, other.value)?,
        };
        Ok(FieldElement { value, field: f.clone() })
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(other, ArithOp::Add)
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(other, ArithOp::Div)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement { value: self.field.inv(self.value)?, field: self.field.clone() })
    }
}

fn bitmask_to_coeffs(mask: u32, m: u32) -> Vec<u32> {
    (0..=m).map(|i| (mask >> i) & 1).collect()
}

fn to_digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn from_digits(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

fn digitwise(f: &FieldData, a: u32, b: u32, op: impl Fn(u32, u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut scale = 1u32;
    for _ in 0..f.m {
        out += op(a % f.p, b % f.p, f.p) * scale;
        a /= f.p;
        b /= f.p;
        scale = scale.wrapping_mul(f.p);
    }
    out
}

fn mul_slow(f: &FieldData, a: u32, b: u32) -> u32 {
    if f.p == 2 {
        let top = 1u32 << f.m;
        let (mut a, mut b) = (a, b);
        let mut acc = 0u32;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= f.poly_mask;
            }
        }
        return acc;
    }
    let p = f.p as u64;
    let m = f.m as usize;
    let da = to_digits(a, f.p, m);
    let db = to_digits(b, f.p, m);
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &g) in f.poly[..m].iter().enumerate() {
            let idx = deg - m + i;
            prod[idx] = (prod[idx] + (p - c) * g as u64) % p;
        }
        prod[deg] = 0;
    }
    let digits: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
    from_digits(&digits, f.p)
}

fn find_generator(f: &FieldData) -> u32 {
    let order = (f.q - 1) as u64;
    if order == 1 {
        return 1;
    }
    let factors = prime_factors(order);
    let pow = |a: u32, mut e: u64| {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_slow(f, acc, base);
            }
            base = mul_slow(f, base, base);
            e >>= 1;
        }
        acc
    };
    (2..f.q)
        .find(|&g| factors.iter().all(|&r| pow(g, order / r) != 1))
        .expect("the multiplicative group of a finite field is cyclic")
}

/// Remainder of `num` modulo the monic `den` over GF(p). Coefficients low to high.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    for deg in (dd..r.len()).rev() {
        let c = r[deg];
        if c == 0 {
            continue;
        }
        for (i, &g) in den.iter().enumerate() {
            let idx = deg - dd + i;
            r[idx] = (r[idx] + (p - c) * g as u64) % p;
        }
    }
    r.truncate(dd);
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=m/2`.
pub fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let m = poly.len().saturating_sub(1);
    if m == 0 {
        return false;
    }
    for d in 1..=m / 2 {
        for r in 0..p.pow(d as u32) {
            let mut g = to_digits(r, p, d);
            g.push(1);
            if poly_rem(poly, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let f = Field::new(2, 3, &[1, 1, 0, 1]).unwrap();
        assert_eq!(f.order(), 8);
        assert_eq!(Field::new(2, 1, &[1, 1]).unwrap().order(), 2);
        assert_eq!(Field::new(2, 3, &[1, 0, 0, 1]), Err(Error::NotIrreducible { p: 2 }));
        assert_eq!(Field::new(4, 1, &[0, 1]), Err(Error::NotPrime(4)));
        assert!(matches!(Field::new(2, 3, &[1, 1, 1]), Err(Error::DegreeMismatch { .. })));
        assert!(matches!(Field::new(2, 2, &[1, 1, 0]), Err(Error::DegreeMismatch { .. })));
        assert!(matches!(Field::new(2, 21, &[1; 22]), Err(Error::FieldTooLarge(_))));
    }

    #[test]
    fn gf8_products() {
        let f = Field::new(2, 3, &[1, 1, 0, 1]).unwrap();
        assert_eq!(f.mul(2, 4), 3);
        assert_eq!(f.mul_table_free(2, 4), 3);
        for x in 0..8 {
            assert_eq!(f.mul(0, x), 0);
        }
        assert_eq!(f.div(1, 1).unwrap(), 1);
        assert_eq!(f.div(3, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn default_polys_are_irreducible() {
        for m in 1..=20 {
            let f = Field::binary(m).unwrap();
            assert_eq!(f.order(), 1 << m);
            assert_eq!(f.poly_encoding(), DEFAULT_BINARY_POLYS[m as usize] as u64);
        }
        for (p, m) in [(3, 1), (3, 2), (5, 2), (7, 1), (3, 3), (13, 1)] {
            let f = Field::with_default_poly(p, m).unwrap();
            assert_eq!(f.order(), p.pow(m));
        }
    }

    #[test]
    fn inverses_exhaustive() {
        let fields: Vec<Field> = [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 64, 128, 256]
            .iter()
            .map(|&q| Field::from_order(q).unwrap())
            .collect();
        for f in &fields {
            for a in 1..f.order() {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1, "{f} a={a}");
                assert_eq!(inv, f.inv_table_free(a).unwrap());
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::from_order(q).unwrap();
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_and_reduction_paths_agree() {
        for q in [4u64, 8, 9, 16, 25, 32, 49, 64, 81, 128, 256] {
            let f = Field::from_order(q).unwrap();
            assert!(f.has_tables());
            for a in 0..f.order() {
                for b in 0..f.order() {
                    assert_eq!(f.mul(a, b), f.mul_table_free(a, b));
                }
            }
        }
        let f = Field::binary(12).unwrap();
        for a in (0..f.order()).step_by(37) {
            for b in (0..f.order()).step_by(53) {
                assert_eq!(f.mul(a, b), f.mul_table_free(a, b));
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in [2u64, 3, 4, 5, 8, 9, 16, 27, 32, 64, 125, 128, 256] {
            let f = Field::from_order(q).unwrap();
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1u32;
            for _ in 0..f.order() - 1 {
                assert!(seen.insert(x));
                x = f.mul_table_free(x, g);
            }
            assert_eq!(x, 1);
            assert_eq!(seen.len() as u32, f.order() - 1);
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = Field::binary(20).unwrap();
        assert!(!f.has_tables());
        let a = 0x5A5A5;
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(a, inv), 1);
    }

    #[test]
    fn parse_field_spec() {
        let f: Field = "gf:2^3:poly=0xB".parse().unwrap();
        assert_eq!(f, Field::new(2, 3, &[1, 1, 0, 1]).unwrap());
        assert_eq!(f.to_string(), "gf:2^3:poly=0xB");
        let g: Field = "gf:2^4".parse().unwrap();
        assert_eq!(g.order(), 16);
        let h: Field = "gf:3^2".parse().unwrap();
        assert_eq!(h.to_string().parse::<Field>().unwrap(), h);
        assert!("gf:2^3:poly=0x9".parse::<Field>().is_err());
        assert!("rs:8".parse::<Field>().is_err());
    }

    #[test]
    fn element_wrappers() {
        let f = Field::binary(3).unwrap();
        let g = Field::binary(4).unwrap();
        let a = f.element(2).unwrap();
        let b = f.element(4).unwrap();
        assert_eq!(a.mul(&b).unwrap().value(), 3);
        assert_eq!(a.arith(&b, ArithOp::Add).unwrap().value(), 6);
        assert_eq!(a.div(&a).unwrap().value(), 1);
        assert_eq!(a.div(&f.element(0).unwrap()), Err(Error::DivisionByZero));
        assert_eq!(a.add(&g.element(1).unwrap()), Err(Error::FieldMismatch));
        assert!(f.element(8).is_err());
        assert_eq!(f.elements().count(), 8);
    }
}
