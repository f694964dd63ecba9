//! Finite field arithmetic for GF(p^e).
//!
//! Elements are plain indices in `[0, q)`. The base-`p` digits of an index
//! `(c_0, ..., c_{e-1})` are the coefficients of `c_0 + c_1 α + ... + c_{e-1} α^{e-1}`,
//! where `α` is a root of the canonical irreducible polynomial: the monic
//! degree-`e` polynomial whose low coefficients encode to the smallest integer
//! `Σ c_j p^j`. Index 0 is zero and index 1 is one in every field.
//!
//! Multiplication goes through discrete log / antilog tables built from a
//! primitive element, so memory is `O(q)` even at the `2^20` cap.

use std::fmt;

use crate::error::FieldError;

/// Largest field order accepted by [`GaloisField::new`].
pub const MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get a full addition table.
const ADD_TABLE_MAX: u32 = 256;

/// An element of a [`GaloisField`], identified by its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^e) with precomputed log tables.
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients `c_0..=c_e` of the defining polynomial (monic), `None` for prime fields.
    irreducible: Option<Vec<u32>>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("irreducible", &self.irreducible)
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.irreducible == other.irreducible
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// Builds GF(p^e) with the canonical irreducible polynomial.
    pub fn new(p: u32, e: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        if e < 1 {
            return Err(FieldError::ZeroExponent);
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::OrderTooLarge { p, e })? as u32;

        let irreducible = if e > 1 {
            Some(canonical_irreducible(p, e))
        } else {
            None
        };

        let mut field = GaloisField {
            p,
            e,
            q,
            irreducible,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        field.build_tables();
        Ok(field)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p as u32, e)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients `(c_0, ..., c_e)` of the defining polynomial, when `e > 1`.
    pub fn irreducible(&self) -> Option<&[u32]> {
        self.irreducible.as_deref()
    }

    pub fn element(&self, index: u32) -> Result<FieldElement, FieldError> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(FieldError::ForeignElement { index, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if let Some(table) = &self.add_table {
            return FieldElement(table[(a.0 * self.q + b.0) as usize]);
        }
        FieldElement(self.digitwise(a.0, b.0, |x, y| (x + y) % self.p))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        FieldElement(self.digitwise(a.0, 0, |x, _| (self.p - x) % self.p))
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.q - 1;
        let k = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[(k % order) as usize])
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        debug_assert!(a.0 < self.q);
        let order = self.q - 1;
        let k = (order - self.log[a.0 as usize]) % order;
        Ok(FieldElement(self.exp[k as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (k % order)) % order;
        FieldElement(self.exp[l as usize])
    }

    /// Range-checked addition; an out-of-range index means the element came from another field.
    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.element(a.0)?;
        self.element(b.0)?;
        Ok(self.add(a, b))
    }

    /// Range-checked multiplication.
    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.element(a.0)?;
        self.element(b.0)?;
        Ok(self.mul(a, b))
    }

    /// The subfield GF(s) for `q = s²`: all `x` with `x^s = x`, ascending.
    pub fn subfield_elements(&self, s: u32) -> Result<Vec<FieldElement>, FieldError> {
        if !self.e.is_multiple_of(2) || (s as u64) * (s as u64) != self.q as u64 {
            return Err(FieldError::NotSquare { q: self.q, s });
        }
        Ok(self
            .elements()
            .filter(|&x| self.pow(x, s as u64) == x)
            .collect())
    }

    fn digitwise(&self, a: u32, b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += op(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if self.p != 2 && q <= ADD_TABLE_MAX {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = self.digitwise(a, b, |x, y| (x + y) % self.p);
                }
            }
            self.add_table = Some(table);
        }

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, order / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; (q - 1).max(1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..(q - 1).max(1) {
            exp[k as usize] = x;
            log[x as usize] = k;
            x = self.slow_mul(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        match &self.irreducible {
            None => ((a as u64 * b as u64) % self.p as u64) as u32,
            Some(modulus) => {
                let pa = digits(a, self.p, self.e);
                let pb = digits(b, self.p, self.e);
                let prod = poly_mul(&pa, &pb, self.p);
                let rem = poly_rem(&prod, modulus, self.p);
                encode(&rem, self.p)
            }
        }
    }

    fn slow_pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            k >>= 1;
        }
        acc
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decomposes `q = p^e` with `p` prime, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest-encoding monic irreducible of degree `e` over GF(p), as `c_0..=c_e`.
fn canonical_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    (0..count)
        .map(|code| {
            let mut coeffs = digits(code as u32, p, e);
            coeffs.push(1);
            coeffs
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    for d in 1..=deg / 2 {
        for code in 0..(p as u64).pow(d) {
            let mut divisor = digits(code as u32, p, d);
            divisor.push(1);
            if poly_rem(f, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut x: u32, p: u32, len: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(len as usize);
    for _ in 0..len {
        out.push(x % p);
        x /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    out.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo the monic polynomial `m`; result has `deg m` coefficients.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p64 = p as u64;
    for top in (dm..r.len()).rev() {
        let lead = r[top] % p64;
        if lead == 0 {
            continue;
        }
        let shift = top - dm;
        for (k, &mk) in m.iter().enumerate() {
            let sub = lead * mk as u64 % p64;
            r[shift + k] = (r[shift + k] + p64 - sub) % p64;
        }
    }
    r.resize(dm.max(r.len()), 0);
    r.truncate(dm);
    r.into_iter().map(|c| (c % p64) as u32).collect()
}
