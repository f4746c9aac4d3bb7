//! Finite fields GF(p^k), subfield embeddings, and the GF(q) ⊂ GF(q^2m) tower
//! that hosts the n-th roots of unity for n = q^m + 1.
//!
//! Elements are packed base-p integers: coordinate `i` (coefficient of `x^i`
//! in the power basis of the modulus) is the `i`-th base-p digit. The packed
//! value doubles as the element's index in `0..order`.
//!
//! Fields of order at most [`TABLE_LIMIT`] carry log/antilog tables; larger
//! fields multiply polynomials and reduce on the fly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order that gets log/antilog tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 48;

const MAX_DEGREE: usize = 64;

/// Field element, packed as a base-p integer of its power-basis coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elt(u64);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    pub fn from_index(index: u64) -> Elt {
        Elt(index)
    }

    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elt({})", self.0)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^s`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut s = 0;
    while rest % p == 0 {
        rest /= p;
        s += 1;
    }
    (rest == 1).then_some((p, s))
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            while v % d == 0 {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Dense polynomials over GF(p) on plain coefficient vectors, lowest degree
/// first. Only what modulus selection and inversion need.
mod gfp {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        // p is prime and small; Fermat
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let len = a.len().max(b.len());
        let mut out: Vec<u64> = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Returns (quotient, remainder); `b` must be nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut quo = vec![0u64; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r[r.len() - 1] * lead_inv % p;
            quo[shift] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * bj % p) % p;
            }
            trim(&mut r);
        }
        trim(&mut quo);
        (quo, r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), f, p);
            }
            b = rem(&mul(&b, &b, p), f, p);
            e >>= 1;
        }
        result
    }

    /// Rabin's test for a monic `f` of degree `k`.
    pub fn is_irreducible(f: &[u64], p: u64, k: usize, prime_divisors_of_k: &[u64]) -> bool {
        let x = vec![0u64, 1];
        // frob[i] = x^(p^i) mod f
        let mut frob = Vec::with_capacity(k + 1);
        let mut h = rem(&x, f, p);
        frob.push(h.clone());
        for _ in 0..k {
            h = pow_mod(&h, p, f, p);
            frob.push(h.clone());
        }
        if sub(&frob[k], &rem(&x, f, p), p) != Vec::<u64>::new() {
            return false;
        }
        prime_divisors_of_k.iter().all(|&r| {
            let i = k / r as usize;
            let g = gcd(&sub(&frob[i], &x, p), f, p);
            g.len() == 1
        })
    }

    /// Inverse of `a` modulo the irreducible `f` by the extended Euclidean algorithm.
    pub fn inverse(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let (mut r0, mut r1) = (f.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (quo, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&quo, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant
        let c = inv_mod(r0[0], p);
        let mut out: Vec<u64> = s0.iter().map(|&v| v * c % p).collect();
        trim(&mut out);
        out
    }
}

struct Tables {
    /// exp[i] = g^i for i in 0..2(order-1)
    exp: Vec<u32>,
    /// log[x] for nonzero x
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    k: u32,
    order: u64,
    modulus: Vec<u64>,
    /// modulus without its leading term, packed as bits (p = 2 only)
    low_bits: u64,
    primitive: Elt,
    group_factors: Vec<u64>,
    tables: Option<Tables>,
}

/// An immutable finite field GF(p^k). Cloning shares the underlying tables.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// GF(p^k) with the lexicographically smallest monic irreducible modulus
    /// and the smallest primitive element (both in packed-index order, which
    /// compares the highest coefficient first).
    pub fn new(p: u64, k: u32) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::DegreeZero);
        }
        let order = checked_pow(p, k)
            .filter(|&o| o <= MAX_ORDER && (k as usize) < MAX_DEGREE)
            .ok_or(Error::FieldTooLarge { p, k })?;
        let modulus = smallest_irreducible(p, k as usize);
        let low_bits = if p == 2 {
            modulus[..k as usize]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        let group_factors = prime_factors(order - 1);
        let mut inner = Inner {
            p,
            k,
            order,
            modulus,
            low_bits,
            primitive: Elt::ONE,
            group_factors,
            tables: None,
        };
        let probe = FieldCtx(Arc::new(Inner {
            modulus: inner.modulus.clone(),
            group_factors: inner.group_factors.clone(),
            tables: None,
            ..inner
        }));
        let primitive = (1..order)
            .map(Elt)
            .find(|&g| probe.is_generator(g))
            .expect("a finite field has a primitive element");
        inner.primitive = primitive;
        if order <= TABLE_LIMIT {
            let span = (order - 1) as usize;
            let mut exp = Vec::with_capacity(2 * span.max(1));
            let mut log = vec![0u32; order as usize];
            let mut cur = Elt::ONE;
            for i in 0..span {
                exp.push(cur.0 as u32);
                log[cur.0 as usize] = i as u32;
                cur = probe.mul_raw(cur, primitive);
            }
            for i in 0..span {
                exp.push(exp[i]);
            }
            if span == 0 {
                exp.push(1);
            }
            inner.tables = Some(Tables { exp, log });
        }
        Ok(FieldCtx(Arc::new(inner)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Monic modulus coefficients, lowest degree first (length k + 1).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn primitive(&self) -> Elt {
        self.0.primitive
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    pub fn zero(&self) -> Elt {
        Elt::ZERO
    }

    pub fn one(&self) -> Elt {
        Elt::ONE
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.0.order).map(Elt)
    }

    /// Element from power-basis coordinates (reduced mod p); at most k entries.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elt> {
        if coeffs.len() > self.0.k as usize {
            return Err(Error::OutOfRange(format!(
                "{} coordinates for a degree-{} extension",
                coeffs.len(),
                self.0.k
            )));
        }
        let p = self.0.p;
        Ok(Elt(coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c % p)))
    }

    /// Power-basis coordinates, always of length k.
    pub fn coeffs(&self, x: Elt) -> Vec<u64> {
        let mut digits = [0u64; MAX_DEGREE];
        self.unpack(x, &mut digits);
        digits[..self.0.k as usize].to_vec()
    }

    /// The prime-subfield element `v mod p`.
    pub fn from_i64(&self, v: i64) -> Elt {
        Elt(v.rem_euclid(self.0.p as i64) as u64)
    }

    #[inline]
    fn unpack(&self, x: Elt, out: &mut [u64; MAX_DEGREE]) {
        let p = self.0.p;
        let mut v = x.0;
        for d in out.iter_mut().take(self.0.k as usize) {
            *d = v % p;
            v /= p;
        }
    }

    #[inline]
    fn pack(&self, digits: &[u64]) -> Elt {
        let p = self.0.p;
        Elt(digits[..self.0.k as usize]
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * p + d))
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        let p = self.0.p;
        if p == 2 {
            return Elt(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Elt(out)
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 {
            let d = x % p;
            out += ((p - d) % p) * place;
            place *= p;
            x /= p;
        }
        Elt(out)
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 || b.0 == 0 {
            return Elt::ZERO;
        }
        match &self.0.tables {
            Some(t) => {
                let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                Elt(t.exp[i] as u64)
            }
            None => self.mul_raw(a, b),
        }
    }

    fn mul_raw(&self, a: Elt, b: Elt) -> Elt {
        let k = self.0.k as usize;
        if self.0.p == 2 {
            let mut prod: u128 = 0;
            let (x, mut y) = (a.0 as u128, b.0);
            let mut shift = 0;
            while y > 0 {
                if y & 1 == 1 {
                    prod ^= x << shift;
                }
                y >>= 1;
                shift += 1;
            }
            let low = self.0.low_bits as u128;
            for i in (k..2 * k).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= 1u128 << i;
                    prod ^= low << (i - k);
                }
            }
            return Elt(prod as u64);
        }
        let p = self.0.p;
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let m = &self.0.modulus;
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let t = c * m[j] % p;
                prod[i - k + j] = (prod[i - k + j] + p - t) % p;
            }
        }
        self.pack(&prod[..k])
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elt) -> Elt {
        self.checked_inv(a).expect("inverse of zero")
    }

    pub fn checked_inv(&self, a: Elt) -> Option<Elt> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.0.tables {
            let span = (self.0.order - 1) as usize;
            let l = t.log[a.0 as usize] as usize;
            return Some(Elt(t.exp[(span - l) % span.max(1)] as u64));
        }
        let p = self.0.p;
        let mut inv = gfp::inverse(&self.coeffs(a), &self.0.modulus, p);
        inv.resize(self.0.k as usize, 0);
        Some(self.pack(&inv))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Elt {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if e == 0 {
            return Elt::ONE;
        }
        if a.0 == 0 {
            return Elt::ZERO;
        }
        if let Some(t) = &self.0.tables {
            let span = self.0.order - 1;
            let l = t.log[a.0 as usize] as u128;
            let i = (l * (e % span) as u128 % span as u128) as usize;
            return Elt(t.exp[i] as u64);
        }
        let mut result = Elt::ONE;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Power with a signed exponent; panics for zero with a negative exponent.
    pub fn pow_i(&self, a: Elt, e: i64) -> Elt {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.pow(self.inv(a), e.unsigned_abs())
        }
    }

    /// `primitive^i`.
    pub fn exp(&self, i: u64) -> Elt {
        match &self.0.tables {
            Some(t) => Elt(t.exp[(i % (self.0.order - 1).max(1)) as usize] as u64),
            None => self.pow(self.0.primitive, i),
        }
    }

    /// Discrete log to the primitive base; tables only.
    pub fn log(&self, x: Elt) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        self.0.tables.as_ref().map(|t| t.log[x.0 as usize] as u64)
    }

    fn is_generator(&self, g: Elt) -> bool {
        let span = self.0.order - 1;
        self.0
            .group_factors
            .iter()
            .all(|&r| self.pow(g, span / r) != Elt::ONE)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: Elt) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        let mut ord = self.0.order - 1;
        for &r in &self.0.group_factors {
            while ord % r == 0 && self.pow(x, ord / r) == Elt::ONE {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// `primitive^((order-1)/n)`, an element of multiplicative order exactly n.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<Elt> {
        let group = self.0.order - 1;
        if n == 0 || group % n != 0 {
            return Err(Error::NotDivisor { n, group });
        }
        Ok(self.exp(group / n))
    }

    fn subfield_degree(&self, sub_order: u64) -> Result<u32> {
        let err = Error::NotSubfield {
            sub: sub_order,
            order: self.0.order,
        };
        let (p, j) = prime_power(sub_order).ok_or(err.clone())?;
        if p != self.0.p || self.0.k % j != 0 {
            return Err(err);
        }
        Ok(j)
    }

    /// Trace down to the subfield of order `sub_order`.
    pub fn trace(&self, sub_order: u64, x: Elt) -> Result<Elt> {
        let j = self.subfield_degree(sub_order)?;
        let mut acc = Elt::ZERO;
        let mut term = x;
        for _ in 0..self.0.k / j {
            acc = self.add(acc, term);
            term = self.pow(term, sub_order);
        }
        Ok(acc)
    }

    /// Trace from the intermediate subfield of order `from_order` down to the
    /// one of order `sub_order`; `x` must lie in the former.
    pub fn relative_trace(&self, from_order: u64, sub_order: u64, x: Elt) -> Result<Elt> {
        let outer = self.subfield_degree(from_order)?;
        let inner = self.subfield_degree(sub_order)?;
        if outer % inner != 0 || !self.in_subfield(from_order, x)? {
            return Err(Error::NotSubfield {
                sub: sub_order,
                order: from_order,
            });
        }
        let mut acc = Elt::ZERO;
        let mut term = x;
        for _ in 0..outer / inner {
            acc = self.add(acc, term);
            term = self.pow(term, sub_order);
        }
        Ok(acc)
    }

    /// Whether `x` lies in the subfield of order `sub_order`.
    pub fn in_subfield(&self, sub_order: u64, x: Elt) -> Result<bool> {
        self.subfield_degree(sub_order)?;
        Ok(self.pow(x, sub_order) == x)
    }
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let k_factors = prime_factors(k as u64);
    let count = p.pow(k as u32);
    for t in 0..count {
        let mut f = Vec::with_capacity(k + 1);
        let mut v = t;
        for _ in 0..k {
            f.push(v % p);
            v /= p;
        }
        f.push(1);
        if k > 1 && f[0] == 0 {
            continue;
        }
        if k == 1 || gfp::is_irreducible(&f, p, k, &k_factors) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A field embedding GF(q) -> GF(q^e) fixing the prime field.
#[derive(Clone)]
pub struct Embedding {
    source: FieldCtx,
    target: FieldCtx,
    /// image of the source generator x (a root of the source modulus)
    root: Elt,
    images: Vec<Elt>,
    preimages: HashMap<Elt, Elt>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Embedding")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("root", &self.root)
            .finish()
    }
}

impl Embedding {
    /// Sends the source generator `x` to the first root (by subgroup exponent)
    /// of the source modulus inside the target's subfield of matching order.
    pub fn new(source: &FieldCtx, target: &FieldCtx) -> Result<Embedding> {
        let q = source.order();
        if source.p() != target.p() || target.k() % source.k() != 0 {
            return Err(Error::NotSubfield {
                sub: q,
                order: target.order(),
            });
        }
        let modulus: Vec<Elt> = source.modulus().iter().map(|&c| Elt(c)).collect();
        let eval = |x: Elt| {
            modulus
                .iter()
                .rev()
                .fold(Elt::ZERO, |acc, &c| target.add(target.mul(acc, x), c))
        };
        let omega = target.nth_root_of_unity(q - 1)?;
        let root = std::iter::once(Elt::ZERO)
            .chain((0..q - 1).map(|j| target.pow(omega, j)))
            .find(|&r| eval(r).is_zero())
            .ok_or(Error::NotSubfield {
                sub: q,
                order: target.order(),
            })?;
        let k = source.k() as usize;
        let root_powers: Vec<Elt> = (0..k).map(|i| target.pow(root, i as u64)).collect();
        let images: Vec<Elt> = source
            .elements()
            .map(|a| {
                source
                    .coeffs(a)
                    .iter()
                    .zip(&root_powers)
                    .fold(Elt::ZERO, |acc, (&c, &r)| {
                        target.add(acc, target.mul(Elt(c), r))
                    })
            })
            .collect();
        let preimages = images
            .iter()
            .enumerate()
            .map(|(i, &img)| (img, Elt(i as u64)))
            .collect();
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            root,
            images,
            preimages,
        })
    }

    pub fn source(&self) -> &FieldCtx {
        &self.source
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    pub fn map(&self, a: Elt) -> Elt {
        self.images[a.0 as usize]
    }

    /// Inverse image, when `x` lies in the embedded subfield.
    pub fn pull_back(&self, x: Elt) -> Option<Elt> {
        self.preimages.get(&x).copied()
    }

    pub fn image_of_source_primitive(&self) -> Elt {
        self.map(self.source.primitive())
    }
}

/// The tower GF(q) ⊂ GF(q^2m) with a fixed primitive n-th root of unity β,
/// n = q^m + 1.
pub struct Tower {
    q: u64,
    m: u32,
    n: u64,
    small: FieldCtx,
    big: FieldCtx,
    embedding: Embedding,
    beta: Elt,
    beta_exponent: u64,
    beta_powers: Vec<Elt>,
    unit_log: OnceLock<HashMap<Elt, u64>>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower(q={}, m={}, n={}, {:?})", self.q, self.m, self.n, self.big)
    }
}

impl Tower {
    pub fn antiprimitive(q: u64, m: u32) -> Result<Tower> {
        let (p, s) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if m == 0 {
            return Err(Error::DegreeZero);
        }
        let n = checked_pow(q, m)
            .and_then(|v| v.checked_add(1))
            .ok_or(Error::FieldTooLarge { p, k: 2 * m * s })?;
        let small = FieldCtx::new(p, s)?;
        let big = FieldCtx::new(p, 2 * m * s)?;
        let embedding = Embedding::new(&small, &big)?;
        let beta_exponent = (big.order() - 1) / n;
        let beta = big.nth_root_of_unity(n)?;
        let mut beta_powers = Vec::with_capacity(n as usize);
        let mut cur = Elt::ONE;
        for _ in 0..n {
            beta_powers.push(cur);
            cur = big.mul(cur, beta);
        }
        Ok(Tower {
            q,
            m,
            n,
            small,
            big,
            embedding,
            beta,
            beta_exponent,
            beta_powers,
            unit_log: OnceLock::new(),
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn small(&self) -> &FieldCtx {
        &self.small
    }

    pub fn big(&self) -> &FieldCtx {
        &self.big
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn beta(&self) -> Elt {
        self.beta
    }

    /// β = primitive^beta_exponent in the big field.
    pub fn beta_exponent(&self) -> u64 {
        self.beta_exponent
    }

    /// β^e for any integer e.
    #[inline]
    pub fn beta_pow(&self, e: i64) -> Elt {
        self.beta_powers[e.rem_euclid(self.n as i64) as usize]
    }

    /// Exponent of `x` as a power of β, when `x` lies in U_n.
    pub fn unit_log(&self, x: Elt) -> Option<u64> {
        if let Some(l) = self.big.log(x) {
            return (l % self.beta_exponent == 0).then(|| l / self.beta_exponent);
        }
        let map = self.unit_log.get_or_init(|| {
            self.beta_powers
                .iter()
                .enumerate()
                .map(|(i, &b)| (b, i as u64))
                .collect()
        });
        map.get(&x).copied()
    }
}
