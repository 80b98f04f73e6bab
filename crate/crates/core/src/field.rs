//! Exact fields: the rationals and finite fields `F_{p^k}`.
//!
//! Finite field elements are stored as integers in `0..q`, read as base-`p`
//! digit vectors (digit `i` is the coefficient of `x^i` modulo the defining
//! polynomial). Multiplication goes through discrete log tables, so fields
//! are capped at [`MAX_FIELD_ORDER`] elements.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Largest finite field order we build tables for.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + Eq + Hash + Ord + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|b| self.mul(a, &b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    fn spec(&self) -> FieldSpec;

    /// All elements in a fixed order (finite fields only).
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// The absolute Frobenius `a -> a^p`; identity on the rationals.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;

    /// A pseudo-random element. `height` bounds numerators and denominators
    /// over the rationals and is ignored for finite fields.
    fn random(&self, rng: &mut ChaCha8Rng, height: u32) -> Self::Elem;

    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
    fn elem_to_string(&self, a: &Self::Elem) -> String;
}

/// Serializable description of a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Finite { p: u32, k: u32, modulus: Vec<u32> },
}

impl FieldSpec {
    /// `F_{p^k}` with the deterministic (lexicographically least) modulus.
    pub fn finite(p: u32, k: u32) -> Result<FieldSpec> {
        if !is_prime(p as u64) {
            return Err(Error::Argument(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Argument("extension degree must be at least 1".into()));
        }
        let modulus = least_irreducible(p, k);
        Ok(FieldSpec::Finite { p, k, modulus })
    }

    pub fn to_json(&self) -> Value {
        match self {
            FieldSpec::Rationals => json!("Q"),
            FieldSpec::Finite { p, k, modulus } => json!({"p": p, "k": k, "modulus": modulus}),
        }
    }

    pub fn from_json(v: &Value) -> Result<FieldSpec> {
        match v {
            Value::String(s) if s == "Q" => Ok(FieldSpec::Rationals),
            Value::Object(map) => {
                let get = |key: &str| -> Result<u64> {
                    map.get(key)
                        .and_then(Value::as_u64)
                        .ok_or_else(|| Error::Format(format!("field spec needs integer `{key}`")))
                };
                let p = get("p")? as u32;
                let k = map.get("k").and_then(Value::as_u64).unwrap_or(1) as u32;
                match map.get("modulus") {
                    Some(Value::Array(coeffs)) => {
                        let modulus = coeffs
                            .iter()
                            .map(|c| c.as_u64().map(|c| c as u32))
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(|| Error::Format("modulus must be integers".into()))?;
                        Ok(FieldSpec::Finite { p, k, modulus })
                    }
                    _ => FieldSpec::finite(p, k),
                }
            }
            _ => Err(Error::Format(format!("unrecognized field spec {v}"))),
        }
    }

    /// Parses `Q`, `p=3`, `p=2,k=4`, `F9` or `GF(9)`.
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let order = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix('F'));
        if let Some(order) = order {
            let q: u64 = order
                .parse()
                .map_err(|_| Error::Argument(format!("bad field order in `{s}`")))?;
            let (p, k) = prime_power(q)
                .ok_or_else(|| Error::Argument(format!("{q} is not a prime power")))?;
            return FieldSpec::finite(p as u32, k);
        }
        let mut p = None;
        let mut k = 1;
        for part in s.split(',') {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Argument(format!("bad field `{s}`")))?;
            let val: u32 = val
                .trim()
                .parse()
                .map_err(|_| Error::Argument(format!("bad number in field `{s}`")))?;
            match key.trim() {
                "p" => p = Some(val),
                "k" => k = val,
                other => return Err(Error::Argument(format!("unknown field key `{other}`"))),
            }
        }
        let p = p.ok_or_else(|| Error::Argument(format!("field `{s}` needs p=")))?;
        FieldSpec::finite(p, k)
    }

    pub fn build(&self) -> Result<AnyField> {
        match self {
            FieldSpec::Rationals => Ok(AnyField::Q(Rationals)),
            FieldSpec::Finite { p, k, modulus } => {
                Ok(AnyField::F(FiniteField::with_modulus(*p, *k, modulus.clone())?))
            }
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Finite { p, k, .. } => Some((*p as u64).pow(*k)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Finite { p, k: 1, .. } => write!(f, "F{p}"),
            FieldSpec::Finite { p, k, .. } => write!(f, "F{}", (*p as u64).pow(*k)),
        }
    }
}

/// A field chosen at runtime.
#[derive(Debug, Clone)]
pub enum AnyField {
    Q(Rationals),
    F(FiniteField),
}

/// Dispatches a generic expression over the concrete field inside an [`AnyField`].
#[macro_export]
macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            $crate::field::AnyField::Q($f) => $body,
            $crate::field::AnyField::F($f) => $body,
        }
    };
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn frobenius(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn random(&self, rng: &mut ChaCha8Rng, height: u32) -> BigRational {
        let h = height.max(1) as i64;
        let num = rng.gen_range(-h..=h);
        let den = rng.gen_range(1..=h);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn elem_to_json(&self, a: &BigRational) -> Value {
        if a.is_integer() {
            if let Ok(v) = a.to_integer().to_string().parse::<i64>() {
                return json!(v);
            }
        }
        json!(a.to_string())
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|n| self.from_int(n))
                .ok_or_else(|| Error::Format(format!("expected an integer or \"a/b\", got {n}"))),
            Value::String(s) => parse_rational(s),
            _ => Err(Error::Format(format!("expected a rational, got {v}"))),
        }
    }
    fn elem_to_string(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Format(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// `F_{p^k}` with log/antilog multiplication tables.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl FiniteField {
    pub fn new(p: u32, k: u32) -> Result<FiniteField> {
        match FieldSpec::finite(p, k)? {
            FieldSpec::Finite { modulus, .. } => FiniteField::with_modulus(p, k, modulus),
            FieldSpec::Rationals => unreachable!(),
        }
    }

    pub fn prime(p: u32) -> Result<FiniteField> {
        FiniteField::new(p, 1)
    }

    /// `modulus` lists coefficients from the constant term up; it must be
    /// monic of degree `k` and irreducible over `F_p`.
    pub fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Result<FiniteField> {
        if !is_prime(p as u64) {
            return Err(Error::Argument(format!("{p} is not prime")));
        }
        let order = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = order.ok_or_else(|| {
            Error::Resource(format!("field of order {p}^{k} exceeds {MAX_FIELD_ORDER}"))
        })? as u32;
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(Error::Argument(format!("modulus must be monic of degree {k}")));
        }
        if modulus.iter().any(|&c| c >= p) || !poly::is_irreducible(&modulus, p) {
            return Err(Error::Argument(format!("modulus {modulus:?} is not irreducible mod {p}")));
        }
        let mut field = FiniteField { p, k, q, modulus, exp: Vec::new(), log: Vec::new() };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let group = (q - 1) as u64;
        let factors = prime_factors(group);
        let generator = (1..self.q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.slow_pow(g, group / r) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; q - 1];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.k as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let prod = poly::mul(&self.digits(a), &self.digits(b), self.p);
        let rem = poly::rem(&prod, &self.modulus, self.p);
        let mut d = rem;
        d.resize(self.k as usize, 0);
        self.from_digits(&d)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Embeds an element of the prime field.
    pub fn from_prime(&self, c: u32) -> u32 {
        c % self.p
    }

    /// True when `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: u32) -> bool {
        a < self.p
    }

    /// Degree over `F_p` of the smallest subfield containing `a`.
    pub fn element_degree(&self, a: u32) -> u32 {
        let mut x = self.frobenius(&a);
        let mut d = 1;
        while x != a {
            x = self.frobenius(&x);
            d += 1;
        }
        d
    }
}

impl Field for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (*a, *b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }
    fn neg(&self, a: &u32) -> u32 {
        if self.k == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let mut a = *a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[*a as usize] + self.log[*b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[*a as usize];
        Some(self.exp[((n - l) % n) as usize])
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.q as u64)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Finite { p: self.p, k: self.k, modulus: self.modulus.clone() }
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.q).collect())
    }
    fn frobenius(&self, a: &u32) -> u32 {
        self.pow(*a, self.p as u64)
    }
    fn random(&self, rng: &mut ChaCha8Rng, _height: u32) -> u32 {
        rng.gen_range(0..self.q)
    }
    fn elem_to_json(&self, a: &u32) -> Value {
        json!(a)
    }
    fn elem_from_json(&self, v: &Value) -> Result<u32> {
        match v.as_i64() {
            Some(x) if self.k == 1 => Ok(self.from_int(x)),
            Some(x) if (0..self.q as i64).contains(&x) => Ok(x as u32),
            _ => Err(Error::Format(format!("{v} is not an element of {}", self.spec()))),
        }
    }
    fn elem_to_string(&self, a: &u32) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        let terms: Vec<String> = self
            .digits(*a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, c) => format!("{c}w"),
                (i, 1) => format!("w^{i}"),
                (i, c) => format!("{c}w^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&m| is_prime(m)).collect()
}

/// Distinct prime factors.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// `q = p^k` decomposition.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    Some((p, k))
}

/// The monic irreducible polynomial of degree `k` over `F_p` whose lower
/// coefficients, read as a base-`p` number with the constant term as the
/// least significant digit, are smallest.
pub fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let total = (p as u64).pow(k);
    for code in 0..total {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Dense polynomials over `F_p`, coefficient vectors from the constant term up.
pub mod poly {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let mut r = trim(a.to_vec());
        let lead_inv = inv_mod(*m.last().expect("nonzero modulus"), p);
        while r.len() >= m.len() {
            let shift = r.len() - m.len();
            let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// `x^(p^j) mod f`.
    fn frob_x(f: &[u32], j: u32, p: u32) -> Vec<u32> {
        let mut x = vec![0, 1];
        for _ in 0..j {
            x = pow_mod(&x, p as u64, f, p);
        }
        x
    }

    /// Rabin's test.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let k = (f.len() - 1) as u32;
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        if sub(&frob_x(&f, k, p), &rem(&x, &f, p), p) != Vec::<u32>::new() {
            return false;
        }
        super::prime_factors(k as u64).into_iter().all(|r| {
            let h = sub(&frob_x(&f, k / r as u32, p), &x, p);
            gcd(&f, &h, p).len() == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FiniteField::prime(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.add(&6, &3), 2);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.from_int(-1), 6);
    }

    #[test]
    fn least_moduli() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn extension_field_axioms() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.size();
            for a in 0..q {
                assert_eq!(f.add(&a, &f.neg(&a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(&a, &b), f.slow_mul(a, b));
                }
            }
            // Frobenius fixes exactly the prime field.
            let fixed: Vec<u32> = (0..q).filter(|&a| f.frobenius(&a) == a).collect();
            assert_eq!(fixed, (0..p).collect::<Vec<_>>());
        }
    }

    #[test]
    fn parse_specs() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("p=3").unwrap().order(), Some(3));
        assert_eq!(FieldSpec::parse("p=2,k=4").unwrap().order(), Some(16));
        assert_eq!(FieldSpec::parse("F9").unwrap().order(), Some(9));
        assert_eq!(FieldSpec::parse("GF(8)").unwrap().order(), Some(8));
        assert!(FieldSpec::parse("F6").is_err());
        assert!(FieldSpec::parse("p=4").is_err());
        let spec = FieldSpec::parse("p=5,k=2").unwrap();
        assert_eq!(FieldSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(FiniteField::with_modulus(2, 2, vec![1, 0, 1]).is_err());
    }
}
