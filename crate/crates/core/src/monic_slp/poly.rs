use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector: index 0 is `t`, index `i` is `y_i`.
pub type Exponents = Vec<u32>;

/// Sparse polynomial in `ℤ[y_1..y_n][t]` with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyZ {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl PolyZ {
    pub fn zero(n: usize) -> PolyZ {
        PolyZ { nvars: n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> PolyZ {
        let mut p = PolyZ::zero(n);
        p.add_term(vec![0; n + 1], c.into());
        p
    }

    pub fn t(n: usize) -> PolyZ {
        PolyZ::monomial(n, {
            let mut e = vec![0; n + 1];
            e[0] = 1;
            e
        })
    }

    /// `y_i`, `1 <= i <= n`.
    pub fn y(n: usize, i: usize) -> PolyZ {
        assert!((1..=n).contains(&i), "y_{i} out of range");
        let mut e = vec![0; n + 1];
        e[i] = 1;
        PolyZ::monomial(n, e)
    }

    pub fn monomial(n: usize, exps: Exponents) -> PolyZ {
        let mut p = PolyZ::zero(n);
        p.add_term(exps, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigInt> {
        &self.terms
    }

    pub fn add_term(&mut self, exps: Exponents, c: BigInt) {
        debug_assert_eq!(exps.len(), self.nvars + 1);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PolyZ) -> PolyZ {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyZ {
        PolyZ { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &PolyZ) -> PolyZ {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolyZ) -> PolyZ {
        let mut out = PolyZ::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> PolyZ {
        let mut out = PolyZ::constant(self.nvars, 1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Degree in `t`; `None` for the zero polynomial.
    pub fn t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0]).max()
    }

    /// Coefficient of `t^d` as a polynomial in the `y` variables.
    pub fn t_coefficient(&self, d: u32) -> PolyZ {
        let mut out = PolyZ::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[0] == d {
                let mut e = e.clone();
                e[0] = 0;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Leading coefficient in `t` is exactly 1.
    pub fn is_monic_in_t(&self) -> bool {
        match self.t_degree() {
            Some(d) => self.t_coefficient(d) == PolyZ::constant(self.nvars, 1),
            None => false,
        }
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|e| e[0] == 0)
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.terms.keys().all(|e| e.iter().all(|&x| x == 0)) {
            Some(self.terms.values().next().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    /// Total degree in the `y` variables of one exponent vector.
    pub fn y_degree(e: &Exponents) -> u32 {
        e[1..].iter().sum()
    }

    /// Substitutes field values for `y_1..y_n` and `t`.
    pub fn eval<F: Field>(&self, f: &F, y: &[F::Elem], t: &F::Elem) -> F::Elem {
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut term = bigint_to_field(f, c);
            for _ in 0..e[0] {
                term = f.mul(&term, t);
            }
            for (i, &k) in e[1..].iter().enumerate() {
                for _ in 0..k {
                    term = f.mul(&term, &y[i]);
                }
            }
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// Reads a polynomial in `t`, `y1..yn` (`y` alone means `y1`) with
    /// `+ - * ^`, parentheses and integer literals.
    pub fn parse(n: usize, s: &str) -> Result<PolyZ> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, n };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

/// Maps an integer into any field by base-2^30 digits.
pub fn bigint_to_field<F: Field>(f: &F, c: &BigInt) -> F::Elem {
    if let Some(v) = c.to_i64() {
        return f.from_int(v);
    }
    let base = f.from_int(1 << 30);
    let (sign, digits) = c.to_u32_digits();
    let mut acc = f.zero();
    // Digits are 32-bit, little-endian; split each into two halves.
    let two32 = f.mul(&base, &f.from_int(4));
    for d in digits.iter().rev() {
        acc = f.add(&f.mul(&acc, &two32), &f.from_int(*d as i64));
    }
    if sign == num_bigint::Sign::Minus {
        acc = f.neg(&acc);
    }
    acc
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest t-degree first, then by y-degree.
        let mut terms: Vec<(&Exponents, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            (b.0[0], PolyZ::y_degree(b.0), b.0).cmp(&(a.0[0], PolyZ::y_degree(a.0), a.0))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let name = |i: usize| if i == 0 { "t".to_string() } else { format!("y{i}") };
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(name(i)),
                    _ => factors.push(format!("{}^{x}", name(i))),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyZ({self})")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Format(format!("{msg} at offset {} in polynomial", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<PolyZ> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyZ> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<PolyZ> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.number()?;
            let k = k.to_u32().ok_or_else(|| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.error("bad number"))
    }

    fn atom(&mut self) -> Result<PolyZ> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(PolyZ::constant(self.n, self.number()?)),
            Some(b't') => {
                self.pos += 1;
                Ok(PolyZ::t(self.n))
            }
            Some(b'y') => {
                self.pos += 1;
                let i = if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.number()?.to_usize().ok_or_else(|| self.error("bad variable index"))?
                } else {
                    1
                };
                if !(1..=self.n).contains(&i) {
                    return Err(self.error(&format!("variable y{i} outside y1..y{}", self.n)));
                }
                Ok(PolyZ::y(self.n, i))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}
