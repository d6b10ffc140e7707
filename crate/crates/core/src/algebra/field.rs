//! GF(p) and GF(p²) with `p` an odd prime below 2¹⁶.
//!
//! GF(p²) is GF(p)[u]/(u² − n) where `n = −1` when `p ≡ 3 (mod 4)` and
//! otherwise `n` is the smallest quadratic non-residue. Elements are stored as
//! coefficient pairs `c0 + c1·u` reduced into `[0, p)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Order in which the elements of a field are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementOrder {
    /// Increasing integer index `c0 + c1·p` (GF(p) first, then `u`, `1+u`, …).
    #[default]
    Lexicographic,
    /// `0, 1, g, g², …, g^(q−2)` for the smallest primitive root `g`.
    PowersOfPrimitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Field {
    p: u32,
    degree: u8,
    nonresidue: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
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

impl Field {
    pub fn new(p: u32, degree: u8) -> Result<Self> {
        if !(3..(1 << 16)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "p = {p} must be an odd prime below 65536"
            )));
        }
        if degree != 1 && degree != 2 {
            return Err(Error::InvalidField(format!(
                "extension degree {degree} not supported (use 1 or 2)"
            )));
        }
        let nonresidue = if degree == 1 {
            0
        } else if p % 4 == 3 {
            p - 1
        } else {
            (2..p)
                .find(|&n| pow_mod(n as u64, (p as u64 - 1) / 2, p as u64) == p as u64 - 1)
                .expect("every odd prime has a non-residue")
        };
        let field = Field {
            p,
            degree,
            nonresidue,
        };
        if degree == 2 {
            // u² − n irreducible ⇔ n has no square root in GF(p)
            let pp = p as u64;
            if (0..pp).any(|r| r * r % pp == nonresidue as u64) {
                return Err(Error::Internal(format!("x² − {nonresidue} is reducible mod {p}")));
            }
        }
        Ok(field)
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn quadratic(p: u32) -> Result<Self> {
        Self::new(p, 2)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    /// Number of elements `q = p^k`.
    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.degree as u32)
    }

    /// The constant `n` in the modulus `u² − n` (0 for prime fields).
    pub fn nonresidue(&self) -> u32 {
        self.nonresidue
    }

    /// Coefficients `[c0, c1, c2]` of the monic modulus `c0 + c1·u + u²`.
    pub fn modulus(&self) -> Option<[u32; 3]> {
        (self.degree == 2).then(|| [(self.p - self.nonresidue) % self.p, 0, 1])
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: *self, c: [0, 0] }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: *self, c: [1, 0] }
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.p as i64;
        FieldElement {
            field: *self,
            c: [v.rem_euclid(p) as u32, 0],
        }
    }

    pub fn from_coeffs(&self, c0: i64, c1: i64) -> FieldElement {
        let p = self.p as i64;
        let c1 = if self.degree == 1 { 0 } else { c1.rem_euclid(p) as u32 };
        FieldElement {
            field: *self,
            c: [c0.rem_euclid(p) as u32, c1],
        }
    }

    /// The adjoined square root `u` of the non-residue; `None` for prime fields.
    pub fn u(&self) -> Option<FieldElement> {
        (self.degree == 2).then_some(FieldElement { field: *self, c: [0, 1] })
    }

    /// Element with integer index `c0 + c1·p`.
    pub fn element(&self, index: u64) -> FieldElement {
        debug_assert!(index < self.size());
        let p = self.p as u64;
        FieldElement {
            field: *self,
            c: [(index % p) as u32, (index / p) as u32],
        }
    }

    /// All elements in the requested enumeration order.
    pub fn elements(&self, order: ElementOrder) -> Vec<FieldElement> {
        match order {
            ElementOrder::Lexicographic => (0..self.size()).map(|i| self.element(i)).collect(),
            ElementOrder::PowersOfPrimitive => {
                let g = self
                    .primitive_root(self.size() - 1)
                    .expect("q − 1 always divides q − 1");
                let mut out = Vec::with_capacity(self.size() as usize);
                out.push(self.zero());
                let mut acc = self.one();
                for _ in 0..self.size() - 1 {
                    out.push(acc);
                    acc = acc * g;
                }
                out
            }
        }
    }

    /// Position of every element (by index) in the given enumeration.
    pub fn rank_table(&self, order: ElementOrder) -> Vec<u64> {
        let mut rank = vec![0u64; self.size() as usize];
        for (pos, e) in self.elements(order).into_iter().enumerate() {
            rank[e.index() as usize] = pos as u64;
        }
        rank
    }

    /// First element of exact multiplicative order `order` in lexicographic
    /// enumeration.
    pub fn primitive_root(&self, order: u64) -> Result<FieldElement> {
        let group = self.size() - 1;
        if order == 0 || !group.is_multiple_of(order) {
            return Err(Error::NoSuchOrder {
                order,
                size: self.size(),
            });
        }
        (1..self.size())
            .map(|i| self.element(i))
            .find(|e| e.multiplicative_order() == Some(order))
            .ok_or(Error::NoSuchOrder {
                order,
                size: self.size(),
            })
    }

    pub fn prime_subfield(&self) -> Field {
        Field {
            p: self.p,
            degree: 1,
            nonresidue: 0,
        }
    }

    pub fn quadratic_extension(&self) -> Result<Field> {
        Field::new(self.p, 2)
    }

    /// Image of `e` (from a subfield of `self`) in `self`.
    pub fn embed(&self, e: FieldElement) -> Result<FieldElement> {
        if e.field.p != self.p || e.field.degree > self.degree {
            return Err(Error::FieldMismatch);
        }
        if e.field.degree == self.degree {
            return Ok(e);
        }
        Ok(FieldElement { field: *self, c: [e.c[0], 0] })
    }

    /// Parses `a`, `a+b*u`, `b*u`, `u` or `-a` (coefficients reduced mod p).
    pub fn parse_element(&self, token: &str) -> Result<FieldElement> {
        let s: String = token.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let bad = || Error::Parse(format!("bad field element `{token}`"));
        let mut acc = self.zero();
        // split into signed terms
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term.strip_prefix('+').unwrap_or(term)),
            };
            let value = if let Some(coef) = body.strip_suffix("*u") {
                let c: i64 = coef.parse().map_err(|_| bad())?;
                self.u().ok_or_else(bad)? * self.from_int(c)
            } else if body == "u" {
                self.u().ok_or_else(bad)?
            } else {
                self.from_int(body.parse::<i64>().map_err(|_| bad())?)
            };
            acc = if neg { acc - value } else { acc + value };
        }
        Ok(acc)
    }

    /// A square root of `a`, if one exists (Tonelli–Shanks over GF(q)^×).
    pub fn sqrt(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return Some(self.zero());
        }
        let q1 = self.size() - 1;
        if a.pow(q1 / 2) != self.one() {
            return None;
        }
        let mut s = 0;
        let mut odd = q1;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let z = (1..self.size())
            .map(|i| self.element(i))
            .find(|e| e.pow(q1 / 2) != self.one())
            .expect("non-residue exists");
        let mut m = s;
        let mut c = z.pow(odd);
        let mut t = a.pow(odd);
        let mut r = a.pow(odd.div_ceil(2));
        while !t.is_one() {
            let mut i = 0;
            let mut tt = t;
            while !tt.is_one() {
                tt = tt * tt;
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = b * b;
            }
            m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
        Some(r)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^2)", self.p)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: Field,
    c: [u32; 2],
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> [u32; 2] {
        self.c
    }

    /// Integer index `c0 + c1·p`.
    pub fn index(&self) -> u64 {
        self.c[0] as u64 + self.c[1] as u64 * self.field.p as u64
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0, 0]
    }

    pub fn is_one(&self) -> bool {
        self.c == [1, 0]
    }

    /// True for elements of the prime subfield.
    pub fn is_prime_field(&self) -> bool {
        self.c[1] == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        Ok(self.add_unchecked(rhs.neg_unchecked()))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        Ok(self.mul_unchecked(rhs.inv()?))
    }

    fn add_unchecked(self, rhs: Self) -> Self {
        let p = self.field.p;
        let a = (self.c[0] + rhs.c[0]) % p;
        let b = (self.c[1] + rhs.c[1]) % p;
        FieldElement { field: self.field, c: [a, b] }
    }

    fn neg_unchecked(self) -> Self {
        let p = self.field.p;
        FieldElement {
            field: self.field,
            c: [(p - self.c[0]) % p, (p - self.c[1]) % p],
        }
    }

    fn mul_unchecked(self, rhs: Self) -> Self {
        let p = self.field.p as u64;
        let (a0, a1) = (self.c[0] as u64, self.c[1] as u64);
        let (b0, b1) = (rhs.c[0] as u64, rhs.c[1] as u64);
        if self.field.degree == 1 {
            return FieldElement {
                field: self.field,
                c: [(a0 * b0 % p) as u32, 0],
            };
        }
        let n = self.field.nonresidue as u64;
        let c0 = (a0 * b0 + (a1 * b1 % p) * n) % p;
        let c1 = (a0 * b1 + a1 * b0) % p;
        FieldElement {
            field: self.field,
            c: [c0 as u32, c1 as u32],
        }
    }

    /// `a^p` (the non-trivial automorphism on GF(p²), identity on GF(p)).
    pub fn frobenius(self) -> Self {
        let p = self.field.p;
        FieldElement {
            field: self.field,
            c: [self.c[0], (p - self.c[1]) % p],
        }
    }

    /// `a·a^p`, an element of GF(p) stored in the same field.
    pub fn norm(self) -> Self {
        if self.field.degree == 1 {
            return self;
        }
        self.mul_unchecked(self.frobenius())
    }

    /// Absolute trace `a + a^p` into the prime subfield (identity for k = 1).
    pub fn trace(self) -> FieldElement {
        let sub = self.field.prime_subfield();
        if self.field.degree == 1 {
            return FieldElement { field: sub, c: self.c };
        }
        let t = self.add_unchecked(self.frobenius());
        debug_assert_eq!(t.c[1], 0);
        FieldElement { field: sub, c: [t.c[0], 0] }
    }

    /// Converts an element of the prime subfield into a GF(p) element.
    pub fn to_prime_field(self) -> Option<FieldElement> {
        self.is_prime_field().then(|| FieldElement {
            field: self.field.prime_subfield(),
            c: [self.c[0], 0],
        })
    }

    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p as u64;
        if self.field.degree == 1 {
            let v = pow_mod(self.c[0] as u64, p - 2, p);
            return Ok(FieldElement {
                field: self.field,
                c: [v as u32, 0],
            });
        }
        // (a0 + a1 u)^{-1} = (a0 − a1 u) / (a0² − n a1²)
        let (a0, a1) = (self.c[0] as u64, self.c[1] as u64);
        let n = self.field.nonresidue as u64;
        let norm = (a0 * a0 % p + p - (a1 * a1 % p) * n % p) % p;
        let ninv = pow_mod(norm, p - 2, p);
        Ok(FieldElement {
            field: self.field,
            c: [(a0 * ninv % p) as u32, ((p - a1) % p * ninv % p) as u32],
        })
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut acc = self.field.one();
        let mut base = self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(base);
            }
            base = base.mul_unchecked(base);
            exp >>= 1;
        }
        acc
    }

    /// `self^e` for a signed exponent.
    pub fn powi(self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }

    /// Multiplicative order, or `None` for zero.
    pub fn multiplicative_order(self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut order = self.field.size() - 1;
        for f in prime_factors(order) {
            while order.is_multiple_of(f) && self.pow(order / f).is_one() {
                order /= f;
            }
        }
        Some(order)
    }

    pub fn is_square(self) -> bool {
        self.is_zero() || self.pow((self.field.size() - 1) / 2).is_one()
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "{}+{}*u", self.c[0], self.c[1])
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_unchecked()
    }
}

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(mut iter: I) -> FieldElement {
        let first = iter.next().expect("sum of an empty iterator has no field");
        iter.fold(first, |a, b| a + b)
    }
}

#[cfg(test)]
mod test {
    use super::*;

    #[test]
    fn gf7_products() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_int(3) * f.from_int(5), f.one());
        assert_eq!(f.one().inv().unwrap(), f.one());
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf9_uses_i() {
        let f = Field::quadratic(3).unwrap();
        let i = f.u().unwrap();
        assert_eq!(i * i, f.from_int(2));
        assert_eq!(f.modulus(), Some([1, 0, 1]));
    }

    #[test]
    fn gf25_modulus_is_smallest_nonresidue() {
        let f = Field::quadratic(5).unwrap();
        assert_eq!(f.nonresidue(), 2);
        let f = Field::quadratic(13).unwrap();
        assert_eq!(f.nonresidue(), 2);
        let f = Field::quadratic(17).unwrap();
        assert_eq!(f.nonresidue(), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::new(7, 3).is_err());
        assert!(Field::prime(65537).is_err());
    }

    #[test]
    fn mismatched_fields() {
        let a = Field::prime(7).unwrap().one();
        let b = Field::prime(5).unwrap().one();
        assert_eq!(a.checked_add(b), Err(Error::FieldMismatch));
        let c = Field::quadratic(7).unwrap().one();
        assert_eq!(a.checked_mul(c), Err(Error::FieldMismatch));
    }

    #[test]
    fn primitive_roots() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.primitive_root(6).unwrap(), f.from_int(3));
        assert_eq!(f.primitive_root(1).unwrap(), f.one());
        assert!(f.primitive_root(4).is_err());
        // GF(49), order 12: brute-force oracle over lexicographic enumeration
        let g = Field::quadratic(7).unwrap();
        let oracle = (1..49)
            .map(|i| g.element(i))
            .find(|e| {
                let mut acc = *e;
                let mut k = 1;
                while !acc.is_one() {
                    acc = acc * *e;
                    k += 1;
                }
                k == 12
            })
            .unwrap();
        assert_eq!(g.primitive_root(12).unwrap(), oracle);
        assert_eq!(oracle.multiplicative_order(), Some(12));
    }

    #[test]
    fn power_order_matches_magma_listing() {
        let f = Field::prime(7).unwrap();
        let xs: Vec<u32> = f
            .elements(ElementOrder::PowersOfPrimitive)
            .iter()
            .map(|e| e.coeffs()[0])
            .collect();
        assert_eq!(xs, vec![0, 1, 3, 2, 6, 4, 5]);
        let f = Field::prime(13).unwrap();
        let xs: Vec<u32> = f
            .elements(ElementOrder::PowersOfPrimitive)
            .iter()
            .map(|e| e.coeffs()[0])
            .collect();
        assert_eq!(xs, vec![0, 1, 2, 4, 8, 3, 6, 12, 11, 9, 5, 10, 7]);
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for f in [Field::prime(7).unwrap(), Field::quadratic(3).unwrap()] {
            let all = f.elements(ElementOrder::Lexicographic);
            for &a in &all {
                if !a.is_zero() {
                    assert!((a * a.inv().unwrap()).is_one());
                }
                for &b in &all {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for &c in &all {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_and_trace() {
        let f = Field::quadratic(7).unwrap();
        for e in f.elements(ElementOrder::Lexicographic) {
            assert_eq!(e.frobenius(), e.pow(7));
            let t = e.trace();
            assert_eq!(f.embed(t).unwrap(), e + e.pow(7));
        }
    }

    #[test]
    fn square_roots() {
        for f in [
            Field::prime(13).unwrap(),
            Field::quadratic(5).unwrap(),
            Field::quadratic(7).unwrap(),
        ] {
            for e in f.elements(ElementOrder::Lexicographic) {
                match f.sqrt(e) {
                    Some(r) => assert_eq!(r * r, e),
                    None => assert!(!e.is_square()),
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let f = Field::quadratic(7).unwrap();
        let e = f.from_coeffs(3, 5);
        assert_eq!(e.to_string(), "3+5*u");
        assert_eq!(f.parse_element("3+5*u").unwrap(), e);
        assert_eq!(f.parse_element("-4+5*u").unwrap(), e);
        assert_eq!(f.parse_element("u").unwrap(), f.u().unwrap());
        assert!(f.parse_element("x").is_err());
        let g = Field::prime(7).unwrap();
        assert_eq!(g.parse_element("-1").unwrap(), g.from_int(6));
        assert!(g.parse_element("2*u").is_err());
    }
}
