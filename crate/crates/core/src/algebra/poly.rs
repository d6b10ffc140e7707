//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, FieldElement};
use crate::{Error, Result};

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `c·x^n`.
    pub fn monomial(c: FieldElement, n: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    /// `x − a`.
    pub fn linear(a: FieldElement) -> Self {
        let field = a.field();
        Self::new(field, vec![-a, field.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(l.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplication by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(self.field, coeffs)
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if self.field != divisor.field {
            return Err(Error::FieldMismatch);
        }
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((self.clone(), self.clone()));
        };
        if nd < dd {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd] * lead_inv;
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j] - c * d;
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(self.field, quot), Poly::new(self.field, rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal("polynomial division is not exact".into()))
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("same field, nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let g = self.gcd(other);
        (self * &other.exact_div(&g).unwrap()).monic()
    }

    /// Multiplicity of `a` as a root (0 if not a root); `None` for the zero polynomial.
    pub fn root_multiplicity(&self, a: FieldElement) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let lin = Poly::linear(a);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.divrem(&lin).unwrap();
            if !r.is_zero() {
                return Some(k);
            }
            p = q;
            k += 1;
        }
    }

    /// Coefficients of `self(x + a)`, i.e. the Taylor expansion at `a`.
    pub fn taylor_shift(&self, a: FieldElement) -> Poly {
        // Horner in the shifted variable: p(t + a)
        let t_plus_a = Poly::new(self.field, vec![a, self.field.one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(self.field), |acc, &c| &(&acc * &t_plus_a) + &Poly::constant(c))
    }

    /// Substitutes `x ↦ q(x)`.
    pub fn compose(&self, q: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(self.field), |acc, &c| &(&acc * q) + &Poly::constant(c))
    }

    /// Homogenised substitution `Σ cᵢ·num^i·den^(n−i)` with `n ≥ deg self`,
    /// i.e. `den^n · self(num/den)`.
    pub fn homogeneous_compose(&self, num: &Poly, den: &Poly, n: usize) -> Poly {
        let mut acc = Poly::zero(self.field);
        let mut num_pow = Poly::one(self.field);
        for (i, &c) in self.coeffs.iter().enumerate() {
            debug_assert!(i <= n);
            if !c.is_zero() {
                let term = &num_pow * &den.pow((n - i) as u64);
                acc = &acc + &term.scale(c);
            }
            num_pow = &num_pow * num;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * self.field.from_int(i as i64))
            .collect();
        Poly::new(self.field, coeffs)
    }

    /// Maps every coefficient through `f` into another field.
    pub fn map_coeffs(&self, field: Field, f: impl Fn(FieldElement) -> FieldElement) -> Poly {
        Poly::new(field, self.coeffs.iter().map(|&c| f(c)).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = if c.is_prime_field() {
                    c.to_string()
                } else {
                    format!("({c})")
                };
                match i {
                    0 => c,
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "{}", Error::FieldMismatch);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(self.field, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "{}", Error::FieldMismatch);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(self.field, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "{}", Error::FieldMismatch);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let p = self.field.characteristic() as u64;
        let k = self.field.degree();
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        if k == 1 {
            // accumulate in u64 and reduce once per output coefficient
            let a: Vec<u64> = self.coeffs.iter().map(|c| c.coeffs()[0] as u64).collect();
            let b: Vec<u64> = rhs.coeffs.iter().map(|c| c.coeffs()[0] as u64).collect();
            let mut acc = vec![0u64; n];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    acc[i + j] = (acc[i + j] + x * y) % p;
                }
            }
            return Poly::new(
                self.field,
                acc.into_iter().map(|v| self.field.from_int(v as i64)).collect(),
            );
        }
        let mut out = vec![self.field.zero(); n];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + x * y;
            }
        }
        Poly::new(self.field, out)
    }
}
