//! Power series in one variable `t` truncated at a fixed precision.

use std::fmt;

use super::field::{Field, FieldElement};
use super::poly::Poly;
use crate::{Error, Result};

/// `Σ c_i t^i` known modulo `t^precision`; `coeffs.len() == precision`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl TruncatedSeries {
    pub fn new(field: Field, mut coeffs: Vec<FieldElement>, precision: usize) -> Self {
        coeffs.resize(precision, field.zero());
        TruncatedSeries { field, coeffs }
    }

    pub fn from_ints(field: Field, coeffs: &[i64], precision: usize) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect(), precision)
    }

    pub fn zero(field: Field, precision: usize) -> Self {
        Self::new(field, Vec::new(), precision)
    }

    pub fn constant(c: FieldElement, precision: usize) -> Self {
        Self::new(c.field(), vec![c], precision)
    }

    /// The parameter `t` itself.
    pub fn t(field: Field, precision: usize) -> Self {
        Self::new(field, vec![field.zero(), field.one()], precision)
    }

    pub fn from_poly(p: &Poly, precision: usize) -> Self {
        Self::new(p.field(), p.coeffs().to_vec(), precision)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs[i]
    }

    /// Index of the first nonzero coefficient; `None` if zero to this precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, precision: usize) -> Self {
        Self::new(self.field, self.coeffs[..precision.min(self.precision())].to_vec(), precision.min(self.precision()))
    }

    fn check(&self, other: &Self) -> Result<usize> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.precision().min(other.precision()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.check(other)?;
        let coeffs = (0..n).map(|i| self.coeffs[i] + other.coeffs[i]).collect();
        Ok(Self::new(self.field, coeffs, n))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let n = self.check(other)?;
        let coeffs = (0..n).map(|i| self.coeffs[i] - other.coeffs[i]).collect();
        Ok(Self::new(self.field, coeffs, n))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.check(other)?;
        let mut out = vec![self.field.zero(); n];
        for i in 0..n {
            let a = self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in 0..n - i {
                out[i + j] = out[i + j] + a * other.coeffs[j];
            }
        }
        Ok(Self::new(self.field, out, n))
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|&a| a * c).collect(), self.precision())
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::constant(self.field.one(), self.precision());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    /// Multiplicative inverse of a unit (nonzero constant term).
    pub fn inv(&self) -> Result<Self> {
        let n = self.precision();
        let c0 = match self.coeffs.first() {
            Some(c) if !c.is_zero() => *c,
            _ => return Err(Error::Series("inverse of a non-unit".into())),
        };
        let c0inv = c0.inv()?;
        let mut out = vec![self.field.zero(); n];
        out[0] = c0inv;
        for k in 1..n {
            let s = (1..=k).fold(self.field.zero(), |acc, i| acc + self.coeffs[i] * out[k - i]);
            out[k] = -s * c0inv;
        }
        Ok(Self::new(self.field, out, n))
    }

    /// A square root of a unit whose constant term is a square.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = self
            .coeffs
            .first()
            .copied()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::Series("square root of a non-unit".into()))?;
        let r0 = self
            .field
            .sqrt(c0)
            .ok_or_else(|| Error::Series(format!("constant term {c0} is not a square")))?;
        self.sqrt_with_root(r0)
    }

    /// The square root whose constant term is `r0` (requires `r0² = c0`).
    pub fn sqrt_with_root(&self, r0: FieldElement) -> Result<Self> {
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        if r0.is_zero() || r0 * r0 != self.coeffs[0] {
            return Err(Error::Series(format!("{r0} is not a square root of the constant term")));
        }
        let two_r0_inv = (r0 + r0).inv()?;
        let mut out = vec![self.field.zero(); n];
        out[0] = r0;
        for k in 1..n {
            // coefficient k of out² equals self[k]
            let s = (1..k).fold(self.field.zero(), |acc, i| acc + out[i] * out[k - i]);
            out[k] = (self.coeffs[k] - s) * two_r0_inv;
        }
        Ok(Self::new(self.field, out, n))
    }

    /// Divides by `t^k`, which must divide the known part; precision drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.precision() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Series(format!("series is not divisible by t^{k}")));
        }
        Ok(Self::new(self.field, self.coeffs[k..].to_vec(), self.precision() - k))
    }

    /// Evaluates a polynomial at this series (Horner).
    pub fn eval_poly(&self, p: &Poly) -> Self {
        let n = self.precision();
        p.coeffs().iter().rev().fold(Self::zero(self.field, n), |acc, &c| {
            acc.mul(self).unwrap().add(&Self::constant(c, n)).unwrap()
        })
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(t^{})", c.join(", "), self.precision())
    }
}

#[cfg(test)]
mod test {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf7() -> Field {
        Field::prime(7).unwrap()
    }

    fn ints(s: &TruncatedSeries) -> Vec<u32> {
        s.coeffs().iter().map(|c| c.coeffs()[0]).collect()
    }

    #[test]
    fn small_examples() {
        let f = gf7();
        let a = TruncatedSeries::from_ints(f, &[1, 1], 3);
        let b = TruncatedSeries::from_ints(f, &[1, -1], 3);
        assert_eq!(ints(&a.mul(&b).unwrap()), vec![1, 0, 6]);
        assert_eq!(ints(&a.inv().unwrap()), vec![1, 6, 1]);
        let one = TruncatedSeries::from_ints(f, &[1], 2);
        assert_eq!(ints(&one.sqrt().unwrap()), vec![1, 0]);
    }

    #[test]
    fn precision_is_minimum_of_operands() {
        let f = gf7();
        let a = TruncatedSeries::from_ints(f, &[1, 2, 3], 5);
        let b = TruncatedSeries::from_ints(f, &[1], 3);
        assert_eq!(a.add(&b).unwrap().precision(), 3);
        assert_eq!(a.mul(&b).unwrap().precision(), 3);
    }

    #[test]
    fn non_units_rejected() {
        let f = gf7();
        let t = TruncatedSeries::t(f, 4);
        assert!(t.inv().is_err());
        assert!(t.sqrt().is_err());
        let three = TruncatedSeries::from_ints(f, &[3, 1], 4);
        assert!(three.sqrt().is_err());
    }

    #[test]
    fn multiply_back_random_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in [Field::prime(13).unwrap(), Field::quadratic(7).unwrap()] {
            for _ in 0..100 {
                let n = rng.gen_range(1..12);
                let mut c: Vec<FieldElement> =
                    (0..n).map(|_| f.element(rng.gen_range(0..f.size()))).collect();
                if c[0].is_zero() {
                    c[0] = f.one();
                }
                let s = TruncatedSeries::new(f, c, n);
                let inv = s.inv().unwrap();
                assert_eq!(s.mul(&inv).unwrap(), TruncatedSeries::constant(f.one(), n));
                // square the series so the square root exists
                let sq = s.mul(&s).unwrap();
                let r = sq.sqrt().unwrap();
                assert_eq!(r.mul(&r).unwrap(), sq);
            }
        }
    }
}
