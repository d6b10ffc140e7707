//! Divisors supported on rational places.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Field;
use crate::curve::{AutMap, Curve, Place};
use crate::{Error, Result};

/// A finite formal ℤ-combination of places of one curve.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Divisor {
    curve: Curve,
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero(curve: Curve) -> Self {
        Divisor {
            curve,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_pairs(curve: Curve, pairs: impl IntoIterator<Item = (Place, i64)>) -> Result<Self> {
        let mut d = Self::zero(curve);
        for (p, c) in pairs {
            if !curve.contains(&p) {
                return Err(Error::NotOnCurve(p.to_string()));
            }
            d.add_place(p, c);
        }
        Ok(d)
    }

    /// `m·∞`.
    pub fn at_infinity(curve: Curve, m: i64) -> Self {
        let mut d = Self::zero(curve);
        d.add_place(Place::Infinity, m);
        d
    }

    /// `c · Σ_{P ∈ places} P`.
    pub fn sum_of(curve: Curve, places: &[Place], c: i64) -> Result<Self> {
        Self::from_pairs(curve, places.iter().map(|&p| (p, c)))
    }

    fn add_place(&mut self, p: Place, c: i64) {
        let entry = self.coeffs.entry(p).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Places with nonzero coefficient, in place order (∞ first).
    pub fn support(&self) -> Vec<Place> {
        self.coeffs.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (&p, &c) in &other.coeffs {
            d.add_place(p, c);
        }
        d
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Divisor {
        let mut d = Self::zero(self.curve);
        for (&p, &c) in &self.coeffs {
            d.add_place(p, k * c);
        }
        d
    }

    /// Push-forward `g(D) = Σ n_P · g(P)`.
    pub fn apply(&self, g: &AutMap) -> Divisor {
        let mut d = Self::zero(self.curve);
        for (p, &c) in &self.coeffs {
            d.add_place(g.apply(p), c);
        }
        d
    }

    /// The same divisor with coordinates embedded in `field`.
    pub fn embed(&self, field: Field) -> Result<Divisor> {
        let mut d = Self::zero(self.curve);
        for (p, &c) in &self.coeffs {
            d.add_place(p.embed(field)?, c);
        }
        Ok(d)
    }

    /// One line `<coeff> <place>` per support place.
    pub fn to_text(&self) -> String {
        self.coeffs.iter().map(|(p, c)| format!("{c} {p}\n")).collect()
    }

    /// Parses the line format; `#` starts a comment, repeated places add up.
    pub fn parse_text(text: &str, curve: Curve, field: Field) -> Result<Divisor> {
        let mut d = Self::zero(curve);
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (c, p) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("bad divisor line `{line}`")))?;
            let c: i64 = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            d.add_place(Place::parse(p, curve, field)?, c);
        }
        Ok(d)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.coeffs.iter().map(|(p, c)| format!("{c}*{p}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod test {
    use super::*;

    #[test]
    fn arithmetic_and_degree() {
        let f = Field::prime(7).unwrap();
        let c = Curve::hyperelliptic(7).unwrap();
        let o = Place::Affine { x: f.zero(), y: f.zero() };
        let d = Divisor::from_pairs(c, [(Place::Infinity, 5), (o, -2)]).unwrap();
        assert_eq!(d.degree(), 3);
        assert!(!d.is_effective());
        assert!(d.sub(&d).is_zero());
        assert_eq!(d.scale(2).coeff(&o), -4);
        let bad = Place::Affine { x: f.one(), y: f.one() };
        assert!(Divisor::from_pairs(c, [(bad, 1)]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let f = Field::prime(7).unwrap();
        let c = Curve::hyperelliptic(7).unwrap();
        let d = Divisor::parse_text("5 inf\n-1 (3,0)  # comment\n2 (3,0)\n", c, f).unwrap();
        assert_eq!(d.coeff(&Place::Infinity), 5);
        assert_eq!(d.coeff(&Place::Affine { x: f.from_int(3), y: f.zero() }), 1);
        assert_eq!(Divisor::parse_text(&d.to_text(), c, f).unwrap(), d);
        assert!(Divisor::parse_text("x inf", c, f).is_err());
    }

    #[test]
    fn push_forward_by_involution() {
        let f = Field::prime(7).unwrap();
        let c = Curve::hyperelliptic(7).unwrap();
        let g4 = crate::curve::Generator::G4.to_map(c, f).unwrap();
        let d = Divisor::at_infinity(c, 3);
        let img = d.apply(&g4);
        assert_eq!(img.coeff(&Place::Affine { x: f.zero(), y: f.zero() }), 3);
        assert_eq!(img.apply(&g4), d);
    }
}
