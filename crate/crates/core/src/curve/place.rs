//! Curves, rational places and their enumeration.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{ElementOrder, Field, FieldElement};
use crate::{Error, Result};

/// The two curve families handled by the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Curve {
    ProjectiveLine,
    /// `y² = x^p − x` over a field of characteristic `p`.
    Hyperelliptic { p: u32 },
}

impl Curve {
    pub fn hyperelliptic(p: u32) -> Result<Self> {
        Field::prime(p)?;
        Ok(Curve::Hyperelliptic { p })
    }

    pub fn genus(&self) -> u32 {
        match self {
            Curve::ProjectiveLine => 0,
            Curve::Hyperelliptic { p } => (p - 1) / 2,
        }
    }

    /// Exponent `(p+1)/2` in the `y`-transformation of a Möbius map.
    pub fn y_weight(&self) -> u64 {
        match self {
            Curve::ProjectiveLine => 0,
            Curve::Hyperelliptic { p } => (*p as u64).div_ceil(2),
        }
    }

    /// Checks the working field is compatible with the curve.
    pub fn check_field(&self, field: Field) -> Result<()> {
        match self {
            Curve::Hyperelliptic { p } if field.characteristic() != *p => Err(Error::InvalidField(format!(
                "curve y² = x^{p} − x needs a field of characteristic {p}, got {field}"
            ))),
            _ => Ok(()),
        }
    }

    /// `x^p − x`, the right-hand side of the curve equation.
    pub fn rhs(&self, x: FieldElement) -> FieldElement {
        match self {
            Curve::ProjectiveLine => x.field().zero(),
            Curve::Hyperelliptic { p } => x.pow(*p as u64) - x,
        }
    }

    pub fn contains(&self, place: &Place) -> bool {
        match (self, place) {
            (_, Place::Infinity) => true,
            (Curve::ProjectiveLine, Place::Finite(_)) => true,
            (Curve::Hyperelliptic { .. }, Place::Affine { x, y }) => *y * *y == self.rhs(*x),
            _ => false,
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::ProjectiveLine => write!(f, "P1"),
            Curve::Hyperelliptic { p } => write!(f, "y^2 = x^{p} - x"),
        }
    }
}

/// A degree-one place: the point at infinity, a finite point of P¹, or an
/// affine point of the hyperelliptic curve.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Finite(FieldElement),
    Affine { x: FieldElement, y: FieldElement },
}

impl Place {
    pub fn x(&self) -> Option<FieldElement> {
        match self {
            Place::Infinity => None,
            Place::Finite(x) | Place::Affine { x, .. } => Some(*x),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// On `y² = x^p − x`: ∞ or an affine point with `y = 0`.
    pub fn is_weierstrass(&self) -> bool {
        match self {
            Place::Infinity => true,
            Place::Affine { y, .. } => y.is_zero(),
            Place::Finite(_) => false,
        }
    }

    /// True when every coordinate lies in the prime field.
    pub fn is_prime_rational(&self) -> bool {
        match self {
            Place::Infinity => true,
            Place::Finite(x) => x.is_prime_field(),
            Place::Affine { x, y } => x.is_prime_field() && y.is_prime_field(),
        }
    }

    /// The same place with coordinates embedded in `field`.
    pub fn embed(&self, field: Field) -> Result<Place> {
        Ok(match self {
            Place::Infinity => Place::Infinity,
            Place::Finite(x) => Place::Finite(field.embed(*x)?),
            Place::Affine { x, y } => Place::Affine {
                x: field.embed(*x)?,
                y: field.embed(*y)?,
            },
        })
    }

    /// Parses `inf`, `(x)`, `(x,y)` or homogeneous `[a:b]` (P¹).
    pub fn parse(s: &str, curve: Curve, field: Field) -> Result<Place> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Place::Infinity);
        }
        let bad = || Error::Parse(format!("bad place `{s}`"));
        let place = if let Some(body) = t.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            let (a, b) = body.split_once(':').ok_or_else(bad)?;
            let a = field.parse_element(a)?;
            let b = field.parse_element(b)?;
            if b.is_zero() {
                if a.is_zero() {
                    return Err(bad());
                }
                Place::Infinity
            } else {
                Place::Finite(a / b)
            }
        } else {
            let body = t.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
            match body.split_once(',') {
                Some((x, y)) => Place::Affine {
                    x: field.parse_element(x)?,
                    y: field.parse_element(y)?,
                },
                None => Place::Finite(field.parse_element(body)?),
            }
        };
        if !curve.contains(&place) {
            return Err(Error::NotOnCurve(place.to_string()));
        }
        Ok(place)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(x) => write!(f, "({x})"),
            Place::Affine { x, y } => write!(f, "({x},{y})"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An indexed list of distinct places.
#[derive(Clone, Debug)]
pub struct PlaceSet {
    places: Vec<Place>,
    index: HashMap<Place, usize>,
}

impl PlaceSet {
    pub fn new(places: Vec<Place>) -> Result<Self> {
        let mut index = HashMap::with_capacity(places.len());
        for (i, p) in places.iter().enumerate() {
            if index.insert(*p, i).is_some() {
                return Err(Error::InvalidCode(format!("place {p} listed twice")));
            }
        }
        Ok(PlaceSet { places, index })
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn get(&self, i: usize) -> Place {
        self.places[i]
    }

    pub fn index_of(&self, p: &Place) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Place) -> bool {
        self.index.contains_key(p)
    }
}

/// All places of `curve` rational over `field`: ∞ first, then finite or
/// affine places sorted by `(x, y)` in the given element order.
pub fn enumerate_places(curve: Curve, field: Field, order: ElementOrder) -> Result<Vec<Place>> {
    curve.check_field(field)?;
    let rank = field.rank_table(order);
    let mut out = vec![Place::Infinity];
    for x in field.elements(order) {
        match curve {
            Curve::ProjectiveLine => out.push(Place::Finite(x)),
            Curve::Hyperelliptic { .. } => {
                let r = curve.rhs(x);
                if r.is_zero() {
                    out.push(Place::Affine { x, y: r });
                } else if let Some(y) = field.sqrt(r) {
                    let (a, b) = (y, -y);
                    let (a, b) = if rank[a.index() as usize] <= rank[b.index() as usize] {
                        (a, b)
                    } else {
                        (b, a)
                    };
                    out.push(Place::Affine { x, y: a });
                    out.push(Place::Affine { x, y: b });
                }
            }
        }
    }
    Ok(out)
}

/// The affine (or finite) places, in enumeration order, with ∞ removed.
pub fn affine_places(curve: Curve, field: Field, order: ElementOrder) -> Result<Vec<Place>> {
    let mut v = enumerate_places(curve, field, order)?;
    v.remove(0);
    Ok(v)
}

#[cfg(test)]
mod test {
    use super::*;

    #[test]
    fn place_counts() {
        let c7 = Curve::hyperelliptic(7).unwrap();
        let f7 = Field::prime(7).unwrap();
        let pl = enumerate_places(c7, f7, ElementOrder::Lexicographic).unwrap();
        assert_eq!(pl.len(), 8);
        assert_eq!(pl[0], Place::Infinity);
        assert!(pl[1..].iter().all(|p| p.is_weierstrass()));
        let c3 = Curve::hyperelliptic(3).unwrap();
        assert_eq!(
            enumerate_places(c3, Field::prime(3).unwrap(), ElementOrder::Lexicographic).unwrap().len(),
            4
        );
        let f49 = Field::quadratic(7).unwrap();
        let all = enumerate_places(c7, f49, ElementOrder::Lexicographic).unwrap();
        assert_eq!(all.len(), 92);
        assert!(all.iter().all(|p| c7.contains(p)));
        // p ≡ 1 (mod 4): x^p − x is never a nonzero square in GF(p²)
        let c5 = Curve::hyperelliptic(5).unwrap();
        let f25 = Field::quadratic(5).unwrap();
        assert_eq!(enumerate_places(c5, f25, ElementOrder::Lexicographic).unwrap().len(), 6);
    }

    #[test]
    fn wrong_characteristic_rejected() {
        let c7 = Curve::hyperelliptic(7).unwrap();
        assert!(enumerate_places(c7, Field::prime(5).unwrap(), ElementOrder::Lexicographic).is_err());
    }

    #[test]
    fn parse_places() {
        let c7 = Curve::hyperelliptic(7).unwrap();
        let f = Field::prime(7).unwrap();
        assert_eq!(Place::parse("inf", c7, f).unwrap(), Place::Infinity);
        let p = Place::parse("(3,0)", c7, f).unwrap();
        assert_eq!(p.to_string(), "(3,0)");
        assert!(Place::parse("(3,1)", c7, f).is_err());
        let p1 = Curve::ProjectiveLine;
        assert_eq!(Place::parse("[1:0]", p1, f).unwrap(), Place::Infinity);
        assert_eq!(Place::parse("[0:1]", p1, f).unwrap(), Place::Finite(f.zero()));
        assert_eq!(Place::parse("[2:1]", p1, f).unwrap(), Place::Finite(f.from_int(2)));
    }
}
