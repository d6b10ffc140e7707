//! Automorphisms of P¹ and of `y² = x^p − x`.
//!
//! Every automorphism handled here has the shape
//! `(x, y) ↦ ((ax+b)/(cx+d), e·y/(cx+d)^s)` with `s = (p+1)/2`, which is an
//! automorphism of the curve exactly when `e² = ad − bc` and the Möbius part is
//! defined over GF(p) up to a scalar. The pair `(M, e)` is stored in a
//! normalised form (first nonzero entry of `M` equal to 1) so that equality of
//! maps is equality of data.

use std::fmt;

use crate::algebra::{Field, FieldElement};
use crate::{Error, Result};

use super::place::{Curve, Place};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct AutMap {
    curve: Curve,
    /// `[a, b, c, d]` for `x ↦ (ax+b)/(cx+d)`.
    m: [FieldElement; 4],
    /// Scalar on `y` (always 1 on P¹).
    e: FieldElement,
}

impl AutMap {
    pub fn identity(curve: Curve, field: Field) -> Self {
        let (o, z) = (field.one(), field.zero());
        AutMap {
            curve,
            m: [o, z, z, o],
            e: o,
        }
    }

    /// A Möbius map of P¹.
    pub fn mobius(m: [FieldElement; 4]) -> Result<Self> {
        Self::new(Curve::ProjectiveLine, m, m[0].field().one())
    }

    pub fn new(curve: Curve, m: [FieldElement; 4], e: FieldElement) -> Result<Self> {
        let field = e.field();
        if m.iter().any(|v| v.field() != field) {
            return Err(Error::FieldMismatch);
        }
        curve.check_field(field)?;
        let det = m[0] * m[3] - m[1] * m[2];
        if det.is_zero() {
            return Err(Error::NotAnAutomorphism("singular Möbius matrix".into()));
        }
        let map = AutMap { curve, m, e }.normalized();
        if let Curve::Hyperelliptic { .. } = curve {
            if map.e * map.e != map.det() {
                return Err(Error::NotAnAutomorphism(format!(
                    "y-scalar {} does not square to det {}",
                    map.e,
                    map.det()
                )));
            }
            if !map.m.iter().all(|v| v.is_prime_field()) {
                return Err(Error::NotAnAutomorphism(
                    "Möbius part is not defined over the prime field".into(),
                ));
            }
        }
        Ok(map)
    }

    fn normalized(self) -> Self {
        let lead = *self.m.iter().find(|v| !v.is_zero()).expect("nonsingular");
        let lambda = lead.inv().expect("nonzero");
        let m = self.m.map(|v| v * lambda);
        let e = match self.curve {
            Curve::ProjectiveLine => self.e.field().one(),
            Curve::Hyperelliptic { .. } => self.e * lambda.pow(self.curve.y_weight()),
        };
        AutMap { curve: self.curve, m, e }
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn field(&self) -> Field {
        self.e.field()
    }

    pub fn matrix(&self) -> [FieldElement; 4] {
        self.m
    }

    pub fn y_scalar(&self) -> FieldElement {
        self.e
    }

    pub fn det(&self) -> FieldElement {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn is_identity(&self) -> bool {
        *self == AutMap::identity(self.curve, self.field())
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &AutMap) -> AutMap {
        let [a1, b1, c1, d1] = self.m;
        let [a2, b2, c2, d2] = other.m;
        AutMap {
            curve: self.curve,
            m: [
                a1 * a2 + b1 * c2,
                a1 * b2 + b1 * d2,
                c1 * a2 + d1 * c2,
                c1 * b2 + d1 * d2,
            ],
            e: self.e * other.e,
        }
        .normalized()
    }

    pub fn inverse(&self) -> AutMap {
        let [a, b, c, d] = self.m;
        // adj(M) = det·M⁻¹, and (det·M⁻¹, e⁻¹·det^s) ≡ (M⁻¹, e⁻¹)
        let det = self.det();
        let e = self.e.inv().expect("unit") * det.pow(self.curve.y_weight());
        AutMap {
            curve: self.curve,
            m: [d, -b, -c, a],
            e,
        }
        .normalized()
    }

    pub fn apply(&self, place: &Place) -> Place {
        let [a, b, c, d] = self.m;
        match *place {
            Place::Infinity => {
                if c.is_zero() {
                    Place::Infinity
                } else {
                    let x = a / c;
                    match self.curve {
                        Curve::ProjectiveLine => Place::Finite(x),
                        Curve::Hyperelliptic { .. } => Place::Affine { x, y: x.field().zero() },
                    }
                }
            }
            Place::Finite(x) => {
                let den = c * x + d;
                if den.is_zero() {
                    Place::Infinity
                } else {
                    Place::Finite((a * x + b) / den)
                }
            }
            Place::Affine { x, y } => {
                let den = c * x + d;
                if den.is_zero() {
                    Place::Infinity
                } else {
                    Place::Affine {
                        x: (a * x + b) / den,
                        y: self.e * y / den.pow(self.curve.y_weight()),
                    }
                }
            }
        }
    }
}

impl fmt::Display for AutMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        match self.curve {
            Curve::ProjectiveLine => write!(f, "x -> ({a}*x+{b})/({c}*x+{d})"),
            Curve::Hyperelliptic { .. } => write!(
                f,
                "(x,y) -> (({a}*x+{b})/({c}*x+{d}), {}*y/({c}*x+{d})^{})",
                self.e,
                self.curve.y_weight()
            ),
        }
    }
}

impl fmt::Debug for AutMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The named generators of the automorphism group of `y² = x^p − x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `(x, y) ↦ (x, −y)`.
    G1,
    /// `(x, y) ↦ (a²x, ay)`.
    G2(FieldElement),
    /// `(x, y) ↦ (x+1, y)`.
    G3,
    /// `(x, y) ↦ (−1/x, y/x^((p+1)/2))`, swapping ∞ and `(0,0)`.
    G4,
}

impl Generator {
    pub fn name(&self) -> String {
        match self {
            Generator::G1 => "g1".into(),
            Generator::G2(a) => format!("g2({a})"),
            Generator::G3 => "g3".into(),
            Generator::G4 => "g4".into(),
        }
    }

    pub fn to_map(&self, curve: Curve, field: Field) -> Result<AutMap> {
        let (o, z) = (field.one(), field.zero());
        match self {
            Generator::G1 => AutMap::new(curve, [o, z, z, o], -o),
            Generator::G2(a) => {
                let a = field.embed(*a)?;
                AutMap::new(curve, [a * a, z, z, o], a)
            }
            Generator::G3 => AutMap::new(curve, [o, o, z, o], o),
            Generator::G4 => AutMap::new(curve, [z, -o, o, z], o),
        }
    }

    /// Direct evaluation of the defining formula on a place.
    pub fn apply(&self, curve: Curve, field: Field, place: &Place) -> Place {
        let s = curve.y_weight();
        match (*self, *place) {
            (Generator::G4, Place::Infinity) => Place::Affine {
                x: field.zero(),
                y: field.zero(),
            },
            (_, Place::Infinity) => Place::Infinity,
            (g, Place::Affine { x, y }) => match g {
                Generator::G1 => Place::Affine { x, y: -y },
                Generator::G2(a) => {
                    let a = field.embed(a).expect("parameter lies in the working field");
                    Place::Affine { x: a * a * x, y: a * y }
                }
                Generator::G3 => Place::Affine { x: x + field.one(), y },
                Generator::G4 => {
                    if x.is_zero() {
                        Place::Infinity
                    } else {
                        Place::Affine {
                            x: -x.inv().unwrap(),
                            y: y / x.pow(s),
                        }
                    }
                }
            },
            (_, p @ Place::Finite(_)) => p,
        }
    }
}

/// `γ₁, γ₂(a), γ₃, γ₄` with `a` the first element of order `p−1` (over GF(p))
/// or `2(p−1)` (over GF(p²)).
pub fn standard_generators(curve: Curve, field: Field) -> Result<Vec<Generator>> {
    curve.check_field(field)?;
    let p = field.characteristic() as u64;
    let order = if field.degree() == 1 { p - 1 } else { 2 * (p - 1) };
    let a = field.primitive_root(order)?;
    Ok(vec![Generator::G1, Generator::G2(a), Generator::G3, Generator::G4])
}
