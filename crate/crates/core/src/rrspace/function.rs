//! Rational functions `(u(x) + v(x)·y) / w(x)` on P¹ or `y² = x^p − x`,
//! their valuations, local expansions, evaluation and composition with
//! automorphisms.

use std::fmt;

use crate::algebra::{Field, FieldElement, Poly, TruncatedSeries};
use crate::curve::{AutMap, Curve, Place};
use crate::{Error, Result};

/// `(u + v·y) / w` with `w` monic and `gcd(u, v, w) = 1`; `v = 0` on P¹.
#[derive(Clone)]
pub struct RationalFunction {
    curve: Curve,
    u: Poly,
    v: Poly,
    w: Poly,
}

impl RationalFunction {
    pub fn new(curve: Curve, u: Poly, v: Poly, w: Poly) -> Result<Self> {
        let field = u.field();
        if v.field() != field || w.field() != field {
            return Err(Error::FieldMismatch);
        }
        curve.check_field(field)?;
        if w.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if curve == Curve::ProjectiveLine && !v.is_zero() {
            return Err(Error::InvalidField("P¹ functions have no y-part".into()));
        }
        Ok(Self::normalized(curve, u, v, w))
    }

    fn normalized(curve: Curve, u: Poly, v: Poly, w: Poly) -> Self {
        let field = u.field();
        if u.is_zero() && v.is_zero() {
            return RationalFunction {
                curve,
                u,
                v,
                w: Poly::one(field),
            };
        }
        let g = u.gcd(&v).gcd(&w);
        let (u, v, w) = if g.degree() > Some(0) {
            (u.exact_div(&g).unwrap(), v.exact_div(&g).unwrap(), w.exact_div(&g).unwrap())
        } else {
            (u, v, w)
        };
        let lc = w.leading().unwrap().inv().unwrap();
        RationalFunction {
            curve,
            u: u.scale(lc),
            v: v.scale(lc),
            w: w.scale(lc),
        }
    }

    pub fn from_poly(curve: Curve, u: Poly) -> Self {
        let f = u.field();
        Self::normalized(curve, u, Poly::zero(f), Poly::one(f))
    }

    pub fn constant(curve: Curve, c: FieldElement) -> Self {
        Self::from_poly(curve, Poly::constant(c))
    }

    pub fn zero(curve: Curve, field: Field) -> Self {
        Self::from_poly(curve, Poly::zero(field))
    }

    pub fn one(curve: Curve, field: Field) -> Self {
        Self::from_poly(curve, Poly::one(field))
    }

    pub fn x(curve: Curve, field: Field) -> Self {
        Self::from_poly(curve, Poly::x(field))
    }

    /// `y` on the hyperelliptic curve.
    pub fn y(curve: Curve, field: Field) -> Result<Self> {
        if curve == Curve::ProjectiveLine {
            return Err(Error::InvalidField("P¹ has no y".into()));
        }
        Ok(Self::normalized(curve, Poly::zero(field), Poly::one(field), Poly::one(field)))
    }

    /// `x^i y^j`, with `y²` rewritten as `x^p − x`.
    pub fn monomial(curve: Curve, field: Field, i: usize, j: usize) -> Result<Self> {
        let xi = Poly::monomial(field.one(), i);
        if j == 0 {
            return Ok(Self::from_poly(curve, xi));
        }
        let r = rhs_poly(curve, field)?;
        let even = &xi * &r.pow((j / 2) as u64);
        Ok(if j.is_multiple_of(2) {
            Self::from_poly(curve, even)
        } else {
            Self::normalized(curve, Poly::zero(field), even, Poly::one(field))
        })
    }

    /// `(x − a)^k` for any integer `k`.
    pub fn linear_power(curve: Curve, a: FieldElement, k: i64) -> Self {
        let field = a.field();
        let lin = Poly::linear(a).pow(k.unsigned_abs());
        if k >= 0 {
            Self::from_poly(curve, lin)
        } else {
            Self::normalized(curve, Poly::one(field), Poly::zero(field), lin)
        }
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn field(&self) -> Field {
        self.u.field()
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn w(&self) -> &Poly {
        &self.w
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// True when the function is a polynomial in `x` and `y`.
    pub fn is_polynomial(&self) -> bool {
        self.w.degree() == Some(0)
    }

    pub fn embed(&self, field: Field) -> Result<Self> {
        let e = |p: &Poly| -> Result<Poly> {
            Ok(Poly::new(
                field,
                p.coeffs().iter().map(|&c| field.embed(c)).collect::<Result<Vec<_>>>()?,
            ))
        };
        RationalFunction::new(self.curve, e(&self.u)?, e(&self.v)?, e(&self.w)?)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.curve != other.curve || self.field() != other.field() {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let u = &(&self.u * &other.w) + &(&other.u * &self.w);
        let v = &(&self.v * &other.w) + &(&other.v * &self.w);
        Ok(Self::normalized(self.curve, u, v, &self.w * &other.w))
    }

    pub fn neg(&self) -> Self {
        Self::normalized(self.curve, -&self.u, -&self.v, self.w.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self::normalized(self.curve, self.u.scale(c), self.v.scale(c), self.w.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut u = &self.u * &other.u;
        if !self.v.is_zero() && !other.v.is_zero() {
            let r = rhs_poly(self.curve, self.field())?;
            u = &u + &(&(&self.v * &other.v) * &r);
        }
        let v = &(&self.u * &other.v) + &(&self.v * &other.u);
        Ok(Self::normalized(self.curve, u, v, &self.w * &other.w))
    }

    /// `u² − v²·(x^p − x)`, the norm of the numerator to `F(x)`.
    pub fn numerator_norm(&self) -> Poly {
        let uu = &self.u * &self.u;
        if self.v.is_zero() {
            return uu;
        }
        let r = rhs_poly(self.curve, self.field()).expect("v ≠ 0 only on hyperelliptic curves");
        &uu - &(&(&self.v * &self.v) * &r)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(u + vy) = (u − vy)/(u² − v²r)
        let n = self.numerator_norm();
        Ok(Self::normalized(self.curve, &self.w * &self.u, -&(&self.w * &self.v), n))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.curve, self.field());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Order of vanishing at `place` (negative for poles).
    pub fn valuation(&self, place: &Place) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        self.check_place(place)?;
        match (self.curve, place) {
            (Curve::ProjectiveLine, Place::Infinity) => {
                Ok(self.w.degree().unwrap() as i64 - self.u.degree().unwrap() as i64)
            }
            (Curve::Hyperelliptic { p }, Place::Infinity) => {
                let num = match (self.u.degree(), self.v.degree()) {
                    (Some(du), Some(dv)) => (-2 * du as i64).min(-2 * dv as i64 - p as i64),
                    (Some(du), None) => -2 * du as i64,
                    (None, Some(dv)) => -2 * dv as i64 - p as i64,
                    (None, None) => unreachable!(),
                };
                Ok(num + 2 * self.w.degree().unwrap() as i64)
            }
            _ => Ok(self.laurent(place, 1)?.0),
        }
    }

    fn check_place(&self, place: &Place) -> Result<()> {
        let ok = match place {
            Place::Infinity => true,
            Place::Finite(x) => self.curve == Curve::ProjectiveLine && x.field() == self.field(),
            Place::Affine { x, .. } => {
                matches!(self.curve, Curve::Hyperelliptic { .. })
                    && x.field() == self.field()
                    && self.curve.contains(place)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotOnCurve(format!("{place} for a function over {}", self.field())))
        }
    }

    /// At a finite place: `(ord, s)` with `f = t^ord · s(t)`, `s` a unit known
    /// to `precision` terms, in the local parameter `t` (`x − x₀`, or `y` at a
    /// Weierstrass point).
    pub fn laurent(&self, place: &Place, precision: usize) -> Result<(i64, TruncatedSeries)> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        self.check_place(place)?;
        let x0 = place
            .x()
            .ok_or_else(|| Error::Series("no affine expansion at infinity".into()))?;
        let weier = place.is_weierstrass();
        let scale = if weier { 2 } else { 1 };
        let w_mult = self.w.root_multiplicity(x0).unwrap() as usize * scale;
        let n_bound = self.numerator_norm().root_multiplicity(x0).unwrap() as usize * scale;
        let local = LocalCoords::new(self.curve, place, n_bound.max(w_mult) + precision + 1)?;
        let num = local.eval(&self.u, &self.v);
        let ord_n = num
            .valuation()
            .ok_or_else(|| Error::Series(format!("numerator vanishes beyond precision bound at {place}")))?;
        let den = local.eval(&self.w, &Poly::zero(self.field()));
        let ord_w = den.valuation().expect("w has finite multiplicity");
        debug_assert_eq!(ord_w, w_mult);
        let num = num.shift_down(ord_n)?.truncate(precision);
        let den = den.shift_down(ord_w)?.truncate(precision);
        let s = num.mul(&den.inv()?)?;
        Ok((ord_n as i64 - ord_w as i64, s))
    }

    /// Value at a place where `f` has no pole.
    pub fn evaluate(&self, place: &Place) -> Result<FieldElement> {
        if self.is_zero() {
            return Ok(self.field().zero());
        }
        if let Place::Infinity = place {
            let ord = self.valuation(place)?;
            return match ord {
                o if o > 0 => Ok(self.field().zero()),
                0 => Ok(self.u.leading().unwrap() / self.w.leading().unwrap()),
                _ => Err(Error::Pole(place.to_string())),
            };
        }
        self.check_place(place)?;
        let x0 = place.x().unwrap();
        let w0 = self.w.eval(x0);
        if !w0.is_zero() {
            let y0 = match place {
                Place::Affine { y, .. } => *y,
                _ => self.field().zero(),
            };
            return Ok((self.u.eval(x0) + self.v.eval(x0) * y0) / w0);
        }
        let (ord, s) = self.laurent(place, 1)?;
        match ord {
            o if o > 0 => Ok(self.field().zero()),
            0 => Ok(s.coeff(0)),
            _ => Err(Error::Pole(place.to_string())),
        }
    }

    /// `f ∘ g`, i.e. the function `P ↦ f(g(P))`.
    pub fn compose(&self, g: &AutMap) -> Result<Self> {
        if g.curve() != self.curve || g.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let field = self.field();
        let [a, b, c, d] = g.matrix();
        let num = Poly::new(field, vec![b, a]);
        let den = Poly::new(field, vec![d, c]);
        let s = self.curve.y_weight() as usize;
        let deg = |p: &Poly| p.degree().unwrap_or(0);
        let (du, dv, dw) = (deg(&self.u), deg(&self.v), deg(&self.w));
        let n = du.max(dw).max(if self.v.is_zero() { 0 } else { dv + s });
        let u = &den.pow((n - du) as u64) * &self.u.homogeneous_compose(&num, &den, du);
        let w = &den.pow((n - dw) as u64) * &self.w.homogeneous_compose(&num, &den, dw);
        let v = if self.v.is_zero() {
            Poly::zero(field)
        } else {
            (&den.pow((n - dv - s) as u64) * &self.v.homogeneous_compose(&num, &den, dv)).scale(g.y_scalar())
        };
        Ok(Self::normalized(self.curve, u, v, w))
    }

    /// Dense coefficient text `([u0,u1,..] + [v0,..]*y) / [w0,..]`.
    pub fn to_text(&self) -> String {
        let list = |p: &Poly| {
            let c: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            format!("[{}]", c.join(","))
        };
        format!("({} + {}*y) / {}", list(&self.u), list(&self.v), list(&self.w))
    }

    pub fn parse_text(text: &str, curve: Curve, field: Field) -> Result<Self> {
        let bad = || Error::Parse(format!("bad function `{text}`"));
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, den) = match t.rsplit_once('/') {
            Some((n, d)) if n.starts_with('(') && n.ends_with(')') => (&n[1..n.len() - 1], Some(d)),
            _ => (t.as_str(), None),
        };
        let parse_list = |s: &str| -> Result<Poly> {
            let body = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
            let coeffs = if body.is_empty() {
                Vec::new()
            } else {
                body.split(',').map(|c| field.parse_element(c)).collect::<Result<Vec<_>>>()?
            };
            Ok(Poly::new(field, coeffs))
        };
        let (u, v) = match num.split_once("]+[") {
            Some((u, v)) => {
                let v = v.strip_suffix("*y").ok_or_else(bad)?;
                (parse_list(&format!("{u}]"))?, parse_list(&format!("[{v}"))?)
            }
            None => (parse_list(num)?, Poly::zero(field)),
        };
        let w = match den {
            Some(d) => parse_list(d)?,
            None => Poly::one(field),
        };
        Self::new(curve, u, v, w)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.curve == other.curve
            && self.field() == other.field()
            && &self.u * &other.w == &other.u * &self.w
            && &self.v * &other.w == &other.v * &self.w
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.u.is_zero(), self.v.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => self.u.to_string(),
            (true, false) => format!("({})*y", self.v),
            (false, false) => format!("{} + ({})*y", self.u, self.v),
        };
        if self.w.degree() == Some(0) {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / ({})", self.w)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `x^p − x` as a polynomial.
pub fn rhs_poly(curve: Curve, field: Field) -> Result<Poly> {
    match curve {
        Curve::ProjectiveLine => Err(Error::InvalidField("P¹ has no curve equation".into())),
        Curve::Hyperelliptic { p } => {
            let mut c = vec![field.zero(); p as usize + 1];
            c[1] = -field.one();
            c[p as usize] = field.one();
            Ok(Poly::new(field, c))
        }
    }
}

/// Expansions of `x` and `y` in the local parameter at a finite place.
pub struct LocalCoords {
    x: TruncatedSeries,
    y: Option<TruncatedSeries>,
}

impl LocalCoords {
    pub fn new(curve: Curve, place: &Place, precision: usize) -> Result<Self> {
        let field = place.x().ok_or_else(|| Error::Series("infinite place".into()))?.field();
        let n = precision;
        match (curve, *place) {
            (Curve::ProjectiveLine, Place::Finite(x0)) => Ok(LocalCoords {
                x: TruncatedSeries::constant(x0, n).add(&TruncatedSeries::t(field, n))?,
                y: None,
            }),
            (Curve::Hyperelliptic { p }, Place::Affine { x: x0, y: y0 }) if y0.is_zero() => {
                // t = y, x = x₀ + s with s^p − s = t²
                let t2 = TruncatedSeries::t(field, n).pow(2);
                let mut s = TruncatedSeries::zero(field, n);
                loop {
                    let next = s.pow(p as u64).sub(&t2)?;
                    if next == s {
                        break;
                    }
                    s = next;
                }
                Ok(LocalCoords {
                    x: TruncatedSeries::constant(x0, n).add(&s)?,
                    y: Some(TruncatedSeries::t(field, n)),
                })
            }
            (Curve::Hyperelliptic { .. }, Place::Affine { x: x0, y: y0 }) => {
                // t = x − x₀, y = y₀·sqrt(r(x₀+t)/y₀²)
                let r = rhs_poly(curve, field)?.taylor_shift(x0);
                let unit = TruncatedSeries::from_poly(&r, n).scale((y0 * y0).inv()?);
                let y = unit.sqrt_with_root(field.one())?.scale(y0);
                Ok(LocalCoords {
                    x: TruncatedSeries::constant(x0, n).add(&TruncatedSeries::t(field, n))?,
                    y: Some(y),
                })
            }
            _ => Err(Error::NotOnCurve(place.to_string())),
        }
    }

    pub fn x(&self) -> &TruncatedSeries {
        &self.x
    }

    /// Series of `u(x) + v(x)·y`.
    pub fn eval(&self, u: &Poly, v: &Poly) -> TruncatedSeries {
        let us = self.x.eval_poly(u);
        match (&self.y, v.is_zero()) {
            (Some(y), false) => us.add(&self.x.eval_poly(v).mul(y).unwrap()).unwrap(),
            _ => us,
        }
    }
}
