//! Bases of Riemann–Roch spaces `L(D) = {f : div(f) + D ≥ 0} ∪ {0}`.

use std::collections::BTreeMap;

use crate::algebra::{Field, FieldElement, Matrix, Poly};
use crate::curve::{Curve, Place};
use crate::{Error, Result};

use super::divisor::Divisor;
use super::function::{LocalCoords, RationalFunction};

/// An ordered basis of `L(D)` together with each element's pole order at ∞.
#[derive(Clone, Debug)]
pub struct RRBasis {
    divisor: Divisor,
    field: Field,
    functions: Vec<RationalFunction>,
    pole_orders: Vec<i64>,
}

impl RRBasis {
    fn new(divisor: Divisor, field: Field, functions: Vec<RationalFunction>) -> Result<Self> {
        let pole_orders = functions
            .iter()
            .map(|f| Ok(-f.valuation(&Place::Infinity)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(RRBasis {
            divisor,
            field,
            functions,
            pole_orders,
        })
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn curve(&self) -> Curve {
        self.divisor.curve()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn functions(&self) -> &[RationalFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Pole order at ∞ of each basis element (negative for zeros).
    pub fn pole_orders(&self) -> &[i64] {
        &self.pole_orders
    }

    /// `len × |places|` matrix of values `f_i(P_j)`.
    pub fn evaluation_matrix(&self, places: &[Place]) -> Result<Matrix> {
        let rows = self
            .functions
            .iter()
            .map(|f| places.iter().map(|p| f.evaluate(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(Matrix::zeros(self.field, 0, places.len()));
        }
        Matrix::from_rows(self.field, rows)
    }

    /// Coordinates of `g` in this basis, by comparing polynomial coefficients
    /// over a common denominator.
    pub fn coordinates(&self, g: &RationalFunction) -> Result<Vec<FieldElement>> {
        let field = self.field;
        let n = self.len();
        let common = self
            .functions
            .iter()
            .chain(std::iter::once(g))
            .fold(Poly::one(field), |acc, f| acc.lcm(f.w()));
        // each function becomes (U + V·y)/common
        let lift = |f: &RationalFunction| -> (Poly, Poly) {
            let k = common.exact_div(f.w()).expect("lcm is divisible");
            (f.u() * &k, f.v() * &k)
        };
        let cols: Vec<(Poly, Poly)> = self.functions.iter().map(lift).collect();
        let (gu, gv) = lift(g);
        let len_u = cols.iter().map(|c| c.0.coeffs().len()).chain([gu.coeffs().len()]).max().unwrap_or(0);
        let len_v = cols.iter().map(|c| c.1.coeffs().len()).chain([gv.coeffs().len()]).max().unwrap_or(0);
        let rows = len_u + len_v;
        let mut a = Matrix::zeros(field, rows, n);
        for (j, (u, v)) in cols.iter().enumerate() {
            for i in 0..len_u {
                a[(i, j)] = u.coeff(i);
            }
            for i in 0..len_v {
                a[(len_u + i, j)] = v.coeff(i);
            }
        }
        let b: Vec<FieldElement> = (0..len_u).map(|i| gu.coeff(i)).chain((0..len_v).map(|i| gv.coeff(i))).collect();
        let sol = a.solve(&b)?;
        match sol.particular {
            Some(x) if sol.kernel.is_empty() => Ok(x),
            Some(_) => Err(Error::Internal("basis functions are linearly dependent".into())),
            None => Err(Error::NotInSpan),
        }
    }

    /// Checks `ord_P(f) ≥ −D(P)` for every basis element and every given place.
    pub fn check_membership(&self, places: &[Place]) -> Result<bool> {
        for f in &self.functions {
            for p in places {
                if f.valuation(p)? < -self.divisor.coeff(p) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `{x^i y^j : 0 ≤ i ≤ p−1, 2i + pj ≤ m}` ordered by pole order `2i + pj`
/// (on P¹: `{x^i : i ≤ m}`).
pub fn basis_one_point(curve: Curve, field: Field, m: i64) -> Result<RRBasis> {
    curve.check_field(field)?;
    let divisor = Divisor::at_infinity(curve, m);
    let mut fns: Vec<(i64, RationalFunction)> = Vec::new();
    match curve {
        Curve::ProjectiveLine => {
            for i in 0..=m.max(-1) {
                fns.push((i, RationalFunction::monomial(curve, field, i as usize, 0)?));
            }
        }
        Curve::Hyperelliptic { p } => {
            for (i, j) in one_point_exponents(p, m) {
                fns.push((2 * i as i64 + p as i64 * j as i64, RationalFunction::monomial(curve, field, i, j)?));
            }
        }
    }
    fns.sort_by_key(|(k, _)| *k);
    RRBasis::new(divisor, field, fns.into_iter().map(|(_, f)| f).collect())
}

/// Exponent pairs `(i, j)` with `i ≤ p−1` and `2i + pj ≤ m`, by pole order.
pub fn one_point_exponents(p: u32, m: i64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if m < 0 {
        return out;
    }
    let p = p as i64;
    for j in 0..=m / p {
        for i in 0..p {
            if 2 * i + p * j <= m {
                out.push((i as usize, j as usize));
            }
        }
    }
    out.sort_by_key(|&(i, j)| 2 * i as i64 + p * j as i64);
    out
}

/// Closed-form bases on P¹.
///
/// Effective `D`: `{1} ∪ {m_P^k : P ∈ supp D, 1 ≤ k ≤ D(P)}` with `m_∞ = x`
/// and `m_a = (x − a)⁻¹`, listed place by place (∞ first).
/// Non-effective `D` of degree `d ≥ 0`: `{q·x^i : 0 ≤ i ≤ d}` with
/// `q = Π (x − a)^{−D(a)}` over the finite support, which spans `L(D − d·∞)`.
/// Negative degree: the empty basis.
pub fn basis_p1(divisor: &Divisor, field: Field) -> Result<RRBasis> {
    let curve = Curve::ProjectiveLine;
    if divisor.curve() != curve {
        return Err(Error::UnsupportedDivisor("not a divisor on P¹".into()));
    }
    let deg = divisor.degree();
    let mut fns = Vec::new();
    if deg < 0 {
        return RRBasis::new(divisor.clone(), field, fns);
    }
    if divisor.is_effective() {
        fns.push(RationalFunction::one(curve, field));
        for (place, &k) in divisor.iter() {
            for e in 1..=k {
                fns.push(match place {
                    Place::Infinity => RationalFunction::monomial(curve, field, e as usize, 0)?,
                    Place::Finite(a) => RationalFunction::linear_power(curve, field.embed(*a)?, -e),
                    Place::Affine { .. } => return Err(Error::UnsupportedDivisor(place.to_string())),
                });
            }
        }
    } else {
        let mut q = RationalFunction::one(curve, field);
        for (place, &c) in divisor.iter() {
            if let Place::Finite(a) = place {
                q = q.mul(&RationalFunction::linear_power(curve, field.embed(*a)?, -c))?;
            }
        }
        for i in 0..=deg {
            fns.push(q.mul(&RationalFunction::monomial(curve, field, i as usize, 0)?)?);
        }
    }
    RRBasis::new(divisor.clone(), field, fns)
}

/// Basis of `L(D)` for any divisor supported on places rational over `field`.
///
/// With `z = Π (x − a)^{e_a}` clearing the positive finite part of `D`, the
/// map `f ↦ z·f` identifies `L(D)` with the polynomials `h ∈ L(M·∞)`,
/// `M = D(∞) + 2Σe_a`, satisfying `ord_Q(h) ≥ ord_Q(z) − D(Q)` at every finite
/// `Q`. These conditions are imposed on the monomial basis through local
/// expansions truncated at exactly the required order. The result is echelonised
/// so that pole orders at ∞ are distinct and increasing.
pub fn basis_general(divisor: &Divisor, field: Field) -> Result<RRBasis> {
    let curve = divisor.curve();
    curve.check_field(field)?;
    let divisor = divisor.embed(field)?;
    if curve == Curve::ProjectiveLine {
        return basis_p1(&divisor, field);
    }
    if divisor.degree() < 0 {
        return RRBasis::new(divisor, field, Vec::new());
    }
    // exponent e_a for each finite x-coordinate
    let mut e: BTreeMap<FieldElement, i64> = BTreeMap::new();
    for (place, &c) in divisor.iter() {
        if let Place::Affine { x, y } = place {
            let need = if y.is_zero() { (c + 1).div_euclid(2) } else { c };
            let slot = e.entry(*x).or_insert(0);
            *slot = (*slot).max(need);
        }
    }
    e.retain(|_, v| *v > 0);
    let m = divisor.coeff(&Place::Infinity) + 2 * e.values().sum::<i64>();
    let monomials = basis_one_point(curve, field, m)?;
    // finite places needing a vanishing condition: supp D and the conjugates
    // of places over the chosen x-coordinates
    let mut conditions: BTreeMap<Place, usize> = BTreeMap::new();
    let ord_z = |place: &Place| -> i64 {
        match place {
            Place::Affine { x, y } => e.get(x).copied().unwrap_or(0) * if y.is_zero() { 2 } else { 1 },
            _ => 0,
        }
    };
    let mut candidates: Vec<Place> = divisor.support();
    for &x in e.keys() {
        let r = curve.rhs(x);
        if r.is_zero() {
            candidates.push(Place::Affine { x, y: r });
        } else {
            let y = field
                .sqrt(r)
                .ok_or_else(|| Error::UnsupportedDivisor(format!("x = {x} has no rational point")))?;
            candidates.push(Place::Affine { x, y });
            candidates.push(Place::Affine { x, y: -y });
        }
    }
    for place in candidates {
        if place.is_infinity() {
            continue;
        }
        let need = ord_z(&place) - divisor.coeff(&place);
        if need > 0 {
            conditions.insert(place, need as usize);
        }
    }
    let n = monomials.len();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for (place, &need) in &conditions {
        let local = LocalCoords::new(curve, place, need)?;
        let expansions: Vec<_> = monomials
            .functions()
            .iter()
            .map(|h| local.eval(h.u(), h.v()))
            .collect();
        for k in 0..need {
            rows.push(expansions.iter().map(|s| s.coeff(k)).collect());
        }
    }
    let kernel: Vec<Vec<FieldElement>> = if n == 0 {
        Vec::new()
    } else if rows.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect()
    } else {
        Matrix::from_rows(field, rows)?.kernel()
    };
    let hs = echelon_by_pole_order(field, &kernel, n);
    let z = e
        .iter()
        .fold(RationalFunction::one(curve, field), |acc, (&a, &k)| {
            acc.mul(&RationalFunction::linear_power(curve, a, k)).unwrap()
        });
    let zinv = z.inv()?;
    let functions = hs
        .into_iter()
        .map(|coeffs| {
            let h = coeffs
                .iter()
                .zip(monomials.functions())
                .filter(|(c, _)| !c.is_zero())
                .fold(RationalFunction::zero(curve, field), |acc, (c, f)| acc.add(&f.scale(*c)).unwrap());
            h.mul(&zinv)
        })
        .collect::<Result<Vec<_>>>()?;
    RRBasis::new(divisor, field, functions)
}

/// Row-reduces the span of `vectors` (coordinates in a pole-ordered basis)
/// from the highest coordinate down, returning vectors whose last nonzero
/// coordinates are distinct, sorted increasingly.
fn echelon_by_pole_order(field: Field, vectors: &[Vec<FieldElement>], n: usize) -> Vec<Vec<FieldElement>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let reversed: Vec<Vec<FieldElement>> = vectors.iter().map(|v| v.iter().rev().copied().collect()).collect();
    let r = Matrix::from_rows(field, reversed).expect("rectangular").rref();
    let mut out: Vec<Vec<FieldElement>> = (0..r.rank)
        .map(|i| r.matrix.row(i).iter().rev().copied().collect())
        .collect();
    out.sort_by_key(|v: &Vec<FieldElement>| (0..n).rev().find(|&j| !v[j].is_zero()));
    out
}

/// `ℓ(D)`: 0 for negative degree, `deg + 1` on P¹, `deg + 1 − g` above the
/// canonical degree, and the size of [`basis_general`] otherwise.
pub fn ell(divisor: &Divisor, field: Field) -> Result<usize> {
    let deg = divisor.degree();
    if deg < 0 {
        return Ok(0);
    }
    let curve = divisor.curve();
    let g = curve.genus() as i64;
    if curve == Curve::ProjectiveLine {
        return Ok((deg + 1) as usize);
    }
    if deg > 2 * g - 2 {
        return Ok((deg + 1 - g) as usize);
    }
    Ok(basis_general(divisor, field)?.len())
}

/// Whether some two of `places` take equal values on every basis function;
/// returns the first such pair (indices into `places`) when they do.
pub fn separates_points(basis: &RRBasis, places: &[Place]) -> Result<(bool, Option<(usize, usize)>)> {
    let m = basis.evaluation_matrix(places)?;
    let mut seen: std::collections::HashMap<Vec<FieldElement>, usize> = std::collections::HashMap::new();
    for j in 0..places.len() {
        let col = m.column(j);
        if let Some(&i) = seen.get(&col) {
            return Ok((false, Some((i, j))));
        }
        seen.insert(col, j);
    }
    Ok((true, None))
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::algebra::ElementOrder;
    use crate::curve::{affine_places, enumerate_places};

    fn setup(p: u32, k: u8) -> (Curve, Field) {
        (Curve::hyperelliptic(p).unwrap(), Field::new(p, k).unwrap())
    }

    #[test]
    fn one_point_examples() {
        let (c, f) = setup(7, 1);
        let b = basis_one_point(c, f, 5).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b.pole_orders(), &[0, 2, 4]);
        assert_eq!(basis_one_point(c, f, 0).unwrap().len(), 1);
        let b14 = basis_one_point(c, f, 14).unwrap();
        assert_eq!(b14.pole_orders(), &[0, 2, 4, 6, 7, 8, 9, 10, 11, 12, 13, 14]);
        let (c13, f13) = setup(13, 1);
        let b = basis_one_point(c13, f13, 8).unwrap();
        assert_eq!(b.len(), 5);
        assert!(b.functions().iter().all(|h| h.v().is_zero()));
    }

    #[test]
    fn p1_examples() {
        let f = Field::prime(7).unwrap();
        let p1 = Curve::ProjectiveLine;
        let zero = Place::Finite(f.zero());
        let d = Divisor::from_pairs(p1, [(Place::Infinity, 2), (zero, -1)]).unwrap();
        let b = basis_p1(&d, f).unwrap();
        let x = RationalFunction::x(p1, f);
        assert_eq!(b.functions(), &[x.clone(), x.mul(&x).unwrap()]);
        assert_eq!(basis_p1(&Divisor::zero(p1), f).unwrap().len(), 1);
        let two = Place::Finite(f.from_int(2));
        let d = Divisor::from_pairs(p1, [(two, 3), (Place::Infinity, 1)]).unwrap();
        let b = basis_p1(&d, f).unwrap();
        assert_eq!(b.len(), 5);
        assert_eq!(b.functions()[1], x);
        assert_eq!(b.functions()[4], RationalFunction::linear_power(p1, f.from_int(2), -3));
        // evaluation rank at the 6 places other than (2)
        let places: Vec<Place> = enumerate_places(p1, f, ElementOrder::Lexicographic)
            .unwrap()
            .into_iter()
            .filter(|p| *p != two && !p.is_infinity())
            .collect();
        assert_eq!(b.evaluation_matrix(&places).unwrap().rank(), 5);
        assert!(b.check_membership(&enumerate_places(p1, f, ElementOrder::Lexicographic).unwrap()).unwrap());
        let neg = Divisor::at_infinity(p1, -1);
        assert!(basis_p1(&neg, f).unwrap().is_empty());
    }

    #[test]
    fn general_matches_one_point() {
        for p in [5u32, 7] {
            let (c, f) = setup(p, 1);
            for m in 0..=30 {
                let d = Divisor::at_infinity(c, m);
                let g = basis_general(&d, f).unwrap();
                let o = basis_one_point(c, f, m).unwrap();
                assert_eq!(g.functions(), o.functions(), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn general_on_rational_places() {
        let (c, f) = setup(7, 1);
        let places = enumerate_places(c, f, ElementOrder::Lexicographic).unwrap();
        let d = Divisor::sum_of(c, &places, 1).unwrap();
        let b = basis_general(&d, f).unwrap();
        assert_eq!(b.len(), 6);
        assert!(b.check_membership(&places).unwrap());
        assert_eq!(ell(&d, f).unwrap(), 6);
        assert_eq!(ell(&Divisor::at_infinity(c, 5), f).unwrap(), 3);
        assert_eq!(basis_general(&Divisor::zero(c), f).unwrap().len(), 1);
    }

    #[test]
    fn general_with_poles_and_zeros_over_gf49() {
        let (c, f) = setup(7, 2);
        let places = enumerate_places(c, f, ElementOrder::Lexicographic).unwrap();
        let generic: Vec<Place> = places.iter().filter(|p| !p.is_weierstrass()).copied().take(3).collect();
        let cases = vec![
            Divisor::from_pairs(c, [(generic[0], 3), (generic[1], 2), (Place::Infinity, -1)]).unwrap(),
            Divisor::from_pairs(c, [(generic[0], 2), (places[1], 3), (generic[2], -1)]).unwrap(),
            Divisor::from_pairs(c, [(generic[1], 1), (places[3], 1)]).unwrap(),
            Divisor::from_pairs(c, [(Place::Infinity, 12), (places[2], -3), (generic[2], -2)]).unwrap(),
        ];
        for d in cases {
            let b = basis_general(&d, f).unwrap();
            let deg = d.degree();
            if deg > 4 {
                assert_eq!(b.len() as i64, deg + 1 - 3, "{d}");
            } else {
                assert!(b.len() as i64 >= deg + 1 - 3);
            }
            assert!(b.check_membership(&places).unwrap(), "{d}");
            let fresh: Vec<Place> = places.iter().filter(|p| d.coeff(p) == 0).copied().collect();
            assert_eq!(b.evaluation_matrix(&fresh).unwrap().rank(), b.len());
        }
    }

    #[test]
    fn coordinates_recover_combinations() {
        let (c, f) = setup(7, 1);
        let b = basis_one_point(c, f, 14).unwrap();
        let coeffs: Vec<FieldElement> = (0..b.len()).map(|i| f.from_int(i as i64 * 3 + 1)).collect();
        let g = b
            .functions()
            .iter()
            .zip(&coeffs)
            .fold(RationalFunction::zero(c, f), |acc, (h, &k)| acc.add(&h.scale(k)).unwrap());
        assert_eq!(b.coordinates(&g).unwrap(), coeffs);
        let outside = RationalFunction::monomial(c, f, 0, 3).unwrap();
        assert_eq!(b.coordinates(&outside), Err(Error::NotInSpan));
    }

    #[test]
    fn separation_over_gf9() {
        let (c, f) = setup(3, 2);
        let places = affine_places(c, f, ElementOrder::Lexicographic).unwrap();
        let b2 = basis_one_point(c, f, 2).unwrap();
        let (ok, witness) = separates_points(&b2, &places).unwrap();
        assert!(!ok);
        let (i, j) = witness.unwrap();
        assert_eq!(places[i].x(), places[j].x());
        let b3 = basis_one_point(c, f, 3).unwrap();
        assert_eq!(separates_points(&b3, &places).unwrap(), (true, None));
        assert!(separates_points(&b2, &places[..1]).unwrap().0);
    }
}
