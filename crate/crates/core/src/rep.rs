//! Matrices of the action `ρ(g)f = f ∘ g⁻¹` of curve automorphisms on
//! Riemann–Roch spaces, and the structural checks built on them.

use serde::Serialize;

use crate::algebra::{Field, FieldElement, Matrix};
use crate::curve::{AutGroup, AutMap, Curve, Generator, Place};
use crate::perm::Perm;
use crate::rrspace::{basis_one_point, ell, one_point_exponents, Divisor, RRBasis, RationalFunction};
use crate::{Error, Result};

/// Matrix `M` of `ρ(g)` in `basis`: `f_j ∘ g⁻¹ = Σ_i M[i][j] f_i`.
///
/// With this column convention `g ↦ M` is a homomorphism.
pub fn rep_matrix(g: &AutMap, basis: &RRBasis) -> Result<Matrix> {
    let d = basis.divisor();
    if d.apply(g) != *d {
        return Err(Error::NotStable(g.to_string()));
    }
    let ginv = g.inverse();
    let n = basis.len();
    let mut m = Matrix::zeros(basis.field(), n, n);
    for (j, f) in basis.functions().iter().enumerate() {
        let coords = basis.coordinates(&f.compose(&ginv)?)?;
        for (i, c) in coords.into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    Ok(m)
}

/// Projective action on P¹ for a divisor that `g` need not fix: `f ↦ h·(f ∘ g⁻¹)`
/// with `div h = g(D) − D`, normalised so the first nonzero entry is 1.
pub fn projective_rep_matrix(g: &AutMap, basis: &RRBasis) -> Result<Matrix> {
    let curve = basis.curve();
    if curve != Curve::ProjectiveLine {
        return Err(Error::UnsupportedDivisor("projective action is implemented on P¹".into()));
    }
    let field = basis.field();
    let d = basis.divisor();
    let shift = d.apply(g).sub(d);
    let mut h = RationalFunction::one(curve, field);
    for (p, &c) in shift.iter() {
        if let Place::Finite(a) = p {
            h = h.mul(&RationalFunction::linear_power(curve, *a, c))?;
        }
    }
    let ginv = g.inverse();
    let n = basis.len();
    let mut m = Matrix::zeros(field, n, n);
    for (j, f) in basis.functions().iter().enumerate() {
        let coords = basis.coordinates(&h.mul(&f.compose(&ginv)?)?)?;
        for (i, c) in coords.into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    Ok(m.normalize_projective())
}

/// Matrix `S` of the substitution `f ↦ f ∘ g` written by rows:
/// `f_i ∘ g = Σ_j S[i][j] f_j`. Equals `rep_matrix(g⁻¹)ᵀ`.
pub fn substitution_matrix(g: &AutMap, basis: &RRBasis) -> Result<Matrix> {
    Ok(rep_matrix(&g.inverse(), basis)?.transpose())
}

/// `g(D) = D` for every generator of `group`.
pub fn check_divisor_stable(group: &AutGroup, divisor: &Divisor) -> bool {
    group.generators().iter().all(|g| divisor.apply(g) == *divisor)
}

/// `ord_{g(P)}(f ∘ g⁻¹) = ord_P(f)` for each map, function and place, i.e.
/// `div(ρ(g)f) = g(div f)` restricted to `places` (which must be stable).
pub fn check_divisor_equivariance(maps: &[AutMap], functions: &[RationalFunction], places: &[Place]) -> Result<bool> {
    for g in maps {
        let ginv = g.inverse();
        for f in functions {
            let fg = f.compose(&ginv)?;
            for p in places {
                if fg.valuation(&g.apply(p))? != f.valuation(p)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Outcome of [`triangularity_check`] on `L(m·∞)`.
#[derive(Debug, Clone, Serialize)]
pub struct TriangularityReport {
    pub p: u32,
    pub m: i64,
    pub dim: usize,
    /// `(i, j)` exponent of each basis monomial `x^i y^j`, by pole order.
    pub exponents: Vec<(usize, usize)>,
    pub all_lower_triangular: bool,
    /// γ₁ is `diag((−1)^j)`.
    pub g1_diagonal_signs: bool,
    /// γ₂(a) is `diag(a^{2i+j})`.
    pub g2_diagonal_powers: bool,
    /// γ₃ sends `x^r y^s` to `Σ_k C(r,k) x^k y^s`.
    pub g3_binomial_rows: bool,
    pub passed: bool,
}

/// Substitution matrices of `γ₁, γ₂(a), γ₃` on the monomial basis of
/// `L(m·∞)`, checked to be lower-triangular with the expected entries.
pub fn triangularity_check(p: u32, field: Field, m: i64) -> Result<TriangularityReport> {
    let curve = Curve::hyperelliptic(p)?;
    let basis = basis_one_point(curve, field, m)?;
    let exps = one_point_exponents(p, m);
    let gens = crate::curve::standard_generators(curve, field)?;
    let a = match gens[1] {
        Generator::G2(a) => a,
        _ => unreachable!(),
    };
    let s = |g: &Generator| substitution_matrix(&g.to_map(curve, field)?, &basis);
    let (s1, s2, s3) = (s(&gens[0])?, s(&gens[1])?, s(&gens[2])?);
    let n = basis.len();
    let all_lower = [&s1, &s2, &s3].iter().all(|m| m.is_lower_triangular());
    let diag_is = |mat: &Matrix, want: &dyn Fn(usize, usize) -> FieldElement| {
        mat.is_diagonal() && exps.iter().enumerate().all(|(k, &(i, j))| mat[(k, k)] == want(i, j))
    };
    let g1_ok = diag_is(&s1, &|_, j| if j % 2 == 0 { field.one() } else { -field.one() });
    let g2_ok = diag_is(&s2, &|i, j| a.pow((2 * i + j) as u64));
    let mut g3_ok = true;
    for (row, &(r, sy)) in exps.iter().enumerate() {
        for col in 0..n {
            let (k, sk) = exps[col];
            let want = if sk == sy && k <= r {
                field.from_int(binomial_mod(r as u64, k as u64, p as u64) as i64)
            } else {
                field.zero()
            };
            if s3[(row, col)] != want {
                g3_ok = false;
            }
        }
    }
    let passed = all_lower && g1_ok && g2_ok && g3_ok;
    Ok(TriangularityReport {
        p,
        m,
        dim: n,
        exponents: exps,
        all_lower_triangular: all_lower,
        g1_diagonal_signs: g1_ok,
        g2_diagonal_powers: g2_ok,
        g3_binomial_rows: g3_ok,
        passed,
    })
}

/// `C(n, k) mod p` by Lucas' theorem.
fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let (mut num, mut den) = (1u64, 1u64);
        for i in 0..ki {
            num = num * (ni - i) % p;
            den = den * (i + 1) % p;
        }
        let mut inv = 1u64;
        let (mut b, mut e) = (den, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc = acc * num % p * inv % p;
        n /= p;
        k /= p;
    }
    acc
}

/// One orbit block of a P¹ decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct Block {
    pub orbit: Vec<String>,
    pub dim: usize,
}

/// Orbit decomposition of `L(D)` on P¹ for an effective stable `D`.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub blocks: Vec<Block>,
    pub constants: bool,
    pub ell: usize,
    /// `1 + Σ dims = ℓ(D)`.
    pub dims_sum_ok: bool,
    /// For each generator, `ρ(g)m_P^k` lies in `⟨1, m_{gP}^j : j ≤ k⟩` with a
    /// nonzero `m_{gP}^k` coefficient.
    pub graded_monomial: bool,
    /// Every generator's matrix restricted to the non-constant blocks is
    /// monomial, with no constant component.
    pub exact_monomial: bool,
}

/// Basis element labels `(place, k)` for `m_P^k`; `None` for the constant.
fn p1_labels(divisor: &Divisor) -> Vec<Option<(Place, i64)>> {
    let mut out = vec![None];
    for (p, &k) in divisor.iter() {
        for e in 1..=k {
            out.push(Some((*p, e)));
        }
    }
    out
}

/// Splits the support of an effective `G`-stable divisor on P¹ into orbits and
/// checks the block structure of every generator's matrix.
pub fn p1_decompose(group: &AutGroup, divisor: &Divisor) -> Result<DecompositionReport> {
    if group.curve() != Curve::ProjectiveLine {
        return Err(Error::UnsupportedDivisor("decomposition is for P¹".into()));
    }
    if !divisor.is_effective() {
        return Err(Error::UnsupportedDivisor(format!("{divisor} is not effective")));
    }
    if !check_divisor_stable(group, divisor) {
        return Err(Error::NotStable(divisor.to_string()));
    }
    let field = group.field();
    let basis = crate::rrspace::basis_p1(divisor, field)?;
    let labels = p1_labels(divisor);
    let support = divisor.support();
    // orbits of the support
    let mut orbits: Vec<Vec<Place>> = Vec::new();
    for p in &support {
        if orbits.iter().any(|o| o.contains(p)) {
            continue;
        }
        let mut orbit = vec![*p];
        let mut i = 0;
        while i < orbit.len() {
            for g in group.generators() {
                let q = g.apply(&orbit[i]);
                if !orbit.contains(&q) {
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.sort();
        orbits.push(orbit);
    }
    let blocks: Vec<Block> = orbits
        .iter()
        .map(|o| Block {
            orbit: o.iter().map(|p| p.to_string()).collect(),
            dim: o.iter().map(|p| divisor.coeff(p) as usize).sum(),
        })
        .collect();
    let ell = basis.len();
    let dims_sum_ok = 1 + blocks.iter().map(|b| b.dim).sum::<usize>() == ell;
    let index_of = |label: &(Place, i64)| labels.iter().position(|l| l.as_ref() == Some(label)).unwrap();
    let mut graded = true;
    let mut exact = true;
    for g in group.generators() {
        let m = rep_matrix(g, &basis)?;
        for (col, label) in labels.iter().enumerate() {
            let Some((p, k)) = label else { continue };
            let target = index_of(&(g.apply(p), *k));
            for row in 0..labels.len() {
                let entry = m[(row, col)];
                let allowed = match &labels[row] {
                    None => true,
                    Some((q, j)) => *q == g.apply(p) && j <= k,
                };
                if !entry.is_zero() && !allowed {
                    graded = false;
                }
                if row == target && entry.is_zero() {
                    graded = false;
                }
                if row != target && !entry.is_zero() {
                    exact = false;
                }
            }
        }
    }
    Ok(DecompositionReport {
        blocks,
        constants: true,
        ell,
        dims_sum_ok,
        graded_monomial: graded,
        exact_monomial: exact,
    })
}

/// For each map and each `m_P^k`, whether `ρ(g)m_P^k = c·m_{gP}^k` for a
/// single scalar `c`.
pub fn permutation_action_check(maps: &[AutMap], divisor: &Divisor, field: Field) -> Result<bool> {
    let basis = crate::rrspace::basis_p1(divisor, field)?;
    let labels = p1_labels(divisor);
    for g in maps {
        let ginv = g.inverse();
        for (f, label) in basis.functions().iter().zip(&labels) {
            let Some((p, k)) = label else { continue };
            let moved = f.compose(&ginv)?;
            let target = match g.apply(p) {
                Place::Infinity => RationalFunction::monomial(Curve::ProjectiveLine, field, *k as usize, 0)?,
                Place::Finite(a) => RationalFunction::linear_power(Curve::ProjectiveLine, a, -k),
                other => return Err(Error::UnsupportedDivisor(other.to_string())),
            };
            let ratio = moved.div(&target)?;
            if !(ratio.u().is_constant() && ratio.v().is_zero() && ratio.w().is_constant()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Quotient dimensions of the filtration `L(D) ⊇ L(D − D₀) ⊇ L(D − 2D₀) ⊇ …`.
#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub deg_d: i64,
    pub d0: i64,
    /// `ℓ(D − m·D₀)` for `m = 0..=⌈deg D / d₀⌉ + 1`.
    pub dims: Vec<usize>,
    pub differences: Vec<usize>,
    /// Differences for `0 ≤ m ≤ ⌊deg D / d₀⌋ − 1`.
    pub proof_quotients: Vec<usize>,
    pub bound_holds: bool,
    /// Every proof quotient equals `d₀`.
    pub sharp: bool,
}

/// Computes the filtration by multiples of `d0_divisor`; when `group` is
/// given, both divisors must be stable under it.
pub fn filtration_bound(
    group: Option<&AutGroup>,
    divisor: &Divisor,
    d0_divisor: &Divisor,
    field: Field,
) -> Result<FiltrationReport> {
    if let Some(g) = group {
        for d in [divisor, d0_divisor] {
            if !check_divisor_stable(g, d) {
                return Err(Error::NotStable(d.to_string()));
            }
        }
    }
    if !d0_divisor.is_effective() || d0_divisor.degree() <= 0 {
        return Err(Error::UnsupportedDivisor("D₀ must be effective of positive degree".into()));
    }
    let deg = divisor.degree();
    let d0 = d0_divisor.degree();
    let top = if deg <= 0 { 1 } else { (deg + d0 - 1) / d0 + 1 };
    let dims = (0..=top)
        .map(|m| ell(&divisor.sub(&d0_divisor.scale(m)), field))
        .collect::<Result<Vec<_>>>()?;
    let differences: Vec<usize> = dims.windows(2).map(|w| w[0] - w[1]).collect();
    let d = if deg <= 0 { 0 } else { (deg / d0) as usize };
    let proof_quotients = differences[..d.min(differences.len())].to_vec();
    let bound_holds = differences.iter().all(|&q| q as i64 <= d0);
    let sharp = !proof_quotients.is_empty() && proof_quotients.iter().all(|&q| q as i64 == d0);
    Ok(FiltrationReport {
        deg_d: deg,
        d0,
        dims,
        differences,
        proof_quotients,
        bound_holds,
        sharp,
    })
}

/// Checks that `ρ(g)` becomes the coordinate permutation `φ(g)` under the
/// evaluation map at `places`: `Mᵀ·Ev = Ev·Π` with `Π` the permutation matrix
/// of `φ(g)`, and the columns of `Ev` are distinct (so `Π` is the only
/// permutation matrix with that property).
pub fn eval_conjugate_is_permutation(g: &AutMap, basis: &RRBasis, places: &[Place]) -> Result<bool> {
    let m = rep_matrix(g, basis)?;
    let ev = basis.evaluation_matrix(places)?;
    let set = crate::curve::PlaceSet::new(places.to_vec())?;
    let sigma: Perm = crate::curve::induced_perm(g, &set)?;
    let n = places.len();
    let mut pi = Matrix::zeros(basis.field(), n, n);
    for i in 0..n {
        pi[(i, sigma.apply(i))] = basis.field().one();
    }
    let lhs = m.transpose().mul(&ev)?;
    let rhs = ev.mul(&pi)?;
    let mut cols: Vec<Vec<FieldElement>> = (0..n).map(|j| ev.column(j)).collect();
    cols.sort();
    cols.dedup();
    Ok(lhs == rhs && pi.is_permutation_matrix() && cols.len() == n)
}
