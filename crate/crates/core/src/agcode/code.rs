//! Linear codes given by a generator matrix, and evaluation codes `C(D, E)`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, FieldElement, Matrix};
use crate::curve::{Curve, Place};
use crate::rrspace::{basis_general, basis_one_point, basis_p1, Divisor, RRBasis};
use crate::{Error, Result};

/// Generator matrix in the form `(I_k | A)` after the column permutation
/// `columns` (new column `j` is old column `columns[j]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub matrix: Matrix,
    pub columns: Vec<usize>,
}

impl StandardForm {
    pub fn is_identity_permutation(&self) -> bool {
        self.columns.iter().enumerate().all(|(i, &c)| i == c)
    }

    /// The redundancy part `A` of `(I_k | A)`.
    pub fn redundancy(&self) -> Matrix {
        let k = self.matrix.rows();
        let n = self.matrix.cols();
        self.matrix.select_columns(&(k..n).collect::<Vec<_>>())
    }
}

/// How an evaluation code was built.
#[derive(Debug, Clone)]
pub struct AgProvenance {
    pub curve: Curve,
    pub divisor: Divisor,
    pub places: Vec<Place>,
    pub basis: RRBasis,
    /// Whether evaluation at `places` is injective on `L(D)`.
    pub injective: bool,
}

/// Serialisable summary of an [`AgProvenance`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceSummary {
    pub curve: String,
    pub divisor: String,
    pub places: Vec<String>,
    pub basis: Vec<String>,
    pub injective: bool,
}

impl AgProvenance {
    pub fn summary(&self) -> ProvenanceSummary {
        ProvenanceSummary {
            curve: self.curve.to_string(),
            divisor: self.divisor.to_string(),
            places: self.places.iter().map(|p| p.to_string()).collect(),
            basis: self.basis.functions().iter().map(|f| f.to_string()).collect(),
            injective: self.injective,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Field,
    generator: Matrix,
    standard: StandardForm,
    provenance: Option<AgProvenance>,
}

impl LinearCode {
    /// A code spanned by the rows of `generator`, which must be independent.
    pub fn new(generator: Matrix) -> Result<Self> {
        let standard = standard_form_of(&generator)?;
        if standard.matrix.rows() != generator.rows() {
            return Err(Error::InvalidCode(format!(
                "generator rows are dependent (rank {} < {})",
                standard.matrix.rows(),
                generator.rows()
            )));
        }
        Ok(LinearCode {
            field: generator.field(),
            generator,
            standard,
            provenance: None,
        })
    }

    /// The row space of `m` (rows may be dependent).
    pub fn row_space(m: &Matrix) -> Result<Self> {
        let r = m.rref();
        let rows: Vec<usize> = (0..r.rank).collect();
        let g = r.matrix.select_rows(&rows);
        if g.rows() == 0 {
            return Ok(LinearCode {
                field: m.field(),
                standard: StandardForm {
                    matrix: g.clone(),
                    columns: (0..m.cols()).collect(),
                },
                generator: g,
                provenance: None,
            });
        }
        Self::new(g)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn standard_form(&self) -> &StandardForm {
        &self.standard
    }

    pub fn provenance(&self) -> Option<&AgProvenance> {
        self.provenance.as_ref()
    }

    /// `H = (−Aᵀ | I_{n−k})` in the standard-form column order.
    pub fn parity_check(&self) -> Matrix {
        let k = self.k();
        let n = self.n();
        let a = self.standard.redundancy();
        let mut h = Matrix::zeros(self.field, n - k, n);
        for i in 0..n - k {
            for j in 0..k {
                h[(i, j)] = -a[(j, i)];
            }
            h[(i, k + i)] = self.field.one();
        }
        h
    }

    /// Membership test via the systematic form.
    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.n() {
            return false;
        }
        let k = self.k();
        let cols = &self.standard.columns;
        let info: Vec<FieldElement> = cols[..k].iter().map(|&c| v[c]).collect();
        let a = self.standard.redundancy();
        if k == 0 {
            return v.iter().all(|e| e.is_zero());
        }
        let parity = a.left_mul_vec(&info).expect("k entries");
        cols[k..].iter().zip(parity).all(|(&c, p)| v[c] == p)
    }

    /// `m·G` with the stored generator.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.generator.left_mul_vec(message)
    }

    pub fn is_mds(&self, d: usize) -> bool {
        d == self.n() - self.k() + 1
    }
}

/// RREF with pivot columns moved to the front.
pub fn standard_form_of(m: &Matrix) -> Result<StandardForm> {
    let r = m.rref();
    let rows: Vec<usize> = (0..r.rank).collect();
    let reduced = r.matrix.select_rows(&rows);
    let mut columns = r.pivots.clone();
    columns.extend((0..m.cols()).filter(|c| !r.pivots.contains(c)));
    Ok(StandardForm {
        matrix: reduced.select_columns(&columns),
        columns,
    })
}

/// Evaluation code of a given basis at `places`.
pub fn ag_code_from_basis(basis: RRBasis, places: &[Place]) -> Result<LinearCode> {
    if places.is_empty() {
        return Err(Error::InvalidCode("no evaluation places".into()));
    }
    if basis.is_empty() {
        return Err(Error::InvalidCode(format!("L({}) is zero: empty code", basis.divisor())));
    }
    let support = basis.divisor().support();
    if let Some(p) = places.iter().find(|p| support.contains(p)) {
        return Err(Error::InvalidCode(format!("evaluation place {p} lies in supp(D)")));
    }
    crate::curve::PlaceSet::new(places.to_vec())?;
    let ev = basis.evaluation_matrix(places)?;
    let rank = ev.rank();
    let injective = rank == basis.len();
    let mut code = if injective {
        LinearCode::new(ev)?
    } else {
        LinearCode::row_space(&ev)?
    };
    code.provenance = Some(AgProvenance {
        curve: basis.curve(),
        divisor: basis.divisor().clone(),
        places: places.to_vec(),
        basis,
        injective,
    });
    Ok(code)
}

/// `C(D, E)`: evaluations of a basis of `L(D)` at the places of `E`.
pub fn build_ag_code(curve: Curve, divisor: &Divisor, places: &[Place], field: Field) -> Result<LinearCode> {
    let basis = match curve {
        Curve::ProjectiveLine => basis_p1(divisor, field)?,
        Curve::Hyperelliptic { .. } => {
            let support = divisor.support();
            if support.iter().all(|p| p.is_infinity()) {
                basis_one_point(curve, field, divisor.coeff(&Place::Infinity))?
            } else {
                basis_general(divisor, field)?
            }
        }
    };
    ag_code_from_basis(basis, places)
}
