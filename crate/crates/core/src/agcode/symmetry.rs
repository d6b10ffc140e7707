//! Coordinate permutations preserving a code: the map `φ: G → Aut(C)` induced
//! by curve automorphisms, its kernel, and brute-force permutation groups of
//! short codes.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::code::LinearCode;
use crate::curve::AutGroup;
use crate::perm::{Perm, PermGroup};
use crate::rrspace::separates_points;
use crate::{Error, Result};

/// Longest code accepted by [`full_perm_group`].
pub const FULL_PERM_GROUP_MAX_N: usize = 8;

/// Whether permuting coordinates by `sigma` maps the code onto itself.
pub fn is_code_automorphism(code: &LinearCode, sigma: &Perm) -> bool {
    sigma.degree() == code.n()
        && (0..code.k()).all(|i| code.contains(&sigma.permute(code.generator().row(i))))
}

/// A coordinate permutation certified to preserve a code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodePermutation(Perm);

impl CodePermutation {
    pub fn new(code: &LinearCode, sigma: Perm) -> Result<Self> {
        if !is_code_automorphism(code, &sigma) {
            return Err(Error::NotAnAutomorphism(format!("{sigma} does not preserve the code")));
        }
        Ok(CodePermutation(sigma))
    }

    pub fn perm(&self) -> &Perm {
        &self.0
    }

    pub fn into_perm(self) -> Perm {
        self.0
    }
}

/// The permutations `σ_g` for every element of a group, with the checks
/// performed on them.
#[derive(Debug, Clone)]
pub struct PhiMap {
    /// The group acting on the evaluation places, in the order of `E`.
    pub group: AutGroup,
    /// `σ_g` for each group element (parallel to `group.elements()`).
    pub perms: Vec<CodePermutation>,
    /// `σ_{gh} = σ_g σ_h` on every checked pair.
    pub homomorphism: bool,
    /// Number of pairs `(g, h)` the homomorphism check covered.
    pub pairs_checked: usize,
    /// `eval(f ∘ g⁻¹) = σ_g(eval f)` for generators `g` and basis functions `f`.
    pub equivariant: bool,
}

/// Serialisable summary of a [`PhiMap`].
#[derive(Debug, Clone, Serialize)]
pub struct PhiReport {
    pub group_order: usize,
    pub image_order: usize,
    pub generators: Vec<(String, String)>,
    pub homomorphism: bool,
    pub pairs_checked: usize,
    pub equivariant: bool,
}

impl PhiMap {
    /// `σ_g` for the element at `index` of the group.
    pub fn perm(&self, index: usize) -> &Perm {
        self.perms[index].perm()
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.group.generator_perms()
    }

    /// Distinct images, as a permutation group.
    pub fn image(&self) -> PermGroup {
        self.group.image()
    }

    pub fn report(&self) -> PhiReport {
        PhiReport {
            group_order: self.group.order(),
            image_order: self.image().order(),
            generators: self
                .group
                .generator_names()
                .iter()
                .cloned()
                .zip(self.generator_perms().iter().map(|p| p.to_string()))
                .collect(),
            homomorphism: self.homomorphism,
            pairs_checked: self.pairs_checked,
            equivariant: self.equivariant,
        }
    }
}

/// All pairs are checked up to this many; beyond it only generator × element.
const ALL_PAIRS_LIMIT: usize = 250_000;

/// `σ_g`: position `i` goes to the index of `g(P_i)` in `E`, so a codeword
/// `(f(P_1), …, f(P_n))` is sent to `(f(g⁻¹P_1), …, f(g⁻¹P_n))`.
pub fn phi_map(group: &AutGroup, code: &LinearCode) -> Result<PhiMap> {
    let prov = code
        .provenance()
        .ok_or_else(|| Error::InvalidCode("φ needs an evaluation code".into()))?;
    for (g, name) in group.generators().iter().zip(group.generator_names()) {
        if prov.divisor.apply(g) != prov.divisor {
            return Err(Error::NotStable(name.clone()));
        }
    }
    let acting = group.act_on(prov.places.clone())?;
    let perms = acting
        .perms()
        .par_iter()
        .map(|s| CodePermutation::new(code, s.clone()))
        .collect::<Result<Vec<_>>>()?;

    let order = acting.order();
    let elements = acting.elements();
    let left: Vec<usize> = if order * order <= ALL_PAIRS_LIMIT {
        (0..order).collect()
    } else {
        acting
            .generators()
            .iter()
            .map(|g| acting.position(g).expect("generator in group"))
            .collect()
    };
    let pairs_checked = left.len() * order;
    let homomorphism = left.par_iter().all(|&i| {
        (0..order).all(|j| {
            let gh = elements[i].compose(&elements[j]);
            match acting.position(&gh) {
                Some(k) => perms[k].perm() == &perms[i].perm().compose(perms[j].perm()),
                None => false,
            }
        })
    });

    let mut equivariant = true;
    'outer: for g in acting.generators() {
        let sigma = acting.perm(acting.position(g).expect("generator in group"));
        let ginv = g.inverse();
        for f in prov.basis.functions() {
            let before = prov
                .places
                .iter()
                .map(|p| f.evaluate(p))
                .collect::<Result<Vec<_>>>()?;
            let moved = f.compose(&ginv)?;
            let after = prov
                .places
                .iter()
                .map(|p| moved.evaluate(p))
                .collect::<Result<Vec<_>>>()?;
            if sigma.permute(&before) != after {
                equivariant = false;
                break 'outer;
            }
        }
    }

    Ok(PhiMap {
        group: acting,
        perms,
        homomorphism,
        pairs_checked,
        equivariant,
    })
}

/// `Ker(φ)` together with the injectivity criterion.
#[derive(Debug, Clone)]
pub struct PhiKernel {
    pub kernel: AutGroup,
    pub injective: bool,
    /// `n > 2g + 2`.
    pub long_enough: bool,
    /// The basis of `L(D)` takes distinct value vectors at the places of `E`.
    pub separates: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub kernel_order: usize,
    pub injective: bool,
    pub long_enough: bool,
    pub separates: bool,
}

impl PhiKernel {
    /// Both hypotheses of the injectivity criterion hold.
    pub fn criterion_applies(&self) -> bool {
        self.long_enough && self.separates
    }

    pub fn report(&self) -> KernelReport {
        KernelReport {
            kernel_order: self.kernel.order(),
            injective: self.injective,
            long_enough: self.long_enough,
            separates: self.separates,
        }
    }
}

/// Elements of `group` fixing every evaluation place.
pub fn phi_kernel(group: &AutGroup, code: &LinearCode) -> Result<PhiKernel> {
    let prov = code
        .provenance()
        .ok_or_else(|| Error::InvalidCode("φ needs an evaluation code".into()))?;
    let kernel = group.pointwise_stabilizer(&prov.places)?;
    let genus = prov.curve.genus() as usize;
    let (separates, _) = separates_points(&prov.basis, &prov.places)?;
    Ok(PhiKernel {
        injective: kernel.order() == 1,
        long_enough: code.n() > 2 * genus + 2,
        separates,
        kernel,
    })
}

/// Every coordinate permutation preserving the code, by scanning all `n!`.
pub fn full_perm_group(code: &LinearCode) -> Result<PermGroup> {
    let n = code.n();
    if n > FULL_PERM_GROUP_MAX_N {
        return Err(Error::Dimension(format!(
            "full_perm_group scans n! permutations; n = {n} exceeds {FULL_PERM_GROUP_MAX_N}"
        )));
    }
    let candidates: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let kept: Vec<Perm> = candidates
        .into_par_iter()
        .map(|images| Perm::from_images(images).expect("permutation"))
        .filter(|s| is_code_automorphism(code, s))
        .collect();
    PermGroup::from_closed(n, &kept)
}
