//! Finite groups of curve automorphisms acting on a set of rational places.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::algebra::Field;
use crate::perm::{bfs_closure, orbits_of, Perm, PermGroup};
use crate::{Error, Result, DEFAULT_CLOSURE_CAP};

use super::automorphism::{standard_generators, AutMap, Generator};
use super::place::{Curve, Place, PlaceSet};

/// A closed group of automorphisms with the permutation each element induces
/// on an indexed place set.
#[derive(Clone, Debug)]
pub struct AutGroup {
    curve: Curve,
    field: Field,
    generator_names: Vec<String>,
    generators: Vec<AutMap>,
    elements: Vec<AutMap>,
    words: Vec<Vec<usize>>,
    index: HashMap<AutMap, usize>,
    places: PlaceSet,
    perms: Vec<Perm>,
}

/// JSON summary of a group acting on places.
#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub order: usize,
    pub generators: Vec<String>,
    pub generator_names: Vec<String>,
    pub orbits: Vec<Vec<usize>>,
}

impl AutGroup {
    /// Breadth-first closure of `generators`; each element keeps a shortest
    /// word, read right to left (the last letter acts first).
    pub fn generate(
        curve: Curve,
        field: Field,
        generators: Vec<(String, AutMap)>,
        places: Vec<Place>,
        cap: usize,
    ) -> Result<Self> {
        let places = PlaceSet::new(places)?;
        let (generator_names, generators): (Vec<String>, Vec<AutMap>) = generators.into_iter().unzip();
        for g in &generators {
            if g.curve() != curve || g.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let (elements, words) = bfs_closure(
            AutMap::identity(curve, field),
            &generators,
            |a, b| a.compose(b),
            cap,
            "automorphism group",
        )?;
        Self::assemble(curve, field, generator_names, generators, elements, words, places)
    }

    fn assemble(
        curve: Curve,
        field: Field,
        generator_names: Vec<String>,
        generators: Vec<AutMap>,
        elements: Vec<AutMap>,
        words: Vec<Vec<usize>>,
        places: PlaceSet,
    ) -> Result<Self> {
        let perms = elements
            .iter()
            .map(|g| induced_perm(g, &places))
            .collect::<Result<Vec<_>>>()?;
        let index = elements.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        Ok(AutGroup {
            curve,
            field,
            generator_names,
            generators,
            elements,
            words,
            index,
            places,
            perms,
        })
    }

    /// `⟨γ₁, γ₂(a), γ₃, γ₄⟩` acting on `places`, with the closure order checked
    /// against `2p(p²−1)` over GF(p²) and `p(p²−1)` over GF(p).
    pub fn full(curve: Curve, field: Field, places: Vec<Place>) -> Result<Self> {
        let gens = standard_generators(curve, field)?;
        let g = Self::from_generators(curve, field, &gens, places, DEFAULT_CLOSURE_CAP)?;
        let p = field.characteristic() as usize;
        let expected = if field.degree() == 2 { 2 * p * (p * p - 1) } else { p * (p * p - 1) };
        if g.order() != expected {
            return Err(Error::NotFaithful {
                expected,
                found: g.order(),
            });
        }
        Ok(g)
    }

    /// `⟨γ₁, γ₂(a), γ₃⟩`, the stabilizer of ∞.
    pub fn infinity_stabilizer(curve: Curve, field: Field, places: Vec<Place>) -> Result<Self> {
        let gens = standard_generators(curve, field)?;
        Self::from_generators(curve, field, &gens[..3], places, DEFAULT_CLOSURE_CAP)
    }

    pub fn from_generators(
        curve: Curve,
        field: Field,
        gens: &[Generator],
        places: Vec<Place>,
        cap: usize,
    ) -> Result<Self> {
        let named = gens
            .iter()
            .map(|g| Ok((g.name(), g.to_map(curve, field)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::generate(curve, field, named, places, cap)
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[AutMap] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// Elements in breadth-first order, identity first.
    pub fn elements(&self) -> &[AutMap] {
        &self.elements
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// Word of element `i` spelled with generator names.
    pub fn word_string(&self, i: usize) -> String {
        if self.words[i].is_empty() {
            return "id".into();
        }
        self.words[i]
            .iter()
            .map(|&g| self.generator_names[g].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn places(&self) -> &PlaceSet {
        &self.places
    }

    /// Permutation of the place set induced by element `i`.
    pub fn perm(&self, i: usize) -> &Perm {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn position(&self, g: &AutMap) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &AutMap) -> bool {
        self.index.contains_key(g)
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.generators
            .iter()
            .map(|g| induced_perm(g, &self.places).expect("checked at construction"))
            .collect()
    }

    /// Orbits on the place set (indices), ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.places.len(), &self.generator_perms())
    }

    pub fn orbit_places(&self) -> Vec<Vec<Place>> {
        self.orbits()
            .into_iter()
            .map(|o| o.into_iter().map(|i| self.places.get(i)).collect())
            .collect()
    }

    /// Subgroup fixing `place`.
    pub fn stabilizer(&self, place: &Place) -> Result<AutGroup> {
        let keep: Vec<usize> = (0..self.order())
            .filter(|&i| self.elements[i].apply(place) == *place)
            .collect();
        self.subgroup(&keep)
    }

    /// Subgroup fixing every place of `set`.
    pub fn pointwise_stabilizer(&self, set: &[Place]) -> Result<AutGroup> {
        let keep: Vec<usize> = (0..self.order())
            .filter(|&i| set.iter().all(|p| self.elements[i].apply(p) == *p))
            .collect();
        self.subgroup(&keep)
    }

    /// Subgroup on a closed subset of elements. A small generating set is
    /// picked greedily in breadth-first order (named by its words in `self`)
    /// and the subgroup is regenerated from it.
    fn subgroup(&self, keep: &[usize]) -> Result<AutGroup> {
        let identity = AutMap::identity(self.curve, self.field);
        let mut gens: Vec<(String, AutMap)> = Vec::new();
        let mut span: HashSet<AutMap> = [identity].into_iter().collect();
        for &i in keep {
            let g = self.elements[i];
            if span.contains(&g) {
                continue;
            }
            gens.push((self.word_string(i), g));
            let maps: Vec<AutMap> = gens.iter().map(|(_, m)| *m).collect();
            let (closure, _) = bfs_closure(identity, &maps, |a, b| a.compose(b), keep.len() + 1, "subgroup")?;
            span = closure.into_iter().collect();
        }
        if span.len() != keep.len() {
            return Err(Error::Internal("element subset is not a subgroup".into()));
        }
        Self::generate(
            self.curve,
            self.field,
            gens,
            self.places.places().to_vec(),
            keep.len() + 1,
        )
    }

    /// The same elements acting on another place set.
    pub fn act_on(&self, places: Vec<Place>) -> Result<AutGroup> {
        Self::assemble(
            self.curve,
            self.field,
            self.generator_names.clone(),
            self.generators.clone(),
            self.elements.clone(),
            self.words.clone(),
            PlaceSet::new(places)?,
        )
    }

    /// Image of the group in Sym(place set), with duplicates removed.
    pub fn image(&self) -> PermGroup {
        let mut seen = HashSet::new();
        let elements: Vec<Perm> = self
            .perms
            .iter()
            .filter(|p| seen.insert((*p).clone()))
            .cloned()
            .collect();
        PermGroup::from_elements(self.places.len(), self.generator_perms(), elements)
    }

    /// `|G| > |X(F)|` where `X(F)` is the place set.
    pub fn is_large(&self) -> bool {
        self.order() > self.places.len()
    }

    /// Every place has a nontrivial stabilizer.
    pub fn check_all_ramified(&self) -> bool {
        let n = self.places.len();
        let mut ramified = vec![false; n];
        for (g, perm) in self.elements.iter().zip(&self.perms) {
            if g.is_identity() {
                continue;
            }
            for (i, &j) in perm.images().iter().enumerate() {
                if i == j {
                    ramified[i] = true;
                }
            }
        }
        ramified.into_iter().all(|r| r)
    }

    pub fn report(&self) -> GroupReport {
        GroupReport {
            order: self.order(),
            generators: self.generator_perms().iter().map(|p| p.to_string()).collect(),
            generator_names: self.generator_names.clone(),
            orbits: self
                .orbits()
                .into_iter()
                .map(|o| o.into_iter().map(|i| i + 1).collect())
                .collect(),
        }
    }
}

/// Permutation of `places` induced by `g`; errors if some image is missing.
pub fn induced_perm(g: &AutMap, places: &PlaceSet) -> Result<Perm> {
    let images = places
        .places()
        .iter()
        .map(|p| {
            let q = g.apply(p);
            places
                .index_of(&q)
                .ok_or_else(|| Error::NotAPermutation(format!("{g} sends {p} to {q}, outside the set")))
        })
        .collect::<Result<Vec<_>>>()?;
    Perm::from_images(images)
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::algebra::ElementOrder;
    use crate::curve::place::enumerate_places;

    fn setup(p: u32, k: u8) -> (Curve, Field, Vec<Place>) {
        let c = Curve::hyperelliptic(p).unwrap();
        let f = Field::new(p, k).unwrap();
        let pl = enumerate_places(c, f, ElementOrder::Lexicographic).unwrap();
        (c, f, pl)
    }

    #[test]
    fn single_involution() {
        let (c, f, pl) = setup(7, 2);
        let g = AutGroup::from_generators(c, f, &[Generator::G1], pl, 10).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn full_group_orders() {
        for p in [5u32, 7, 11] {
            let (c, f, pl) = setup(p, 2);
            let g = AutGroup::full(c, f, pl).unwrap();
            let p = p as usize;
            assert_eq!(g.order(), 2 * p * (p * p - 1));
            let (c, f, pl) = setup(p as u32, 1);
            let g = AutGroup::full(c, f, pl).unwrap();
            assert_eq!(g.order(), p * (p * p - 1));
            assert_eq!(g.image().order(), p * (p * p - 1) / 2);
        }
    }

    #[test]
    fn orbits_and_stabilizers_gf49() {
        let (c, f, pl) = setup(7, 2);
        let g = AutGroup::full(c, f, pl).unwrap();
        let orbits = g.orbits();
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![8, 84]);
        for o in &orbits {
            let st = g.stabilizer(&g.places().get(o[0])).unwrap();
            assert_eq!(st.order() * o.len(), 672);
        }
        assert_eq!(g.stabilizer(&Place::Infinity).unwrap().order(), 84);
        assert!(g.is_large());
        assert!(g.check_all_ramified());
    }

    #[test]
    fn gf7_example_group() {
        let (c, f, pl) = setup(7, 1);
        let g = AutGroup::full(c, f, pl).unwrap();
        assert_eq!(g.order(), 336);
        assert!(g.is_large());
        assert!(g.check_all_ramified());
        let st = g.stabilizer(&Place::Infinity).unwrap();
        assert_eq!(st.order(), 42);
    }

    #[test]
    fn p5_is_transitive() {
        let (c, f, pl) = setup(5, 2);
        let g = AutGroup::full(c, f, pl).unwrap();
        assert_eq!(g.orbits().len(), 1);
        assert_eq!(g.stabilizer(&Place::Infinity).unwrap().order(), 40);
    }

    #[test]
    fn trivial_group_not_large() {
        let (c, f, pl) = setup(7, 1);
        let g = AutGroup::generate(c, f, vec![], pl, 10).unwrap();
        assert_eq!(g.order(), 1);
        assert!(!g.is_large());
        assert!(!g.check_all_ramified());
    }

    #[test]
    fn words_reproduce_elements() {
        let (c, f, pl) = setup(5, 2);
        let g = AutGroup::full(c, f, pl).unwrap();
        for (i, e) in g.elements().iter().enumerate() {
            let prod = g.words()[i]
                .iter()
                .fold(AutMap::identity(c, f), |acc, &j| acc.compose(&g.generators()[j]));
            assert_eq!(&prod, e);
            // apply(w, apply(w⁻¹, P)) = P
            for p in g.places().places() {
                assert_eq!(e.apply(&e.inverse().apply(p)), *p);
            }
        }
    }

    #[test]
    fn g2_is_multiplicative() {
        let (c, f, pl) = setup(7, 2);
        let a = f.primitive_root(12).unwrap();
        let ps = PlaceSet::new(pl).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                let gi = Generator::G2(a.pow(i)).to_map(c, f).unwrap();
                let gj = Generator::G2(a.pow(j)).to_map(c, f).unwrap();
                let gij = Generator::G2(a.pow(i + j)).to_map(c, f).unwrap();
                assert_eq!(
                    induced_perm(&gi, &ps).unwrap().compose(&induced_perm(&gj, &ps).unwrap()),
                    induced_perm(&gij, &ps).unwrap()
                );
            }
        }
    }
}
