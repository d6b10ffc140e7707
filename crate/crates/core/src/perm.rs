//! Permutations of `{0, …, n−1}` and groups generated by them.
//!
//! Composition follows function notation: `a.compose(&b)` applies `b` first.
//! Cycle notation is 1-based, as in `(1,2,7)(3,4)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)` or `()`.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let bad = || Error::Parse(format!("bad cycle notation `{s}`"));
        let mut rest = s.trim();
        let mut seen = vec![false; n];
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let cycle: Vec<usize> = if body[..close].trim().is_empty() {
                Vec::new()
            } else {
                body[..close]
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<_>>()?
            };
            for &c in &cycle {
                if c == 0 || c > n || seen[c - 1] {
                    return Err(bad());
                }
                seen[c - 1] = true;
            }
            for (i, &c) in cycle.iter().enumerate() {
                images[c - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "permutation degrees differ");
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Perm::identity(self.degree()), |acc, _| acc.compose(&base))
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(|c| c.len())
            .fold(1, |a, b| a / gcd(a, b) * b)
    }

    /// Moves coordinates: entry `i` of `v` lands in position `σ(i)`.
    pub fn permute<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.degree(), "vector length differs from permutation degree");
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }

    /// Image of a set of points.
    pub fn image_of(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| self.0[i]).collect();
        out.sort_unstable();
        out
    }

    /// Non-trivial cycles (0-based), each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Extends to a permutation of `{0..n}` fixing the new points.
    pub fn extend(&self, n: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.degree()..n);
        Perm(v)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let c: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", c.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Breadth-first closure of `gens` under right multiplication by generators.
///
/// Returns the elements in discovery order together with a shortest word for
/// each: the element with word `[w₀, …, w_k]` is `g_{w₀}·…·g_{w_k}`.
pub fn bfs_closure<T, F>(
    identity: T,
    gens: &[T],
    mul: F,
    cap: usize,
    what: &str,
) -> Result<(Vec<T>, Vec<Vec<usize>>)>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let h = mul(&elements[i], g);
            if index.contains_key(&h) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded {
                    what: format!("{what} closure"),
                    cap: cap as u64,
                });
            }
            let mut w = words[i].clone();
            w.push(gi);
            index.insert(h.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(h);
            words.push(w);
        }
    }
    Ok((elements, words))
}

/// A finite permutation group stored as its full element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    words: Vec<Vec<usize>>,
    index: HashMap<Perm, usize>,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Dimension("generator degree mismatch".into()));
        }
        let (elements, words) =
            bfs_closure(Perm::identity(degree), &generators, |a, b| a.compose(b), cap, "permutation group")?;
        Ok(Self::from_parts(degree, generators, elements, words))
    }

    /// Wraps an element list already known to be closed.
    pub fn from_elements(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        let words = vec![Vec::new(); elements.len()];
        Self::from_parts(degree, generators, elements, words)
    }

    /// Group on an element set already known to be closed; generators are
    /// picked greedily in the given order and the group is regenerated from
    /// them (so `words` are meaningful).
    pub fn from_closed(degree: usize, elements: &[Perm]) -> Result<Self> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut span: HashSet<Perm> = [Perm::identity(degree)].into_iter().collect();
        for g in elements {
            if span.contains(g) {
                continue;
            }
            gens.push(g.clone());
            let (closure, _) =
                bfs_closure(Perm::identity(degree), &gens, |a, b| a.compose(b), elements.len() + 1, "subgroup")?;
            span = closure.into_iter().collect();
        }
        if span.len() != elements.len() {
            return Err(Error::Internal("element set is not closed under composition".into()));
        }
        Self::generate(degree, gens, elements.len() + 1)
    }

    fn from_parts(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>, words: Vec<Vec<usize>>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PermGroup {
            degree,
            generators,
            elements,
            words,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Elements in breadth-first (word-length) order, identity first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    /// Shortest generator word of each element (parallel to `elements`).
    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn position(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> Vec<Perm> {
        let gens: Vec<&Perm> = if self.generators.is_empty() {
            self.elements.iter().collect()
        } else {
            self.generators.iter().collect()
        };
        self.elements
            .iter()
            .filter(|z| gens.iter().all(|g| z.compose(g) == g.compose(z)))
            .cloned()
            .collect()
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn stabilizer(&self, point: usize) -> Vec<Perm> {
        self.elements
            .iter()
            .filter(|g| g.apply(point) == point)
            .cloned()
            .collect()
    }
}

/// Orbits of the group generated by `gens` on `{0..n}`, each sorted, ordered
/// by smallest element.
pub fn orbits_of(n: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut orbit = vec![s];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod test {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_round_trip() {
        let p = Perm::parse_cycles("(2,7)(3,6)(4,5)", 7).unwrap();
        assert_eq!(p.to_string(), "(2,7)(3,6)(4,5)");
        assert_eq!(p.apply(1), 6);
        assert_eq!(Perm::parse_cycles("()", 3).unwrap(), Perm::identity(3));
        assert!(Perm::parse_cycles("(1,1)", 3).is_err());
        assert!(Perm::parse_cycles("(1,4)", 3).is_err());
        assert!(Perm::parse_cycles("1,2", 3).is_err());
    }

    #[test]
    fn composition_applies_right_first() {
        let a = Perm::parse_cycles("(1,2)", 3).unwrap();
        let b = Perm::parse_cycles("(2,3)", 3).unwrap();
        // b sends 1→1, then a sends 1→2
        assert_eq!(a.compose(&b).apply(0), 1);
        assert_eq!(a.compose(&b).to_string(), "(1,2,3)");
    }

    #[test]
    fn permute_moves_entries() {
        let s = Perm::parse_cycles("(1,2,3)", 3).unwrap();
        assert_eq!(s.permute(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
    }

    #[test]
    fn small_groups() {
        let g = PermGroup::generate(2, vec![Perm::parse_cycles("(1,2)", 2).unwrap()], 100).unwrap();
        assert_eq!(g.order(), 2);
        let s3 = PermGroup::generate(
            3,
            vec![Perm::parse_cycles("(1,2)", 3).unwrap(), Perm::parse_cycles("(1,2,3)", 3).unwrap()],
            100,
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.center().len(), 1);
        assert_eq!(s3.orbits(), vec![vec![0, 1, 2]]);
        assert_eq!(s3.stabilizer(0).len(), 2);
        let err = PermGroup::generate(3, s3.generators().to_vec(), 4).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn words_evaluate_to_elements() {
        let gens = vec![
            Perm::parse_cycles("(1,2,3,4,5)", 5).unwrap(),
            Perm::parse_cycles("(1,2)", 5).unwrap(),
        ];
        let g = PermGroup::generate(5, gens.clone(), 1000).unwrap();
        assert_eq!(g.order(), 120);
        for (e, w) in g.elements().iter().zip(g.words()) {
            let prod = w.iter().fold(Perm::identity(5), |acc, &i| acc.compose(&gens[i]));
            assert_eq!(&prod, e);
        }
    }

    proptest! {
        #[test]
        fn inverse_and_order(v in Just((0..9).collect::<Vec<usize>>()).prop_shuffle()) {
            let p = Perm::from_images(v).unwrap();
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.pow(p.order() as i64).is_identity());
            prop_assert_eq!(Perm::parse_cycles(&p.to_string(), 9).unwrap(), p);
        }
    }
}
