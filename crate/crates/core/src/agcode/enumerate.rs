//! Exhaustive codeword enumeration: weight distribution, minimum distance,
//! orbit representatives under a group of coordinate permutations.
//!
//! Codewords are enumerated additively: a GF(p^k) code is the GF(p)-span of
//! its generator rows and their `u`-multiples, so one odometer over GF(p)
//! digits visits every codeword exactly once with a single vector addition
//! per step. The top digits are split across rayon workers.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::code::LinearCode;
use crate::algebra::{Field, FieldElement};
use crate::perm::Perm;
use crate::{codeword_cap, Error, Result};

/// GF(p)-spanning vectors of a code, flattened to `n·deg` residues.
#[derive(Debug, Clone)]
pub(crate) struct AdditiveSpan {
    p: u32,
    deg: usize,
    n: usize,
    vecs: Vec<Vec<u32>>,
}

impl AdditiveSpan {
    pub(crate) fn new(code: &LinearCode) -> Self {
        let field = code.field();
        let deg = field.degree() as usize;
        let mut vecs = Vec::new();
        for i in 0..code.k() {
            let row = code.generator().row(i);
            vecs.push(flatten(row, deg));
            if let Some(u) = field.u() {
                let urow: Vec<FieldElement> = row.iter().map(|&a| a * u).collect();
                vecs.push(flatten(&urow, deg));
            }
        }
        AdditiveSpan {
            p: field.characteristic(),
            deg,
            n: code.n(),
            vecs,
        }
    }

    fn count(&self) -> u128 {
        (self.p as u128).pow(self.vecs.len() as u32)
    }

    fn weight(&self, v: &[u32]) -> usize {
        if self.deg == 1 {
            v.iter().filter(|&&c| c != 0).count()
        } else {
            v.chunks_exact(self.deg).filter(|c| c.iter().any(|&x| x != 0)).count()
        }
    }

    fn add_into(&self, acc: &mut [u32], v: &[u32], times: u32) {
        let p = self.p as u64;
        for (a, &b) in acc.iter_mut().zip(v) {
            *a = ((*a as u64 + b as u64 * times as u64) % p) as u32;
        }
    }

    /// Number of leading digits fixed per parallel task.
    fn split(&self) -> usize {
        let mut t = 0;
        let mut tasks = 1u64;
        while t < self.vecs.len() && tasks < 256 {
            tasks *= self.p as u64;
            t += 1;
        }
        t
    }

    /// Visits every codeword whose top `t` digits are given by `task`.
    fn visit_task<F: FnMut(&[u32])>(&self, t: usize, task: u64, mut f: F) {
        let p = self.p;
        let m = self.vecs.len();
        let mut cw = vec![0u32; self.n * self.deg];
        let mut rest = task;
        for i in 0..t {
            let digit = (rest % p as u64) as u32;
            rest /= p as u64;
            self.add_into(&mut cw, &self.vecs[m - 1 - i], digit);
        }
        let free = m - t;
        let mut digits = vec![0u32; free];
        loop {
            f(&cw);
            let mut i = 0;
            loop {
                if i == free {
                    return;
                }
                let v = &self.vecs[i];
                for (a, &b) in cw.iter_mut().zip(v) {
                    let s = *a + b;
                    *a = if s >= p { s - p } else { s };
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                // p additions of the same vector return to the start
                digits[i] = 0;
                i += 1;
            }
        }
    }

    fn tasks(&self) -> (usize, u64) {
        let t = self.split();
        (t, (self.p as u64).pow(t as u32))
    }

    fn unflatten(&self, field: Field, v: &[u32]) -> Vec<FieldElement> {
        if self.deg == 1 {
            v.iter().map(|&c| field.from_int(c as i64)).collect()
        } else {
            v.chunks_exact(2)
                .map(|c| field.from_coeffs(c[0] as i64, c[1] as i64))
                .collect()
        }
    }
}

fn flatten(row: &[FieldElement], deg: usize) -> Vec<u32> {
    row.iter().flat_map(|e| e.coeffs()[..deg].to_vec()).collect()
}

fn check_cap(code: &LinearCode, span: &AdditiveSpan, cap: u64) -> Result<()> {
    if span.count() > cap as u128 {
        return Err(Error::CapExceeded {
            what: format!("codeword enumeration of a [{}, {}] code", code.n(), code.k()),
            cap,
        });
    }
    Ok(())
}

/// Weight enumerator `A_0..A_n`, enumerating all `q^k` codewords.
pub fn weight_distribution(code: &LinearCode) -> Result<Vec<u64>> {
    weight_distribution_capped(code, codeword_cap())
}

pub fn weight_distribution_capped(code: &LinearCode, cap: u64) -> Result<Vec<u64>> {
    let span = AdditiveSpan::new(code);
    check_cap(code, &span, cap)?;
    let n = code.n();
    let (t, tasks) = span.tasks();
    let dist = (0..tasks)
        .into_par_iter()
        .map(|task| {
            let mut hist = vec![0u64; n + 1];
            span.visit_task(t, task, |cw| hist[span.weight(cw)] += 1);
            hist
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(dist)
}

/// Minimum nonzero weight of the code.
pub fn min_distance(code: &LinearCode) -> Result<usize> {
    if code.k() == 0 {
        return Err(Error::InvalidCode("minimum distance of the zero code is undefined".into()));
    }
    let dist = weight_distribution(code)?;
    Ok(min_distance_from(&dist))
}

pub fn min_distance_from(dist: &[u64]) -> usize {
    dist.iter()
        .enumerate()
        .skip(1)
        .find(|(_, &c)| c > 0)
        .map(|(w, _)| w)
        .unwrap_or(0)
}

/// Calls `f` on every codeword (sequential, enumeration order).
pub fn for_each_codeword<F: FnMut(&[FieldElement])>(code: &LinearCode, mut f: F) -> Result<()> {
    let span = AdditiveSpan::new(code);
    check_cap(code, &span, codeword_cap())?;
    let field = code.field();
    let (t, tasks) = span.tasks();
    for task in 0..tasks {
        span.visit_task(t, task, |cw| f(&span.unflatten(field, cw)));
    }
    Ok(())
}

/// All codewords, sorted by coefficient index.
pub fn codewords(code: &LinearCode) -> Result<Vec<Vec<FieldElement>>> {
    let mut out = Vec::new();
    for_each_codeword(code, |c| out.push(c.to_vec()))?;
    out.sort_by_key(|c| key(c));
    Ok(out)
}

fn key(c: &[FieldElement]) -> Vec<u64> {
    c.iter().map(|e| e.index()).collect()
}

/// One orbit of codewords under a permutation group.
#[derive(Debug, Clone, Serialize)]
pub struct CodewordOrbit {
    /// Lexicographically least member (by element index).
    pub representative: Vec<u64>,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompressedCode {
    pub total: u64,
    pub orbits: Vec<CodewordOrbit>,
}

impl CompressedCode {
    pub fn orbit_sizes_sum(&self) -> u64 {
        self.orbits.iter().map(|o| o.size as u64).sum()
    }
}

/// Orbit representatives of the codewords under `⟨generators⟩`.
pub fn compress_code(code: &LinearCode, generators: &[Perm]) -> Result<CompressedCode> {
    for g in generators {
        if g.degree() != code.n() {
            return Err(Error::Dimension("permutation degree differs from code length".into()));
        }
    }
    let words = codewords(code)?;
    let index: HashMap<Vec<u64>, usize> = words.iter().enumerate().map(|(i, c)| (key(c), i)).collect();
    let mut seen = vec![false; words.len()];
    let mut orbits = Vec::new();
    for start in 0..words.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            for g in generators {
                let image = key(&g.permute(&words[i]));
                let j = *index.get(&image).ok_or_else(|| {
                    Error::NotAnAutomorphism(format!("{g} does not preserve the code"))
                })?;
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        // words are sorted, so the first unseen word of an orbit is its least member
        orbits.push(CodewordOrbit {
            representative: key(&words[start]),
            size,
        });
    }
    Ok(CompressedCode {
        total: words.len() as u64,
        orbits,
    })
}
