//! Systematic encoding, syndrome tests and permutation decoding with PD-sets.
//!
//! Everything here works in the standard-form frame of a code: information
//! positions are `0..k` and the generator is `(I_k | A)`. Permutations given
//! in the original coordinates are moved into that frame with
//! [`SystematicCode::to_frame`].

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agcode::{for_each_codeword, LinearCode};
use crate::algebra::{Field, FieldElement, Matrix};
use crate::perm::Perm;
use crate::{Error, Result};

/// `G = (I_k | A)`, `H = (−Aᵀ | I_{n−k})` and `t = ⌊(d−1)/2⌋`.
#[derive(Debug, Clone)]
pub struct SystematicCode {
    field: Field,
    g: Matrix,
    h: Matrix,
    columns: Vec<usize>,
    d: usize,
    t: usize,
}

impl SystematicCode {
    /// Standard form of `code`, whose minimum distance is `d`.
    pub fn new(code: &LinearCode, d: usize) -> Result<Self> {
        if code.k() == 0 {
            return Err(Error::InvalidCode("zero code has no information positions".into()));
        }
        let sf = code.standard_form();
        let sys = SystematicCode {
            field: code.field(),
            g: sf.matrix.clone(),
            h: code.parity_check(),
            columns: sf.columns.clone(),
            d,
            t: d.saturating_sub(1) / 2,
        };
        if !sys.g.mul(&sys.h.transpose())?.is_zero() {
            return Err(Error::Internal("G·Hᵀ ≠ 0".into()));
        }
        Ok(sys)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn generator(&self) -> &Matrix {
        &self.g
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.h
    }

    /// Column permutation from the original code (frame column `j` is
    /// original column `columns[j]`).
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// `σ` on original coordinates, rewritten on frame coordinates.
    pub fn to_frame(&self, sigma: &Perm) -> Perm {
        let mut position = vec![0; self.columns.len()];
        for (j, &c) in self.columns.iter().enumerate() {
            position[c] = j;
        }
        let images = self.columns.iter().map(|&c| position[sigma.apply(c)]).collect();
        Perm::from_images(images).expect("conjugate of a permutation")
    }

    /// Original-coordinate vector rewritten in the frame.
    pub fn vector_to_frame(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.columns.iter().map(|&c| v[c]).collect()
    }

    pub fn vector_from_frame(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![self.field.zero(); v.len()];
        for (j, &c) in self.columns.iter().enumerate() {
            out[c] = v[j];
        }
        out
    }

    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.k() {
            return Err(Error::Dimension(format!("message length {} ≠ k = {}", message.len(), self.k())));
        }
        self.g.left_mul_vec(message)
    }

    pub fn extract_info(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.n() {
            return Err(Error::Dimension(format!("vector length {} ≠ n = {}", v.len(), self.n())));
        }
        Ok(v[..self.k()].to_vec())
    }

    pub fn syndrome(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.h.mul_vec(v)
    }

    pub fn syndrome_weight(&self, v: &[FieldElement]) -> Result<usize> {
        Ok(weight(&self.syndrome(v)?))
    }

    /// `wt(H·v) ≤ t`.
    pub fn syndrome_ok(&self, v: &[FieldElement]) -> Result<bool> {
        Ok(self.syndrome_weight(v)? <= self.t)
    }
}

pub fn weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}

fn distance(a: &[FieldElement], b: &[FieldElement]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Permutations (in the standard-form frame) with a label for each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdSet {
    pub perms: Vec<Perm>,
    pub words: Vec<String>,
    /// Error weight the set is meant to handle.
    pub weight: usize,
}

impl PdSet {
    pub fn new(labelled: Vec<(String, Perm)>, weight: usize) -> Self {
        let (words, perms) = labelled.into_iter().unzip();
        PdSet { perms, words, weight }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }
}

/// `S ∪ S·S` with duplicates removed, in order of first appearance.
pub fn union_with_products(set: &[(String, Perm)]) -> Vec<(String, Perm)> {
    fn push(name: String, p: Perm, out: &mut Vec<(String, Perm)>) {
        if !out.iter().any(|(_, q)| *q == p) {
            out.push((name, p));
        }
    }
    let mut out: Vec<(String, Perm)> = Vec::new();
    for (name, p) in set {
        push(name.clone(), p.clone(), &mut out);
    }
    for (a, pa) in set {
        for (b, pb) in set {
            push(format!("{a}·{b}"), pa.compose(pb), &mut out);
        }
    }
    out
}

/// Result of [`pd_decode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// The decoded codeword, or `None` if no permutation passed the test.
    pub codeword: Option<Vec<FieldElement>>,
    /// Permutations tried, counting the identity.
    pub tried: usize,
    /// Index into the PD-set of the permutation that succeeded (`None` for the
    /// identity or on failure).
    pub used: Option<usize>,
    /// The result differs from the input in more than `t` positions.
    pub beyond_guarantee: bool,
}

/// Permutation decoding of `v` (frame coordinates): try the identity, then
/// each `p ∈ S` in order; the first with `wt(H·pv) ≤ t` gives
/// `p⁻¹·encode(extract_info(pv))`.
pub fn pd_decode(sys: &SystematicCode, v: &[FieldElement], set: &PdSet) -> Result<DecodeOutcome> {
    if v.len() != sys.n() {
        return Err(Error::Dimension(format!("vector length {} ≠ n = {}", v.len(), sys.n())));
    }
    let identity = Perm::identity(sys.n());
    let candidates = std::iter::once((None, &identity)).chain(set.perms.iter().enumerate().map(|(i, p)| (Some(i), p)));
    for (tried, (used, p)) in candidates.enumerate() {
        let pv = p.permute(v);
        if sys.syndrome_ok(&pv)? {
            let cp = sys.encode(&sys.extract_info(&pv)?)?;
            let c = p.inverse().permute(&cp);
            return Ok(DecodeOutcome {
                beyond_guarantee: distance(&c, v) > sys.t(),
                codeword: Some(c),
                tried: tried + 1,
                used,
            });
        }
    }
    Ok(DecodeOutcome {
        codeword: None,
        tried: set.len() + 1,
        used: None,
        beyond_guarantee: false,
    })
}

/// Outcome of [`verify_pd_set`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdVerification {
    pub ok: bool,
    pub supports_checked: u64,
    /// First support (0-based positions) no permutation moves off `0..k`.
    pub counterexample: Option<Vec<usize>>,
}

fn moves_out(p: &Perm, support: &[usize], k: usize) -> bool {
    support.iter().all(|&i| p.apply(i) >= k)
}

const CHUNK: usize = 1 << 16;

/// First item of `items` (in iteration order) satisfying `pred`, scanning
/// fixed-size chunks in parallel.
fn find_first_chunked<I, F>(items: I, pred: F) -> (u64, Option<Vec<usize>>)
where
    I: Iterator<Item = Vec<usize>>,
    F: Fn(&[usize]) -> bool + Sync,
{
    let mut count = 0u64;
    let mut items = items.peekable();
    while items.peek().is_some() {
        let chunk: Vec<Vec<usize>> = items.by_ref().take(CHUNK).collect();
        count += chunk.len() as u64;
        if let Some(s) = chunk.par_iter().find_first(|s| pred(s)) {
            return (count, Some(s.clone()));
        }
    }
    (count, None)
}

/// Checks every support of size `1..=w` for a permutation moving it entirely
/// out of the information positions `0..k`. Only supports matter: whether a
/// permutation moves an error pattern off `0..k` ignores the error values.
pub fn verify_pd_set(perms: &[Perm], k: usize, n: usize, w: usize) -> PdVerification {
    let mut checked = 0;
    for size in 1..=w.min(n) {
        let (c, bad) = find_first_chunked((0..n).combinations(size), |s| {
            !perms.iter().any(|p| moves_out(p, s, k))
        });
        checked += c;
        if bad.is_some() {
            return PdVerification {
                ok: false,
                supports_checked: checked,
                counterexample: bad,
            };
        }
    }
    PdVerification {
        ok: true,
        supports_checked: checked,
        counterexample: None,
    }
}

/// Outcome of [`pd_search`].
#[derive(Debug, Clone)]
pub struct PdSearch {
    pub pdset: Option<PdSet>,
    pub uncovered: usize,
    pub example_uncovered: Option<Vec<usize>>,
}

/// Greedy cover: walk `candidates` in order, keeping each one that moves some
/// still-uncovered support of size `w` off `0..k`. Covering all supports of
/// size `w` covers every smaller support too.
pub fn pd_search(candidates: &[(String, Perm)], k: usize, n: usize, w: usize) -> PdSearch {
    let size = w.min(n);
    let mut uncovered: Vec<Vec<usize>> = (0..n).combinations(size).collect();
    let mut kept = Vec::new();
    for (name, p) in candidates {
        if uncovered.is_empty() {
            break;
        }
        let before = uncovered.len();
        uncovered = uncovered.into_par_iter().filter(|s| !moves_out(p, s, k)).collect();
        if uncovered.len() < before {
            kept.push((name.clone(), p.clone()));
        }
    }
    if uncovered.is_empty() {
        PdSearch {
            pdset: Some(PdSet::new(kept, w)),
            uncovered: 0,
            example_uncovered: None,
        }
    } else {
        PdSearch {
            pdset: None,
            uncovered: uncovered.len(),
            example_uncovered: uncovered.first().cloned(),
        }
    }
}

/// Calls `f` on every error vector of weight `0..=w` (supports in
/// lexicographic order, then values).
pub fn for_each_error<F: FnMut(&[FieldElement])>(field: Field, n: usize, w: usize, mut f: F) {
    let nonzero: Vec<FieldElement> = (1..field.size()).map(|i| field.element(i)).collect();
    let mut e = vec![field.zero(); n];
    f(&e);
    for size in 1..=w.min(n) {
        for support in (0..n).combinations(size) {
            for values in (0..size).map(|_| nonzero.iter()).multi_cartesian_product() {
                for (&i, &v) in support.iter().zip(&values) {
                    e[i] = *v;
                }
                f(&e);
            }
            for &i in &support {
                e[i] = field.zero();
            }
        }
    }
}

/// Exhaustive check that, for every codeword `c` and error `e` with
/// `wt(e) ≤ w`, `wt(H(c+e)) ≤ t` exactly when `e` vanishes on `0..k`.
#[derive(Debug, Clone, Serialize)]
pub struct KeyLemmaReport {
    pub codewords: u64,
    pub error_patterns: u64,
    pub agree: bool,
    pub counterexample: Option<(Vec<u64>, Vec<u64>)>,
}

pub fn key_lemma_exhaustive(sys: &SystematicCode, w: usize) -> Result<KeyLemmaReport> {
    let code = LinearCode::new(sys.generator().clone())?;
    let mut errors: Vec<Vec<FieldElement>> = Vec::new();
    for_each_error(sys.field(), sys.n(), w, |e| errors.push(e.to_vec()));
    let mut words: Vec<Vec<FieldElement>> = Vec::new();
    for_each_codeword(&code, |c| words.push(c.to_vec()))?;
    let k = sys.k();
    let bad = words.par_iter().find_map_first(|c| {
        errors.iter().find_map(|e| {
            let v: Vec<FieldElement> = c.iter().zip(e).map(|(&a, &b)| a + b).collect();
            let passes = sys.syndrome_ok(&v).expect("length n");
            let info_clean = e[..k].iter().all(|x| x.is_zero());
            (passes != info_clean).then(|| (index_vec(c), index_vec(e)))
        })
    });
    Ok(KeyLemmaReport {
        codewords: words.len() as u64,
        error_patterns: errors.len() as u64,
        agree: bad.is_none(),
        counterexample: bad,
    })
}

fn index_vec(v: &[FieldElement]) -> Vec<u64> {
    v.iter().map(|e| e.index()).collect()
}

/// Per-weight statistics of a channel experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightStats {
    pub success_rate: f64,
    pub mean_tried: f64,
    pub failures: u64,
    pub wrong_codeword: u64,
    pub beyond_guarantee: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub trials: u64,
    pub seed: u64,
    pub per_weight: BTreeMap<usize, WeightStats>,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    ok: u64,
    tried: u64,
    failures: u64,
    wrong: u64,
    beyond: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            ok: self.ok + o.ok,
            tried: self.tried + o.tried,
            failures: self.failures + o.failures,
            wrong: self.wrong + o.wrong,
            beyond: self.beyond + o.beyond,
        }
    }
}

/// Random codeword plus a random error of exactly weight `w`, decoded with
/// `set`. Trial `i` at weight `w` draws from its own ChaCha stream, so the
/// result does not depend on the number of worker threads.
pub fn channel_experiment(
    sys: &SystematicCode,
    set: &PdSet,
    weights: &[usize],
    trials: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    let field = sys.field();
    let q = field.size();
    let n = sys.n();
    let mut per_weight = BTreeMap::new();
    for &w in weights {
        if w > n {
            return Err(Error::Dimension(format!("error weight {w} exceeds n = {n}")));
        }
        let tally = (0..trials)
            .into_par_iter()
            .map(|i| -> Result<Tally> {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(((w as u64) << 40) | i);
                let msg: Vec<FieldElement> = (0..sys.k()).map(|_| field.element(rng.gen_range(0..q))).collect();
                let c = sys.encode(&msg)?;
                let mut v = c.clone();
                for pos in sample(&mut rng, n, w).into_iter() {
                    v[pos] = v[pos] + field.element(rng.gen_range(1..q));
                }
                let out = pd_decode(sys, &v, set)?;
                let mut t = Tally {
                    tried: out.tried as u64,
                    ..Tally::default()
                };
                match out.codeword {
                    Some(d) if d == c => t.ok = 1,
                    Some(_) => t.wrong = 1,
                    None => t.failures = 1,
                }
                if out.beyond_guarantee {
                    t.beyond = 1;
                }
                Ok(t)
            })
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
        let denom = trials.max(1) as f64;
        per_weight.insert(
            w,
            WeightStats {
                success_rate: tally.ok as f64 / denom,
                mean_tried: tally.tried as f64 / denom,
                failures: tally.failures,
                wrong_codeword: tally.wrong,
                beyond_guarantee: tally.beyond,
            },
        );
    }
    Ok(ExperimentReport {
        trials,
        seed,
        per_weight,
    })
}

/// Report emitted by the `pdset` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdReport {
    pub code: [usize; 3],
    pub t: usize,
    pub pdset: PdSetSummary,
    pub certified_weight: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub experiment: Option<ExperimentSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdSetSummary {
    pub size: usize,
    pub words: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub trials: u64,
    pub per_weight: BTreeMap<usize, RateSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateSummary {
    pub success_rate: f64,
    pub mean_tried: f64,
}

impl PdReport {
    pub fn new(sys: &SystematicCode, set: &PdSet, verification: &PdVerification, exp: Option<&ExperimentReport>) -> Self {
        PdReport {
            code: [sys.n(), sys.k(), sys.d()],
            t: sys.t(),
            pdset: PdSetSummary {
                size: set.len(),
                words: set.words.clone(),
            },
            certified_weight: verification.ok.then_some(set.weight),
            experiment: exp.map(|e| ExperimentSummary {
                trials: e.trials,
                per_weight: e
                    .per_weight
                    .iter()
                    .map(|(&w, s)| {
                        (
                            w,
                            RateSummary {
                                success_rate: s.success_rate,
                                mean_tried: s.mean_tried,
                            },
                        )
                    })
                    .collect(),
            }),
        }
    }
}
