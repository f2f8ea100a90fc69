//! Additive loci over a corpus: membership, censuses, order, thickness and
//! tensor closure.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::homalg::{ext_dim, syzygy_sequence, ShortExactSeq};
use crate::modrep::decompose::{indecomposable_parts, invariants, iso_indecomposable, Invariants};
use crate::modrep::{is_projective, strip_projective, Module};

use super::corpus::Corpus;
use super::function::SubadditiveFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdlocMode {
    Definitional,
    ExtOracle,
}

/// Membership flags over the corpus module list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Census(pub Vec<bool>);

impl Census {
    pub fn bits(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn intersect(&self, other: &Census) -> Census {
        Census(self.0.iter().zip(&other.0).map(|(a, b)| *a && *b).collect())
    }

    pub fn is_subset(&self, other: &Census) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| !*a || *b)
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i]
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bits())
    }
}

/// `chi(X) - chi(Y) + chi(Z)` for `0 -> X -> Y -> Z -> 0`; never negative
/// for a subadditive function.
pub fn defect(chi: &SubadditiveFn, s: &ShortExactSeq) -> Result<i64> {
    Ok(chi.evaluate(&s.x)? as i64 - chi.evaluate(&s.y)? as i64 + chi.evaluate(&s.z)? as i64)
}

/// Whether Z lies in the additive locus of chi.
///
/// Definitional mode checks the defect on the projective-cover sequence of
/// Z and on every corpus sequence ending in Z. Ext-oracle mode checks
/// `Ext^1(Z, R) = 0` for a module R representing chi.
pub fn adloc_member(chi: &SubadditiveFn, z: &Module, corpus: &Corpus, mode: AdlocMode) -> Result<bool> {
    match mode {
        AdlocMode::Definitional => {
            if !is_projective(z) && defect(chi, &syzygy_sequence(z)?)? != 0 {
                return Ok(false);
            }
            for s in corpus.sequences_ending_in(z) {
                if defect(chi, s)? != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        AdlocMode::ExtOracle => {
            let rep = chi.representing_module(corpus.group, &corpus.field)?;
            ext_free(z, &rep)
        }
    }
}

fn ext_free(z: &Module, rep: &Module) -> Result<bool> {
    if rep.dim() == 0 || is_projective(z) {
        return Ok(true);
    }
    Ok(ext_dim(1, z, rep)? == 0)
}

pub fn adloc_census(chi: &SubadditiveFn, corpus: &Corpus, mode: AdlocMode) -> Result<Census> {
    if mode == AdlocMode::ExtOracle {
        let rep = chi.representing_module(corpus.group, &corpus.field)?;
        return Ok(Census(corpus.modules.iter().map(|z| ext_free(z, &rep)).collect::<Result<_>>()?));
    }
    Ok(Census(
        corpus
            .modules
            .iter()
            .map(|z| adloc_member(chi, z, corpus, mode))
            .collect::<Result<_>>()?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Equal,
    /// Smaller locus.
    #[serde(rename = ">=")]
    Greater,
    #[serde(rename = "<=")]
    Less,
    #[serde(rename = "incomparable")]
    Incomparable,
}

pub fn relation(a: &Census, b: &Census) -> Relation {
    match (a.is_subset(b), b.is_subset(a)) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Greater,
        (false, true) => Relation::Less,
        (false, false) => Relation::Incomparable,
    }
}

/// `chi >= chi'` iff `Adloc(chi)` is contained in `Adloc(chi')`, decided on the corpus.
pub fn compare(a: &SubadditiveFn, b: &SubadditiveFn, corpus: &Corpus) -> Result<Relation> {
    let ca = adloc_census(a, corpus, AdlocMode::Definitional)?;
    let cb = adloc_census(b, corpus, AdlocMode::Definitional)?;
    Ok(relation(&ca, &cb))
}

/// Isomorphism classes of indecomposable summands seen so far, with the
/// summand multiset of every corpus module.
#[derive(Debug, Clone)]
pub struct SummandCatalogue {
    classes: Vec<(Invariants, Module)>,
    pub corpus_multisets: Vec<Vec<usize>>,
    seed: u64,
}

impl SummandCatalogue {
    pub fn new(corpus: &Corpus, seed: u64) -> Result<SummandCatalogue> {
        let mut cat = SummandCatalogue { classes: Vec::new(), corpus_multisets: Vec::new(), seed };
        for m in &corpus.modules {
            let ms = cat.classify(m)?;
            cat.corpus_multisets.push(ms);
        }
        Ok(cat)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Sorted class ids of the indecomposable summands of M, with repetition.
    pub fn classify(&mut self, m: &Module) -> Result<Vec<usize>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::new();
        for (part, _) in indecomposable_parts(m, self.seed)? {
            let inv = invariants(&part);
            let found = self
                .classes
                .iter()
                .position(|(ci, cm)| *ci == inv && iso_indecomposable(cm, &part, &mut rng));
            let id = match found {
                Some(i) => i,
                None => {
                    self.classes.push((inv, part));
                    self.classes.len() - 1
                }
            };
            out.push(id);
        }
        out.sort();
        Ok(out)
    }

    /// Corpus index of a module isomorphic to M, if any.
    pub fn match_corpus(&mut self, m: &Module) -> Result<Option<usize>> {
        let ms = self.classify(m)?;
        Ok(self.corpus_multisets.iter().position(|c| *c == ms))
    }
}

fn is_submultiset(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for &s in small {
        while j < big.len() && big[j] < s {
            j += 1;
        }
        if j == big.len() || big[j] != s {
            return false;
        }
        j += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickReport {
    pub thick: bool,
    pub violations: Vec<String>,
    pub sequences_checked: usize,
}

/// Closure of a census under corpus direct summands and two-out-of-three on
/// corpus sequences whose three terms are all (isomorphic to) corpus modules.
pub fn is_thick(census: &Census, corpus: &Corpus, catalogue: &mut SummandCatalogue) -> Result<ThickReport> {
    let mut violations = Vec::new();
    let n = corpus.len();
    for m in 0..n {
        if !census.contains(m) {
            continue;
        }
        for s in 0..n {
            if s != m
                && !census.contains(s)
                && !catalogue.corpus_multisets[s].is_empty()
                && is_submultiset(&catalogue.corpus_multisets[s], &catalogue.corpus_multisets[m])
            {
                violations.push(format!("summand {s} of member {m} is outside"));
            }
        }
    }
    let mut checked = 0;
    for cs in &corpus.sequences {
        let Some(x) = catalogue.match_corpus(&cs.seq.x)? else { continue };
        let Some(y) = catalogue.match_corpus(&cs.seq.y)? else { continue };
        let z = cs.end;
        checked += 1;
        let inside = [x, y, z].iter().filter(|&&i| census.contains(i)).count();
        if inside == 2 {
            violations.push(format!("sequence {x} -> {y} -> {z} has exactly two terms inside"));
        }
    }
    violations.sort();
    violations.dedup();
    Ok(ThickReport { thick: violations.is_empty(), violations, sequences_checked: checked })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorClosureReport {
    pub closed: bool,
    pub pairs_checked: usize,
    /// `(Z, Y)` corpus indices with `Z (x) Y` outside the locus.
    pub violations: Vec<(usize, usize)>,
}

/// For every corpus Z in the locus and corpus Y of dimension at most
/// `y_max_dim`, the projective-free part of `Z (x) Y` must be in the locus.
pub fn is_tensor_closed(chi: &SubadditiveFn, corpus: &Corpus, census: &Census, y_max_dim: usize) -> Result<TensorClosureReport> {
    let mut violations = Vec::new();
    let mut checked = 0;
    for (zi, z) in corpus.modules.iter().enumerate() {
        if !census.contains(zi) {
            continue;
        }
        for (yi, y) in corpus.modules.iter().enumerate() {
            if y.dim() > y_max_dim {
                continue;
            }
            checked += 1;
            let t = strip_projective(&z.tensor(y)?)?;
            if t.dim() > 0 && !adloc_member(chi, &t, corpus, AdlocMode::Definitional)? {
                violations.push((zi, yi));
            }
        }
    }
    Ok(TensorClosureReport { closed: violations.is_empty(), pairs_checked: checked, violations })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub pairs_checked: usize,
    pub sequences_checked: usize,
    pub additivity_violations: Vec<String>,
    pub subadditivity_violations: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.additivity_violations.is_empty() && self.subadditivity_violations.is_empty()
    }
}

/// Additivity on direct sums of corpus pairs with total dimension at most
/// `pair_max_dim`, and subadditivity on every corpus sequence.
pub fn verify_axioms(chi: &SubadditiveFn, corpus: &Corpus, pair_max_dim: usize) -> Result<AxiomReport> {
    let mut add = Vec::new();
    let mut pairs = 0;
    for i in 0..corpus.len() {
        for j in i..corpus.len() {
            let (a, b) = (&corpus.modules[i], &corpus.modules[j]);
            if a.dim() + b.dim() > pair_max_dim {
                continue;
            }
            pairs += 1;
            let lhs = chi.evaluate(&a.direct_sum(b)?)?;
            let rhs = chi.evaluate(a)? + chi.evaluate(b)?;
            if lhs != rhs {
                add.push(format!("chi({i} + {j}) = {lhs} but chi({i}) + chi({j}) = {rhs}"));
            }
        }
    }
    let mut sub = Vec::new();
    for (n, cs) in corpus.sequences.iter().enumerate() {
        let d = defect(chi, &cs.seq)?;
        if d < 0 {
            sub.push(format!("sequence {n} ending in {} has defect {d}", cs.end));
        }
    }
    Ok(AxiomReport {
        pairs_checked: pairs,
        sequences_checked: corpus.sequences.len(),
        additivity_violations: add,
        subadditivity_violations: sub,
    })
}
