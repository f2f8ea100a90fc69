//! Krull-Schmidt decomposition and isomorphism testing.
//!
//! Splitting uses Fitting's lemma on random endomorphisms: when the
//! squarefree part of the minimal polynomial of `phi` has coprime factors
//! `g h`, M splits as `ker g(phi)^d (+) ker h(phi)^d`. When no split is
//! found, locality of End(M) is certified exactly by exhibiting a nilpotent
//! ideal J and an element `phi` with `End(M) = k[phi] + J`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::poly::{factor_squarefree, min_poly, squarefree_part};
use crate::exactla::{EchelonSpan, Field, FieldElem, Matrix};
use crate::homalg::hom::Presentation;

use super::cover::{free_rank, strip_projective};
use super::module::Module;

const MAX_ATTEMPTS: usize = 400;
const EXHAUSTIVE_LIMIT: u64 = 4096;
const ISO_SAMPLES: usize = 32;
const INDECOMPOSABLE_ISO_SAMPLES: usize = 64;

/// Isomorphism invariants used to sort and pre-filter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Invariants {
    pub dim: usize,
    pub radical_series: Vec<usize>,
    pub socle_series: Vec<usize>,
    /// Ranks of `U^j`, j = 1..p-1, for `U = sum lambda_i X_i` at probe points.
    pub jordan_probes: Vec<Vec<usize>>,
}

const MAX_PROBES: usize = 16;

/// Normalized representatives of points of P^{r-1}(k) for the module's
/// field, in a fixed order, at most `limit` of them.
pub fn probe_points(field: &Field, r: usize, limit: usize) -> Vec<Vec<FieldElem>> {
    let q = field.order() as u64;
    let mut out = Vec::new();
    // leading coordinate 1 at position `lead`, zeros before, free after
    for lead in 0..r {
        let free = r - lead - 1;
        let count = q.pow(free as u32);
        for idx in 0..count {
            if out.len() >= limit {
                return out;
            }
            let mut v = vec![FieldElem::ZERO; r];
            v[lead] = FieldElem::ONE;
            let mut t = idx;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = field.from_index((t % q) as u32);
                t /= q;
            }
            out.push(v);
        }
    }
    out
}

/// `sum lambda_i X_i`.
pub fn linear_combination(m: &Module, lambda: &[FieldElem]) -> Matrix {
    let mut u = Matrix::zeros(m.field(), m.dim(), m.dim());
    for (c, x) in lambda.iter().zip(m.actions()) {
        if !c.is_zero() {
            u.add_scaled(*c, x);
        }
    }
    u
}

pub fn invariants(m: &Module) -> Invariants {
    let p = m.group().p;
    let jordan_probes = probe_points(m.field(), m.group().r as usize, MAX_PROBES)
        .iter()
        .map(|lam| {
            let u = linear_combination(m, lam);
            let mut ranks = Vec::new();
            let mut pw = u.clone();
            for _ in 1..p {
                ranks.push(pw.rank());
                pw = pw.dot(&u);
            }
            ranks
        })
        .collect();
    Invariants {
        dim: m.dim(),
        radical_series: m.radical_series(),
        socle_series: m.transpose_dual().radical_series(),
        jordan_probes,
    }
}

#[derive(Debug, Clone)]
pub struct Summand {
    pub module: Module,
    pub multiplicity: usize,
    /// Dimension of End(M)/rad End(M) over k.
    pub end_simple_dim: usize,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.module.dim() * s.multiplicity).sum()
    }

    pub fn num_indecomposables(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    /// `(dim, multiplicity)` pairs in canonical order.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.summands.iter().map(|s| (s.module.dim(), s.multiplicity)).collect()
    }

    /// Direct sum of all summands with multiplicity.
    pub fn assemble(&self) -> Option<Module> {
        let first = self.summands.first()?;
        let mut acc = Module::zero(first.module.group(), first.module.field());
        for s in &self.summands {
            acc = acc.direct_sum(&s.module.power(s.multiplicity)).ok()?;
        }
        Some(acc)
    }

    /// Same summands up to isomorphism with the same multiplicities.
    pub fn equivalent(&self, other: &Decomposition, seed: u64) -> bool {
        if self.summands.len() != other.summands.len() {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut used = vec![false; other.summands.len()];
        'outer: for s in &self.summands {
            let inv = invariants(&s.module);
            for (j, t) in other.summands.iter().enumerate() {
                if used[j] || t.multiplicity != s.multiplicity || t.module.dim() != s.module.dim() {
                    continue;
                }
                if invariants(&t.module) == inv && iso_indecomposable(&s.module, &t.module, &mut rng) {
                    used[j] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}

enum Analysis {
    Split(Matrix, Matrix),
    Local(usize),
}

fn random_elem<R: Rng>(f: &Field, rng: &mut R) -> FieldElem {
    f.from_index(rng.gen_range(0..f.order()))
}

fn random_combination<R: Rng>(f: &Field, basis: &[Matrix], rng: &mut R) -> Matrix {
    let mut acc = Matrix::zeros(f, basis[0].rows(), basis[0].cols());
    for b in basis {
        let c = random_elem(f, rng);
        if !c.is_zero() {
            acc.add_scaled(c, b);
        }
    }
    acc
}

/// Exact locality certificate: `Some(e)` if the two-sided ideal generated
/// by `seeds` is nilpotent and together with `1, phi, ..., phi^(e-1)` spans
/// the algebra, where `e = deg` is the degree of the irreducible polynomial
/// `f` with `f(phi)` among the seeds.
fn certify_local(f: &Field, basis: &[Matrix], seeds: &[Matrix], phi: &Matrix, deg: usize) -> Option<usize> {
    let d = basis[0].rows();
    let len = d * d;
    let mut span = EchelonSpan::new(f, len);
    let mut jmats: Vec<Matrix> = Vec::new();
    for s in seeds {
        if span.insert(s.data()) {
            jmats.push(s.clone());
        }
    }
    // two-sided ideal closure
    let mut next = 0;
    while next < jmats.len() {
        let j = jmats[next].clone();
        next += 1;
        for a in basis {
            for prod in [a.dot(&j), j.dot(a)] {
                if span.insert(prod.data()) {
                    jmats.push(prod);
                }
            }
        }
        if span.dim() + deg > basis.len() {
            return None;
        }
    }
    if span.dim() + deg != basis.len() {
        return None;
    }
    // A = k[phi] + J
    let mut full = span.clone();
    let mut pw = Matrix::identity(f, d);
    for _ in 0..deg {
        full.insert(pw.data());
        pw = pw.dot(phi);
    }
    if full.dim() != basis.len() {
        return None;
    }
    // nilpotency of J: J^(i+1) = J^i J shrinks to zero
    let mut power = jmats.clone();
    let mut prev_dim = span.dim();
    for _ in 0..=d {
        if power.is_empty() {
            return Some(deg);
        }
        let mut s = EchelonSpan::new(f, len);
        let mut mats = Vec::new();
        for a in &power {
            for b in &jmats {
                let prod = a.dot(b);
                if s.insert(prod.data()) {
                    mats.push(prod);
                }
            }
        }
        if s.dim() >= prev_dim && s.dim() > 0 {
            return None;
        }
        prev_dim = s.dim();
        power = mats;
    }
    None
}

fn analyze<R: Rng>(m: &Module, rng: &mut R) -> Result<Analysis> {
    if m.top_dim() == 1 || m.socle().rows() == 1 {
        // cyclic or cocyclic: End is a quotient of kE, local with residue field k
        return Ok(Analysis::Local(1));
    }
    let f = m.field().clone();
    let basis = Presentation::new(m).hom_basis(m);
    if basis.len() == 1 {
        return Ok(Analysis::Local(1));
    }
    let d = m.dim();
    let mut seeds: Vec<Matrix> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let c = basis[i].dot(&basis[j]).sub(&basis[j].dot(&basis[i]))?;
            if !c.is_zero() {
                seeds.push(c);
            }
        }
    }
    let mut best: Option<(usize, Matrix)> = None;
    let mut next_check = 1;
    for attempt in 0..MAX_ATTEMPTS {
        let phi = random_combination(&f, &basis, rng);
        let mu = min_poly(&phi);
        let sf = squarefree_part(&mu, &f);
        let factors = factor_squarefree(&sf, &f, rng);
        if factors.len() >= 2 {
            let g = &factors[0];
            let h = sf.divrem(g, &f).0;
            let gk = g.eval_matrix(&phi).pow(d as u32)?.kernel_basis();
            let hk = h.eval_matrix(&phi).pow(d as u32)?.kernel_basis();
            return Ok(Analysis::Split(gk, hk));
        }
        seeds.push(sf.eval_matrix(&phi));
        let deg = sf.degree();
        if best.as_ref().is_none_or(|(bd, _)| deg > *bd) {
            best = Some((deg, phi));
        }
        if attempt + 1 == next_check {
            next_check *= 2;
            let (deg, phi) = best.as_ref().unwrap();
            if let Some(e) = certify_local(&f, &basis, &seeds, phi, *deg) {
                return Ok(Analysis::Local(e));
            }
        }
    }
    let (deg, phi) = best.as_ref().unwrap();
    certify_local(&f, &basis, &seeds, phi, *deg)
        .map(Analysis::Local)
        .ok_or_else(|| Error::Unavailable("decomposition did not converge".into()))
}

/// `dim End(M)/rad End(M)` for M with local endomorphism ring.
pub fn end_simple_dim(m: &Module, seed: u64) -> Result<usize> {
    if m.dim() == 0 {
        return Err(Error::NotLocal);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match analyze(m, &mut rng)? {
        Analysis::Local(e) => Ok(e),
        Analysis::Split(..) => Err(Error::NotLocal),
    }
}

fn split_into<R: Rng>(m: &Module, rng: &mut R, out: &mut Vec<(Module, usize)>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    let fr = free_rank(m);
    if fr > 0 {
        let reg = Module::regular(m.group(), m.field());
        for _ in 0..fr {
            out.push((reg.clone(), 1));
        }
        let rest = strip_projective(m)?;
        return split_into(&rest, rng, out);
    }
    match analyze(m, rng)? {
        Analysis::Local(e) => {
            out.push((m.clone(), e));
            Ok(())
        }
        Analysis::Split(a, b) => {
            let (ma, _) = m.submodule(&a)?;
            let (mb, _) = m.submodule(&b)?;
            debug_assert_eq!(ma.dim() + mb.dim(), m.dim());
            split_into(&ma, rng, out)?;
            split_into(&mb, rng, out)
        }
    }
}

/// Indecomposable summands of M with their residue degrees, ungrouped.
pub fn indecomposable_parts(m: &Module, seed: u64) -> Result<Vec<(Module, usize)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    split_into(m, &mut rng, &mut parts)?;
    Ok(parts)
}

pub fn decompose(m: &Module, seed: u64) -> Result<Decomposition> {
    let parts = indecomposable_parts(m, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut groups: Vec<(Invariants, Summand)> = Vec::new();
    for (module, e) in parts {
        let inv = invariants(&module);
        let found = groups
            .iter_mut()
            .find(|(gi, s)| *gi == inv && iso_indecomposable(&s.module, &module, &mut rng));
        match found {
            Some((_, s)) => s.multiplicity += 1,
            None => {
                let module = module.with_provenance(format!("summand of {}", m.provenance()));
                groups.push((inv, Summand { module, multiplicity: 1, end_simple_dim: e }));
            }
        }
    }
    for (_, s) in groups.iter_mut() {
        if s.module.provenance().starts_with("summand of") && is_projective_indecomposable(&s.module) {
            s.module = s.module.clone().with_provenance("kE");
        }
    }
    groups.sort_by(|(ia, sa), (ib, sb)| {
        (sa.module.dim(), ia, sa.module.canonical_bytes()).cmp(&(sb.module.dim(), ib, sb.module.canonical_bytes()))
    });
    Ok(Decomposition { summands: groups.into_iter().map(|(_, s)| s).collect() })
}

fn is_projective_indecomposable(m: &Module) -> bool {
    m.dim() == m.group().order() && m.top_dim() == 1
}

/// Whether a space of square matrices contains an invertible element.
/// `Some(false)` only comes from an exhaustive search; sampling that finds
/// nothing gives `None`.
fn find_invertible<R: Rng>(f: &Field, basis: &[Matrix], samples: usize, rng: &mut R) -> Option<bool> {
    if basis.is_empty() {
        return Some(false);
    }
    let q = f.order() as u64;
    let total = q.checked_pow(basis.len() as u32);
    if let Some(total) = total.filter(|&t| t <= EXHAUSTIVE_LIMIT) {
        for idx in 1..total {
            let mut t = idx;
            let mut acc = Matrix::zeros(f, basis[0].rows(), basis[0].cols());
            for b in basis {
                let c = f.from_index((t % q) as u32);
                t /= q;
                if !c.is_zero() {
                    acc.add_scaled(c, b);
                }
            }
            if acc.is_invertible() {
                return Some(true);
            }
        }
        return Some(false);
    }
    for _ in 0..samples {
        if random_combination(f, basis, rng).is_invertible() {
            return Some(true);
        }
    }
    None
}

/// Isomorphism test for indecomposable modules. In that case the
/// non-invertible maps form a proper subspace of codimension at least one,
/// so random sampling fails with probability at most `q^-samples`.
pub fn iso_indecomposable<R: Rng>(a: &Module, b: &Module, rng: &mut R) -> bool {
    if a.dim() != b.dim() || a.check_compatible(b).is_err() {
        return false;
    }
    if a == b {
        return true;
    }
    let basis = Presentation::new(a).hom_basis(b);
    find_invertible(a.field(), &basis, INDECOMPOSABLE_ISO_SAMPLES, rng).unwrap_or(false)
}

pub fn is_isomorphic(a: &Module, b: &Module, seed: u64) -> Result<bool> {
    a.check_compatible(b)?;
    if a.dim() != b.dim() {
        return Ok(false);
    }
    if a == b || a.dim() == 0 {
        return Ok(true);
    }
    if invariants(a) != invariants(b) {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = Presentation::new(a).hom_basis(b);
    if let Some(found) = find_invertible(a.field(), &basis, ISO_SAMPLES, &mut rng) {
        return Ok(found);
    }
    let da = decompose(a, seed)?;
    let db = decompose(b, seed.wrapping_add(1))?;
    Ok(da.equivalent(&db, seed))
}
