//! Deterministic finite corpora of modules and short exact sequences.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactla::{Field, FieldDesc, FieldElem, Matrix};
use crate::homalg::hom::hom_basis;
use crate::homalg::{realize_extension, syzygy_sequence, ModuleSlot, SequenceJson, ShortExactSeq};
use crate::modrep::{is_projective, omega, random_module, GroupDesc, Module, ModuleJson};
use crate::pipoints::{galois_orbits, supp_pi, PiPoint, PiPointJson, ProjPoint};

#[derive(Debug, Clone)]
pub struct CorpusConfig {
    pub group: GroupDesc,
    pub field: Field,
    /// Fields K over which pi-point witnesses are added.
    pub extensions: Vec<Field>,
    pub seed: u64,
    /// Minimum number of modules.
    pub size: usize,
    /// Dimension bound for random and tensor-product modules.
    pub max_dim: usize,
    pub pushouts_per_target: usize,
}

impl CorpusConfig {
    pub fn new(group: GroupDesc, field: &Field, seed: u64, size: usize) -> CorpusConfig {
        let max_dim = if group.p == 2 { 10 } else { 12 };
        CorpusConfig {
            group,
            field: field.clone(),
            extensions: vec![field.clone()],
            seed,
            size,
            max_dim,
            pushouts_per_target: 3,
        }
    }

    pub fn with_extensions(mut self, extensions: Vec<Field>) -> CorpusConfig {
        self.extensions = extensions;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeqKind {
    Cover,
    Split,
    Pushout,
}

#[derive(Debug, Clone)]
pub struct CorpusSeq {
    pub kind: SeqKind,
    /// Index of the end term Z in the module list.
    pub end: usize,
    pub seq: ShortExactSeq,
}

/// A witness for one Galois orbit of points of P^{r-1}(K).
#[derive(Debug, Clone)]
pub struct Witness {
    pub point: PiPoint,
    pub orbit: Vec<ProjPoint>,
    pub module: usize,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub group: GroupDesc,
    pub field: Field,
    pub seed: u64,
    pub modules: Vec<Module>,
    pub sequences: Vec<CorpusSeq>,
    pub witnesses: Vec<Witness>,
    by_fingerprint: HashMap<[u8; 32], usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSeqJson {
    pub kind: SeqKind,
    pub end: usize,
    #[serde(flatten)]
    pub seq: SequenceJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub pipoint: PiPointJson,
    pub orbit: Vec<ProjPoint>,
    pub module: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusJson {
    pub group: GroupDesc,
    pub field: FieldDesc,
    pub seed: u64,
    pub modules: Vec<ModuleJson>,
    pub sequences: Vec<CorpusSeqJson>,
    pub witnesses: Vec<WitnessJson>,
}

impl Corpus {
    fn empty(config: &CorpusConfig) -> Corpus {
        Corpus {
            group: config.group,
            field: config.field.clone(),
            seed: config.seed,
            modules: Vec::new(),
            sequences: Vec::new(),
            witnesses: Vec::new(),
            by_fingerprint: HashMap::new(),
        }
    }

    /// Adds a module unless an identical one is present; returns its index.
    fn add(&mut self, m: Module) -> usize {
        let fp = m.fingerprint();
        if let Some(&i) = self.by_fingerprint.get(&fp) {
            return i;
        }
        self.by_fingerprint.insert(fp, self.modules.len());
        self.modules.push(m);
        self.modules.len() - 1
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Index of a module with identical matrices, if any.
    pub fn index_of(&self, m: &Module) -> Option<usize> {
        self.by_fingerprint.get(&m.fingerprint()).copied()
    }

    /// Corpus sequences ending in a module identical to Z.
    pub fn sequences_ending_in(&self, z: &Module) -> Vec<&ShortExactSeq> {
        let fp = z.fingerprint();
        self.sequences.iter().filter(|s| s.seq.z.fingerprint() == fp).map(|s| &s.seq).collect()
    }

    pub fn to_json(&self) -> CorpusJson {
        let slot = |m: &Module| match self.index_of(m) {
            Some(i) if self.modules[i].provenance() == m.provenance() => ModuleSlot::Ref { index: i },
            _ => ModuleSlot::Inline(m.to_json()),
        };
        CorpusJson {
            group: self.group,
            field: self.field.desc().clone(),
            seed: self.seed,
            modules: self.modules.iter().map(|m| m.to_json()).collect(),
            sequences: self
                .sequences
                .iter()
                .map(|s| CorpusSeqJson {
                    kind: s.kind,
                    end: s.end,
                    seq: SequenceJson {
                        x: slot(&s.seq.x),
                        y: slot(&s.seq.y),
                        z: slot(&s.seq.z),
                        inj: s.seq.inj.to_json(),
                        surj: s.seq.surj.to_json(),
                    },
                })
                .collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|w| WitnessJson { pipoint: w.point.to_json(), orbit: w.orbit.clone(), module: w.module })
                .collect(),
        }
    }

    pub fn from_json(json: &CorpusJson) -> Result<Corpus> {
        let field = Field::from_desc(&json.field)?;
        let group = GroupDesc::new(json.group.p, json.group.r)?;
        let mut corpus = Corpus {
            group,
            field,
            seed: json.seed,
            modules: Vec::new(),
            sequences: Vec::new(),
            witnesses: Vec::new(),
            by_fingerprint: HashMap::new(),
        };
        for m in &json.modules {
            let m = Module::from_json(m)?;
            corpus.by_fingerprint.entry(m.fingerprint()).or_insert(corpus.modules.len());
            corpus.modules.push(m);
        }
        for s in &json.sequences {
            let seq = ShortExactSeq::from_json(&s.seq, &corpus.modules)?;
            corpus.sequences.push(CorpusSeq { kind: s.kind, end: s.end, seq });
        }
        for w in &json.witnesses {
            corpus.witnesses.push(Witness {
                point: PiPoint::from_json(&w.pipoint)?,
                orbit: w.orbit.clone(),
                module: w.module,
            });
        }
        Ok(corpus)
    }

    /// Canonical serialization: compact JSON of [`CorpusJson`].
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("corpus serializes")
    }

    pub fn fingerprint(&self) -> String {
        sha256_hex(self.canonical_json().as_bytes())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn random_class<R: Rng>(basis: &[Matrix], field: &Field, rng: &mut R) -> Option<Matrix> {
    if basis.is_empty() {
        return None;
    }
    let mut acc = Matrix::zeros(field, basis[0].rows(), basis[0].cols());
    while acc.is_zero() {
        for b in basis {
            let c: FieldElem = field.from_index(rng.gen_range(0..field.order()));
            if !c.is_zero() {
                acc.add_scaled(c, b);
            }
        }
    }
    Some(acc)
}

pub fn build_corpus(config: &CorpusConfig) -> Result<Corpus> {
    let g = config.group;
    let f = &config.field;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut c = Corpus::empty(config);

    let k = Module::trivial(g, f);
    let o1 = omega(&k, 1)?;
    let om1 = omega(&k, -1)?;
    c.add(k.clone());
    c.add(Module::regular(g, f));
    c.add(o1.clone());
    c.add(om1.clone());
    c.add(omega(&k, 2)?);

    // one witness per Galois orbit of each P^{r-1}(K)
    let mut witness_modules = Vec::new();
    for big in &config.extensions {
        if !f.embeds_into(big) {
            return Err(Error::NotExtension(format!("{big:?}"), format!("{f:?}")));
        }
        for orbit in galois_orbits(big, g.r, f) {
            let alpha = PiPoint::from_point(g, big, &orbit[0])?;
            let w = alpha.witness_module();
            let w = if big == f {
                w
            } else if f.n() == 1 {
                let prov = w.provenance().to_string();
                w.restrict_scalars().with_provenance(format!("res({prov})"))
            } else {
                return Err(Error::Unavailable("witnesses need a prime base field when K differs from k".into()));
            };
            let support: BTreeSet<ProjPoint> = supp_pi(&w, big)?.into_iter().collect();
            let expected: BTreeSet<ProjPoint> = orbit.iter().cloned().collect();
            if support != expected {
                return Err(Error::Unavailable(format!("witness for {:?} has support {support:?}", orbit[0])));
            }
            let idx = c.add(w.clone());
            witness_modules.push(w);
            c.witnesses.push(Witness { point: alpha, orbit, module: idx });
        }
    }

    // small tensor products and direct sums
    let mut extras = vec![o1.tensor(&om1)?, k.direct_sum(&o1)?];
    if witness_modules.len() >= 2 {
        extras.push(witness_modules[0].tensor(&witness_modules[1])?);
        extras.push(witness_modules[0].direct_sum(&witness_modules[1])?);
    }
    if let Some(w) = witness_modules.first() {
        extras.push(w.tensor(&o1)?);
        extras.push(w.direct_sum(w)?);
    }
    for m in extras {
        if m.dim() <= config.max_dim {
            c.add(m);
        }
    }

    let mut draws = 0u64;
    while c.len() < config.size {
        let seed = rng.gen::<u64>();
        let m = random_module(seed, g, f, 1, config.max_dim);
        c.add(m.with_provenance(format!("rand#{draws}")));
        draws += 1;
    }

    // sequences ending in each module
    let small: Vec<usize> = (0..c.len()).filter(|&i| c.modules[i].dim() <= 4).collect();
    for z_idx in 0..c.len() {
        let z = c.modules[z_idx].clone();
        if !is_projective(&z) {
            c.sequences.push(CorpusSeq { kind: SeqKind::Cover, end: z_idx, seq: syzygy_sequence(&z)? });
        }
        let x = &c.modules[small[rng.gen_range(0..small.len())]];
        let split = ShortExactSeq::split(x, &z)?;
        c.sequences.push(CorpusSeq { kind: SeqKind::Split, end: z_idx, seq: split });
        if is_projective(&z) {
            continue;
        }
        let syz = syzygy_sequence(&z)?;
        let mut made = 0;
        let mut tries = 0;
        while made < config.pushouts_per_target && tries < 8 * config.pushouts_per_target {
            tries += 1;
            let m = c.modules[small[rng.gen_range(0..small.len())]].clone();
            let basis = hom_basis(&syz.x, &m)?;
            let Some(class) = random_class(&basis, f, &mut rng) else { continue };
            let seq = realize_extension(&z, &m, &class)?;
            c.sequences.push(CorpusSeq { kind: SeqKind::Pushout, end: z_idx, seq });
            made += 1;
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(seed: u64) -> CorpusConfig {
        let g = GroupDesc::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        CorpusConfig::new(g, &f, seed, 16)
    }

    #[test]
    fn deterministic_and_roundtrips() {
        let a = build_corpus(&small_config(3)).unwrap();
        let b = build_corpus(&small_config(3)).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
        let back = Corpus::from_json(&a.to_json()).unwrap();
        assert_eq!(back.canonical_json(), a.canonical_json());
    }

    #[test]
    fn contents() {
        let c = build_corpus(&small_config(0)).unwrap();
        let g = c.group;
        assert!(c.index_of(&Module::trivial(g, &c.field)).is_some());
        assert!(c.modules.iter().any(is_projective));
        assert!(c.len() >= 16);
        for s in &c.sequences {
            s.seq.validate().unwrap();
            assert_eq!(s.seq.z, c.modules[s.end]);
        }
        assert_eq!(c.witnesses.len(), 3);
    }
}
