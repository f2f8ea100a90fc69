//! Subadditive functions built from modules, pi-points, sums and tensor
//! twists, with memoized evaluation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::homalg::ChiModule;
use crate::modrep::{GroupDesc, Module};
use crate::pipoints::PiPoint;

#[derive(Clone)]
pub enum Carrier {
    FromModule(Arc<ChiModule>),
    FromPiPoint(PiPoint),
    Sum(Vec<SubadditiveFn>),
    TensorTwist(Box<SubadditiveFn>, Module),
}

type Cache = Arc<RwLock<HashMap<[u8; 32], usize>>>;

#[derive(Clone)]
pub struct SubadditiveFn {
    carrier: Carrier,
    label: String,
    cache: Cache,
}

impl fmt::Debug for SubadditiveFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubadditiveFn({})", self.label)
    }
}

impl SubadditiveFn {
    fn with(carrier: Carrier, label: String) -> SubadditiveFn {
        SubadditiveFn { carrier, label, cache: Arc::new(RwLock::new(HashMap::new())) }
    }

    /// `chi_M`, decomposing M with the given seed.
    pub fn from_module(m: &Module, seed: u64) -> Result<SubadditiveFn> {
        let chi = ChiModule::new(m, seed)?;
        Ok(SubadditiveFn::with(Carrier::FromModule(Arc::new(chi)), format!("chi[{}]", m.provenance())))
    }

    pub fn from_pipoint(alpha: &PiPoint) -> SubadditiveFn {
        let pt = alpha.proj_point();
        let coords: Vec<String> = pt.coords.iter().map(|c| c.to_string()).collect();
        let label = format!("chi_alpha[{}]/GF({}^{})", coords.join(":"), alpha.field().p(), alpha.field().n());
        SubadditiveFn::with(Carrier::FromPiPoint(alpha.clone()), label)
    }

    pub fn sum(parts: Vec<SubadditiveFn>) -> SubadditiveFn {
        let label = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.iter().map(|p| p.label.as_str()).collect::<Vec<_>>().join(" + ")
        };
        SubadditiveFn::with(Carrier::Sum(parts), label)
    }

    /// The zero function, whose additive locus is everything.
    pub fn zero() -> SubadditiveFn {
        SubadditiveFn::sum(Vec::new())
    }

    /// `X -> chi(X (x) S)`.
    pub fn tensor_twist(chi: &SubadditiveFn, s: &Module) -> SubadditiveFn {
        let label = format!("{}(- (x) {})", chi.label, s.provenance());
        SubadditiveFn::with(Carrier::TensorTwist(Box::new(chi.clone()), s.clone()), label)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn evaluate(&self, x: &Module) -> Result<usize> {
        if x.dim() == 0 {
            return Ok(0);
        }
        let key = x.fingerprint();
        if let Some(&v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(v);
        }
        let v = match &self.carrier {
            Carrier::FromModule(chi) => chi.eval(x)?,
            Carrier::FromPiPoint(alpha) => alpha.chi(x)?,
            Carrier::Sum(parts) => {
                let mut total = 0;
                for p in parts {
                    total += p.evaluate(x)?;
                }
                total
            }
            Carrier::TensorTwist(chi, s) => chi.evaluate(&x.tensor(s)?)?,
        };
        self.cache.write().expect("cache lock").entry(key).or_insert(v);
        Ok(v)
    }

    /// Test hook: store a value one off from the true value of `chi(x)`.
    pub fn inject_fault(&self, x: &Module) -> Result<()> {
        let v = self.evaluate(x)?;
        let wrong = if v > 0 { v - 1 } else { 1 };
        self.cache.write().expect("cache lock").insert(x.fingerprint(), wrong);
        Ok(())
    }

    /// An endofinite module whose endolength function has the same additive
    /// locus: M for chi_M, the point module for chi_alpha, direct sums for
    /// sums and `S* (x) M` for twists by S.
    pub fn representing_module(&self, group: GroupDesc, base: &Field) -> Result<Module> {
        match &self.carrier {
            Carrier::FromModule(chi) => Ok(chi.module.clone()),
            Carrier::FromPiPoint(alpha) => alpha.point_module(base),
            Carrier::Sum(parts) => {
                let mut acc = Module::zero(group, base);
                for p in parts {
                    acc = acc.direct_sum(&p.representing_module(group, base)?)?;
                }
                Ok(acc)
            }
            Carrier::TensorTwist(chi, s) => s.dual().tensor(&chi.representing_module(group, base)?),
        }
    }

    /// Irreducible parts: `chi_{M_i}` for the distinct indecomposable summands.
    pub fn decompose_irreducible(&self) -> Result<Vec<SubadditiveFn>> {
        match &self.carrier {
            Carrier::FromModule(chi) => Ok(chi
                .parts
                .iter()
                .map(|(m, e)| {
                    let single = ChiModule { module: m.clone(), parts: vec![(m.clone(), *e)] };
                    SubadditiveFn::with(Carrier::FromModule(Arc::new(single)), format!("chi[{}]", m.provenance()))
                })
                .collect()),
            _ => Err(Error::Unavailable("irreducible decomposition needs a module carrier".into())),
        }
    }
}

/// `sum over simple S of chi(- (x) S)`; kE is local so the only simple is k.
pub fn tensor_closure(chi: &SubadditiveFn, group: GroupDesc, field: &Field) -> SubadditiveFn {
    SubadditiveFn::sum(vec![SubadditiveFn::tensor_twist(chi, &Module::trivial(group, field))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldElem;

    fn setup() -> (GroupDesc, Field) {
        (GroupDesc::new(2, 2).unwrap(), Field::prime(2).unwrap())
    }

    #[test]
    fn evaluation_examples() {
        let (g, f) = setup();
        let k = Module::trivial(g, &f);
        let reg = Module::regular(g, &f);
        let a = SubadditiveFn::from_pipoint(&PiPoint::new(g, &f, vec![FieldElem::ONE, FieldElem::ZERO]).unwrap());
        let b = SubadditiveFn::from_pipoint(&PiPoint::new(g, &f, vec![FieldElem::ZERO, FieldElem::ONE]).unwrap());
        assert_eq!(SubadditiveFn::sum(vec![a.clone(), b]).evaluate(&k).unwrap(), 2);
        assert_eq!(SubadditiveFn::tensor_twist(&a, &k).evaluate(&reg).unwrap(), a.evaluate(&reg).unwrap());
        // End(kE) = kE: Hom(kE, kE) has dimension 4 and residue degree 1
        assert_eq!(SubadditiveFn::from_module(&reg, 0).unwrap().evaluate(&reg).unwrap(), 4);
        assert_eq!(SubadditiveFn::zero().evaluate(&reg).unwrap(), 0);
        assert_eq!(tensor_closure(&a, g, &f).evaluate(&k).unwrap(), 1);
    }

    #[test]
    fn irreducible_parts() {
        let (g, f) = setup();
        let k = Module::trivial(g, &f);
        let reg = Module::regular(g, &f);
        let kk = SubadditiveFn::from_module(&k.direct_sum(&k).unwrap(), 0).unwrap();
        assert_eq!(kk.decompose_irreducible().unwrap().len(), 1);
        let kr = SubadditiveFn::from_module(&k.direct_sum(&reg).unwrap(), 0).unwrap();
        let parts = kr.decompose_irreducible().unwrap();
        assert_eq!(parts.len(), 2);
        let total = SubadditiveFn::sum(parts);
        for x in [&k, &reg] {
            assert_eq!(total.evaluate(x).unwrap(), kr.evaluate(x).unwrap());
        }
    }

    #[test]
    fn fault_injection_changes_cached_value() {
        let (g, f) = setup();
        let k = Module::trivial(g, &f);
        let a = SubadditiveFn::from_pipoint(&PiPoint::new(g, &f, vec![FieldElem::ONE, FieldElem::ONE]).unwrap());
        a.inject_fault(&k).unwrap();
        assert_eq!(a.evaluate(&k).unwrap(), 0);
    }
}
