//! Short exact sequences and realization of Ext^1 classes by pushout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, MatrixJson};
use crate::modrep::cover::projective_cover;
use crate::modrep::{Module, ModuleJson};

/// `0 -> X -> Y -> Z -> 0`.
#[derive(Debug, Clone)]
pub struct ShortExactSeq {
    pub x: Module,
    pub y: Module,
    pub z: Module,
    /// `dim Y x dim X`.
    pub inj: Matrix,
    /// `dim Z x dim Y`.
    pub surj: Matrix,
}

impl ShortExactSeq {
    pub fn new(x: Module, y: Module, z: Module, inj: Matrix, surj: Matrix) -> Result<ShortExactSeq> {
        let s = ShortExactSeq { x, y, z, inj, surj };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Dimension(format!("not a short exact sequence: {msg}")));
        self.x.check_compatible(&self.y)?;
        self.y.check_compatible(&self.z)?;
        if self.inj.rows() != self.y.dim() || self.inj.cols() != self.x.dim() {
            return bad("inj has the wrong shape");
        }
        if self.surj.rows() != self.z.dim() || self.surj.cols() != self.y.dim() {
            return bad("surj has the wrong shape");
        }
        if !self.x.is_intertwiner(&self.y, &self.inj) || !self.y.is_intertwiner(&self.z, &self.surj) {
            return Err(Error::NotIntertwiner("sequence map".into()));
        }
        if self.inj.rank() != self.x.dim() {
            return bad("inj is not injective");
        }
        if self.surj.rank() != self.z.dim() {
            return bad("surj is not surjective");
        }
        if !self.surj.dot(&self.inj).is_zero() || self.y.dim() != self.x.dim() + self.z.dim() {
            return bad("image of inj differs from kernel of surj");
        }
        Ok(())
    }

    /// The split sequence `X -> X (+) Z -> Z`.
    pub fn split(x: &Module, z: &Module) -> Result<ShortExactSeq> {
        let y = x.direct_sum(z)?;
        let f = x.field();
        let mut inj = Matrix::zeros(f, y.dim(), x.dim());
        inj.set_block(0, 0, &Matrix::identity(f, x.dim()));
        let mut surj = Matrix::zeros(f, z.dim(), y.dim());
        surj.set_block(0, x.dim(), &Matrix::identity(f, z.dim()));
        ShortExactSeq::new(x.clone(), y, z.clone(), inj, surj)
    }

    pub fn to_json(&self) -> SequenceJson {
        SequenceJson {
            x: ModuleSlot::Inline(self.x.to_json()),
            y: ModuleSlot::Inline(self.y.to_json()),
            z: ModuleSlot::Inline(self.z.to_json()),
            inj: self.inj.to_json(),
            surj: self.surj.to_json(),
        }
    }

    /// Parse, resolving module references against `catalogue`.
    pub fn from_json(json: &SequenceJson, catalogue: &[Module]) -> Result<ShortExactSeq> {
        let x = json.x.resolve(catalogue)?;
        let y = json.y.resolve(catalogue)?;
        let z = json.z.resolve(catalogue)?;
        let inj = Matrix::from_json(x.field(), &json.inj)?;
        let surj = Matrix::from_json(x.field(), &json.surj)?;
        ShortExactSeq::new(x, y, z, inj, surj)
    }
}

/// A module given inline or as an index into a catalogue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSlot {
    Ref {
        #[serde(rename = "ref")]
        index: usize,
    },
    Inline(ModuleJson),
}

impl ModuleSlot {
    pub fn resolve(&self, catalogue: &[Module]) -> Result<Module> {
        match self {
            ModuleSlot::Ref { index } => catalogue
                .get(*index)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("module reference {index} out of range"))),
            ModuleSlot::Inline(j) => Module::from_json(j),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    #[serde(rename = "X")]
    pub x: ModuleSlot,
    #[serde(rename = "Y")]
    pub y: ModuleSlot,
    #[serde(rename = "Z")]
    pub z: ModuleSlot,
    pub inj: MatrixJson,
    pub surj: MatrixJson,
}

/// `0 -> Omega Z -> P(Z) -> Z -> 0` from the minimal projective cover.
pub fn syzygy_sequence(z: &Module) -> Result<ShortExactSeq> {
    let cover = projective_cover(z);
    let kernel = cover.map.kernel_basis();
    let (omega, incl) = cover.free.submodule(&kernel)?;
    let omega = omega.with_provenance(format!("Omega({})", z.provenance()));
    ShortExactSeq::new(omega, cover.free, z.clone(), incl, cover.map)
}

/// Pushout of the syzygy sequence of Z along `class: Omega Z -> M`, where
/// Omega Z is the kernel in [`syzygy_sequence`]. Gives `0 -> M -> Y -> Z -> 0`.
pub fn realize_extension(z: &Module, m: &Module, class: &Matrix) -> Result<ShortExactSeq> {
    z.check_compatible(m)?;
    let syz = syzygy_sequence(z)?;
    let omega = &syz.x;
    if !omega.is_intertwiner(m, class) {
        return Err(Error::NotIntertwiner("extension class".into()));
    }
    let f = z.field();
    let (dm, dp) = (m.dim(), syz.y.dim());
    let sum = m.direct_sum(&syz.y)?;
    // rows (h(w), -iota(w)) for w running over a basis of Omega Z
    let neg = f.neg(crate::exactla::FieldElem::ONE);
    let rel = Matrix::vstack(f, &[class, &syz.inj.scale(neg)], omega.dim()).transpose();
    let (basis, pivots) = rel.row_space();
    let (y, proj) = sum.quotient(&basis)?;
    let mut is_pivot = vec![false; dm + dp];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..dm + dp).filter(|&c| !is_pivot[c]).collect();
    let inj = proj.select_cols(&(0..dm).collect::<Vec<_>>());
    let mut full = Matrix::zeros(f, z.dim(), dm + dp);
    full.set_block(0, dm, &syz.surj);
    let surj = full.select_cols(&free);
    let y = y.with_provenance(format!("ext({} by {})", m.provenance(), z.provenance()));
    ShortExactSeq::new(m.clone(), y, z.clone(), inj, surj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::homalg::hom::hom_basis;
    use crate::modrep::{decompose, is_isomorphic, GroupDesc};

    fn setup() -> (GroupDesc, Field) {
        (GroupDesc::new(2, 2).unwrap(), Field::prime(2).unwrap())
    }

    #[test]
    fn zero_class_splits() {
        let (g, f) = setup();
        let k = Module::trivial(g, &f);
        let syz = syzygy_sequence(&k).unwrap();
        let zero = Matrix::zeros(&f, 1, syz.x.dim());
        let s = realize_extension(&k, &k, &zero).unwrap();
        assert_eq!(s.y.dim(), 2);
        assert!(is_isomorphic(&s.y, &k.direct_sum(&k).unwrap(), 0).unwrap());
    }

    #[test]
    fn nonzero_class_gives_uniserial() {
        let (g, f) = setup();
        let k = Module::trivial(g, &f);
        let syz = syzygy_sequence(&k).unwrap();
        for class in hom_basis(&syz.x, &k).unwrap() {
            let s = realize_extension(&k, &k, &class).unwrap();
            assert_eq!(s.y.dim(), 2);
            let d = decompose(&s.y, 0).unwrap();
            assert_eq!(d.shape(), vec![(2, 1)]);
        }
    }

    #[test]
    fn validation_rejects_non_exact() {
        let (g, f) = setup();
        let k = Module::trivial(g, &f);
        let y = k.direct_sum(&k).unwrap();
        let inj = Matrix::from_ints(&f, &[&[1], &[0]]);
        let surj = Matrix::from_ints(&f, &[&[1, 0]]);
        assert!(ShortExactSeq::new(k.clone(), y, k.clone(), inj, surj).is_err());
    }

    #[test]
    fn json_roundtrip_with_refs() {
        let (g, f) = setup();
        let k = Module::trivial(g, &f);
        let s = ShortExactSeq::split(&k, &Module::regular(g, &f)).unwrap();
        let mut j = s.to_json();
        j.x = ModuleSlot::Ref { index: 0 };
        let text = serde_json::to_string(&j).unwrap();
        let back: SequenceJson = serde_json::from_str(&text).unwrap();
        let parsed = ShortExactSeq::from_json(&back, &[k]).unwrap();
        assert_eq!(parsed.y, s.y);
        assert_eq!(parsed.surj, s.surj);
    }
}
