//! Endomorphism rings and the endolength functions chi_M.

use crate::error::{Error, Result};
use crate::exactla::{EchelonSpan, FieldElem, Matrix};
use crate::modrep::decompose::{decompose, end_simple_dim as residue_degree};
use crate::modrep::Module;

use super::hom::{presentation, Presentation};

#[derive(Debug, Clone)]
pub struct EndRing {
    pub module: Module,
    pub basis: Vec<Matrix>,
    /// `basis[i] * basis[j] = sum_l constants[i][j][l] basis[l]`.
    pub constants: Vec<Vec<Vec<FieldElem>>>,
}

impl EndRing {
    pub fn new(m: &Module) -> EndRing {
        let basis = if m.dim() == 0 { Vec::new() } else { Presentation::new(m).hom_basis(m) };
        let f = m.field();
        let mut span = EchelonSpan::new(f, m.dim() * m.dim());
        for b in &basis {
            span.insert(b.data());
        }
        // coordinates w.r.t. `basis` of a vector in the span
        let coords_mat = {
            let stacked: Vec<Vec<FieldElem>> = basis.iter().map(|b| b.data().to_vec()).collect();
            Matrix::from_rows(f, &stacked, m.dim() * m.dim()).transpose()
        };
        let constants = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let prod = a.dot(b);
                        coords_mat.solve(prod.data()).expect("End is closed under composition")
                    })
                    .collect()
            })
            .collect();
        EndRing { module: m.clone(), basis, constants }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains_identity(&self) -> bool {
        let id = Matrix::identity(self.module.field(), self.module.dim());
        let mut span = EchelonSpan::new(self.module.field(), id.data().len());
        for b in &self.basis {
            span.insert(b.data());
        }
        span.contains(id.data())
    }
}

/// `dim_k End(M)/rad End(M)` for M with local endomorphism ring.
pub fn end_simple_dim(m: &Module) -> Result<usize> {
    residue_degree(m, 0)
}

/// The endolength function `chi_M(X) = sum_i dim Hom(X, M_i) / e_i` over
/// the distinct indecomposable summands M_i of M.
#[derive(Debug, Clone)]
pub struct ChiModule {
    pub module: Module,
    /// Distinct summands with their residue degrees.
    pub parts: Vec<(Module, usize)>,
}

impl ChiModule {
    pub fn new(m: &Module, seed: u64) -> Result<ChiModule> {
        let d = decompose(m, seed)?;
        let parts = d.summands.into_iter().map(|s| (s.module, s.end_simple_dim)).collect();
        Ok(ChiModule { module: m.clone(), parts })
    }

    pub fn eval(&self, x: &Module) -> Result<usize> {
        x.check_compatible(&self.module)?;
        if x.dim() == 0 {
            return Ok(0);
        }
        let pres = presentation(x);
        let mut total = 0;
        for (part, e) in &self.parts {
            let h = pres.hom_dim(part);
            if h % e != 0 {
                return Err(Error::InexactDivision { hom: h, e: *e });
            }
            total += h / e;
        }
        Ok(total)
    }
}

pub fn chi_module(m: &Module, seed: u64) -> Result<ChiModule> {
    ChiModule::new(m, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::modrep::{omega, GroupDesc};

    #[test]
    fn end_ring_of_regular() {
        let g = GroupDesc::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        let e = EndRing::new(&Module::regular(g, &f));
        assert_eq!(e.dim(), 4);
        assert!(e.contains_identity());
    }

    /// Brute force over all elements of End(Omega k): the nilpotent ones
    /// form a subspace whose codimension is the residue degree.
    #[test]
    fn end_of_syzygy_by_enumeration() {
        let g = GroupDesc::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        let o = omega(&Module::trivial(g, &f), 1).unwrap();
        let e = EndRing::new(&o);
        assert_eq!(e.dim(), 3);
        let mut nilpotent = 0;
        for idx in 0u32..8 {
            let mut acc = Matrix::zeros(&f, 3, 3);
            for (i, b) in e.basis.iter().enumerate() {
                if idx >> i & 1 == 1 {
                    acc.add_scaled(FieldElem::ONE, b);
                }
            }
            if acc.pow(3).unwrap().is_zero() {
                nilpotent += 1;
            }
        }
        assert_eq!(nilpotent, 4);
        assert_eq!(end_simple_dim(&o).unwrap(), 1);
    }

    #[test]
    fn split_module_is_not_local() {
        let g = GroupDesc::new(2, 2).unwrap();
        let f4 = Field::new(2, 2, None).unwrap();
        let res = Module::trivial(g, &f4).restrict_scalars();
        assert_eq!(end_simple_dim(&res), Err(Error::NotLocal));
        let k = Module::trivial(g, &Field::prime(2).unwrap());
        assert_eq!(end_simple_dim(&k).unwrap(), 1);
    }

    #[test]
    fn chi_examples() {
        let g = GroupDesc::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        let k = Module::trivial(g, &f);
        let reg = Module::regular(g, &f);
        assert_eq!(chi_module(&k, 0).unwrap().eval(&k).unwrap(), 1);
        assert_eq!(chi_module(&reg, 0).unwrap().eval(&k).unwrap(), 1);
        let kk = chi_module(&k.direct_sum(&k).unwrap(), 0).unwrap();
        let o = omega(&k, 1).unwrap();
        assert_eq!(kk.eval(&o).unwrap(), chi_module(&k, 0).unwrap().eval(&o).unwrap());
    }
}
