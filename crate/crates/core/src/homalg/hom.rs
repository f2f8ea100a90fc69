//! Hom spaces computed from a presentation of the source.
//!
//! A map `f: X -> M` is determined by the images `y_j = f(m_j)` of the
//! generators of X, subject to the relations generating the kernel of the
//! projective cover. This keeps the linear systems at size `t dim M`
//! instead of `dim X dim M`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{FieldElem, Matrix};
use crate::modrep::cover::{minimal_generators, projective_cover, ProjectiveCover};
use crate::modrep::Module;

#[derive(Debug, Clone)]
pub struct Presentation {
    source: Module,
    cover: ProjectiveCover,
    /// Rows: relations in the coordinates of the free module.
    relations: Matrix,
    /// Columns of the cover map forming a basis of X.
    pivots: Vec<usize>,
    basis_inv: Matrix,
}

impl Presentation {
    pub fn new(x: &Module) -> Presentation {
        let cover = projective_cover(x);
        let kernel = cover.map.kernel_basis();
        let relations = if kernel.rows() == 0 {
            kernel
        } else {
            // a minimal set: generators of the kernel as a module
            let (omega, incl) = cover.free.submodule(&kernel).expect("kernel is a submodule");
            let gens = minimal_generators(&omega);
            let cols = incl.select_cols(&gens);
            cols.transpose()
        };
        let rref = cover.map.rref();
        let pivots = rref.pivots;
        let basis = cover.map.select_cols(&pivots);
        let basis_inv = basis.inverse().expect("cover is surjective");
        Presentation { source: x.clone(), cover, relations, pivots, basis_inv }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn num_generators(&self) -> usize {
        self.cover.rank()
    }

    pub fn num_relations(&self) -> usize {
        self.relations.rows()
    }

    /// Linear system whose kernel is `Hom(X, M)` in the coordinates
    /// `(y_1, ..., y_t)`, given the monomial matrices of M.
    fn system(&self, mons: &[Matrix], dm: usize) -> Matrix {
        let f = self.source.field();
        let t = self.num_generators();
        let n = self.source.group().order();
        let nrel = self.relations.rows();
        let mut sys = Matrix::zeros(f, nrel * dm, t * dm);
        for w in 0..nrel {
            let rel = self.relations.row(w);
            for j in 0..t {
                let mut block = Matrix::zeros(f, dm, dm);
                for (b, mon) in mons.iter().enumerate().take(n) {
                    let c = rel[j * n + b];
                    if !c.is_zero() {
                        block.add_scaled(c, mon);
                    }
                }
                sys.set_block(w * dm, j * dm, &block);
            }
        }
        sys
    }

    /// Rows: a basis of the solution vectors `(y_1, ..., y_t)` in `M^t`.
    pub fn solutions(&self, m: &Module) -> Matrix {
        let mons = m.monomial_matrices();
        self.solutions_with(&mons, m.dim())
    }

    fn solutions_with(&self, mons: &[Matrix], dm: usize) -> Matrix {
        let f = self.source.field();
        let t = self.num_generators();
        if self.relations.rows() == 0 || dm == 0 {
            return Matrix::identity(f, t * dm);
        }
        self.system(mons, dm).kernel_basis()
    }

    /// The module map determined by generator images `y`.
    pub fn to_map(&self, mons: &[Matrix], dm: usize, y: &[FieldElem]) -> Matrix {
        let f = self.source.field();
        let n = self.source.group().order();
        let mut fp = Matrix::zeros(f, dm, self.pivots.len());
        for (l, &col) in self.pivots.iter().enumerate() {
            let (j, b) = (col / n, col % n);
            let img = mons[b].mul_vec(&y[j * dm..(j + 1) * dm]);
            for (i, v) in img.into_iter().enumerate() {
                fp.set(i, l, v);
            }
        }
        fp.dot(&self.basis_inv)
    }

    /// Generator images of a map `f: X -> M`.
    pub fn images(&self, f: &Matrix) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(self.num_generators() * f.rows());
        for &g in &self.cover.generators {
            out.extend(f.col(g));
        }
        out
    }

    pub fn hom_dim(&self, m: &Module) -> usize {
        self.solutions(m).rows()
    }

    pub fn hom_basis(&self, m: &Module) -> Vec<Matrix> {
        let mons = m.monomial_matrices();
        let sols = self.solutions_with(&mons, m.dim());
        (0..sols.rows()).map(|i| self.to_map(&mons, m.dim(), sols.row(i))).collect()
    }

    /// Dimension of the maps `X -> M` factoring through a projective module,
    /// i.e. through the projective cover of M.
    pub fn phom_dim(&self, m: &Module) -> usize {
        if m.dim() == 0 {
            return 0;
        }
        let cm = projective_cover(m);
        let fmons = cm.free.monomial_matrices();
        let dp = cm.free.dim();
        let sols = self.solutions_with(&fmons, dp);
        let t = self.num_generators();
        let f = m.field();
        let mut comp = Matrix::zeros(f, sols.rows(), t * m.dim());
        for s in 0..sols.rows() {
            let y = sols.row(s);
            for j in 0..t {
                let img = cm.map.mul_vec(&y[j * dp..(j + 1) * dp]);
                for (i, v) in img.into_iter().enumerate() {
                    comp.set(s, j * m.dim() + i, v);
                }
            }
        }
        comp.rank()
    }
}

const PRESENTATION_CACHE_LIMIT: usize = 4096;

/// Shared presentation of X, memoized by the fingerprint of X.
pub fn presentation(x: &Module) -> Arc<Presentation> {
    static CACHE: OnceLock<Mutex<HashMap<[u8; 32], Arc<Presentation>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = x.fingerprint();
    if let Some(p) = cache.lock().expect("presentation cache").get(&key) {
        return p.clone();
    }
    let pres = Arc::new(Presentation::new(x));
    let mut guard = cache.lock().expect("presentation cache");
    if guard.len() >= PRESENTATION_CACHE_LIMIT {
        guard.clear();
    }
    guard.entry(key).or_insert(pres).clone()
}

/// A basis of `Hom_kE(X, M)` as `dim M x dim X` matrices.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    pub basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coeffs: &[FieldElem]) -> Matrix {
        let f = self.source.field();
        let mut acc = Matrix::zeros(f, self.target.dim(), self.source.dim());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc.add_scaled(*c, b);
            }
        }
        acc
    }
}

pub fn hom_space(x: &Module, m: &Module) -> Result<HomSpace> {
    x.check_compatible(m)?;
    let basis = if x.dim() == 0 || m.dim() == 0 {
        Vec::new()
    } else {
        presentation(x).hom_basis(m)
    };
    Ok(HomSpace { source: x.clone(), target: m.clone(), basis })
}

pub fn hom_basis(x: &Module, m: &Module) -> Result<Vec<Matrix>> {
    Ok(hom_space(x, m)?.basis)
}

pub fn hom_dim(x: &Module, m: &Module) -> Result<usize> {
    x.check_compatible(m)?;
    if x.dim() == 0 || m.dim() == 0 {
        return Ok(0);
    }
    Ok(presentation(x).hom_dim(m))
}

/// Direct oracle: solve `f X_i = Y_i f` over all `dim M dim X` entries.
pub fn hom_dim_naive(x: &Module, m: &Module) -> Result<usize> {
    x.check_compatible(m)?;
    let (a, b) = (x.dim(), m.dim());
    if a == 0 || b == 0 {
        return Ok(0);
    }
    let f = x.field();
    let unknowns = a * b;
    let mut blocks = Vec::new();
    let ia = Matrix::identity(f, a);
    let ib = Matrix::identity(f, b);
    for (xi, yi) in x.actions().iter().zip(m.actions()) {
        // vec(f X) = (X^T (x) I) vec f, vec(Y f) = (I (x) Y) vec f, column-major vec
        let lhs = xi.transpose().kron(&ib)?;
        let rhs = ia.kron(yi)?;
        blocks.push(lhs.sub(&rhs)?);
    }
    let sys = Matrix::vstack(f, &blocks.iter().collect::<Vec<_>>(), unknowns);
    Ok(unknowns - sys.rank())
}

pub fn check_intertwiner(x: &Module, m: &Module, f: &Matrix) -> Result<()> {
    if x.is_intertwiner(m, f) {
        Ok(())
    } else {
        Err(Error::NotIntertwiner(format!("{} -> {}", x.provenance(), m.provenance())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::modrep::{omega, GroupDesc};

    #[test]
    fn hom_basis_elements_are_intertwiners() {
        let g = GroupDesc::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        let k = Module::trivial(g, &f);
        let o1 = omega(&k, 1).unwrap();
        let o2 = omega(&k, 2).unwrap();
        for (x, m) in [(&o1, &o2), (&o2, &o1), (&o1, &o1), (&k, &o1), (&o1, &k)] {
            let hs = hom_space(x, m).unwrap();
            for b in &hs.basis {
                assert!(x.is_intertwiner(m, b));
            }
            let stacked: Vec<Vec<FieldElem>> = hs.basis.iter().map(|b| b.data().to_vec()).collect();
            let rank = Matrix::from_rows(&f, &stacked, x.dim() * m.dim()).rank();
            assert_eq!(rank, hs.dim());
            assert_eq!(hs.dim(), hom_dim_naive(x, m).unwrap());
        }
    }

    #[test]
    fn hom_from_regular_is_the_target() {
        let g = GroupDesc::new(3, 2).unwrap();
        let f = Field::prime(3).unwrap();
        let reg = Module::regular(g, &f);
        let m = omega(&Module::trivial(g, &f), 1).unwrap();
        assert_eq!(hom_dim(&reg, &m).unwrap(), m.dim());
        assert_eq!(hom_dim(&m, &reg).unwrap(), m.dim());
    }

    #[test]
    fn images_roundtrip() {
        let g = GroupDesc::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        let k = Module::trivial(g, &f);
        let o = omega(&k, 2).unwrap();
        let pres = Presentation::new(&o);
        let mons = o.monomial_matrices();
        for b in pres.hom_basis(&o) {
            let y = pres.images(&b);
            assert_eq!(pres.to_map(&mons, o.dim(), &y), b);
        }
    }
}
