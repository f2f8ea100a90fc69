//! Projective covers, syzygies and stripping of projective summands.

use crate::error::Result;
use crate::exactla::{FieldElem, Matrix};

use super::module::Module;

/// A minimal projective cover `P -> M`.
#[derive(Debug, Clone)]
pub struct ProjectiveCover {
    pub free: Module,
    /// `dim M x dim P`; column `j p^r + b` is `x^b m_j`.
    pub map: Matrix,
    /// Standard-basis indices of the chosen generators m_j of M.
    pub generators: Vec<usize>,
}

impl ProjectiveCover {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// Generators of M: standard vectors complementing rad M.
pub fn minimal_generators(m: &Module) -> Vec<usize> {
    let (_, pivots) = m.radical().row_space();
    let mut is_pivot = vec![false; m.dim()];
    for c in pivots {
        is_pivot[c] = true;
    }
    (0..m.dim()).filter(|&c| !is_pivot[c]).collect()
}

pub fn projective_cover(m: &Module) -> ProjectiveCover {
    let gens = minimal_generators(m);
    let mons = m.monomial_matrices();
    cover_from(m, gens, &mons)
}

pub(crate) fn cover_from(m: &Module, gens: Vec<usize>, mons: &[Matrix]) -> ProjectiveCover {
    let n = m.group().order();
    let free = Module::free(m.group(), m.field(), gens.len());
    let mut map = Matrix::zeros(m.field(), m.dim(), gens.len() * n);
    for (j, &g) in gens.iter().enumerate() {
        for (b, mon) in mons.iter().enumerate() {
            for i in 0..m.dim() {
                map.set(i, j * n + b, mon.get(i, g));
            }
        }
    }
    ProjectiveCover { free, map, generators: gens }
}

/// Heller shift Omega M = kernel of the projective cover.
fn omega_once(m: &Module) -> Result<Module> {
    let cover = projective_cover(m);
    let kernel = cover.map.kernel_basis();
    let (sub, _) = cover.free.submodule(&kernel)?;
    Ok(sub)
}

/// `Omega^n M` for any integer n. `n = 0` gives the projective-free part,
/// negative n uses `Omega^-1 = D Omega D`.
pub fn omega(m: &Module, n: i32) -> Result<Module> {
    let base = strip_projective(m)?;
    let out = if n >= 0 {
        let mut cur = base;
        for _ in 0..n {
            cur = omega_once(&cur)?;
        }
        cur
    } else {
        let mut cur = base.dual();
        for _ in 0..(-n) {
            cur = omega_once(&cur)?;
        }
        cur.dual()
    };
    let prov = match n {
        0 => format!("core({})", m.provenance()),
        1 => format!("Omega({})", m.provenance()),
        _ => format!("Omega^{n}({})", m.provenance()),
    };
    Ok(out.with_provenance(prov))
}

/// Number of free summands of M: the rank of the norm element's action.
pub fn free_rank(m: &Module) -> usize {
    m.norm_matrix().rank()
}

/// M with every projective summand removed.
///
/// Vectors `v_j` whose images under the norm element form a basis of its
/// image generate a free summand of full rank; the quotient by it is the
/// complement.
pub fn strip_projective(m: &Module) -> Result<Module> {
    let norm = m.norm_matrix();
    let piv = norm.rref().pivots;
    if piv.is_empty() {
        return Ok(m.clone());
    }
    let mut gens = Matrix::zeros(m.field(), piv.len(), m.dim());
    for (j, &c) in piv.iter().enumerate() {
        gens.set(j, c, FieldElem::ONE);
    }
    let sub = m.generated_submodule(&gens);
    let (q, _) = m.quotient(&sub)?;
    Ok(q.with_provenance(m.provenance().to_string()))
}

/// A module is projective iff it is free iff `dim M = p^r dim(M / rad M)`.
pub fn is_projective(m: &Module) -> bool {
    m.dim() == m.group().order() * m.top_dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::modrep::GroupDesc;

    fn setup(p: u32, r: u32) -> (GroupDesc, Field) {
        (GroupDesc::new(p, r).unwrap(), Field::prime(p).unwrap())
    }

    #[test]
    fn cover_is_surjective_intertwiner() {
        let (g, f) = setup(3, 2);
        let k = Module::trivial(g, &f);
        let m = omega(&k, 1).unwrap();
        let c = projective_cover(&m);
        assert_eq!(c.map.rank(), m.dim());
        assert!(c.free.is_intertwiner(&m, &c.map));
    }

    #[test]
    fn omega_dims_rank_two() {
        // syzygies of k over k[x,y]/(x^2,y^2) have dimension 2n+1
        let (g, f) = setup(2, 2);
        let k = Module::trivial(g, &f);
        for n in -3..=3 {
            assert_eq!(omega(&k, n).unwrap().dim(), 2 * n.unsigned_abs() as usize + 1, "n={n}");
        }
    }

    #[test]
    fn omega_of_projective_is_zero() {
        let (g, f) = setup(2, 2);
        let kf = Module::free(g, &f, 2);
        assert!(is_projective(&kf));
        assert_eq!(omega(&kf, 1).unwrap().dim(), 0);
        assert_eq!(omega(&kf, 0).unwrap().dim(), 0);
        assert_eq!(omega(&kf, -1).unwrap().dim(), 0);
    }

    #[test]
    fn strip_projective_removes_free_part() {
        let (g, f) = setup(3, 1);
        let k = Module::trivial(g, &f);
        let m = k.direct_sum(&Module::free(g, &f, 2)).unwrap();
        assert_eq!(free_rank(&m), 2);
        let s = strip_projective(&m).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(!is_projective(&k));
        assert!(is_projective(&Module::zero(g, &f)));
    }

    #[test]
    fn omega_dims_odd_prime() {
        // over k[x]/(x^3) the syzygies of k alternate between dims 2 and 1
        let (g, f) = setup(3, 1);
        let k = Module::trivial(g, &f);
        assert_eq!(omega(&k, 1).unwrap().dim(), 2);
        assert_eq!(omega(&k, 2).unwrap().dim(), 1);
        assert_eq!(omega(&k, -1).unwrap().dim(), 2);
    }
}
