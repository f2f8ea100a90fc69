//! Stable Hom and (Tate) Ext via syzygies: `tExt^n(X, M) = stHom(Omega^n X, M)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modrep::cover::{omega, strip_projective};
use crate::modrep::Module;

use super::hom::presentation;

pub fn phom_dim(x: &Module, m: &Module) -> Result<usize> {
    x.check_compatible(m)?;
    if x.dim() == 0 || m.dim() == 0 {
        return Ok(0);
    }
    Ok(presentation(x).phom_dim(m))
}

pub fn stable_hom_dim(x: &Module, m: &Module) -> Result<usize> {
    x.check_compatible(m)?;
    if x.dim() == 0 || m.dim() == 0 {
        return Ok(0);
    }
    let pres = presentation(x);
    Ok(pres.hom_dim(m) - pres.phom_dim(m))
}

pub fn ext_dim(n: i32, x: &Module, m: &Module) -> Result<usize> {
    if n < 1 {
        return Err(Error::Dimension(format!("ordinary Ext needs degree >= 1, got {n}")));
    }
    tate_ext_dim(n, x, m)
}

pub fn tate_ext_dim(n: i32, x: &Module, m: &Module) -> Result<usize> {
    x.check_compatible(m)?;
    stable_hom_dim(&omega(x, n)?, m)
}

/// `Omega^n X` for every n in `lo..=hi`, computed by iterating one step at a time.
pub fn omega_range(x: &Module, lo: i32, hi: i32) -> Result<Vec<(i32, Module)>> {
    let base = strip_projective(x)?;
    let mut out = Vec::new();
    if lo <= 0 {
        let mut cur = base.dual();
        let mut neg = vec![(0, base.clone())];
        for j in 1..=(-lo) {
            cur = omega(&cur, 1)?;
            neg.push((-j, cur.dual()));
        }
        neg.reverse();
        out.extend(neg.into_iter().filter(|(n, _)| *n >= lo && *n <= hi));
    }
    if hi >= 1 {
        let mut cur = base;
        for j in 1..=hi {
            cur = omega(&cur, 1)?;
            if j >= lo {
                out.push((j, cur.clone()));
            }
        }
    }
    Ok(out)
}

/// `(n, dim tExt^n(X, M))` for n in the window.
pub fn tate_ext_profile(x: &Module, m: &Module, lo: i32, hi: i32) -> Result<Vec<(i32, usize)>> {
    x.check_compatible(m)?;
    omega_range(x, lo, hi)?
        .into_iter()
        .map(|(n, o)| Ok((n, stable_hom_dim(&o, m)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDim {
    pub n: i32,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub r_gap: usize,
    pub window: (i32, i32),
    pub dims: Vec<ExtDim>,
    /// Start of the first run of `r_gap` consecutive vanishing degrees.
    pub triggered_at: Option<i32>,
    /// Degrees in the window with nonzero Tate Ext although triggered.
    pub violations: Vec<i32>,
}

impl GapReport {
    pub fn triggered(&self) -> bool {
        self.triggered_at.is_some()
    }
}

/// Falsification test of the gap property: if Tate Ext vanishes in
/// `r_gap` consecutive degrees of the window it must vanish on all of it.
pub fn bcr_gap_check(x: &Module, m: &Module, r_gap: usize, window: (i32, i32)) -> Result<GapReport> {
    if r_gap == 0 || window.0 > window.1 {
        return Err(Error::Dimension("r_gap must be positive and the window nonempty".into()));
    }
    let dims = tate_ext_profile(x, m, window.0, window.1)?;
    Ok(gap_report(&dims, r_gap, window))
}

/// The gap check on a precomputed Tate profile; degrees outside the window
/// are ignored.
pub fn gap_report(profile: &[(i32, usize)], r_gap: usize, window: (i32, i32)) -> GapReport {
    let dims: Vec<(i32, usize)> = profile.iter().copied().filter(|(n, _)| *n >= window.0 && *n <= window.1).collect();
    let mut run = 0;
    let mut triggered_at = None;
    for &(n, d) in &dims {
        run = if d == 0 { run + 1 } else { 0 };
        if run == r_gap {
            triggered_at = Some(n + 1 - r_gap as i32);
            break;
        }
    }
    let violations = if triggered_at.is_some() {
        dims.iter().filter(|(_, d)| *d != 0).map(|(n, _)| *n).collect()
    } else {
        Vec::new()
    };
    GapReport {
        r_gap,
        window,
        dims: dims.into_iter().map(|(n, dim)| ExtDim { n, dim }).collect(),
        triggered_at,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Field, Matrix};
    use crate::modrep::GroupDesc;

    fn setup(p: u32, r: u32) -> (GroupDesc, Field) {
        (GroupDesc::new(p, r).unwrap(), Field::prime(p).unwrap())
    }

    #[test]
    fn stable_hom_examples() {
        let (g, f) = setup(2, 2);
        let k = Module::trivial(g, &f);
        let reg = Module::regular(g, &f);
        let o = omega(&k, 1).unwrap();
        assert_eq!(stable_hom_dim(&k, &k).unwrap(), 1);
        assert_eq!(stable_hom_dim(&o, &reg).unwrap(), 0);
        assert_eq!(stable_hom_dim(&k, &reg).unwrap(), 0);
        assert_eq!(stable_hom_dim(&o, &k).unwrap(), 2);
    }

    /// Extensions `0 -> k -> Y -> k -> 0` are the structures
    /// `X_i = [[0,0],[a_i,0]]`; the only automorphisms fixing both ends are
    /// unipotent lower triangular, which fix every such structure. So the
    /// number of classes is the number of valid tuples `a`.
    fn count_extensions_of_trivial(g: GroupDesc, f: &Field) -> usize {
        let r = g.r as usize;
        let q = f.order() as usize;
        let mut count = 0;
        for idx in 0..q.pow(r as u32) {
            let mut t = idx;
            let actions: Vec<Matrix> = (0..r)
                .map(|_| {
                    let mut x = Matrix::zeros(f, 2, 2);
                    x.set(1, 0, f.from_index((t % q) as u32));
                    t /= q;
                    x
                })
                .collect();
            if Module::new(g, f, 2, actions, "").is_ok() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn ext1_matches_extension_count() {
        for (p, r) in [(2, 1), (2, 2), (3, 1), (3, 2), (2, 3)] {
            let (g, f) = setup(p, r);
            let k = Module::trivial(g, &f);
            let classes = count_extensions_of_trivial(g, &f);
            let e = ext_dim(1, &k, &k).unwrap();
            assert_eq!((p as usize).pow(e as u32), classes, "p={p} r={r}");
        }
    }

    #[test]
    fn cyclic_group_periodicity() {
        let (g, f) = setup(3, 1);
        let k = Module::trivial(g, &f);
        assert_eq!(ext_dim(1, &k, &k).unwrap(), 1);
        assert_eq!(ext_dim(2, &k, &k).unwrap(), 1);
        let (g2, f2) = setup(2, 1);
        let k2 = Module::trivial(g2, &f2);
        for n in -4..=4 {
            assert_eq!(tate_ext_dim(n, &k2, &k2).unwrap(), 1, "n={n}");
        }
        let profile = tate_ext_profile(&k2, &k2, -4, 4).unwrap();
        assert!(profile.iter().all(|&(_, d)| d == 1));
        assert_eq!(profile.len(), 9);
    }

    #[test]
    fn free_source_vanishes() {
        let (g, f) = setup(2, 2);
        let reg = Module::free(g, &f, 2);
        let k = Module::trivial(g, &f);
        for n in -4..=4 {
            assert_eq!(tate_ext_dim(n, &reg, &k).unwrap(), 0);
        }
        let rep = bcr_gap_check(&reg, &k, 4, (-3, 3)).unwrap();
        assert!(rep.triggered());
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn gap_never_triggered_for_trivial_cyclic() {
        let (g, f) = setup(2, 1);
        let k = Module::trivial(g, &f);
        let rep = bcr_gap_check(&k, &k, 2, (-4, 4)).unwrap();
        assert!(!rep.triggered());
    }

    #[test]
    fn omega_range_matches_omega() {
        let (g, f) = setup(2, 2);
        let k = Module::trivial(g, &f);
        for (n, m) in omega_range(&k, -2, 3).unwrap() {
            assert_eq!(m.dim(), omega(&k, n).unwrap().dim());
        }
    }
}
