//! Seeded random modules for corpora and property tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{Field, FieldElem, Matrix};

use super::cover::omega;
use super::module::{GroupDesc, Module};

/// Quotient of `kE^rank` by random socle vectors, one at a time, down to
/// exactly `dim` (each step removes one dimension).
fn random_quotient<R: Rng>(group: GroupDesc, field: &Field, rank: usize, dim: usize, rng: &mut R) -> Module {
    let mut m = Module::free(group, field, rank);
    while m.dim() > dim {
        let soc = m.socle();
        let mut v = vec![FieldElem::ZERO; m.dim()];
        while v.iter().all(|e| e.is_zero()) {
            for i in 0..soc.rows() {
                let c = field.from_index(rng.gen_range(0..field.order()));
                field.axpy(&mut v, c, soc.row(i));
            }
        }
        let line = Matrix::from_rows(field, &[v], m.dim());
        m = m.quotient(&line).expect("socle line is a submodule").0;
    }
    m
}

fn draw<R: Rng>(group: GroupDesc, field: &Field, lo: usize, hi: usize, rng: &mut R, depth: u32) -> Module {
    let n = group.order();
    loop {
        let recipe = if depth > 0 { 0 } else { rng.gen_range(0..5) };
        let m = match recipe {
            0 => {
                let dim = rng.gen_range(lo.max(1)..=hi);
                let max_rank = dim.div_ceil(n).max(1) + 1;
                let rank = rng.gen_range(dim.div_ceil(n).max(1)..=max_rank);
                let m = random_quotient(group, field, rank, dim, rng);
                let prov = format!("quot(kE^{rank}->{dim})");
                m.with_provenance(prov)
            }
            1 => {
                if hi < n || lo.div_ceil(n) > hi / n {
                    continue;
                }
                let rank = rng.gen_range(lo.div_ceil(n).max(1)..=hi / n);
                Module::free(group, field, rank)
            }
            2 => {
                let base = draw(group, field, 1, hi.min(2 * n).max(1), rng, depth + 1);
                let shift = [-2, -1, 1, 2][rng.gen_range(0..4)];
                let o = omega(&base, shift).expect("omega of a valid module");
                let prov = format!("Omega^{shift}({})", base.provenance());
                o.with_provenance(prov)
            }
            3 => {
                let small = (hi as f64).sqrt().floor().max(1.0) as usize;
                let a = draw(group, field, 1, small, rng, depth + 1);
                let b = draw(group, field, 1, (hi / a.dim().max(1)).max(1), rng, depth + 1);
                a.tensor(&b).expect("same group and field")
            }
            _ => {
                let base = draw(group, field, lo, hi, rng, depth + 1);
                base.dual()
            }
        };
        if (lo..=hi).contains(&m.dim()) {
            return m;
        }
    }
}

/// Deterministic random module with `lo <= dim <= hi`, built from random
/// quotients of free modules, free modules, syzygies, tensor products and
/// duals. The recipe is recorded in the provenance.
pub fn random_module(seed: u64, group: GroupDesc, field: &Field, lo: usize, hi: usize) -> Module {
    assert!(hi >= lo.max(1), "empty size bounds");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw(group, field, lo, hi, &mut rng, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::is_projective;

    #[test]
    fn deterministic() {
        let g = GroupDesc::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        for seed in 0..10 {
            let a = random_module(seed, g, &f, 1, 8);
            let b = random_module(seed, g, &f, 1, 8);
            assert_eq!(a.to_json(), b.to_json());
        }
    }

    #[test]
    fn within_bounds() {
        let g = GroupDesc::new(3, 2).unwrap();
        let f = Field::prime(3).unwrap();
        for seed in 0..100 {
            let m = random_module(seed, g, &f, 2, 12);
            assert!((2..=12).contains(&m.dim()), "{m:?}");
        }
    }

    #[test]
    fn mix_of_projective_and_not() {
        let g = GroupDesc::new(2, 2).unwrap();
        let f = Field::prime(2).unwrap();
        let mods: Vec<Module> = (0..50).map(|s| random_module(s, g, &f, 1, 10)).collect();
        assert!(mods.iter().any(is_projective));
        assert!(mods.iter().any(|m| !is_projective(m)));
    }
}
