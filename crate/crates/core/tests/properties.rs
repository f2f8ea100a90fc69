use proptest::prelude::*;

use subadd::exactla::{Field, Matrix};
use subadd::geometry::{defect, SubadditiveFn};
use subadd::homalg::hom::hom_dim_naive;
use subadd::homalg::{ext_dim, hom_dim, syzygy_sequence};
use subadd::modrep::{decompose, is_isomorphic, is_projective, omega, random_module, strip_projective, GroupDesc, Module};
use subadd::pipoints::{proj_points, PiPoint};

fn setting(which: u8) -> (GroupDesc, Field) {
    let (p, r) = [(2, 1), (2, 2), (3, 1), (3, 2)][which as usize % 4];
    (GroupDesc::new(p, r).unwrap(), Field::prime(p).unwrap())
}

fn small(seed: u64, g: GroupDesc, f: &Field, hi: usize) -> Module {
    random_module(seed, g, f, 1, hi)
}

/// `alpha^*(M)` as a module for the rank one group, acting by U.
fn restricted(alpha: &PiPoint, m: &Module) -> Module {
    let (u, _) = alpha.restrict(m).unwrap();
    let g1 = GroupDesc::new(alpha.group().p, 1).unwrap();
    Module::new(g1, alpha.field(), u.rows(), vec![u], "restricted").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_commutative(which in 0u8..4, a in any::<u64>(), b in any::<u64>()) {
        let (g, f) = setting(which);
        let (x, y) = (small(a, g, &f, 4), small(b, g, &f, 4));
        prop_assert!(is_isomorphic(&x.tensor(&y).unwrap(), &y.tensor(&x).unwrap(), 0).unwrap());
    }

    #[test]
    fn dual_is_an_involution(which in 0u8..4, a in any::<u64>()) {
        let (g, f) = setting(which);
        let m = small(a, g, &f, 8);
        prop_assert_eq!(m.dual().dual(), m.clone());
        prop_assert_eq!(m.transpose_dual().transpose_dual(), m);
    }

    #[test]
    fn omega_is_additive(which in 0u8..4, a in any::<u64>(), b in any::<u64>()) {
        let (g, f) = setting(which);
        let (x, y) = (small(a, g, &f, 5), small(b, g, &f, 5));
        let lhs = omega(&x.direct_sum(&y).unwrap(), 1).unwrap();
        let rhs = omega(&x, 1).unwrap().direct_sum(&omega(&y, 1).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&lhs, &rhs, 1).unwrap());
    }

    #[test]
    fn omega_shifts_cancel(which in 0u8..4, a in any::<u64>()) {
        let (g, f) = setting(which);
        let m = small(a, g, &f, 6);
        let back = omega(&omega(&m, 1).unwrap(), -1).unwrap();
        prop_assert!(is_isomorphic(&back, &strip_projective(&m).unwrap(), 2).unwrap());
    }

    #[test]
    fn decomposition_independent_of_seed(which in 0u8..4, a in any::<u64>(), s in any::<u64>()) {
        let (g, f) = setting(which);
        let m = small(a, g, &f, 8);
        let d0 = decompose(&m, 0).unwrap();
        let d1 = decompose(&m, s).unwrap();
        prop_assert_eq!(d0.total_dim(), m.dim());
        prop_assert!(d0.equivalent(&d1, 3));
        prop_assert!(is_isomorphic(&d0.assemble().unwrap(), &m, 4).unwrap());
    }

    #[test]
    fn hom_matches_direct_solve(which in 0u8..4, a in any::<u64>(), b in any::<u64>()) {
        let (g, f) = setting(which);
        let (x, y) = (small(a, g, &f, 6), small(b, g, &f, 6));
        prop_assert_eq!(hom_dim(&x, &y).unwrap(), hom_dim_naive(&x, &y).unwrap());
    }

    #[test]
    fn chi_is_additive_and_subadditive(which in 0u8..4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (g, f) = setting(which);
        let m = small(a, g, &f, 6);
        let (x, z) = (small(b, g, &f, 5), small(c, g, &f, 5));
        let chi = SubadditiveFn::from_module(&m, 0).unwrap();
        let sum = x.direct_sum(&z).unwrap();
        prop_assert_eq!(chi.evaluate(&sum).unwrap(), chi.evaluate(&x).unwrap() + chi.evaluate(&z).unwrap());
        if !is_projective(&z) {
            prop_assert!(defect(&chi, &syzygy_sequence(&z).unwrap()).unwrap() >= 0);
        }
    }

    /// The defect of chi_M on the cover sequence of Z detects Ext^1(Z, M).
    #[test]
    fn cover_defect_detects_ext1(which in 0u8..4, a in any::<u64>(), b in any::<u64>()) {
        let (g, f) = setting(which);
        let (m, z) = (small(a, g, &f, 6), small(b, g, &f, 6));
        prop_assume!(!is_projective(&z));
        let chi = SubadditiveFn::from_module(&m, 0).unwrap();
        let d = defect(&chi, &syzygy_sequence(&z).unwrap()).unwrap();
        prop_assert_eq!(d == 0, ext_dim(1, &z, &m).unwrap() == 0);
    }

    /// chi_alpha(M) is the number of Jordan blocks, i.e. the dimension of
    /// the homs from the restricted module to the trivial module.
    #[test]
    fn chi_alpha_counts_jordan_blocks(which in 0u8..4, a in any::<u64>(), idx in any::<usize>(), ext in 1u32..3) {
        let (g, k) = setting(which);
        let big = Field::new(k.p(), ext, None).unwrap();
        let pts = proj_points(&big, g.r);
        let alpha = PiPoint::from_point(g, &big, &pts[idx % pts.len()]).unwrap();
        let m = small(a, g, &k, 7);
        let res = restricted(&alpha, &m);
        let triv = Module::trivial(res.group(), &big);
        let blocks = alpha.jordan_type(&m).unwrap().num_blocks();
        prop_assert_eq!(alpha.chi(&m).unwrap(), blocks);
        prop_assert_eq!(hom_dim(&res, &triv).unwrap(), blocks);
    }

    #[test]
    fn chi_alpha_invariant_under_scaling_and_frobenius(which in 0u8..4, a in any::<u64>(), idx in any::<usize>(), c in 1u32..4) {
        let (g, k) = setting(which);
        let big = Field::new(k.p(), 2, None).unwrap();
        let pts = proj_points(&big, g.r);
        let alpha = PiPoint::from_point(g, &big, &pts[idx % pts.len()]).unwrap();
        let m = small(a, g, &k, 7);
        let scalar = big.from_index(c % (big.order() - 1) + 1);
        let scaled = alpha.scaled(scalar).unwrap();
        prop_assert_eq!(scaled.proj_point(), alpha.proj_point());
        prop_assert_eq!(scaled.chi(&m).unwrap(), alpha.chi(&m).unwrap());
        // M is defined over the prime field, so conjugate points agree on it
        let conj = alpha.frobenius(1);
        prop_assert_eq!(conj.chi(&m).unwrap(), alpha.chi(&m).unwrap());
        prop_assert_eq!(conj.thick_member(&m).unwrap(), alpha.thick_member(&m).unwrap());
    }

    #[test]
    fn matrix_inverse_roundtrip(seed in any::<u64>(), n in 1usize..7) {
        let f = Field::new(3, 2, None).unwrap();
        let m = random_module(seed, GroupDesc::new(3, 1).unwrap(), &f, n, n);
        let a = Matrix::identity(&f, m.dim()).add(m.action(0)).unwrap();
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.dot(&inv), Matrix::identity(&f, m.dim()));
    }
}
