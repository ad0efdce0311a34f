use std::sync::Arc;

use fqt_core::base_algebra::ring::mat_mul;
use fqt_core::config::SessionConfig;
use fqt_core::drinfeld::twisted::twisted_add;
use fqt_core::drinfeld::{act_on_module, exp_eval, twisted_mul};
use fqt_core::function_field::{kinf, residue_module};
use fqt_core::group_algebra::fitting_ideal;
use fqt_core::group_algebra::freeness::module_from_matrix;
use fqt_core::lseries::{char_class, theta_truncated, CharClass};
use fqt_core::nuclear::decomposition_for;
use fqt_core::{CentralIdeal, FqField, FiniteGroup, GroupRing, LaurentSeries, PolyRing, Ring};
use proptest::prelude::*;

fn poly(q: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..q, 0..=max_len)
}

fn session(name: &str) -> fqt_core::config::Session {
    SessionConfig::for_fixture(name).session().unwrap()
}

const DRINFELD_FIXTURES: [&str; 4] = ["carlitz-f2", "carlitz-f3", "rank2-f2", "nontrivial-h-f2"];

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn phi_is_a_ring_homomorphism(k in 0..DRINFELD_FIXTURES.len(), a in poly(2, 4), b in poly(2, 4)) {
        let s = session(DRINFELD_FIXTURES[k]);
        let e = &s.e;
        let r = &e.a;
        let (a, b) = (r.normalize(a), r.normalize(b));
        let prod = twisted_mul(r, &e.phi_of(&a), &e.phi_of(&b)).unwrap();
        prop_assert_eq!(e.phi_of(&r.mul(&a, &b)), prod);
        let sum = twisted_add(r, &e.phi_of(&a), &e.phi_of(&b)).unwrap();
        prop_assert_eq!(e.phi_of(&r.add(&a, &b)), sum);
    }

    #[test]
    fn action_on_residues_is_multiplicative(k in 0..DRINFELD_FIXTURES.len(), pi in 0usize..6, a in poly(2, 3), b in poly(2, 3)) {
        let s = session(DRINFELD_FIXTURES[k]);
        let r = &s.e.a;
        let primes = fqt_core::lseries::primes_up_to(r, 3);
        let p = &primes[pi % primes.len()];
        let res = residue_module(&s.cover, p, &s.m.lattice).residue;
        let f = &s.cover.fq;
        let (a, b) = (r.normalize(a), r.normalize(b));
        let lhs = act_on_module(&s.e, &r.mul(&a, &b), &res).unwrap();
        let rhs = mat_mul(f, &act_on_module(&s.e, &a, &res).unwrap(), &act_on_module(&s.e, &b, &res).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_is_additive(k in 0..3usize, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let s = session(["carlitz-f3", "carlitz-torsion-c2-f3", "rank2-f2"][k]);
        let c = &s.cover;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rand_x = || -> Vec<LaurentSeries> {
            (0..c.n()).map(|_| LaurentSeries::new(-12, (0..12).map(|_| rng.gen_range(0..c.fq.q)).collect())).collect()
        };
        let (x, y) = (rand_x(), rand_x());
        let floor = -6;
        let ex = exp_eval(&s.e, c, &x, floor).unwrap();
        let ey = exp_eval(&s.e, c, &y, floor).unwrap();
        let exy = exp_eval(&s.e, c, &kinf::add(c, &x, &y), floor).unwrap();
        prop_assert!(kinf::agrees(&exy, &kinf::add(c, &ex, &ey), floor).unwrap());
    }
}

fn fqg_elem(q: u32, n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..q, n)
}

fn fqg_matrix(q: u32, n: usize, r: usize) -> impl Strategy<Value = Vec<Vec<Vec<u32>>>> {
    prop::collection::vec(prop::collection::vec(fqg_elem(q, n), r), r)
}

fn c2_over_f3() -> (fqt_core::group_algebra::AG, fqt_core::DecompositionData) {
    let f = FqField::prime(3).unwrap();
    let g = FiniteGroup::cyclic(2);
    let dec = decomposition_for(&f, &g).unwrap();
    (GroupRing::new(PolyRing::new(f), Arc::new(g)), dec)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn characteristic_class_is_basis_independent(x in fqg_matrix(3, 2, 2)) {
        let (ag, _) = c2_over_f3();
        let std = CharClass::from_matrix(&ag, x.clone()).value;
        let mut m = module_from_matrix(&ag.fqg(), &x);
        m.free_basis = None;
        prop_assert_eq!(char_class(&ag, &m).unwrap().value, std);
    }

    #[test]
    fn characteristic_class_multiplies_on_extensions(x1 in fqg_matrix(3, 2, 1), x2 in fqg_matrix(3, 2, 1), y in fqg_elem(3, 2)) {
        let (ag, _) = c2_over_f3();
        let x = vec![vec![x1[0][0].clone(), vec![0, 0]], vec![y, x2[0][0].clone()]];
        let whole = CharClass::from_matrix(&ag, x).value.unwrap();
        let a = CharClass::from_matrix(&ag, x1).value.unwrap();
        let b = CharClass::from_matrix(&ag, x2).value.unwrap();
        prop_assert_eq!(whole, ag.mul(&a, &b));
    }

    #[test]
    fn fitting_ideal_is_principal_on_the_class(x in fqg_matrix(3, 2, 2)) {
        let (ag, dec) = c2_over_f3();
        let c = CharClass::from_matrix(&ag, x);
        let fit = fitting_ideal(&ag, &c.relation_matrix(&ag), &dec).unwrap();
        prop_assert_eq!(fit, CentralIdeal::generated_by(&ag, &[c.value.unwrap()]));
    }
}

#[test]
fn theta_is_stable_in_the_precision() {
    for name in ["carlitz-f2", "carlitz-f3", "carlitz-torsion-c2-f3", "rank2-f2"] {
        let s = session(name);
        let ag = GroupRing::new(s.cover.a.clone(), s.cover.group.clone());
        for n in 2..5 {
            let a = theta_truncated(&s.cover, &s.e, &s.m, n).unwrap().value.unwrap();
            let b = theta_truncated(&s.cover, &s.e, &s.m, n + 1).unwrap().value.unwrap();
            assert!(a.agrees_with(&ag.fqg(), &b, -(n as i64)).unwrap(), "{name} N={n}");
        }
    }
}
