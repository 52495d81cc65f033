use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use qgkit::census::Predicate;
use qgkit::io::{parse_bruck, parse_qg, write_bruck, write_qg};
use qgkit::sample::{random_bruck_system, random_quasigroup};
use qgkit::{
    are_isomorphic, build_lf_extension, decompose_endo, decompose_epi, deviation_map, enumerate_endomorphisms,
    fibers, in_dl, quotient, Group, Quasigroup,
};

fn quasigroup(max: usize) -> impl Strategy<Value = Quasigroup> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| random_quasigroup(n, &mut StdRng::seed_from_u64(seed)))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn divisions_invert_multiplication(q in quasigroup(9)) {
        let n = q.order();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(q.mul(x, q.ldiv(x, y)), y);
                prop_assert_eq!(q.ldiv(x, q.mul(x, y)), y);
                prop_assert_eq!(q.mul(q.rdiv(y, x), x), y);
                prop_assert_eq!(q.rdiv(q.mul(y, x), x), y);
            }
        }
    }

    #[test]
    fn predicates_are_isomorphism_invariant(
        (q, sigma) in quasigroup(5).prop_flat_map(|q| { let n = q.order(); (Just(q), permutation(n)) })
    ) {
        let r = q.relabel(&sigma);
        for p in Predicate::ALL {
            prop_assert_eq!(p.evaluate(&q).unwrap(), p.evaluate(&r).unwrap(), "{}", p);
        }
        prop_assert!(are_isomorphic(&q, &r).unwrap().is_some());
    }

    #[test]
    fn qg_write_read_write(q in quasigroup(10)) {
        let text = write_qg(&q);
        let back = parse_qg(&text).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(write_qg(&back), text);
    }

    #[test]
    fn bruck_write_read_write(m in 1usize..4, k in 1usize..4, seed in any::<u64>()) {
        let b = random_bruck_system(m, k, &mut StdRng::seed_from_u64(seed));
        let text = write_bruck(&b);
        let back = parse_bruck(&text).unwrap();
        prop_assert_eq!(write_bruck(&back), text);
        prop_assert_eq!(back, b);
    }

    #[test]
    fn composition_projects_onto_base(m in 1usize..4, k in 1usize..4, seed in any::<u64>()) {
        let b = random_bruck_system(m, k, &mut StdRng::seed_from_u64(seed));
        let c = b.compose();
        let d = decompose_epi(&c.quasigroup, b.base(), &c.projection).unwrap();
        prop_assert_eq!(d.reconstruct(), c.quasigroup);
    }

    #[test]
    fn endomorphisms_round_trip(q in quasigroup(6)) {
        for eta in enumerate_endomorphisms(&q).unwrap() {
            let (base, pi) = quotient(&q, &fibers(&eta, &q).unwrap()).unwrap();
            prop_assert_eq!(decompose_epi(&q, &base, &pi).unwrap().reconstruct(), q.clone());
            let d = decompose_endo(&q, &eta).unwrap();
            prop_assert!(d.transfer_law_holds());
        }
    }

    #[test]
    fn deviation_decomposes_iff_in_dl(q in quasigroup(6)) {
        prop_assert_eq!(decompose_endo(&q, &deviation_map(&q)).is_ok(), in_dl(&q).unwrap());
    }

    #[test]
    fn lf_extensions_are_lf_with_left_inverses(n in 1usize..6, m in 1usize..6, shift in 0usize..6) {
        let (e, t) = (Group::cyclic(m).unwrap(), Group::cyclic(n).unwrap());
        // x ↦ s·x·(n / gcd) is a homomorphism Z_m → Z_n
        let g = (1..=n).rev().find(|d| n % d == 0 && m % d == 0).unwrap();
        let step = (n / g) * (shift % g.max(1));
        let eps = qgkit::QMap::new(n, (0..m).map(|x| (x * step) % n).collect()).unwrap();
        let ext = build_lf_extension(&e, &t, &eps).unwrap();
        prop_assert!(qgkit::is_lf(ext.quasigroup()));
        prop_assert!(qgkit::in_adl(ext.quasigroup()).unwrap());
        for x in 0..ext.quasigroup().order() {
            ext.left_inverse(x).unwrap();
        }
        prop_assert!(ext.isotopy_to_direct_product().unwrap());
    }
}
