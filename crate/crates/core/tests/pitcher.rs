mod common;

use common::*;
use novikov_core::complex::BaseRing;
use novikov_core::pitcher::{
    cokernel_dim_at_zero, homology_modules, inequality_report, novikov_betti, pitcher_numbers,
    relative_betti,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn pitcher_numbers_match_standard_form(seed in any::<u64>()) {
        let mut g = rng(seed);
        let c = random_complex(&mut g, BaseRing::Polynomials, 4, 4, 2);
        let cx = &c.complex;
        prop_assert!(cx.validate());
        let modules = homology_modules(cx).unwrap();
        let n = pitcher_numbers(&modules);
        let (r, s, q) = c.pitcher();
        prop_assert_eq!(&n.r, &r);
        prop_assert_eq!(&n.s, &s);
        prop_assert_eq!(&n.q, &q);
        prop_assert_eq!(novikov_betti(cx).unwrap(), q);

        let rb = relative_betti(cx).unwrap();
        prop_assert_eq!(&rb.beta, &c.relative_betti());
        prop_assert!(rb.identity_holds.iter().all(|&x| x));

        for (k, rk) in r.iter().enumerate() {
            let p = cx.homology_presentation(k).unwrap();
            prop_assert_eq!(cokernel_dim_at_zero(&p), *rk);
        }
    }

    #[test]
    fn ranks_satisfy_every_inequality(seed in any::<u64>()) {
        let mut g = rng(seed);
        let c = random_complex(&mut g, BaseRing::Polynomials, 4, 4, 2).complex;
        let report = inequality_report(c.ranks(), &c).unwrap();
        prop_assert!(report.all_hold(), "{:?}", report.failures().collect::<Vec<_>>());
        prop_assert!(report.is_consistent());
    }
}
