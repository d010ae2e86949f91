use proptest::prelude::*;
use rand::Rng;

use hol_core::ainfty::{
    ainfty_relation_residual, b_square_residual, lambda_degree_check, lambda_eval, transformation_relation_residual,
    Composite, HolTransformation, TensorChain,
};
use hol_core::exactnum::rational::zero;
use hol_core::exactnum::{MultiPoly, Var};
use hol_core::forms::{Domain, PolyMap};
use hol_core::locsys::{holonomy_iso, Superconnection};
use hol_core::random::{self, FormShape};
use hol_core::sample::{sample_chain, ChainProfile};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn b_squares_to_zero_on_flat_chains(seed in any::<u64>(), n in 1usize..=3, mixed in any::<bool>()) {
        let mut profile = ChainProfile::new(if n == 3 { 1 } else { 2 }, n, Domain::Cylinder);
        profile.mixed = mixed;
        let s = sample_chain(seed, &profile).unwrap();
        prop_assert!(b_square_residual(&s.chain).unwrap().exact);
    }

    #[test]
    fn b_squares_to_zero_over_trivial_systems(seed in any::<u64>(), n in 1usize..=3, chart in any::<bool>()) {
        let mut rng = random::rng(seed);
        let domain = if chart { Domain::Chart } else { Domain::Cylinder };
        let spaces: Vec<_> = (0..=n).map(|_| random::graded_space(&mut rng, 2, -1, 1)).collect();
        let xis = (0..n).map(|i| {
            let shape = FormShape { m: 2, domain, total_degree: rng.gen_range(-1..=2), poly_degree: 2, density: 0.6, max_terms: 2 };
            random::homogeneous_form(&mut rng, &shape, &spaces[i], &spaces[i + 1], None)
        }).collect();
        let systems = spaces.iter().map(|v| Superconnection::trivial(2, domain, v, None)).collect();
        let chain = TensorChain::new(systems, xis).unwrap();
        prop_assert!(b_square_residual(&chain).unwrap().exact);
    }

    #[test]
    fn naturality_relation(seed in any::<u64>(), n in 1usize..=3, mixed in any::<bool>()) {
        let mut profile = ChainProfile::new(if n == 3 { 1 } else { 2 }, n, Domain::Cylinder);
        profile.mixed = mixed;
        let s = sample_chain(seed, &profile).unwrap();
        let r = ainfty_relation_residual(&s.chain).unwrap();
        prop_assert!(r.exact, "{:?}", r);
        prop_assert!(lambda_degree_check(&s.chain).unwrap().exact);
    }

    #[test]
    fn lambda_zero_is_invertible_holonomy(seed in any::<u64>(), m in 1usize..=2) {
        let s = sample_chain(seed, &ChainProfile::new(m, 0, Domain::Cylinder)).unwrap();
        let system = &s.chain.systems()[0];
        let l0 = lambda_eval(&TensorChain::single(system.clone())).unwrap();
        let hol = holonomy_iso(system).unwrap();
        prop_assert_eq!(&l0, &hol.phi);
        prop_assert!(l0.invert().is_ok());
    }

    #[test]
    fn composite_of_homotopies(seed in any::<u64>(), n in 1usize..=2) {
        let s = sample_chain(seed, &ChainProfile::new(1, n, Domain::Cylinder)).unwrap();
        let chart = s.chain.map_forms(|f| Ok(f.restrict_at(&zero()))).unwrap();
        let c = random::coefficient(&mut random::rng(seed));
        let x = MultiPoly::var(Var::X(1));
        let shift = PolyMap::new(1, vec![&x + &MultiPoly::var(Var::T).scale(&c)], true).unwrap();
        let a = HolTransformation::new(PolyMap::linear_contraction(&[zero()])).unwrap();
        let b = HolTransformation::new(shift).unwrap();
        prop_assert!(transformation_relation_residual(&a, &chart).unwrap().exact);
        prop_assert!(transformation_relation_residual(&b, &chart).unwrap().exact);
        let ba = Composite::of_homotopies(a, b).unwrap();
        prop_assert!(transformation_relation_residual(&ba, &chart).unwrap().exact);
    }
}
