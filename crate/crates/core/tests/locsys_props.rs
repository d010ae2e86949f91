use proptest::prelude::*;
use rand::Rng;

use hol_core::forms::{Domain, HomForm, PolyMap};
use hol_core::graded::GradedSpace;
use hol_core::locsys::{
    gauge_compat_check, generate_flat, hom_differential, holonomy_iso, mc_residual, poincare_trivialization,
    FlatDraw, Superconnection,
};
use hol_core::random::{self, FormShape, Rng64};

fn shape(m: usize, domain: Domain, k: i32) -> FormShape {
    FormShape {
        m,
        domain,
        total_degree: k,
        poly_degree: 2,
        density: 0.5,
        max_terms: 2,
    }
}

fn draw(seed: u64, m: usize, dim: usize, layers: usize) -> FlatDraw {
    let mut rng = random::rng(seed ^ 0x5eed);
    let v = random::graded_space(&mut rng, dim, -1, 1);
    let flag = random::flag(&mut rng, dim, layers);
    generate_flat(seed, &v, &flag, m, 2).unwrap()
}

fn space(rng: &mut Rng64) -> GradedSpace {
    let dim = rng.gen_range(1..=3);
    random::graded_space(rng, dim, -1, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mc_commutes_with_pullback(seed in any::<u64>(), m in 1usize..=2, p in 1usize..=2, homotopy in any::<bool>()) {
        let mut rng = random::rng(seed);
        let v = space(&mut rng);
        let alpha = random::homogeneous_form(&mut rng, &shape(m, Domain::Chart, 1), &v, &v, None);
        let s = Superconnection::new(v.clone(), alpha, None).unwrap();
        let vars = random::variables(p, homotopy);
        let phi = PolyMap::new(p, (0..m).map(|_| random::poly(&mut rng, &vars, 2, 2)).collect(), homotopy).unwrap();
        let pulled = Superconnection::new(v, s.alpha().pullback(&phi).unwrap(), None).unwrap();
        prop_assert_eq!(mc_residual(&pulled), mc_residual(&s).pullback(&phi).unwrap());
    }

    #[test]
    fn hom_differential_squares_to_zero(seed in any::<u64>(), m in 1usize..=2, k in -1i32..=2) {
        let (a, b) = (draw(seed, m, 3, 2), draw(seed.wrapping_add(1), m, 2, 2));
        let mut rng = random::rng(seed);
        let w = random::homogeneous_form(&mut rng, &shape(m, Domain::Cylinder, k), a.system.space(), b.system.space(), None);
        let once = hom_differential(&w, &a.system, &b.system).unwrap();
        prop_assert!(hom_differential(&once, &a.system, &b.system).unwrap().is_zero());
    }

    #[test]
    fn holonomy_is_an_isomorphism(seed in any::<u64>(), m in 1usize..=2, layers in 2usize..=3) {
        let d = draw(seed, m, 3, layers);
        let hol = holonomy_iso(&d.system).unwrap();
        prop_assert!(hol.morphism.exact, "{:?}", hol.morphism);
        prop_assert!(hol.inverse.exact);
    }

    #[test]
    fn holonomy_is_gauge_compatible(seed in any::<u64>(), m in 1usize..=2) {
        let d = draw(seed, m, 3, 3);
        prop_assert!(gauge_compat_check(&d.system, &d.constant_system(), &d.g).unwrap().exact);
    }

    #[test]
    fn poincare_trivializes(seed in any::<u64>(), m in 1usize..=2) {
        let d = draw(seed, m, 3, 3);
        let chart = d.system.restrict_at(&random::coefficient(&mut random::rng(seed)));
        let x0: Vec<_> = (0..m).map(|i| random::coefficient(&mut random::rng(seed + i as u64))).collect();
        let triv = poincare_trivialization(&chart, &x0).unwrap();
        prop_assert!(triv.verified(), "{:?} {:?} {:?}", triv.morphism, triv.inverse, triv.square);
    }

    #[test]
    fn generator_is_flat_and_lowering(seed in any::<u64>(), m in 1usize..=3, layers in 1usize..=3) {
        let d = draw(seed, m, 3, layers);
        prop_assert!(mc_residual(&d.system).is_zero());
        prop_assert!(d.system.alpha().is_strictly_flag_lowering(d.system.flag().unwrap()));
        let zero = HomForm::zero(m, Domain::Cylinder, d.system.space(), d.system.space());
        prop_assert!(layers > 1 || d.system.alpha() == &zero);
    }
}
