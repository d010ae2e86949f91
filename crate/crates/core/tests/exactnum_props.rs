use proptest::prelude::*;

use hol_core::exactnum::{MultiPoly, Var};
use hol_core::random::{self, Rng64};

const VARS: [Var; 3] = [Var::X(1), Var::X(2), Var::T];

fn draw(rng: &mut Rng64) -> MultiPoly {
    random::poly(rng, &VARS, 3, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let (p, q, r) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn integral_then_derivative(seed in any::<u64>(), v in 0usize..3) {
        let mut rng = random::rng(seed);
        let p = draw(&mut rng);
        let upper = MultiPoly::var(Var::S(1));
        let integral = p.integrate(VARS[v], &MultiPoly::zero(), &upper).unwrap();
        prop_assert_eq!(integral.diff(Var::S(1)), p.rename(VARS[v], Var::S(1)));
    }

    #[test]
    fn substitution_is_a_ring_map(seed in any::<u64>(), v in 0usize..3) {
        let mut rng = random::rng(seed);
        let (p, q, s) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let sub = |f: &MultiPoly| f.subst(VARS[v], &s);
        prop_assert_eq!(sub(&(&p + &q)), &sub(&p) + &sub(&q));
        prop_assert_eq!(sub(&(&p * &q)), &sub(&p) * &sub(&q));
    }
}
