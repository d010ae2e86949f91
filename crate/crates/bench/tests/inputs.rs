use hol_bench::{chain, flat_system};
use hol_core::ainfty::ainfty_relation_residual;
use hol_core::locsys::mc_residual;

#[test]
fn inputs_are_flat_and_related() {
    for layers in [2, 3, 4] {
        let s = flat_system(1, 2, layers);
        assert!(mc_residual(&s).is_zero());
        assert_eq!(s.flag().unwrap().len(), layers);
    }
    for n in 1..=3 {
        assert!(ainfty_relation_residual(&chain(10 + n as u64, 1, n).chain).unwrap().exact);
    }
}
