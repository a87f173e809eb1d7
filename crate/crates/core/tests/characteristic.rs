//! Which characteristics the block isomorphisms actually need.
//!
//! Conjugation by `P` only divides by `n + 1`, so `gna(n, GF(p))` goes through
//! whenever `p ∤ n + 1`, including `n = p`. `sna` additionally divides by `n`
//! in its base point, so it needs `p ∤ n` as well.

use affgebra::classes::ClassSpec;
use affgebra::scalar::Field;
use affgebra::transforms::{block_target, ClassIsomorphism, Conjugator};
use affgebra::verify::{run_corollary, verify_theorem};
use affgebra::AlgebraError;

#[test]
fn gna_with_n_equal_to_the_characteristic() {
    for p in [2u64, 3, 5] {
        let f = Field::prime(p).unwrap();
        let spec = ClassSpec::gna(p as usize, f).unwrap();
        let report = verify_theorem(&spec, 1, 20, None).unwrap();
        assert!(report.passed, "{spec}: {:?}", report.counterexample);
        assert!(run_corollary(&spec, 1, 20).unwrap().passed);
        assert_eq!(spec.dimension().unwrap(), (p * p) as usize);
    }
}

#[test]
fn gna_fails_exactly_when_p_divides_n_plus_one() {
    for p in [2u64, 3, 5, 7] {
        let f = Field::prime(p).unwrap();
        for n in 1..=8usize {
            let spec = ClassSpec::gna(n, f).unwrap();
            let built = ClassIsomorphism::new(&spec, Conjugator::P);
            if (n as u64 + 1) % p == 0 {
                assert!(matches!(built, Err(AlgebraError::NonInvertibleScalar { .. })));
                assert!(spec.base_point().is_err());
            } else {
                assert!(built.is_ok(), "gna({n}, GF({p}))");
            }
        }
    }
}

#[test]
fn sna_needs_n_invertible_too() {
    let f = Field::prime(5).unwrap();
    // p | n: no base point and no block target.
    let spec = ClassSpec::sna(5, f).unwrap();
    assert!(matches!(spec.base_point(), Err(AlgebraError::NonInvertibleScalar { .. })));
    assert!(matches!(
        block_target(&spec, Conjugator::P),
        Err(AlgebraError::NonInvertibleScalar { .. })
    ));
    assert!(verify_theorem(&spec, 0, 5, None).is_err());
    // p | n+1: the conjugation itself is unavailable.
    assert!(verify_theorem(&ClassSpec::sna(4, f).unwrap(), 0, 5, None).is_err());
    // Neither: fine.
    let spec = ClassSpec::sna(3, Field::prime(7).unwrap()).unwrap();
    assert!(verify_theorem(&spec, 0, 50, None).unwrap().passed);
}
