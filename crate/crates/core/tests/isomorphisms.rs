use affgebra::affine::{bracket, heap, BracketKind};
use affgebra::classes::{trial_rng, ClassSpec, SampleBounds, Sampler};
use affgebra::scalar::{int, rat, Field, Scalar};
use affgebra::transforms::{
    block_target, build_p, build_p_inverse, build_u, shift_map, ClassIsomorphism, Conjugator,
};
use affgebra::verify::{run_check, verify_theorem, CheckId, RunOptions};
use affgebra::{AlgebraError, Matrix};

const Q: Field = Field::Rational;

fn all_classes(n: usize) -> Vec<ClassSpec> {
    vec![
        ClassSpec::gna(n, Q).unwrap(),
        ClassSpec::sna(n, Q).unwrap(),
        ClassSpec::ona(n).unwrap(),
        ClassSpec::una(n).unwrap(),
        ClassSpec::suna(n).unwrap(),
        ClassSpec::ga_c(Scalar::Q(rat(5, 2)), n).unwrap(),
    ]
}

#[test]
fn p_column_and_row_sums() {
    for n in 1..=6 {
        let p = build_p(n, Q);
        let p_inv = build_p_inverse(n, Q).unwrap();
        for k in 0..n {
            assert!(p.col_sum(k).is_zero(), "column {k} of P, n = {n}");
            assert!(p_inv.row_sum(k).is_zero(), "row {k} of P⁻¹, n = {n}");
            assert!(p.get(k, n).is_one());
        }
    }
}

#[test]
fn u_columns_sum_to_zero_and_last_is_constant() {
    for n in 1..=5 {
        let u = build_u(n);
        for k in 0..n {
            assert!(u.col_sum(k).is_zero());
        }
        for r in 0..=n {
            assert_eq!(u.get(r, n), u.get(0, n));
        }
    }
}

#[test]
fn c_conversion_for_every_size() {
    for n in 1..=6 {
        let c = Scalar::Q(rat(-7, 3));
        let mut diag = vec![Scalar::Q(int(0)); n + 1];
        diag[n] = c.clone();
        let d = Matrix::diagonal(&diag).unwrap();
        let lhs = (&(&build_p(n, Q) * &d).unwrap() * &build_p_inverse(n, Q).unwrap()).unwrap();
        let expected = Matrix::constant(n + 1, &(&c * &Scalar::Q(rat(1, n as i64 + 1))));
        assert_eq!(lhs, expected);
    }
}

#[test]
fn conjugation_round_trips_and_lands_in_target() {
    for n in 1..=3 {
        for spec in all_classes(n) {
            let iso = ClassIsomorphism::new(&spec, Conjugator::default_for(&spec)).unwrap();
            let sampler = Sampler::new(spec.clone()).unwrap();
            for i in 0..10 {
                let a = sampler.draw(&mut trial_rng(3, i));
                let image = iso.to_blocks(&a).unwrap();
                assert_eq!(iso.pull_back(&image).unwrap(), a.promote(iso.target_field()).unwrap());
            }
        }
    }
}

#[test]
fn base_block_commutes_with_block_algebra() {
    for n in 1..=4 {
        for spec in all_classes(n) {
            let target = block_target(&spec, Conjugator::default_for(&spec)).unwrap();
            for i in 0..10 {
                let x = target.sample_block(SampleBounds::default(), &mut trial_rng(8, i));
                assert!(target.block_violation(&x).unwrap().is_none());
                assert!(target.base_block.commutator(&x).unwrap().is_zero(), "{spec}");
            }
        }
    }
}

#[test]
fn gna_also_isomorphic_via_u() {
    // P is the mandated map for gna, but U works as well in characteristic zero.
    let spec = ClassSpec::gna(3, Q).unwrap();
    assert!(verify_theorem(&spec, 2, 20, Some(Conjugator::U)).unwrap().passed);
}

#[test]
fn p_is_refused_for_unitary_classes() {
    for spec in [ClassSpec::ona(2).unwrap(), ClassSpec::una(2).unwrap(), ClassSpec::suna(2).unwrap()] {
        assert!(matches!(
            ClassIsomorphism::new(&spec, Conjugator::P),
            Err(AlgebraError::RequiresUnitary(_))
        ));
    }
}

#[test]
fn p_breaks_antisymmetry() {
    // The reason for the restriction: conjugating an ona element by P leaves o(n).
    let spec = ClassSpec::ona(2).unwrap();
    let a = Sampler::new(spec.clone()).unwrap().draw(&mut trial_rng(1, 1));
    let image = (&(&build_p_inverse(2, Q).unwrap() * &a).unwrap() * &build_p(2, Q)).unwrap();
    let target = block_target(&spec, Conjugator::P).unwrap();
    assert!(!target.contains(&image).unwrap());
}

#[test]
fn shift_map_is_an_isomorphism() {
    let n = 2;
    let c = Scalar::Q(rat(3, 1));
    let c2 = Scalar::Q(rat(-1, 4));
    let from = ClassSpec::ga_c(c.clone(), n).unwrap();
    let to = ClassSpec::ga_c(c2.clone(), n).unwrap();
    let sampler = Sampler::new(from.clone()).unwrap();
    let kind = BracketKind::AffineCommutator;
    for i in 0..20 {
        let mut rng = trial_rng(4, i);
        let (a, b, d) = (sampler.draw(&mut rng), sampler.draw(&mut rng), sampler.draw(&mut rng));
        let f = |m: &Matrix| shift_map(&c, &c2, m).unwrap();
        assert!(to.contains(&f(&a)).unwrap());
        assert_eq!(shift_map(&c2, &c, &f(&a)).unwrap(), a);
        assert_eq!(f(&bracket(&kind, &a, &b).unwrap()), bracket(&kind, &f(&a), &f(&b)).unwrap());
        assert_eq!(f(&heap(&a, &b, &d).unwrap()), heap(&f(&a), &f(&b), &f(&d)).unwrap());
    }
    let third_j = Matrix::constant(3, &Scalar::Q(rat(1, 3)));
    let shifted = shift_map(&Scalar::Q(int(1)), &Scalar::Q(int(0)), &third_j).unwrap();
    assert_eq!(shifted, (&third_j - &Matrix::identity(Q, 3)).unwrap());
    assert!(matches!(
        shift_map(&c, &c2, &third_j),
        Err(AlgebraError::ClassViolation { .. })
    ));
}

#[test]
fn traces_are_preserved_by_conjugation() {
    for spec in [ClassSpec::sna(3, Q).unwrap(), ClassSpec::suna(3).unwrap()] {
        let iso = ClassIsomorphism::new(&spec, Conjugator::default_for(&spec)).unwrap();
        let a = Sampler::new(spec.clone()).unwrap().draw(&mut trial_rng(6, 0));
        let image = iso.apply(&a).unwrap();
        assert_eq!(image.trace(), a.trace().promote(image.field()).unwrap());
    }
}

#[test]
fn ga_zero_and_traceless_part() {
    // ga_0 is closed under the plain commutator; sa_0 is its traceless part.
    let ga0 = ClassSpec::ga_c(Scalar::Q(int(0)), 3).unwrap();
    assert_eq!(ga0.dimension().unwrap(), 9);
    let sampler = Sampler::new(ga0.clone()).unwrap();
    let a = sampler.draw(&mut trial_rng(0, 1));
    let b = sampler.draw(&mut trial_rng(0, 2));
    let ab = a.commutator(&b).unwrap();
    assert!(ga0.contains(&ab).unwrap());
    assert!(ab.trace().is_zero());
    assert_eq!(ClassSpec::sna(3, Q).unwrap().dimension().unwrap(), 8);
}

#[test]
fn theorem_over_finite_fields() {
    for p in [7u64, 11] {
        let f = Field::prime(p).unwrap();
        for n in 1..=4 {
            for spec in [ClassSpec::gna(n, f).unwrap(), ClassSpec::sna(n, f).unwrap()] {
                let r = verify_theorem(&spec, 17, 20, None).unwrap();
                assert!(r.passed, "{spec}: {:?}", r.counterexample);
                let r = run_check(
                    CheckId::Jacobi,
                    &spec,
                    &BracketKind::AffineCommutator,
                    17,
                    &RunOptions::with_trials(20),
                )
                .unwrap();
                assert!(r.passed);
            }
        }
    }
}
